//! Independent oracles shared by the integration tests. None of them call
//! into the library's own arithmetic for the quantity being checked.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Rows of the diagram by repeated mediant insertion.
pub fn mediant_rows(max_floor: u32) -> Vec<Vec<(u64, u64)>> {
    let mut rows = vec![vec![(0, 1), (1, 1)]];
    for _ in 0..max_floor {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(2 * prev.len() - 1);
        for w in prev.windows(2) {
            next.push(w[0]);
            next.push((w[0].0 + w[1].0, w[0].1 + w[1].1));
        }
        next.push(*prev.last().unwrap());
        rows.push(next);
    }
    rows
}

/// First floor on which `p/q` (reduced) appears. Follows the two
/// neighbours in the current row that bracket `p/q`; the mediant inserted
/// between them on the next floor is the only new label in that gap.
pub fn height_by_search(p: u64, q: u64) -> u32 {
    if (p, q) == (0, 1) || (p, q) == (1, 1) {
        return 0;
    }
    let (mut lo, mut hi) = ((0u64, 1u64), (1u64, 1u64));
    let mut n = 0;
    loop {
        n += 1;
        let m = (lo.0 + hi.0, lo.1 + hi.1);
        if m == (p, q) {
            return n;
        }
        if p * m.1 < m.0 * q {
            hi = m;
        } else {
            lo = m;
        }
    }
}

/// Euler's totient through trial factorisation.
pub fn totient_trial(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `zeta(s)` for `s > 1`: direct sum to `n` plus the Euler-Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    let n: u64 = 200_000;
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    let tail = nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0);
    head + tail
}

/// Value of the continued fraction `[a_1, ..., a_t]` as a reduced pair.
pub fn cf_value(terms: &[u64]) -> (u64, u64) {
    let (mut p, mut q) = (0u64, 1u64);
    for &a in terms.iter().rev() {
        // x = 1 / (a + p/q) = q / (a q + p)
        let (np, nq) = (q, a * q + p);
        p = np;
        q = nq;
    }
    let g = gcd(p, q);
    (p / g, q / g)
}

/// All values `[a_1, ..., a_t]` with positive terms summing to at most `n`,
/// together with 0.
pub fn cf_values_with_sum_at_most(n: u64) -> BTreeSet<(u64, u64)> {
    fn go(prefix: &mut Vec<u64>, left: u64, out: &mut BTreeSet<(u64, u64)>) {
        for a in 1..=left {
            prefix.push(a);
            out.insert(cf_value(prefix));
            go(prefix, left - a, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::from([(0, 1)]);
    go(&mut Vec::new(), n, &mut out);
    out
}

fn width(n: u32) -> u64 {
    1 << n
}

fn children(n: u32, k: u64) -> Vec<u64> {
    [2 * k as i64 - 1, 2 * k as i64, 2 * k as i64 + 1]
        .into_iter()
        .filter(|&c| c >= 0 && c as u64 <= width(n + 1))
        .map(|c| c as u64)
        .collect()
}

fn parents(c: u64) -> Vec<u64> {
    let mut p = vec![c / 2];
    if c % 2 == 1 {
        p.push(c / 2 + 1);
    }
    p
}

/// Quotient diagrams of primitive ideals, truncated at `depth`, found by
/// brute force. A family of vertex sets `Q_0..Q_depth` qualifies when it is
/// non-empty, closed under parents (its complement is hereditary), every
/// vertex above the last floor keeps a child (the complement is saturated),
/// and any two vertices on a floor share a descendant by floor `depth`.
pub fn brute_force_admissible(depth: u32) -> Vec<Vec<Vec<u64>>> {
    fn descendants_meet(q: &[Vec<u64>], n: usize, a: u64, b: u64) -> bool {
        let (mut da, mut db) = (BTreeSet::from([a]), BTreeSet::from([b]));
        for m in n..q.len() - 1 {
            if !da.is_disjoint(&db) {
                return true;
            }
            let step = |s: &BTreeSet<u64>| -> BTreeSet<u64> {
                s.iter().flat_map(|&k| children(m as u32, k)).filter(|c| q[m + 1].contains(c)).collect()
            };
            da = step(&da);
            db = step(&db);
        }
        !da.is_disjoint(&db)
    }

    fn valid(q: &[Vec<u64>]) -> bool {
        let last = q.len() - 1;
        for n in 0..last {
            for &k in &q[n] {
                if !children(n as u32, k).iter().any(|c| q[n + 1].contains(c)) {
                    return false;
                }
            }
            for (i, &a) in q[n].iter().enumerate() {
                for &b in &q[n][i + 1..] {
                    if !descendants_meet(q, n, a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn subsets(items: &[u64]) -> Vec<Vec<u64>> {
        (1u32..1 << items.len())
            .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
            .collect()
    }

    let mut out = Vec::new();
    let mut partial: Vec<Vec<Vec<u64>>> = subsets(&[0, 1]).into_iter().map(|s| vec![s]).collect();
    let saturated = |q: &Vec<Vec<u64>>| {
        let n = q.len() - 2;
        q[n].iter().all(|&k| children(n as u32, k).iter().any(|c| q[n + 1].contains(c)))
    };
    for n in 0..depth {
        let mut next = Vec::new();
        for q in partial {
            let prev = q.last().unwrap();
            let allowed: Vec<u64> = (0..=width(n + 1))
                .filter(|&c| parents(c).iter().all(|p| *p <= width(n) && prev.contains(p)))
                .collect();
            // two vertices two or more apart have disjoint descendant cones
            // (on floor n+m the cone of k is [2^m k - 2^m + 1, 2^m k + 2^m - 1])
            for s in subsets(&allowed).into_iter().filter(|s| s.last().unwrap() - s[0] < 2) {
                let mut q2 = q.clone();
                q2.push(s);
                if saturated(&q2) {
                    next.push(q2);
                }
            }
        }
        partial = next;
    }
    for q in partial {
        if valid(&q) {
            out.push(q);
        }
    }
    out
}
