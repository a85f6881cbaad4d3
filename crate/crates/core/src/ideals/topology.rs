use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::level_set::LevelSet;
use super::levels::quotient_levels;
use super::theta::{CfSource, IdealSpec};
use crate::error::{Error, Result};
use crate::farey::qmark::first_vertex;
use crate::farey::tree::{label_u64, width, TreeVertex};
use crate::farey::Fraction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParentPair {
    pub left: Fraction,
    pub right: Fraction,
}

/// Labels of the two parents of the first appearance of `x`, from the
/// inverse of the numerator modulo the denominator.
pub fn parents_of(x: &Fraction) -> Result<ParentPair> {
    if x.is_zero() || !x.in_unit_interval() || x.is_one() {
        return Err(Error::Domain(format!("{x} has no parents")));
    }
    let p = BigInt::from(x.num().clone());
    let q = BigInt::from(x.den().clone());
    let e = p.extended_gcd(&q);
    let pbar = e.x.mod_floor(&q);
    let p1 = (&p * &pbar - BigInt::one()) / &q;
    let q1 = pbar;
    let to_frac = |a: BigInt, b: BigInt| Fraction::from_rational(&BigRational::new(a, b));
    Ok(ParentPair { left: to_frac(p1.clone(), q1.clone())?, right: to_frac(&p - p1, &q - q1)? })
}

/// `b` is contained in `a`, both given by their ideal-side diagrams.
pub fn ideal_contains(a: &LevelSet, b: &LevelSet) -> Result<bool> {
    b.is_subset(a)
}

/// Floorwise intersection of ideal-side diagrams.
pub fn kernel_intersection(ideals: &[LevelSet]) -> Result<LevelSet> {
    let (first, rest) = ideals.split_first().ok_or_else(|| Error::Domain("empty family".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.intersection(x))
}

/// Floorwise union of ideal-side diagrams.
pub fn ideal_sum(ideals: &[LevelSet]) -> Result<LevelSet> {
    let (first, rest) = ideals.split_first().ok_or_else(|| Error::Domain("empty family".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.union(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceVerdict {
    /// Per floor, the first position from which every later term's quotient
    /// floor meets the target's.
    pub settles_at: Vec<Option<usize>>,
    pub converges: bool,
}

/// Finite-depth analogue of convergence of primitive ideals: on every floor
/// the quotient vertices of the sequence eventually meet those of the limit.
pub fn convergence_check(seq: &[IdealSpec], target: &IdealSpec, depth: u32) -> Result<ConvergenceVerdict> {
    let t = quotient_levels(target, depth)?;
    let qs = seq.iter().map(|s| quotient_levels(s, depth)).collect::<Result<Vec<_>>>()?;
    let settles_at: Vec<Option<usize>> = (0..=depth as usize)
        .map(|n| {
            let meets: Vec<bool> = qs
                .iter()
                .map(|q| !q.floors[n].intersection(&t.floors[n]).indices.is_empty())
                .collect();
            match meets.iter().rposition(|&m| !m) {
                None if !meets.is_empty() => Some(0),
                Some(i) if i + 1 < meets.len() => Some(i + 1),
                _ => None,
            }
        })
        .collect();
    let converges = settles_at.iter().all(Option::is_some);
    Ok(ConvergenceVerdict { settles_at, converges })
}

fn frac(p: u64, q: u64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Vertices `(n, 2j)` where `r(n,2j+1) - r(n,2j-1) < 2/q(n,2j)^2` fails, or
/// where the difference is not the sum of the two unimodular gaps.
pub fn gap_bound_violations(max_floor: u32) -> Result<Vec<TreeVertex>> {
    let mut bad = Vec::new();
    for n in 1..=max_floor {
        for j in 1..width(n - 1) {
            let (pl, ql) = label_u64(n, 2 * j - 1)?;
            let (_, q) = label_u64(n, 2 * j)?;
            let (pr, qr) = label_u64(n, 2 * j + 1)?;
            let diff = frac(pr, qr) - frac(pl, ql);
            let gaps = frac(1, ql * q) + frac(1, q * qr);
            if diff != gaps || diff >= frac(2, q * q) || q >= ql.min(qr) {
                bad.push(TreeVertex { floor: n, index: 2 * j });
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnViolation {
    pub theta: Fraction,
    pub k: u32,
    pub reason: String,
}

/// For each `p/q` with `q <= qmax` and `k <= kmax`, checks that the two
/// neighbours `k` floors below the first appearance of `p/q` are
/// `(kp + p')/(kq + q')` and `(kp + p'')/(kq + q'')`, built from the parents
/// `p'/q'` and `p''/q''`, and that both lie within `1/(k q^2)` of `p/q`.
pub fn column_bound_violations(qmax: u64, kmax: u32) -> Result<Vec<ColumnViolation>> {
    let mut bad = Vec::new();
    for q in 2..=qmax {
        for p in 1..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let theta = Fraction::from_u64(p, q);
            let v = first_vertex(&theta)?;
            let pp = parents_of(&theta)?;
            let (p1, q1) = pp.left.to_u64_pair().expect("small");
            let (p2, q2) = pp.right.to_u64_pair().expect("small");
            if label_u64(v.floor - 1, (v.index - 1) / 2)? != (p1, q1)
                || label_u64(v.floor - 1, v.index.div_ceil(2))? != (p2, q2)
            {
                bad.push(ColumnViolation { theta: theta.clone(), k: 0, reason: "parent labels".into() });
            }
            let t = frac(p, q);
            for k in 1..=kmax {
                let n = v.floor + k;
                let c = v.index << k;
                let (lp, lq) = label_u64(n, c - 1)?;
                let (rp, rq) = label_u64(n, c + 1)?;
                let kk = k as u64;
                let mut reason = Vec::new();
                if frac(lp, lq) != frac(kk * p + p1, kk * q + q1) {
                    reason.push("left closed form");
                }
                if frac(rp, rq) != frac(kk * p + p2, kk * q + q2) {
                    reason.push("right closed form");
                }
                let bound = frac(1, kk * q * q);
                let spread = (frac(rp, rq) - &t).max(&t - frac(lp, lq));
                if spread.is_negative() || spread >= bound {
                    reason.push("distance bound");
                }
                if !reason.is_empty() {
                    bad.push(ColumnViolation { theta: theta.clone(), k, reason: reason.join(", ") });
                }
            }
        }
    }
    Ok(bad)
}

/// Predicted labels of the two quotient vertices on floors `h_1..=depth` of
/// an irrational point: `p_n/q_n` and
/// `(p_{n-1} + (m-h_n) p_n) / (q_{n-1} + (m-h_n) q_n)` for `h_n <= m < h_{n+1}`,
/// where `h_n = ht(p_n/q_n)`. Returns `(m, smaller, larger)`.
pub fn convergent_labels(src: &CfSource, depth: u32) -> Result<Vec<(u32, Fraction, Fraction)>> {
    let (mut p0, mut q0) = (1u64, 0u64);
    let (mut p1, mut q1) = (0u64, 1u64);
    let mut h: u64 = 0;
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        let a = src.term(i).ok_or(Error::InsufficientTerms { floor: depth })?;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        let h_next = h + a;
        if i >= 1 {
            for m in h - 1..(h_next - 1).min(depth as u64 + 1) {
                let s = m - (h - 1);
                let x = Fraction::from_u64(p1, q1);
                let y = Fraction::from_u64(p0 + s * p1, q0 + s * q1);
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                out.push((m as u32, lo, hi));
            }
        }
        if h_next - 1 > depth as u64 {
            return Ok(out);
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        h = h_next;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::levels::ideal_levels;
    use crate::ideals::theta::{Theta, Variant};

    fn f(p: u64, q: u64) -> Fraction {
        Fraction::from_u64(p, q)
    }

    #[test]
    fn parent_pairs() {
        assert_eq!(parents_of(&f(1, 2)).unwrap(), ParentPair { left: f(0, 1), right: f(1, 1) });
        assert_eq!(parents_of(&f(2, 5)).unwrap(), ParentPair { left: f(1, 3), right: f(1, 2) });
        assert_eq!(parents_of(&f(3, 7)).unwrap(), ParentPair { left: f(2, 5), right: f(1, 2) });
        assert!(parents_of(&Fraction::zero()).is_err());
        assert!(parents_of(&Fraction::one()).is_err());
    }

    #[test]
    fn one_sided_ideals_sit_inside() {
        let d = 12;
        let plain = ideal_levels(&IdealSpec::plain(Theta::rational(1, 3)), d).unwrap();
        let plus = ideal_levels(&IdealSpec::new(Theta::rational(1, 3), Variant::Plus).unwrap(), d).unwrap();
        let minus = ideal_levels(&IdealSpec::new(Theta::rational(1, 3), Variant::Minus).unwrap(), d).unwrap();
        assert!(ideal_contains(&plain, &plus).unwrap());
        assert!(ideal_contains(&plain, &minus).unwrap());
        assert!(!ideal_contains(&plus, &plain).unwrap());
        assert!(!ideal_contains(&minus, &plain).unwrap());
        assert_eq!(ideal_sum(&[plus.clone(), minus.clone()]).unwrap(), plain);
        let meet = kernel_intersection(&[plus.clone(), minus]).unwrap();
        assert!(ideal_contains(&plus, &meet).unwrap());
    }

    #[test]
    fn depth_mismatch() {
        let a = LevelSet::full(3).unwrap();
        let b = LevelSet::full(4).unwrap();
        assert!(matches!(ideal_contains(&a, &b), Err(Error::DepthMismatch { .. })));
    }

    #[test]
    fn sequence_converging_to_half() {
        let seq: Vec<IdealSpec> =
            (1..=80u64).map(|m| IdealSpec::plain(Theta::Rational(f(m + 12, 2 * (m + 10))))).collect();
        let v = convergence_check(&seq, &IdealSpec::plain(Theta::rational(1, 2)), 10).unwrap();
        assert!(v.converges);
        let v = convergence_check(&seq, &IdealSpec::plain(Theta::rational(1, 3)), 10).unwrap();
        assert!(!v.converges);
    }

    #[test]
    fn gap_and_column_bounds() {
        assert!(gap_bound_violations(12).unwrap().is_empty());
        let v = column_bound_violations(30, 10).unwrap();
        assert!(v.is_empty(), "{:?}", &v[..v.len().min(5)]);
    }

    #[test]
    fn convergent_labels_start() {
        let src = CfSource::Prefix(vec![1, 2, 2, 1, 1, 2]);
        let got = convergent_labels(&src, 3).unwrap();
        assert_eq!(got[0], (0, f(0, 1), f(1, 1)));
        assert_eq!(got[1], (1, f(1, 2), f(1, 1)));
        assert_eq!(got[2], (2, f(2, 3), f(1, 1)));
    }
}
