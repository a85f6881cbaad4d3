use std::collections::{BTreeSet, VecDeque};

use super::generators::{Algebra, Generator};
use super::relations::Report;

/// One nonzero entry of one generator, the target of a sign flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub generator: Generator,
    pub index: i64,
    /// Position among the generator's nonzero entries, column-major.
    pub entry: usize,
}

pub fn mutation_sites(alg: &Algebra) -> Vec<Site> {
    alg.keys()
        .flat_map(|(generator, index)| {
            let nnz = alg.get(generator, index).map_or(0, |x| x.nnz());
            (0..nnz).map(move |entry| Site { generator, index, entry })
        })
        .collect()
}

/// Whether flipping the sign at `site` is the same as conjugating every
/// generator by one diagonal sign matrix. Such a flip yields a unitarily
/// equivalent family, so no relation between the generators can see it.
///
/// Diagonal conjugation fixes `e, f, g` and changes the entry `(r, c)` of
/// `v` or `w` by the sign `u_r u_c`. A flip at a single off-diagonal entry
/// can therefore be absorbed exactly when that entry is a bridge of the
/// graph whose vertices are paths and whose edges are the entries of all
/// `v_n` and `w_n`.
pub fn gauge_removable(alg: &Algebra, site: Site) -> bool {
    if !matches!(site.generator, Generator::V | Generator::W) {
        return false;
    }
    let Some((r0, c0, _)) = alg.get(site.generator, site.index).and_then(|x| x.entries().nth(site.entry)) else {
        return false;
    };
    let dim = alg.space().dim();
    let mut adj = vec![Vec::new(); dim];
    for (g, n) in alg.keys() {
        if !matches!(g, Generator::V | Generator::W) {
            continue;
        }
        for (k, (r, c, _)) in alg.get(g, n).expect("listed key").entries().enumerate() {
            if (g, n, k) != (site.generator, site.index, site.entry) {
                adj[r].push(c);
                adj[c].push(r);
            }
        }
    }
    let mut seen = vec![false; dim];
    let mut queue = VecDeque::from([r0]);
    seen[r0] = true;
    while let Some(u) = queue.pop_front() {
        if u == c0 {
            return false;
        }
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Relations failing in `mutated` but not in `baseline`.
pub fn new_failures<'a>(baseline: &Report, mutated: &'a Report) -> Vec<&'a super::relations::Check> {
    let old: BTreeSet<(&str, &str)> =
        baseline.failures().map(|c| (c.equation.as_str(), c.relation.as_str())).collect();
    mutated.failures().filter(|c| !old.contains(&(c.equation.as_str(), c.relation.as_str()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::relations::{run_suite, Suite};
    use num_rational::BigRational;

    #[test]
    fn removable_flips_are_invisible() {
        let alg = Algebra::new(4, &BigRational::from_integer(1.into())).unwrap();
        let baseline = run_suite(&alg, Suite::All).unwrap();
        let sites = mutation_sites(&alg);
        let removable: Vec<Site> = sites.iter().copied().filter(|s| gauge_removable(&alg, *s)).collect();
        assert!(!removable.is_empty());
        for s in removable.iter().take(4) {
            let mut m = alg.clone();
            m.mutate(s.generator, s.index, s.entry).unwrap();
            assert!(new_failures(&baseline, &run_suite(&m, Suite::All).unwrap()).is_empty(), "{s:?}");
        }
    }

    #[test]
    fn diagonal_flips_break_idempotence() {
        let alg = Algebra::new(4, &BigRational::from_integer(1.into())).unwrap();
        let baseline = run_suite(&alg, Suite::Base).unwrap();
        for g in [Generator::E, Generator::F, Generator::G] {
            let s = Site { generator: g, index: 2, entry: 3 };
            assert!(!gauge_removable(&alg, s));
            let mut m = alg.clone();
            m.mutate(g, 2, 3).unwrap();
            let fresh = new_failures(&baseline, &run_suite(&m, Suite::Base).unwrap()).len();
            assert!(fresh > 0);
        }
    }
}
