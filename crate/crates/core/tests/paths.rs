mod common;

use farey_bratteli::paths::{
    enumerate_paths, gauge_removable, mutation_sites, new_failures, run_suite, Algebra, Generator, SparseOperator,
    Suite, TlKind,
};
use num_rational::BigRational;

fn lambda(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Edge type between floors `n-1` and `n` of a path given by coordinates.
fn step_generator(coords: &[u64], n: usize) -> Generator {
    let before = if n == 0 { 0 } else { coords[n - 1] as i64 };
    match coords[n] as i64 - 2 * before {
        -1 => Generator::E,
        0 => Generator::G,
        1 => Generator::F,
        d => panic!("step {d}"),
    }
}

#[test]
fn suite_on_five_floors_with_irrational_root() {
    let alg = Algebra::new(5, &lambda(2, 1)).unwrap();
    let report = run_suite(&alg, Suite::All).unwrap();
    let failing: Vec<String> = report.failures().map(|c| format!("{} {}", c.equation, c.relation)).collect();
    let expected: Vec<String> = (2..=4).map(|n| format!("6.1 v_{n}* w_{} = 0", n - 1)).collect();
    assert_eq!(failing, expected);
    assert!(report.len() > 500);
}

#[test]
fn diagonal_units_resolve_the_identity() {
    for (floor, l) in [(4, lambda(1, 1)), (5, lambda(3, 1))] {
        let alg = Algebra::new(floor, &l).unwrap();
        for r in 0..floor {
            let mut sum = alg.zero();
            for prefix in enumerate_paths(r).unwrap() {
                let factors: Vec<&SparseOperator> = (0..=r as usize)
                    .map(|n| alg.get(step_generator(prefix.coords(), n), n as i64).unwrap())
                    .collect();
                sum = sum.add(&SparseOperator::product(&factors));
            }
            assert_eq!(sum, alg.identity(), "floor {floor}, prefixes of length {r}");
        }
    }
}

#[test]
fn generators_respect_endpoint_blocks() {
    let alg = Algebra::new(6, &lambda(1, 4)).unwrap();
    let space = alg.space();
    let rows = common::mediant_rows(6);
    let mut sizes = vec![0u64; rows[6].len()];
    for i in 0..space.dim() {
        sizes[space.endpoint(i) as usize] += 1;
    }
    assert_eq!(sizes, rows[6].iter().map(|x| x.1).collect::<Vec<_>>());
    for (g, n) in alg.keys() {
        for (r, c, _) in alg.get(g, n).unwrap().entries() {
            assert_eq!(space.endpoint(r), space.endpoint(c), "{g}_{n}");
        }
    }
}

#[test]
fn square_lambda_stays_rational() {
    let alg = Algebra::new(5, &lambda(9, 4)).unwrap();
    for n in 0..4 {
        let e = alg.tl_projection(TlKind::E, n).unwrap();
        assert!(e.is_projection() && e.is_self_adjoint());
        assert!(e.entries().all(|(_, _, x)| x.is_rational()));
    }
    for n in 1..4 {
        let f = alg.tl_projection(TlKind::F, n).unwrap();
        assert!(f.is_projection());
        assert!(f.entries().all(|(_, _, x)| x.is_rational()));
    }
}

#[test]
fn sign_flips_are_seen_unless_a_gauge_absorbs_them() {
    let base = Algebra::new(5, &lambda(1, 1)).unwrap();
    let baseline = run_suite(&base, Suite::All).unwrap();
    let sites = mutation_sites(&base);
    let removable = sites.iter().find(|s| gauge_removable(&base, **s)).unwrap();
    let visible = sites
        .iter()
        .find(|s| s.generator == Generator::W && !gauge_removable(&base, **s))
        .unwrap();
    for (site, seen) in [(removable, false), (visible, true)] {
        let mut alg = base.clone();
        alg.mutate(site.generator, site.index, site.entry).unwrap();
        let report = run_suite(&alg, Suite::All).unwrap();
        assert_eq!(!new_failures(&baseline, &report).is_empty(), seen, "{site:?}");
    }
}
