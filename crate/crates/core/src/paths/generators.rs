use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::operator::SparseOperator;
use super::path::{Path, PathSpace};
use super::scalar::QuadScalar;
use crate::error::{Error, Result};

/// The generating projections `e, f, g` and partial isometries `v, w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    E,
    F,
    G,
    V,
    W,
}

impl Generator {
    pub const ALL: [Generator; 5] = [Generator::E, Generator::F, Generator::G, Generator::V, Generator::W];

    /// Indices realised on the span of paths to floor `floor`.
    pub fn range(self, floor: u32) -> RangeInclusive<i64> {
        let n = floor as i64;
        match self {
            Generator::E => 1..=n,
            Generator::F | Generator::G => 0..=n,
            Generator::V => 0..=n - 1,
            Generator::W => 1..=n - 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Generator::E => 'e',
            Generator::F => 'f',
            Generator::G => 'g',
            Generator::V => 'v',
            Generator::W => 'w',
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The two families of projections built from `v` and `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TlKind {
    E,
    F,
}

impl TlKind {
    pub fn range(self, floor: u32) -> RangeInclusive<i64> {
        let n = floor as i64;
        match self {
            TlKind::E => 0..=n - 1,
            TlKind::F => 1..=n - 1,
        }
    }
}

/// Edge from floor `n-1` to floor `n` along a path: `-1` south-west, `0`
/// south, `1` south-east. The root sits at horizontal position 0.
fn step(p: &Path, n: i64) -> i64 {
    p.at(n) as i64 - 2 * p.at(n - 1) as i64
}

/// Rational square root, if there is one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (a, b) = (x.numer().sqrt(), x.denom().sqrt());
    (&a * &a == *x.numer() && &b * &b == *x.denom()).then(|| BigRational::new(a, b))
}

/// The generators realised on paths to a fixed floor, over `Q(sqrt(lambda))`.
#[derive(Clone, Debug)]
pub struct Algebra {
    space: Arc<PathSpace>,
    lambda: Arc<BigRational>,
    root: QuadScalar,
    gens: BTreeMap<(Generator, i64), SparseOperator>,
}

impl Algebra {
    /// When `lambda` is a rational square its root is used directly, so
    /// every coefficient stays rational.
    pub fn new(floor: u32, lambda: &BigRational) -> Result<Self> {
        Self::on_space(Arc::new(PathSpace::new(floor)?), lambda)
    }

    /// Shares an existing path enumeration.
    pub fn on_space(space: Arc<PathSpace>, lambda: &BigRational) -> Result<Self> {
        let root = rational_sqrt(lambda).map_or_else(QuadScalar::root, QuadScalar::rational);
        Self::build(space, lambda, root)
    }

    /// Keeps `sqrt(lambda)` symbolic even when it is rational.
    pub fn symbolic(floor: u32, lambda: &BigRational) -> Result<Self> {
        Self::build(Arc::new(PathSpace::new(floor)?), lambda, QuadScalar::root())
    }

    fn build(space: Arc<PathSpace>, lambda: &BigRational, root: QuadScalar) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        let lambda = Arc::new(lambda.clone());
        let mut gens = BTreeMap::new();
        for g in Generator::ALL {
            for n in g.range(space.floor()) {
                gens.insert((g, n), make_generator(&space, &lambda, g, n));
            }
        }
        Ok(Algebra { space, lambda, root, gens })
    }

    pub fn floor(&self) -> u32 {
        self.space.floor()
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    /// `sqrt(lambda)` as used in coefficients.
    pub fn root(&self) -> &QuadScalar {
        &self.root
    }

    /// `tau = lambda / (1 + lambda)^2`.
    pub fn tau(&self) -> BigRational {
        let d = BigRational::one() + &*self.lambda;
        &*self.lambda / (&d * &d)
    }

    pub fn identity(&self) -> SparseOperator {
        SparseOperator::identity(&self.space, &self.lambda)
    }

    pub fn zero(&self) -> SparseOperator {
        SparseOperator::zero(&self.space, &self.lambda)
    }

    pub fn get(&self, g: Generator, n: i64) -> Option<&SparseOperator> {
        self.gens.get(&(g, n))
    }

    pub fn generator(&self, g: Generator, n: i64) -> Result<&SparseOperator> {
        self.get(g, n)
            .ok_or_else(|| Error::Domain(format!("{g}_{n} is not defined on paths to floor {}", self.floor())))
    }

    pub fn keys(&self) -> impl Iterator<Item = (Generator, i64)> + '_ {
        self.gens.keys().copied()
    }

    /// `E_n = (v*v + s v + s v* + lambda v v*) / (1 + lambda)` and likewise
    /// `F_n` with `w`, where `s = sqrt(lambda)`.
    pub fn tl_projection(&self, kind: TlKind, n: i64) -> Result<SparseOperator> {
        let x = match kind {
            TlKind::E => self.generator(Generator::V, n)?,
            TlKind::F => self.generator(Generator::W, n)?,
        };
        let xs = x.adjoint();
        let lam = QuadScalar::rational((*self.lambda).clone());
        let sum = xs
            .mul(x)
            .add(&x.scale(&self.root))
            .add(&xs.scale(&self.root))
            .add(&x.mul(&xs).scale(&lam));
        Ok(sum.scale_rational(&(BigRational::one() + &*self.lambda).recip()))
    }

    /// Flips the sign of the `k`-th nonzero entry of one generator.
    pub fn mutate(&mut self, g: Generator, n: i64, k: usize) -> Result<(usize, usize)> {
        let floor = self.floor();
        let op = self
            .gens
            .get_mut(&(g, n))
            .ok_or_else(|| Error::Domain(format!("{g}_{n} is not defined on paths to floor {floor}")))?;
        op.flip_sign(k).ok_or_else(|| Error::Domain(format!("{g}_{n} has fewer than {} entries", k + 1)))
    }
}

fn make_generator(space: &Arc<PathSpace>, lambda: &Arc<BigRational>, g: Generator, n: i64) -> SparseOperator {
    let diag = |want: i64| SparseOperator::diagonal(space, lambda, |i| step(space.path(i), n) == want);
    match g {
        Generator::E => diag(-1),
        Generator::F => diag(1),
        Generator::G => diag(0),
        Generator::V | Generator::W => {
            // v: S then SE becomes SE then SW; w: S then SW becomes SW then SE
            let (second, moved) = if g == Generator::V { (1, 1) } else { (-1, -1) };
            let entries = space.paths().iter().enumerate().filter_map(|(c, p)| {
                if step(p, n) != 0 || step(p, n + 1) != second {
                    return None;
                }
                let mut coords = p.coords().to_vec();
                coords[n as usize] = (coords[n as usize] as i64 + moved) as u64;
                let r = space.position(&coords).expect("flipped path stays monotone");
                Some((r, c, QuadScalar::one()))
            });
            SparseOperator::from_entries(space, lambda, entries)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn v0_on_floor_one() {
        let a = Algebra::new(1, &q(1, 1)).unwrap();
        let s = a.space();
        let v0 = a.generator(Generator::V, 0).unwrap();
        let (from, to) = (s.position(&[0, 1]).unwrap(), s.position(&[1, 1]).unwrap());
        assert_eq!(v0.nnz(), 1);
        assert_eq!(v0.get(to, from), QuadScalar::one());
        assert!(a.generator(Generator::W, 0).is_err());
        assert!(a.generator(Generator::E, 0).is_err());
    }

    #[test]
    fn f0_counts_paths_through_one() {
        let a = Algebra::new(2, &q(1, 1)).unwrap();
        assert_eq!(a.generator(Generator::F, 0).unwrap().trace(), QuadScalar::from_i64(5));
    }

    #[test]
    fn supports_are_as_described() {
        let a = Algebra::new(5, &q(1, 1)).unwrap();
        let g = |k, n| a.generator(k, n).unwrap();
        for n in 0..=4 {
            let v = g(Generator::V, n);
            assert_eq!(v.adjoint().mul(v), g(Generator::G, n).mul(g(Generator::F, n + 1)));
            assert_eq!(v.mul(&v.adjoint()), g(Generator::F, n).mul(g(Generator::E, n + 1)));
        }
        for n in 1..=4 {
            let w = g(Generator::W, n);
            assert_eq!(w.adjoint().mul(w), g(Generator::G, n).mul(g(Generator::E, n + 1)));
            assert_eq!(w.mul(&w.adjoint()), g(Generator::E, n).mul(g(Generator::F, n + 1)));
        }
    }

    #[test]
    fn projections_and_rank() {
        let a = Algebra::new(2, &q(1, 1)).unwrap();
        let e0 = a.tl_projection(TlKind::E, 0).unwrap();
        assert!(e0.is_projection());
        let v0 = a.generator(Generator::V, 0).unwrap();
        assert_eq!(e0.rank(), v0.adjoint().mul(v0).rank());
        assert_eq!(a.tau(), q(1, 4));
        let b = Algebra::new(4, &q(2, 1)).unwrap();
        for n in 0..=3 {
            let e = b.tl_projection(TlKind::E, n).unwrap();
            assert!(e.is_projection());
            assert!(e.entries().any(|(_, _, x)| !x.is_rational()));
        }
        assert!(Algebra::new(2, &q(0, 1)).is_err());
    }

    #[test]
    fn square_lambda_embeds() {
        for (lam, t) in [(q(1, 4), q(1, 2)), (q(9, 1), q(3, 1)), (q(1, 1), q(1, 1))] {
            let sym = Algebra::symbolic(4, &lam).unwrap();
            let rat = Algebra::new(4, &lam).unwrap();
            for kind in [TlKind::E, TlKind::F] {
                for n in kind.range(4) {
                    let r = rat.tl_projection(kind, n).unwrap();
                    assert!(r.entries().all(|(_, _, x)| x.is_rational()));
                    assert_eq!(sym.tl_projection(kind, n).unwrap().embed(&t), r);
                }
            }
        }
    }

    #[test]
    fn mutation_flips_one_entry() {
        let mut a = Algebra::new(3, &q(1, 1)).unwrap();
        let before = a.generator(Generator::V, 1).unwrap().clone();
        let (r, c) = a.mutate(Generator::V, 1, 0).unwrap();
        let after = a.generator(Generator::V, 1).unwrap();
        assert_eq!(after.get(r, c), QuadScalar::from_i64(-1));
        assert_eq!(after.sub(&before).nnz(), 1);
        assert!(a.mutate(Generator::V, 1, 10_000).is_err());
    }
}
