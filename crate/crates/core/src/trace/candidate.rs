use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::vertex::{in_neighbor_set, TVertex};
use crate::error::{Error, Result};
use crate::farey::Fraction;

/// Sum of a candidate over the part of `C_v` beyond some floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Exact(BigRational),
    Infinite,
}

/// A function on the memoryless tree proposed as a trace. Implementations
/// must be deterministic and free of side effects.
pub trait TraceCandidate {
    fn phi(&self, v: TVertex) -> BigRational;

    /// `sum of phi(w)` over `w` in `C_v` strictly above floor `depth`, when
    /// known in closed form.
    fn tail(&self, _v: TVertex, _depth: u32) -> Option<Tail> {
        None
    }
}

/// `phi(root) = 1`, `phi(n,k) = r^(n+1)`.
#[derive(Clone, Debug)]
pub struct Geometric {
    ratio: BigRational,
}

impl Geometric {
    pub fn new(ratio: &Fraction) -> Self {
        Geometric { ratio: ratio.to_rational() }
    }
}

impl TraceCandidate for Geometric {
    fn phi(&self, v: TVertex) -> BigRational {
        match v {
            TVertex::Star => BigRational::one(),
            TVertex::Node { floor, .. } => num_traits::pow(self.ratio.clone(), floor as usize + 1),
        }
    }

    fn tail(&self, v: TVertex, depth: u32) -> Option<Tail> {
        let r = &self.ratio;
        if r.is_zero() {
            return Some(Tail::Exact(BigRational::zero()));
        }
        if *r >= BigRational::one() {
            return Some(Tail::Infinite);
        }
        let branches = match v {
            TVertex::Star | TVertex::Node { floor: 0, .. } => 1,
            TVertex::Node { .. } => 2,
        };
        let start = (depth as i64).max(v.floor()) + 1;
        let sum = num_traits::pow(r.clone(), start as usize + 1) / (BigRational::one() - r);
        Some(Tail::Exact(sum * BigInt::from(branches)))
    }
}

/// Finitely many listed values and a default elsewhere.
#[derive(Clone, Debug)]
pub struct Table {
    entries: BTreeMap<TVertex, BigRational>,
    default: BigRational,
}

impl Table {
    pub fn new(entries: impl IntoIterator<Item = (TVertex, Fraction)>, default: &Fraction) -> Self {
        Table {
            entries: entries.into_iter().map(|(v, x)| (v, x.to_rational())).collect(),
            default: default.to_rational(),
        }
    }

    pub fn zero() -> Self {
        Table { entries: BTreeMap::new(), default: BigRational::zero() }
    }
}

impl TraceCandidate for Table {
    fn phi(&self, v: TVertex) -> BigRational {
        match v {
            TVertex::Star => BigRational::one(),
            _ => self.entries.get(&v).cloned().unwrap_or_else(|| self.default.clone()),
        }
    }

    fn tail(&self, v: TVertex, depth: u32) -> Option<Tail> {
        if self.default.is_positive() {
            return Some(Tail::Infinite);
        }
        let sum = self
            .entries
            .iter()
            .filter(|(w, _)| w.floor() > depth as i64 && in_neighbor_set(v, **w))
            .map(|(_, x)| x.clone())
            .fold(BigRational::zero(), |a, b| a + b);
        Some(Tail::Exact(sum))
    }
}

/// Candidate given on rationals: `phi(v) = f(label(v))`, so the root reads
/// `f(0)`.
pub struct LabelKeyed<F> {
    f: F,
}

impl<F: Fn(&Fraction) -> BigRational> LabelKeyed<F> {
    pub fn new(f: F) -> Self {
        LabelKeyed { f }
    }
}

impl<F: Fn(&Fraction) -> BigRational> TraceCandidate for LabelKeyed<F> {
    fn phi(&self, v: TVertex) -> BigRational {
        (self.f)(&v.label())
    }
}

/// JSON form: `{"kind":"geometric","ratio":"1/4"}` or
/// `{"kind":"table","entries":[[n,k,"p/q"],...],"default":"0"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CandidateSpec {
    Geometric {
        ratio: Fraction,
    },
    Table {
        #[serde(default)]
        entries: Vec<(u32, u64, Fraction)>,
        #[serde(default = "Fraction::zero")]
        default: Fraction,
    },
}

impl CandidateSpec {
    pub fn build(&self) -> Result<Box<dyn TraceCandidate>> {
        match self {
            CandidateSpec::Geometric { ratio } => Ok(Box::new(Geometric::new(ratio))),
            CandidateSpec::Table { entries, default } => {
                let entries = entries
                    .iter()
                    .map(|(n, k, x)| Ok((TVertex::node(*n, *k)?, x.clone())))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e: Error| Error::InvalidCandidate(e.to_string()))?;
                Ok(Box::new(Table::new(entries, default)))
            }
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
    fn geometric_tails() {
        let g = Geometric::new(&Fraction::from_u64(1, 4));
        assert_eq!(g.phi(TVertex::node(2, 3).unwrap()), q(1, 64));
        // the whole of C_root and the whole of C_v for v on floor n
        assert_eq!(g.tail(TVertex::Star, 0), Some(Tail::Exact(q(1, 12))));
        let v = TVertex::node(3, 5).unwrap();
        assert_eq!(g.tail(v, 0), Some(Tail::Exact(q(2, 3) * q(1, 256))));
        let h = Geometric::new(&Fraction::one());
        assert_eq!(h.tail(v, 4), Some(Tail::Infinite));
    }

    #[test]
    fn table_tails() {
        let t = Table::new(
            [(TVertex::node(2, 1).unwrap(), Fraction::from_u64(1, 10)), (TVertex::node(3, 1).unwrap(), Fraction::from_u64(1, 20))],
            &Fraction::zero(),
        );
        assert_eq!(t.tail(TVertex::Star, 2), Some(Tail::Exact(q(1, 20))));
        assert_eq!(t.tail(TVertex::node(1, 1).unwrap(), 1), Some(Tail::Exact(q(1, 10))));
        assert_eq!(t.tail(TVertex::node(0, 1).unwrap(), 0), Some(Tail::Exact(q(0, 1))));
        let dense = Table::new([], &Fraction::from_u64(1, 100));
        assert_eq!(dense.tail(TVertex::Star, 5), Some(Tail::Infinite));
    }

    #[test]
    fn json_specs() {
        let g: CandidateSpec = serde_json::from_str(r#"{"kind":"geometric","ratio":"1/4"}"#).unwrap();
        assert_eq!(g, CandidateSpec::Geometric { ratio: Fraction::from_u64(1, 4) });
        let t: CandidateSpec =
            serde_json::from_str(r#"{"kind":"table","entries":[[1,1,"1/3"]],"default":"0"}"#).unwrap();
        let c = t.build().unwrap();
        assert_eq!(c.phi(TVertex::node(1, 1).unwrap()), q(1, 3));
        assert_eq!(c.phi(TVertex::Star), q(1, 1));
        let bad: CandidateSpec = serde_json::from_str(r#"{"kind":"table","entries":[[1,2,"1/3"]]}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::InvalidCandidate(_))));
    }

    #[test]
    fn label_keyed() {
        let c = LabelKeyed::new(|x: &Fraction| if x.is_zero() { q(1, 1) } else { q(0, 1) });
        assert_eq!(c.phi(TVertex::Star), q(1, 1));
        assert_eq!(c.phi(TVertex::node(0, 1).unwrap()), q(0, 1));
        assert_eq!(c.tail(TVertex::Star, 3), None);
    }
}
