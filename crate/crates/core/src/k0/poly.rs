use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::laurent::SymLaurent;
use crate::error::{Error, Result};

/// Largest level a [`LevelPoly`] may have.
pub const LEVEL_LIMIT: u32 = 24;

/// `sum_k c_k p_(n,k)` with `p_(n,0) = 1` and `p_(n,k) = X^k + X^{-k}`, an
/// element of the level-`n` group of the dimension group of the
/// codimension-one ideal (the diagram with the column `(n,0)` removed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly", into = "RawPoly")]
pub struct LevelPoly {
    level: u32,
    coeffs: Vec<BigInt>,
}

impl LevelPoly {
    pub fn new(level: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if level > LEVEL_LIMIT {
            return Err(Error::FloorTooLarge { floor: level, limit: LEVEL_LIMIT });
        }
        if coeffs.len() != 1usize << level {
            return Err(Error::Domain(format!(
                "level {level} needs {} coefficients, got {}",
                1usize << level,
                coeffs.len()
            )));
        }
        Ok(LevelPoly { level, coeffs })
    }

    pub fn from_i64(level: u32, coeffs: &[i64]) -> Result<Self> {
        LevelPoly::new(level, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(level: u32) -> Self {
        LevelPoly::new(level, vec![BigInt::zero(); 1 << level]).expect("valid level")
    }

    /// The basis element `p_(n,k)`.
    pub fn basis(level: u32, k: usize) -> Result<Self> {
        let mut p = LevelPoly::zero(level);
        *p.coeffs.get_mut(k).ok_or(Error::IndexOutOfRange { floor: level, index: k as u64 })? = 1.into();
        Ok(p)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplication by `X^{-1} + 1 + X` after `X -> X^2`:
    /// `d_{2k} = c_k`, `d_{2k+1} = c_k + c_{k+1}`.
    pub fn beta_step(&self) -> Result<LevelPoly> {
        let c = &self.coeffs;
        let mut d = Vec::with_capacity(2 * c.len());
        for k in 0..c.len() {
            d.push(c[k].clone());
            d.push(match c.get(k + 1) {
                Some(next) => &c[k] + next,
                None => c[k].clone(),
            });
        }
        LevelPoly::new(self.level + 1, d)
    }

    pub fn beta_lift(&self, n: u32) -> Result<LevelPoly> {
        if n < self.level {
            return Err(Error::Domain(format!("cannot lift level {} down to {n}", self.level)));
        }
        let mut p = self.clone();
        while p.level < n {
            p = p.beta_step()?;
        }
        Ok(p)
    }

    /// Same class in the limit group.
    pub fn equivalent(&self, o: &LevelPoly) -> Result<bool> {
        let n = self.level.max(o.level);
        Ok(self.beta_lift(n)? == o.beta_lift(n)?)
    }

    /// `[p] + [q]`, computed at the larger of the two levels.
    pub fn add_class(&self, o: &LevelPoly) -> Result<LevelPoly> {
        let n = self.level.max(o.level);
        let (a, b) = (self.beta_lift(n)?, o.beta_lift(n)?);
        LevelPoly::new(n, a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self) -> LevelPoly {
        LevelPoly { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Membership of the class in the positive cone: nonnegative
    /// coefficients at the element's own level.
    pub fn is_positive_class(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// The same element as a symmetric Laurent polynomial in `X`.
    pub fn to_laurent(&self) -> SymLaurent {
        SymLaurent::new(self.coeffs.clone())
    }
}

impl fmt::Display for LevelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "L{}({})", self.level, parts.join(","))
    }
}

/// Coefficient as a JSON number when it fits in `i64`, otherwise a string.
#[derive(Clone, Debug)]
struct Coeff(BigInt);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Coeff(v.into())),
            Repr::Text(s) => s.parse().map(Coeff).map_err(de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    level: u32,
    coeffs: Vec<Coeff>,
}

impl TryFrom<RawPoly> for LevelPoly {
    type Error = Error;

    fn try_from(r: RawPoly) -> Result<Self> {
        LevelPoly::new(r.level, r.coeffs.into_iter().map(|c| c.0).collect())
    }
}

impl From<LevelPoly> for RawPoly {
    fn from(p: LevelPoly) -> Self {
        RawPoly { level: p.level, coeffs: p.coeffs.into_iter().map(Coeff).collect() }
    }
}
