use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fraction::Fraction;
use crate::error::{Error, Result};

const ONE_TERMS: [u64; 1] = [1];

/// Finite continued fraction `[a1, ..., at] = 1/(a1 + 1/(a2 + ...))` of a
/// number in `[0,1]`, kept canonical: `at >= 2` except for the value 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ContinuedFraction {
    Zero,
    One,
    Terms(Vec<u64>),
}

impl ContinuedFraction {
    /// Normalizes `[.., at, 1]` to `[.., at+1]`. The empty list is 0.
    pub fn from_terms(mut terms: Vec<u64>) -> Result<Self> {
        if terms.contains(&0) {
            return Err(Error::InvalidContinuedFraction(format!("{terms:?} has a zero term")));
        }
        if terms.is_empty() {
            return Ok(ContinuedFraction::Zero);
        }
        if terms == [1] {
            return Ok(ContinuedFraction::One);
        }
        if terms.len() >= 2 && *terms.last().unwrap() == 1 {
            terms.pop();
            *terms.last_mut().unwrap() += 1;
        }
        Ok(ContinuedFraction::Terms(terms))
    }

    pub fn terms(&self) -> &[u64] {
        match self {
            ContinuedFraction::Zero => &[],
            ContinuedFraction::One => &ONE_TERMS,
            ContinuedFraction::Terms(t) => t,
        }
    }

    pub fn len(&self) -> usize {
        self.terms().len()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ContinuedFraction::Zero)
    }

    pub fn term_sum(&self) -> u64 {
        self.terms().iter().sum()
    }

    /// First floor on which the value appears as a label.
    pub fn height(&self) -> u64 {
        self.term_sum().saturating_sub(1)
    }

    pub fn value(&self) -> Fraction {
        match self.convergents().last() {
            Some(f) => f.clone(),
            None => Fraction::zero(),
        }
    }

    /// `p_k/q_k` for `k = 1..t`, from `p_{-1}=1, q_{-1}=0, p_0=0, q_0=1`.
    pub fn convergents(&self) -> Vec<Fraction> {
        let (mut p0, mut q0) = (BigUint::from(1u32), BigUint::zero());
        let (mut p1, mut q1) = (BigUint::zero(), BigUint::from(1u32));
        let mut out = Vec::with_capacity(self.len());
        for &a in self.terms() {
            let p2 = &p1 * a + &p0;
            let q2 = &q1 * a + &q0;
            out.push(Fraction::new(p2.clone(), q2.clone()).expect("convergent denominator"));
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
        }
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Canonical expansion of `x` in `[0,1]`.
pub fn cf_encode(x: &Fraction) -> Result<ContinuedFraction> {
    if !x.in_unit_interval() {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    let mut p = x.num().clone();
    let mut q = x.den().clone();
    let mut terms = Vec::new();
    while !p.is_zero() {
        let (a, r) = q.div_rem(&p);
        let a = a.to_u64().ok_or_else(|| Error::Domain(format!("partial quotient of {x} exceeds u64")))?;
        terms.push(a);
        q = std::mem::replace(&mut p, r);
    }
    ContinuedFraction::from_terms(terms)
}

pub fn cf_decode(cf: &ContinuedFraction) -> Fraction {
    cf.value()
}

/// `ht(x) = (sum of terms) - 1`, with `ht(0) = ht(1) = 0`.
pub fn height(x: &Fraction) -> Result<u64> {
    Ok(cf_encode(x)?.height())
}

/// Parses `a1,a2,...` (an optional `cf:` prefix and brackets are accepted).
pub fn parse_terms(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let s = s.strip_prefix("cf:").unwrap_or(s);
    let s = s.trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad partial quotient {t:?}"))))
        .collect()
}
