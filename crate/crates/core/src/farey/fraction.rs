use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced non-negative rational `num/den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigUint,
    den: BigUint,
}

impl Fraction {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        if g.is_one() || g.is_zero() {
            Ok(Fraction { num, den })
        } else {
            Ok(Fraction { num: num / &g, den: den / g })
        }
    }

    /// Builds a fraction from small parts. Panics on a zero denominator.
    pub fn from_u64(num: u64, den: u64) -> Self {
        Fraction::new(num, den).expect("zero denominator")
    }

    pub fn zero() -> Self {
        Fraction { num: BigUint::zero(), den: BigUint::one() }
    }

    pub fn one() -> Self {
        Fraction { num: BigUint::one(), den: BigUint::one() }
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn in_unit_interval(&self) -> bool {
        self.num <= self.den
    }

    /// `(p+p')/(q+q')`, reduced.
    pub fn mediant(&self, other: &Fraction) -> Fraction {
        Fraction::new(&self.num + &other.num, &self.den + &other.den).expect("positive denominator")
    }

    /// `p' q - p q'` for `self = p/q`, `right = p'/q'`.
    pub fn det_with(&self, right: &Fraction) -> BigInt {
        BigInt::from(&right.num * &self.den) - BigInt::from(&self.num * &right.den)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let n = r.numer().to_biguint().ok_or_else(|| Error::OutsideUnitInterval(r.to_string()))?;
        let d = r.denom().to_biguint().ok_or(Error::ZeroDenominator)?;
        Fraction::new(n, d)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Small parts as `u64`, when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        use num_traits::ToPrimitive;
        Some((self.num.to_u64()?, self.den.to_u64()?))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigUint = n.parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigUint = d.parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        Fraction::new(n, d)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let f = Fraction::from_u64(6, 15);
        assert_eq!(f.to_u64_pair(), Some((2, 5)));
        assert_eq!(Fraction::from_u64(0, 7), Fraction::zero());
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(Fraction::new(1u32, 0u32), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_and_display() {
        let f: Fraction = " 4/10 ".parse().unwrap();
        assert_eq!(f.to_string(), "2/5");
        assert_eq!("1".parse::<Fraction>().unwrap(), Fraction::one());
        assert!("a/3".parse::<Fraction>().is_err());
    }

    #[test]
    fn ordering_and_mediant() {
        let a = Fraction::from_u64(1, 3);
        let b = Fraction::from_u64(1, 2);
        assert!(a < b);
        assert_eq!(a.mediant(&b), Fraction::from_u64(2, 5));
        assert_eq!(a.det_with(&b), BigInt::from(1));
    }

    #[test]
    fn serde_as_string() {
        let f = Fraction::from_u64(3, 7);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, "\"3/7\"");
        assert_eq!(serde_json::from_str::<Fraction>(&j).unwrap(), f);
    }
}
