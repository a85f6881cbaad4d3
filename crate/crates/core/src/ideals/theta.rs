use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::cf::{cf_encode, parse_terms};
use crate::farey::qmark::question_mark_dyadic;
use crate::farey::Fraction;

/// Partial quotients of an irrational number, `a_{i+1}` at index `i`.
#[derive(Clone)]
pub enum CfSource {
    /// A finite prefix; queries past its end fail.
    Prefix(Vec<u64>),
    Stream(Arc<dyn Fn(usize) -> u64 + Send + Sync>),
}

impl CfSource {
    pub fn term(&self, i: usize) -> Option<u64> {
        match self {
            CfSource::Prefix(t) => t.get(i).copied(),
            CfSource::Stream(f) => Some(f(i)),
        }
    }
}

impl fmt::Debug for CfSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfSource::Prefix(t) => write!(f, "Prefix({t:?})"),
            CfSource::Stream(_) => write!(f, "Stream(..)"),
        }
    }
}

/// A point of `[0,1]`: an exact rational or an irrational given by its
/// partial quotients.
#[derive(Clone, Debug)]
pub enum Theta {
    Rational(Fraction),
    Irrational(CfSource),
}

impl Theta {
    pub fn rational(p: u64, q: u64) -> Self {
        Theta::Rational(Fraction::from_u64(p, q))
    }

    pub fn prefix(terms: Vec<u64>) -> Self {
        Theta::Irrational(CfSource::Prefix(terms))
    }

    pub fn stream(f: impl Fn(usize) -> u64 + Send + Sync + 'static) -> Self {
        Theta::Irrational(CfSource::Stream(Arc::new(f)))
    }

    /// `[pre..., period, period, ...]`.
    pub fn periodic(pre: Vec<u64>, period: Vec<u64>) -> Self {
        assert!(!period.is_empty(), "empty period");
        Theta::stream(move |i| if i < pre.len() { pre[i] } else { period[(i - pre.len()) % period.len()] })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Theta::Rational(_))
    }

    /// Sign of `self - y`. Irrational values compare by partial quotients:
    /// the first differing digit decides, with the order reversed at even
    /// positions, and a finite expansion acts as an infinite digit after
    /// its end.
    pub fn cmp_rational(&self, y: &Fraction) -> Result<Ordering> {
        match self {
            Theta::Rational(x) => Ok(x.cmp(y)),
            Theta::Irrational(src) => {
                let yt = cf_encode(y)?;
                let b = yt.terms();
                for (i, &bi) in b.iter().enumerate() {
                    let a = src.term(i).ok_or(Error::InsufficientTerms { floor: i as u32 })?;
                    if a == 0 {
                        return Err(Error::InvalidContinuedFraction("zero partial quotient".into()));
                    }
                    let ord = a.cmp(&bi);
                    if ord != Ordering::Equal {
                        return Ok(if i % 2 == 0 { ord.reverse() } else { ord });
                    }
                }
                Ok(if b.len() % 2 == 0 { Ordering::Greater } else { Ordering::Less })
            }
        }
    }

    /// Floating approximation from at most `terms` partial quotients.
    pub fn approx(&self, terms: usize) -> f64 {
        match self {
            Theta::Rational(x) => x.to_f64(),
            Theta::Irrational(src) => {
                let digits: Vec<u64> = (0..terms).map_while(|i| src.term(i)).collect();
                digits.iter().rev().fold(0.0, |acc, &a| 1.0 / (a as f64 + acc))
            }
        }
    }

    /// Sum of the known partial quotients, up to `cap`.
    pub fn known_term_sum(&self, cap: u64) -> u64 {
        match self {
            Theta::Rational(_) => u64::MAX,
            Theta::Irrational(src) => {
                let mut s = 0u64;
                let mut i = 0;
                while s <= cap {
                    match src.term(i) {
                        Some(a) => s += a,
                        None => break,
                    }
                    i += 1;
                }
                s
            }
        }
    }
}

impl FromStr for Theta {
    type Err = Error;

    /// `p/q` or `cf:a1,a2,...` (a prefix of an irrational).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("cf:") || s.starts_with('[') {
            let t = parse_terms(s)?;
            if t.is_empty() || t.contains(&0) {
                return Err(Error::Parse(format!("{s:?} is not a valid prefix")));
            }
            Ok(Theta::prefix(t))
        } else {
            let x: Fraction = s.parse()?;
            if !x.in_unit_interval() {
                return Err(Error::OutsideUnitInterval(x.to_string()));
            }
            Ok(Theta::Rational(x))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plain,
    Plus,
    Minus,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "plus" => Ok(Variant::Plus),
            "minus" => Ok(Variant::Minus),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// One of the primitive ideals `I_theta`, `I_theta^+`, `I_theta^-`.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub theta: Theta,
    pub variant: Variant,
}

impl IdealSpec {
    pub fn new(theta: Theta, variant: Variant) -> Result<Self> {
        if variant != Variant::Plain {
            let Theta::Rational(x) = &theta else {
                return Err(Error::InvalidIdeal("the one-sided ideals exist only for rational points".into()));
            };
            if variant == Variant::Plus && x.is_one() {
                return Err(Error::InvalidIdeal("no plus ideal at 1".into()));
            }
            if variant == Variant::Minus && x.is_zero() {
                return Err(Error::InvalidIdeal("no minus ideal at 0".into()));
            }
        }
        Ok(IdealSpec { theta, variant })
    }

    pub fn plain(theta: Theta) -> Self {
        IdealSpec { theta, variant: Variant::Plain }
    }
}

/// Position of `theta` in floors `0..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    /// `j_n`: either `r(n,j_n) < theta < r(n,j_n+1)` or `r(n,j_n) = theta`.
    pub index: Vec<u64>,
    /// First floor `n0 = ht(theta)` where `theta` is a label, if within depth.
    pub hit: Option<u32>,
}

pub fn descend(theta: &Theta, depth: u32) -> Result<Descent> {
    crate::farey::tree::check_floor(depth)?;
    match theta {
        Theta::Rational(x) => {
            let cf = cf_encode(x)?;
            let (k, h) = question_mark_dyadic(&cf);
            let index = (0..=depth as u64)
                .map(|n| {
                    let j = if n <= h { &k >> (h - n) as usize } else { &k << (n - h) as usize };
                    j.to_u64().ok_or_else(|| Error::Internal("index overflow".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let hit = if h <= depth as u64 { Some(h as u32) } else { None };
            Ok(Descent { index, hit })
        }
        Theta::Irrational(_) => {
            let mut index = Vec::with_capacity(depth as usize + 1);
            let (mut l, mut r) = ((0u64, 1u64), (1u64, 1u64));
            let mut j = 0u64;
            index.push(0);
            for n in 0..depth {
                let m = (l.0 + r.0, l.1 + r.1);
                let ord = theta.cmp_rational(&Fraction::from_u64(m.0, m.1)).map_err(|e| match e {
                    Error::InsufficientTerms { .. } => Error::InsufficientTerms { floor: n + 1 },
                    e => e,
                })?;
                match ord {
                    Ordering::Less => {
                        r = m;
                        j *= 2;
                    }
                    Ordering::Greater => {
                        l = m;
                        j = 2 * j + 1;
                    }
                    Ordering::Equal => return Err(Error::Internal("irrational met a label".into())),
                }
                index.push(j);
            }
            Ok(Descent { index, hit: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_streams() {
        let golden = Theta::periodic(vec![], vec![1]);
        assert_eq!(golden.cmp_rational(&Fraction::from_u64(1, 2)).unwrap(), Ordering::Greater);
        assert_eq!(golden.cmp_rational(&Fraction::from_u64(2, 3)).unwrap(), Ordering::Less);
        assert_eq!(golden.cmp_rational(&Fraction::from_u64(3, 5)).unwrap(), Ordering::Greater);
        assert_eq!(golden.cmp_rational(&Fraction::one()).unwrap(), Ordering::Less);
        let t = Theta::periodic(vec![], vec![2]);
        assert_eq!(t.cmp_rational(&Fraction::from_u64(1, 2)).unwrap(), Ordering::Less);
        assert_eq!(t.cmp_rational(&Fraction::from_u64(2, 5)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn compare_agrees_with_floats() {
        let t = Theta::periodic(vec![1], vec![2, 2, 1]);
        let v = t.approx(40);
        for q in 1..40u64 {
            for p in 0..=q {
                let y = Fraction::from_u64(p, q);
                let expect = v.partial_cmp(&y.to_f64()).unwrap();
                assert_eq!(t.cmp_rational(&y).unwrap(), expect, "{y}");
            }
        }
    }

    #[test]
    fn prefix_runs_out() {
        let t = Theta::prefix(vec![2]);
        assert!(matches!(t.cmp_rational(&Fraction::from_u64(2, 5)), Err(Error::InsufficientTerms { .. })));
        let t = Theta::prefix(vec![2, 2]);
        assert_eq!(t.cmp_rational(&Fraction::from_u64(2, 5)).unwrap(), Ordering::Greater);
        assert_eq!(descend(&t, 3).unwrap().index, [0, 0, 1, 3]);
    }

    #[test]
    fn rational_descent() {
        let d = descend(&Theta::rational(1, 3), 4).unwrap();
        assert_eq!(d.index, [0, 0, 1, 2, 4]);
        assert_eq!(d.hit, Some(2));
        let d = descend(&Theta::rational(2, 5), 5).unwrap();
        assert_eq!(d.index, [0, 0, 1, 3, 6, 12]);
        let d = descend(&Theta::rational(0, 1), 3).unwrap();
        assert_eq!(d.index, [0, 0, 0, 0]);
        assert_eq!(d.hit, Some(0));
        let d = descend(&Theta::rational(1, 1), 3).unwrap();
        assert_eq!(d.index, [1, 2, 4, 8]);
    }

    #[test]
    fn spec_validation() {
        assert!(IdealSpec::new(Theta::rational(1, 1), Variant::Plus).is_err());
        assert!(IdealSpec::new(Theta::rational(0, 1), Variant::Minus).is_err());
        assert!(IdealSpec::new(Theta::prefix(vec![1, 2]), Variant::Minus).is_err());
        assert!(IdealSpec::new(Theta::rational(0, 1), Variant::Plus).is_ok());
    }

    #[test]
    fn parse_theta() {
        assert!("1/3".parse::<Theta>().unwrap().is_rational());
        assert!(!"cf:1,2,2".parse::<Theta>().unwrap().is_rational());
        assert!("4/3".parse::<Theta>().is_err());
        assert!("cf:1,0".parse::<Theta>().is_err());
    }
}
