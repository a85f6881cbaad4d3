use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::cf::ContinuedFraction;
use super::fraction::Fraction;
use crate::error::{Error, Result};

pub const ORBIT_LIMIT: u32 = 20;

/// `F(x) = x/(1-x)` on `[0,1/2]`, `(1-x)/x` on `(1/2,1]`.
pub fn farey_map(x: &Fraction) -> Result<Fraction> {
    if !x.in_unit_interval() {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    let (p, q) = (x.num(), x.den());
    let two_p: BigUint = p * 2u32;
    if &two_p <= q {
        Fraction::new(p.clone(), q - p)
    } else {
        Fraction::new(q - p, p.clone())
    }
}

/// The two solutions of `F(x) = y`: `y/(1+y)` and `1/(1+y)`.
pub fn farey_preimages(y: &Fraction) -> Result<(Fraction, Fraction)> {
    if !y.in_unit_interval() {
        return Err(Error::OutsideUnitInterval(y.to_string()));
    }
    let s = y.num() + y.den();
    Ok((
        Fraction::new(y.num().clone(), s.clone())?,
        Fraction::new(y.den().clone(), s)?,
    ))
}

/// `F` acting on digits: `[a1, a2, ...] -> [a1 - 1, a2, ...]`, where a
/// leading zero digit is absorbed, i.e. `[1, a2, ...] -> [a2, ...]`.
pub fn farey_map_cf(cf: &ContinuedFraction) -> ContinuedFraction {
    let t = cf.terms();
    match t.first() {
        None => ContinuedFraction::Zero,
        Some(1) => ContinuedFraction::from_terms(t[1..].to_vec()).expect("positive terms"),
        Some(&a) => {
            let mut v = t.to_vec();
            v[0] = a - 1;
            ContinuedFraction::from_terms(v).expect("positive terms")
        }
    }
}

/// `F^{-n}({0})` as a sorted set.
pub fn farey_inverse_orbit(n: u32) -> Result<BTreeSet<Fraction>> {
    if n == 0 || n > ORBIT_LIMIT {
        return Err(Error::Domain(format!("orbit depth {n} outside 1..={ORBIT_LIMIT}")));
    }
    let mut set: BTreeSet<Fraction> = BTreeSet::from([Fraction::zero()]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for y in &set {
            let (a, b) = farey_preimages(y)?;
            next.insert(a);
            next.insert(b);
        }
        set = next;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::cf::cf_encode;
    use crate::farey::tree::row;

    fn f(p: u64, q: u64) -> Fraction {
        Fraction::from_u64(p, q)
    }

    #[test]
    fn basic_values() {
        assert_eq!(farey_map(&f(1, 2)).unwrap(), Fraction::one());
        assert_eq!(farey_map(&Fraction::one()).unwrap(), Fraction::zero());
        assert_eq!(farey_map(&f(1, 3)).unwrap(), f(1, 2));
        let (a, b) = farey_preimages(&Fraction::zero()).unwrap();
        assert_eq!((a, b), (Fraction::zero(), Fraction::one()));
    }

    #[test]
    fn small_orbits() {
        let o1: Vec<_> = farey_inverse_orbit(1).unwrap().into_iter().collect();
        assert_eq!(o1, [Fraction::zero(), Fraction::one()]);
        let o2: Vec<_> = farey_inverse_orbit(2).unwrap().into_iter().collect();
        assert_eq!(o2, [Fraction::zero(), f(1, 2), Fraction::one()]);
        let o4: Vec<_> = farey_inverse_orbit(4).unwrap().into_iter().collect();
        assert_eq!(o4, row(3).unwrap());
        assert!(farey_inverse_orbit(0).is_err());
    }

    #[test]
    fn preimages_map_back_on_rows() {
        for n in 0..=8 {
            for y in row(n).unwrap() {
                let (a, b) = farey_preimages(&y).unwrap();
                assert_eq!(farey_map(&a).unwrap(), y);
                assert_eq!(farey_map(&b).unwrap(), y);
            }
        }
    }

    #[test]
    fn digit_shift_agrees_with_map() {
        for q in 1..60u64 {
            for p in 0..=q {
                let x = f(p, q);
                let cf = cf_encode(&x).unwrap();
                assert_eq!(farey_map_cf(&cf).value(), farey_map(&x).unwrap(), "x = {x}");
            }
        }
    }
}
