use num_bigint::BigInt;
use serde::Serialize;

use super::laurent::SymLaurent;
use super::poly::LevelPoly;
use crate::error::{Error, Result};

pub const UNIT_LIMIT: u32 = 14;
pub const GENERATING_LIMIT: usize = 1 << 14;

/// Sizes `q'(n,k)`, `0 <= k < 2^n`, of the summands of the ideal's floor
/// algebras: the ends are 1, even entries copy the parent, odd entries add
/// the two parents.
pub fn q_prime(n: u32) -> Result<Vec<u64>> {
    if n > UNIT_LIMIT {
        return Err(Error::FloorTooLarge { floor: n, limit: UNIT_LIMIT });
    }
    let mut row = vec![1u64];
    for m in 1..=n {
        let len = 1usize << m;
        let mut next = vec![0u64; len];
        for k in 0..len {
            next[k] = if k == 0 || k == len - 1 {
                1
            } else if k % 2 == 0 {
                row[k / 2]
            } else {
                row[k / 2] + row[k / 2 + 1]
            };
        }
        row = next;
    }
    Ok(row)
}

pub fn rho_n(n: u32) -> Result<SymLaurent> {
    if n > UNIT_LIMIT {
        return Err(Error::FloorTooLarge { floor: n, limit: UNIT_LIMIT });
    }
    Ok(SymLaurent::rho_n(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitVerdict {
    pub level: u32,
    pub holds: bool,
    /// First degree where the two sides differ.
    pub first_difference: Option<i64>,
}

/// Checks `sum_k q'(n,k) p_(n,k)(X) = rho_n(X)` by expanding both sides.
pub fn verify_unit_decomposition(n: u32) -> Result<UnitVerdict> {
    let qp = q_prime(n)?;
    let lhs = LevelPoly::new(n, qp.into_iter().map(BigInt::from).collect())?.to_laurent();
    let rhs = rho_n(n)?;
    let top = lhs.degree().max(rhs.degree()) as i64;
    let first_difference = (0..=top).find(|&d| lhs.coeff(d) != rhs.coeff(d));
    Ok(UnitVerdict { level: n, holds: first_difference.is_none(), first_difference })
}

/// First `terms` coefficients of `prod_{k>=0} (1 + X^{2^k} + X^{2^{k+1}})`.
pub fn stern_brocot_generating(terms: usize) -> Result<Vec<u64>> {
    if terms > GENERATING_LIMIT {
        return Err(Error::Domain(format!("at most {GENERATING_LIMIT} terms")));
    }
    let mut c = vec![0u64; terms];
    if terms == 0 {
        return Ok(c);
    }
    c[0] = 1;
    let mut step = 1usize;
    while step < terms {
        let mut next = c.clone();
        for i in 0..terms {
            if c[i] == 0 {
                continue;
            }
            if i + step < terms {
                next[i + step] += c[i];
            }
            if i + 2 * step < terms {
                next[i + 2 * step] += c[i];
            }
        }
        c = next;
        step *= 2;
    }
    Ok(c)
}

fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

fn ln_one_plus_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    let e = (-a).exp();
    a + (e + e * e).ln_1p()
}

/// `phi~_(n,k)(y) = 2 cosh(k y / 2^n) / prod_{j=1}^n (1 + 2 cosh(y / 2^j))`,
/// with numerator 1 when `k = 0`. Evaluated in log space.
pub fn eval_phi(n: u32, k: u64, y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {y}")));
    }
    if n > 60 {
        return Err(Error::FloorTooLarge { floor: n, limit: 60 });
    }
    if k >= 1u64 << n && !(n == 0 && k == 0) {
        return Err(Error::IndexOutOfRange { floor: n, index: k });
    }
    let scale = (n as f64).exp2();
    let num = if k == 0 { 0.0 } else { ln_two_cosh(k as f64 * y / scale) };
    let den: f64 = (1..=n).map(|j| ln_one_plus_two_cosh(y / (j as f64).exp2())).sum();
    let v = (num - den).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("phi overflows at y = {y}")))
    }
}

/// `sum_k q'(n,k) phi~_(n,k)(y)`, which equals 1.
pub fn phi_partition_sum(n: u32, y: f64) -> Result<f64> {
    let qp = q_prime(n)?;
    let mut s = 0.0;
    for (k, q) in qp.iter().enumerate() {
        s += *q as f64 * eval_phi(n, k as u64, y)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_prime_rows() {
        assert_eq!(q_prime(0).unwrap(), [1]);
        assert_eq!(q_prime(3).unwrap(), [1, 3, 2, 3, 1, 2, 1, 1]);
        assert_eq!(q_prime(4).unwrap(), [1, 4, 3, 5, 2, 5, 3, 4, 1, 3, 2, 3, 1, 2, 1, 1]);
    }

    #[test]
    fn q_prime_is_the_lifted_unit() {
        let one = LevelPoly::from_i64(0, &[1]).unwrap();
        for n in 0..=8 {
            let lifted: Vec<u64> = one.beta_lift(n).unwrap().coeffs().iter().map(|c| c.try_into().unwrap()).collect();
            assert_eq!(lifted, q_prime(n).unwrap());
        }
    }

    #[test]
    fn unit_decomposition() {
        for n in 0..=10 {
            assert!(verify_unit_decomposition(n).unwrap().holds, "n = {n}");
        }
    }

    #[test]
    fn generating_function_head() {
        assert_eq!(stern_brocot_generating(3).unwrap(), [1, 1, 2]);
        assert_eq!(stern_brocot_generating(15).unwrap()[7..], [1, 4, 3, 5, 2, 5, 3, 4]);
        assert!(stern_brocot_generating(GENERATING_LIMIT + 1).is_err());
    }

    #[test]
    fn phi_values() {
        for y in [-3.0, 0.0, 1.7] {
            assert_eq!(eval_phi(0, 0, y).unwrap(), 1.0);
        }
        for n in 0..8 {
            let v = eval_phi(n, 0, 0.0).unwrap();
            assert!((v - 3f64.powi(-(n as i32))).abs() < 1e-15);
        }
        assert!(eval_phi(3, 8, 0.0).is_err());
        assert!(eval_phi(3, 1, f64::NAN).is_err());
        assert!(eval_phi(10, 3, 1e6).unwrap().is_finite());
    }

    #[test]
    fn phi_partition_of_unity() {
        for n in 0..=10 {
            for y in [0.0, 1.0, 2.5, -4.0, 40.0] {
                let s = phi_partition_sum(n, y).unwrap();
                assert!((s - 1.0).abs() < 1e-12, "n={n} y={y} sum={s}");
            }
        }
    }

    #[test]
    fn phi_refines() {
        for n in 0..6u32 {
            for y in [0.3, 2.0] {
                let top = 1u64 << n;
                let sum0 = eval_phi(n + 1, 0, y).unwrap() + eval_phi(n + 1, 1, y).unwrap();
                assert!((sum0 - eval_phi(n, 0, y).unwrap()).abs() < 1e-14);
                for k in 1..top {
                    let s: f64 = (2 * k - 1..=2 * k + 1).map(|i| eval_phi(n + 1, i, y).unwrap()).sum();
                    assert!((s - eval_phi(n, k, y).unwrap()).abs() < 1e-14);
                }
            }
        }
    }
}
