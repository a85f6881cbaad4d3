use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Symmetric Laurent polynomial `c_0 + sum_{d>0} c_d (X^d + X^{-d})`, stored
/// as `c_0..c_D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymLaurent {
    coeffs: Vec<BigInt>,
}

impl SymLaurent {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        SymLaurent { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        SymLaurent::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        SymLaurent::from_i64(&[1])
    }

    /// `X^{-1} + 1 + X`.
    pub fn rho() -> Self {
        SymLaurent::from_i64(&[1, 1])
    }

    /// Coefficient of `X^d` (equal to that of `X^{-d}`).
    pub fn coeff(&self, d: i64) -> BigInt {
        self.coeffs.get(d.unsigned_abs() as usize).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// All coefficients from `X^{-D}` to `X^D`.
    pub fn to_full(&self) -> Vec<BigInt> {
        let d = self.degree();
        (0..=2 * d).map(|i| self.coeff(i as i64 - d as i64)).collect()
    }

    /// Inverse of [`to_full`](Self::to_full); fails on an asymmetric input.
    pub fn from_full(full: &[BigInt]) -> Result<Self> {
        if full.len().is_multiple_of(2) {
            return Err(Error::Domain("full coefficient list must have odd length".into()));
        }
        let d = full.len() / 2;
        if (0..d).any(|i| full[i] != full[full.len() - 1 - i]) {
            return Err(Error::Domain("Laurent polynomial is not symmetric".into()));
        }
        Ok(SymLaurent::new(full[d..].to_vec()))
    }

    /// `p(X^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut out = vec![BigInt::zero(); self.degree() * m + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[d * m] = c.clone();
        }
        SymLaurent::new(out)
    }

    /// `rho(X) rho(X^2) ... rho(X^{2^{n-1}})`.
    pub fn rho_n(n: u32) -> Self {
        (0..n).fold(SymLaurent::one(), |acc, k| &acc * &SymLaurent::rho().substitute_power(1 << k))
    }
}

impl Mul for &SymLaurent {
    type Output = SymLaurent;

    fn mul(self, o: &SymLaurent) -> SymLaurent {
        let (a, b) = (self.to_full(), o.to_full());
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        SymLaurent::from_full(&out).expect("product of symmetric polynomials is symmetric")
    }
}

impl Add for &SymLaurent {
    type Output = SymLaurent;

    fn add(self, o: &SymLaurent) -> SymLaurent {
        let n = self.coeffs.len().max(o.coeffs.len());
        SymLaurent::new((0..n).map(|d| self.coeff(d as i64) + o.coeff(d as i64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_powers() {
        assert_eq!(SymLaurent::rho_n(0), SymLaurent::one());
        assert_eq!(SymLaurent::rho_n(1), SymLaurent::rho());
        // (X^-1 + 1 + X)(X^-2 + 1 + X^2)
        assert_eq!(SymLaurent::rho_n(2), SymLaurent::from_i64(&[1, 2, 1, 1]));
        let r3 = SymLaurent::rho_n(3);
        assert_eq!(r3.degree(), 7);
        let total: BigInt = r3.to_full().iter().sum();
        assert_eq!(total, BigInt::from(27));
    }

    #[test]
    fn full_round_trip() {
        let p = SymLaurent::from_i64(&[3, 0, -2]);
        assert_eq!(p.to_full().len(), 5);
        assert_eq!(SymLaurent::from_full(&p.to_full()).unwrap(), p);
        assert!(SymLaurent::from_full(&[BigInt::from(1), BigInt::from(0), BigInt::from(2)]).is_err());
    }

    #[test]
    fn substitution() {
        let p = SymLaurent::from_i64(&[1, 2]).substitute_power(3);
        assert_eq!(p, SymLaurent::from_i64(&[1, 0, 0, 2]));
    }
}
