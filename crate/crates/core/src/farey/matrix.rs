use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::fraction::Fraction;
use super::qmark::question_mark_dyadic;
use super::cf::cf_encode;
use super::tree::{check_floor, label_pair_u64, TreeVertex};
use crate::error::{Error, Result};

/// Integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        UnimodularMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `det = 1`, `0 <= b <= d`, `0 <= a <= c`.
    pub fn in_gamma_plus(&self) -> bool {
        self.det().is_one()
            && !self.b.is_negative()
            && self.b <= self.d
            && !self.a.is_negative()
            && self.a <= self.c
    }
}

impl Mul for &UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn mat_a() -> UnimodularMatrix {
    UnimodularMatrix::new(1, 0, 1, 1)
}

pub fn mat_b() -> UnimodularMatrix {
    UnimodularMatrix::new(1, 1, 0, 1)
}

pub fn mat_j() -> UnimodularMatrix {
    UnimodularMatrix::new(0, 1, 1, 0)
}

pub fn mat_m(a: i64) -> UnimodularMatrix {
    UnimodularMatrix::new(a, 1, 1, 0)
}

/// `[[p', p], [q', q]]` from `r(n,k) = p/q` and `r(n,k+1) = p'/q'`.
pub fn vertex_to_matrix(v: TreeVertex) -> Result<UnimodularMatrix> {
    let ((p, q), (p1, q1)) = label_pair_u64(v.floor, v.index)?;
    Ok(UnimodularMatrix {
        a: p1.into(),
        b: p.into(),
        c: q1.into(),
        d: q.into(),
    })
}

/// Inverse of [`vertex_to_matrix`] on the positive cone.
pub fn matrix_to_vertex(m: &UnimodularMatrix) -> Result<TreeVertex> {
    if !m.in_gamma_plus() {
        return Err(Error::NotInCone);
    }
    let left = Fraction::from_rational(&num_rational::BigRational::new(m.b.clone(), m.d.clone()))?;
    let right = Fraction::from_rational(&num_rational::BigRational::new(m.a.clone(), m.c.clone()))?;
    let lcf = cf_encode(&left)?;
    let n = lcf.height().max(cf_encode(&right)?.height());
    let n = u32::try_from(n).map_err(|_| Error::FloorTooLarge { floor: u32::MAX, limit: super::tree::MAX_FLOOR })?;
    check_floor(n)?;
    let (k, h) = question_mark_dyadic(&lcf);
    let k = (k << (n as u64 - h) as usize).to_u64().ok_or(Error::NotInCone)?;
    let ((p, q), (p1, q1)) = label_pair_u64(n, k)?;
    let same = |f: &Fraction, x: u64, y: u64| f.to_u64_pair() == Some((x, y));
    if same(&left, p, q) && same(&right, p1, q1) {
        Ok(TreeVertex { floor: n, index: k })
    } else {
        Err(Error::Internal(format!("pair {left}, {right} not adjacent at floor {n}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCounterexample {
    pub a: u32,
    pub b: u32,
    pub identity: &'static str,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordVerdict {
    pub checked: usize,
    pub counterexample: Option<WordCounterexample>,
}

impl WordVerdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `B^a A^b = M(a)M(b)` and `A^a B^b = J M(a) M(b) J` on a grid.
pub fn verify_matrix_words(amax: u32, bmax: u32) -> WordVerdict {
    let (ma, mb, mj) = (mat_a(), mat_b(), mat_j());
    let mut checked = 0;
    for a in 1..=amax {
        for b in 1..=bmax {
            let mm = &mat_m(a as i64) * &mat_m(b as i64);
            let lhs1 = &mb.pow(a) * &ma.pow(b);
            let lhs2 = &ma.pow(a) * &mb.pow(b);
            let rhs2 = &(&mj * &mm) * &mj;
            for (name, l, r) in [("B^a A^b = M(a)M(b)", &lhs1, &mm), ("A^a B^b = J M(a)M(b) J", &lhs2, &rhs2)] {
                checked += 1;
                if l != r {
                    return WordVerdict {
                        checked,
                        counterexample: Some(WordCounterexample {
                            a,
                            b,
                            identity: name,
                            lhs: l.to_string(),
                            rhs: r.to_string(),
                        }),
                    };
                }
            }
        }
    }
    WordVerdict { checked, counterexample: None }
}
