use std::fmt;

use serde::{Deserialize, Serialize};

use super::fraction::Fraction;
use crate::error::{Error, Result};

/// Largest floor for which indices `0..=2^n` fit comfortably in a `u64`.
pub const MAX_FLOOR: u32 = 62;
/// Largest floor that [`row`] will materialize.
pub const ROW_LIMIT: u32 = 24;

/// Vertex `(n,k)` of the diagram, `0 <= k <= 2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeVertex {
    pub floor: u32,
    pub index: u64,
}

impl TreeVertex {
    pub fn new(floor: u32, index: u64) -> Result<Self> {
        check_floor(floor)?;
        if index > width(floor) {
            return Err(Error::IndexOutOfRange { floor, index });
        }
        Ok(TreeVertex { floor, index })
    }

    pub fn is_rightmost(&self) -> bool {
        self.index == width(self.floor)
    }

    /// Indices at floor `n+1` joined to this vertex.
    pub fn children(&self) -> Vec<u64> {
        children(self.floor, self.index)
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.floor, self.index)
    }
}

/// `2^n`, the largest index at floor `n`.
pub fn width(floor: u32) -> u64 {
    1u64 << floor
}

pub(crate) fn check_floor(floor: u32) -> Result<()> {
    if floor > MAX_FLOOR {
        Err(Error::FloorTooLarge { floor, limit: MAX_FLOOR })
    } else {
        Ok(())
    }
}

/// `{2k-1, 2k, 2k+1}` clipped to floor `n+1`.
pub fn children(floor: u32, index: u64) -> Vec<u64> {
    let top = width(floor + 1);
    let c = 2 * index;
    let mut out = Vec::with_capacity(3);
    if c > 0 {
        out.push(c - 1);
    }
    out.push(c);
    if c < top {
        out.push(c + 1);
    }
    out
}

/// `(r(n,k), r(n,k+1))` as `((p,q),(p',q'))` for `k < 2^n`, by descending
/// through the binary digits of `k`.
pub fn label_pair_u64(floor: u32, index: u64) -> Result<((u64, u64), (u64, u64))> {
    check_floor(floor)?;
    if index >= width(floor) {
        return Err(Error::NoRightNeighbour { floor, index });
    }
    let (mut l, mut r) = ((0u64, 1u64), (1u64, 1u64));
    for bit in (0..floor).rev() {
        let m = (l.0 + r.0, l.1 + r.1);
        if (index >> bit) & 1 == 0 {
            r = m;
        } else {
            l = m;
        }
    }
    Ok((l, r))
}

pub fn label_u64(floor: u32, index: u64) -> Result<(u64, u64)> {
    check_floor(floor)?;
    if index == width(floor) {
        return Ok((1, 1));
    }
    if index > width(floor) {
        return Err(Error::IndexOutOfRange { floor, index });
    }
    Ok(label_pair_u64(floor, index)?.0)
}

/// The label `r(n,k)`.
pub fn label(v: TreeVertex) -> Result<Fraction> {
    let (p, q) = label_u64(v.floor, v.index)?;
    Ok(Fraction::from_u64(p, q))
}

/// Labels of floor `n` as `(p,q)` pairs, built from floor `n-1`.
pub fn row_u64(floor: u32) -> Result<Vec<(u64, u64)>> {
    if floor > ROW_LIMIT {
        return Err(Error::FloorTooLarge { floor, limit: ROW_LIMIT });
    }
    let mut row = vec![(0u64, 1u64), (1, 1)];
    for _ in 0..floor {
        let mut next = Vec::with_capacity(2 * row.len() - 1);
        for w in row.windows(2) {
            next.push(w[0]);
            next.push((w[0].0 + w[1].0, w[0].1 + w[1].1));
        }
        next.push(*row.last().unwrap());
        row = next;
    }
    Ok(row)
}

pub fn row(floor: u32) -> Result<Vec<Fraction>> {
    Ok(row_u64(floor)?.into_iter().map(|(p, q)| Fraction::from_u64(p, q)).collect())
}

pub fn row_denominators(floor: u32) -> Result<Vec<u64>> {
    Ok(row_u64(floor)?.into_iter().map(|(_, q)| q).collect())
}

pub fn row_numerators(floor: u32) -> Result<Vec<u64>> {
    Ok(row_u64(floor)?.into_iter().map(|(p, _)| p).collect())
}
