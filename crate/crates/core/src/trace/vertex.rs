use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::cf::{cf_encode, ContinuedFraction};
use crate::farey::qmark::first_vertex;
use crate::farey::tree::{check_floor, label, width, TreeVertex};
use crate::farey::Fraction;

/// Vertex of the memoryless tree: the root `Star` (floor -1) or `(n,k)`
/// with `k` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TVertex {
    Star,
    Node { floor: u32, index: u64 },
}

impl TVertex {
    pub fn node(floor: u32, index: u64) -> Result<Self> {
        check_floor(floor)?;
        if index.is_multiple_of(2) || index > width(floor) {
            return Err(Error::IndexOutOfRange { floor, index });
        }
        Ok(TVertex::Node { floor, index })
    }

    /// Floor, with `-1` for the root.
    pub fn floor(&self) -> i64 {
        match self {
            TVertex::Star => -1,
            TVertex::Node { floor, .. } => *floor as i64,
        }
    }

    /// `L(n,k) = (n+1, 2k-1)`; undefined at the root.
    pub fn move_l(&self) -> Result<TVertex> {
        match *self {
            TVertex::Star => Err(Error::Domain("L is not defined at the root".into())),
            TVertex::Node { floor, index } => TVertex::node(floor + 1, 2 * index - 1),
        }
    }

    /// `R(n,k) = (n+1, 2k+1)` for `k < 2^n`; `R(root) = (0,1)`.
    pub fn move_r(&self) -> Result<TVertex> {
        match *self {
            TVertex::Star => Ok(TVertex::Node { floor: 0, index: 1 }),
            TVertex::Node { floor, index } if index < width(floor) => TVertex::node(floor + 1, 2 * index + 1),
            TVertex::Node { floor, index } => Err(Error::Domain(format!("R is not defined at ({floor},{index})"))),
        }
    }

    /// The rational attached to the vertex: 0 at the root, `r(n,k)` otherwise.
    pub fn label(&self) -> Fraction {
        match *self {
            TVertex::Star => Fraction::zero(),
            TVertex::Node { floor, index } => label(TreeVertex { floor, index }).expect("valid vertex"),
        }
    }

    /// Inverse of [`label`](Self::label).
    pub fn from_label(x: &Fraction) -> Result<TVertex> {
        if x.is_zero() {
            return Ok(TVertex::Star);
        }
        let v = first_vertex(x)?;
        TVertex::node(v.floor, v.index)
    }

    /// All vertices on floors `-1..=max_floor`, root first, then by floor and index.
    pub fn all(max_floor: u32) -> Vec<TVertex> {
        let mut out = vec![TVertex::Star];
        for n in 0..=max_floor {
            out.extend((1..=width(n)).step_by(2).map(|k| TVertex::Node { floor: n, index: k }));
        }
        out
    }
}

impl fmt::Display for TVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TVertex::Star => write!(f, "*"),
            TVertex::Node { floor, index } => write!(f, "({floor},{index})"),
        }
    }
}

pub fn cf_of_vertex(v: TVertex) -> ContinuedFraction {
    cf_encode(&v.label()).expect("labels lie in [0,1]")
}

/// `L` on continued fractions: `[.., a_t - 1, 2]` for even `t` and
/// `[.., a_t + 1]` for odd `t`.
pub fn cf_move_l(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    match cf {
        ContinuedFraction::Zero => Err(Error::Domain("L is not defined at the root".into())),
        ContinuedFraction::One => Ok(ContinuedFraction::Terms(vec![2])),
        ContinuedFraction::Terms(t) => Ok(if t.len() % 2 == 0 { split_last(t) } else { bump_last(t) }),
    }
}

/// `R` on continued fractions: `[.., a_t + 1]` for even `t` and
/// `[.., a_t - 1, 2]` for odd `t`.
pub fn cf_move_r(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    match cf {
        ContinuedFraction::Zero => Ok(ContinuedFraction::One),
        ContinuedFraction::One => Err(Error::Domain("R is not defined at 1".into())),
        ContinuedFraction::Terms(t) => Ok(if t.len() % 2 == 0 { bump_last(t) } else { split_last(t) }),
    }
}

fn bump_last(t: &[u64]) -> ContinuedFraction {
    let mut v = t.to_vec();
    *v.last_mut().unwrap() += 1;
    ContinuedFraction::Terms(v)
}

fn split_last(t: &[u64]) -> ContinuedFraction {
    let mut v = t.to_vec();
    *v.last_mut().unwrap() -= 1;
    v.push(2);
    ContinuedFraction::Terms(v)
}

/// `C_v` cut at `max_floor`: `{L^j R root}` at the root, `{R^{j-1} L (0,1)}`
/// at `(0,1)`, and `{R^{j-1} L v} u {L^{j-1} R v}` elsewhere.
pub fn neighbor_set(v: TVertex, max_floor: u32) -> Vec<TVertex> {
    let mut out = Vec::new();
    match v {
        TVertex::Star => {
            for n in 0..=max_floor {
                out.push(TVertex::Node { floor: n, index: 1 });
            }
        }
        TVertex::Node { floor, index } => {
            for j in 1..=max_floor.saturating_sub(floor) {
                let n = floor + j;
                out.push(TVertex::Node { floor: n, index: (index << j) - 1 });
                if index < width(floor) {
                    out.push(TVertex::Node { floor: n, index: (index << j) + 1 });
                }
            }
        }
    }
    out
}

/// Whether `w` belongs to `C_v` (at any floor).
pub fn in_neighbor_set(v: TVertex, w: TVertex) -> bool {
    let TVertex::Node { floor: m, index: i } = w else { return false };
    match v {
        TVertex::Star => i == 1,
        TVertex::Node { floor: n, index: k } => {
            if m <= n {
                return false;
            }
            let c = k << (m - n);
            i + 1 == c || (k < width(n) && i == c + 1)
        }
    }
}

/// Labels of `C_v` cut at `max_floor`, generated from the continued
/// fraction `[a_1..a_t]` of `v` as `[.., a_t - 1, 1, k]` and `[.., a_t, k]`.
pub fn neighbor_labels_cf(v: TVertex, max_floor: u32) -> Vec<ContinuedFraction> {
    let cf = cf_of_vertex(v);
    let base = cf.terms().to_vec();
    let n = v.floor();
    let mut out = Vec::new();
    for k in 1..=(max_floor as i64 - n).max(0) as u64 {
        let mut a = base.clone();
        match &cf {
            ContinuedFraction::Zero => a.push(k),
            ContinuedFraction::One => a.push(k),
            ContinuedFraction::Terms(_) => {
                let mut b = base.clone();
                *b.last_mut().unwrap() -= 1;
                b.extend([1, k]);
                out.push(ContinuedFraction::from_terms(b).expect("positive terms"));
                a.push(k);
            }
        }
        out.push(ContinuedFraction::from_terms(a).expect("positive terms"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn node(n: u32, k: u64) -> TVertex {
        TVertex::node(n, k).unwrap()
    }

    fn cf(t: &[u64]) -> ContinuedFraction {
        ContinuedFraction::from_terms(t.to_vec()).unwrap()
    }

    #[test]
    fn moves() {
        assert_eq!(TVertex::Star.move_r().unwrap(), node(0, 1));
        assert_eq!(TVertex::Star.move_r().unwrap().label(), Fraction::one());
        assert!(TVertex::Star.move_l().is_err());
        assert!(node(0, 1).move_r().is_err());
        assert_eq!(node(1, 1).move_l().unwrap(), node(2, 1));
        assert_eq!(node(1, 1).move_r().unwrap(), node(2, 3));
        assert!(TVertex::node(2, 2).is_err());
    }

    #[test]
    fn cf_moves_on_half() {
        assert_eq!(cf_move_l(&cf(&[2])).unwrap(), cf(&[3]));
        assert_eq!(cf_move_r(&cf(&[2])).unwrap(), cf(&[1, 2]));
        assert_eq!(cf_move_r(&cf(&[1, 2])).unwrap(), cf(&[1, 3]));
        assert_eq!(cf_move_l(&cf(&[1, 2])).unwrap(), cf(&[1, 1, 2]));
        assert_eq!(node(1, 1).move_r().unwrap().label(), Fraction::from_u64(2, 3));
    }

    #[test]
    fn cf_moves_follow_coordinates() {
        for v in TVertex::all(9) {
            let c = cf_of_vertex(v);
            if let Ok(w) = v.move_l() {
                assert_eq!(cf_move_l(&c).unwrap(), cf_of_vertex(w), "L at {v}");
            }
            if let Ok(w) = v.move_r() {
                assert_eq!(cf_move_r(&c).unwrap(), cf_of_vertex(w), "R at {v}");
            }
        }
    }

    #[test]
    fn label_bijection() {
        let vs = TVertex::all(8);
        let labels: BTreeSet<Fraction> = vs.iter().map(|v| v.label()).collect();
        assert_eq!(labels.len(), vs.len());
        for v in vs {
            assert_eq!(TVertex::from_label(&v.label()).unwrap(), v);
            assert!(cf_of_vertex(v).height() as i64 <= 8);
        }
    }

    #[test]
    fn special_neighbor_sets() {
        assert_eq!(neighbor_set(TVertex::Star, 3), [node(0, 1), node(1, 1), node(2, 1), node(3, 1)]);
        assert_eq!(neighbor_set(node(0, 1), 3), [node(1, 1), node(2, 3), node(3, 7)]);
        assert_eq!(neighbor_set(node(1, 1), 3), [node(2, 1), node(2, 3), node(3, 3), node(3, 5)]);
        let labels: Vec<String> = neighbor_set(TVertex::Star, 3).iter().map(|w| w.label().to_string()).collect();
        assert_eq!(labels, ["1/1", "1/2", "1/3", "1/4"]);
    }

    #[test]
    fn membership_matches_enumeration() {
        let all = TVertex::all(7);
        for &v in all.iter().filter(|v| v.floor() <= 3) {
            let set: BTreeSet<TVertex> = neighbor_set(v, 7).into_iter().collect();
            for &w in &all {
                assert_eq!(in_neighbor_set(v, w), set.contains(&w), "{v} {w}");
            }
        }
    }

    #[test]
    fn both_descriptions_agree() {
        for v in TVertex::all(4) {
            let by_moves: BTreeSet<ContinuedFraction> =
                neighbor_set(v, 8).into_iter().map(cf_of_vertex).collect();
            let by_digits: BTreeSet<ContinuedFraction> = neighbor_labels_cf(v, 8).into_iter().collect();
            assert_eq!(by_moves, by_digits, "at {v}");
        }
    }
}
