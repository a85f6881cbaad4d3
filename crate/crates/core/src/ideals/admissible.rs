use serde::Serialize;

use super::level_set::LevelSet;
use crate::error::{Error, Result};
use crate::farey::tree::{label_u64, width};
use crate::farey::Fraction;

/// What a finite quotient diagram says about the ideal it came from.
///
/// A singleton floor pins down a rational point with the plain ideal. A
/// run of pairs is compatible with an irrational point as well as with a
/// one-sided ideal, so at finite depth it stays `Undetermined`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Irrational,
    RationalPlain,
    RationalPlus,
    RationalMinus,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissible {
    /// `[r(n, min L_n), r(n, max L_n + 1)]`, clipped to 1 on the right edge.
    pub intervals: Vec<(Fraction, Fraction)>,
    pub tag: Tag,
}

/// A floor of a quotient diagram: `{a}` or `{a, a+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientFloor {
    Single(u64),
    Pair(u64),
}

impl QuotientFloor {
    pub fn from_indices(floor: u32, ks: &[u64]) -> Result<Self> {
        let bad = |reason: String| Error::Inadmissible { floor, reason };
        match *ks {
            [a] => Ok(QuotientFloor::Single(a)),
            [a, b] if b == a + 1 => Ok(QuotientFloor::Pair(a)),
            _ => Err(bad(format!("{ks:?} is neither a singleton nor two consecutive indices"))),
        }
    }

    pub fn lo(self) -> u64 {
        match self {
            QuotientFloor::Single(a) | QuotientFloor::Pair(a) => a,
        }
    }

    pub fn hi(self) -> u64 {
        match self {
            QuotientFloor::Single(a) => a,
            QuotientFloor::Pair(a) => a + 1,
        }
    }

    /// Floors allowed directly below this one.
    pub fn successors(self) -> Vec<QuotientFloor> {
        match self {
            QuotientFloor::Single(a) => vec![QuotientFloor::Single(2 * a)],
            QuotientFloor::Pair(a) => vec![
                QuotientFloor::Pair(2 * a),
                QuotientFloor::Pair(2 * a + 1),
                QuotientFloor::Single(2 * a + 1),
            ],
        }
    }
}

pub fn initial_floors() -> [QuotientFloor; 3] {
    [QuotientFloor::Single(0), QuotientFloor::Single(1), QuotientFloor::Pair(0)]
}

/// Validates a quotient diagram floor by floor.
pub fn classify_admissible(ls: &LevelSet) -> Result<Admissible> {
    let retained = ls.retained()?;
    let mut prev: Option<QuotientFloor> = None;
    let mut intervals = Vec::with_capacity(retained.len());
    let mut tag = Tag::Undetermined;
    for (n, ks) in retained.iter().enumerate() {
        let n = n as u32;
        let cur = QuotientFloor::from_indices(n, ks)?;
        if cur.hi() > width(n) {
            return Err(Error::Inadmissible { floor: n, reason: format!("{ks:?} leaves the floor") });
        }
        match prev {
            None if !initial_floors().contains(&cur) => {
                return Err(Error::Inadmissible { floor: 0, reason: format!("{ks:?} is not a floor-0 set") })
            }
            Some(p) if !p.successors().contains(&cur) => {
                return Err(Error::Inadmissible {
                    floor: n,
                    reason: format!("{:?} cannot follow {:?}", ks, retained[n as usize - 1]),
                })
            }
            _ => {}
        }
        if matches!(cur, QuotientFloor::Single(_)) {
            tag = Tag::RationalPlain;
        }
        let (p, q) = label_u64(n, cur.lo())?;
        let right = if cur.hi() < width(n) { label_u64(n, cur.hi() + 1)? } else { (1, 1) };
        intervals.push((Fraction::from_u64(p, q), Fraction::from_u64(right.0, right.1)));
        prev = Some(cur);
    }
    Ok(Admissible { intervals, tag })
}

/// Number of admissible quotient diagrams on floors `0..=depth`.
pub fn count_admissible(depth: u32) -> u64 {
    fn go(f: QuotientFloor, left: u32) -> u64 {
        if left == 0 {
            1
        } else {
            f.successors().into_iter().map(|g| go(g, left - 1)).sum()
        }
    }
    initial_floors().into_iter().map(|f| go(f, depth)).sum()
}

/// All admissible quotient diagrams on floors `0..=depth`.
pub fn enumerate_admissible(depth: u32) -> Vec<LevelSet> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<QuotientFloor>> = initial_floors().into_iter().map(|f| vec![f]).collect();
    while let Some(seq) = stack.pop() {
        if seq.len() as u32 == depth + 1 {
            let lists = seq.iter().map(|f| (f.lo()..=f.hi()).collect()).collect();
            out.push(LevelSet::from_lists(lists).expect("in range"));
            continue;
        }
        for g in seq.last().unwrap().successors() {
            let mut next = seq.clone();
            next.push(g);
            stack.push(next);
        }
    }
    out
}
