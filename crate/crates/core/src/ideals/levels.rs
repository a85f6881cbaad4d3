use std::collections::BTreeSet;

use serde::Serialize;

use super::level_set::{FloorSet, LevelSet};
use super::theta::{descend, IdealSpec, Theta, Variant};
use crate::error::{Error, Result};
use crate::farey::tree::{children, width};

pub const IDEAL_DEPTH_LIMIT: u32 = 60;

/// Vertices of the quotient diagram, floors `0..=depth`.
pub fn quotient_levels(spec: &IdealSpec, depth: u32) -> Result<LevelSet> {
    if depth > IDEAL_DEPTH_LIMIT {
        return Err(Error::FloorTooLarge { floor: depth, limit: IDEAL_DEPTH_LIMIT });
    }
    let spec = IdealSpec::new(spec.theta.clone(), spec.variant)?;
    if let Theta::Irrational(_) = &spec.theta {
        if spec.theta.known_term_sum(depth as u64) <= depth as u64 {
            return Err(Error::InsufficientTerms { floor: depth });
        }
    }
    let d = descend(&spec.theta, depth)?;
    let floors = (0..=depth)
        .map(|n| {
            let j = d.index[n as usize];
            match d.hit {
                Some(n0) if n >= n0 => match spec.variant {
                    Variant::Plain => FloorSet::of([j]),
                    Variant::Plus => FloorSet::of([j, j + 1]),
                    Variant::Minus => FloorSet::of([j - 1, j]),
                },
                _ => FloorSet::of([j, j + 1]),
            }
        })
        .collect();
    LevelSet::new(floors)
}

/// Vertices of the ideal's own diagram: the complement of the quotient.
pub fn ideal_levels(spec: &IdealSpec, depth: u32) -> Result<LevelSet> {
    Ok(quotient_levels(spec, depth)?.complement())
}

fn parents(floor: u32, c: u64) -> impl Iterator<Item = u64> {
    c / 2..=c.div_ceil(2).min(width(floor))
}

fn retained_at_most(f: &FloorSet, top: u64, cap: u64) -> Option<Vec<u64>> {
    if f.count(top) > cap {
        None
    } else {
        f.members(top).ok()
    }
}

/// Every child of a retained vertex is retained (within the depth).
pub fn is_hereditary(ls: &LevelSet) -> bool {
    (0..ls.depth).all(|n| {
        let (cur, next) = (&ls.floors[n as usize], &ls.floors[n as usize + 1]);
        if next.complement {
            next.indices
                .range(..=width(n + 1))
                .all(|&c| parents(n, c).all(|v| !cur.contains(v)))
        } else {
            match retained_at_most(cur, width(n), next.indices.len() as u64) {
                Some(vs) => vs.iter().all(|&v| children(n, v).iter().all(|&c| next.contains(c))),
                None => false,
            }
        }
    })
}

/// A vertex whose children are all retained is itself retained.
pub fn is_directed(ls: &LevelSet) -> bool {
    (0..ls.depth).all(|n| {
        let (cur, next) = (&ls.floors[n as usize], &ls.floors[n as usize + 1]);
        if cur.complement {
            cur.indices
                .range(..=width(n))
                .all(|&v| children(n, v).iter().any(|&c| !next.contains(c)))
        } else if !next.complement {
            let candidates: BTreeSet<u64> = next.indices.iter().flat_map(|&c| parents(n, c)).collect();
            candidates
                .into_iter()
                .filter(|&v| children(n, v).iter().all(|&c| next.contains(c)))
                .all(|v| cur.contains(v))
        } else {
            let blocked: BTreeSet<u64> = next.indices.iter().flat_map(|&c| parents(n, c)).collect();
            let saturated = width(n) + 1 - blocked.len() as u64;
            if saturated > cur.indices.len() as u64 {
                return false;
            }
            (0..=width(n)).filter(|v| !blocked.contains(v)).all(|v| cur.contains(v))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Undecided,
}

/// Whether any two retained vertices on a floor have a common retained
/// descendant. `Undecided` when the depth runs out first.
pub fn has_common_descendants(ls: &LevelSet) -> Tri {
    let mut verdict = Tri::True;
    for n in 0..=ls.depth {
        let f = &ls.floors[n as usize];
        let Ok(members) = f.members(width(n)) else { return Tri::Undecided };
        if members.len() > 64 {
            return Tri::Undecided;
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                match meet(ls, n, a, b) {
                    Tri::True => {}
                    Tri::False => return Tri::False,
                    Tri::Undecided => verdict = Tri::Undecided,
                }
            }
        }
    }
    verdict
}

fn meet(ls: &LevelSet, floor: u32, a: u64, b: u64) -> Tri {
    let mut sa = BTreeSet::from([a]);
    let mut sb = BTreeSet::from([b]);
    for n in floor..ls.depth {
        let next = &ls.floors[n as usize + 1];
        let step = |s: &BTreeSet<u64>| -> BTreeSet<u64> {
            s.iter().flat_map(|&v| children(n, v)).filter(|&c| next.contains(c)).collect()
        };
        sa = step(&sa);
        sb = step(&sb);
        if sa.is_empty() || sb.is_empty() {
            return Tri::False;
        }
        if !sa.is_disjoint(&sb) {
            return Tri::True;
        }
        if sa.len() + sb.len() > 4096 {
            return Tri::Undecided;
        }
    }
    Tri::Undecided
}
