use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::tree::{check_floor, label_u64, width};
use crate::farey::Fraction;

/// Largest floor size that will be enumerated explicitly.
pub const MATERIALIZE_LIMIT: u64 = 1 << 22;

/// Subset of one floor, stored either as its members or as the members of
/// its complement so that co-finite floors stay small at any depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorSet {
    pub complement: bool,
    pub indices: BTreeSet<u64>,
}

impl FloorSet {
    pub fn of(indices: impl IntoIterator<Item = u64>) -> Self {
        FloorSet { complement: false, indices: indices.into_iter().collect() }
    }

    pub fn all_except(indices: impl IntoIterator<Item = u64>) -> Self {
        FloorSet { complement: true, indices: indices.into_iter().collect() }
    }

    pub fn contains(&self, k: u64) -> bool {
        self.indices.contains(&k) != self.complement
    }

    pub fn complemented(&self) -> Self {
        FloorSet { complement: !self.complement, indices: self.indices.clone() }
    }

    /// Number of members on a floor with largest index `top`.
    pub fn count(&self, top: u64) -> u64 {
        let inside = self.indices.range(..=top).count() as u64;
        if self.complement {
            top + 1 - inside
        } else {
            inside
        }
    }

    /// Members, enumerated explicitly.
    pub fn members(&self, top: u64) -> Result<Vec<u64>> {
        if !self.complement {
            return Ok(self.indices.range(..=top).copied().collect());
        }
        if top >= MATERIALIZE_LIMIT {
            return Err(Error::Domain(format!("floor of width {top} is too large to enumerate")));
        }
        Ok((0..=top).filter(|k| !self.indices.contains(k)).collect())
    }

    /// Members of the complement, enumerated explicitly.
    pub fn non_members(&self, top: u64) -> Result<Vec<u64>> {
        self.complemented().members(top)
    }

    pub fn intersection(&self, o: &FloorSet) -> FloorSet {
        match (self.complement, o.complement) {
            (false, false) => FloorSet::of(self.indices.intersection(&o.indices).copied()),
            (false, true) => FloorSet::of(self.indices.difference(&o.indices).copied()),
            (true, false) => FloorSet::of(o.indices.difference(&self.indices).copied()),
            (true, true) => FloorSet::all_except(self.indices.union(&o.indices).copied()),
        }
    }

    pub fn union(&self, o: &FloorSet) -> FloorSet {
        self.complemented().intersection(&o.complemented()).complemented()
    }

    pub fn is_subset(&self, o: &FloorSet, top: u64) -> bool {
        match (self.complement, o.complement) {
            (false, false) => self.indices.is_subset(&o.indices),
            (false, true) => self.indices.is_disjoint(&o.indices),
            (true, true) => o.indices.range(..=top).all(|k| self.indices.contains(k)),
            (true, false) => self.count(top) <= o.count(top) && {
                (0..=top).all(|k| self.indices.contains(&k) || o.indices.contains(&k))
            },
        }
    }

    fn normalized(&self, top: u64) -> (bool, BTreeSet<u64>) {
        (self.complement, self.indices.range(..=top).copied().collect())
    }
}

/// A subdiagram described floor by floor, floors `0..=depth`.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub depth: u32,
    pub floors: Vec<FloorSet>,
}

impl PartialEq for LevelSet {
    fn eq(&self, o: &Self) -> bool {
        self.depth == o.depth
            && self.floors.iter().zip(&o.floors).enumerate().all(|(n, (a, b))| {
                let top = width(n as u32);
                a.normalized(top) == b.normalized(top) || (a.is_subset(b, top) && b.is_subset(a, top))
            })
    }
}

impl LevelSet {
    pub fn new(floors: Vec<FloorSet>) -> Result<Self> {
        if floors.is_empty() {
            return Err(Error::Domain("a level set needs at least floor 0".into()));
        }
        let depth = (floors.len() - 1) as u32;
        check_floor(depth)?;
        for (n, f) in floors.iter().enumerate() {
            if let Some(&k) = f.indices.iter().next_back() {
                if k > width(n as u32) {
                    return Err(Error::IndexOutOfRange { floor: n as u32, index: k });
                }
            }
        }
        Ok(LevelSet { depth, floors })
    }

    /// Builds from explicit retained index lists, one per floor.
    pub fn from_lists(lists: Vec<Vec<u64>>) -> Result<Self> {
        LevelSet::new(lists.into_iter().map(FloorSet::of).collect())
    }

    pub fn full(depth: u32) -> Result<Self> {
        LevelSet::new((0..=depth).map(|_| FloorSet::all_except([])).collect())
    }

    pub fn empty(depth: u32) -> Result<Self> {
        LevelSet::new((0..=depth).map(|_| FloorSet::of([])).collect())
    }

    pub fn contains(&self, floor: u32, k: u64) -> bool {
        self.floors.get(floor as usize).is_some_and(|f| f.contains(k))
    }

    pub fn complement(&self) -> LevelSet {
        LevelSet { depth: self.depth, floors: self.floors.iter().map(FloorSet::complemented).collect() }
    }

    pub fn truncate(&self, depth: u32) -> LevelSet {
        let depth = depth.min(self.depth);
        LevelSet { depth, floors: self.floors[..=depth as usize].to_vec() }
    }

    fn zip_with(&self, o: &LevelSet, f: impl Fn(&FloorSet, &FloorSet) -> FloorSet) -> Result<LevelSet> {
        if self.depth != o.depth {
            return Err(Error::DepthMismatch { left: self.depth, right: o.depth });
        }
        Ok(LevelSet { depth: self.depth, floors: self.floors.iter().zip(&o.floors).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn intersection(&self, o: &LevelSet) -> Result<LevelSet> {
        self.zip_with(o, FloorSet::intersection)
    }

    pub fn union(&self, o: &LevelSet) -> Result<LevelSet> {
        self.zip_with(o, FloorSet::union)
    }

    pub fn is_subset(&self, o: &LevelSet) -> Result<bool> {
        if self.depth != o.depth {
            return Err(Error::DepthMismatch { left: self.depth, right: o.depth });
        }
        Ok(self.floors.iter().zip(&o.floors).enumerate().all(|(n, (a, b))| a.is_subset(b, width(n as u32))))
    }

    /// Retained indices per floor, enumerated.
    pub fn retained(&self) -> Result<Vec<Vec<u64>>> {
        self.floors.iter().enumerate().map(|(n, f)| f.members(width(n as u32))).collect()
    }

    pub fn to_json(&self) -> Result<LevelSetJson> {
        let retained = self.retained()?;
        let labels = retained
            .iter()
            .enumerate()
            .map(|(n, ks)| {
                ks.iter()
                    .map(|&k| label_u64(n as u32, k).map(|(p, q)| Fraction::from_u64(p, q).to_string()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LevelSetJson { depth: self.depth, retained, labels })
    }

    pub fn from_json(j: &LevelSetJson) -> Result<Self> {
        let ls = LevelSet::from_lists(j.retained.clone())?;
        if ls.depth != j.depth {
            return Err(Error::DepthMismatch { left: ls.depth, right: j.depth });
        }
        Ok(ls)
    }
}

/// Serialized form `{"depth", "retained", "labels"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSetJson {
    pub depth: u32,
    pub retained: Vec<Vec<u64>>,
    #[serde(default)]
    pub labels: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_representation() {
        let f = FloorSet::all_except([1, 2]);
        assert!(f.contains(0) && !f.contains(1) && f.contains(4));
        assert_eq!(f.count(4), 3);
        assert_eq!(f.members(4).unwrap(), [0, 3, 4]);
        assert_eq!(f.non_members(4).unwrap(), [1, 2]);
    }

    #[test]
    fn set_algebra() {
        let a = FloorSet::of([1, 2, 3]);
        let b = FloorSet::all_except([2]);
        assert_eq!(a.intersection(&b), FloorSet::of([1, 3]));
        assert_eq!(a.union(&b), FloorSet::all_except([]));
        assert!(FloorSet::of([1, 3]).is_subset(&b, 4));
        assert!(!a.is_subset(&b, 4));
        assert!(FloorSet::all_except([0, 1]).is_subset(&FloorSet::of([2, 3, 4]), 4));
        assert!(!FloorSet::all_except([0]).is_subset(&FloorSet::of([2, 3, 4]), 4));
    }

    #[test]
    fn json_round_trip() {
        let ls = LevelSet::from_lists(vec![vec![0, 1], vec![0, 1], vec![1]]).unwrap();
        let j = ls.to_json().unwrap();
        assert_eq!(j.labels[2], ["1/3"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: LevelSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LevelSet::from_json(&back).unwrap(), ls);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(LevelSet::from_lists(vec![vec![2]]).is_err());
    }
}
