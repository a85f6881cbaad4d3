use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest floor for which paths are enumerated (`3^9 + 1` of them).
pub const PATH_FLOOR_LIMIT: u32 = 9;

/// A monotone path from the root down to floor `N`, given by its horizontal
/// coordinates `xi_0..xi_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    coords: Vec<u64>,
}

impl Path {
    /// Checks `xi_0` in `{0,1}` and `|2 xi_n - xi_{n+1}| <= 1` inside the floor.
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        let ok = coords.first().is_some_and(|&x| x <= 1)
            && coords.windows(2).enumerate().all(|(n, w)| {
                let top = 1u64 << (n + 1);
                w[1] <= top && (2 * w[0]).abs_diff(w[1]) <= 1
            });
        if !ok {
            return Err(Error::Domain(format!("not a monotone path: {coords:?}")));
        }
        Ok(Path { coords })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Last floor reached.
    pub fn floor(&self) -> u32 {
        self.coords.len() as u32 - 1
    }

    pub fn endpoint(&self) -> u64 {
        *self.coords.last().expect("non-empty path")
    }

    /// `xi_n`, with `xi_{-1} = 0`.
    pub fn at(&self, n: i64) -> u64 {
        if n < 0 {
            0
        } else {
            self.coords[n as usize]
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All paths to floor `N` in lexicographic order, with a reverse index.
#[derive(Debug)]
pub struct PathSpace {
    floor: u32,
    paths: Vec<Path>,
    index: HashMap<Vec<u64>, usize>,
}

impl PathSpace {
    pub fn new(floor: u32) -> Result<Self> {
        let paths = enumerate_paths(floor)?;
        let index = paths.iter().enumerate().map(|(i, p)| (p.coords.clone(), i)).collect();
        Ok(PathSpace { floor, paths, index })
    }

    pub fn floor(&self) -> u32 {
        self.floor
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn position(&self, coords: &[u64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn endpoint(&self, i: usize) -> u64 {
        self.paths[i].endpoint()
    }
}

/// Every monotone path from the root to floor `floor`, in lexicographic order.
pub fn enumerate_paths(floor: u32) -> Result<Vec<Path>> {
    if floor > PATH_FLOOR_LIMIT {
        return Err(Error::FloorTooLarge { floor, limit: PATH_FLOOR_LIMIT });
    }
    let mut layer: Vec<Vec<u64>> = vec![vec![0], vec![1]];
    for n in 0..floor {
        let top = 1u64 << (n + 1);
        let mut next = Vec::with_capacity(layer.len() * 3);
        for p in &layer {
            let c = 2 * p[n as usize];
            for x in [c.wrapping_sub(1), c, c + 1] {
                if x <= top {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().map(|coords| Path { coords }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::tree::row_denominators;

    #[test]
    fn small_floors() {
        let p0 = enumerate_paths(0).unwrap();
        assert_eq!(p0.len(), 2);
        let p2 = enumerate_paths(2).unwrap();
        assert_eq!(p2.len(), 10);
        let mut counts = [0u64; 5];
        for p in &p2 {
            counts[p.endpoint() as usize] += 1;
        }
        assert_eq!(counts, [1, 3, 2, 3, 1]);
        assert!(p2.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_paths(7).unwrap().len(), 2188);
    }

    #[test]
    fn endpoint_counts_are_denominators() {
        for n in 0..=8 {
            let mut counts = vec![0u64; (1usize << n) + 1];
            for p in enumerate_paths(n).unwrap() {
                counts[p.endpoint() as usize] += 1;
            }
            let q = row_denominators(n).unwrap();
            assert_eq!(counts, q, "floor {n}");
        }
    }

    #[test]
    fn validation() {
        assert!(Path::new(vec![1, 2, 3]).is_ok());
        assert!(Path::new(vec![1, 0]).is_err());
        assert!(Path::new(vec![2]).is_err());
        assert!(enumerate_paths(PATH_FLOOR_LIMIT + 1).is_err());
        let s = PathSpace::new(3).unwrap();
        for (i, p) in s.paths().iter().enumerate() {
            assert_eq!(s.position(p.coords()), Some(i));
        }
    }
}
