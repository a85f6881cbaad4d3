use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::candidate::{Tail, TraceCandidate};
use super::vertex::TVertex;
use crate::error::{Error, Result};
use crate::farey::tree::width;
use crate::farey::Fraction;

/// Largest depth accepted by [`check_trace`] and [`alpha_from_phi`].
pub const TRACE_DEPTH_LIMIT: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum TailReport {
    Missing,
    Exact(Fraction),
    Infinite,
}

/// Outcome at one vertex: `phi(v)` against the sum over `C_v`.
#[derive(Clone, Debug, Serialize)]
pub struct VertexVerdict {
    pub vertex: TVertex,
    pub phi: Fraction,
    pub truncated: Fraction,
    pub tail: TailReport,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceVerdict {
    pub depth: u32,
    /// False when some vertex had no tail value, so passing is only a
    /// necessary condition.
    pub exact: bool,
    pub vertices: Vec<VertexVerdict>,
}

impl TraceVerdict {
    pub fn valid(&self) -> bool {
        self.vertices.iter().all(|v| v.holds)
    }

    /// First failing vertex in breadth-first order (root, then by floor and index).
    pub fn first_violation(&self) -> Option<TVertex> {
        self.vertices.iter().find(|v| !v.holds).map(|v| v.vertex)
    }

    pub fn violations(&self) -> impl Iterator<Item = &VertexVerdict> {
        self.vertices.iter().filter(|v| !v.holds)
    }
}

fn check_depth(depth: u32) -> Result<()> {
    if depth > TRACE_DEPTH_LIMIT {
        return Err(Error::FloorTooLarge { floor: depth, limit: TRACE_DEPTH_LIMIT });
    }
    Ok(())
}

fn slot(index: u64) -> usize {
    (index / 2) as usize
}

/// Values of `phi` on odd vertices of floors `0..=depth`, validated.
fn tabulate(t: &dyn TraceCandidate, depth: u32) -> Result<Vec<Vec<BigRational>>> {
    check_depth(depth)?;
    if !t.phi(TVertex::Star).is_one() {
        return Err(Error::InvalidCandidate("value at the root must be 1".into()));
    }
    let one = BigRational::one();
    let mut out = Vec::with_capacity(depth as usize + 1);
    for n in 0..=depth {
        let row: Vec<BigRational> = (1..=width(n))
            .step_by(2)
            .map(|k| {
                let x = t.phi(TVertex::Node { floor: n, index: k });
                if x.is_negative() || x > one {
                    Err(Error::OutsideUnitInterval(format!("value {x} at ({n},{k})")))
                } else {
                    Ok(x)
                }
            })
            .collect::<Result<_>>()?;
        out.push(row);
    }
    Ok(out)
}

/// Checks `phi(v) >= sum of phi over C_v` for the root and every vertex with
/// floor below `depth`. The sum is cut at floor `depth` and completed with
/// the candidate's tail when it has one.
pub fn check_trace(t: &dyn TraceCandidate, depth: u32) -> Result<TraceVerdict> {
    let phi = tabulate(t, depth)?;
    // Sums of phi along R-chains and L-chains starting at each vertex.
    let mut sr: Vec<Vec<BigRational>> = Vec::with_capacity(phi.len());
    let mut sl: Vec<Vec<BigRational>> = Vec::with_capacity(phi.len());
    for n in (0..=depth).rev() {
        let next = (depth - n) as usize;
        let mut r_row = Vec::with_capacity(phi[n as usize].len());
        let mut l_row = Vec::with_capacity(phi[n as usize].len());
        for k in (1..=width(n)).step_by(2) {
            let x = &phi[n as usize][slot(k)];
            let (mut r, mut l) = (x.clone(), x.clone());
            if n < depth {
                if k < width(n) {
                    r += &sr[next - 1][slot(2 * k + 1)];
                }
                l += &sl[next - 1][slot(2 * k - 1)];
            }
            r_row.push(r);
            l_row.push(l);
        }
        sr.push(r_row);
        sl.push(l_row);
    }
    sr.reverse();
    sl.reverse();

    let mut exact = true;
    let mut vertices = Vec::new();
    let mut judge = |v: TVertex, value: &BigRational, truncated: BigRational| {
        let (bound, tail) = match t.tail(v, depth) {
            None => {
                exact = false;
                (Some(truncated.clone()), TailReport::Missing)
            }
            Some(Tail::Infinite) => (None, TailReport::Infinite),
            Some(Tail::Exact(s)) => {
                let report = TailReport::Exact(Fraction::from_rational(&s).expect("non-negative tail"));
                (Some(&truncated + s), report)
            }
        };
        let holds = bound.is_some_and(|b| *value >= b);
        vertices.push(VertexVerdict {
            vertex: v,
            phi: Fraction::from_rational(value).expect("checked range"),
            truncated: Fraction::from_rational(&truncated).expect("non-negative sum"),
            tail,
            holds,
        });
    };

    judge(TVertex::Star, &BigRational::one(), sl[0][0].clone());
    for n in 0..depth {
        for k in (1..=width(n)).step_by(2) {
            let mut s = sr[n as usize + 1][slot(2 * k - 1)].clone();
            if k < width(n) {
                s += &sl[n as usize + 1][slot(2 * k + 1)];
            }
            judge(TVertex::Node { floor: n, index: k }, &phi[n as usize][slot(k)], s);
        }
    }
    Ok(TraceVerdict { depth, exact, vertices })
}

/// Weights on every vertex of the full diagram down to a fixed floor,
/// rebuilt from a candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTable {
    pub star: BigRational,
    /// `floors[n][k]` for `0 <= k <= 2^n`.
    pub floors: Vec<Vec<BigRational>>,
}

impl AlphaTable {
    pub fn depth(&self) -> u32 {
        self.floors.len() as u32 - 1
    }

    pub fn get(&self, floor: u32, index: u64) -> Option<&BigRational> {
        self.floors.get(floor as usize)?.get(index as usize)
    }

    pub fn first_negative(&self) -> Option<(u32, u64)> {
        self.floors.iter().enumerate().find_map(|(n, row)| {
            row.iter().position(|x| x.is_negative()).map(|k| (n as u32, k as u64))
        })
    }

    /// Vertices (floor `-1` for the root) where the weight differs from the
    /// sum over its children. Empty for a consistent table.
    pub fn residuals(&self) -> Vec<(i64, u64)> {
        let mut bad = Vec::new();
        if self.star != &self.floors[0][0] + &self.floors[0][1] {
            bad.push((-1, 0));
        }
        for (n, pair) in self.floors.windows(2).enumerate() {
            let (row, below) = (&pair[0], &pair[1]);
            for (k, x) in row.iter().enumerate() {
                let c = 2 * k;
                let mut s = below[c].clone();
                if c > 0 {
                    s += &below[c - 1];
                }
                if c + 1 < below.len() {
                    s += &below[c + 1];
                }
                if *x != s {
                    bad.push((n as i64, k as u64));
                }
            }
        }
        bad
    }
}

/// Rebuilds the weights on even vertices from `phi` on odd ones, without
/// rejecting negative values.
pub fn alpha_table(t: &dyn TraceCandidate, depth: u32) -> Result<AlphaTable> {
    let phi = tabulate(t, depth)?;
    let star = BigRational::one();
    let mut floors: Vec<Vec<BigRational>> = Vec::with_capacity(phi.len());
    let first = vec![&star - &phi[0][0], phi[0][0].clone()];
    floors.push(first);
    for m in 0..depth {
        let above = &floors[m as usize];
        let odd = &phi[m as usize + 1];
        let top = width(m + 1) as usize;
        let mut row = vec![BigRational::zero(); top + 1];
        for k in (1..top).step_by(2) {
            row[k] = odd[k / 2].clone();
        }
        row[0] = &above[0] - &row[1];
        row[top] = &above[top / 2] - &row[top - 1];
        for k in (2..top).step_by(2) {
            row[k] = &above[k / 2] - &row[k - 1] - &row[k + 1];
        }
        floors.push(row);
    }
    Ok(AlphaTable { star, floors })
}

/// As [`alpha_table`], but a negative weight is an error: the candidate
/// does not come from a trace.
pub fn alpha_from_phi(t: &dyn TraceCandidate, depth: u32) -> Result<AlphaTable> {
    let table = alpha_table(t, depth)?;
    if let Some((n, k)) = table.first_negative() {
        return Err(Error::InvalidCandidate(format!("negative weight at ({n},{k})")));
    }
    Ok(table)
}
