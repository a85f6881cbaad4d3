use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::path::PathSpace;
use super::scalar::QuadScalar;

/// First nonzero entry of an operator, used to report failed identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub value: QuadScalar,
}

/// Column-sparse operator on the span of the paths to floor `N`, with
/// coefficients in `Q(sqrt(lambda))`. Entries only ever connect paths with
/// the same endpoint; this is checked whenever entries are created.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    space: Arc<PathSpace>,
    lambda: Arc<BigRational>,
    cols: Vec<BTreeMap<usize, QuadScalar>>,
}

impl PartialEq for SparseOperator {
    fn eq(&self, o: &Self) -> bool {
        self.cols == o.cols
    }
}

impl SparseOperator {
    pub fn zero(space: &Arc<PathSpace>, lambda: &Arc<BigRational>) -> Self {
        SparseOperator { space: space.clone(), lambda: lambda.clone(), cols: vec![BTreeMap::new(); space.dim()] }
    }

    pub fn identity(space: &Arc<PathSpace>, lambda: &Arc<BigRational>) -> Self {
        Self::diagonal(space, lambda, |_| true)
    }

    /// Projection onto the paths satisfying `keep`.
    pub fn diagonal(space: &Arc<PathSpace>, lambda: &Arc<BigRational>, keep: impl Fn(usize) -> bool) -> Self {
        let mut op = Self::zero(space, lambda);
        for i in (0..space.dim()).filter(|&i| keep(i)) {
            op.cols[i].insert(i, QuadScalar::one());
        }
        op
    }

    /// Operator with the given `(row, col, value)` entries; zero values are dropped.
    pub fn from_entries(
        space: &Arc<PathSpace>,
        lambda: &Arc<BigRational>,
        entries: impl IntoIterator<Item = (usize, usize, QuadScalar)>,
    ) -> Self {
        let mut op = Self::zero(space, lambda);
        for (r, c, v) in entries {
            op.assert_block(r, c);
            if !v.is_zero() {
                op.cols[c].insert(r, v);
            }
        }
        op
    }

    fn assert_block(&self, r: usize, c: usize) {
        assert_eq!(
            self.space.endpoint(r),
            self.space.endpoint(c),
            "entry ({r},{c}) joins paths with different endpoints"
        );
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> QuadScalar {
        self.cols[c].get(&r).cloned().unwrap_or_else(QuadScalar::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Nonzero entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QuadScalar)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn first_entry(&self) -> Option<Entry> {
        self.entries().next().map(|(row, col, v)| Entry { row, col, value: v.clone() })
    }

    fn zip(&self, o: &Self, f: impl Fn(&QuadScalar, &QuadScalar) -> QuadScalar) -> Self {
        assert!(Arc::ptr_eq(&self.space, &o.space) || self.dim() == o.dim(), "operators on different spaces");
        assert_eq!(self.lambda, o.lambda, "operators over different fields");
        let zero = QuadScalar::zero();
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let mut out = BTreeMap::new();
                for r in a.keys().chain(b.keys()) {
                    if out.contains_key(r) {
                        continue;
                    }
                    let v = f(a.get(r).unwrap_or(&zero), b.get(r).unwrap_or(&zero));
                    if !v.is_zero() {
                        out.insert(*r, v);
                    }
                }
                out
            })
            .collect();
        SparseOperator { space: self.space.clone(), lambda: self.lambda.clone(), cols }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, x: &QuadScalar) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, v)| (*r, v.mul(x, &self.lambda)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseOperator { space: self.space.clone(), lambda: self.lambda.clone(), cols }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&QuadScalar::rational(r.clone()))
    }

    /// `self * o`, i.e. `o` applied first.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.lambda, o.lambda, "operators over different fields");
        let cols = o
            .cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                let mut acc: BTreeMap<usize, QuadScalar> = BTreeMap::new();
                for (k, b) in col {
                    for (r, a) in &self.cols[*k] {
                        *acc.entry(*r).or_insert_with(QuadScalar::zero) += &a.mul(b, &self.lambda);
                    }
                }
                acc.retain(|r, v| {
                    self.assert_block(*r, c);
                    !v.is_zero()
                });
                acc
            })
            .collect();
        SparseOperator { space: self.space.clone(), lambda: self.lambda.clone(), cols }
    }

    /// Product of a non-empty list, left to right.
    pub fn product(ops: &[&SparseOperator]) -> Self {
        let (last, rest) = ops.split_last().expect("non-empty product");
        rest.iter().rev().fold((*last).clone(), |acc, a| a.mul(&acc))
    }

    /// Transpose. The scalars are real, so this is the adjoint.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(&self.space, &self.lambda);
        for (r, c, v) in self.entries() {
            out.cols[r].insert(c, v.clone());
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// `P^2 = P = P*`.
    pub fn is_projection(&self) -> bool {
        self.is_self_adjoint() && self.mul(self) == *self
    }

    pub fn trace(&self) -> QuadScalar {
        let mut t = QuadScalar::zero();
        for (c, col) in self.cols.iter().enumerate() {
            if let Some(v) = col.get(&c) {
                t += v;
            }
        }
        t
    }

    /// Replaces every entry by `a + b t`, for `t^2 = lambda` rational.
    pub fn embed(&self, t: &BigRational) -> Self {
        assert_eq!(&(t * t), &*self.lambda, "t must be a square root of lambda");
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, v)| (*r, QuadScalar::rational(v.embed(t))))
                    .filter(|(_, v)| !v.a.is_zero())
                    .collect()
            })
            .collect();
        SparseOperator { space: self.space.clone(), lambda: self.lambda.clone(), cols }
    }

    /// Flips the sign of the `k`-th nonzero entry (column-major). Returns its
    /// position, or `None` when there are fewer entries.
    pub fn flip_sign(&mut self, k: usize) -> Option<(usize, usize)> {
        let (r, c) = self.entries().nth(k).map(|(r, c, _)| (r, c))?;
        let v = self.cols[c].get_mut(&r).expect("entry exists");
        *v = -&*v;
        Some((r, c))
    }

    /// Rank by exact elimination inside each endpoint block. `None` when a
    /// nonzero pivot is not invertible, which only happens if `lambda` is a
    /// square and entries use the `s` component.
    pub fn rank(&self) -> Option<usize> {
        let mut blocks: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            blocks.entry(self.space.endpoint(i)).or_default().push(i);
        }
        let mut total = 0;
        for idx in blocks.values() {
            let mut m: Vec<Vec<QuadScalar>> =
                idx.iter().map(|&r| idx.iter().map(|&c| self.get(r, c)).collect()).collect();
            total += rank_dense(&mut m, &self.lambda)?;
        }
        Some(total)
    }
}

fn rank_dense(m: &mut [Vec<QuadScalar>], lambda: &BigRational) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv(lambda)?;
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c].mul(&inv, lambda);
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = &*x - &factor.mul(y, lambda);
                }
            }
        }
        rank += 1;
    }
    debug_assert!(m.iter().skip(rank).all(|row| row.iter().all(QuadScalar::is_zero)));
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: u32) -> (Arc<PathSpace>, Arc<BigRational>) {
        (Arc::new(PathSpace::new(n).unwrap()), Arc::new(BigRational::from_integer(2.into())))
    }

    #[test]
    fn matrix_units_multiply() {
        let (s, l) = setup(2);
        let same_end: Vec<(usize, usize)> = (0..s.dim())
            .flat_map(|i| (0..s.dim()).map(move |j| (i, j)))
            .filter(|&(i, j)| s.endpoint(i) == s.endpoint(j))
            .collect();
        let unit = |(i, j): (usize, usize)| SparseOperator::from_entries(&s, &l, [(i, j, QuadScalar::one())]);
        for &a in &same_end {
            for &b in &same_end {
                let p = unit(a).mul(&unit(b));
                if a.1 == b.0 {
                    assert_eq!(p, unit((a.0, b.1)));
                } else {
                    assert!(p.is_zero());
                }
            }
            assert_eq!(unit(a).adjoint(), unit((a.1, a.0)));
        }
        let sum = (0..s.dim()).map(|i| unit((i, i))).fold(SparseOperator::zero(&s, &l), |a, b| a.add(&b));
        assert_eq!(sum, SparseOperator::identity(&s, &l));
    }

    #[test]
    #[should_panic(expected = "different endpoints")]
    fn cross_block_entries_are_rejected() {
        let (s, l) = setup(1);
        let (a, b) = (s.position(&[0, 0]).unwrap(), s.position(&[0, 1]).unwrap());
        SparseOperator::from_entries(&s, &l, [(a, b, QuadScalar::one())]);
    }

    #[test]
    fn rank_and_trace() {
        let (s, l) = setup(2);
        let p = SparseOperator::diagonal(&s, &l, |i| i % 3 == 0);
        assert_eq!(p.rank(), Some((0..s.dim()).filter(|i| i % 3 == 0).count()));
        assert_eq!(p.trace(), QuadScalar::from_i64(p.rank().unwrap() as i64));
        assert!(p.is_projection());
        let mut q = p.clone();
        q.flip_sign(0);
        assert!(!q.is_projection());
        assert_eq!(q.rank(), p.rank());
    }
}
