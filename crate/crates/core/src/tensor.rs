//! Mixed-radix indexing of tensor products and sparse slot actions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactla::{Matrix, Scalar};

/// Sparse vector keyed by linear basis index; zero entries are pruned.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Column-sparse copy of a square matrix: `cols[j]` lists the nonzero `(row, value)`.
#[derive(Clone, Debug, Default)]
pub struct SparseColumns {
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseColumns {
    pub fn from_matrix(m: &Matrix) -> Self {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseColumns { cols }
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Lexicographic mixed-radix layout: slot 0 is the most significant digit,
/// so numeric order of linear indices is lexicographic order of tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl TensorLayout {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut strides = vec![1; dims.len()];
        for s in (0..dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * dims[s + 1];
        }
        let total = dims.iter().product();
        TensorLayout {
            dims,
            strides,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn slots(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn digit(&self, index: usize, slot: usize) -> usize {
        (index / self.strides[slot]) % self.dims[slot]
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|s| self.digit(index, s)).collect()
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// `acc += k · (op in slot) v`.
    pub fn apply_slot_into(&self, acc: &mut SparseVec, k: &Scalar, slot: usize, op: &SparseColumns, v: &SparseVec) {
        if k.is_zero() {
            return;
        }
        let stride = self.strides[slot];
        for (&idx, c) in v {
            let d = self.digit(idx, slot);
            let base = idx - d * stride;
            for (row, a) in op.column(d) {
                add_entry(acc, base + row * stride, k * c * a);
            }
        }
    }

    pub fn apply_slot(&self, slot: usize, op: &SparseColumns, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        self.apply_slot_into(&mut out, &Scalar::from_integer(1.into()), slot, op, v);
        out
    }
}

pub fn add_entry(acc: &mut SparseVec, idx: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    let e = acc.entry(idx).or_insert_with(Scalar::zero);
    *e += value;
    if e.is_zero() {
        acc.remove(&idx);
    }
}

/// `acc += k · v`.
pub fn axpy(acc: &mut SparseVec, k: &Scalar, v: &SparseVec) {
    if k.is_zero() {
        return;
    }
    for (&i, c) in v {
        add_entry(acc, i, k * c);
    }
}

/// Rank of sparse vectors, via a dense matrix over their union support.
pub fn sparse_rank(vectors: &[&SparseVec]) -> usize {
    let (support, rows) = densify(vectors);
    if support.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows).rank()
}

/// Rows of the dense matrix whose rows are `vectors` restricted to their union support.
pub fn densify(vectors: &[&SparseVec]) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut support: Vec<usize> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
    support.sort_unstable();
    support.dedup();
    let rows = vectors
        .iter()
        .map(|v| {
            support
                .iter()
                .map(|i| v.get(i).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect();
    (support, rows)
}

/// Kernel basis of the linear map sending the `i`-th unit vector to `images[i]`.
pub fn kernel_of_images(images: &[SparseVec]) -> Vec<Vec<Scalar>> {
    let refs: Vec<&SparseVec> = images.iter().collect();
    let (support, rows) = densify(&refs);
    if support.is_empty() {
        return (0..images.len())
            .map(|i| {
                let mut v = vec![Scalar::zero(); images.len()];
                v[i] = Scalar::from_integer(1.into());
                v
            })
            .collect();
    }
    Matrix::from_columns(support.len(), &rows).kernel_basis()
}

/// Coordinates of `u` in the span of `basis` (assumed independent), or `None`.
pub fn express(basis: &[&SparseVec], u: &SparseVec) -> Option<Vec<Scalar>> {
    let mut all: Vec<&SparseVec> = basis.to_vec();
    all.push(u);
    let (_, rows) = densify(&all);
    let b = rows.last().cloned().unwrap_or_default();
    let columns = &rows[..rows.len() - 1];
    if columns.is_empty() {
        return if u.is_empty() { Some(Vec::new()) } else { None };
    }
    let m = Matrix::from_columns(b.len(), columns);
    m.solve(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn layout_round_trip() {
        let l = TensorLayout::new(vec![2, 3, 4]);
        assert_eq!(l.total(), 24);
        for i in 0..24 {
            assert_eq!(l.index(&l.digits(i)), i);
        }
        assert_eq!(l.digits(23), vec![1, 2, 3]);
    }

    #[test]
    fn slot_action() {
        let l = TensorLayout::new(vec![2, 2]);
        // lowering e0 -> e1 in slot 1
        let op = SparseColumns::from_matrix(&Matrix::from_i64(&[&[0, 0], &[1, 0]]));
        let v: SparseVec = [(0usize, int(1))].into_iter().collect();
        let w = l.apply_slot(1, &op, &v);
        assert_eq!(w, [(1usize, int(1))].into_iter().collect());
        let w0 = l.apply_slot(0, &op, &v);
        assert_eq!(w0, [(2usize, int(1))].into_iter().collect());
    }
}
