//! Exact dense linear algebra: fraction-free elimination, canonical RREF,
//! nullspaces, nilpotency certificates, Jordan profiles of nilpotent
//! matrices, and trace Gram matrices.
//!
//! The forward pass follows the Bareiss one-step schedule (every division is
//! by the previous pivot), which keeps intermediate entries at minor size
//! instead of letting them compound. Matrices here are small — ambient
//! dimension at most ~8, coefficient systems a few hundred rows — so the
//! dense layout is the right trade.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    NotNilpotent,
    EmptyBasis,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, not square")
            }
            LinalgError::ShapeMismatch { left, right } => {
                write!(
                    f,
                    "shape mismatch: {}x{} vs {}x{}",
                    left.0, left.1, right.0, right.1
                )
            }
            LinalgError::NotNilpotent => write!(f, "matrix is not nilpotent"),
            LinalgError::EmptyBasis => write!(f, "empty basis"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// Column vector from a slice.
    pub fn column(v: &[T]) -> Self {
        Mat::from_fn(v.len(), 1, |r, _| v[r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Entries in row-major order; also the flattening used when matrices
    /// are treated as vectors of a span.
    pub fn flatten(&self) -> Vec<T> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() * k.clone()
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Mat::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() + other.at(r, c).clone()
        }))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.try_add(&other.scale(&-T::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(r, k).clone() * other.at(k, c).clone();
            }
            acc
        }))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Exact `A^k`; `A^0` is the identity.
    pub fn pow(&self, k: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.at(i, i).clone();
        }
        Ok(acc)
    }

    /// Reduced row echelon form with its pivot columns.
    ///
    /// Forward elimination is fraction-free in the Bareiss sense; the
    /// back-substitution then normalizes pivots to 1. Pivot choice (first
    /// nonzero) is deterministic, so the RREF is canonical for the row space.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let pivot = m.at(r, c).clone();
            for i in (r + 1)..m.rows {
                let head = m.at(i, c).clone();
                for j in (c + 1)..m.cols {
                    let v = (pivot.clone() * m.at(i, j).clone()
                        - head.clone() * m.at(r, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, c, T::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        // Normalize pivots and eliminate above them.
        for (i, &c) in pivots.iter().enumerate() {
            let p = m.at(i, c).clone();
            for j in c..m.cols {
                let v = m.at(i, j).clone() / p.clone();
                m.set(i, j, v);
            }
            for up in 0..i {
                let factor = m.at(up, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.at(up, j).clone() - factor.clone() * m.at(i, j).clone();
                    m.set(up, j, v);
                }
            }
        }
        // Zero out the junk below the rank (already eliminated, but keep the
        // stored matrix exactly reduced).
        for i in rank..m.rows {
            for j in 0..m.cols {
                m.set(i, j, T::zero());
            }
        }
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical nullspace basis derived from the RREF free columns.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let rref = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in rref.pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (i, &p) in rref.pivots.iter().enumerate() {
                v[p] = -rref.matrix.at(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `A x = b`, if consistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "rhs length");
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |r, c| {
            if c == self.cols {
                b[r].clone()
            } else {
                self.at(r, c).clone()
            }
        });
        let rref = aug.rref();
        aug = rref.matrix;
        // Inconsistent iff a pivot lands in the augmented column.
        if rref.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &c) in rref.pivots.iter().enumerate() {
            x[c] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref<T: Scalar> {
    pub matrix: Mat<T>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Subspace of `T^ambient` with a canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<T: Scalar> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> Subspace<T> {
    /// Canonicalizes a spanning set; dependent vectors collapse.
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<T>]) -> Self {
        if vectors.is_empty() {
            return Subspace {
                ambient_dim,
                basis: Vec::new(),
            };
        }
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "vector length"
        );
        let m = Mat::from_rows(vectors.to_vec());
        let rref = m.rref();
        let basis = (0..rref.rank)
            .map(|i| rref.matrix.row(i).to_vec())
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis vectors (rows of the RREF).
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(rows).rank() == self.dim()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if self.basis.is_empty() {
            return if v.iter().all(|x| x.is_zero()) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let cols = Mat::from_rows(self.basis.clone()).transpose();
        cols.solve(v)
    }
}

/// Exact rank and canonical nullspace, with `rank + dim null = cols`.
pub fn rref_nullspace<T: Scalar>(m: &Mat<T>) -> (usize, Subspace<T>) {
    let rank = m.rank();
    let null = Subspace::from_spanning(m.cols(), &m.nullspace());
    debug_assert_eq!(rank + null.dim(), m.cols());
    (rank, null)
}

/// Row space with canonical basis.
pub fn row_space<T: Scalar>(m: &Mat<T>) -> Subspace<T> {
    let rows: Vec<Vec<T>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    Subspace::from_spanning(m.cols(), &rows)
}

/// Least `k <= n` with `A^k = 0`, or `None` when `A^n != 0`.
pub fn nilpotency_index<T: Scalar>(a: &Mat<T>) -> Result<Option<usize>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut power = Mat::identity(n);
    for k in 1..=n {
        power = power.try_mul(a)?;
        if power.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Multiset of Jordan block sizes of a nilpotent matrix, descending.
///
/// Read off the rank sequence: the number of blocks of size >= s equals
/// `rank A^(s-1) - rank A^s`.
pub fn jordan_block_profile<T: Scalar>(a: &Mat<T>) -> Result<Vec<usize>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut ranks = vec![n];
    let mut power = Mat::identity(n);
    loop {
        power = power.try_mul(a)?;
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return Err(LinalgError::NotNilpotent);
        }
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (idx, &count) in at_least.iter().enumerate() {
        let s = idx + 1;
        let next = at_least.get(s).copied().unwrap_or(0);
        for _ in 0..count.saturating_sub(next) {
            sizes.push(s);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    Ok(sizes)
}

/// Gram matrix `G[i][j] = trace(b_i * b_j)` of a family of square matrices.
pub fn trace_gram<T: Scalar>(basis: &[Mat<T>]) -> Result<Mat<T>, LinalgError> {
    let Some(first) = basis.first() else {
        return Err(LinalgError::EmptyBasis);
    };
    if !first.is_square() {
        return Err(LinalgError::NotSquare {
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    let n = first.rows();
    for b in basis {
        if b.rows() != n || b.cols() != n {
            return Err(LinalgError::ShapeMismatch {
                left: (n, n),
                right: (b.rows(), b.cols()),
            });
        }
    }
    let k = basis.len();
    let mut g = Mat::zero(k, k);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].try_mul(&basis[j])?.trace()?;
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, QMatrix};
    use num_traits::Zero;

    /// Single nilpotent Jordan block of size `k` inside an `n x n` matrix,
    /// acting on the first `k` basis vectors.
    pub fn shift_block(n: usize, k: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        for i in 0..k.saturating_sub(1) {
            m.set(i, i + 1, q(1));
        }
        m
    }

    #[test]
    fn identity_rref() {
        let (rank, null) = rref_nullspace(&QMatrix::identity(4));
        assert_eq!(rank, 4);
        assert_eq!(null.dim(), 0);
    }

    #[test]
    fn zero_matrix_nullspace() {
        let (rank, null) = rref_nullspace(&QMatrix::zero(3, 5));
        assert_eq!(rank, 0);
        assert_eq!(null.dim(), 5);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = QMatrix::from_rows(vec![
            vec![q(1), q(2), q(3), q(4)],
            vec![q(2), q(4), q(6), q(8)],
            vec![q(0), q(1), q(0), q(1)],
        ]);
        let (rank, null) = rref_nullspace(&m);
        assert_eq!(rank, 2);
        assert_eq!(null.dim(), 2);
        // Every basis vector really is in the kernel.
        for v in null.basis() {
            assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn power_of_shift_block() {
        let n3 = shift_block(3, 3);
        assert_eq!(n3.pow(2).unwrap().rank(), 1);
        assert_eq!(n3.pow(0).unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn e_sharp_f_cube_vanishes() {
        // f = Jordan 3-block inside a 4x4: f^3 = 0, f^2 != 0.
        let f = shift_block(4, 3);
        assert!(!f.pow(2).unwrap().is_zero());
        assert!(f.pow(3).unwrap().is_zero());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(&QMatrix::zero(3, 3)).unwrap(), Some(1));
        assert_eq!(nilpotency_index(&QMatrix::identity(3)).unwrap(), None);
        // h from the cubic-threefold example: 3-block in a 5x5.
        let h = shift_block(5, 3);
        assert_eq!(nilpotency_index(&h).unwrap(), Some(3));
        assert!(nilpotency_index(&QMatrix::zero(2, 3)).is_err());
    }

    #[test]
    fn jordan_profiles() {
        assert_eq!(
            jordan_block_profile(&QMatrix::zero(4, 4)).unwrap(),
            vec![1, 1, 1, 1]
        );
        // f from the sharp example at n = 3: blocks {3, 1}.
        assert_eq!(
            jordan_block_profile(&shift_block(4, 3)).unwrap(),
            vec![3, 1]
        );
        assert!(jordan_block_profile(&QMatrix::identity(3)).is_err());
    }

    #[test]
    fn jordan_profile_of_threefold_g() {
        // g with g(e3) = e0 and g(e2) = e3 chains e2 -> e3 -> e0:
        // rank sequence 2, 1, 0 gives blocks {3, 1, 1}.
        let mut g = QMatrix::zero(5, 5);
        g.set(0, 3, q(1));
        g.set(3, 2, q(1));
        assert_eq!(g.rank(), 2);
        assert_eq!(g.pow(2).unwrap().rank(), 1);
        assert_eq!(jordan_block_profile(&g).unwrap(), vec![3, 1, 1]);
    }

    #[test]
    fn trace_gram_examples() {
        let id = QMatrix::identity(4);
        let g = trace_gram(&[id]).unwrap();
        assert_eq!(g.at(0, 0), &q(4));

        let mut e01 = QMatrix::zero(3, 3);
        e01.set(0, 1, q(1));
        let g = trace_gram(&[e01]).unwrap();
        assert_eq!(g.at(0, 0), &q(0));
    }

    #[test]
    fn trace_gram_of_sharp_example_basis_has_rank_two() {
        // Basis {diag(1,1,1,0), J, J^2, diag(0,0,0,1)} of the sharp example
        // algebra at d = 3, n = 3.
        let mut u = QMatrix::zero(4, 4);
        for i in 0..3 {
            u.set(i, i, q(1));
        }
        let j = shift_block(4, 3);
        let j2 = j.pow(2).unwrap();
        let mut z = QMatrix::zero(4, 4);
        z.set(3, 3, q(1));
        let gram = trace_gram(&[u, j, j2, z]).unwrap();
        assert_eq!(gram.rank(), 2);
        assert_eq!(gram, gram.transpose());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = QMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let x = a.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);

        let b = QMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn subspace_membership_and_coordinates() {
        let s = Subspace::from_spanning(
            3,
            &[
                vec![q(1), q(0), q(1)],
                vec![q(0), q(1), q(1)],
                vec![q(1), q(1), q(2)],
            ],
        );
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(2), q(3), q(5)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        let coords = s.coordinates(&[q(2), q(3), q(5)]).unwrap();
        assert_eq!(coords.len(), 2);
    }
}
