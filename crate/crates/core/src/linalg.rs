//! Exact linear algebra over the rationals.
//!
//! Everything in this crate is built on [`Q`] (arbitrary precision rationals).
//! Dense matrices are used for the small per-block systems; module elements
//! and action tables use [`SparseVec`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sparse vector indexed by basis position. Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Q>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(index: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(index, Q::one());
        v
    }

    pub fn from_dense(values: &[Q]) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in values.iter().enumerate() {
            if !c.is_zero() {
                v.0.insert(i, c.clone());
            }
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Q {
        self.0.get(&index).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_term(&mut self, index: usize, coeff: &Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(index).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&index);
        }
    }

    /// `self += scale * other`
    pub fn add_scaled(&mut self, other: &SparseVec, scale: &Q) {
        if scale.is_zero() {
            return;
        }
        for (&i, c) in &other.0 {
            self.add_term(i, &(c * scale));
        }
    }

    pub fn scaled(&self, scale: &Q) -> SparseVec {
        if scale.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, c)| (i, c * scale)).collect())
    }

    pub fn dot_dense(&self, dense: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (&i, c) in &self.0 {
            if !dense[i].is_zero() {
                acc += c * &dense[i];
            }
        }
        acc
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Q::zero();
        for (i, c) in small.iter() {
            if let Some(d) = large.0.get(&i) {
                acc += c * d;
            }
        }
        acc
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl FromIterator<(usize, Q)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Q)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in iter {
            v.add_term(i, &c);
        }
        v
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Q) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec {
        SparseVec::from_dense(&self.column(c))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &mut out.data[i * other.cols + j];
                        *cur += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for r in 0..self.rows {
            let row = self.row(r);
            let mut acc = Q::zero();
            for (i, c) in v.iter() {
                if !row[i].is_zero() {
                    acc += &row[i] * c;
                }
            }
            out.add_term(r, &acc);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    /// Reduced row echelon form that only pivots in the first `limit` columns.
    /// The remaining columns are carried along (augmented system).
    fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = &self.data[row * self.cols + c] * &inv;
                self.data[row * self.cols + c] = v;
            }
            let pivot_row: Vec<Q> = self.row(row).to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    if !pivot_row[c].is_zero() {
                        let v = &self.data[r * self.cols + c] - &factor * &pivot_row[c];
                        self.data[r * self.cols + c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank by fraction-free (Bareiss) elimination on the integer matrix
    /// obtained by clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        bareiss_rank(&mut m, self.cols)
    }

    /// Basis of `{x : A x = 0}` from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Q::zero(); self.cols];
                v[fc] = Q::one();
                for (pr, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(pr, fc).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `A X = B` for all columns of `B` at once.
    ///
    /// Free variables are set to zero. Returns the first right-hand side
    /// column that is inconsistent, if any.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution, Inconsistent> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_limited(self.cols);
        let rank = pivots.len();
        for r in rank..self.rows {
            for c in 0..rhs.cols {
                if !aug.get(r, self.cols + c).is_zero() {
                    return Err(Inconsistent { column: c, row: r });
                }
            }
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(pr, self.cols + c).clone());
            }
        }
        Ok(Solution { x, rank, unique: rank == self.cols })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let sol = self.solve(&Matrix::identity(self.rows)).ok()?;
        sol.unique.then_some(sol.x)
    }
}

/// Result of [`Matrix::solve`].
#[derive(Clone, Debug)]
pub struct Solution {
    pub x: Matrix,
    pub rank: usize,
    pub unique: bool,
}

/// The system has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    /// Right-hand side column that failed.
    pub column: usize,
    /// Row of the echelon form exposing the contradiction.
    pub row: usize,
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = (&pivot * &m[r][c] - &factor * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot.abs();
        rank += 1;
    }
    rank
}

/// Rank of a list of sparse vectors living in a space of dimension `dim`.
pub fn span_rank(vectors: &[SparseVec], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(dim, vectors).rank()
}

/// Binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * q(n - i) / q(i + 1);
    }
    acc
}

/// Kernel of the linear map whose columns are the given sparse vectors.
/// Row indices are compressed first, so they may be arbitrary.
pub fn kernel_of_columns(columns: &[SparseVec]) -> Vec<Vec<Q>> {
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for col in columns {
        for (i, _) in col.iter() {
            let next = rows.len();
            rows.entry(i).or_insert(next);
        }
    }
    if rows.is_empty() {
        return (0..columns.len())
            .map(|j| (0..columns.len()).map(|i| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
    }
    let compressed: Vec<SparseVec> = columns
        .iter()
        .map(|c| c.iter().map(|(i, x)| (rows[&i], x.clone())).collect())
        .collect();
    Matrix::from_columns(rows.len(), &compressed).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let sv = SparseVec::from_dense(&v);
            assert!(m.mul_sparse(&sv).is_zero());
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bareiss_matches_rref_rank() {
        let m = Matrix::from_rows(vec![
            vec![q(1) / q(2), q(3), q(-1)],
            vec![q(2), q(1) / q(3), q(0)],
            vec![q(5) / q(2), q(10) / q(3), q(-1)],
        ]);
        let mut r = m.clone();
        assert_eq!(r.rref().len(), m.rank());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let b = Matrix::from_i64(&[&[1], &[3]]);
        assert!(a.solve(&b).is_err());
        let b = Matrix::from_i64(&[&[1], &[2]]);
        let sol = a.solve(&b).unwrap();
        assert!(!sol.unique);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(-1, 3), q(-1));
        assert_eq!(binomial(-2, 2), q(3));
        assert_eq!(binomial(2, 3), q(0));
    }
}
