//! Finite-dimensional irreducible sl(2)-modules and their tensor products.
//!
//! The basis of `M(p)` is `u_0, ..., u_p` with `h u_k = (p-2k) u_k`,
//! `f u_k = u_{k+1}` and `e u_k = k(p-k+1) u_{k-1}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, SparseVec, Q};

/// Basis label of sl(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    E,
    H,
    F,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::E, Gen::H, Gen::F];

    /// Eigenvalue of `ad h`.
    pub fn weight(self) -> i64 {
        match self {
            Gen::E => 2,
            Gen::H => 0,
            Gen::F => -2,
        }
    }

    /// `[self, other]` as a scalar multiple of a basis element.
    pub fn bracket(self, other: Gen) -> Option<(i64, Gen)> {
        use Gen::*;
        match (self, other) {
            (H, E) => Some((2, E)),
            (E, H) => Some((-2, E)),
            (H, F) => Some((-2, F)),
            (F, H) => Some((2, F)),
            (E, F) => Some((1, H)),
            (F, E) => Some((-1, H)),
            _ => None,
        }
    }

    /// Normalized invariant form: `<e,f> = <f,e> = 1`, `<h,h> = 2`.
    pub fn form(self, other: Gen) -> i64 {
        use Gen::*;
        match (self, other) {
            (E, F) | (F, E) => 1,
            (H, H) => 2,
            _ => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::E => 'e',
            Gen::H => 'h',
            Gen::F => 'f',
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Gen::E),
            "h" => Ok(Gen::H),
            "f" => Ok(Gen::F),
            other => Err(Error::Domain(format!("unknown generator label {other:?}"))),
        }
    }
}

/// The irreducible module `M(p)` of dimension `p + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinIrrep {
    pub p: usize,
}

impl FinIrrep {
    pub fn new(p: usize) -> Self {
        FinIrrep { p }
    }

    pub fn dim(&self) -> usize {
        self.p + 1
    }

    /// h-eigenvalue of `u_k`.
    pub fn weight(&self, k: usize) -> i64 {
        self.p as i64 - 2 * k as i64
    }

    /// Coefficient and target index of `g u_k`, or `None` if it vanishes.
    pub fn act_basis(&self, g: Gen, k: usize) -> Option<(Q, usize)> {
        let p = self.p as i64;
        let ki = k as i64;
        match g {
            Gen::H => (p != 2 * ki).then(|| (q(p - 2 * ki), k)),
            Gen::F => (k < self.p).then(|| (Q::one(), k + 1)),
            Gen::E => (k > 0).then(|| (q(ki * (p - ki + 1)), k - 1)),
        }
    }

    pub fn action_matrix(&self, g: Gen) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for k in 0..self.dim() {
            if let Some((c, t)) = self.act_basis(g, k) {
                m.set(t, k, c);
            }
        }
        m
    }

    /// The invariant pairing on `M(p)` with `<u_0, u_p> = 1`.
    pub fn pairing(&self, a: usize, b: usize) -> Q {
        if a + b != self.p {
            return Q::zero();
        }
        if a.is_multiple_of(2) {
            Q::one()
        } else {
            -Q::one()
        }
    }
}

/// `g u_k` in `M(p)`.
pub fn irrep_action(p: usize, g: Gen, k: usize) -> Result<SparseVec> {
    if k > p {
        return Err(Error::IndexOutOfRange { p, index: k });
    }
    let mut out = SparseVec::new();
    if let Some((c, t)) = FinIrrep::new(p).act_basis(g, k) {
        out.add_term(t, &c);
    }
    Ok(out)
}

/// Highest weights of the irreducible summands of `M(p) ⊗ M(q)`.
pub fn tensor_decompose(p: usize, q: usize) -> Vec<usize> {
    let lo = p.abs_diff(q);
    (lo..=p + q).rev().step_by(2).collect()
}

/// Dimension of `Hom(M(p) ⊗ M(q), M(r))`.
pub fn hom_dim(p: usize, q: usize, r: usize) -> usize {
    usize::from(r <= p + q && r >= p.abs_diff(q) && (p + q - r).is_multiple_of(2))
}

/// The tensor product `M(p) ⊗ M(q)` with basis `(k1, k2)` at index `k1 * (q+1) + k2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub p: usize,
    pub q: usize,
}

impl TensorSpace {
    pub fn new(p: usize, q: usize) -> Self {
        TensorSpace { p, q }
    }

    pub fn dim(&self) -> usize {
        (self.p + 1) * (self.q + 1)
    }

    pub fn index(&self, k1: usize, k2: usize) -> usize {
        k1 * (self.q + 1) + k2
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / (self.q + 1), idx % (self.q + 1))
    }

    pub fn weight(&self, idx: usize) -> i64 {
        let (a, b) = self.split(idx);
        FinIrrep::new(self.p).weight(a) + FinIrrep::new(self.q).weight(b)
    }

    pub fn act(&self, g: Gen, v: &SparseVec) -> SparseVec {
        let (mp, mq) = (FinIrrep::new(self.p), FinIrrep::new(self.q));
        let mut out = SparseVec::new();
        for (idx, c) in v.iter() {
            let (a, b) = self.split(idx);
            if let Some((x, t)) = mp.act_basis(g, a) {
                out.add_term(self.index(t, b), &(c * x));
            }
            if let Some((x, t)) = mq.act_basis(g, b) {
                out.add_term(self.index(a, t), &(c * x));
            }
        }
        out
    }

    pub fn action_matrix(&self, g: Gen) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|i| self.act(g, &SparseVec::unit(i))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Vectors of weight `w` annihilated by `e`, normalized so the first
    /// nonzero coordinate is 1.
    pub fn highest_vectors(&self, w: i64) -> Vec<SparseVec> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.weight(i) == w).collect();
        if idx.is_empty() {
            return Vec::new();
        }
        let cols: Vec<SparseVec> = idx.iter().map(|&i| self.act(Gen::E, &SparseVec::unit(i))).collect();
        let e = Matrix::from_columns(self.dim(), &cols);
        e.nullspace()
            .into_iter()
            .map(|v| {
                let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Q::one);
                idx.iter().zip(&v).map(|(&i, c)| (i, c / &lead)).collect()
            })
            .collect()
    }
}

/// An sl(2)-homomorphism `M(p) ⊗ M(q) → M(r)` stored as an
/// `(r+1) × (p+1)(q+1)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub matrix: Matrix,
}

impl HomTable {
    pub fn zero(p: usize, q: usize, r: usize) -> Self {
        HomTable { p, q, r, matrix: Matrix::zeros(r + 1, (p + 1) * (q + 1)) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn tensor(&self) -> TensorSpace {
        TensorSpace::new(self.p, self.q)
    }

    /// `f(u_{k1} ⊗ v_{k2})` as a vector of `M(r)`.
    pub fn apply(&self, k1: usize, k2: usize) -> SparseVec {
        self.matrix.column_sparse(self.tensor().index(k1, k2))
    }

    pub fn scaled(&self, c: &Q) -> HomTable {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j) * c;
                m.set(i, j, v);
            }
        }
        HomTable { matrix: m, ..*self }
    }

    /// Checks `f(g·x) = g·f(x)` on every basis vector of the tensor space.
    pub fn intertwines(&self) -> bool {
        let t = self.tensor();
        let target = FinIrrep::new(self.r);
        Gen::ALL.iter().all(|&g| {
            let lhs = self.matrix.mul(&t.action_matrix(g));
            let rhs = target.action_matrix(g).mul(&self.matrix);
            lhs == rhs
        })
    }
}

/// The Clebsch–Gordan projection `M(p) ⊗ M(q) → M(r)`.
///
/// The tensor space is split into f-strings generated by highest weight
/// vectors; the string headed at weight `r` is sent to the basis of `M(r)`
/// with its head going to `u_0`. Returns the zero map when no such
/// homomorphism exists.
pub fn clebsch_gordan_hom(p: usize, q: usize, r: usize) -> HomTable {
    if hom_dim(p, q, r) == 0 {
        return HomTable::zero(p, q, r);
    }
    let t = TensorSpace::new(p, q);
    let mut columns = Vec::with_capacity(t.dim());
    let mut target_start = 0;
    for s in tensor_decompose(p, q) {
        let head = t.highest_vectors(s as i64).into_iter().next().expect("highest vector exists");
        if s == r {
            target_start = columns.len();
        }
        let mut v = head;
        for _ in 0..=s {
            columns.push(v.clone());
            v = t.act(Gen::F, &v);
        }
    }
    let basis = Matrix::from_columns(t.dim(), &columns);
    let inv = basis.inverse().expect("f-strings form a basis");
    let rows: Vec<usize> = (target_start..=target_start + r).collect();
    HomTable { p, q, r, matrix: inv.select_rows(&rows) }
}
