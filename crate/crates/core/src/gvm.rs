//! Truncated generalized Verma modules for affine sl(2).
//!
//! The basis at grade `d` is `enumerate_pbw(d) × {u_0..u_n}`. Elements are
//! [`SparseVec`]s over a global index that runs through the grades in order.
//! The action of every `g(m)` with `|m| ≤ N` is precomputed on every basis
//! vector when the module is built.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::{bracket, enumerate_pbw, AffineGenerator, Monomial, Straightener};
use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, SparseVec, Q};
use crate::sl2::{FinIrrep, Gen};

/// Default cap on the total number of basis vectors of a module.
pub const DEFAULT_BASIS_CAP: usize = 250_000;

/// Parameters of a truncated module `V^{M(n, ℓ)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvmConfig {
    pub n: usize,
    pub level: Q,
    pub max_grade: usize,
    pub basis_cap: usize,
}

impl GvmConfig {
    pub fn new(n: usize, level: Q, max_grade: usize) -> Self {
        GvmConfig { n, level, max_grade, basis_cap: DEFAULT_BASIS_CAP }
    }

    /// Integer-level shorthand.
    pub fn at_level(n: usize, level: i64, max_grade: usize) -> Self {
        GvmConfig::new(n, q(level), max_grade)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.basis_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == q(-2) {
            return Err(Error::InvalidConfig("the critical level -2 is excluded".into()));
        }
        Ok(())
    }
}

/// Lowest conformal weight plus `d`: `d + n(n+2) / (4(ℓ+2))`.
pub fn conformal_weight(n: usize, level: &Q, d: usize) -> Q {
    let n = n as i64;
    q(d as i64) + q(n * (n + 2)) / (q(4) * (level + q(2)))
}

/// Result of acting on an element; `truncated` is set when terms above the
/// truncation grade were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acted {
    pub value: SparseVec,
    pub truncated: bool,
}

/// Per-grade dimensions of a module, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSkeleton {
    pub n: usize,
    pub level: String,
    pub max_grade: usize,
    pub grade_dims: Vec<usize>,
    pub weight_dims: Vec<BTreeMap<i64, usize>>,
}

/// A truncated generalized Verma module with precomputed action tables.
#[derive(Clone, Debug)]
pub struct Module {
    cfg: GvmConfig,
    irrep: FinIrrep,
    basis: Vec<(Monomial, usize)>,
    grade_of: Vec<usize>,
    weight_of: Vec<i64>,
    offsets: Vec<usize>,
    index: HashMap<(Monomial, usize), usize>,
    blocks: Vec<BTreeMap<i64, Vec<usize>>>,
    tables: Vec<Vec<SparseVec>>,
}

fn gen_index(g: Gen) -> usize {
    match g {
        Gen::E => 0,
        Gen::H => 1,
        Gen::F => 2,
    }
}

impl Module {
    pub fn build(cfg: GvmConfig) -> Result<Module> {
        cfg.validate()?;
        let big_n = cfg.max_grade;
        let irrep = FinIrrep::new(cfg.n);
        let per_grade: Vec<Vec<Monomial>> = (0..=big_n).map(enumerate_pbw).collect();
        let count: usize = per_grade.iter().map(|g| g.len() * irrep.dim()).sum();
        if count > cfg.basis_cap {
            return Err(Error::ResourceCap { count, cap: cfg.basis_cap });
        }
        let mut basis = Vec::with_capacity(count);
        let mut grade_of = Vec::with_capacity(count);
        let mut weight_of = Vec::with_capacity(count);
        let mut offsets = vec![0];
        let mut index = HashMap::with_capacity(count);
        let mut blocks = Vec::with_capacity(big_n + 1);
        for (d, monos) in per_grade.into_iter().enumerate() {
            let mut block: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for mono in monos {
                for k in 0..irrep.dim() {
                    let idx = basis.len();
                    let w = mono.weight() + irrep.weight(k);
                    index.insert((mono.clone(), k), idx);
                    basis.push((mono.clone(), k));
                    grade_of.push(d);
                    weight_of.push(w);
                    block.entry(w).or_default().push(idx);
                }
            }
            blocks.push(block);
            offsets.push(basis.len());
        }
        let slots = 3 * (2 * big_n + 1);
        let mut module = Module {
            cfg,
            irrep,
            basis,
            grade_of,
            weight_of,
            offsets,
            index,
            blocks,
            tables: vec![vec![SparseVec::new(); count]; slots],
        };
        module.fill_tables();
        Ok(module)
    }

    fn slot(&self, g: Gen, m: i64) -> usize {
        gen_index(g) * (2 * self.cfg.max_grade + 1) + (m + self.cfg.max_grade as i64) as usize
    }

    fn fill_tables(&mut self) {
        let big_n = self.cfg.max_grade;
        let level = self.cfg.level.clone();
        let mut straight = Straightener::new();
        for d in 0..=big_n {
            for idx in self.grade_range(d) {
                let (mono, k) = self.basis[idx].clone();
                for g in Gen::ALL {
                    for depth in 1..=(big_n - d) {
                        let x = AffineGenerator::new(g, -(depth as i64));
                        let mut out = SparseVec::new();
                        for (m2, c) in straight.left_mul(x, &mono) {
                            out.add_term(self.index[&(m2, k)], &c);
                        }
                        let s = self.slot(g, x.mode);
                        self.tables[s][idx] = out;
                    }
                }
                let split = mono.split_first();
                for g in Gen::ALL {
                    let out = match &split {
                        None => {
                            let mut out = SparseVec::new();
                            if let Some((c, t)) = self.irrep.act_basis(g, k) {
                                out.add_term(self.index[&(Monomial::empty(), t)], &c);
                            }
                            out
                        }
                        Some((x1, rest)) => {
                            let rest_idx = self.index[&(rest.clone(), k)];
                            self.commute_through(AffineGenerator::new(g, 0), *x1, rest_idx, &level)
                        }
                    };
                    let s = self.slot(g, 0);
                    self.tables[s][idx] = out;
                    for m in 1..=d as i64 {
                        let out = match &split {
                            None => SparseVec::new(),
                            Some((x1, rest)) => {
                                let rest_idx = self.index[&(rest.clone(), k)];
                                self.commute_through(AffineGenerator::new(g, m), *x1, rest_idx, &level)
                            }
                        };
                        let s = self.slot(g, m);
                        self.tables[s][idx] = out;
                    }
                }
            }
        }
    }

    /// `y · x1 · rest = x1 · (y · rest) + [y, x1] · rest` for `y` of mode ≥ 0.
    fn commute_through(&self, y: AffineGenerator, x1: AffineGenerator, rest_idx: usize, level: &Q) -> SparseVec {
        let inner = self.act_table(y.label, y.mode, &SparseVec::unit(rest_idx));
        let mut out = self.act_table(x1.label, x1.mode, &inner);
        let b = bracket(y, x1, level);
        if let Some((c, z)) = b.term {
            out.add_scaled(&self.act_table(z.label, z.mode, &SparseVec::unit(rest_idx)), &c);
        }
        if !b.central.is_zero() {
            out.add_term(rest_idx, &b.central);
        }
        out
    }

    fn act_table(&self, g: Gen, m: i64, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if m.unsigned_abs() as usize > self.cfg.max_grade {
            return out;
        }
        let s = self.slot(g, m);
        for (i, c) in v.iter() {
            out.add_scaled(&self.tables[s][i], c);
        }
        out
    }

    pub fn config(&self) -> &GvmConfig {
        &self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.n
    }

    pub fn level(&self) -> &Q {
        &self.cfg.level
    }

    pub fn max_grade(&self) -> usize {
        self.cfg.max_grade
    }

    pub fn irrep(&self) -> FinIrrep {
        self.irrep
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn grade_dim(&self, d: usize) -> usize {
        if d > self.cfg.max_grade {
            return 0;
        }
        self.offsets[d + 1] - self.offsets[d]
    }

    pub fn grade_range(&self, d: usize) -> Range<usize> {
        if d > self.cfg.max_grade {
            return self.dim()..self.dim();
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn basis_element(&self, idx: usize) -> (&Monomial, usize) {
        let (m, k) = &self.basis[idx];
        (m, *k)
    }

    pub fn index_of(&self, mono: &Monomial, k: usize) -> Option<usize> {
        self.index.get(&(mono.clone(), k)).copied()
    }

    pub fn grade_of(&self, idx: usize) -> usize {
        self.grade_of[idx]
    }

    pub fn weight_of(&self, idx: usize) -> i64 {
        self.weight_of[idx]
    }

    /// Basis indices of the block at grade `d` and h-weight `w`.
    pub fn block(&self, d: usize, w: i64) -> &[usize] {
        self.blocks
            .get(d)
            .and_then(|b| b.get(&w))
            .map_or(&[], Vec::as_slice)
    }

    pub fn weights_at(&self, d: usize) -> Vec<i64> {
        self.blocks.get(d).map(|b| b.keys().copied().collect()).unwrap_or_default()
    }

    /// Renders a basis element as `mono⊗u_k`.
    pub fn label(&self, idx: usize) -> String {
        let (m, k) = self.basis_element(idx);
        format!("{m}⊗u{k}")
    }

    /// The element of grade 0 given by `u_k`.
    pub fn lowest(&self, k: usize) -> SparseVec {
        SparseVec::unit(self.offsets[0] + k)
    }

    /// Grade of a homogeneous element, or `None` for zero/mixed elements.
    pub fn grade_of_element(&self, v: &SparseVec) -> Option<usize> {
        let mut grades = v.iter().map(|(i, _)| self.grade_of[i]);
        let first = grades.next()?;
        grades.all(|d| d == first).then_some(first)
    }

    /// Acts with `g(m)`.
    pub fn act(&self, g: Gen, m: i64, v: &SparseVec) -> Acted {
        let big_n = self.cfg.max_grade;
        let mut truncated = false;
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            let d = self.grade_of[i];
            if m < 0 && d + m.unsigned_abs() as usize > big_n {
                truncated = true;
                continue;
            }
            if m > d as i64 {
                continue;
            }
            out.add_scaled(&self.tables[self.slot(g, m)][i], c);
        }
        Acted { value: out, truncated }
    }

    /// Acts with `g(m)`, failing if terms were dropped.
    pub fn act_exact(&self, g: Gen, m: i64, v: &SparseVec) -> Result<SparseVec> {
        let a = self.act(g, m, v);
        if a.truncated {
            let grade = v.iter().map(|(i, _)| self.grade_of[i]).max().unwrap_or(0);
            return Err(Error::Truncated { grade });
        }
        Ok(a.value)
    }

    /// Applies the negative-mode monomial `y` to `v`, rightmost factor first.
    pub fn apply_monomial(&self, mono: &Monomial, v: &SparseVec) -> Acted {
        let mut cur = v.clone();
        let mut truncated = false;
        for x in mono.factors().iter().rev() {
            let a = self.act(x.label, x.mode, &cur);
            truncated |= a.truncated;
            cur = a.value;
        }
        Acted { value: cur, truncated }
    }

    /// Matrix of `g(m)` from the block `(d, w)` to the block it lands in,
    /// with rows indexed by `block(d - m, w + wt(g))`.
    pub fn block_action(&self, g: Gen, m: i64, d: usize, w: i64) -> Matrix {
        let src = self.block(d, w);
        let td = d as i64 - m;
        let dst: &[usize] = if td < 0 { &[] } else { self.block(td as usize, w + g.weight()) };
        let pos: HashMap<usize, usize> = dst.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut out = Matrix::zeros(dst.len(), src.len());
        for (c, &i) in src.iter().enumerate() {
            for (t, x) in self.act(g, m, &SparseVec::unit(i)).value.iter() {
                out.set(pos[&t], c, x.clone());
            }
        }
        out
    }

    pub fn conformal_weight(&self, d: usize) -> Q {
        conformal_weight(self.cfg.n, &self.cfg.level, d)
    }

    /// Basis of vectors at grade `d` killed by `e(0)` and by every `g(m)`
    /// with `1 ≤ m ≤ d`. Each basis vector has a single h-weight.
    pub fn singular_vectors(&self, d: usize) -> Result<Vec<SparseVec>> {
        if d > self.cfg.max_grade {
            return Err(Error::GradeOutOfRange { grade: d, max: self.cfg.max_grade });
        }
        let mut ops = vec![(Gen::E, 0)];
        for m in 1..=d as i64 {
            for g in Gen::ALL {
                ops.push((g, m));
            }
        }
        let mut out = Vec::new();
        for w in self.weights_at(d) {
            let cols = self.block(d, w);
            let images: Vec<SparseVec> = cols
                .iter()
                .map(|&i| {
                    let mut stacked = SparseVec::new();
                    for (o, &(g, m)) in ops.iter().enumerate() {
                        for (t, c) in self.act(g, m, &SparseVec::unit(i)).value.iter() {
                            stacked.add_term(o * self.dim() + t, c);
                        }
                    }
                    stacked
                })
                .collect();
            for v in crate::linalg::kernel_of_columns(&images) {
                out.push(cols.iter().zip(&v).map(|(&i, c)| (i, c.clone())).collect());
            }
        }
        Ok(out)
    }

    pub fn skeleton(&self) -> ModuleSkeleton {
        ModuleSkeleton {
            n: self.cfg.n,
            level: self.cfg.level.to_string(),
            max_grade: self.cfg.max_grade,
            grade_dims: (0..=self.cfg.max_grade).map(|d| self.grade_dim(d)).collect(),
            weight_dims: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|(&w, v)| (w, v.len())).collect())
                .collect(),
        }
    }

    /// Coordinates of a homogeneous element relative to `block(d, w)`.
    pub fn block_coords(&self, d: usize, w: i64, v: &SparseVec) -> Vec<Q> {
        self.block(d, w).iter().map(|&i| v.get(i)).collect()
    }

    /// Element from coordinates relative to `block(d, w)`.
    pub fn from_block_coords(&self, d: usize, w: i64, coords: &[Q]) -> SparseVec {
        self.block(d, w).iter().zip(coords).map(|(&i, c)| (i, c.clone())).collect()
    }
}
