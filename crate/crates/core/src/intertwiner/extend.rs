use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gvm::{GvmConfig, Module};
use crate::linalg::{binomial, SparseVec, Q};
use crate::sl2::Gen;

use super::IntertwinerTable;

/// Which factor of a PBW word is peeled off first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Peel the argument `a`, then the target `b`.
    ArgumentFirst,
    /// Peel the target `b`, then the argument `a`.
    TargetFirst,
}

/// Evaluates `Y(a, x) b` for PBW basis vectors `a ∈ V^{M(p)}` and
/// `b ∈ V^{M(q)}` from a component table.
///
/// `component(s, a, b)` is the coefficient of `x^{s + h_3 - h_1 - h_2}` in
/// `Y(a, x) b`; it lies in grade `deg a + deg b + s` of `V^{M(r)}`.
pub struct Extension {
    table: IntertwinerTable,
    arg: Module,
    src: Module,
    target: Module,
    memo: Mutex<HashMap<(Strategy, i64, usize, usize), SparseVec>>,
}

/// Builds the argument, source and target modules to the table's truncation.
pub fn extend_to_full(table: &IntertwinerTable) -> Result<Extension> {
    let l = table.level as i64;
    let n = table.max_grade;
    Ok(Extension {
        table: table.clone(),
        arg: Module::build(GvmConfig::at_level(table.p, l, n))?,
        src: Module::build(GvmConfig::at_level(table.q, l, n))?,
        target: Module::build(GvmConfig::at_level(table.r, l, n))?,
        memo: Mutex::new(HashMap::new()),
    })
}

fn sign(n: i64) -> Q {
    if n % 2 == 0 {
        Q::from_integer(1.into())
    } else {
        Q::from_integer((-1).into())
    }
}

impl Extension {
    pub fn table(&self) -> &IntertwinerTable {
        &self.table
    }

    pub fn argument_module(&self) -> &Module {
        &self.arg
    }

    pub fn source_module(&self) -> &Module {
        &self.src
    }

    pub fn target_module(&self) -> &Module {
        &self.target
    }

    /// The part of `Y(a, x) b` in the given output grade.
    pub fn evaluate(&self, strategy: Strategy, a: usize, b: usize, grade: usize) -> Result<SparseVec> {
        if grade > self.table.max_grade {
            return Err(Error::GradeOutOfRange { grade, max: self.table.max_grade });
        }
        let s = grade as i64 - self.arg.grade_of(a) as i64 - self.src.grade_of(b) as i64;
        Ok(self.component(strategy, s, a, b))
    }

    /// Bilinear extension of [`Self::component`] to combinations of basis vectors.
    pub fn component_of(&self, strategy: Strategy, s: i64, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.component(strategy, s, i, j), &(x * y));
            }
        }
        out
    }

    /// Coefficient of `x^{s + h_3 - h_1 - h_2}` in `Y(a, x) b` for basis vectors.
    pub fn component(&self, strategy: Strategy, s: i64, a: usize, b: usize) -> SparseVec {
        let ka = self.arg.grade_of(a) as i64;
        let kb = self.src.grade_of(b) as i64;
        let out_grade = ka + kb + s;
        if out_grade < 0 || out_grade > self.table.max_grade as i64 {
            return SparseVec::new();
        }
        let key = (strategy, s, a, b);
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let value = match (strategy, ka > 0, kb > 0) {
            (_, false, false) => self.base(s, a, b),
            (Strategy::ArgumentFirst, true, _) | (Strategy::TargetFirst, true, false) => {
                self.peel_argument(strategy, s, a, b)
            }
            _ => self.peel_target(strategy, s, a, b),
        };
        self.memo.lock().expect("memo lock").insert(key, value.clone());
        value
    }

    fn base(&self, s: i64, a: usize, b: usize) -> SparseVec {
        let (_, i) = self.arg.basis_element(a);
        let (_, j) = self.src.basis_element(b);
        self.table.component(-s, i, j)
    }

    /// `a = g(-n) a'`:
    /// `Σ_i C(n+i-1, i) g(-n-i) C_{s-i}(a', b) - (-1)^n Σ_i C(n+i-1, i) C_{s+n+i}(a', g(i) b)`.
    fn peel_argument(&self, strategy: Strategy, s: i64, a: usize, b: usize) -> SparseVec {
        let (mono, k) = self.arg.basis_element(a);
        let (x, rest) = mono.split_first().expect("positive grade");
        let a1 = self.arg.index_of(&rest, k).expect("basis element");
        let n = -x.mode;
        let floor = -(self.arg.grade_of(a1) as i64 + self.src.grade_of(b) as i64);
        let mut out = SparseVec::new();
        let mut i = 0;
        while s - i >= floor {
            let inner = self.component(strategy, s - i, a1, b);
            if !inner.is_zero() {
                let raised = self.target.act(x.label, -n - i, &inner).value;
                out.add_scaled(&raised, &binomial(n + i - 1, i));
            }
            i += 1;
        }
        let minus_sign = -sign(n);
        for i in 0..=self.src.grade_of(b) as i64 {
            let gb = self.src.act(x.label, i, &SparseVec::unit(b)).value;
            if gb.is_zero() {
                continue;
            }
            let term = self.component_of(strategy, s + n + i, &SparseVec::unit(a1), &gb);
            out.add_scaled(&term, &(&minus_sign * binomial(n + i - 1, i)));
        }
        out
    }

    /// `b = g(-n) b'`: `g(-n) C_s(a, b') - Σ_i binom(-n, i) C_{s+n+i}(g(i) a, b')`.
    fn peel_target(&self, strategy: Strategy, s: i64, a: usize, b: usize) -> SparseVec {
        let (mono, k) = self.src.basis_element(b);
        let (x, rest) = mono.split_first().expect("positive grade");
        let b1 = self.src.index_of(&rest, k).expect("basis element");
        let n = -x.mode;
        let inner = self.component(strategy, s, a, b1);
        let mut out = self.target.act(x.label, -n, &inner).value;
        for i in 0..=self.arg.grade_of(a) as i64 {
            let ga = self.arg.act(x.label, i, &SparseVec::unit(a)).value;
            if ga.is_zero() {
                continue;
            }
            let term = self.component_of(strategy, s + n + i, &ga, &SparseVec::unit(b1));
            out.add_scaled(&term, &-binomial(-n, i));
        }
        out
    }
}

/// Which identity a Jacobi failure refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiKind {
    Commutator,
    Iterate,
    OrderIndependence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiFailure {
    pub kind: JacobiKind,
    pub generator: Gen,
    pub mode: i64,
    pub s: i64,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub checked: usize,
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the commutator and iterate formulas for `v = g(-1)1` and every
/// pair of basis vectors `a`, `b` of grade at most `N - 1`, at output
/// grades at most `N`, and compares the two peeling orders.
pub fn verify_jacobi_truncated(ext: &Extension) -> JacobiReport {
    let big_n = ext.table.max_grade as i64;
    let st = Strategy::ArgumentFirst;
    let mut report = JacobiReport::default();
    let arg_top = ext.arg.grade_range((big_n - 1).max(0) as usize).end;
    let src_top = ext.src.grade_range((big_n - 1).max(0) as usize).end;
    let arg_top = if big_n == 0 { ext.arg.grade_range(0).end } else { arg_top };
    let src_top = if big_n == 0 { ext.src.grade_range(0).end } else { src_top };
    for a in 0..arg_top {
        let ka = ext.arg.grade_of(a) as i64;
        let av = SparseVec::unit(a);
        for b in 0..src_top {
            let kb = ext.src.grade_of(b) as i64;
            let bv = SparseVec::unit(b);
            let fail = |kind, generator, mode, s| JacobiFailure {
                kind,
                generator,
                mode,
                s,
                a: ext.arg.label(a),
                b: ext.src.label(b),
            };
            for s in -(ka + kb)..=big_n - ka - kb {
                report.checked += 1;
                let x = ext.component(Strategy::ArgumentFirst, s, a, b);
                let y = ext.component(Strategy::TargetFirst, s, a, b);
                if x != y {
                    report.failures.push(fail(JacobiKind::OrderIndependence, Gen::H, 0, s));
                }
            }
            for g in Gen::ALL {
                for n in -big_n..=big_n {
                    if kb - n > big_n {
                        continue;
                    }
                    let gb = ext.src.act(g, n, &bv).value;
                    for t in -(ka + kb)..=big_n - ka - kb {
                        let out_grade = ka + kb + t - n;
                        if out_grade < 0 || out_grade > big_n || ka + kb + t > big_n {
                            continue;
                        }
                        report.checked += 1;
                        let mut lhs = ext.target.act(g, n, &ext.component(st, t, a, b)).value;
                        lhs.add_scaled(&ext.component_of(st, t, &av, &gb), &-Q::from_integer(1.into()));
                        let mut rhs = SparseVec::new();
                        for i in 0..=ka {
                            let ga = ext.arg.act(g, i, &av).value;
                            rhs.add_scaled(&ext.component_of(st, t - n + i, &ga, &bv), &binomial(n, i));
                        }
                        if lhs != rhs {
                            report.failures.push(fail(JacobiKind::Commutator, g, n, t));
                        }
                    }
                }
                for m in -big_n..=big_n {
                    if ka - m > big_n {
                        continue;
                    }
                    let ga = ext.arg.act(g, m, &av).value;
                    for s in -(ka + kb + big_n)..=big_n {
                        let out_grade = ka - m + kb + s;
                        if out_grade < 0 || out_grade > big_n || ka + kb + s > big_n {
                            continue;
                        }
                        report.checked += 1;
                        let lhs = ext.component_of(st, s, &ga, &bv);
                        let mut rhs = SparseVec::new();
                        let mut i = 0;
                        while ka + kb + s - i >= 0 {
                            let coeff = binomial(m, i);
                            if coeff.is_zero() {
                                i += 1;
                                continue;
                            }
                            let inner = ext.component(st, s - i, a, b);
                            if !inner.is_zero() {
                                let moved = ext.target.act(g, m - i, &inner).value;
                                rhs.add_scaled(&moved, &(coeff * sign(i)));
                            }
                            i += 1;
                        }
                        for i in 0..=kb {
                            let gb = ext.src.act(g, i, &bv).value;
                            let term = ext.component_of(st, s - m + i, &av, &gb);
                            rhs.add_scaled(&term, &-(binomial(m, i) * sign(m - i)));
                        }
                        if lhs != rhs {
                            report.failures.push(fail(JacobiKind::Iterate, g, m, s));
                        }
                    }
                }
            }
        }
    }
    report
}
