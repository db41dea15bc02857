use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gvm::{GvmConfig, Module};
use crate::pairing::PairedModule;
use crate::sl2::{FinIrrep, Gen};

use super::IntertwinerTable;

/// What went wrong for one checked tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    /// `[g(n), Y_m(u)] v ≠ Y_{m+n}(g(0) u) v`.
    Commutator,
    /// `Y_m(u) v` has terms outside grade `-m`.
    Grading,
}

/// A failing tuple `(g, n, m, u_i, v_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorFailure {
    pub kind: FailureKind,
    pub generator: Gen,
    pub n: i64,
    pub m: i64,
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub checked: usize,
    pub failures: Vec<CommutatorFailure>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `[g(n), Y_m(u)] v = Y_{m+n}(g(0) u) v` for all `g`, `0 ≤ n ≤ N`,
/// `-N ≤ m ≤ 0` and basis vectors `u ⊗ v`, plus the grading of every
/// component. Quotient tables are compared modulo the target radical.
pub fn verify_component_commutators(table: &IntertwinerTable) -> Result<CommutatorReport> {
    let cfg = GvmConfig::at_level(table.r, table.level as i64, table.max_grade);
    if table.quotient {
        let pm = PairedModule::build(cfg)?;
        verify_component_commutators_in(pm.module(), Some(&pm), table)
    } else {
        let m = Module::build(cfg)?;
        verify_component_commutators_in(&m, None, table)
    }
}

/// As [`verify_component_commutators`] with a prebuilt target module.
/// Pass `radical` to compare modulo the radical.
pub fn verify_component_commutators_in(
    target: &Module,
    radical: Option<&PairedModule>,
    table: &IntertwinerTable,
) -> Result<CommutatorReport> {
    if target.n() != table.r || target.max_grade() != table.max_grade {
        return Err(Error::Mismatch(format!(
            "table targets V^M({}) to grade {} but the module is V^M({}) to grade {}",
            table.r,
            table.max_grade,
            target.n(),
            target.max_grade()
        )));
    }
    let big_n = table.max_grade as i64;
    let (mp, mq) = (FinIrrep::new(table.p), FinIrrep::new(table.q));
    let mut report = CommutatorReport::default();
    for s in 0..=table.max_grade {
        for i in 0..mp.dim() {
            for j in 0..mq.dim() {
                report.checked += 1;
                let y = table.component(-(s as i64), i, j);
                if y.iter().any(|(idx, _)| target.grade_of(idx) != s) {
                    report.failures.push(CommutatorFailure {
                        kind: FailureKind::Grading,
                        generator: Gen::H,
                        n: 0,
                        m: -(s as i64),
                        u: i,
                        v: j,
                    });
                }
            }
        }
    }
    for g in Gen::ALL {
        for n in 0..=big_n {
            for m in -big_n..=0 {
                for i in 0..mp.dim() {
                    for j in 0..mq.dim() {
                        report.checked += 1;
                        let mut diff = target.act(g, n, &table.component(m, i, j)).value;
                        if n == 0 {
                            if let Some((c, t)) = mq.act_basis(g, j) {
                                diff.add_scaled(&table.component(m, i, t), &-c);
                            }
                        }
                        if let Some((c, t)) = mp.act_basis(g, i) {
                            diff.add_scaled(&table.component(m + n, t, j), &-c);
                        }
                        let bad = match radical {
                            Some(pm) => !pm.project_k(&diff).is_zero(),
                            None => !diff.is_zero(),
                        };
                        if bad {
                            report.failures.push(CommutatorFailure {
                                kind: FailureKind::Commutator,
                                generator: g,
                                n,
                                m,
                                u: i,
                                v: j,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

