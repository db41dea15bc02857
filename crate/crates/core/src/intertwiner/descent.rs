
use crate::error::{Error, Result};
use crate::gvm::GvmConfig;
use crate::linalg::SparseVec;
use crate::pairing::PairedModule;

use super::extend::{Extension, Strategy};
use super::{check_conditions, extend_to_full, IntertwinerTable};

/// Outcome of [`descend_to_irreducible`].
#[derive(Clone, Debug)]
pub struct DescentReport {
    /// Highest weight generating the radical of `V^{M(q)}`.
    pub q_prime: usize,
    /// Number of (argument, radical vector, output grade) triples checked.
    pub checked: usize,
    /// Radical vectors of `V^{M(q)}` examined, per grade.
    pub radical_dims: Vec<usize>,
    /// The induced table with values taken modulo the radical of `V^{M(r)}`.
    pub quotient: IntertwinerTable,
}

/// Checks that `Y(a, x) v` lies in the radical of `V^{M(r)}` whenever `v`
/// lies in the radical of `V^{M(q)}`, for all basis arguments `a` and
/// output grades up to the truncation, and returns the induced table on
/// the irreducible quotients.
pub fn descend_to_irreducible(table: &IntertwinerTable) -> Result<DescentReport> {
    let report = check_conditions(table.p, table.q, table.r, table.level);
    let q_prime = report.q_prime.ok_or_else(|| {
        Error::Indeterminate(format!(
            "q = {} is not of the form m(j, n) at level {}; the radical of V^M(q) is not known to be irreducible",
            table.q, table.level
        ))
    })?;
    if !report.descent_condition {
        return Err(Error::HypothesisFailure(format!(
            "Hom(M({}) ⊗ M({}), M({q_prime})) is nonzero",
            table.p, table.r
        )));
    }
    let big_n = table.max_grade;
    let l = table.level as i64;
    let src = PairedModule::build(GvmConfig::at_level(table.q, l, big_n))?;
    let target = PairedModule::build(GvmConfig::at_level(table.r, l, big_n))?;
    let ext: Extension = extend_to_full(table)?;
    let arg = ext.argument_module();
    let mut checked = 0;
    let mut radical_dims = Vec::with_capacity(big_n + 1);
    for d in 0..=big_n {
        let rad = src.radical_basis(d)?;
        radical_dims.push(rad.len());
        let mut offending = 0;
        for v in rad {
            for a in 0..arg.grade_range(big_n - d).end {
                let ka = arg.grade_of(a);
                for out in ka + d..=big_n {
                    checked += 1;
                    let s = out as i64 - ka as i64 - d as i64;
                    let y = ext.component_of(Strategy::ArgumentFirst, s, &SparseVec::unit(a), v);
                    if !target.project_k(&y).is_zero() {
                        offending += 1;
                    }
                }
            }
        }
        if offending > 0 {
            return Err(Error::DescentObstruction { grade: d, count: offending });
        }
    }
    let project = |rows: &Vec<Vec<SparseVec>>| -> Vec<Vec<SparseVec>> {
        rows.iter().map(|row| row.iter().map(|y| target.project_k(y)).collect()).collect()
    };
    let quotient = IntertwinerTable {
        components: project(&table.components),
        k_part: project(&table.components),
        j_part: table.zero_like(),
        quotient: true,
        ..table.clone()
    };
    Ok(DescentReport { q_prime, checked, radical_dims, quotient })
}
