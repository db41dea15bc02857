//! Component maps of intertwining operators among generalized Verma
//! modules: construction from an sl(2) homomorphism, verification of the
//! commutator and Jacobi identities on truncated spaces, descent to
//! irreducible quotients, and closed-form fusion rules.

mod build;
mod conditions;
mod descent;
mod extend;
mod verify;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::gvm::conformal_weight;
use crate::linalg::{q, SparseVec, Q};
use crate::sl2::{HomTable, TensorSpace};

pub use build::{build_components, BuildOptions};
pub use conditions::{check_conditions, fusion_gvm, fusion_irr, ConditionReport, FusionValue};
pub use descent::{descend_to_irreducible, DescentReport};
pub use extend::{extend_to_full, verify_jacobi_truncated, Extension, JacobiFailure, JacobiKind, JacobiReport, Strategy};
pub use verify::{
    verify_component_commutators, verify_component_commutators_in, CommutatorFailure, CommutatorReport, FailureKind,
};

/// The maps `Y_{-s}: M(p) ⊗ M(q) → V^{M(r)}(s)` for `0 ≤ s ≤ N`.
///
/// `components[s][c]` is the image of tensor basis vector `c` (see
/// [`TensorSpace`]) as an element of the target module `V^{M(r, ℓ)}`
/// truncated at grade `N`, in that module's global indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerTable {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub level: usize,
    pub max_grade: usize,
    pub hom: HomTable,
    pub components: Vec<Vec<SparseVec>>,
    /// Part of each component in the chosen complement of the radical.
    pub k_part: Vec<Vec<SparseVec>>,
    /// Part of each component in the radical.
    pub j_part: Vec<Vec<SparseVec>>,
    /// Lowest radical grade of the target, if within the truncation.
    pub radical_offset: Option<usize>,
    /// When set, components are representatives modulo the target radical.
    pub quotient: bool,
}

impl IntertwinerTable {
    pub fn tensor(&self) -> TensorSpace {
        TensorSpace::new(self.p, self.q)
    }

    /// `Y_m(u_i) v_j` for `m ≤ 0`; zero for `m > 0` or beyond the truncation.
    pub fn component(&self, m: i64, i: usize, j: usize) -> SparseVec {
        if m > 0 || (-m) as usize > self.max_grade {
            return SparseVec::new();
        }
        self.components[(-m) as usize][self.tensor().index(i, j)].clone()
    }

    /// The rational offset `h_3 - h_1 - h_2` of the powers of `x`: the
    /// component `Y_m(u) v` multiplies `x^{-m + h_3 - h_1 - h_2}`.
    pub fn exponent_offset(&self) -> Q {
        let l = q(self.level as i64);
        conformal_weight(self.r, &l, 0) - conformal_weight(self.p, &l, 0) - conformal_weight(self.q, &l, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(SparseVec::is_zero)
    }

    /// Number of scalar entries `(grade, target index, tensor column)` that
    /// a table of this shape has, given the target grade dimensions.
    pub fn entry_count(&self, grade_dims: &[usize]) -> usize {
        grade_dims.iter().take(self.max_grade + 1).sum::<usize>() * self.tensor().dim()
    }

    /// Adds `delta` to the coefficient of target basis vector `target` in
    /// `Y_{-s}` applied to tensor column `column`.
    pub fn perturbed(&self, s: usize, column: usize, target: usize, delta: &Q) -> IntertwinerTable {
        let mut t = self.clone();
        t.components[s][column].add_term(target, delta);
        t
    }

    /// Multiplies every component by `c`.
    pub fn scaled(&self, c: &Q) -> IntertwinerTable {
        let sc = |v: &Vec<Vec<SparseVec>>| v.iter().map(|row| row.iter().map(|x| x.scaled(c)).collect()).collect();
        IntertwinerTable {
            hom: self.hom.scaled(c),
            components: sc(&self.components),
            k_part: sc(&self.k_part),
            j_part: sc(&self.j_part),
            ..self.clone()
        }
    }

    /// Deterministic text rendering used for checksums and comparisons.
    pub fn canonical_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p={} q={} r={} level={} grade={} quotient={}",
            self.p, self.q, self.r, self.level, self.max_grade, self.quotient
        );
        for (s, row) in self.components.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let _ = write!(out, "{s}:{c}:");
                for (i, x) in v.iter() {
                    let _ = write!(out, " {i}={x}");
                }
                out.push('\n');
            }
        }
        out
    }

    /// SHA-256 of [`Self::canonical_string`], hex encoded.
    pub fn checksum(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn summary(&self) -> TableSummary {
        TableSummary {
            p: self.p,
            q: self.q,
            r: self.r,
            level: self.level,
            max_grade: self.max_grade,
            radical_offset: self.radical_offset,
            nonzero_entries: self.components.iter().flatten().map(SparseVec::len).sum(),
            exponent_offset: self.exponent_offset().to_string(),
            checksum: self.checksum(),
        }
    }

    fn zero_like(&self) -> Vec<Vec<SparseVec>> {
        vec![vec![SparseVec::new(); self.tensor().dim()]; self.max_grade + 1]
    }
}

/// Compact description of a table for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub level: usize,
    pub max_grade: usize,
    pub radical_offset: Option<usize>,
    pub nonzero_entries: usize,
    pub exponent_offset: String,
    pub checksum: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::sl2::clebsch_gordan_hom;

    fn build(p: usize, q: usize, r: usize, level: usize, n: usize) -> IntertwinerTable {
        build_components(&clebsch_gordan_hom(p, q, r), level, n, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn unit_intertwiner() {
        for nn in 0..=1 {
            let t = build(0, nn, nn, 1, 3);
            for s in 1..=3 {
                assert!(t.components[s].iter().all(SparseVec::is_zero));
            }
            assert!(verify_component_commutators(&t).unwrap().passed());
            let ext = extend_to_full(&t).unwrap();
            assert!(verify_jacobi_truncated(&ext).passed());
        }
    }

    #[test]
    fn example_table_verifies() {
        let t = build(1, 1, 2, 2, 3);
        assert_eq!(t.radical_offset, Some(1));
        assert!(t.j_part[1].iter().all(SparseVec::is_zero));
        let rep = verify_component_commutators(&t).unwrap();
        assert!(rep.passed(), "{:?}", &rep.failures[..rep.failures.len().min(5)]);
        let ext = extend_to_full(&t).unwrap();
        let j = verify_jacobi_truncated(&ext);
        assert!(j.passed(), "{:?}", &j.failures[..j.failures.len().min(5)]);
    }

    #[test]
    fn counterexample_is_rejected() {
        let f = clebsch_gordan_hom(2, 2, 0);
        let err = build_components(&f, 1, 3, &BuildOptions::default()).unwrap_err();
        assert!(matches!(err, Error::HypothesisFailure(_)), "{err}");
        let opts = BuildOptions { override_conditions: true, ..Default::default() };
        let err = build_components(&f, 1, 3, &opts).unwrap_err();
        assert!(err.to_string().contains("inconsistent recursion system"), "{err}");
    }
}
