use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sl2::hom_dim;
use crate::weyl::{m_of, representation};

/// Hypotheses for constructing intertwining operators into `V^{M(r)}` and
/// for descending them to irreducible quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub level: usize,
    /// `(j, n)` with `r = m(j, n)`, if any.
    pub r_index: Option<(usize, usize)>,
    /// Highest weight generating the radical of `V^{M(r)}`.
    pub r_prime: Option<usize>,
    /// Highest weight generating the radical of `V^{M(r')}`.
    pub r_second: Option<usize>,
    pub hom_r_prime: Option<usize>,
    pub hom_r_second: Option<usize>,
    /// Highest weight generating the radical of `V^{M(q)}`.
    pub q_prime: Option<usize>,
    /// `dim Hom(M(p) ⊗ M(r), M(q'))`.
    pub hom_descent: Option<usize>,
    pub radical_irreducible_known: bool,
    pub no_hom_to_r_prime: bool,
    pub no_hom_to_r_second: bool,
    pub descent_condition: bool,
}

impl ConditionReport {
    /// All hypotheses for building components hold.
    pub fn passes(&self) -> bool {
        self.radical_irreducible_known && self.no_hom_to_r_prime && self.no_hom_to_r_second
    }

    pub fn failure_reason(&self) -> Option<String> {
        if !self.radical_irreducible_known {
            return Some(format!(
                "r = {} is not of the form m(j, n) at level {}; irreducibility of the radical is not established",
                self.r, self.level
            ));
        }
        if !self.no_hom_to_r_prime {
            return Some(format!("Hom(M({}) ⊗ M({}), M({})) is nonzero", self.p, self.q, self.r_prime.unwrap_or(0)));
        }
        if !self.no_hom_to_r_second {
            return Some(format!("Hom(M({}) ⊗ M({}), M({})) is nonzero", self.p, self.q, self.r_second.unwrap_or(0)));
        }
        None
    }
}

/// Evaluates the hypotheses for `(p, q, r)` at level `ℓ`. Never fails;
/// problems are reported through the flags.
pub fn check_conditions(p: usize, q: usize, r: usize, level: usize) -> ConditionReport {
    let r_index = representation(r, level);
    let r_prime = r_index.and_then(|(j, n)| m_of(j + 1, n, level).ok());
    let r_second = r_index.and_then(|(j, n)| m_of(j + 2, n, level).ok());
    let hom_r_prime = r_prime.map(|x| hom_dim(p, q, x));
    let hom_r_second = r_second.map(|x| hom_dim(p, q, x));
    let q_prime = representation(q, level).and_then(|(j, n)| m_of(j + 1, n, level).ok());
    let hom_descent = q_prime.map(|x| hom_dim(p, r, x));
    ConditionReport {
        p,
        q,
        r,
        level,
        r_index,
        r_prime,
        r_second,
        hom_r_prime,
        hom_r_second,
        q_prime,
        hom_descent,
        radical_irreducible_known: r_index.is_some(),
        no_hom_to_r_prime: hom_r_prime == Some(0),
        no_hom_to_r_second: hom_r_second == Some(0),
        descent_condition: hom_descent == Some(0),
    }
}

/// A fusion rule, or no claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FusionValue {
    Value(usize),
    Indeterminate,
}

impl fmt::Display for FusionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionValue::Value(v) => write!(f, "{v}"),
            FusionValue::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Fusion rule for `V^{M(p)} ⊗ V^{M(q)} → V^{M(r)}`.
pub fn fusion_gvm(p: usize, q: usize, r: usize, level: usize) -> FusionValue {
    if check_conditions(p, q, r, level).passes() {
        FusionValue::Value(hom_dim(p, q, r))
    } else {
        FusionValue::Indeterminate
    }
}

/// Fusion rule for `V^{M(p)} ⊗ L(q) → L(r)`.
pub fn fusion_irr(p: usize, q: usize, r: usize, level: usize) -> FusionValue {
    let report = check_conditions(p, q, r, level);
    if report.passes() && report.descent_condition {
        FusionValue::Value(hom_dim(p, q, r))
    } else {
        FusionValue::Indeterminate
    }
}
