//! Fixed workloads shared by the benchmarks.

use affsl2::sl2::clebsch_gordan_hom;
use affsl2::{GvmConfig, HomTable};

/// `(n, level, grade)` triples for module and pairing benchmarks.
pub const MODULE_CASES: &[(usize, i64, usize)] = &[(0, 1, 5), (1, 2, 5), (2, 2, 6)];

/// `(p, q, r, level, grade)` for component construction.
pub const INTERTWINER_CASES: &[(usize, usize, usize, usize, usize)] = &[(0, 1, 1, 1, 3), (1, 0, 1, 2, 3), (1, 1, 2, 2, 3)];

pub fn module_config(case: (usize, i64, usize)) -> GvmConfig {
    GvmConfig::at_level(case.0, case.1, case.2)
}

pub fn hom(case: (usize, usize, usize, usize, usize)) -> HomTable {
    clebsch_gordan_hom(case.0, case.1, case.2)
}
