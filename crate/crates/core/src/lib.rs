//! Exact computations with generalized Verma modules for affine sl(2):
//! invariant pairings and radicals, Weyl group combinatorics, and the
//! recursive construction of intertwining operators from sl(2) homs.

pub mod affine;
pub mod error;
pub mod gvm;
pub mod intertwiner;
pub mod linalg;
pub mod pairing;
pub mod sl2;
pub mod weyl;

pub use affine::{AffineGenerator, Monomial};
pub use error::{Error, Result};
pub use gvm::{GvmConfig, Module};
pub use intertwiner::{build_components, BuildOptions, IntertwinerTable};
pub use pairing::{PairedModule, RadicalEmbedding};
pub use linalg::{Matrix, SparseVec, Q};
pub use sl2::{FinIrrep, Gen, HomTable};
