//! Structure-constant algebras: radical and its filtration, split detection,
//! Wedderburn-Malcev complements, derivations and Lie series.

pub mod derivation;
pub mod lie;
pub mod radical;
pub mod semisimple;
pub mod structure;
pub mod wedderburn;

pub use derivation::{derivation_algebra, der_into, induced_on_jj2, inner_derivations, ker_phi_lie, phi_lie_image};
pub use lie::{LieAmbient, LieSeries, LieSubalgebra};
pub use radical::{jacobson_radical, jacobson_radical_with, trace_form_radical, RadicalData, RadicalMethod};
pub use semisimple::{commutative_blocks, split_info, CommutativeBlocks, SplitInfo, SplitStatus};
pub use structure::StructureAlgebra;
pub use wedderburn::{newton_idempotent, wm_complement, WMDecomposition};
