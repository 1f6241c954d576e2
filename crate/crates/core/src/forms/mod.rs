//! Homogeneous forms: quadratic forms and isotropy, nonsingularity evidence,
//! stabilizer and similarity Lie algebras, and flags in the minimal degree subspace.

pub mod lie;
pub mod nonsingular;
pub mod quadratic;

pub use lie::{action_on_w, flag_search, im_phi_lie, sim_lie, similarity_scale, stab_lie, FlagResult};
pub use nonsingular::{diagonal_rule, nonsingularity, NonsingularityConfig, NonsingularityEvidence, NonsingularityMethod, NonsingularityVerdict};
pub use quadratic::{diagonalize, isotropy, quadratic_from_poly, IsotropyEvidence, IsotropyMethod, IsotropyVerdict, QuadraticForm};
