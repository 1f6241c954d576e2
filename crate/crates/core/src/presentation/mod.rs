//! Presentations `k[X1..Xn]/I` of split local commutative algebras, with `I`
//! stored as a subspace of the truncated polynomial ring.

pub mod ideal;
pub mod normal;

pub use ideal::{ideal_closure, presentation_from_algebra, Presentation, PresentationWarning};
pub use normal::{
    associated_graded_ideal, is_graded_presentation, is_monomial_ideal, minimal_degree_subspace, normal_form, property_star,
    MinimalDegreeSubspace, NormalForm,
};
