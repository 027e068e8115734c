//! Geometry of a Riemannian submersion from a 3-manifold onto a surface,
//! expressed in an adapted orthonormal frame `e1, e2` (horizontal), `e3`
//! (vertical) and a target frame `eps1, eps2`.

mod frame;
mod section;

pub use frame::{
    curvature_component, curvature_vector, koszul_connection, ConnectionTable,
    CurvatureComponents, FrameAlgebra, SymmetryViolation, Vector,
};
pub use section::{
    bitension_components, differential, gaussian_curvature, pullback_connection,
    rough_laplacian, specialize_k2_zero, target_connection, tension_field,
    tritension_components, PullbackCalculus, Section,
};
