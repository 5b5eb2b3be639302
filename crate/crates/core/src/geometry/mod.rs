//! Points, arcs, cone triangles, the normalized volume form and its primitive.

pub mod circle;
pub mod quadrature;
pub mod simplex;
pub mod sphere;

pub use circle::{CircleArc, CirclePoint};
pub use quadrature::{GaussRule, QuadConfig};
pub use simplex::{BaseSimplex, Circle, Manifold, MappedSimplex, Sphere};
pub use sphere::{FormConventions, SphereArc, SphereForms, SpherePoint};
