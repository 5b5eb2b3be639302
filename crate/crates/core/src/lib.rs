//! Integer and circle-valued group cocycles on the volume-preserving
//! diffeomorphism groups of the circle and the 2-sphere.
//!
//! The crate builds the zig-zag data of a flat sphere bundle (a basepoint,
//! the singular chains `Δ_k`, the integer cochains `w_k` and the circle-valued
//! cochains `η_k`), evaluates the resulting cocycles `c_k` (degree `n+1`,
//! integer coefficients) and `b_k` (degree `n`, coefficients in `R/Z`) on
//! explicit tuples of diffeomorphisms, checks the identities they satisfy,
//! and pairs them with bar-complex cycles of finite rotation groups.
//!
//! Everything on the circle is exact rational arithmetic. On the sphere the
//! integrals are computed by adaptive Gauss quadrature and integer-valued
//! quantities are snapped to the nearest integer under an explicit tolerance.

pub mod cocycles;
pub mod complexes;
pub mod config;
pub mod diffeo;
pub mod error;
pub mod geometry;
pub mod grouphomology;
pub mod report;
pub mod runner;
pub mod sampling;
pub mod scalar;
pub mod zigzag;

pub use error::{Error, Result};
pub use scalar::{frac_lift, Scalar, Snapped, Q};
