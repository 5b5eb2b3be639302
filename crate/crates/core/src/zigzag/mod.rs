//! The choice data of the zig-zag: a basepoint `x`, chains `Δ_k` with
//! `δΔ_k = ∂Δ_{k+1}`, integer cochains `w_k` with
//! `δw_k = -(-1)^{n-k+1} d w_{k-1}`, a real lift `η̄_{n-1}` of a primitive of
//! `jΩ`, and circle-valued cochains `η_k` with `δη_k = -(-1)^{n-k} dη_{k-1}`.

mod circle;
mod sphere;

pub use circle::CircleZigzag;
pub use sphere::{SphereZigzag, DEFAULT_BASEPOINT};

use crate::complexes::{ChainValued, Cochain, CochainValued};
use crate::error::Result;
use crate::geometry::{Manifold, MappedSimplex};
use crate::scalar::Scalar;

/// Zig-zag data for a fixed manifold and choice set.
pub trait Zigzag<M: Manifold>: Send + Sync + 'static {
    fn basepoint(&self) -> M::Point;

    fn snap_tol(&self) -> f64;

    /// `Δ_k ∈ C^k_grp(G; C_k(M; Z))` for `0 ≤ k ≤ n`.
    fn delta(&self, k: usize) -> ChainValued<M>;

    /// `w_k ∈ C^{n-k}_grp(G; C^k(M; Z))` for `0 ≤ k ≤ n`.
    fn w(&self, k: usize) -> CochainValued<M>;

    /// `η̄_{n-1} ∈ C^{n-1}(M; R)`.
    fn eta_bar(&self) -> Cochain<M>;

    /// `η_k ∈ C^{n-1-k}_grp(G; C^k(M; R/Z))` for `0 ≤ k ≤ n-1`, as real lifts.
    fn eta(&self, k: usize) -> CochainValued<M>;

    /// `∫_σ Ω` for an `n`-simplex.
    fn volume(&self, s: &MappedSimplex<M>) -> Result<M::Scalar>;

    /// `w_n(σ) = ∫_σ Ω - η̄_{n-1}(∂σ)`, checked to be an integer.
    fn w_top(&self, s: &MappedSimplex<M>) -> Result<M::Scalar> {
        let boundary = crate::complexes::Chain::from_simplex(s.clone()).boundary();
        let raw = self.volume(s)? - self.eta_bar().eval_chain(&boundary)?;
        raw.snap(self.snap_tol())?;
        Ok(raw)
    }
}
