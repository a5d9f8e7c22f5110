//! Graded modules over `S = K[x,y,z]` and `R = S/(F)`.
//!
//! Twist convention: `R(a)_t = R_{t+a}`. The syzygy module `Syz(m)` of
//! `f_1, ..., f_n` is the kernel of `⊕ R(m - d_i) -> R(m)`, so syzygies of total
//! degree `m` sit in graded degree `0` and `Syz(m)_j` are the sections of the
//! syzygy sheaf twisted by `j`.

pub mod hom;
pub mod module;
pub mod ring;

use std::sync::Arc;

pub use hom::{Hom, HomSpace};
pub use module::{GradedMap, GradedModule, Kind, ModElem, Presentation, SheafData, TwistedFree};
pub use ring::GradedRing;

use crate::error::Result;
use crate::polyring::Polynomial;

pub fn syzygy_of_map(ring: &Arc<GradedRing>, map: GradedMap) -> Arc<GradedModule> {
    GradedModule::kernel(ring, map)
}

/// `Syz(m)` of homogeneous `gens`: the kernel of `(f_1 ... f_n): ⊕ R(m - d_i) -> R(m)`.
pub fn syzygy_module(ring: &Arc<GradedRing>, gens: &[Polynomial], m: i64) -> Result<Arc<GradedModule>> {
    let source = TwistedFree::new(gens.iter().map(|g| m - g.degree().unwrap_or(0) as i64).collect());
    let target = TwistedFree::new(vec![m]);
    let map = GradedMap::new(source, target, vec![gens.to_vec()])?;
    Ok(GradedModule::kernel(ring, map))
}

/// Degree-0 homomorphisms `M -> N`.
pub fn hom_module(m: &Arc<GradedModule>, n: &Arc<GradedModule>) -> Result<HomSpace> {
    HomSpace::new(m, n, 0)
}

pub fn graded_piece_basis(m: &GradedModule, t: i64) -> Vec<ModElem> {
    m.piece_basis(t)
}

pub fn hilbert_value(m: &GradedModule, t: i64) -> usize {
    m.hilbert_value(t)
}

pub fn rank_and_degree(m: &GradedModule) -> Result<(i64, i64)> {
    m.rank_and_degree()
}

/// The submodule generated by the images of the generators of `m` under `e`.
pub fn image_presentation(m: &Arc<GradedModule>, e: &Hom) -> Result<Arc<GradedModule>> {
    let pres = m.presentation()?;
    let gens = pres.gens.iter().zip(&e.images).map(|((d, _), v)| (*d, v.clone())).collect();
    Ok(GradedModule::span(m.ring(), m.ambient().clone(), gens))
}

#[cfg(test)]
mod tests;
