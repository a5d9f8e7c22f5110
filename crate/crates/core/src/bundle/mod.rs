//! Syzygy bundles on the cubic, their endomorphism algebras, decomposition into
//! indecomposable summands and the forcing class of a candidate element.
//!
//! A bundle `ℛ(m)` is represented by the module `Syz(m)`; degree-0 homomorphisms
//! of these modules are the sheaf homomorphisms. The component `c_j` of the
//! forcing class vanishes exactly when the projection onto the `j`-th summand
//! extends along `Syz(m) -> Syz'(m)`.

pub mod algebra;
pub mod pairing;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{make_field, Embedding, Fe, Field};
use crate::gradedmod::{syzygy_module, GradedModule, GradedRing, Hom, HomSpace};
use crate::linalg::{Matrix, Solver, Subspace};
use crate::polyring::{CubicCurve, IdealData, Polynomial};

pub use algebra::{Algebra, Idempotents, Splitting};
pub use pairing::Pairing;

/// The coordinate ring of the cone over `curve`.
pub fn cone_ring(curve: &CubicCurve) -> Arc<GradedRing> {
    GradedRing::quotient(curve.field(), curve.groebner().to_vec())
}

/// `-3(Σ d_i - (n - 1) m)`.
pub fn formula_degree(ideal: &IdealData, m: i64) -> i64 {
    let sum: i64 = ideal.degrees().iter().map(|&d| d as i64).sum();
    -3 * (sum - (ideal.n() as i64 - 1) * m)
}

#[derive(Clone, Debug)]
pub struct SyzygyBundle {
    ideal: IdealData,
    m: i64,
    ring: Arc<GradedRing>,
    module: Arc<GradedModule>,
    rank: i64,
    degree: i64,
}

impl SyzygyBundle {
    pub fn ideal(&self) -> &IdealData {
        &self.ideal
    }
    pub fn field(&self) -> &Field {
        self.ideal.field()
    }
    pub fn twist(&self) -> i64 {
        self.m
    }
    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }
    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }
    pub fn rank(&self) -> i64 {
        self.rank
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
}

pub fn syzygy_bundle(ideal: &IdealData, m: i64) -> Result<SyzygyBundle> {
    let ring = cone_ring(ideal.curve());
    let module = syzygy_module(&ring, ideal.gens(), m)?;
    let (rank, degree) = module.rank_and_degree()?;
    let want = (ideal.n() as i64 - 1, formula_degree(ideal, m));
    if (rank, degree) != want {
        return Err(Error::Inconsistent(format!(
            "syzygy sheaf has rank {rank} and degree {degree}, expected {} and {}",
            want.0, want.1
        )));
    }
    Ok(SyzygyBundle { ideal: ideal.clone(), m, ring, module, rank, degree })
}

/// Degree-0 endomorphisms of the syzygy module with their multiplication table.
#[derive(Debug)]
pub struct EndAlgebra {
    module: Arc<GradedModule>,
    space: HomSpace,
    algebra: Algebra,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn space(&self) -> &HomSpace {
        &self.space
    }
    pub fn hom(&self, c: &[Fe]) -> Hom {
        self.space.combine(c)
    }
    pub fn coordinates(&self, h: &Hom) -> Vec<Fe> {
        self.space.coordinates(h)
    }
    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }
}

pub fn end_algebra(b: &SyzygyBundle) -> Result<EndAlgebra> {
    let module = b.module.clone();
    let space = HomSpace::new(&module, &module, 0)?;
    let one = space.coordinates(&Hom::identity(&module)?);
    let mult = space
        .basis
        .iter()
        .map(|x| space.basis.iter().map(|y| space.coordinates(&x.compose(y, &module))).collect())
        .collect();
    let algebra = Algebra::new(b.field(), mult, one);
    Ok(EndAlgebra { module, space, algebra })
}

#[derive(Debug)]
pub struct Summand {
    /// Idempotent in End-algebra coordinates.
    pub projection: Vec<Fe>,
    pub hom: Hom,
    pub module: Arc<GradedModule>,
    pub rank: i64,
    pub degree: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Largest total degree of the splitting field over the base field.
    pub max_extension: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { max_extension: 4 }
    }
}

/// Decomposition over a splitting field; `bundle` and all data live over that field.
#[derive(Debug)]
pub struct Decomposition {
    pub bundle: SyzygyBundle,
    pub end: EndAlgebra,
    pub summands: Vec<Summand>,
    pub radical: Subspace,
    /// Base field into splitting field, when they differ.
    pub embedding: Option<Embedding>,
}

impl Decomposition {
    pub fn extension_degree(&self) -> usize {
        self.embedding.as_ref().map_or(1, |e| e.target().k() / e.source().k())
    }

    /// A polynomial over the base field, moved to the splitting field.
    pub fn lift_poly(&self, g: &Polynomial) -> Polynomial {
        match &self.embedding {
            None => g.clone(),
            Some(e) => g.map_coeffs(e),
        }
    }

    /// `(rank, degree)` of every summand, in order.
    pub fn types(&self) -> Vec<(i64, i64)> {
        self.summands.iter().map(|s| (s.rank, s.degree)).collect()
    }
}

pub fn decompose_bundle(b: &SyzygyBundle) -> Result<Decomposition> {
    decompose_bundle_with(b, DecomposeOptions::default())
}

pub fn decompose_bundle_with(b: &SyzygyBundle, opts: DecomposeOptions) -> Result<Decomposition> {
    let base = b.field().clone();
    let mut total = 1usize;
    let mut current = b.clone();
    let mut embedding = None;
    loop {
        let end = end_algebra(&current)?;
        match end.algebra.primitive_idempotents()? {
            Splitting::Split(split) => return finish(current, end, split, embedding),
            Splitting::Extend(r) => {
                total *= r;
                if total > opts.max_extension {
                    return Err(Error::Undecided(format!(
                        "splitting needs an extension of degree {total} > {}",
                        opts.max_extension
                    )));
                }
                let target = make_field(base.p(), base.k() * total)
                    .map_err(|e| Error::Undecided(format!("splitting field unavailable: {e}")))?;
                let emb = Embedding::new(&base, &target)?;
                current = syzygy_bundle(&b.ideal.base_change(&emb), b.m)?;
                embedding = Some(emb);
            }
        }
    }
}

fn finish(bundle: SyzygyBundle, end: EndAlgebra, split: Idempotents, embedding: Option<Embedding>) -> Result<Decomposition> {
    let mut summands = vec![];
    for e in split.idempotents {
        let hom = end.hom(&e);
        let module = GradedModule::image(&bundle.module, hom.clone());
        let (rank, degree) = module.rank_and_degree()?;
        summands.push(Summand { projection: e, hom, module, rank, degree });
    }
    summands.sort_by(|a, b| {
        (b.degree, b.rank).cmp(&(a.degree, a.rank)).then_with(|| a.projection.cmp(&b.projection))
    });
    let rank: i64 = summands.iter().map(|s| s.rank).sum();
    let degree: i64 = summands.iter().map(|s| s.degree).sum();
    if rank != bundle.rank || degree != bundle.degree || summands.iter().any(|s| s.rank <= 0) {
        return Err(Error::Inconsistent(format!(
            "summands add up to rank {rank} and degree {degree}, bundle has {} and {}",
            bundle.rank, bundle.degree
        )));
    }
    Ok(Decomposition { bundle, end, summands, radical: split.radical, embedding })
}

/// Syzygies of `(f_0, f_1, ..., f_n)` at twist `m = deg f_0`, with the inclusion of
/// `Syz(m)` as the syzygies with zero `f_0`-coefficient.
#[derive(Debug)]
pub struct ForcingData {
    pub f0: Polynomial,
    pub m: i64,
    pub syz_prime: Arc<GradedModule>,
    pub inclusion: Hom,
    /// Solver for `ψ ∘ ι = φ` over `ψ ∈ Hom(Syz', Syz)_0`, in End coordinates.
    restriction: Solver,
}

/// `f0` is given over the base field of the decomposition.
pub fn forcing_data(dec: &Decomposition, f0: &Polynomial) -> Result<ForcingData> {
    if f0.is_zero() {
        return Err(Error::BadCandidate);
    }
    if !f0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let m = dec.bundle.m;
    if f0.degree() != Some(m as u32) {
        return Err(Error::BadCandidate);
    }
    let f0 = dec.lift_poly(f0);
    let ring = &dec.bundle.ring;
    let f = ring.field();
    let syz = &dec.bundle.module;
    let mut gens = vec![f0.clone()];
    gens.extend(dec.bundle.ideal.gens().iter().cloned());
    let syz_prime = syzygy_module(ring, &gens, m)?;
    let pres = syz.presentation()?;
    let inclusion = Hom {
        images: pres
            .gens
            .iter()
            .map(|(e, v)| {
                let mut w = vec![Fe::ZERO; ring.dim(*e)];
                w.extend_from_slice(v);
                w
            })
            .collect(),
    };
    let space = HomSpace::new(&syz_prime, syz, 0)?;
    let cols: Vec<Vec<Fe>> = space
        .basis
        .iter()
        .map(|psi| {
            let comp = Hom {
                images: pres
                    .gens
                    .iter()
                    .zip(&inclusion.images)
                    .map(|((e, _), img)| psi.apply(&syz_prime, syz, 0, *e, img))
                    .collect(),
            };
            dec.end.coordinates(&comp)
        })
        .collect();
    let restriction = Solver::new(f, &Matrix::from_cols(dec.end.dim(), &cols));
    Ok(ForcingData { f0, m, syz_prime, inclusion, restriction })
}

/// Whether the component of the forcing class on `summand` vanishes, i.e. the
/// projection onto it extends to `Syz'(m)`.
pub fn component_class_vanishes(fd: &ForcingData, dec: &Decomposition, summand: &Summand) -> bool {
    fd.restriction.solve(dec.bundle.field(), &summand.projection).is_some()
}

/// `(h^0, h^1)` of the sheaf of `m` twisted by `j`.
pub fn cohomology_dims(m: &GradedModule, j: i64) -> Result<(i64, i64)> {
    let h0 = m.hilbert_value(j) as i64;
    let (rank, degree) = m.rank_and_degree()?;
    let h1 = h0 - (degree + 3 * rank * j);
    if h1 < 0 {
        return Err(Error::Inconsistent(format!("negative h1 in degree {j}")));
    }
    Ok((h0, h1))
}
