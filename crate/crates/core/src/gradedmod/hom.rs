//! Degree-`δ` homomorphisms `M -> N(δ)` given by the images of the generators of `M`.

use std::sync::Arc;

use super::module::GradedModule;
use crate::error::Result;
use crate::field::Fe;
use crate::linalg::{add_scaled, Matrix};

/// `images[l]` is the image of the `l`-th generator of the source, in the
/// target's ambient coordinates at degree `e_l + δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<Vec<Fe>>,
}

impl Hom {
    pub fn identity(m: &GradedModule) -> Result<Hom> {
        let pres = m.presentation()?;
        Ok(Hom { images: pres.gens.iter().map(|g| g.1.clone()).collect() })
    }

    pub fn zero(src: &GradedModule, tgt: &GradedModule, delta: i64) -> Result<Hom> {
        let pres = src.presentation()?;
        let ring = tgt.ring();
        Ok(Hom {
            images: pres
                .gens
                .iter()
                .map(|g| vec![Fe::ZERO; tgt.ambient().dim(ring, g.0 + delta)])
                .collect(),
        })
    }

    /// Image of `v` (ambient coordinates of `src` at degree `t`).
    pub fn apply(&self, src: &GradedModule, tgt: &GradedModule, delta: i64, t: i64, v: &[Fe]) -> Vec<Fe> {
        let pres = src.presentation().expect("presentation of a hom source");
        let ring = tgt.ring();
        let f = ring.field();
        let r = src.lift(&pres, t, v).expect("element of the source module");
        let offs = pres.gen_free.offsets(ring, t);
        let mut out = vec![Fe::ZERO; tgt.ambient().dim(ring, t + delta)];
        for (l, (e, _)) in pres.gens.iter().enumerate() {
            let rl = &r[offs[l]..offs[l + 1]];
            if rl.iter().all(|c| c.is_zero()) {
                continue;
            }
            let w = tgt.ambient().mul_ring(ring, rl, t - e, e + delta, &self.images[l]);
            add_scaled(f, &mut out, Fe::ONE, &w);
        }
        out
    }

    /// `self ∘ other` for endomorphisms of `m`.
    pub fn compose(&self, other: &Hom, m: &GradedModule) -> Hom {
        let pres = m.presentation().expect("presentation");
        Hom {
            images: pres
                .gens
                .iter()
                .zip(&other.images)
                .map(|((e, _), img)| self.apply(m, m, 0, *e, img))
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, m: &GradedModule, c: Fe, other: &Hom) {
        let f = m.ring().field();
        for (a, b) in self.images.iter_mut().zip(&other.images) {
            add_scaled(f, a, c, b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(|c| c.is_zero()))
    }
}

/// The degree-0 piece of `Hom(M, N(δ))`.
#[derive(Debug)]
pub struct HomSpace {
    pub source: Arc<GradedModule>,
    pub target: Arc<GradedModule>,
    pub delta: i64,
    pub basis: Vec<Hom>,
    free_cols: Vec<usize>,
}

impl HomSpace {
    pub fn new(source: &Arc<GradedModule>, target: &Arc<GradedModule>, delta: i64) -> Result<HomSpace> {
        let pres = source.presentation()?;
        let ring = target.ring();
        let f = ring.field();
        let tpieces: Vec<_> = pres.gens.iter().map(|(e, _)| target.piece(e + delta)).collect();
        let mut offs = vec![0usize];
        for p in &tpieces {
            offs.push(offs.last().unwrap() + p.dim());
        }
        let unknowns = *offs.last().unwrap();
        let mut rows: Vec<Vec<Fe>> = vec![];
        for (t, r) in &pres.relations {
            let n = target.ambient().dim(ring, t + delta);
            if n == 0 {
                continue;
            }
            let roffs = pres.gen_free.offsets(ring, *t);
            let mut block = Matrix::zeros(n, unknowns);
            for (l, (e, _)) in pres.gens.iter().enumerate() {
                let rl = &r[roffs[l]..roffs[l + 1]];
                if rl.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for (k, b) in tpieces[l].basis().iter().enumerate() {
                    let w = target.ambient().mul_ring(ring, rl, t - e, e + delta, b);
                    for (i, &c) in w.iter().enumerate() {
                        block.set(i, offs[l] + k, c);
                    }
                }
            }
            for i in 0..n {
                rows.push(block.row(i).to_vec());
            }
        }
        let eq = Matrix::from_rows(unknowns, &rows);
        let (kernel, free_cols) = eq.kernel_with_free(f);
        let basis = kernel
            .iter()
            .map(|k| Hom {
                images: (0..pres.gens.len())
                    .map(|l| tpieces[l].combine(f, &k[offs[l]..offs[l + 1]]))
                    .collect(),
            })
            .collect();
        Ok(HomSpace { source: source.clone(), target: target.clone(), delta, basis, free_cols })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flatten(&self, h: &Hom) -> Vec<Fe> {
        let pres = self.source.presentation().expect("presentation");
        pres.gens
            .iter()
            .zip(&h.images)
            .flat_map(|((e, _), img)| self.target.piece(e + self.delta).coords(img))
            .collect()
    }

    /// Coordinates in `basis` of a homomorphism known to lie in this space.
    pub fn coordinates(&self, h: &Hom) -> Vec<Fe> {
        let flat = self.flatten(h);
        self.free_cols.iter().map(|&c| flat[c]).collect()
    }

    pub fn combine(&self, c: &[Fe]) -> Hom {
        let mut h = Hom::zero(&self.source, &self.target, self.delta).expect("presentation");
        for (b, &ci) in self.basis.iter().zip(c) {
            h.add_scaled(&self.target, ci, b);
        }
        h
    }
}
