//! Graded submodules of twisted free modules, handled one graded piece at a time.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::hom::Hom;
use super::ring::GradedRing;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{Matrix, Solver, Subspace};
use crate::polyring::{Mono, Polynomial};

/// `R(a_1) ⊕ ... ⊕ R(a_r)`; the degree-`t` piece is `⊕ R_{t + a_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedFree {
    pub twists: Vec<i64>,
}

impl TwistedFree {
    pub fn new(twists: Vec<i64>) -> TwistedFree {
        TwistedFree { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Block offsets of the degree-`t` piece, length `rank + 1`.
    pub fn offsets(&self, ring: &GradedRing, t: i64) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.rank() + 1);
        o.push(0);
        for &a in &self.twists {
            o.push(o.last().unwrap() + ring.dim(t + a));
        }
        o
    }

    pub fn dim(&self, ring: &GradedRing, t: i64) -> usize {
        self.twists.iter().map(|&a| ring.dim(t + a)).sum()
    }

    pub fn shifted(&self, s: i64) -> TwistedFree {
        TwistedFree { twists: self.twists.iter().map(|a| a + s).collect() }
    }

    /// Lowest degree with a nonzero piece.
    pub fn min_degree(&self) -> i64 {
        self.twists.iter().map(|a| -a).min().unwrap_or(0)
    }

    /// `m * v` for `v` in degree `t`.
    pub fn mul_mono(&self, ring: &GradedRing, m: Mono, t: i64, v: &[Fe]) -> Vec<Fe> {
        let src = self.offsets(ring, t);
        let mut out = Vec::with_capacity(self.dim(ring, t + m.degree() as i64));
        for (i, &a) in self.twists.iter().enumerate() {
            out.extend(ring.mul_mono(m, t + a, &v[src[i]..src[i + 1]]));
        }
        out
    }

    /// `r * v` for `r` in `R_s` (coordinates) and `v` in degree `t`.
    pub fn mul_ring(&self, ring: &GradedRing, r: &[Fe], s: i64, t: i64, v: &[Fe]) -> Vec<Fe> {
        let src = self.offsets(ring, t);
        let mut out = Vec::with_capacity(self.dim(ring, t + s));
        for (i, &a) in self.twists.iter().enumerate() {
            out.extend(ring.mul_elems(r, s, &v[src[i]..src[i + 1]], t + a));
        }
        out
    }

    pub fn to_polys(&self, ring: &GradedRing, t: i64, v: &[Fe]) -> Vec<Polynomial> {
        let o = self.offsets(ring, t);
        (0..self.rank()).map(|i| ring.poly(&v[o[i]..o[i + 1]], t + self.twists[i])).collect()
    }

    pub fn from_polys(&self, ring: &GradedRing, t: i64, comps: &[Polynomial]) -> Vec<Fe> {
        comps
            .iter()
            .zip(&self.twists)
            .flat_map(|(g, &a)| ring.coords(g, t + a))
            .collect()
    }
}

/// Degree-0 homogeneous matrix `⊕ R(a_j) -> ⊕ R(b_i)`; entry `(i, j)` has degree `b_i - a_j`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: TwistedFree,
    pub target: TwistedFree,
    pub entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    pub fn new(source: TwistedFree, target: TwistedFree, entries: Vec<Vec<Polynomial>>) -> Result<GradedMap> {
        assert_eq!(entries.len(), target.rank());
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), source.rank());
            for (j, e) in row.iter().enumerate() {
                let want = target.twists[i] - source.twists[j];
                if !e.is_zero() && (!e.is_homogeneous() || e.degree().unwrap() as i64 != want) {
                    return Err(Error::DegreeMismatch { row: i, col: j });
                }
            }
        }
        Ok(GradedMap { source, target, entries })
    }

    /// The map on degree-`t` pieces.
    pub fn matrix_at(&self, ring: &GradedRing, t: i64) -> Matrix {
        let so = self.source.offsets(ring, t);
        let to = self.target.offsets(ring, t);
        let mut m = Matrix::zeros(*to.last().unwrap(), *so.last().unwrap());
        for j in 0..self.source.rank() {
            let dj = so[j + 1] - so[j];
            for k in 0..dj {
                let mut unit = vec![Fe::ZERO; dj];
                unit[k] = Fe::ONE;
                for i in 0..self.target.rank() {
                    let e = &self.entries[i][j];
                    if e.is_zero() {
                        continue;
                    }
                    let s = self.target.twists[i] - self.source.twists[j];
                    let col = ring.mul_poly(e, s, t + self.source.twists[j], &unit);
                    for (r, &c) in col.iter().enumerate() {
                        m.set(to[i] + r, so[j] + k, c);
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, ring: &GradedRing, t: i64, v: &[Fe]) -> Vec<Fe> {
        self.matrix_at(ring, t).mul_vec(ring.field(), v)
    }
}

/// Homogeneous element of a twisted free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModElem {
    pub degree: i64,
    pub comps: Vec<Polynomial>,
}

#[derive(Debug)]
pub enum Kind {
    Free,
    Kernel(GradedMap),
    /// Submodule generated by `(degree, ambient coordinates)` elements.
    Span(Vec<(i64, Vec<Fe>)>),
    /// Image of an endomorphism of another module with the same ambient.
    Image(Arc<GradedModule>, Hom),
}

/// Rank and degree of the associated sheaf, and the first degree where `h^1` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SheafData {
    pub rank: i64,
    pub degree: i64,
    pub h1_zero_from: i64,
}

/// Minimal homogeneous generators and the relations among them.
#[derive(Debug)]
pub struct Presentation {
    /// `(degree, ambient coordinates)`.
    pub gens: Vec<(i64, Vec<Fe>)>,
    /// Free module on the generators, twists `-e_l`.
    pub gen_free: TwistedFree,
    /// Relations `(degree, coordinates in gen_free)`.
    pub relations: Vec<(i64, Vec<Fe>)>,
    lifts: Mutex<BTreeMap<i64, Arc<(Matrix, Solver)>>>,
}

pub struct GradedModule {
    ring: Arc<GradedRing>,
    ambient: TwistedFree,
    kind: Kind,
    pieces: Mutex<BTreeMap<i64, Arc<Subspace>>>,
    sheaf: OnceLock<Result<SheafData>>,
    pres: OnceLock<Result<Arc<Presentation>>>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule").field("ambient", &self.ambient).finish()
    }
}

impl GradedModule {
    fn build(ring: &Arc<GradedRing>, ambient: TwistedFree, kind: Kind) -> Arc<GradedModule> {
        Arc::new(GradedModule {
            ring: ring.clone(),
            ambient,
            kind,
            pieces: Mutex::new(BTreeMap::new()),
            sheaf: OnceLock::new(),
            pres: OnceLock::new(),
        })
    }

    pub fn free(ring: &Arc<GradedRing>, twists: Vec<i64>) -> Arc<GradedModule> {
        Self::build(ring, TwistedFree::new(twists), Kind::Free)
    }

    pub fn kernel(ring: &Arc<GradedRing>, map: GradedMap) -> Arc<GradedModule> {
        Self::build(ring, map.source.clone(), Kind::Kernel(map))
    }

    pub fn span(ring: &Arc<GradedRing>, ambient: TwistedFree, gens: Vec<(i64, Vec<Fe>)>) -> Arc<GradedModule> {
        Self::build(ring, ambient, Kind::Span(gens))
    }

    pub fn image(parent: &Arc<GradedModule>, e: Hom) -> Arc<GradedModule> {
        Self::build(&parent.ring, parent.ambient.clone(), Kind::Image(parent.clone(), e))
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }
    pub fn ambient(&self) -> &TwistedFree {
        &self.ambient
    }
    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    /// The degree-`t` piece as a subspace of the ambient piece.
    pub fn piece(&self, t: i64) -> Arc<Subspace> {
        if let Some(p) = self.pieces.lock().unwrap().get(&t) {
            return p.clone();
        }
        let p = Arc::new(self.compute_piece(t));
        self.pieces.lock().unwrap().insert(t, p.clone());
        p
    }

    fn compute_piece(&self, t: i64) -> Subspace {
        let ring = &*self.ring;
        let f = ring.field();
        let n = self.ambient.dim(ring, t);
        match &self.kind {
            Kind::Free => Subspace::full(n),
            Kind::Kernel(map) => Subspace::span(f, n, &map.matrix_at(ring, t).kernel(f)),
            Kind::Span(gens) => {
                let mut vecs = vec![];
                for (e, v) in gens {
                    if let Some(p) = ring.piece(t - e) {
                        for &m in &p.monos {
                            vecs.push(self.ambient.mul_mono(ring, m, *e, v));
                        }
                    }
                }
                Subspace::span(f, n, &vecs)
            }
            Kind::Image(parent, e) => {
                let vecs: Vec<Vec<Fe>> = parent
                    .piece(t)
                    .basis()
                    .iter()
                    .map(|v| e.apply(parent, parent, 0, t, v))
                    .collect();
                Subspace::span(f, n, &vecs)
            }
        }
    }

    pub fn hilbert_value(&self, t: i64) -> usize {
        self.piece(t).dim()
    }

    pub fn piece_basis(&self, t: i64) -> Vec<ModElem> {
        self.piece(t)
            .basis()
            .iter()
            .map(|v| ModElem { degree: t, comps: self.ambient.to_polys(&self.ring, t, v) })
            .collect()
    }

    /// A degree from which the Hilbert function is known (or expected) to be linear.
    fn linear_hint(&self) -> (i64, bool) {
        let ring = &*self.ring;
        let heuristic = |max_gen: i64| (max_gen + self.ambient.rank() as i64 + 3, false);
        match &self.kind {
            Kind::Free => (self.ambient.twists.iter().map(|a| 1 - a).max().unwrap_or(0), true),
            Kind::Kernel(map) if map.target.rank() == 1 => {
                let start = map.source.twists.iter().map(|a| 1 - a).max().unwrap_or(0);
                let b = map.target.twists[0];
                let start = start.max(1 - b);
                for t in start..start + 400 {
                    if map.matrix_at(ring, t).rank(ring.field()) == ring.dim(t + b) {
                        return (t, true);
                    }
                }
                heuristic(start)
            }
            Kind::Kernel(map) => heuristic(map.source.min_degree().max(map.target.min_degree())),
            Kind::Span(gens) => heuristic(gens.iter().map(|g| g.0).max().unwrap_or(0)),
            Kind::Image(parent, _) => match parent.sheaf_data() {
                Ok(d) => (d.h1_zero_from, true),
                Err(_) => heuristic(parent.ambient.min_degree()),
            },
        }
    }

    /// Rank, degree and `h^1`-vanishing degree of the sheaf, from the Hilbert function.
    pub fn sheaf_data(&self) -> Result<SheafData> {
        self.sheaf.get_or_init(|| self.compute_sheaf_data()).clone()
    }

    fn compute_sheaf_data(&self) -> Result<SheafData> {
        let (t0, rigorous) = self.linear_hint();
        let probe = |t: i64| -> Option<(i64, i64)> {
            let d: Vec<i64> = (0..3).map(|i| self.hilbert_value(t + i) as i64).collect();
            let step = d[1] - d[0];
            (step == d[2] - d[1] && step % 3 == 0).then(|| (step / 3, d[0] - step * t))
        };
        let (rank, degree) = match probe(t0) {
            Some(v) => v,
            None if !rigorous => probe(2 * t0.max(1)).ok_or(Error::NotLinear(2 * t0.max(1)))?,
            None => return Err(Error::NotLinear(t0)),
        };
        let mut t = self.ambient.min_degree() - 1;
        let stop = t0.max(2 * t0.max(1)) + 3;
        loop {
            if t > stop {
                return Err(Error::NotLinear(t));
            }
            let h1 = self.hilbert_value(t) as i64 - degree - 3 * rank * t;
            if h1 < 0 {
                return Err(Error::Inconsistent(format!("negative h1 at degree {t}")));
            }
            if h1 == 0 {
                return Ok(SheafData { rank, degree, h1_zero_from: t });
            }
            t += 1;
        }
    }

    pub fn rank_and_degree(&self) -> Result<(i64, i64)> {
        self.sheaf_data().map(|d| (d.rank, d.degree))
    }

    /// Minimal generators up to the regularity and relations one degree beyond.
    pub fn presentation(&self) -> Result<Arc<Presentation>> {
        self.pres.get_or_init(|| self.compute_presentation().map(Arc::new)).clone()
    }

    fn compute_presentation(&self) -> Result<Presentation> {
        let ring = &*self.ring;
        let f = ring.field();
        let reg = self.sheaf_data()?.h1_zero_from + 1;
        let lo = self.ambient.min_degree();
        let mut gens: Vec<(i64, Vec<Fe>)> = vec![];
        for t in lo..=reg {
            let piece = self.piece(t);
            if piece.dim() == 0 {
                continue;
            }
            let mut prev = vec![];
            for v in self.piece(t - 1).basis() {
                for var in 0..3 {
                    prev.push(self.ambient.mul_mono(ring, Mono::var(var), t - 1, v));
                }
            }
            let sub = Subspace::span(f, piece.ambient, &prev);
            for v in sub.independent_of(f, piece.basis()) {
                gens.push((t, v));
            }
        }
        let gen_free = TwistedFree::new(gens.iter().map(|g| -g.0).collect());
        let mut pres = Presentation {
            gens,
            gen_free,
            relations: vec![],
            lifts: Mutex::new(BTreeMap::new()),
        };
        let Some(first) = pres.gens.first().map(|g| g.0) else {
            return Ok(pres);
        };
        let mut prev_kernel = Subspace::zero(0);
        for t in first..=reg + 1 {
            let (phi, _) = &*pres.lift_data(self, t);
            let kernel = Subspace::span(f, phi.cols, &phi.kernel(f));
            let mut prior = vec![];
            for r in prev_kernel.basis() {
                for var in 0..3 {
                    prior.push(pres.gen_free.mul_mono(ring, Mono::var(var), t - 1, r));
                }
            }
            let sub = Subspace::span(f, phi.cols, &prior);
            for r in sub.independent_of(f, kernel.basis()) {
                pres.relations.push((t, r));
            }
            prev_kernel = kernel;
        }
        Ok(pres)
    }

    /// `(sum_l r_l u_l)` for `r` in the degree-`t` piece of the generator module.
    pub fn combine_gens(&self, pres: &Presentation, t: i64, r: &[Fe]) -> Vec<Fe> {
        let (phi, _) = &*pres.lift_data(self, t);
        phi.mul_vec(self.ring.field(), r)
    }

    /// Coefficients `r_l` with `v = sum_l r_l u_l`, for `v` in the degree-`t` piece.
    pub fn lift(&self, pres: &Presentation, t: i64, v: &[Fe]) -> Result<Vec<Fe>> {
        let (_, solver) = &*pres.lift_data(self, t);
        solver
            .solve(self.ring.field(), v)
            .ok_or_else(|| Error::Inconsistent(format!("element of degree {t} not generated")))
    }
}

impl Presentation {
    /// Matrix `⊕ R_{t - e_l} -> ambient_t` of the generators, with its solver.
    fn lift_data(&self, module: &GradedModule, t: i64) -> Arc<(Matrix, Solver)> {
        if let Some(d) = self.lifts.lock().unwrap().get(&t) {
            return d.clone();
        }
        let ring = &*module.ring;
        let f = ring.field();
        let rows = module.ambient.dim(ring, t);
        let mut cols = vec![];
        for (e, u) in &self.gens {
            if let Some(p) = ring.piece(t - e) {
                for &m in &p.monos {
                    cols.push(module.ambient.mul_mono(ring, m, *e, u));
                }
            }
        }
        let phi = Matrix::from_cols(rows, &cols);
        let solver = Solver::new(f, &phi);
        let d = Arc::new((phi, solver));
        self.lifts.lock().unwrap().insert(t, d.clone());
        d
    }

    pub fn gen_degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.0).collect()
    }
}
