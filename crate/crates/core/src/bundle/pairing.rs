//! Linear functionals detecting the components of the forcing class.
//!
//! For a parameter pair `a = Σ p_i f_i`, `b = Σ q_i f_i` (no common zero on the
//! curve), the class of `f_0` is the Čech cocycle `f_0 v / (ab)` with the
//! syzygy `v = b p - a q`. Pairing with `Λ: Syz(m) -> R` lands in
//! `H^1(O) = H^2_m(R)_0`, where `g / (ab)` is read as the socle coefficient of
//! `g` in `K[x,y,z]/(a, b, F)`. By Serre duality `c_j(f_0) = 0` iff this vanishes
//! for every `Λ` factoring through the `j`-th projection.

use std::sync::Arc;

use super::Decomposition;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::gradedmod::{GradedModule, HomSpace};
use crate::linalg::Matrix;
use crate::polyring::groebner::contains_variable_powers;
use crate::polyring::{buchberger, normal_form, Mono, Polynomial};

#[derive(Debug)]
pub struct Pairing {
    pub a: Polynomial,
    pub b: Polynomial,
    /// The syzygy `b p - a q` in `Syz(m)`, ambient coordinates at degree `t`.
    v: Vec<Fe>,
    t: i64,
    gb: Vec<Polynomial>,
    socle: Mono,
    to_ring: HomSpace,
    target: Arc<GradedModule>,
}

fn eval_at(f: &Field, g: &Polynomial, pt: [Fe; 3]) -> Fe {
    let mut s = Fe::ZERO;
    for &(m, c) in g.terms() {
        let mut term = c;
        for (v, &x) in pt.iter().enumerate() {
            term = f.mul(term, f.pow(x, m.0[v] as u128));
        }
        s = f.add(s, term);
    }
    s
}

impl Pairing {
    pub fn new(dec: &Decomposition) -> Result<Pairing> {
        Self::build(dec, false)
    }

    fn build(dec: &Decomposition, lines_only: bool) -> Result<Pairing> {
        let bundle = &dec.bundle;
        let ideal = bundle.ideal();
        let f = bundle.field();
        let ring = bundle.ring();
        let cubic = ideal.curve().cubic();
        let n = ideal.n();
        let gens = ideal.gens();
        let deg = |g: &Polynomial| g.degree().unwrap() as i64;

        // pairs of generators first, by total degree
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).collect();
        pairs.sort_by_key(|&(i, k)| (deg(&gens[i]) + deg(&gens[k]), i, k));
        let mut chosen = None;
        for (i, k) in pairs.into_iter().filter(|_| !lines_only) {
            let gb = buchberger(f, &[gens[i].clone(), gens[k].clone(), cubic.clone()]);
            if contains_variable_powers(&gb) {
                let unit = |j: usize| -> Vec<Polynomial> {
                    (0..n).map(|l| if l == j { Polynomial::constant(Fe::ONE) } else { Polynomial::zero() }).collect()
                };
                chosen = Some((gens[i].clone(), unit(i), gens[k].clone(), unit(k), gb));
                break;
            }
        }
        let (a, p, b, q, gb) = match chosen {
            Some(c) => c,
            None => {
                let (l1, l2) = lines_off_curve(f, cubic)?;
                let d = saturation_degree(dec)?;
                let a = l1.pow(f, d as u32);
                let b = l2.pow(f, d as u32);
                let p = express(dec, &a)?;
                let q = express(dec, &b)?;
                let gb = buchberger(f, &[a.clone(), b.clone(), cubic.clone()]);
                (a, p, b, q, gb)
            }
        };
        let (da, db) = (deg(&a), deg(&b));
        let m = bundle.twist();
        let t = da + db - m;
        let comps: Vec<Polynomial> = (0..n).map(|i| b.mul(f, &p[i]).sub(f, &a.mul(f, &q[i]))).collect();
        let syz = bundle.module();
        let v = syz.ambient().from_polys(ring, t, &comps);
        if !syz.piece(t).contains(f, &v) {
            return Err(Error::Inconsistent("parameter syzygy is not a syzygy".into()));
        }
        let top = (da + db) as u32;
        let standard: Vec<Mono> = Mono::all_of_degree(top)
            .into_iter()
            .filter(|&mm| !gb.iter().any(|g| g.lm().unwrap().divides(mm)))
            .collect();
        if standard.len() != 1 {
            return Err(Error::Inconsistent(format!("socle of dimension {} in degree {top}", standard.len())));
        }
        let target = GradedModule::free(ring, vec![0]);
        let to_ring = HomSpace::new(syz, &target, 0)?;
        Ok(Pairing { a, b, v, t, gb, socle: standard[0], to_ring, target })
    }

    /// Functionals on `R_m` (standard-monomial coordinates) cutting out the
    /// candidates whose class component on summand `j` vanishes.
    pub fn functionals(&self, dec: &Decomposition, j: usize) -> Vec<Vec<Fe>> {
        let bundle = &dec.bundle;
        let f = bundle.field();
        let ring = bundle.ring();
        let syz = bundle.module();
        let m = bundle.twist();
        let proj = dec.summands[j].hom.apply(syz, syz, 0, self.t, &self.v);
        let monos = ring.piece(m).map(|p| p.monos.clone()).unwrap_or_default();
        let mut out = vec![];
        for lam in &self.to_ring.basis {
            let w = lam.apply(syz, &self.target, 0, self.t, &proj);
            let g = ring.poly(&w, self.t);
            let row: Vec<Fe> = monos
                .iter()
                .map(|&mm| normal_form(f, &g.mul_term(f, mm, Fe::ONE), &self.gb).coeff(self.socle))
                .collect();
            out.push(row);
        }
        let sub = crate::linalg::Subspace::span(f, monos.len(), &out);
        sub.basis().to_vec()
    }

    /// Class-component test through the pairing, for cross-checks.
    pub fn class_vanishes(&self, dec: &Decomposition, j: usize, f0: &Polynomial) -> bool {
        let bundle = &dec.bundle;
        let f0 = dec.lift_poly(f0);
        let c = bundle.ring().coords(&f0, bundle.twist());
        let f = bundle.field();
        self.functionals(dec, j).iter().all(|row| {
            let mut s = Fe::ZERO;
            for (x, y) in row.iter().zip(&c) {
                s = f.add(s, f.mul(*x, *y));
            }
            s.is_zero()
        })
    }
}

/// Two linear forms meeting in a rational point off the curve.
fn lines_off_curve(f: &Field, cubic: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let var = |i| Polynomial::var(i);
    let lin = |i: usize, c: Fe, k: usize| var(i).sub(f, &var(k).scale(f, c));
    for a in f.elements() {
        for b in f.elements() {
            if !eval_at(f, cubic, [Fe::ONE, a, b]).is_zero() {
                return Ok((lin(1, a, 0), lin(2, b, 0)));
            }
        }
    }
    for b in f.elements() {
        if !eval_at(f, cubic, [Fe::ZERO, Fe::ONE, b]).is_zero() {
            return Ok((var(0), lin(2, b, 1)));
        }
    }
    if !eval_at(f, cubic, [Fe::ZERO, Fe::ZERO, Fe::ONE]).is_zero() {
        return Ok((var(0), var(1)));
    }
    Err(Error::Inconsistent("cubic vanishes at every rational point".into()))
}

/// Smallest `D` with `I_D = R_D`.
fn saturation_degree(dec: &Decomposition) -> Result<i64> {
    let ring = dec.bundle.ring();
    let f = ring.field();
    let ideal = dec.bundle.ideal();
    let start = ideal.degrees().iter().copied().max().unwrap_or(1) as i64;
    for d in start..start + 200 {
        if ideal_piece(dec, d).rank(f) == ring.dim(d) {
            return Ok(d);
        }
    }
    Err(Error::NotPrimary)
}

/// Columns `mono * f_i` spanning `I_d` in `R_d`.
fn ideal_piece(dec: &Decomposition, d: i64) -> Matrix {
    let ring = dec.bundle.ring();
    let mut cols = vec![];
    for g in dec.bundle.ideal().gens() {
        let dg = g.degree().unwrap() as i64;
        let cg = ring.coords(g, dg);
        if let Some(p) = ring.piece(d - dg) {
            for &mm in &p.monos {
                cols.push(ring.mul_mono(mm, dg, &cg));
            }
        }
    }
    Matrix::from_cols(ring.dim(d), &cols)
}

/// Coefficients `p_i` with `g = Σ p_i f_i` in `R`.
fn express(dec: &Decomposition, g: &Polynomial) -> Result<Vec<Polynomial>> {
    let ring = dec.bundle.ring();
    let f = ring.field();
    let d = g.degree().unwrap() as i64;
    let sol = ideal_piece(dec, d)
        .solve(f, &ring.coords(g, d))
        .ok_or_else(|| Error::Inconsistent("parameter not in the ideal".into()))?;
    let mut out = vec![];
    let mut pos = 0;
    for gi in dec.bundle.ideal().gens() {
        let e = d - gi.degree().unwrap() as i64;
        let k = ring.dim(e);
        out.push(ring.poly(&sol[pos..pos + k], e));
        pos += k;
    }
    Ok(out)
}
