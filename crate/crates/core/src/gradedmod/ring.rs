//! Graded pieces of `S = K[x,y,z]` or `R = S/(F)` in the standard-monomial basis.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::field::{Fe, Field};
use crate::linalg::add_scaled;
use crate::polyring::{normal_form, Mono, Polynomial};

/// Sparse column: `(index, coefficient)`.
pub type Sparse = Vec<(u32, Fe)>;

pub struct Piece {
    pub monos: Vec<Mono>,
    index: HashMap<Mono, u32>,
    /// `var_mul[v][i]` = normal form of `v * monos[i]` in the next degree.
    var_mul: OnceLock<[Vec<Sparse>; 3]>,
}

/// `S` (no relations) or `S/(G)` for a reduced Gröbner basis `G`.
pub struct GradedRing {
    field: Field,
    rels: Vec<Polynomial>,
    pieces: RwLock<Vec<Arc<Piece>>>,
}

impl std::fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedRing({:?}, {} relations)", self.field, self.rels.len())
    }
}

impl GradedRing {
    pub fn polynomial(field: &Field) -> Arc<GradedRing> {
        Self::quotient(field, vec![])
    }

    /// `S / (G)`; `rels` must be a reduced Gröbner basis of homogeneous polynomials.
    pub fn quotient(field: &Field, rels: Vec<Polynomial>) -> Arc<GradedRing> {
        Arc::new(GradedRing { field: field.clone(), rels, pieces: RwLock::new(vec![]) })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.rels
    }

    fn standard(&self, m: Mono) -> bool {
        !self.rels.iter().any(|g| g.lm().unwrap().divides(m))
    }

    /// Basis of the degree-`t` piece; empty for negative `t`.
    pub fn piece(&self, t: i64) -> Option<Arc<Piece>> {
        if t < 0 {
            return None;
        }
        let t = t as usize;
        if let Some(p) = self.pieces.read().unwrap().get(t) {
            return Some(p.clone());
        }
        let mut w = self.pieces.write().unwrap();
        while w.len() <= t {
            let d = w.len() as u32;
            let monos: Vec<Mono> = Mono::all_of_degree(d).into_iter().filter(|&m| self.standard(m)).collect();
            let index = monos.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
            w.push(Arc::new(Piece { monos, index, var_mul: OnceLock::new() }));
        }
        Some(w[t].clone())
    }

    pub fn dim(&self, t: i64) -> usize {
        self.piece(t).map_or(0, |p| p.monos.len())
    }

    fn var_mul(&self, t: i64) -> Arc<Piece> {
        let p = self.piece(t).expect("nonnegative degree");
        let next = self.piece(t + 1).unwrap();
        p.var_mul.get_or_init(|| {
            let f = &self.field;
            std::array::from_fn(|v| {
                p.monos
                    .iter()
                    .map(|&m| {
                        let prod = m.mul(Mono::var(v));
                        match next.index.get(&prod) {
                            Some(&i) => vec![(i, Fe::ONE)],
                            None => {
                                let nf = normal_form(f, &Polynomial::monomial(prod, Fe::ONE), &self.rels);
                                nf.terms().iter().map(|&(mm, c)| (next.index[&mm], c)).collect()
                            }
                        }
                    })
                    .collect()
            })
        });
        p
    }

    /// Coordinates of a homogeneous polynomial of degree `t` (reduced first).
    pub fn coords(&self, g: &Polynomial, t: i64) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.dim(t)];
        if g.is_zero() {
            return v;
        }
        let p = self.piece(t).expect("degree of a nonzero polynomial");
        let nf = normal_form(&self.field, g, &self.rels);
        for &(m, c) in nf.terms() {
            v[p.index[&m] as usize] = c;
        }
        v
    }

    pub fn poly(&self, v: &[Fe], t: i64) -> Polynomial {
        match self.piece(t) {
            None => Polynomial::zero(),
            Some(p) => Polynomial::from_terms(
                &self.field,
                p.monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&m, &c)| (m, c)),
            ),
        }
    }

    /// Multiplication by the variable `var`: `R_t -> R_{t+1}`.
    pub fn mul_var(&self, var: usize, t: i64, w: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.dim(t + 1)];
        if t < 0 {
            return out;
        }
        let p = self.var_mul(t);
        let table = &p.var_mul.get().unwrap()[var];
        let f = &self.field;
        for (i, &c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, a) in &table[i] {
                let j = j as usize;
                out[j] = f.add(out[j], f.mul(c, a));
            }
        }
        out
    }

    /// Multiplication by a monomial `m`: `R_t -> R_{t + deg m}`.
    pub fn mul_mono(&self, m: Mono, t: i64, w: &[Fe]) -> Vec<Fe> {
        let mut cur = w.to_vec();
        let mut d = t;
        for v in 0..3 {
            for _ in 0..m.0[v] {
                cur = self.mul_var(v, d, &cur);
                d += 1;
            }
        }
        cur
    }

    /// Multiplication by a homogeneous polynomial `g` of degree `s`.
    pub fn mul_poly(&self, g: &Polynomial, s: i64, t: i64, w: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.dim(t + s)];
        if t < 0 || t + s < 0 {
            return out;
        }
        for &(m, c) in g.terms() {
            let v = self.mul_mono(m, t, w);
            add_scaled(&self.field, &mut out, c, &v);
        }
        out
    }

    /// Product of `r` in degree `s` (coordinates) with `w` in degree `t`.
    pub fn mul_elems(&self, r: &[Fe], s: i64, w: &[Fe], t: i64) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.dim(s + t)];
        if s < 0 || t < 0 {
            return out;
        }
        let p = self.piece(s).unwrap();
        for (i, &c) in r.iter().enumerate() {
            if !c.is_zero() {
                let v = self.mul_mono(p.monos[i], t, w);
                add_scaled(&self.field, &mut out, c, &v);
            }
        }
        out
    }
}
