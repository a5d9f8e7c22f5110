//! Plane cubics and homogeneous ideals in their cone.

use super::groebner::{buchberger, contains_variable_powers, normal_form};
use super::poly::{Mono, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Field};

/// Whether `(F, dF/dx, dF/dy, dF/dz)` is primary to `(x, y, z)`.
pub fn is_smooth_cubic(field: &Field, cubic: &Polynomial) -> Result<bool> {
    check_cubic(cubic)?;
    let mut gens = vec![cubic.clone()];
    gens.extend((0..3).map(|v| cubic.partial(field, v)));
    Ok(contains_variable_powers(&buchberger(field, &gens)))
}

fn check_cubic(cubic: &Polynomial) -> Result<()> {
    if !cubic.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    match cubic.degree() {
        Some(3) => Ok(()),
        Some(d) => Err(Error::NotCubic(d as i64)),
        None => Err(Error::NotCubic(-1)),
    }
}

/// Coefficient of `(xyz)^(p-1)` in `F^(p-1)`.
///
/// Dynamic programming over the powers of `F`, discarding monomials with an
/// exponent above `p - 1`; `O(p^3)` work.
pub fn hasse_invariant(field: &Field, cubic: &Polynomial) -> Fe {
    let n = field.p() as usize - 1;
    if n == 0 {
        return Fe::ONE;
    }
    // table indexed by (a, b); the z exponent is fixed by the degree
    let w = n + 1;
    let mut cur = vec![Fe::ZERO; w * w];
    cur[0] = Fe::ONE;
    for j in 0..n {
        let deg = 3 * j;
        let mut next = vec![Fe::ZERO; w * w];
        for a in 0..w {
            for b in 0..w {
                let c = cur[a * w + b];
                if c.is_zero() || deg < a + b || deg - a - b > n {
                    continue;
                }
                let cz = deg - a - b;
                for &(m, t) in cubic.terms() {
                    let (na, nb, nc) = (a + m.0[0] as usize, b + m.0[1] as usize, cz + m.0[2] as usize);
                    if na > n || nb > n || nc > n {
                        continue;
                    }
                    let e = &mut next[na * w + nb];
                    *e = field.add(*e, field.mul(c, t));
                }
            }
        }
        cur = next;
    }
    cur[n * w + n]
}

/// A smooth plane cubic `F` and its invariants.
#[derive(Clone, Debug)]
pub struct CubicCurve {
    field: Field,
    cubic: Polynomial,
    gb: Vec<Polynomial>,
    hasse: Fe,
}

impl CubicCurve {
    pub fn new(field: &Field, cubic: Polynomial) -> Result<CubicCurve> {
        if !is_smooth_cubic(field, &cubic)? {
            return Err(Error::Singular);
        }
        let gb = vec![cubic.monic(field)];
        let hasse = hasse_invariant(field, &cubic);
        Ok(CubicCurve { field: field.clone(), cubic, gb, hasse })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn cubic(&self) -> &Polynomial {
        &self.cubic
    }
    /// Reduced Gröbner basis of `(F)`.
    pub fn groebner(&self) -> &[Polynomial] {
        &self.gb
    }
    pub fn hasse(&self) -> Fe {
        self.hasse
    }
    pub fn supersingular(&self) -> bool {
        self.hasse.is_zero()
    }

    pub fn base_change(&self, e: &Embedding) -> CubicCurve {
        let t = e.target();
        let cubic = self.cubic.map_coeffs(e);
        CubicCurve {
            field: t.clone(),
            gb: vec![cubic.monic(t)],
            hasse: hasse_invariant(t, &cubic),
            cubic,
        }
    }
}

/// Homogeneous generators `f_1..f_n` of an ideal primary to the irrelevant ideal of the cone.
#[derive(Clone, Debug)]
pub struct IdealData {
    curve: CubicCurve,
    gens: Vec<Polynomial>,
    degrees: Vec<u32>,
    gb: Vec<Polynomial>,
}

impl IdealData {
    pub fn new(curve: &CubicCurve, gens: Vec<Polynomial>) -> Result<IdealData> {
        if gens.len() < 2 {
            return Err(Error::TooFewGenerators);
        }
        let mut degrees = vec![];
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            match g.degree() {
                Some(d) if d > 0 => degrees.push(d),
                _ => return Err(Error::BadGenerator),
            }
        }
        let id = Self::unchecked(curve, gens, degrees);
        if !id.is_irrelevant_primary() {
            return Err(Error::NotPrimary);
        }
        Ok(id)
    }

    fn unchecked(curve: &CubicCurve, gens: Vec<Polynomial>, degrees: Vec<u32>) -> IdealData {
        let f = curve.field();
        let mut all = gens.clone();
        all.push(curve.cubic().clone());
        let gb = buchberger(f, &all);
        IdealData { curve: curve.clone(), gens, degrees, gb }
    }

    pub fn curve(&self) -> &CubicCurve {
        &self.curve
    }
    pub fn field(&self) -> &Field {
        self.curve.field()
    }
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
    pub fn n(&self) -> usize {
        self.gens.len()
    }
    /// Reduced Gröbner basis of `(f_1, ..., f_n, F)` in the polynomial ring.
    pub fn groebner(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_irrelevant_primary(&self) -> bool {
        contains_variable_powers(&self.gb)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(self.field(), f, &self.gb).is_zero()
    }

    pub fn base_change(&self, e: &Embedding) -> IdealData {
        let curve = self.curve.base_change(e);
        let gens = self.gens.iter().map(|g| g.map_coeffs(e)).collect();
        Self::unchecked(&curve, gens, self.degrees.clone())
    }

    /// Same curve, generators `(f_1, ..., f_n, g)`.
    pub fn with_generator(&self, g: Polynomial) -> Result<IdealData> {
        let mut gens = self.gens.clone();
        gens.push(g);
        IdealData::new(&self.curve, gens)
    }
}

/// Whether `f` lies in `(f_1, ..., f_n, F)`.
pub fn ideal_membership(f: &Polynomial, ideal: &IdealData) -> Result<bool> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(ideal.contains(f))
}

/// The monomial `x^a y^b z^c` as a polynomial.
pub fn mono(a: u16, b: u16, c: u16) -> Polynomial {
    Polynomial::monomial(Mono([a, b, c]), Fe::ONE)
}
