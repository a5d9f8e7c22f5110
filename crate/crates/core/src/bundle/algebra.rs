//! Finite-dimensional associative algebras given by structure constants, and
//! complete systems of primitive idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{upoly, Fe, Field};
use crate::linalg::{add_scaled, axpy, is_zero_vec, Matrix, Subspace};

/// `mult[i][j]` holds the coordinates of `b_i * b_j`.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    mult: Vec<Vec<Vec<Fe>>>,
    one: Vec<Fe>,
}

/// Outcome of the idempotent search.
#[derive(Clone, Debug)]
pub enum Splitting {
    Split(Idempotents),
    /// Some simple factor needs a residue field extension of this degree.
    Extend(usize),
}

#[derive(Clone, Debug)]
pub struct Idempotents {
    pub idempotents: Vec<Vec<Fe>>,
    pub radical: Subspace,
}

enum Corner {
    Local(Subspace),
    Split(Vec<Fe>),
    Extend(usize),
}

const RANDOM_TRIES: usize = 64;

impl Algebra {
    pub fn new(field: &Field, mult: Vec<Vec<Vec<Fe>>>, one: Vec<Fe>) -> Algebra {
        Algebra { field: field.clone(), mult, one }
    }

    /// The full matrix algebra `M_n(K)` with basis `E_{ij}` in row-major order.
    pub fn matrix_algebra(field: &Field, n: usize) -> Algebra {
        let d = n * n;
        let mut mult = vec![vec![vec![Fe::ZERO; d]; d]; d];
        for (a, row) in mult.iter_mut().enumerate() {
            for (b, prod) in row.iter_mut().enumerate() {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                if j == k {
                    prod[i * n + l] = Fe::ONE;
                }
            }
        }
        let mut one = vec![Fe::ZERO; d];
        for i in 0..n {
            one[i * n + i] = Fe::ONE;
        }
        Algebra::new(field, mult, one)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.one.len()
    }
    pub fn one(&self) -> &[Fe] {
        &self.one
    }
    pub fn structure_constants(&self) -> &[Vec<Vec<Fe>>] {
        &self.mult
    }

    pub fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if !b.is_zero() {
                    add_scaled(f, &mut out, f.mul(a, b), &self.mult[i][j]);
                }
            }
        }
        out
    }

    fn sub(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let mut out = x.to_vec();
        axpy(&self.field, &mut out, Fe::ONE, y);
        out
    }

    fn unit(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.dim()];
        v[i] = Fe::ONE;
        v
    }

    pub fn is_idempotent(&self, e: &[Fe]) -> bool {
        self.mul(e, e) == e
    }

    /// `e A f` as a subspace of the algebra.
    pub fn peirce(&self, e: &[Fe], g: &[Fe]) -> Subspace {
        let vecs: Vec<Vec<Fe>> = (0..self.dim()).map(|i| self.mul(&self.mul(e, &self.unit(i)), g)).collect();
        Subspace::span(&self.field, self.dim(), &vecs)
    }

    /// Minimal polynomial of `a` inside the corner algebra with unit `e`.
    pub fn min_poly(&self, a: &[Fe], e: &[Fe]) -> upoly::UPoly {
        let f = &self.field;
        let mut pows = vec![e.to_vec()];
        loop {
            let next = self.mul(pows.last().unwrap(), a);
            let m = Matrix::from_cols(self.dim(), &pows);
            if let Some(c) = m.solve(f, &next) {
                let mut g: Vec<Fe> = c.iter().map(|&x| f.neg(x)).collect();
                g.push(Fe::ONE);
                return g;
            }
            pows.push(next);
        }
    }

    /// `g(a)` with constant term read as a multiple of `e`.
    pub fn eval(&self, g: &[Fe], a: &[Fe], e: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut r = vec![Fe::ZERO; self.dim()];
        for &c in g.iter().rev() {
            r = self.mul(&r, a);
            add_scaled(f, &mut r, c, e);
        }
        r
    }

    /// Nontrivial idempotent of `K[a] ⊂ eAe` from a coprime factorization of the
    /// minimal polynomial, if it has at least two distinct irreducible factors.
    fn crt_idempotent(&self, a: &[Fe], e: &[Fe], mu: &[Fe]) -> Option<Vec<Fe>> {
        let f = &self.field;
        let factors = upoly::factor(f, mu);
        if factors.len() < 2 {
            return None;
        }
        let (g, k) = &factors[0];
        let mut pa = vec![Fe::ONE];
        for _ in 0..*k {
            pa = upoly::mul(f, &pa, g);
        }
        let (pb, r) = upoly::divrem(f, mu, &pa);
        debug_assert!(r.is_empty());
        let (gcd, _, t) = upoly::ext_gcd(f, &pa, &pb);
        debug_assert_eq!(gcd, vec![Fe::ONE]);
        let eps = self.eval(&upoly::mul(f, &t, &pb), a, e);
        Some(eps)
    }

    fn nilpotent(&self, j: &Subspace) -> bool {
        let f = &self.field;
        let mut p = j.clone();
        while p.dim() > 0 {
            let mut vecs = vec![];
            for a in p.basis() {
                for b in j.basis() {
                    vecs.push(self.mul(a, b));
                }
            }
            let next = Subspace::span(f, self.dim(), &vecs);
            if next.dim() >= p.dim() {
                return false;
            }
            p = next;
        }
        true
    }

    /// Tests whether `eAe` is local with residue field `K`, otherwise looks for a
    /// nontrivial idempotent or reports the residue degree needed.
    fn split_corner(&self, e: &[Fe], rng: &mut ChaCha8Rng) -> Result<Corner> {
        let f = &self.field;
        let corner = self.peirce(e, e);
        if corner.dim() == 1 {
            return Ok(Corner::Local(Subspace::zero(self.dim())));
        }
        let mut ext = 1usize;
        let mut nil = vec![];
        let mut linear = true;
        for b in corner.basis() {
            let mu = self.min_poly(b, e);
            if let Some(eps) = self.crt_idempotent(b, e, &mu) {
                return Ok(Corner::Split(eps));
            }
            let g = &upoly::factor(f, &mu)[0].0;
            if g.len() == 2 {
                let mut v = b.clone();
                axpy(f, &mut v, f.neg(g[0]), e);
                nil.push(v);
            } else {
                linear = false;
                ext = lcm(ext, g.len() - 1);
            }
        }
        if linear {
            let j = Subspace::span(f, self.dim(), &nil);
            if j.dim() + 1 == corner.dim() && !j.contains(f, e) && self.is_ideal(&corner, &j) && self.nilpotent(&j) {
                return Ok(Corner::Local(j));
            }
        }
        for _ in 0..RANDOM_TRIES {
            let c: Vec<Fe> = (0..corner.dim()).map(|_| Fe(rng.gen_range(0..f.size()))).collect();
            let a = corner.combine(f, &c);
            let mu = self.min_poly(&a, e);
            if let Some(eps) = self.crt_idempotent(&a, e, &mu) {
                return Ok(Corner::Split(eps));
            }
            let d = upoly::factor(f, &mu)[0].0.len() - 1;
            ext = lcm(ext, d);
        }
        if ext > 1 {
            Ok(Corner::Extend(ext))
        } else {
            Err(Error::Undecided(format!("no idempotent found in a corner of dimension {}", corner.dim())))
        }
    }

    fn is_ideal(&self, corner: &Subspace, j: &Subspace) -> bool {
        let f = &self.field;
        corner.basis().iter().all(|c| {
            j.basis()
                .iter()
                .all(|x| j.contains(f, &self.mul(c, x)) && j.contains(f, &self.mul(x, c)))
        })
    }

    /// The scalar `λ` with `x - λe ∈ J` for `x` in a local corner `eAe = Ke ⊕ J`.
    fn residue(&self, e: &[Fe], j: &Subspace, x: &[Fe]) -> Fe {
        let f = &self.field;
        let re = j.reduce(f, e);
        let rx = j.reduce(f, x);
        let p = re.iter().position(|c| !c.is_zero()).expect("unit outside the radical");
        f.div(rx[p], re[p])
    }

    /// Complete system of orthogonal primitive idempotents, each with local corner
    /// of residue field `K`, and the Jacobson radical.
    pub fn primitive_idempotents(&self) -> Result<Splitting> {
        let f = &self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(0x1de3);
        let mut todo = vec![self.one.clone()];
        let mut done: Vec<(Vec<Fe>, Subspace)> = vec![];
        while let Some(e) = todo.pop() {
            match self.split_corner(&e, &mut rng)? {
                Corner::Local(j) => done.push((e, j)),
                Corner::Split(eps) => {
                    if is_zero_vec(&eps) || eps == e || !self.is_idempotent(&eps) {
                        return Err(Error::Inconsistent("bad idempotent from a split minimal polynomial".into()));
                    }
                    let rest = self.sub(&e, &eps);
                    todo.push(rest);
                    todo.push(eps);
                }
                Corner::Extend(r) => return Ok(Splitting::Extend(r)),
            }
        }
        done.sort_by(|a, b| a.0.cmp(&b.0));
        let mut rad = vec![];
        for (ei, ji) in &done {
            for (ej, _) in &done {
                let u = self.peirce(ei, ej);
                let w = self.peirce(ej, ei);
                if u.dim() == 0 {
                    continue;
                }
                let rows: Vec<Vec<Fe>> = w
                    .basis()
                    .iter()
                    .map(|wv| u.basis().iter().map(|uv| self.residue(ei, ji, &self.mul(uv, wv))).collect())
                    .collect();
                for k in Matrix::from_rows(u.dim(), &rows).kernel(f) {
                    rad.push(u.combine(f, &k));
                }
            }
        }
        Ok(Splitting::Split(Idempotents {
            idempotents: done.into_iter().map(|d| d.0).collect(),
            radical: Subspace::span(f, self.dim(), &rad),
        }))
    }

    pub fn is_two_sided_ideal(&self, j: &Subspace) -> bool {
        self.is_ideal(&Subspace::full(self.dim()), j)
    }

    pub fn is_nilpotent_subspace(&self, j: &Subspace) -> bool {
        self.nilpotent(j)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn check_system(alg: &Algebra, s: &Idempotents) {
        let f = alg.field();
        let mut sum = vec![Fe::ZERO; alg.dim()];
        for (i, e) in s.idempotents.iter().enumerate() {
            assert!(alg.is_idempotent(e));
            add_scaled(f, &mut sum, Fe::ONE, e);
            for (j, g) in s.idempotents.iter().enumerate() {
                if i != j {
                    assert!(is_zero_vec(&alg.mul(e, g)));
                }
            }
        }
        assert_eq!(sum, alg.one());
        assert!(alg.is_two_sided_ideal(&s.radical));
        assert!(alg.is_nilpotent_subspace(&s.radical));
    }

    #[test]
    fn matrix_algebra_splits() {
        let f = make_field(3, 1).unwrap();
        for n in 1..4 {
            let alg = Algebra::matrix_algebra(&f, n);
            let Splitting::Split(s) = alg.primitive_idempotents().unwrap() else { panic!() };
            assert_eq!(s.idempotents.len(), n);
            assert_eq!(s.radical.dim(), 0);
            check_system(&alg, &s);
        }
    }

    /// Upper triangular 2x2 matrices: basis E11, E12, E22.
    #[test]
    fn triangular_algebra() {
        let f = make_field(5, 1).unwrap();
        let m = Algebra::matrix_algebra(&f, 2);
        let keep = [0usize, 1, 3];
        let mult = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| keep.iter().map(|&c| m.mul(&m.unit(a), &m.unit(b))[c]).collect()).collect())
            .collect();
        let alg = Algebra::new(&f, mult, vec![Fe::ONE, Fe::ZERO, Fe::ONE]);
        let Splitting::Split(s) = alg.primitive_idempotents().unwrap() else { panic!() };
        assert_eq!(s.idempotents.len(), 2);
        assert_eq!(s.radical.basis(), &[vec![Fe::ZERO, Fe::ONE, Fe::ZERO]]);
        check_system(&alg, &s);
    }

    /// `K[u]/(u^2)` is local; `F_4` over `F_2` needs a quadratic extension.
    #[test]
    fn local_and_nonsplit() {
        let f = make_field(2, 1).unwrap();
        let dual = Algebra::new(&f, vec![vec![vec![Fe::ONE, Fe::ZERO], vec![Fe::ZERO, Fe::ONE]], vec![vec![Fe::ZERO, Fe::ONE], vec![Fe::ZERO, Fe::ZERO]]], vec![Fe::ONE, Fe::ZERO]);
        let Splitting::Split(s) = dual.primitive_idempotents().unwrap() else { panic!() };
        assert_eq!(s.idempotents, vec![vec![Fe::ONE, Fe::ZERO]]);
        assert_eq!(s.radical.dim(), 1);
        // basis 1, t with t^2 = t + 1
        let f4 = Algebra::new(&f, vec![vec![vec![Fe::ONE, Fe::ZERO], vec![Fe::ZERO, Fe::ONE]], vec![vec![Fe::ZERO, Fe::ONE], vec![Fe::ONE, Fe::ONE]]], vec![Fe::ONE, Fe::ZERO]);
        assert!(matches!(f4.primitive_idempotents().unwrap(), Splitting::Extend(2)));
    }

    #[test]
    fn min_poly_of_projection() {
        let f = make_field(7, 1).unwrap();
        let alg = Algebra::matrix_algebra(&f, 2);
        let e11 = alg.unit(0);
        assert_eq!(alg.min_poly(&e11, alg.one()), vec![Fe::ZERO, f.neg(Fe::ONE), Fe::ONE]);
        assert_eq!(lcm(4, 6), 12);
    }
}
