//! Finite fields `F_p` and `F_{p^k}`.
//!
//! Elements are stored as their canonical index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coordinates in the power basis of the modulus root `t`.
//! All arithmetic goes through a [`Field`] handle.

pub mod upoly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, meaningful only together with the [`Field`] that produced it.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u64,
    k: usize,
    /// Monic modulus, little-endian, length `k + 1`.
    modulus: Vec<u64>,
    /// `p^i` for `i = 0..=k`.
    pows: Vec<u64>,
}

/// Cheaply clonable handle to `F_{p^k}`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} [{}]", self.p(), self.k(), self.modulus_string())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest monic irreducible polynomial of degree `k` over `F_p`.
///
/// Candidates are ranked by the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their
/// lower coefficients, so `t^3+t+1` precedes `t^3+t^2+1` over `F_2`.
/// Returned little-endian and monic (length `k + 1`).
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    check_params(p, k)?;
    let prime = Field::prime(p)?;
    let bound = checked_pow(p, k).ok_or(Error::FieldTooLarge { p, k })?;
    for n in 0..bound {
        let mut f: Vec<Fe> = Vec::with_capacity(k + 1);
        let mut r = n;
        for _ in 0..k {
            f.push(Fe(r % p));
            r /= p;
        }
        f.push(Fe::ONE);
        if upoly::is_irreducible(&prime, &f) {
            return Ok(f.into_iter().map(|c| c.0).collect());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn check_params(p: u64, k: usize) -> Result<()> {
    if p >= 1 << 16 || !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    if k < 1 {
        return Err(Error::InvalidExtensionDegree(k));
    }
    Ok(())
}

fn checked_pow(p: u64, k: usize) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..k {
        r = r.checked_mul(p)?;
    }
    Some(r)
}

/// `F_{p^k}` with the modulus chosen by [`find_irreducible`].
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    check_params(p, k)?;
    checked_pow(p, k).ok_or(Error::FieldTooLarge { p, k })?;
    if k == 1 {
        return Field::prime(p);
    }
    let modulus = find_irreducible(p, k)?;
    Ok(Field::with_modulus(p, modulus))
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        check_params(p, 1)?;
        Ok(Field::with_modulus(p, vec![0, 1]))
    }

    fn with_modulus(p: u64, modulus: Vec<u64>) -> Field {
        let k = modulus.len() - 1;
        let mut pows = vec![1u64; k + 1];
        for i in 1..=k {
            pows[i] = pows[i - 1] * p;
        }
        Field(Arc::new(Inner { p, k, modulus, pows }))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.0.k
    }
    /// Number of elements.
    #[inline]
    pub fn size(&self) -> u64 {
        self.0.pows[self.0.k]
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn modulus_string(&self) -> String {
        let coeffs: Vec<Fe> = self.0.modulus.iter().map(|&c| Fe(c)).collect();
        upoly::to_string(&Field::with_modulus(self.p(), vec![0, 1]), &coeffs, "t")
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }
    /// The class of `t`, a root of the modulus (equals `0` in a prime field).
    pub fn generator(&self) -> Fe {
        if self.k() == 1 {
            Fe(0)
        } else {
            Fe(self.p())
        }
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p() as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size()).map(Fe)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let p = self.p();
        let mut r = a.0;
        (0..self.k())
            .map(|_| {
                let c = r % p;
                r /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Fe {
        debug_assert!(c.len() <= self.k());
        let mut v = 0;
        for (i, &ci) in c.iter().enumerate() {
            v += (ci % self.p()) * self.0.pows[i];
        }
        Fe(v)
    }

    /// Element of the prime subfield, if `a` lies in it.
    pub fn as_prime(&self, a: Fe) -> Option<u64> {
        (a.0 < self.p()).then_some(a.0)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut r, mut i) = (a.0, b.0, 0, 0);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * self.0.pows[i];
            x /= p;
            y /= p;
            i += 1;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut r, mut i) = (a.0, 0, 0);
        while x > 0 {
            r += ((p - x % p) % p) * self.0.pows[i];
            x /= p;
            i += 1;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.k() == 1 {
            return Fe(a.0 * b.0 % self.p());
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let p = self.p();
        let k = self.k();
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
            }
        }
        self.from_coeffs(&prod[..k])
    }

    /// `a - c*b`, the elimination kernel.
    #[inline]
    pub fn sub_mul(&self, a: Fe, c: Fe, b: Fe) -> Fe {
        if self.k() == 1 {
            let p = self.p();
            return Fe((a.0 + (p - c.0) * b.0) % p);
        }
        self.sub(a, self.mul(c, b))
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut r = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        if self.k() == 1 {
            let p = self.p() as i64;
            let (mut r0, mut r1) = (p, a.0 as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            return Fe(s0.rem_euclid(p) as u64);
        }
        self.pow(a, self.size() as u128 - 2)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        if self.k() == 1 {
            a
        } else {
            self.pow(a, self.p() as u128)
        }
    }

    /// `a^(p^e)`.
    pub fn frobenius_pow(&self, a: Fe, e: u32) -> Fe {
        let e = e as usize % self.k();
        let mut r = a;
        for _ in 0..e {
            r = self.frobenius(r);
        }
        r
    }

    /// Element as text: an integer for the prime subfield, otherwise a polynomial in `t`.
    pub fn fmt_elem(&self, a: Fe) -> String {
        if let Some(v) = self.as_prime(a) {
            return v.to_string();
        }
        let c: Vec<Fe> = self.coeffs(a).into_iter().map(Fe).collect();
        upoly::to_string(&Field::with_modulus(self.p(), vec![0, 1]), &c, "t")
    }
}

/// A field embedding `F_{p^k} -> F_{p^{km}}` fixing `F_p`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    image_of_generator: Fe,
}

impl Embedding {
    /// Sends the source generator to the smallest root (by element index) of the
    /// source modulus in the target.
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::IncompatibleFields {
                from: source.k(),
                to: target.k(),
            });
        }
        let image_of_generator = if source.k() == 1 {
            Fe::ZERO
        } else {
            let m: Vec<Fe> = source.modulus().iter().map(|&c| Fe(c)).collect();
            let roots = upoly::roots(target, &m);
            *roots.iter().min().expect("modulus splits in an extension of divisible degree")
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image_of_generator,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }
    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        if self.source.k() == 1 {
            return a;
        }
        let tf = &self.target;
        let mut r = Fe::ZERO;
        for &c in self.source.coeffs(a).iter().rev() {
            r = tf.add(tf.mul(r, self.image_of_generator), Fe(c));
        }
        r
    }

    /// The source element mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        if self.source.k() == 1 {
            return self.target.as_prime(b).map(Fe);
        }
        let fp = Field::prime(self.target.p()).expect("prime characteristic");
        let k = self.source.k();
        let cols: Vec<Vec<Fe>> = (0..k)
            .map(|i| {
                let mut c = vec![0u64; k];
                c[i] = 1;
                let img = self.apply(self.source.from_coeffs(&c));
                self.target.coeffs(img).into_iter().map(Fe).collect()
            })
            .collect();
        let m = crate::linalg::Matrix::from_cols(self.target.k(), &cols);
        let rhs: Vec<Fe> = self.target.coeffs(b).into_iter().map(Fe).collect();
        let x = crate::linalg::Solver::new(&fp, &m).solve(&fp, &rhs)?;
        Some(self.source.from_coeffs(&x.iter().map(|e| e.0).collect::<Vec<_>>()))
    }
}

/// Embeds a single element; see [`Embedding::new`] for the choice of generator image.
pub fn embed(a: Fe, source: &Field, target: &Field) -> Result<Fe> {
    Ok(Embedding::new(source, target)?.apply(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_irreducible(p: u64, f: &[u64]) -> bool {
        // trial division by every monic polynomial of degree 1..=deg/2
        let k = f.len() - 1;
        let fp = Field::prime(p).unwrap();
        let ff: Vec<Fe> = f.iter().map(|&c| Fe(c)).collect();
        for d in 1..=k / 2 {
            for n in 0..p.pow(d as u32) {
                let mut g: Vec<Fe> = (0..d).map(|i| Fe(n / p.pow(i as u32) % p)).collect();
                g.push(Fe::ONE);
                let (_, r) = upoly::divrem(&fp, &ff, &g);
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(find_irreducible(5, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(find_irreducible(7, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn irreducible_matches_trial_division() {
        for &(p, k) in &[(2u64, 4usize), (2, 5), (3, 3), (5, 2), (5, 3), (7, 3), (3, 4)] {
            let f = find_irreducible(p, k).unwrap();
            assert!(naive_irreducible(p, &f), "p={p} k={k}");
            // nothing earlier in the ranking is irreducible
            let idx: u64 = f[..k].iter().rev().fold(0, |acc, &c| acc * p + c);
            for n in 0..idx {
                let mut g: Vec<u64> = (0..k).map(|i| n / p.pow(i as u32) % p).collect();
                g.push(1);
                assert!(!naive_irreducible(p, &g));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::InvalidCharacteristic(4))));
        assert!(matches!(make_field(5, 0), Err(Error::InvalidExtensionDegree(0))));
        assert!(make_field(65537, 1).is_err());
    }

    #[test]
    fn f4_tables() {
        let f = make_field(2, 2).unwrap();
        let t = f.generator();
        // t^2 = t + 1
        assert_eq!(f.mul(t, t), f.add(t, Fe::ONE));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a)), Fe::ONE);
        }
        assert_eq!(f.fmt_elem(Fe(3)), "t + 1");
    }

    #[test]
    fn frobenius_fixed_points() {
        for &(p, k) in &[(2u64, 3usize), (3, 2), (5, 2), (2, 4)] {
            let f = make_field(p, k).unwrap();
            let fixed = f.elements().filter(|&a| f.frobenius(a) == a).count() as u64;
            assert_eq!(fixed, p);
            for a in f.elements().take(50) {
                for b in f.elements().take(20) {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn embed_f4_into_f16() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        // roots of t^2+t+1 in F_16 = F_2[u]/(u^4+u+1): u^2+u and u^2+u+1
        let mut roots: Vec<Fe> = f16
            .elements()
            .filter(|&a| f16.add(f16.add(f16.mul(a, a), a), Fe::ONE).is_zero())
            .collect();
        roots.sort();
        assert_eq!(roots, vec![Fe(6), Fe(7)]);
        let e = Embedding::new(&f4, &f16).unwrap();
        assert_eq!(e.apply(f4.generator()), Fe(6));
        assert_eq!(e.apply(Fe::ONE), Fe::ONE);
        assert_eq!(e.apply(Fe::ZERO), Fe::ZERO);
        for a in f4.elements() {
            assert_eq!(e.preimage(e.apply(a)), Some(a));
        }
        let in_image = f16.elements().filter(|&b| e.preimage(b).is_some()).count();
        assert_eq!(in_image, 4);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
            }
        }
        assert!(Embedding::new(&make_field(2, 3).unwrap(), &f16).is_err());
    }

    #[test]
    fn embed_prime_subfield() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(embed(Fe(1), &f2, &f4).unwrap(), Fe(1));
        assert_eq!(embed(Fe(0), &f2, &f4).unwrap(), Fe(0));
    }
}
