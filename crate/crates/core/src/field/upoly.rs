//! Dense univariate polynomials over a [`Field`], little-endian, with no trailing zeros.
//!
//! Used for modulus selection, field embeddings and for splitting minimal
//! polynomials of endomorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Fe, Field};

pub type UPoly = Vec<Fe>;

pub fn trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &Field, a: &[Fe], b: &[Fe]) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Fe::ZERO);
            let y = b.get(i).copied().unwrap_or(Fe::ZERO);
            f.add(x, y)
        })
        .collect();
    trim(&mut r);
    r
}

pub fn sub(f: &Field, a: &[Fe], b: &[Fe]) -> UPoly {
    let nb: UPoly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn scale(f: &Field, a: &[Fe], c: Fe) -> UPoly {
    let mut r: UPoly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut r);
    r
}

pub fn mul(f: &Field, a: &[Fe], b: &[Fe]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Field, a: &[Fe], b: &[Fe]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let lead_inv = f.inv(b[db]);
    let mut q = vec![Fe::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let s = dr - db;
        q[s] = c;
        for i in 0..=db {
            r[s + i] = f.sub_mul(r[s + i], c, b[i]);
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &Field, a: &[Fe], b: &[Fe]) -> UPoly {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &[Fe]) -> UPoly {
    match degree(a) {
        None => vec![],
        Some(d) => scale(f, a, f.inv(a[d])),
    }
}

/// Monic gcd.
pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd(f: &Field, a: &[Fe], b: &[Fe]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (UPoly, UPoly) = (vec![Fe::ONE], vec![]);
    let (mut t0, mut t1): (UPoly, UPoly) = (vec![], vec![Fe::ONE]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(f, &t0, &mul(f, &q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        None => (vec![], s0, t0),
        Some(d) => {
            let c = f.inv(r0[d]);
            (scale(f, &r0, c), scale(f, &s0, c), scale(f, &t0, c))
        }
    }
}

pub fn mulmod(f: &Field, a: &[Fe], b: &[Fe], m: &[Fe]) -> UPoly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Field, a: &[Fe], mut e: u128, m: &[Fe]) -> UPoly {
    let mut base = rem(f, a, m);
    let mut r = rem(f, &[Fe::ONE], m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(f, &r, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    r
}

pub fn derivative(f: &Field, a: &[Fe]) -> UPoly {
    let mut r: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_i64(i as i64), c))
        .collect();
    trim(&mut r);
    r
}

pub fn eval(f: &Field, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

fn x_poly() -> UPoly {
    vec![Fe::ZERO, Fe::ONE]
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut r = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            r.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        r.push(n);
    }
    r
}

/// `t^(q^n) mod m` by repeated `q`-th powers.
fn x_qpow(f: &Field, n: usize, m: &[Fe]) -> UPoly {
    let q = f.size() as u128;
    let mut r = rem(f, &x_poly(), m);
    for _ in 0..n {
        r = powmod(f, &r, q, m);
    }
    r
}

/// Rabin's irreducibility test over `f`.
pub fn is_irreducible(f: &Field, a: &[Fe]) -> bool {
    let n = match degree(a) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let m = monic(f, a);
    if sub(f, &x_qpow(f, n, &m), &rem(f, &x_poly(), &m)).iter().any(|c| !c.is_zero()) {
        return false;
    }
    for r in prime_factors(n) {
        let h = sub(f, &x_qpow(f, n / r, &m), &x_poly());
        if degree(&gcd(f, &m, &h)) != Some(0) {
            return false;
        }
    }
    true
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Field, a: &[Fe]) -> UPoly {
    let p = f.p() as usize;
    // a^(1/p) = a^(p^(k-1)) on coefficients
    let e = f.k() as u32 - 1;
    let mut r: UPoly = a
        .iter()
        .step_by(p)
        .map(|&c| f.frobenius_pow(c, e))
        .collect();
    trim(&mut r);
    r
}

/// Squarefree factorization of a monic polynomial: pairs `(g, multiplicity)` with
/// `g` squarefree, pairwise coprime.
pub fn squarefree(f: &Field, a: &[Fe]) -> Vec<(UPoly, usize)> {
    let mut out = vec![];
    sqf_rec(f, &monic(f, a), 1, &mut out);
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| cmp_poly(&x.0, &y.0)));
    out
}

fn sqf_rec(f: &Field, a: &[Fe], mult: usize, out: &mut Vec<(UPoly, usize)>) {
    if degree(a).unwrap_or(0) == 0 {
        return;
    }
    let p = f.p() as usize;
    let da = derivative(f, a);
    if da.is_empty() {
        sqf_rec(f, &pth_root(f, a), mult * p, out);
        return;
    }
    let mut c = gcd(f, a, &da);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(f, &z), i * mult));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        sqf_rec(f, &pth_root(f, &c), mult * p, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Field, a: &[Fe]) -> Vec<(UPoly, usize)> {
    let q = f.size() as u128;
    let mut out = vec![];
    let mut rest = monic(f, a);
    let mut h = x_poly();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            let deg = degree(&rest).unwrap();
            out.push((rest.clone(), deg));
            break;
        }
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x_poly()));
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of equal degree `d`.
pub fn equal_degree(f: &Field, a: &[Fe], d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = degree(a).unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![monic(f, a)];
    }
    let q = f.size() as u128;
    loop {
        let g: UPoly = {
            let mut g: UPoly = (0..n).map(|_| Fe(rng.gen_range(0..f.size()))).collect();
            trim(&mut g);
            g
        };
        if degree(&g).unwrap_or(0) == 0 {
            continue;
        }
        let h = if f.p() == 2 {
            // absolute trace g + g^2 + ... + g^(2^(k d - 1))
            let mut t = g.clone();
            let mut acc = g.clone();
            for _ in 1..(f.k() * d) {
                t = mulmod(f, &t, &t, a);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // g^((q^d - 1)/2) = (g * g^q * ... * g^(q^(d-1)))^((q-1)/2)
            let mut norm = g.clone();
            let mut t = g.clone();
            for _ in 1..d {
                t = powmod(f, &t, q, a);
                norm = mulmod(f, &norm, &t, a);
            }
            sub(f, &powmod(f, &norm, (q - 1) / 2, a), &[Fe::ONE])
        };
        let u = gcd(f, a, &h);
        let du = degree(&u).unwrap_or(0);
        if du > 0 && du < n {
            let v = divrem(f, a, &u).0;
            let mut r = equal_degree(f, &u, d, rng);
            r.extend(equal_degree(f, &monic(f, &v), d, rng));
            return r;
        }
    }
}

/// Total order on polynomials: by degree, then coefficients from the top.
pub fn cmp_poly(a: &[Fe], b: &[Fe]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Complete factorization into monic irreducibles with multiplicities, sorted.
/// Deterministic: the random splitting uses a fixed seed.
pub fn factor(f: &Field, a: &[Fe]) -> Vec<(UPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7c1);
    let mut out = vec![];
    for (s, mult) in squarefree(f, a) {
        for (g, d) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|x, y| cmp_poly(&x.0, &y.0).then(x.1.cmp(&y.1)));
    out
}

/// Distinct roots in `f`, sorted by element index.
pub fn roots(f: &Field, a: &[Fe]) -> Vec<Fe> {
    if degree(a).unwrap_or(0) == 0 {
        return vec![];
    }
    let m = monic(f, a);
    let q = f.size() as u128;
    let split = gcd(f, &m, &sub(f, &powmod(f, &x_poly(), q, &m), &x_poly()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x7c2);
    let mut r: Vec<Fe> = equal_degree(f, &split, 1, &mut rng)
        .into_iter()
        .map(|l| f.neg(l[0]))
        .collect();
    r.sort();
    r
}

pub fn to_string(f: &Field, a: &[Fe], var: &str) -> String {
    let mut parts = vec![];
    for i in (0..a.len()).rev() {
        let c = a[i];
        if c.is_zero() {
            continue;
        }
        let cs = f.fmt_elem(c);
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(if i == 0 {
            cs
        } else if c == Fe::ONE {
            mono
        } else if f.as_prime(c).is_some() {
            format!("{cs}*{mono}")
        } else {
            format!("({cs})*{mono}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
