//! Polynomials in `x, y, z` under degrevlex with `x > y > z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Embedding, Fe, Field};

/// Exponent triple `(x, y, z)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u16; 3]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0]);

    pub fn var(i: usize) -> Mono {
        let mut e = [0; 3];
        e[i] = 1;
        Mono(e)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming divisibility.
    #[inline]
    pub fn div_into(self, o: Mono) -> Mono {
        Mono([o.0[0] - self.0[0], o.0[1] - self.0[1], o.0[2] - self.0[2]])
    }

    pub fn lcm(self, o: Mono) -> Mono {
        Mono([self.0[0].max(o.0[0]), self.0[1].max(o.0[1]), self.0[2].max(o.0[2])])
    }

    pub fn coprime(self, o: Mono) -> bool {
        (0..3).all(|i| self.0[i] == 0 || o.0[i] == 0)
    }

    pub fn scale_exponents(self, q: u16) -> Mono {
        Mono([self.0[0] * q, self.0[1] * q, self.0[2] * q])
    }

    /// All monomials of degree `d`, in decreasing order.
    pub fn all_of_degree(d: u32) -> Vec<Mono> {
        let mut v = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for z in 0..=d {
            for y in 0..=(d - z) {
                let x = d - y - z;
                v.push(Mono([x as u16, y as u16, z as u16]));
            }
        }
        v
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then(o.0[2].cmp(&self.0[2]))
            .then(o.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = vec![];
    for (i, v) in ["x", "y", "z"].iter().enumerate() {
        match m.0[i] {
            0 => {}
            1 => parts.push(v.to_string()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Terms strictly decreasing, coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Mono, Fe)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: vec![] }
    }

    pub fn constant(c: Fe) -> Polynomial {
        Polynomial::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: Fe) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Polynomial {
        Polynomial::monomial(Mono::var(i), Fe::ONE)
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(f: &Field, terms: impl IntoIterator<Item = (Mono, Fe)>) -> Polynomial {
        let mut acc: BTreeMap<Mono, Fe> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Fe::ZERO);
            *e = f.add(*e, c);
        }
        Polynomial::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Mono, Fe>) -> Polynomial {
        Polynomial {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Mono, Fe)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> Option<Fe> {
        self.terms.first().map(|t| t.1)
    }

    /// Total degree of the leading monomial; for homogeneous polynomials the degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(&(m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn coeff(&self, m: Mono) -> Fe {
        self.terms
            .iter()
            .find(|t| t.0 == m)
            .map(|t| t.1)
            .unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, f: &Field, o: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (self.terms[i], o.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.1, b.1);
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Field) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &Polynomial) -> Polynomial {
        self.add(f, &o.neg(f))
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, f: &Field, m: Mono, c: Fe) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(n, a)| (n.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, f: &Field, o: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Mono, Fe> = BTreeMap::new();
        for &(m, a) in &self.terms {
            for &(n, b) in &o.terms {
                let e = acc.entry(m.mul(n)).or_insert(Fe::ZERO);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        Polynomial::from_map(acc)
    }

    pub fn pow(&self, f: &Field, e: u32) -> Polynomial {
        let mut r = Polynomial::constant(Fe::ONE);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        r
    }

    pub fn monic(&self, f: &Field) -> Polynomial {
        match self.lc() {
            None => Polynomial::zero(),
            Some(c) => self.scale(f, f.inv(c)),
        }
    }

    /// `g^q` for `q = p^e`, computed termwise via the Frobenius.
    pub fn frobenius_power(&self, f: &Field, e: u32) -> Polynomial {
        let q = (f.p() as u32).pow(e);
        let q16 = u16::try_from(q).expect("Frobenius exponent fits in u16");
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m.scale_exponents(q16), f.frobenius_pow(c, e)))
                .collect(),
        }
    }

    pub fn partial(&self, f: &Field, var: usize) -> Polynomial {
        Polynomial::from_terms(
            f,
            self.terms.iter().filter(|t| t.0 .0[var] > 0).map(|&(m, c)| {
                let mut e = m.0;
                let k = e[var];
                e[var] -= 1;
                (Mono(e), f.mul(f.from_i64(k as i64), c))
            }),
        )
    }

    pub fn map_coeffs(&self, e: &Embedding) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|&(m, c)| (m, e.apply(c))).collect(),
        }
    }

    /// Text form parseable by [`parse`].
    pub fn display(&self, f: &Field) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, &(m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = coeff_repr(f, c);
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let ms = fmt_mono(m);
            match (body.as_str(), ms.is_empty()) {
                (b, true) => s.push_str(b),
                ("1", false) => s.push_str(&ms),
                (b, false) => {
                    let _ = write!(s, "{b}*{ms}");
                }
            }
        }
        s
    }
}

/// Sign and magnitude for printing: prime-field values use the symmetric range.
fn coeff_repr(f: &Field, c: Fe) -> (bool, String) {
    if let Some(v) = f.as_prime(c) {
        let p = f.p();
        if p > 2 && v > p / 2 {
            return (true, (p - v).to_string());
        }
        return (false, v.to_string());
    }
    (false, format!("({})", f.fmt_elem(c)))
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    T,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut it = s.char_indices().peekable();
    while let Some((i, ch)) = it.next() {
        let t = match ch {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut v: u64 = ch.to_digit(10).unwrap() as u64;
                while let Some(&(_, d)) = it.peek() {
                    let Some(dv) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(dv as u64))
                        .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                    it.next();
                }
                Tok::Num(v)
            }
            'x' => Tok::Var(0),
            'y' => Tok::Var(1),
            'z' => Tok::Var(2),
            't' => Tok::T,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c => return Err(Error::Parse(format!("unexpected character '{c}' at offset {i}"))),
        };
        out.push(t);
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let f = self.field;
        let mut neg = false;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            neg ^= t == Tok::Minus;
            self.pos += 1;
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg(f);
        }
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if t == Tok::Plus { acc.add(f, &rhs) } else { acc.sub(f, &rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(self.field, &self.power()?);
                }
                // implicit multiplication, e.g. `3x^2` or `(t+1)x`
                Some(Tok::Num(_) | Tok::Var(_) | Tok::T | Tok::LParen) => {
                    acc = acc.mul(self.field, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e)
                        .ok()
                        .filter(|&e| e <= u16::MAX as u32)
                        .ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(self.field, e))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let f = self.field;
        let t = self.peek().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match t {
            Tok::Num(v) => Ok(Polynomial::constant(Fe(v % f.p()))),
            Tok::Var(i) => Ok(Polynomial::var(i)),
            Tok::T => {
                if f.k() == 1 {
                    return Err(Error::Parse("'t' is only meaningful over an extension field".into()));
                }
                Ok(Polynomial::constant(f.generator()))
            }
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses text such as `3*x^2*y + z^3` or `(t+1)*x - y`.
pub fn parse(field: &Field, s: &str) -> Result<Polynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, field };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(r)
}
