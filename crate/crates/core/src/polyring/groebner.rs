//! Reduced Gröbner bases by Buchberger's algorithm with sugar pair selection.

use std::collections::BTreeMap;

use super::poly::{Mono, Polynomial};
use crate::field::{Fe, Field};

/// Remainder of `g` on division by `basis` (fully reduced).
pub fn normal_form(f: &Field, g: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    if basis.is_empty() || g.is_zero() {
        return g.clone();
    }
    let leads: Vec<(Mono, Fe)> = basis
        .iter()
        .map(|b| (b.lm().unwrap(), f.inv(b.lc().unwrap())))
        .collect();
    let mut work: BTreeMap<Mono, Fe> = g.terms().iter().copied().collect();
    let mut rem: Vec<(Mono, Fe)> = vec![];
    while let Some((m, c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match leads.iter().position(|(lm, _)| lm.divides(m)) {
            Some(i) => {
                let (lm, inv) = leads[i];
                let q = lm.div_into(m);
                let factor = f.mul(c, inv);
                for &(bm, bc) in &basis[i].terms()[1..] {
                    let e = work.entry(bm.mul(q)).or_insert(Fe::ZERO);
                    *e = f.sub_mul(*e, factor, bc);
                }
            }
            None => rem.push((m, c)),
        }
    }
    Polynomial::from_terms(f, rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

/// Options for [`buchberger_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    /// For homogeneous input: ignore S-pairs above this degree (truncated basis).
    pub max_degree: Option<u32>,
}

/// The reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub fn buchberger(f: &Field, gens: &[Polynomial]) -> Vec<Polynomial> {
    buchberger_with(f, gens, GbOptions::default())
}

pub fn buchberger_with(f: &Field, gens: &[Polynomial], opts: GbOptions) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = vec![];
    let mut sugar: Vec<u32> = vec![];
    let mut live: Vec<bool> = vec![];
    let mut pairs: Vec<Pair> = vec![];

    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by_key(|g| std::cmp::Reverse(g.lm()));
    while let Some(g) = input.pop() {
        let s = g.degree().unwrap();
        let h = normal_form(f, &g, &live_basis(&basis, &live));
        if !h.is_zero() {
            insert(f, h.monic(f), s, &mut basis, &mut sugar, &mut live, &mut pairs);
        }
    }

    loop {
        if let Some(d) = opts.max_degree {
            pairs.retain(|p| p.sugar <= d);
        }
        let Some(best) = (0..pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&pairs[a], &pairs[b]);
            (pa.sugar, pa.lcm, pa.i, pa.j).cmp(&(pb.sugar, pb.lcm, pb.i, pb.j))
        }) else {
            break;
        };
        let pr = pairs.swap_remove(best);
        if !live[pr.i] || !live[pr.j] {
            // still a valid pair: dead polynomials remain in the ideal
        }
        let s = spoly(f, &basis[pr.i], &basis[pr.j]);
        let h = normal_form(f, &s, &live_basis(&basis, &live));
        if !h.is_zero() {
            insert(f, h.monic(f), pr.sugar, &mut basis, &mut sugar, &mut live, &mut pairs);
        }
    }
    reduce_basis(f, live_basis(&basis, &live))
}

fn live_basis(basis: &[Polynomial], live: &[bool]) -> Vec<Polynomial> {
    basis
        .iter()
        .zip(live)
        .filter(|(_, &l)| l)
        .map(|(b, _)| b.clone())
        .collect()
}

fn spoly(f: &Field, a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (la, lb) = (a.lm().unwrap(), b.lm().unwrap());
    let l = la.lcm(lb);
    let ta = a.mul_term(f, la.div_into(l), f.inv(a.lc().unwrap()));
    let tb = b.mul_term(f, lb.div_into(l), f.inv(b.lc().unwrap()));
    ta.sub(f, &tb)
}

fn insert(
    f: &Field,
    h: Polynomial,
    s: u32,
    basis: &mut Vec<Polynomial>,
    sugar: &mut Vec<u32>,
    live: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
) {
    let _ = f;
    let k = basis.len();
    let lh = h.lm().unwrap();
    // chain criterion on existing pairs
    pairs.retain(|p| {
        !(lh.divides(p.lcm)
            && basis[p.i].lm().unwrap().lcm(lh) != p.lcm
            && basis[p.j].lm().unwrap().lcm(lh) != p.lcm)
    });
    for i in 0..k {
        if !live[i] {
            continue;
        }
        let li = basis[i].lm().unwrap();
        if li.coprime(lh) {
            continue;
        }
        let l = li.lcm(lh);
        let sg = (sugar[i] + l.degree() - li.degree()).max(s + l.degree() - lh.degree());
        pairs.push(Pair { i, j: k, lcm: l, sugar: sg });
    }
    // elements whose leading monomial is now redundant stay for pairing but leave the basis
    for i in 0..k {
        if live[i] && lh.divides(basis[i].lm().unwrap()) {
            live[i] = false;
        }
    }
    basis.push(h);
    sugar.push(s);
    live.push(true);
}

/// Minimal, fully inter-reduced, monic, sorted by increasing leading monomial.
pub fn reduce_basis(f: &Field, gb: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gb.into_iter().filter(|p| !p.is_zero()).collect();
    g.sort_by_key(|p| p.lm());
    let mut minimal: Vec<Polynomial> = vec![];
    for p in g {
        let lp = p.lm().unwrap();
        if !minimal.iter().any(|q| q.lm().unwrap().divides(lp)) {
            minimal.push(p);
        }
    }
    let mut out = vec![];
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let lead = Polynomial::monomial(minimal[i].lm().unwrap(), minimal[i].lc().unwrap());
        let tail = minimal[i].sub(f, &lead);
        let r = lead.add(f, &normal_form(f, &tail, &others));
        out.push(r.monic(f));
    }
    out.sort_by_key(|p| p.lm());
    out
}

/// Whether the ideal of `gb` contains a pure power of every variable.
pub fn contains_variable_powers(gb: &[Polynomial]) -> bool {
    (0..3).all(|v| {
        gb.iter().any(|g| {
            let m = g.lm().unwrap();
            (0..3).all(|w| w == v || m.0[w] == 0)
        })
    })
}
