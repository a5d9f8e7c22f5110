//! Frobenius-power membership `f_0^q ∈ (f_1^q, ..., f_n^q)R`, one Macaulay matrix per `q`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bundle::cone_ring;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::gradedmod::GradedRing;
use crate::linalg::Subspace;
use crate::polyring::{IdealData, Mono, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FrobeniusResult {
    Found { e: u32 },
    NotFound { e_max: u32 },
}

/// `v * R_s` for `v ∈ R_t`, one vector per standard monomial of degree `s`.
fn multiples(ring: &GradedRing, v: &[Fe], t: i64, s: i64) -> Vec<Vec<Fe>> {
    let mut level: HashMap<Mono, Vec<Fe>> = HashMap::new();
    level.insert(Mono([0, 0, 0]), v.to_vec());
    for d in 1..=s {
        let monos = ring.piece(d).unwrap().monos.clone();
        let mut next = HashMap::with_capacity(monos.len());
        for m in monos {
            let var = (0..3).find(|&i| m.0[i] > 0).unwrap();
            let mut parent = m;
            parent.0[var] -= 1;
            let w = ring.mul_var(var, t + d - 1, &level[&parent]);
            next.insert(m, w);
        }
        level = next;
    }
    let mut out: Vec<(Mono, Vec<Fe>)> = level.into_iter().collect();
    out.sort_by_key(|x| std::cmp::Reverse(x.0));
    out.into_iter().map(|x| x.1).collect()
}

/// Whether `f_0^{p^e}` lies in the ideal of `p^e`-th powers of the generators.
pub fn frobenius_power_member(ideal: &IdealData, f0: &Polynomial, e: u32) -> Result<bool> {
    if e == 0 {
        return Ok(ideal.contains(f0));
    }
    let f = ideal.field();
    let q = f.p()
        .checked_pow(e)
        .filter(|&q| q < u16::MAX as u64 / 4)
        .ok_or_else(|| Error::Undecided(format!("Frobenius power p^{e} too large")))? as i64;
    let ring = cone_ring(ideal.curve());
    let d0 = f0.degree().ok_or(Error::BadCandidate)? as i64;
    let top = q * d0;
    let target = ring.coords(&f0.frobenius_power(f, e), top);
    let mut cols = vec![];
    for g in ideal.gens() {
        let dg = g.degree().unwrap() as i64 * q;
        if dg > top {
            continue;
        }
        let gq = ring.coords(&g.frobenius_power(f, e), dg);
        cols.extend(multiples(&ring, &gq, dg, top - dg));
    }
    let span = Subspace::span(f, ring.dim(top), &cols);
    Ok(span.contains(f, &target))
}

/// Smallest `e ≤ e_max` with `f_0^{p^e} ∈ (f_i^{p^e})`.
pub fn frobenius_member(ideal: &IdealData, f0: &Polynomial, e_max: u32) -> Result<FrobeniusResult> {
    if f0.is_zero() {
        return Ok(FrobeniusResult::Found { e: 0 });
    }
    if !f0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    for e in 0..=e_max {
        if frobenius_power_member(ideal, f0, e)? {
            return Ok(FrobeniusResult::Found { e });
        }
    }
    Ok(FrobeniusResult::NotFound { e_max })
}
