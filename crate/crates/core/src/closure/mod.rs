//! Tight closure membership, closure ideals and slope thresholds.
//!
//! Over the cone of a smooth cubic in characteristic `p`, tight closure equals
//! plus closure for homogeneous primary ideals, so the same verdict applies to both.

pub mod frobenius;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundle::{
    component_class_vanishes, cone_ring, decompose_bundle, forcing_data, formula_degree, syzygy_bundle,
    Decomposition, Pairing,
};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{Matrix, Subspace};
use crate::polyring::{IdealData, Polynomial};

pub use frobenius::{frobenius_member, frobenius_power_member, FrobeniusResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub rank: i64,
    pub degree: i64,
    pub class_component_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub verdict: Verdict,
    pub in_ideal: bool,
    /// Twist `m = deg f_0`.
    pub degree: i64,
    pub summands: Vec<SummandReport>,
    pub formula_degree: i64,
    /// Degree of the splitting field over the base field.
    pub splitting_degree: usize,
    /// Tight closure and plus closure agree (graded, characteristic `p`).
    pub plus_closure_equal: bool,
}

impl ClosureCertificate {
    /// Member iff no negative summand carries a nonzero class component.
    pub fn criterion(summands: &[SummandReport]) -> Verdict {
        if summands.iter().any(|s| s.degree < 0 && !s.class_component_vanishes) {
            Verdict::NonMember
        } else {
            Verdict::Member
        }
    }
}

pub fn tight_closure_member(ideal: &IdealData, f0: &Polynomial) -> Result<ClosureCertificate> {
    if f0.is_zero() {
        return Err(Error::BadCandidate);
    }
    if !f0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let m = f0.degree().unwrap() as i64;
    let in_ideal = ideal.contains(f0);
    if m == 0 {
        // a unit never lies in the closure of a proper ideal
        return Ok(ClosureCertificate {
            verdict: Verdict::NonMember,
            in_ideal,
            degree: 0,
            summands: vec![],
            formula_degree: formula_degree(ideal, 0),
            splitting_degree: 1,
            plus_closure_equal: true,
        });
    }
    let dec = decompose_bundle(&syzygy_bundle(ideal, m)?)?;
    let fd = forcing_data(&dec, f0)?;
    let summands: Vec<SummandReport> = dec
        .summands
        .iter()
        .map(|s| SummandReport {
            rank: s.rank,
            degree: s.degree,
            class_component_vanishes: component_class_vanishes(&fd, &dec, s),
        })
        .collect();
    if in_ideal && summands.iter().any(|s| !s.class_component_vanishes) {
        return Err(Error::Inconsistent("class of an ideal element does not vanish".into()));
    }
    Ok(ClosureCertificate {
        verdict: ClosureCertificate::criterion(&summands),
        in_ideal,
        degree: m,
        summands,
        formula_degree: formula_degree(ideal, m),
        splitting_degree: dec.extension_degree(),
        plus_closure_equal: true,
    })
}

/// Slopes of the dual `ℱ(0)` of `ℛ(0)` and the semistable threshold `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub mu_min: Rational64,
    pub mu_max: Rational64,
    pub k: Rational64,
    pub semistable: bool,
}

pub fn slope_and_threshold(ideal: &IdealData) -> Result<SlopeReport> {
    let dec = decompose_bundle(&syzygy_bundle(ideal, 0)?)?;
    let mus: Vec<Rational64> = dec.summands.iter().map(|s| Rational64::new(-s.degree, s.rank)).collect();
    let mu_min = *mus.iter().min().unwrap();
    let mu_max = *mus.iter().max().unwrap();
    let sum: i64 = ideal.degrees().iter().map(|&d| d as i64).sum();
    Ok(SlopeReport { mu_min, mu_max, k: Rational64::new(sum, ideal.n() as i64 - 1), semistable: mu_min == mu_max })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `3m < μ_min`: the closure agrees with the ideal.
    BelowMin,
    /// Decided summand by summand.
    Criterion,
    /// `3m ≥ μ_max`: everything of degree `m` is in the closure.
    AboveMax,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePiece {
    pub degree: i64,
    pub regime: Regime,
    pub ring_dim: usize,
    pub ideal_dim: usize,
    /// The closure in degree `m`, in standard-monomial coordinates of `R_m`.
    pub closure: Subspace,
}

#[derive(Clone, Debug)]
pub struct ClosureIdeal {
    pub generators: Vec<Polynomial>,
    pub slopes: SlopeReport,
    pub pieces: Vec<DegreePiece>,
    /// First degree from which the closure is all of `R_m`.
    pub full_from: i64,
}

/// `I_m` inside `R_m`.
pub fn ideal_piece(ideal: &IdealData, m: i64) -> Subspace {
    let ring = cone_ring(ideal.curve());
    let f = ring.field();
    let mut cols = vec![];
    for g in ideal.gens() {
        let dg = g.degree().unwrap() as i64;
        let cg = ring.coords(g, dg);
        if let Some(p) = ring.piece(m - dg) {
            for &mm in &p.monos {
                cols.push(ring.mul_mono(mm, dg, &cg));
            }
        }
    }
    Subspace::span(f, ring.dim(m), &cols)
}

/// Degree-`m` piece of the closure from the class components on negative summands.
pub fn closure_piece_by_criterion(ideal: &IdealData, m: i64) -> Result<Subspace> {
    let dec = decompose_bundle(&syzygy_bundle(ideal, m)?)?;
    let piece = criterion_kernel(&dec)?;
    let base = ideal.field();
    let down = match &dec.embedding {
        None => piece,
        Some(e) => {
            let mut rows = vec![];
            for r in piece.basis() {
                let row: Option<Vec<Fe>> = r.iter().map(|&c| e.preimage(c)).collect();
                rows.push(row.ok_or_else(|| Error::Inconsistent("closure piece not defined over the base field".into()))?);
            }
            Subspace::span(base, piece.ambient, &rows)
        }
    };
    if !ideal_piece(ideal, m).is_subspace_of(base, &down) {
        return Err(Error::Inconsistent(format!("closure piece in degree {m} misses the ideal")));
    }
    Ok(down)
}

fn criterion_kernel(dec: &Decomposition) -> Result<Subspace> {
    let ring = dec.bundle.ring();
    let f = ring.field();
    let n = ring.dim(dec.bundle.twist());
    let negative: Vec<usize> = (0..dec.summands.len()).filter(|&j| dec.summands[j].degree < 0).collect();
    if negative.is_empty() {
        return Ok(Subspace::full(n));
    }
    let pairing = Pairing::new(dec)?;
    let mut rows = vec![];
    for j in negative {
        rows.extend(pairing.functionals(dec, j));
    }
    Ok(Subspace::span(f, n, &Matrix::from_rows(n, &rows).kernel(f)))
}

fn ceil_div3(r: Rational64) -> i64 {
    (r / 3).ceil().to_integer()
}

pub fn tight_closure_ideal(ideal: &IdealData) -> Result<ClosureIdeal> {
    let slopes = slope_and_threshold(ideal)?;
    let ring = cone_ring(ideal.curve());
    let f = ring.field();
    let full_from = ceil_div3(slopes.mu_max).max(1);
    let top = full_from.max(ideal.degrees().iter().copied().max().unwrap_or(1) as i64);
    let pieces: Vec<DegreePiece> = (1..=top)
        .into_par_iter()
        .map(|m| -> Result<DegreePiece> {
            let three_m = Rational64::from_integer(3 * m);
            let ideal_sub = ideal_piece(ideal, m);
            let (regime, closure) = if three_m < slopes.mu_min {
                (Regime::BelowMin, ideal_sub.clone())
            } else if three_m >= slopes.mu_max {
                (Regime::AboveMax, Subspace::full(ring.dim(m)))
            } else {
                let c = closure_piece_by_criterion(ideal, m)
                    .map_err(|e| annotate(e, m))?;
                (Regime::Criterion, c)
            };
            Ok(DegreePiece { degree: m, regime, ring_dim: ring.dim(m), ideal_dim: ideal_sub.dim(), closure })
        })
        .collect::<Result<_>>()?;

    let mut generators = vec![];
    let mut prev: Option<&Subspace> = None;
    for piece in &pieces {
        let m = piece.degree;
        let mut span = Subspace::zero(ring.dim(m));
        if let Some(p) = prev {
            for v in p.basis() {
                for var in 0..3 {
                    span.insert(f, &ring.mul_var(var, m - 1, v));
                }
            }
        }
        let mut candidates: Vec<Vec<Fe>> = ideal
            .gens()
            .iter()
            .filter(|g| g.degree() == Some(m as u32))
            .map(|g| ring.coords(g, m))
            .collect();
        candidates.extend(piece.closure.basis().iter().cloned());
        for c in candidates {
            if piece.closure.contains(f, &c) && span.insert(f, &c) {
                generators.push(ring.poly(&c, m).monic(f));
            }
        }
        prev = Some(&piece.closure);
    }
    Ok(ClosureIdeal { generators, slopes, pieces, full_from })
}

fn annotate(e: Error, m: i64) -> Error {
    match e {
        Error::Undecided(s) => Error::Undecided(format!("degree {m}: {s}")),
        other => other,
    }
}

#[cfg(test)]
mod tests;
