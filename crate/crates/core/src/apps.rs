//! Linear sets of q-polynomials: point weights, scatteredness, direction
//! counts, and the rank search over F_{q^9}.
//!
//! For f = Σ a_i x^{q^i} put g_y = f − (a_0 − y)x. The point ⟨(1, a_0 − y)⟩
//! of L_f has weight dim ker g_y, which is the first m with H_m(y) ≠ 0 where
//! H_m(y) = |D_m(g_y)|. Every root of H_0 lies in F_{q^n}, so sweeping the
//! field finds all points of positive weight.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::dickson::{self, RankCertificate};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linpoly::LinearizedPoly;

/// Number of points of L_f of each positive weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpectrum {
    pub counts: BTreeMap<usize, u64>,
    /// Weight of ⟨(0, 1)⟩, which never meets U_f = {(x, f(x))} nontrivially.
    pub point_at_infinity_weight: usize,
}

impl WeightSpectrum {
    /// Σ counts[w]·(q^w − 1); equals q^n − 1 for every f.
    pub fn vector_total(&self, q: u64) -> u128 {
        self.counts
            .iter()
            .map(|(&w, &c)| c as u128 * ((q as u128).pow(w as u32) - 1))
            .sum()
    }

    pub fn is_scattered(&self) -> bool {
        self.counts.keys().all(|&w| w == 1)
    }
}

/// A point ⟨(1, slope)⟩ of weight at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteredWitness {
    pub y0: FieldElement,
    pub slope: FieldElement,
    pub weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteredReport {
    pub scattered: bool,
    pub witness: Option<ScatteredWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrdHit {
    pub c: FieldElement,
    pub certificate: RankCertificate,
    pub brute_rank: usize,
}

fn require_stride_one(f: &LinearizedPoly) -> Result<()> {
    if f.stride() != 1 {
        return Err(Error::StrideNotOne(f.stride()));
    }
    Ok(())
}

/// f with its constant coefficient replaced by `y0`, folded to n terms.
fn substitute(f: &LinearizedPoly, y0: &FieldElement) -> LinearizedPoly {
    let mut coeffs = f.folded(f.ctx().n());
    coeffs[0] = y0.clone();
    LinearizedPoly::new(f.ctx().clone(), coeffs, 1).expect("same field")
}

/// H_m(y0).
pub fn h_eval(f: &LinearizedPoly, y0: &FieldElement, m: usize) -> Result<FieldElement> {
    require_stride_one(f)?;
    f.ctx().ensure_member(y0)?;
    dickson::dickson_minor(&substitute(f, y0), m)?.det()
}

/// Weight of ⟨(1, a_0 − y0)⟩: the first m with H_m(y0) ≠ 0.
pub fn h_weight(f: &LinearizedPoly, y0: &FieldElement) -> Result<usize> {
    require_stride_one(f)?;
    f.ctx().ensure_member(y0)?;
    Ok(dickson::rank_via_minor_chain(&substitute(f, y0))?.mu)
}

fn sweep_weights(f: &LinearizedPoly) -> Result<Vec<usize>> {
    require_stride_one(f)?;
    let ctx = f.ctx();
    ctx.check_sweep("H-chain sweep", ctx.order() as u128)?;
    (0..ctx.order())
        .into_par_iter()
        .map(|v| h_weight(f, &ctx.decode(v)?))
        .collect()
}

/// Point weights of L_f from the H-chain, one sweep over F_{q^n}.
pub fn weight_spectrum(f: &LinearizedPoly) -> Result<WeightSpectrum> {
    let mut counts = BTreeMap::new();
    for w in sweep_weights(f)? {
        if w > 0 {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    Ok(WeightSpectrum {
        counts,
        point_at_infinity_weight: 0,
    })
}

/// Groups x ≠ 0 by the slope f(x)/x.
fn slope_classes(f: &LinearizedPoly) -> Result<HashMap<u64, u64>> {
    let ctx = f.ctx();
    ctx.check_sweep("direction sweep", ctx.order() as u128)?;
    let map = f.reduce_mod();
    let slopes: Vec<u64> = (1..ctx.order())
        .into_par_iter()
        .map(|v| {
            let x = ctx.decode(v)?;
            let y = map.eval(&x)?;
            Ok(ctx.encode(&ctx.div(&y, &x)?))
        })
        .collect::<Result<_>>()?;
    let mut classes = HashMap::new();
    for s in slopes {
        *classes.entry(s).or_insert(0u64) += 1;
    }
    Ok(classes)
}

/// Point weights of L_f by enumerating U_f directly.
pub fn weight_spectrum_brute(f: &LinearizedPoly) -> Result<WeightSpectrum> {
    let q = f.ctx().q();
    let mut counts = BTreeMap::new();
    for size in slope_classes(f)?.into_values() {
        // a point of weight w holds q^w − 1 nonzero vectors of U_f
        let mut w = 0usize;
        let mut power = 1u64;
        while power < size + 1 {
            power *= q;
            w += 1;
        }
        if power != size + 1 {
            return Err(Error::InternalInconsistency(format!(
                "slope class of size {size} is not q^w − 1"
            )));
        }
        *counts.entry(w).or_insert(0) += 1;
    }
    Ok(WeightSpectrum {
        counts,
        point_at_infinity_weight: 0,
    })
}

/// |{f(x)/x : x ≠ 0}|.
pub fn direction_count_brute(f: &LinearizedPoly) -> Result<u64> {
    Ok(slope_classes(f)?.len() as u64)
}

/// f is scattered iff H_0 and H_1 have no common root in F_{q^n}. On failure
/// the witness is the common root with the smallest encoding.
pub fn scattered_check(f: &LinearizedPoly) -> Result<ScatteredReport> {
    let ctx = f.ctx();
    let weights = sweep_weights(f)?;
    let witness = match weights.iter().position(|&w| w >= 2) {
        None => None,
        Some(v) => {
            let y0 = ctx.decode(v as u64)?;
            let a0 = f.folded(ctx.n()).swap_remove(0);
            Some(ScatteredWitness {
                slope: ctx.sub(&a0, &y0),
                y0,
                weight: weights[v],
            })
        }
    };
    Ok(ScatteredReport {
        scattered: witness.is_none(),
        witness,
    })
}

/// −x + (1 + c^{−q})x^q + c·x^{q²} − x^{q⁴}.
pub fn mrd_polynomial(ctx: &std::sync::Arc<FieldCtx>, c: &FieldElement) -> Result<LinearizedPoly> {
    let minus_one = ctx.neg(&ctx.one());
    let c_inv_q = ctx.frobenius_q(&ctx.inv(c)?, 1);
    let coeffs = vec![
        minus_one.clone(),
        ctx.add(&ctx.one(), &c_inv_q),
        c.clone(),
        ctx.zero(),
        minus_one,
    ];
    LinearizedPoly::new(ctx.clone(), coeffs, 1)
}

/// All c ≠ 0 in F_{q^9} for which the map above has rank at most 5, i.e.
/// |D_0| = |D_1| = |D_2| = |D_3| = 0. Each hit is confirmed by brute force.
pub fn mrd_search_9(ctx: &std::sync::Arc<FieldCtx>) -> Result<Vec<MrdHit>> {
    if ctx.n() != 9 {
        return Err(Error::InvalidParams(format!(
            "the rank search needs n = 9, got n = {}",
            ctx.n()
        )));
    }
    ctx.check_sweep("rank search", ctx.order() as u128)?;
    let candidates: Vec<(FieldElement, LinearizedPoly)> = (1..ctx.order())
        .into_par_iter()
        .map(|v| {
            let c = ctx.decode(v)?;
            let f = mrd_polynomial(ctx, &c)?;
            let d = dickson::dickson_matrix(&f)?;
            for m in 0..4 {
                if !dickson::leading_minor(&d, m)?.det()?.is_zero() {
                    return Ok(None);
                }
            }
            Ok(Some((c, f)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    candidates
        .into_iter()
        .map(|(c, f)| {
            let certificate = dickson::rank_via_minor_chain(&f)?;
            let brute_rank = f.kernel_brute(false)?.rank;
            if certificate.rank != brute_rank || certificate.mu < 4 {
                return Err(Error::InternalInconsistency(format!(
                    "minor chain gives rank {}, enumeration gives {brute_rank}",
                    certificate.rank
                )));
            }
            Ok(MrdHit {
                c,
                certificate,
                brute_rank,
            })
        })
        .collect()
}
