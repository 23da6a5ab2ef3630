//! Scalar q-subresultants and their classical counterparts.
//!
//! R_{m,q}(f, g) for f of q-degree k and g of q-degree l is the square matrix
//! of size k+l−2m whose top l−m rows carry the coefficients of f and whose
//! bottom k−m rows carry those of g. In the a-block, row r and column c hold
//! a_{k−c+r} raised to q^{l−m−1−r}; the b-block is the same with the roles of
//! (f, k) and (g, l) swapped. The classical matrix uses the same layout
//! without the Frobenius twist.

use std::sync::Arc;

use serde::Serialize;

use crate::dickson::RankCertificate;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linpoly::LinearizedPoly;
use crate::matrix::MatrixF;
use crate::upoly::FieldPoly;

/// Determinants |R_0|, …, |R_μ| of a subresultant scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubresChain {
    pub mu: usize,
    #[serde(skip)]
    pub det_chain: Vec<FieldElement>,
    pub sizes: Vec<usize>,
}

/// Coefficient index for row `r`, column `c` of a band belonging to a
/// polynomial of degree `deg`; `None` when out of range.
fn band_index(deg: usize, r: usize, c: usize) -> Option<usize> {
    (deg + r).checked_sub(c).filter(|&i| i <= deg)
}

/// Shared builder. `twist(a, e)` raises a coefficient to the e-th power of
/// the relevant Frobenius; the classical version passes the identity.
fn assemble(
    ctx: &Arc<FieldCtx>,
    a: &[FieldElement],
    k: usize,
    b: &[FieldElement],
    l: usize,
    m: usize,
    twist: impl Fn(&FieldElement, usize) -> FieldElement,
) -> MatrixF {
    let size = k + l - 2 * m;
    let top = l - m;
    let zero = ctx.zero();
    let pick = |coeffs: &[FieldElement], i: usize| coeffs.get(i).unwrap_or(&zero).clone();
    MatrixF::from_fn(ctx.clone(), size, size, |row, c| {
        if row < top {
            match band_index(k, row, c) {
                Some(i) => twist(&pick(a, i), l - m - 1 - row),
                None => zero.clone(),
            }
        } else {
            let r = row - top;
            match band_index(l, r, c) {
                Some(i) => twist(&pick(b, i), k - m - 1 - r),
                None => zero.clone(),
            }
        }
    })
}

fn same_ring(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<()> {
    if f.stride() != g.stride() {
        return Err(Error::StrideMismatch(f.stride(), g.stride()));
    }
    if f.ctx() != g.ctx() {
        return Err(Error::CtxMismatch);
    }
    Ok(())
}

fn degrees(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<(usize, usize)> {
    same_ring(f, g)?;
    match (f.degree(), g.degree()) {
        (Some(k), Some(l)) => Ok((k, l)),
        _ => Err(Error::ZeroLeadingCoefficient),
    }
}

/// R_{m,q}(f, g). With a stride other than 1 the twist is by σ instead of q.
pub fn build_subresultant_q(f: &LinearizedPoly, g: &LinearizedPoly, m: usize) -> Result<MatrixF> {
    let (k, l) = degrees(f, g)?;
    if m > k.min(l) {
        return Err(Error::DegreeRange { m, max: k.min(l) });
    }
    Ok(assemble(f.ctx(), f.coeffs(), k, g.coeffs(), l, m, |a, e| {
        f.twist(a, e)
    }))
}

/// True iff `next` equals `current` with its first and last columns and its
/// rows 0 and `l − m` (0-indexed) removed.
pub fn shrink_relation_holds(current: &MatrixF, next: &MatrixF, l: usize, m: usize) -> bool {
    let size = current.rows();
    if size < 2 || !current.is_square() || l - m >= size {
        return false;
    }
    current.remove(&[0, l - m], &[0, size - 1]) == *next
}

/// Checks that R_{m+1,q}(f, g) is the stated submatrix of R_{m,q}(f, g).
pub fn structural_shrink_check(f: &LinearizedPoly, g: &LinearizedPoly, m: usize) -> Result<bool> {
    let (_, l) = degrees(f, g)?;
    let current = build_subresultant_q(f, g, m)?;
    let next = build_subresultant_q(f, g, m + 1)?;
    Ok(shrink_relation_holds(&current, &next, l, m))
}

fn scan(limit: usize, mut build: impl FnMut(usize) -> Result<MatrixF>) -> Result<SubresChain> {
    let mut det_chain = Vec::new();
    let mut sizes = Vec::new();
    for m in 0..=limit {
        let mat = build(m)?;
        sizes.push(mat.rows());
        let det = mat.det()?;
        let nonzero = !det.is_zero();
        det_chain.push(det);
        if nonzero {
            return Ok(SubresChain {
                mu: m,
                det_chain,
                sizes,
            });
        }
    }
    Err(Error::InternalInconsistency(
        "subresultant chain ended without a nonzero determinant".into(),
    ))
}

/// q-degree of gcrd(f, g) from the first nonzero |R_{m,q}(f, g)|.
pub fn gcd_qdeg_via_subres(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<SubresChain> {
    let (k, l) = degrees(f, g)?;
    scan(k.min(l), |m| build_subresultant_q(f, g, m))
}

/// Nullity of R_{m,q}(f, g).
pub fn subres_nullity(f: &LinearizedPoly, g: &LinearizedPoly, m: usize) -> Result<usize> {
    Ok(build_subresultant_q(f, g, m)?.rank_nullity().1)
}

/// R_m(f) := R_{m,q}(f, x^{σ^n} − x) with f read as n coefficients of formal
/// degree n−1 (the top coefficient may vanish).
pub fn build_subresultant_padded(f: &LinearizedPoly, m: usize) -> Result<MatrixF> {
    let ctx = f.ctx();
    let n = ctx.n();
    if m >= n {
        return Err(Error::OutOfRange {
            index: m,
            max: n - 1,
        });
    }
    let a = f.folded(n);
    let mut b = vec![ctx.zero(); n + 1];
    b[0] = ctx.neg(&ctx.one());
    b[n] = ctx.one();
    Ok(assemble(ctx, &a, n - 1, &b, n, m, |x, e| f.twist(x, e)))
}

/// Kernel dimension of f on F_{q^n} from the padded subresultant chain.
/// As with the Dickson chain, m = n is the empty matrix with value 1.
pub fn rank_via_subres_padded(f: &LinearizedPoly) -> Result<RankCertificate> {
    let n = f.ctx().n();
    let mut det_chain = Vec::new();
    for m in 0..n {
        let det = build_subresultant_padded(f, m)?.det()?;
        let nonzero = !det.is_zero();
        det_chain.push(det);
        if nonzero {
            return Ok(RankCertificate {
                mu: m,
                rank: n - m,
                det_chain,
                zero_map: false,
            });
        }
    }
    det_chain.push(f.ctx().one());
    Ok(RankCertificate {
        mu: n,
        rank: 0,
        det_chain,
        zero_map: true,
    })
}

fn poly_degrees(f: &FieldPoly, g: &FieldPoly) -> Result<(usize, usize)> {
    if f.ctx() != g.ctx() {
        return Err(Error::CtxMismatch);
    }
    match (f.degree(), g.degree()) {
        (Some(k), Some(l)) => Ok((k, l)),
        _ => Err(Error::ZeroLeadingCoefficient),
    }
}

/// The classical m-th subresultant matrix of two ordinary polynomials.
pub fn classical_subresultant(f: &FieldPoly, g: &FieldPoly, m: usize) -> Result<MatrixF> {
    let (k, l) = poly_degrees(f, g)?;
    if m > k.min(l) {
        return Err(Error::DegreeRange { m, max: k.min(l) });
    }
    Ok(assemble(f.ctx(), f.coeffs(), k, g.coeffs(), l, m, |a, _| {
        a.clone()
    }))
}

/// Degree of gcd(f, g) from the first nonzero classical subresultant.
pub fn classical_gcd_deg(f: &FieldPoly, g: &FieldPoly) -> Result<usize> {
    let (k, l) = poly_degrees(f, g)?;
    Ok(scan(k.min(l), |m| classical_subresultant(f, g, m))?.mu)
}
