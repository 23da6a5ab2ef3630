//! Seeded generators for test inputs with planted structure.
//!
//! Uniformly random q-polynomials are almost always invertible and almost
//! always coprime, so these helpers build inputs whose kernel or common
//! right factor is chosen in advance.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::field::FieldCtx;
use crate::linpoly::LinearizedPoly;
use crate::matrix::MatrixF;
use crate::upoly::FieldPoly;

/// A σ-polynomial of σ-degree `dim` whose kernel on F_{q^n} has F_q-dimension
/// exactly `dim`. Needs dim ≤ n.
pub fn planted_kernel<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    dim: usize,
    stride: u32,
    rng: &mut R,
) -> Result<LinearizedPoly> {
    let mut w = LinearizedPoly::identity(ctx.clone(), stride)?;
    for _ in 0..dim {
        let v = loop {
            let v = w.eval(&ctx.random(rng))?;
            if !v.is_zero() {
                break v;
            }
        };
        // x^σ − v^{σ−1}x vanishes at v
        let v_sigma = w.twist(&v, 1);
        let c = ctx.div(&v_sigma, &v)?;
        let step = LinearizedPoly::new(ctx.clone(), vec![ctx.neg(&c), ctx.one()], stride)?;
        w = step.compose(&w, false)?;
    }
    Ok(w)
}

/// u∘w reduced modulo x^{σ^n} − x, where w has a planted kernel of dimension
/// `dim` and u has `extra` random coefficients. The kernel has dimension at
/// least `dim`.
pub fn planted_map<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    dim: usize,
    extra: usize,
    stride: u32,
    rng: &mut R,
) -> Result<LinearizedPoly> {
    let w = planted_kernel(ctx, dim, stride, rng)?;
    let u = LinearizedPoly::random(ctx, extra.max(1), stride, rng)?;
    u.compose(&w, true)
}

/// (u∘w, v∘w) without reduction; deg u = deg_f − deg_w, deg v = deg_g − deg_w.
pub fn common_right_factor<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    deg_f: usize,
    deg_g: usize,
    deg_w: usize,
    stride: u32,
    rng: &mut R,
) -> Result<(LinearizedPoly, LinearizedPoly)> {
    let w = LinearizedPoly::random_of_degree(ctx, deg_w, stride, rng)?;
    let u = LinearizedPoly::random_of_degree(ctx, deg_f - deg_w, stride, rng)?;
    let v = LinearizedPoly::random_of_degree(ctx, deg_g - deg_w, stride, rng)?;
    Ok((u.compose(&w, false)?, v.compose(&w, false)?))
}

pub fn random_poly_of_degree<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    deg: usize,
    rng: &mut R,
) -> FieldPoly {
    let mut coeffs: Vec<_> = (0..deg).map(|_| ctx.random(rng)).collect();
    coeffs.push(ctx.random_nonzero(rng));
    FieldPoly::new(ctx.clone(), coeffs).expect("elements of ctx")
}

/// (u·w, v·w) for ordinary polynomials.
pub fn common_factor_pair<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    deg_f: usize,
    deg_g: usize,
    deg_w: usize,
    rng: &mut R,
) -> (FieldPoly, FieldPoly) {
    let w = random_poly_of_degree(ctx, deg_w, rng);
    let u = random_poly_of_degree(ctx, deg_f - deg_w, rng);
    let v = random_poly_of_degree(ctx, deg_g - deg_w, rng);
    (u.mul(&w).expect("same ctx"), v.mul(&w).expect("same ctx"))
}

pub fn random_matrix<R: Rng + ?Sized>(
    ctx: &Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> MatrixF {
    MatrixF::from_fn(ctx.clone(), rows, cols, |_, _| ctx.random(rng))
}

pub fn random_invertible<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, size: usize, rng: &mut R) -> MatrixF {
    loop {
        let m = random_matrix(ctx, size, size, rng);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}
