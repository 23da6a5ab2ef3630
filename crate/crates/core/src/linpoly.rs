//! Linearized polynomials Σ a_i x^{σ^i} over F_{q^n}, with σ = q^stride.
//!
//! Under addition and symbolic composition these form the skew polynomial
//! ring F_{q^n}[t; σ] where t·α = α^σ·t. The ring is right Euclidean, which
//! gives right division and the greatest common right divisor (gcrd).
//! Composition never reduces exponents unless asked to; reduction modulo
//! x^{q^n} − x folds index i onto i mod n and yields the induced F_q-linear
//! map of F_{q^n}.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::upoly::FieldPoly;

/// Ordinary-degree cap for the expanded-polynomial oracles.
pub const ORDINARY_DEGREE_LIMIT: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
    stride: u32,
    ctx: Arc<FieldCtx>,
}

/// F_q-dimension of the kernel of a linearized polynomial acting on F_{q^n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub dim: usize,
    pub rank: usize,
    pub kernel_elements: Option<Vec<FieldElement>>,
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl LinearizedPoly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<FieldElement>, stride: u32) -> Result<Self> {
        let n = ctx.params().n;
        if stride == 0 || gcd_u64(stride as u64, n as u64) != 1 {
            return Err(Error::StrideNotCoprime { stride, n });
        }
        for c in &coeffs {
            ctx.ensure_member(c)?;
        }
        trim(&mut coeffs);
        Ok(LinearizedPoly {
            coeffs,
            stride,
            ctx,
        })
    }

    pub fn from_encodings(ctx: Arc<FieldCtx>, encodings: &[u64], stride: u32) -> Result<Self> {
        let coeffs = encodings
            .iter()
            .map(|&v| ctx.decode(v))
            .collect::<Result<Vec<_>>>()?;
        LinearizedPoly::new(ctx, coeffs, stride)
    }

    fn from_raw(ctx: Arc<FieldCtx>, mut coeffs: Vec<FieldElement>, stride: u32) -> Self {
        trim(&mut coeffs);
        LinearizedPoly {
            coeffs,
            stride,
            ctx,
        }
    }

    pub fn zero(ctx: Arc<FieldCtx>, stride: u32) -> Result<Self> {
        LinearizedPoly::new(ctx, Vec::new(), stride)
    }

    /// The identity map x.
    pub fn identity(ctx: Arc<FieldCtx>, stride: u32) -> Result<Self> {
        let one = ctx.one();
        LinearizedPoly::new(ctx, vec![one], stride)
    }

    /// c · x^{σ^i}.
    pub fn monomial(ctx: Arc<FieldCtx>, i: usize, c: FieldElement, stride: u32) -> Result<Self> {
        let mut coeffs = vec![ctx.zero(); i + 1];
        coeffs[i] = c;
        LinearizedPoly::new(ctx, coeffs, stride)
    }

    /// Random polynomial with `len` coefficients (some may be zero).
    pub fn random<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, len: usize, stride: u32, rng: &mut R) -> Result<Self> {
        let coeffs = (0..len).map(|_| ctx.random(rng)).collect();
        LinearizedPoly::new(ctx.clone(), coeffs, stride)
    }

    /// Random polynomial of exact degree `deg`.
    pub fn random_of_degree<R: Rng + ?Sized>(
        ctx: &Arc<FieldCtx>,
        deg: usize,
        stride: u32,
        rng: &mut R,
    ) -> Result<Self> {
        let mut coeffs: Vec<_> = (0..deg).map(|_| ctx.random(rng)).collect();
        coeffs.push(ctx.random_nonzero(rng));
        LinearizedPoly::new(ctx.clone(), coeffs, stride)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn stride(&self) -> u32 {
        self.stride
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^{σ^i}; zero when out of range.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.ctx.encode(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// σ-degree (the q-degree when stride is 1); `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// a^{σ^i}.
    pub fn twist(&self, a: &FieldElement, i: usize) -> FieldElement {
        self.ctx.frobenius_q(a, i * self.stride as usize)
    }

    fn compatible(&self, other: &LinearizedPoly) -> Result<()> {
        if !(Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) {
            return Err(Error::CtxMismatch);
        }
        if self.stride != other.stride {
            return Err(Error::StrideMismatch(self.stride, other.stride));
        }
        Ok(())
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        self.ctx.ensure_member(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &FieldElement) -> FieldElement {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(ctx.zero(), |acc, (i, a)| {
                ctx.add(&acc, &ctx.mul(a, &self.twist(x, i)))
            })
    }

    pub fn add(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.compatible(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(LinearizedPoly::from_raw(self.ctx.clone(), coeffs, self.stride))
    }

    pub fn sub(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.compatible(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(LinearizedPoly::from_raw(self.ctx.clone(), coeffs, self.stride))
    }

    /// c · f, i.e. (c·x) ∘ f.
    pub fn scale(&self, c: &FieldElement) -> LinearizedPoly {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.mul(c, a)).collect();
        LinearizedPoly::from_raw(self.ctx.clone(), coeffs, self.stride)
    }

    /// Symbolic composition self ∘ other:
    /// c_m = Σ_{i+j=m} a_i · b_j^{σ^i}. With `reduce_mod`, the result is
    /// folded modulo x^{q^n} − x.
    pub fn compose(&self, other: &LinearizedPoly, reduce_mod: bool) -> Result<LinearizedPoly> {
        self.compatible(other)?;
        let ctx = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return Ok(LinearizedPoly::from_raw(ctx.clone(), Vec::new(), self.stride));
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = ctx.mul(a, &self.twist(b, i));
                out[i + j] = ctx.add(&out[i + j], &term);
            }
        }
        let composed = LinearizedPoly::from_raw(ctx.clone(), out, self.stride);
        Ok(if reduce_mod {
            composed.reduce_mod()
        } else {
            composed
        })
    }

    /// Folds exponents modulo x^{q^n} − x. The result has at most n
    /// coefficients and defines the same map on F_{q^n}.
    pub fn reduce_mod(&self) -> LinearizedPoly {
        let n = self.ctx.n();
        LinearizedPoly::from_raw(self.ctx.clone(), self.folded(n), self.stride)
    }

    /// Exactly `n` coefficients after folding mod x^{q^n} − x, trailing zeros kept.
    pub fn folded(&self, n: usize) -> Vec<FieldElement> {
        let mut out = vec![self.ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i % n] = self.ctx.add(&out[i % n], a);
        }
        out
    }

    /// The same map as a plain (stride 1) q-polynomial with n coefficients.
    pub fn expand_plain(&self) -> LinearizedPoly {
        let n = self.ctx.n();
        let mut out = vec![self.ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            let k = (i * self.stride as usize) % n;
            out[k] = self.ctx.add(&out[k], a);
        }
        LinearizedPoly::from_raw(self.ctx.clone(), out, 1)
    }

    /// Right division: `self = quotient ∘ divisor + remainder` with
    /// `deg remainder < deg divisor`. No modular reduction is applied.
    pub fn right_divide(&self, divisor: &LinearizedPoly) -> Result<(LinearizedPoly, LinearizedPoly)> {
        self.compatible(divisor)?;
        let ctx = &self.ctx;
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dh = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dh {
            return Ok((
                LinearizedPoly::from_raw(ctx.clone(), Vec::new(), self.stride),
                self.clone(),
            ));
        }
        let mut quot = vec![ctx.zero(); rem.len() - dh];
        while rem.len() > dh {
            let e = rem.len() - 1 - dh;
            // c · b^{σ^e} must cancel the leading coefficient
            let c = ctx.div(&rem[rem.len() - 1], &self.twist(lead, e))?;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = ctx.mul(&c, &self.twist(b, e));
                rem[e + j] = ctx.sub(&rem[e + j], &t);
            }
            quot[e] = c;
            trim(&mut rem);
        }
        Ok((
            LinearizedPoly::from_raw(ctx.clone(), quot, self.stride),
            LinearizedPoly::from_raw(ctx.clone(), rem, self.stride),
        ))
    }

    pub fn monic(&self) -> LinearizedPoly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = self.ctx.inv(lead).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common right divisor via the right Euclidean algorithm.
    pub fn gcrd(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.compatible(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.right_divide(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    /// The underlying sparse ordinary polynomial Σ a_i x^{σ^i}.
    pub fn to_ordinary(&self) -> Result<FieldPoly> {
        let ctx = &self.ctx;
        let Some(deg) = self.degree() else {
            return Ok(FieldPoly::zero(ctx.clone()));
        };
        let sigma = (ctx.q() as u128).pow(self.stride);
        let top = sigma.checked_pow(deg as u32).unwrap_or(u128::MAX);
        if top > ORDINARY_DEGREE_LIMIT {
            return Err(Error::SizeBudgetExceeded {
                what: "ordinary degree of expanded linearized polynomial",
                needed: top,
                limit: ORDINARY_DEGREE_LIMIT,
            });
        }
        let mut dense = vec![ctx.zero(); top as usize + 1];
        let mut exp = 1usize;
        for a in &self.coeffs {
            dense[exp] = a.clone();
            exp *= sigma as usize;
        }
        Ok(FieldPoly::from_raw(ctx.clone(), dense))
    }

    /// Monic ordinary gcd of the expanded polynomials. Oracle only.
    pub fn ordinary_gcd_oracle(&self, other: &LinearizedPoly) -> Result<FieldPoly> {
        self.compatible(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        self.to_ordinary()?.gcd(&other.to_ordinary()?)
    }

    /// Kernel of the induced map on F_{q^n} by exhaustive evaluation.
    pub fn kernel_brute(&self, materialize: bool) -> Result<KernelReport> {
        let ctx = &self.ctx;
        ctx.check_sweep("kernel enumeration", ctx.order() as u128)?;
        let map = self.reduce_mod();
        let order = ctx.order();
        let zeros: Vec<u64> = (0..order)
            .into_par_iter()
            .filter(|&v| map.eval_unchecked(&ctx.decode(v).expect("in range")).is_zero())
            .collect();
        let count = zeros.len() as u64;
        let q = ctx.q();
        let mut dim = 0usize;
        let mut power = 1u64;
        while power < count {
            power *= q;
            dim += 1;
        }
        if power != count {
            return Err(Error::InternalInconsistency(format!(
                "kernel has {count} elements, not a power of q = {q}"
            )));
        }
        let n = ctx.n();
        Ok(KernelReport {
            dim,
            rank: n - dim,
            kernel_elements: materialize.then(|| {
                zeros
                    .into_iter()
                    .map(|v| ctx.decode(v).expect("in range"))
                    .collect()
            }),
        })
    }
}

fn trim(coeffs: &mut Vec<FieldElement>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}
