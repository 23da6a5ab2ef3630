//! Ordinary (commutative) univariate polynomials over F_{q^n}.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Dense polynomial, constant term first, trimmed so the leading coefficient
/// is nonzero. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    coeffs: Vec<FieldElement>,
    ctx: Arc<FieldCtx>,
}

impl FieldPoly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            ctx.ensure_member(c)?;
        }
        trim(&mut coeffs);
        Ok(FieldPoly { coeffs, ctx })
    }

    /// Builds from integer element encodings.
    pub fn from_encodings(ctx: Arc<FieldCtx>, encodings: &[u64]) -> Result<Self> {
        let coeffs = encodings
            .iter()
            .map(|&v| ctx.decode(v))
            .collect::<Result<Vec<_>>>()?;
        FieldPoly::new(ctx, coeffs)
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        FieldPoly {
            coeffs: Vec::new(),
            ctx,
        }
    }

    pub(crate) fn from_raw(ctx: Arc<FieldCtx>, mut coeffs: Vec<FieldElement>) -> Self {
        trim(&mut coeffs);
        FieldPoly { coeffs, ctx }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero when out of range.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.ctx.encode(c)).collect()
    }

    fn same_ctx(&self, other: &FieldPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &FieldPoly) -> Result<FieldPoly> {
        self.same_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(FieldPoly::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn sub(&self, other: &FieldPoly) -> Result<FieldPoly> {
        self.same_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(FieldPoly::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn mul(&self, other: &FieldPoly) -> Result<FieldPoly> {
        self.same_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FieldPoly::zero(self.ctx.clone()));
        }
        let ctx = &self.ctx;
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Ok(FieldPoly::from_raw(ctx.clone(), out))
    }

    pub fn div_rem(&self, divisor: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
        self.same_ctx(divisor)?;
        let ctx = &self.ctx;
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(lead)?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((FieldPoly::zero(ctx.clone()), self.clone()));
        }
        let mut quot = vec![ctx.zero(); rem.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let c = ctx.mul(&rem[dr], &lead_inv);
            let shift = dr - db;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = ctx.sub(&rem[shift + j], &ctx.mul(&c, b));
            }
            quot[shift] = c;
            trim(&mut rem);
        }
        Ok((
            FieldPoly::from_raw(ctx.clone(), quot),
            FieldPoly::from_raw(ctx.clone(), rem),
        ))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> FieldPoly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = self.ctx.inv(lead).expect("leading coefficient is nonzero");
                let coeffs = self.coeffs.iter().map(|c| self.ctx.mul(c, &inv)).collect();
                FieldPoly::from_raw(self.ctx.clone(), coeffs)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FieldPoly) -> Result<FieldPoly> {
        self.same_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| self.ctx.add(&self.ctx.mul(&acc, x), c))
    }
}

fn trim(coeffs: &mut Vec<FieldElement>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}
