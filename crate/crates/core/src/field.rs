//! Arithmetic in F_{q^n} with q = p^s, realised as a single degree-(s·n)
//! extension of F_p.
//!
//! Elements are power-basis coordinate vectors over F_p. The integer encoding
//! of an element reads those coordinates as little-endian base-p digits, which
//! is the representation used in all text and JSON I/O.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp_poly::{self, mul_mod_p};

/// Enumeration-heavy operations refuse fields larger than this unless the
/// context was built with a different limit.
pub const DEFAULT_SWEEP_LIMIT: u64 = 1 << 48;

/// `p`, `s` and `n` of F_{q^n}, q = p^s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub s: u32,
    pub n: u32,
}

impl FieldParams {
    pub fn new(p: u64, s: u32, n: u32) -> Result<Self> {
        let params = FieldParams { p, s, n };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p > u32::MAX as u64 {
            return Err(Error::InvalidParams(format!(
                "characteristic {} does not fit in 32 bits",
                self.p
            )));
        }
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.s == 0 || self.n == 0 {
            return Err(Error::InvalidParams("s and n must be positive".into()));
        }
        if self.order().is_none() {
            return Err(Error::SizeBudgetExceeded {
                what: "field order p^(s*n)",
                needed: (self.p as f64).powf(self.degree() as f64) as u128,
                limit: u64::MAX as u128,
            });
        }
        Ok(())
    }

    /// Degree of F_{q^n} over F_p.
    pub fn degree(&self) -> usize {
        self.s as usize * self.n as usize
    }

    pub fn q(&self) -> Option<u64> {
        self.p.checked_pow(self.s)
    }

    pub fn order(&self) -> Option<u64> {
        u32::try_from(self.degree())
            .ok()
            .and_then(|d| self.p.checked_pow(d))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// An element of F_{q^n}: `s·n` residues mod p, constant coordinate first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.coeffs)
    }
}

/// Immutable description of F_{p^(s·n)} with its irreducible modulus.
///
/// Also caches the matrices of the Frobenius powers x ↦ x^{q^k},
/// 0 ≤ k < n, so that twisting a coefficient costs one matrix-vector product.
#[derive(Clone)]
pub struct FieldCtx {
    params: FieldParams,
    modulus: Vec<u64>,
    order: u64,
    q: u64,
    sweep_limit: u64,
    // frob[k][j] = coordinates of (t^j)^(q^k)
    frob: Vec<Vec<Vec<u32>>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("params", &self.params)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds the field. With `modulus = None` the first irreducible monic
    /// polynomial of degree `s·n` in ascending encoding order is selected.
    pub fn new(params: FieldParams, modulus: Option<Vec<u64>>) -> Result<Self> {
        params.validate()?;
        let p = params.p;
        let d = params.degree();
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected degree {}, got {} coefficients",
                        d,
                        m.len()
                    )));
                }
                if m[d] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {c} is not reduced mod {p}"
                    )));
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(Error::NotIrreducible { p, coeffs: m });
                }
                m
            }
            None => default_modulus(p, d),
        };
        let order = params.order().expect("validated");
        let q = params.q().expect("q divides the order");
        let mut ctx = FieldCtx {
            params,
            modulus,
            order,
            q,
            sweep_limit: DEFAULT_SWEEP_LIMIT,
            frob: Vec::new(),
        };
        ctx.frob = ctx.frobenius_tables();
        Ok(ctx)
    }

    /// Convenience constructor with the default modulus.
    pub fn with_params(p: u64, s: u32, n: u32) -> Result<Self> {
        FieldCtx::new(FieldParams::new(p, s, n)?, None)
    }

    pub fn with_sweep_limit(mut self, limit: u64) -> Self {
        self.sweep_limit = limit;
        self
    }

    fn frobenius_tables(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.degree();
        let n = self.params.n as usize;
        let identity: Vec<Vec<u32>> = (0..d).map(|j| self.basis(j).coeffs).collect();
        let first: Vec<Vec<u32>> = (0..d)
            .map(|j| self.pow(&self.basis(j), self.q).coeffs)
            .collect();
        let mut tables = vec![identity];
        for k in 1..n {
            let next = if k == 1 {
                first.clone()
            } else {
                tables[k - 1]
                    .iter()
                    .map(|col| apply_linear(&first, col, self.params.p))
                    .collect()
            };
            tables.push(next);
        }
        tables
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.params.n as usize
    }

    /// Degree over F_p, i.e. `s·n`.
    pub fn degree(&self) -> usize {
        self.params.degree()
    }

    /// Number of elements, `p^(s·n)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn sweep_limit(&self) -> u64 {
        self.sweep_limit
    }

    /// Fails with `SizeBudgetExceeded` when a sweep over `count` items is not
    /// allowed by this context.
    pub fn check_sweep(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.sweep_limit as u128 {
            return Err(Error::SizeBudgetExceeded {
                what,
                needed: count,
                limit: self.sweep_limit as u128,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime(1)
    }

    /// Image of the integer `c` under F_p → F_{q^n}.
    pub fn from_prime(&self, c: i64) -> FieldElement {
        let p = self.params.p as i64;
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(p) as u32;
        e
    }

    /// The residue class of t^j (reduced when j ≥ degree).
    pub fn basis(&self, j: usize) -> FieldElement {
        let d = self.degree();
        if j < d {
            let mut e = self.zero();
            e.coeffs[j] = 1;
            e
        } else {
            let mut t = self.zero();
            if d == 1 {
                // t = -c0 in F_p[t]/(t + c0)
                t.coeffs[0] = ((self.params.p - self.modulus[0]) % self.params.p) as u32;
            } else {
                t.coeffs[1] = 1;
            }
            self.pow(&t, j as u64)
        }
    }

    /// The class of the polynomial variable t, i.e. the generator used by the
    /// power basis.
    pub fn generator(&self) -> FieldElement {
        self.basis(1)
    }

    /// Builds an element from coordinates over F_p, validating the range.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::CtxMismatch);
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            if c >= self.params.p {
                return Err(Error::CtxMismatch);
            }
            *slot = c as u32;
        }
        Ok(e)
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.degree() && a.coeffs.iter().all(|&c| (c as u64) < self.params.p)
    }

    pub fn ensure_member(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn encode(&self, a: &FieldElement) -> u64 {
        let p = self.params.p;
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc.wrapping_mul(p).wrapping_add(c as u64))
    }

    pub fn decode(&self, value: u64) -> Result<FieldElement> {
        if value >= self.order {
            return Err(Error::EncodingOutOfRange {
                value,
                order: self.order,
            });
        }
        Ok(self.decode_unchecked(value))
    }

    fn decode_unchecked(&self, mut value: u64) -> FieldElement {
        let p = self.params.p;
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (value % p) as u32;
            value /= p;
        }
        e
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        self.check_sweep("field enumeration", self.order as u128)?;
        Ok((0..self.order).map(move |v| self.decode_unchecked(v)))
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.params.p as u32;
        FieldElement {
            coeffs: (0..self.degree()).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.params.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.params.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u64 + p - y as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.params.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| ((p - x as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.params.p;
        let d = self.degree();
        if d == 1 {
            return FieldElement {
                coeffs: vec![mul_mod_p(a.coeffs[0] as u64, b.coeffs[0] as u64, p) as u32],
            };
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod_p(x as u64, y as u64, p)) % p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                let t = mul_mod_p(c, m, p);
                prod[i - d + j] = (prod[i - d + j] + p - t) % p;
            }
        }
        FieldElement {
            coeffs: prod[..d].iter().map(|&c| c as u32).collect(),
        }
    }

    /// Checked multiplication: both operands must belong to this field.
    pub fn try_mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.ensure_member(a)?;
        self.ensure_member(b)?;
        Ok(self.mul(a, b))
    }

    pub fn scale(&self, c: u64, a: &FieldElement) -> FieldElement {
        let p = self.params.p;
        let c = c % p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| mul_mod_p(x as u64, c, p) as u32)
                .collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by extended Euclid on the coordinate polynomials.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.ensure_member(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let poly: Vec<u64> = a.coeffs.iter().map(|&c| c as u64).collect();
        let inv = fp_poly::inv_mod(&poly, &self.modulus, self.params.p)
            .ok_or_else(|| Error::InternalInconsistency("nonzero element without inverse".into()))?;
        self.element(&inv)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^(q^k)`. Exponents are taken mod n since x^(q^n) = x on F_{q^n}.
    pub fn frobenius_q(&self, a: &FieldElement, k: usize) -> FieldElement {
        let k = k % self.n();
        if k == 0 {
            return a.clone();
        }
        FieldElement {
            coeffs: apply_linear(&self.frob[k], &a.coeffs, self.params.p),
        }
    }

    /// Norm to F_q: a^(1 + q + ... + q^(n-1)).
    pub fn norm(&self, a: &FieldElement) -> FieldElement {
        (0..self.n()).fold(self.one(), |acc, k| self.mul(&acc, &self.frobenius_q(a, k)))
    }

    /// Trace to F_q: a + a^q + ... + a^(q^(n-1)).
    pub fn trace(&self, a: &FieldElement) -> FieldElement {
        (0..self.n()).fold(self.zero(), |acc, k| self.add(&acc, &self.frobenius_q(a, k)))
    }
}

fn apply_linear(columns: &[Vec<u32>], v: &[u32], p: u64) -> Vec<u32> {
    let d = v.len();
    let mut out = vec![0u64; d];
    for (col, &x) in columns.iter().zip(v) {
        if x == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(col) {
            *o = (*o + mul_mod_p(x as u64, c as u64, p)) % p;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// First irreducible monic polynomial of degree `d`, scanning the non-leading
/// coefficients as base-p digits of 0, 1, 2, ...
fn default_modulus(p: u64, d: usize) -> Vec<u64> {
    let mut index = 0u64;
    loop {
        let mut m = Vec::with_capacity(d + 1);
        let mut v = index;
        for _ in 0..d {
            m.push(v % p);
            v /= p;
        }
        m.push(1);
        if fp_poly::is_irreducible(&m, p) {
            return m;
        }
        index += 1;
    }
}
