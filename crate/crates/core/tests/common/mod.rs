//! Independent oracles for integration tests. These use only field
//! arithmetic (`add`, `mul`, `pow`) and never the library's Frobenius
//! tables, Dickson builders or elimination.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use linrank::{FieldCtx, FieldElement, LinearizedPoly, MatrixF};

pub fn field(p: u64, n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::with_params(p, 1, n).unwrap())
}

/// a^{q^e} by repeated exponentiation, e taken modulo n.
pub fn frob(ctx: &FieldCtx, a: &FieldElement, e: usize) -> FieldElement {
    let mut out = a.clone();
    for _ in 0..e % ctx.n() {
        out = ctx.pow(&out, ctx.q());
    }
    out
}

pub fn eval(f: &LinearizedPoly, x: &FieldElement) -> FieldElement {
    let ctx = f.ctx();
    let stride = f.stride() as usize;
    f.coeffs().iter().enumerate().fold(ctx.zero(), |acc, (i, a)| {
        ctx.add(&acc, &ctx.mul(a, &frob(ctx, x, i * stride)))
    })
}

fn log_q(q: u64, count: u64) -> usize {
    let mut dim = 0;
    let mut power = 1;
    while power < count {
        power *= q;
        dim += 1;
    }
    assert_eq!(power, count, "{count} is not a power of {q}");
    dim
}

pub fn kernel_dim(f: &LinearizedPoly) -> usize {
    let ctx = f.ctx();
    let zeros = (0..ctx.order())
        .filter(|&v| eval(f, &ctx.decode(v).unwrap()).is_zero())
        .count() as u64;
    log_q(ctx.q(), zeros)
}

/// Point weights of L_f: group x ≠ 0 by f(x)/x; a class of size q^w − 1 is a
/// point of weight w.
pub fn point_weights(f: &LinearizedPoly) -> BTreeMap<usize, u64> {
    let ctx = f.ctx();
    let mut classes: HashMap<u64, u64> = HashMap::new();
    for v in 1..ctx.order() {
        let x = ctx.decode(v).unwrap();
        let slope = ctx.mul(&eval(f, &x), &ctx.inv(&x).unwrap());
        *classes.entry(ctx.encode(&slope)).or_default() += 1;
    }
    let mut counts = BTreeMap::new();
    for size in classes.into_values() {
        *counts.entry(log_q(ctx.q(), size + 1)).or_default() += 1;
    }
    counts
}

/// Determinant by the permutation expansion.
pub fn leibniz_det(m: &MatrixF) -> FieldElement {
    let ctx = m.ctx();
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ctx.zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term = (0..n).fold(ctx.one(), |acc, r| ctx.mul(&acc, m.get(r, p[r])));
        total = if inversions % 2 == 0 {
            ctx.add(&total, &term)
        } else {
            ctx.sub(&total, &term)
        };
    });
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Degree of gcd over F_p of two integer coefficient vectors (constant first).
pub fn euclid_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Option<usize> {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    fn inv(a: u64, p: u64) -> u64 {
        (1..p).find(|x| a * x % p == 1).unwrap()
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lead % p;
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p * p - c * bj % p) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

/// D_σ(f) from its defining entry formula.
pub fn dickson_by_formula(f: &LinearizedPoly) -> MatrixF {
    let ctx = f.ctx();
    let n = ctx.n();
    let stride = f.stride() as usize;
    let mut a = vec![ctx.zero(); n];
    for (i, c) in f.coeffs().iter().enumerate() {
        a[i % n] = ctx.add(&a[i % n], c);
    }
    MatrixF::from_fn(ctx.clone(), n, n, |r, c| frob(ctx, &a[(c + n - r) % n], r * stride))
}
