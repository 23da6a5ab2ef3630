//! Dickson matrices and their minor chains.
//!
//! For f = Σ a_i x^{σ^i} with n coefficients (after folding modulo
//! x^{q^n} − x) the Dickson matrix has entry a_{(c−r) mod n}^{σ^r} at row r,
//! column c. D_m(f) drops the first m columns and the last m rows. The kernel
//! dimension μ of f on F_{q^n} is the first m with |D_m(f)| ≠ 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linpoly::LinearizedPoly;
use crate::matrix::MatrixF;

/// Determinant chain |D_0|, …, |D_μ| witnessing dim ker f = μ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub mu: usize,
    pub rank: usize,
    #[serde(skip)]
    pub det_chain: Vec<FieldElement>,
    /// Set when f is the zero map; the chain then ends with the empty minor.
    pub zero_map: bool,
}

fn require_stride_one(f: &LinearizedPoly) -> Result<()> {
    if f.stride() != 1 {
        return Err(Error::StrideNotOne(f.stride()));
    }
    Ok(())
}

/// D(f) for a plain q-polynomial.
pub fn dickson_matrix(f: &LinearizedPoly) -> Result<MatrixF> {
    require_stride_one(f)?;
    dickson_sigma(f)
}

/// D_σ(f) with σ = q^stride.
pub fn dickson_sigma(f: &LinearizedPoly) -> Result<MatrixF> {
    let ctx = f.ctx();
    let n = ctx.n();
    if crate::linpoly::gcd_u64(f.stride() as u64, n as u64) != 1 {
        return Err(Error::StrideNotCoprime {
            stride: f.stride(),
            n: n as u32,
        });
    }
    let a = f.folded(n);
    Ok(MatrixF::from_fn(ctx.clone(), n, n, |r, c| {
        f.twist(&a[(c + n - r) % n], r)
    }))
}

/// Drops the first `m` columns and the last `m` rows of a square matrix.
pub fn leading_minor(d: &MatrixF, m: usize) -> Result<MatrixF> {
    let n = d.rows();
    if m > n {
        return Err(Error::OutOfRange { index: m, max: n });
    }
    let rows: Vec<usize> = (0..n - m).collect();
    let cols: Vec<usize> = (m..n).collect();
    Ok(d.select(&rows, &cols))
}

/// D_m(f).
pub fn dickson_minor(f: &LinearizedPoly, m: usize) -> Result<MatrixF> {
    leading_minor(&dickson_matrix(f)?, m)
}

/// D_{m,σ}(f).
pub fn dickson_minor_sigma(f: &LinearizedPoly, m: usize) -> Result<MatrixF> {
    leading_minor(&dickson_sigma(f)?, m)
}

/// Scans |D_0|, |D_1|, … of `d` until the first nonzero determinant.
/// Terminates at m = n because the 0×0 minor has determinant 1.
pub fn chain_of(d: &MatrixF) -> Result<RankCertificate> {
    let n = d.rows();
    let mut det_chain = Vec::new();
    for m in 0..=n {
        let det = leading_minor(d, m)?.det()?;
        let nonzero = !det.is_zero();
        det_chain.push(det);
        if nonzero {
            return Ok(RankCertificate {
                mu: m,
                rank: n - m,
                det_chain,
                zero_map: m == n,
            });
        }
    }
    unreachable!("the empty minor has determinant 1")
}

/// Kernel dimension and rank of a q-polynomial from the Dickson minor chain.
pub fn rank_via_minor_chain(f: &LinearizedPoly) -> Result<RankCertificate> {
    chain_of(&dickson_matrix(f)?)
}

/// Same scan over the σ-Dickson matrix.
pub fn rank_via_minor_chain_sigma(f: &LinearizedPoly) -> Result<RankCertificate> {
    chain_of(&dickson_sigma(f)?)
}

/// |D_0(f)|, …, |D_{last}(f)| without early exit.
pub fn minor_dets(f: &LinearizedPoly, last: usize) -> Result<Vec<FieldElement>> {
    let d = dickson_sigma(f)?;
    (0..=last).map(|m| leading_minor(&d, m)?.det()).collect()
}

/// The residues start, start+1, …, start+len−1 modulo n.
pub fn consecutive_run(start: usize, len: usize, n: usize) -> Vec<usize> {
    (0..len).map(|i| (start + i) % n).collect()
}

/// True iff `set` (any order, no duplicates) is a run of consecutive
/// residues modulo `n`. The empty set and the full set qualify.
pub fn is_consecutive_run(set: &[usize], n: usize) -> bool {
    let len = set.len();
    if len > n || set.iter().any(|&i| i >= n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in set {
        if std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    if len == 0 || len == n {
        return true;
    }
    // a proper run has exactly one member whose predecessor is missing
    set.iter().filter(|&&i| !seen[(i + n - 1) % n]).count() == 1
}

/// M_{J,K}(f): D_σ(f) with the rows in `rows` and the columns in `cols`
/// removed. Both must be consecutive runs modulo n of the same size.
pub fn minor_mjk(f: &LinearizedPoly, rows: &[usize], cols: &[usize]) -> Result<MatrixF> {
    let n = f.ctx().n();
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len(), cols.len()));
    }
    for set in [rows, cols] {
        if !is_consecutive_run(set, n) {
            return Err(Error::NotConsecutive(set.to_vec()));
        }
    }
    Ok(dickson_sigma(f)?.remove(rows, cols))
}

/// ĝ = Σ b_{(n−i) mod n}^{σ^i} x^{σ^i}; satisfies D_σ(g)ᵀ = D_σ(ĝ).
pub fn hat(g: &LinearizedPoly) -> LinearizedPoly {
    let ctx = g.ctx();
    let n = ctx.n();
    let b = g.folded(n);
    let coeffs = (0..n).map(|i| g.twist(&b[(n - i) % n], i)).collect();
    LinearizedPoly::new(ctx.clone(), coeffs, g.stride()).expect("same field and stride")
}

/// g(x)^{σ^t} reduced modulo x^{q^n} − x.
pub fn frobenius_shift(g: &LinearizedPoly, t: usize) -> LinearizedPoly {
    let ctx = g.ctx();
    let n = ctx.n();
    let b = g.folded(n);
    let mut out = vec![ctx.zero(); n];
    for (i, bi) in b.iter().enumerate() {
        out[(i + t) % n] = g.twist(bi, t);
    }
    LinearizedPoly::new(ctx.clone(), out, g.stride()).expect("same field and stride")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn field(p: u64, n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::with_params(p, 1, n).unwrap())
    }

    fn lp(ctx: &Arc<FieldCtx>, enc: &[u64], stride: u32) -> LinearizedPoly {
        LinearizedPoly::from_encodings(ctx.clone(), enc, stride).unwrap()
    }

    #[test]
    fn dickson_matrix_examples() {
        let f8 = field(2, 3);
        assert_eq!(
            dickson_matrix(&lp(&f8, &[1], 1)).unwrap(),
            MatrixF::identity(f8.clone(), 3)
        );
        let f4 = field(2, 2);
        let d = dickson_matrix(&lp(&f4, &[1, 1], 1)).unwrap();
        assert_eq!(d.to_encodings(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(
            dickson_matrix(&lp(&f4, &[1], 3)),
            Err(Error::StrideNotOne(3))
        );
    }

    #[test]
    fn dickson_of_scaled_frobenius_is_twisted_cyclic() {
        let f8 = field(2, 3);
        let alpha = f8.decode(6).unwrap();
        let f = LinearizedPoly::monomial(f8.clone(), 1, alpha.clone(), 1).unwrap();
        let d = dickson_matrix(&f).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let expected = if c == (r + 1) % 3 {
                    f8.frobenius_q(&alpha, r)
                } else {
                    f8.zero()
                };
                assert_eq!(d.get(r, c), &expected);
            }
        }
    }

    #[test]
    fn dickson_folds_high_degree_terms() {
        let f8 = field(2, 3);
        // x^{q^3} acts as x on F_8
        let f = lp(&f8, &[0, 0, 0, 1], 1);
        assert_eq!(dickson_matrix(&f).unwrap(), MatrixF::identity(f8, 3));
    }

    #[test]
    fn minor_examples() {
        let f4 = field(2, 2);
        let f = lp(&f4, &[1, 1], 1);
        assert_eq!(dickson_minor(&f, 0).unwrap(), dickson_matrix(&f).unwrap());
        assert_eq!(dickson_minor(&f, 1).unwrap().to_encodings(), vec![vec![1]]);
        assert_eq!(dickson_minor(&f, 2).unwrap().rows(), 0);
        assert_eq!(
            dickson_minor(&f, 3),
            Err(Error::OutOfRange { index: 3, max: 2 })
        );

        let f8 = field(2, 3);
        let g = lp(&f8, &[3, 6, 5], 1);
        let d = dickson_matrix(&g).unwrap();
        assert_eq!(dickson_minor(&g, 1).unwrap(), d.select(&[0, 1], &[1, 2]));
    }

    #[test]
    fn chain_examples() {
        let f8 = field(2, 3);
        let cert = rank_via_minor_chain(&lp(&f8, &[1], 1)).unwrap();
        assert_eq!((cert.mu, cert.rank), (0, 3));
        assert_eq!(cert.det_chain, vec![f8.one()]);

        let cert = rank_via_minor_chain(&lp(&f8, &[1, 1], 1)).unwrap();
        assert_eq!((cert.mu, cert.rank), (1, 2));

        let cert = rank_via_minor_chain(&lp(&f8, &[1, 1, 1], 1)).unwrap();
        assert_eq!((cert.mu, cert.rank), (2, 1));
        assert_eq!(cert.det_chain, vec![f8.zero(), f8.zero(), f8.one()]);
        assert!(!cert.zero_map);

        let zero = LinearizedPoly::zero(f8.clone(), 1).unwrap();
        let cert = rank_via_minor_chain(&zero).unwrap();
        assert_eq!((cert.mu, cert.rank, cert.zero_map), (3, 0, true));
        assert_eq!(cert.det_chain.len(), 4);
    }

    #[test]
    fn sigma_examples() {
        let f32 = field(2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = LinearizedPoly::random(&f32, 5, 1, &mut rng).unwrap();
        assert_eq!(dickson_sigma(&f).unwrap(), dickson_matrix(&f).unwrap());
        assert_eq!(
            dickson_sigma(&lp(&f32, &[1], 2)).unwrap(),
            MatrixF::identity(f32.clone(), 5)
        );
        let g = LinearizedPoly::random(&f32, 5, 2, &mut rng).unwrap();
        assert_eq!(
            dickson_sigma(&g).unwrap().rank(),
            dickson_matrix(&g.expand_plain()).unwrap().rank()
        );
    }

    #[test]
    fn sigma_chain_examples() {
        let f32 = field(2, 5);
        assert_eq!(rank_via_minor_chain_sigma(&lp(&f32, &[1], 2)).unwrap().mu, 0);
        assert_eq!(rank_via_minor_chain_sigma(&lp(&f32, &[1, 1], 2)).unwrap().mu, 1);
        assert_eq!(
            rank_via_minor_chain_sigma(&lp(&f32, &[1, 1, 1, 1, 1], 2)).unwrap().mu,
            4
        );
    }

    #[test]
    fn consecutive_runs() {
        assert!(is_consecutive_run(&[], 5));
        assert!(is_consecutive_run(&[4, 0], 5));
        assert!(is_consecutive_run(&[2, 3, 4], 5));
        assert!(is_consecutive_run(&[0, 1, 2, 3, 4], 5));
        assert!(!is_consecutive_run(&[0, 2], 5));
        assert!(!is_consecutive_run(&[1, 1], 5));
        assert!(!is_consecutive_run(&[5], 5));
        assert_eq!(consecutive_run(4, 2, 5), vec![4, 0]);
    }

    #[test]
    fn mjk_examples() {
        let f32 = field(2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = LinearizedPoly::random(&f32, 5, 2, &mut rng).unwrap();
        assert_eq!(minor_mjk(&f, &[], &[]).unwrap(), dickson_sigma(&f).unwrap());
        assert_eq!(
            minor_mjk(&f, &[3, 4], &[0, 1]).unwrap(),
            dickson_minor_sigma(&f, 2).unwrap()
        );
        let wrapped = minor_mjk(&f, &[4, 0], &[1, 2]).unwrap();
        assert_eq!(wrapped, dickson_sigma(&f).unwrap().select(&[1, 2, 3], &[0, 3, 4]));
        assert_eq!(minor_mjk(&f, &[0], &[1, 2]), Err(Error::SizeMismatch(1, 2)));
        assert_eq!(
            minor_mjk(&f, &[0, 2], &[1, 2]),
            Err(Error::NotConsecutive(vec![0, 2]))
        );
    }

    #[test]
    fn hat_gives_transposed_dickson_matrix() {
        let f32 = field(2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for stride in [1, 2, 3] {
            let g = LinearizedPoly::random(&f32, 5, stride, &mut rng).unwrap();
            assert_eq!(
                dickson_sigma(&g).unwrap().transpose(),
                dickson_sigma(&hat(&g)).unwrap()
            );
        }
    }

    #[test]
    fn frobenius_shift_preserves_rank() {
        let f27 = field(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let g = LinearizedPoly::random(&f27, 2, 2, &mut rng).unwrap();
            let r = g.kernel_brute(false).unwrap().rank;
            for t in 0..4 {
                assert_eq!(frobenius_shift(&g, t).kernel_brute(false).unwrap().rank, r);
            }
        }
    }
}
