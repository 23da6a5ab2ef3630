//! Seeded invariant suites, exposed through the `selftest` subcommand.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::FieldCtx;
use crate::linpoly::LinearizedPoly;
use crate::{apps, dickson, gen, matrix, subres};

/// Default seed for `selftest` when none is given.
pub const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn trials(self) -> usize {
        match self {
            Level::Quick => 20,
            Level::Full => 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub level: Level,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub suites: Vec<SuiteResult>,
}

type Trial = fn(&mut ChaCha8Rng) -> Result<bool>;

fn field(p: u64, n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::with_params(p, 1, n).expect("small prime field"))
}

fn random_map(ctx: &Arc<FieldCtx>, stride: u32, rng: &mut ChaCha8Rng) -> Result<LinearizedPoly> {
    let n = ctx.n();
    if rng.gen_bool(0.5) {
        LinearizedPoly::random(ctx, n, stride, rng)
    } else {
        let dim = rng.gen_range(0..=n);
        gen::planted_map(ctx, dim, rng.gen_range(1..=n), stride, rng)
    }
}

fn minor_chain(rng: &mut ChaCha8Rng) -> Result<bool> {
    let (p, n) = [(2, 3), (3, 2), (2, 6), (5, 2)][rng.gen_range(0..4)];
    let ctx = field(p, n);
    let f = random_map(&ctx, 1, rng)?;
    let cert = dickson::rank_via_minor_chain(&f)?;
    let brute = f.kernel_brute(false)?;
    Ok(cert.mu == brute.dim && dickson::dickson_matrix(&f)?.rank() == cert.rank)
}

fn sigma_chain(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = field(2, 5);
    let stride = [2, 3][rng.gen_range(0..2)];
    let f = random_map(&ctx, stride, rng)?;
    let cert = dickson::rank_via_minor_chain_sigma(&f)?;
    if cert.mu != f.kernel_brute(false)?.dim {
        return Ok(false);
    }
    let n = ctx.n();
    for m in 0..=cert.mu {
        let reference = dickson::dickson_minor_sigma(&f, m)?.det()?.is_zero();
        for j in 0..n {
            for k in 0..n {
                let rows = dickson::consecutive_run(j, m, n);
                let cols = dickson::consecutive_run(k, m, n);
                if dickson::minor_mjk(&f, &rows, &cols)?.det()?.is_zero() != reference {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn dickson_subres(rng: &mut ChaCha8Rng) -> Result<bool> {
    let (p, n) = [(2, 3), (2, 5), (3, 3), (5, 2)][rng.gen_range(0..4)];
    let ctx = field(p, n);
    let f = random_map(&ctx, 1, rng)?;
    for m in 0..ctx.n() {
        let d = dickson::dickson_minor(&f, m)?.det()?;
        let r = subres::build_subresultant_padded(&f, m)?.det()?;
        if d != r {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subres_gcrd(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = field(2, 4);
    let deg_f = rng.gen_range(0..=4);
    let deg_g = rng.gen_range(0..=4);
    let deg_w = rng.gen_range(0..=deg_f.min(deg_g));
    let (f, g) = gen::common_right_factor(&ctx, deg_f, deg_g, deg_w, 1, rng)?;
    let chain = subres::gcd_qdeg_via_subres(&f, &g)?;
    if Some(chain.mu) != f.gcrd(&g)?.degree() {
        return Ok(false);
    }
    for m in 0..=chain.mu {
        if subres::subres_nullity(&f, &g, m)? != chain.mu - m {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gcrd_gcd(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = field(2, 3);
    let deg_f = rng.gen_range(0..=3);
    let deg_g = rng.gen_range(0..=3);
    let deg_w = rng.gen_range(0..=deg_f.min(deg_g));
    let (f, g) = gen::common_right_factor(&ctx, deg_f, deg_g, deg_w, 1, rng)?;
    Ok(f.gcrd(&g)?.to_ordinary()? == f.ordinary_gcd_oracle(&g)?)
}

fn weights(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = field(2, [3, 4][rng.gen_range(0..2)]);
    let f = random_map(&ctx, 1, rng)?;
    let spectrum = apps::weight_spectrum(&f)?;
    let total = (ctx.order() - 1) as u128;
    Ok(spectrum == apps::weight_spectrum_brute(&f)? && spectrum.vector_total(ctx.q()) == total)
}

fn block_det(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = [field(5, 1), field(2, 3)][rng.gen_range(0..2)].clone();
    let a = rng.gen_range(1..=3);
    let b = rng.gen_range(1..=3);
    let x = gen::random_matrix(&ctx, a, a, rng);
    let y = gen::random_matrix(&ctx, a, b, rng);
    let z = gen::random_matrix(&ctx, b, a, rng);
    let w = gen::random_invertible(&ctx, b, rng);
    let top = crate::MatrixF::hstack(&[&x, &y])?;
    let bottom = crate::MatrixF::hstack(&[&z, &w])?;
    let full = crate::MatrixF::vstack(&[&top, &bottom])?;
    if matrix::schur_block_det(&x, &y, &z, &w)? != full.det()? {
        return Ok(false);
    }
    let k = rng.gen_range(1..=5);
    let l = rng.gen_range(1..=k);
    let a = gen::random_matrix(&ctx, k, l, rng);
    let b = gen::random_matrix(&ctx, k, k - l, rng);
    let c = gen::random_matrix(&ctx, k, l, rng);
    // bordered_block_det checks the sign relation itself
    Ok(matrix::bordered_block_det(&a, &b, &c).is_ok())
}

fn classical(rng: &mut ChaCha8Rng) -> Result<bool> {
    let ctx = field(5, 1);
    let deg_f = rng.gen_range(0..=6);
    let deg_g = rng.gen_range(0..=6);
    let deg_w = rng.gen_range(0..=deg_f.min(deg_g));
    let (f, g) = gen::common_factor_pair(&ctx, deg_f, deg_g, deg_w, rng);
    Ok(Some(subres::classical_gcd_deg(&f, &g)?) == f.gcd(&g)?.degree())
}

const SUITES: [(&str, Trial); 8] = [
    ("minor_chain", minor_chain),
    ("sigma_chain", sigma_chain),
    ("dickson_subres", dickson_subres),
    ("subres_gcrd", subres_gcrd),
    ("gcrd_gcd", gcrd_gcd),
    ("weights", weights),
    ("block_det", block_det),
    ("classical", classical),
];

/// Runs every suite. A trial that returns an error counts as a failure.
pub fn run_selftest(level: Level, seed: u64) -> SelftestReport {
    let suites: Vec<SuiteResult> = SUITES
        .iter()
        .enumerate()
        .map(|(i, &(name, trial))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let passed = (0..level.trials())
                .filter(|_| matches!(trial(&mut rng), Ok(true)))
                .count();
            SuiteResult {
                name,
                passed,
                failed: level.trials() - passed,
            }
        })
        .collect();
    SelftestReport {
        level,
        seed,
        passed: suites.iter().map(|s| s.passed).sum(),
        failed: suites.iter().map(|s| s.failed).sum(),
        suites,
    }
}
