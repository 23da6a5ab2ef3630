//! Argument parsing and dispatch for the `linrank` binary.
//!
//! `parse_request` turns argv into a validated [`Request`]; `run` executes
//! it and returns the output document and exit code. Output is JSON unless
//! `--pretty` is given, and is identical across runs unless `--timings` is
//! given.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linrank::format::{parse_field_spec, parse_poly_spec};
use linrank::selftest::{self, Level};
use linrank::{apps, dickson, subres, Error, FieldCtx, FieldElement, FieldParams, LinearizedPoly};

mod pretty;

/// Environment variable overriding the default sweep budget.
pub const BUDGET_ENV: &str = "LINRANK_SWEEP_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "linrank", version, about = "Rank and kernel dimension of linearized polynomials over finite fields")]
struct Cli {
    /// Largest number of field elements a sweep may visit
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Render tables instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    /// Include wall-clock time in the output
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Field spec, e.g. "p=2 s=1 n=3"
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug)]
struct OnePoly {
    #[command(flatten)]
    field: FieldArg,
    /// Polynomial spec, e.g. "f=[0,1,1] stride=1"
    #[arg(long)]
    poly: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Verify {
    Brute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Show the field and its modulus
    Field(FieldArg),
    /// Rank certificate from the Dickson minor chain
    Rank {
        #[command(flatten)]
        args: OnePoly,
        /// Cross-check against an exhaustive kernel count
        #[arg(long, value_enum)]
        verify: Option<Verify>,
    },
    /// Kernel by exhaustive evaluation
    Kernel {
        #[command(flatten)]
        args: OnePoly,
        /// List the kernel elements
        #[arg(long)]
        elements: bool,
    },
    /// Monic greatest common right divisor of two polynomials
    Gcrd(OnePoly),
    /// Subresultant chain of two polynomials, or of one against x^(q^n) - x
    SubresChain(OnePoly),
    /// All Dickson minor determinants |D_0|, ..., |D_n|
    DicksonChain {
        #[command(flatten)]
        args: OnePoly,
        /// Only compute |D_m|
        #[arg(long)]
        m: Option<usize>,
    },
    /// Whether f is scattered, with a witness if not
    Scattered(OnePoly),
    /// Weight spectrum of the linear set of f
    Weights(OnePoly),
    /// Rank search for -x + (1+c^-q)x^q + c x^(q^2) - x^(q^4) over F_(q^9)
    MrdSearch {
        /// Prime power q
        #[arg(long)]
        q: u64,
    },
    /// Run the invariant suites
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Resolved subcommand with its field and polynomials built.
#[derive(Debug)]
pub enum Command {
    Field(Arc<FieldCtx>),
    Rank { f: LinearizedPoly, verify: bool },
    Kernel { f: LinearizedPoly, elements: bool },
    Gcrd { f: LinearizedPoly, g: LinearizedPoly },
    SubresPair { f: LinearizedPoly, g: LinearizedPoly },
    SubresPadded { f: LinearizedPoly },
    DicksonChain { f: LinearizedPoly, m: Option<usize> },
    Scattered { f: LinearizedPoly },
    Weights { f: LinearizedPoly },
    MrdSearch { ctx: Arc<FieldCtx> },
    Selftest { level: Level, seed: u64 },
}

#[derive(Debug)]
pub struct Options {
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub pretty: bool,
    pub timings: bool,
}

#[derive(Debug)]
pub struct Request {
    pub command: Command,
    pub options: Options,
}

/// A failed request. `exit` is 2 for parse errors, 1 otherwise, and 0 for
/// `--help` and `--version`, whose text is carried in `message`.
#[derive(Debug, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub position: Option<usize>,
    pub token: Option<String>,
    pub exit: i32,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            kind: "ParseError".into(),
            message: message.into(),
            position: None,
            token: None,
            exit: 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({ "kind": self.kind, "message": self.message });
        if let Some(p) = self.position {
            err["position"] = json!(p);
        }
        if let Some(t) = &self.token {
            err["token"] = json!(t);
        }
        json!({ "error": err })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse {
                position,
                token,
                message,
            } => CliError {
                kind: "ParseError".into(),
                message,
                position: Some(position),
                token: Some(token),
                exit: 2,
            },
            other => CliError {
                kind: other.kind().into(),
                message: other.to_string(),
                position: None,
                token: None,
                exit: 1,
            },
        }
    }
}

/// Sweep budget: `--budget`, then the environment, then the library default.
fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("{BUDGET_ENV} is not an integer: {v:?}"))),
        Err(_) => Ok(linrank::field::DEFAULT_SWEEP_LIMIT),
    }
}

fn build_field(arg: &FieldArg, budget: u64) -> Result<Arc<FieldCtx>, CliError> {
    let src = arg
        .field
        .as_deref()
        .ok_or_else(|| CliError::parse("missing --field"))?;
    let ctx = parse_field_spec(src)?.build()?;
    Ok(Arc::new(ctx.with_sweep_limit(budget)))
}

fn build_polys(args: &OnePoly, budget: u64, min: usize, max: usize) -> Result<Vec<LinearizedPoly>, CliError> {
    let count = args.poly.len();
    if count < min || count > max {
        let wanted = if min == max {
            format!("{min}")
        } else {
            format!("{min} or {max}")
        };
        return Err(CliError::parse(format!("expected {wanted} --poly, got {count}")));
    }
    // parse every spec before building the field so syntax errors come first
    let specs = args
        .poly
        .iter()
        .map(|s| parse_poly_spec(s))
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = build_field(&args.field, budget)?;
    Ok(specs
        .iter()
        .map(|s| s.build(&ctx))
        .collect::<Result<Vec<_>, _>>()?)
}

fn one(args: &OnePoly, budget: u64) -> Result<LinearizedPoly, CliError> {
    Ok(build_polys(args, budget, 1, 1)?.remove(0))
}

fn two(args: &OnePoly, budget: u64) -> Result<(LinearizedPoly, LinearizedPoly), CliError> {
    let mut v = build_polys(args, budget, 2, 2)?;
    let g = v.pop().expect("two");
    Ok((v.pop().expect("two"), g))
}

/// Splits a prime power q into (p, s).
fn prime_power(q: u64) -> Result<(u64, u32), CliError> {
    let not_pp = || CliError {
        kind: "InvalidParams".into(),
        message: format!("q = {q} is not a prime power"),
        position: None,
        token: None,
        exit: 1,
    };
    if q < 2 {
        return Err(not_pp());
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let (mut rest, mut s) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    if rest != 1 {
        return Err(not_pp());
    }
    Ok((p, s))
}

/// Parses and validates argv (including the program name).
pub fn parse_request<I, T>(argv: I) -> Result<Request, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let exit = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
            _ => 2,
        };
        CliError {
            kind: if exit == 0 { "Help" } else { "ParseError" }.into(),
            message: e.render().to_string(),
            position: None,
            token: None,
            exit,
        }
    })?;
    let budget = resolve_budget(cli.budget)?;
    if cli.threads == Some(0) {
        return Err(CliError::parse("--threads must be positive"));
    }
    let command = match &cli.command {
        Cmd::Field(arg) => Command::Field(build_field(arg, budget)?),
        Cmd::Rank { args, verify } => Command::Rank {
            f: one(args, budget)?,
            verify: verify.is_some(),
        },
        Cmd::Kernel { args, elements } => Command::Kernel {
            f: one(args, budget)?,
            elements: *elements,
        },
        Cmd::Gcrd(args) => {
            let (f, g) = two(args, budget)?;
            Command::Gcrd { f, g }
        }
        Cmd::SubresChain(args) => {
            let mut polys = build_polys(args, budget, 1, 2)?;
            if polys.len() == 2 {
                let g = polys.pop().expect("two");
                Command::SubresPair {
                    f: polys.pop().expect("two"),
                    g,
                }
            } else {
                Command::SubresPadded {
                    f: polys.pop().expect("one"),
                }
            }
        }
        Cmd::DicksonChain { args, m } => Command::DicksonChain {
            f: one(args, budget)?,
            m: *m,
        },
        Cmd::Scattered(args) => Command::Scattered {
            f: one(args, budget)?,
        },
        Cmd::Weights(args) => Command::Weights {
            f: one(args, budget)?,
        },
        Cmd::MrdSearch { q } => {
            let (p, s) = prime_power(*q)?;
            let ctx = FieldCtx::new(FieldParams::new(p, s, 9)?, None)?;
            Command::MrdSearch {
                ctx: Arc::new(ctx.with_sweep_limit(budget)),
            }
        }
        Cmd::Selftest { level, seed } => Command::Selftest {
            level: match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            },
            seed: *seed,
        },
    };
    Ok(Request {
        command,
        options: Options {
            threads: cli.threads,
            output: cli.output,
            pretty: cli.pretty,
            timings: cli.timings,
        },
    })
}

fn enc(ctx: &FieldCtx, a: &FieldElement) -> String {
    ctx.encode(a).to_string()
}

fn encs(ctx: &FieldCtx, v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|a| enc(ctx, a)).collect()
}

fn certificate_json(ctx: &FieldCtx, cert: &linrank::RankCertificate) -> Value {
    json!({
        "mu": cert.mu,
        "rank": cert.rank,
        "det_chain": encs(ctx, &cert.det_chain),
        "zero_map": cert.zero_map,
    })
}

fn field_json(ctx: &FieldCtx) -> Value {
    json!({
        "p": ctx.p(),
        "s": ctx.params().s,
        "n": ctx.n(),
        "q": ctx.q(),
        "order": ctx.order(),
        "modulus": ctx.modulus(),
    })
}

fn execute(command: &Command) -> Result<(Value, bool), CliError> {
    let ok = |v| Ok((v, true));
    match command {
        Command::Field(ctx) => ok(field_json(ctx)),
        Command::Rank { f, verify } => {
            let ctx = f.ctx();
            let cert = dickson::rank_via_minor_chain_sigma(f)?;
            let mut out = certificate_json(ctx, &cert);
            out["stride"] = json!(f.stride());
            if *verify {
                let brute = f.kernel_brute(false)?;
                out["verify"] = json!({
                    "method": "brute",
                    "mu": brute.dim,
                    "agrees": brute.dim == cert.mu,
                });
                return Ok((out, brute.dim == cert.mu));
            }
            ok(out)
        }
        Command::Kernel { f, elements } => {
            let report = f.kernel_brute(*elements)?;
            let mut out = json!({ "dim": report.dim, "rank": report.rank });
            if let Some(els) = &report.kernel_elements {
                out["elements"] = json!(encs(f.ctx(), els));
            }
            ok(out)
        }
        Command::Gcrd { f, g } => {
            let d = f.gcrd(g)?;
            ok(json!({
                "gcrd": encs(f.ctx(), d.coeffs()),
                "degree": d.degree(),
                "stride": d.stride(),
            }))
        }
        Command::SubresPair { f, g } => {
            let chain = subres::gcd_qdeg_via_subres(f, g)?;
            ok(json!({
                "mu": chain.mu,
                "det_chain": encs(f.ctx(), &chain.det_chain),
                "sizes": chain.sizes,
            }))
        }
        Command::SubresPadded { f } => {
            let cert = subres::rank_via_subres_padded(f)?;
            let n = f.ctx().n();
            let sizes: Vec<usize> = (0..cert.det_chain.len())
                .map(|m| (2 * n).saturating_sub(2 * m + 1))
                .collect();
            let mut out = certificate_json(f.ctx(), &cert);
            out["sizes"] = json!(sizes);
            ok(out)
        }
        Command::DicksonChain { f, m } => {
            let ctx = f.ctx();
            let d = dickson::dickson_sigma(f)?;
            let n = ctx.n();
            let range: Vec<usize> = match m {
                Some(m) => vec![*m],
                None => (0..=n).collect(),
            };
            let dets = range
                .iter()
                .map(|&m| Ok(enc(ctx, &dickson::leading_minor(&d, m)?.det()?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let mut out = json!({ "m": range, "dets": dets, "stride": f.stride() });
            if m.is_none() {
                out["mu"] = json!(dets.iter().position(|v| v != "0"));
            }
            ok(out)
        }
        Command::Scattered { f } => {
            let ctx = f.ctx();
            let report = apps::scattered_check(f)?;
            let count = apps::direction_count_brute(f)?;
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "y0": enc(ctx, &w.y0),
                    "point": ["1", enc(ctx, &w.slope)],
                    "weight": w.weight,
                })
            });
            ok(json!({
                "scattered": report.scattered,
                "direction_count": count,
                "max_directions": (ctx.order() - 1) / (ctx.q() - 1),
                "witness": witness,
            }))
        }
        Command::Weights { f } => {
            let ctx = f.ctx();
            let spec = apps::weight_spectrum(f)?;
            let counts: serde_json::Map<String, Value> = spec
                .counts
                .iter()
                .map(|(w, c)| (w.to_string(), json!(c)))
                .collect();
            ok(json!({
                "counts": counts,
                "point_at_infinity_weight": spec.point_at_infinity_weight,
                "scattered": spec.is_scattered(),
                "consistent": spec.vector_total(ctx.q()) == (ctx.order() - 1) as u128,
            }))
        }
        Command::MrdSearch { ctx } => {
            let hits = apps::mrd_search_9(ctx)?;
            let list: Vec<Value> = hits
                .iter()
                .map(|h| {
                    json!({
                        "c": enc(ctx, &h.c),
                        "rank": h.certificate.rank,
                        "brute_rank": h.brute_rank,
                        "det_chain": encs(ctx, &h.certificate.det_chain),
                    })
                })
                .collect();
            ok(json!({
                "field": field_json(ctx),
                "searched": ctx.order() - 1,
                "count": list.len(),
                "hits": list,
            }))
        }
        Command::Selftest { level, seed } => {
            let report = selftest::run_selftest(*level, *seed);
            let passed = report.failed == 0;
            Ok((serde_json::to_value(report).expect("plain data"), passed))
        }
    }
}

/// Result of running a request: the rendered document and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub exit: i32,
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        pretty::render(value)
    } else {
        let mut s = serde_json::to_string(value).expect("serializable");
        s.push('\n');
        s
    }
}

/// Runs a request. Domain errors are reported in the body with exit code 1;
/// a command whose own check fails (selftest failures, a disagreeing
/// `--verify`) also exits with 1.
pub fn run(request: &Request) -> Outcome {
    let start = Instant::now();
    let result = match request.options.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&request.command)),
            Err(e) => Err(CliError {
                kind: "InvalidParams".into(),
                message: e.to_string(),
                position: None,
                token: None,
                exit: 1,
            }),
        },
        None => execute(&request.command),
    };
    match result {
        Ok((mut value, passed)) => {
            if request.options.timings {
                value["timings"] = json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 });
            }
            Outcome {
                body: render(&value, request.options.pretty),
                exit: if passed { 0 } else { 1 },
            }
        }
        Err(e) => Outcome {
            body: render(&e.to_json(), request.options.pretty),
            exit: e.exit,
        },
    }
}

/// Parses and runs argv in one step. Parse errors are rendered as JSON.
pub fn main_with<I, T>(argv: I) -> (Outcome, Option<PathBuf>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_request(argv) {
        Ok(req) => (run(&req), req.options.output.clone()),
        Err(e) if e.exit == 0 => (
            Outcome {
                body: e.message,
                exit: 0,
            },
            None,
        ),
        Err(e) => (
            Outcome {
                body: render(&e.to_json(), false),
                exit: e.exit,
            },
            None,
        ),
    }
}
