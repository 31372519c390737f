//! Command-line driver.
//!
//! Exit codes: 0 when every checked relation holds, 1 when one fails, 2 for
//! usage and input errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::bounds::{
    bound_b, bound_f, lambda, link_betti_sum, monotonicity_check, to_f64, trichotomy_flags, verify_dual_bound,
    verify_upper_bound,
};
use crate::collapse::collapse;
use crate::complex::{AnyComplex, Complex, SkeletonComplex};
use crate::constructions::{
    build_j, build_x_nkl, completions_within_cap, fano_complex, plain_report, steiner_validity, sum_complex,
    sum_complex_betti_formula, CandidateOrder, ConstructionReport, SumComplexSpec,
};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::homology::{betti, betti_report};
use crate::io::{emit_complex, parse_complex_file, ParsedComplex};
use crate::laplacian::garland_check;
use crate::random::{rng_for, sweep_sample, RandomSpec};
use crate::report::{emit_reports, OutputFormat, RunReport};
use crate::simplex::binomial;

/// Above this many candidate top faces a run prints a size warning.
pub const SIZE_WARNING: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "hypertree-lab", version, about = "Homology and link bounds for complexes between consecutive skeleta")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient field: `gf:P` for a prime P, or `q` for the rationals.
    #[arg(long, global = true, default_value = "gf:2")]
    pub field: FieldSpec,

    /// Face dimension l of the links.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub ell: Option<isize>,

    #[arg(long, global = true, default_value = "text")]
    pub out: OutputFormat,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for link sweeps.
    #[arg(long, global = true, env = "HYPERTREE_LAB_THREADS")]
    pub parallel: Option<usize>,

    /// Complex file, or `random(seed=S,n=N,k=K,q=Q)`.
    #[arg(long = "in", global = true)]
    pub input: Option<String>,

    /// Report elapsed_ms as 0 so that reruns are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Betti numbers and f-vector.
    Betti,
    /// Betti numbers of the link of every l-face.
    Links,
    /// Link Betti sums lambda(l, k-l-2) and lambda(l, k-l-1) with B and F.
    Lambda,
    /// Upper bound on tb_(k-1) and the identities around it.
    VerifyBound,
    /// Lower bound on the link sum by C(k+1, l+1) tb_k.
    VerifyDual,
    /// The three equality conditions.
    Trichotomy,
    /// Link spectral gaps against the vanishing of tb_(k-1) over Q.
    Garland,
    /// Elementary collapses in lexicographic order.
    Collapse,
    /// Build a named complex.
    Construct {
        #[command(subcommand)]
        what: Construction,
        /// Write the complex file here instead of embedding it in the report.
        #[arg(long, global = true)]
        write: Option<PathBuf>,
    },
    /// Bound checks on seeded random complexes.
    Sweep {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Sum complex Y_(A,s+1) on Z_n; A is a comma-separated list.
    Sum { n: usize, a: String, s: usize },
    /// Sum complex with every l-face link completed to a hypertree.
    Xnkl { n: usize, k: usize, l: usize },
    /// The families J_(n,1), J_(n,2), J_(n,3).
    Jnk { n: usize, k: usize },
    /// Full (k-1)-skeleton plus the blocks listed in a `skeleton n k` file.
    Steiner { file: PathBuf },
    /// Steiner system S(2,3,7).
    Fano,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    field: FieldSpec,
    ell: Option<isize>,
    seed: Option<u64>,
    no_timing: bool,
    warnings: Vec<String>,
}

impl Ctx {
    fn stamp(&self, r: &mut RunReport, start: Instant) {
        r.elapsed_ms = if self.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
        if r.seed.is_none() {
            r.seed = self.seed;
        }
    }

    fn warn_size(&mut self, n: usize, k: usize) {
        let c = binomial(n as u64, k as u64 + 1);
        if c > SIZE_WARNING {
            self.warnings.push(format!("warning: C({n}, {}) = {c} candidate top faces; this may be slow", k + 1));
        }
    }
}

struct Loaded {
    complex: AnyComplex,
    labels: Option<Vec<String>>,
    seed: Option<u64>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::ParameterMismatch(msg.into())
}

fn load(ctx: &mut Ctx, input: Option<&str>) -> Result<Loaded, Error> {
    let input = input.ok_or_else(|| usage("this command needs --in FILE or --in random(...)"))?;
    if let Some(spec) = RandomSpec::parse(input) {
        ctx.warn_size(spec.n, spec.k);
        return Ok(Loaded { complex: spec.generate().into(), labels: None, seed: Some(spec.seed) });
    }
    if input.starts_with("random(") {
        return Err(usage(format!("cannot read {input:?}; expected random(seed=S,n=N,k=K,q=Q) with 0 <= q <= 1 and n > k")));
    }
    let ParsedComplex { complex, labels } = parse_complex_file(input)?;
    Ok(Loaded { complex, labels, seed: None })
}

fn sandwiched(x: &AnyComplex) -> Result<SkeletonComplex, Error> {
    match x {
        AnyComplex::Skeleton(s) => Ok(s.clone()),
        AnyComplex::General(g) => SkeletonComplex::from_general(g).ok_or_else(|| {
            Error::NotSandwiched("this command needs a complex containing the full skeleton below its top dimension".into())
        }),
    }
}

fn ell_or(ctx: &Ctx, default: isize) -> isize {
    ctx.ell.unwrap_or(default)
}

fn nonneg_ell(ctx: &Ctx, k: usize) -> Result<usize, Error> {
    let l = ell_or(ctx, 0);
    if l < 0 || l as usize >= k {
        return Err(Error::ParameterOutOfRange(format!("need 0 <= l < k, got l = {l}, k = {k}")));
    }
    Ok(l as usize)
}

fn base_report(ctx: &Ctx, command: &str, loaded: &Loaded) -> RunReport {
    let mut r = RunReport::for_complex(command, &loaded.complex, ctx.field);
    r.seed = loaded.seed;
    if let Some(labels) = &loaded.labels {
        r.insert("labels", labels);
    }
    r
}

fn fill_bounds(r: &mut RunReport, x: &SkeletonComplex, ell: usize) -> Result<(), Error> {
    r.ell = Some(ell as isize);
    r.b = Some((&bound_b(x.n(), x.k(), ell)?).into());
    r.f = Some((&bound_f(x.n(), x.k(), ell)?).into());
    Ok(())
}

/// Reports plus whether every asserted relation held.
type Outcome = (Vec<RunReport>, bool);

fn cmd_betti(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let x = &loaded.complex;
    let mut r = base_report(ctx, "betti", &loaded);
    let br = betti_report(x, ctx.field);
    let mut ok = br.betti == r.betti && (x.is_void() || br.euler_relation_holds(true));
    if let Some(s) = x.as_skeleton() {
        let k = s.k() as isize;
        let eq6 = betti(s, k, ctx.field) as i128
            == betti(s, k - 1, ctx.field) as i128 + s.f_top() as i128 - binomial(s.n() as u64 - 1, s.k() as u64) as i128;
        r.eq6_holds = Some(eq6);
        ok &= eq6;
    }
    ctx.stamp(&mut r, start);
    Ok((vec![r], ok))
}

fn cmd_links(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let x = &loaded.complex;
    let ell = ell_or(ctx, 0);
    let field = ctx.field;
    let faces = x.faces(ell);
    let rows: Vec<serde_json::Value> = faces
        .par_iter()
        .map(|tau| {
            let lk = x.link(tau)?;
            let b: Vec<u64> = if lk.is_void() { Vec::new() } else { (-1..=lk.dim()).map(|j| betti(&lk, j, field)).collect() };
            Ok(json!({ "tau": tau, "f_vector": lk.f_vector(), "betti": b }))
        })
        .collect::<Result<_, Error>>()?;
    let mut r = base_report(ctx, "links", &loaded);
    r.ell = Some(ell);
    r.insert("links", rows);
    ctx.stamp(&mut r, start);
    Ok((vec![r], true))
}

fn cmd_lambda(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let x = sandwiched(&loaded.complex)?;
    let ell = nonneg_ell(ctx, x.k())?;
    let mut r = base_report(ctx, "lambda", &loaded);
    r.k = Some(x.k() as isize);
    let (k, l) = (x.k() as isize, ell as isize);
    r.lambda_km2 = Some(lambda(&x, l, k - l - 2, ctx.field)?);
    r.lambda_km1 = Some(lambda(&x, l, k - l - 1, ctx.field)?);
    fill_bounds(&mut r, &x, ell)?;
    ctx.stamp(&mut r, start);
    Ok((vec![r], true))
}

fn cmd_verify_bound(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let x = sandwiched(&loaded.complex)?;
    let ells: Vec<usize> = match ctx.ell {
        Some(_) => vec![nonneg_ell(ctx, x.k())?],
        None => (0..x.k()).collect(),
    };
    let mut reports = Vec::new();
    let mut ok = true;
    for ell in ells {
        let start = Instant::now();
        let cert = verify_upper_bound(&x, ell, ctx.field)?;
        ok &= cert.all_hold();
        let mut r = base_report(ctx, "verify-bound", &loaded);
        r.apply_certificate(&cert);
        ctx.stamp(&mut r, start);
        reports.push(r);
    }
    Ok((reports, ok))
}

fn cmd_verify_dual(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let x = sandwiched(&loaded.complex)?;
    let k = x.k() as isize;
    let ells: Vec<isize> = match ctx.ell {
        Some(l) => vec![l],
        None => (-1..k).collect(),
    };
    let mut reports = Vec::new();
    let mut ok = true;
    for ell in ells {
        let start = Instant::now();
        let v = verify_dual_bound(&x, ell, ctx.field)?;
        ok &= v.holds;
        let mut r = base_report(ctx, "verify-dual", &loaded);
        r.ell = Some(ell);
        r.lambda_km1 = Some(v.rhs);
        r.eq5_holds = Some(v.holds);
        r.insert("dual", &v);
        ctx.stamp(&mut r, start);
        reports.push(r);
    }
    Ok((reports, ok))
}

fn cmd_trichotomy(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let x = sandwiched(&loaded.complex)?;
    let ell = nonneg_ell(ctx, x.k())?;
    let (k, l) = (x.k() as isize, ell as isize);
    let flags = trichotomy_flags(&x, ell, ctx.field)?;
    let lam = link_betti_sum(&x, l, k - l - 2, ctx.field);
    let mut r = base_report(ctx, "trichotomy", &loaded);
    fill_bounds(&mut r, &x, ell)?;
    r.lambda_km2 = Some(lam);
    r.trichotomy = Some(flags);
    let precondition = lam == 0;
    r.insert("precondition_met", precondition);
    let ok = !precondition || flags.all_equal();
    ctx.stamp(&mut r, start);
    Ok((vec![r], ok))
}

fn cmd_garland(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let ell = ell_or(ctx, 0);
    let v = garland_check(&loaded.complex, ell)?;
    let mut r = base_report(ctx, "garland", &loaded);
    r.ell = Some(ell);
    r.insert("garland", &v);
    ctx.stamp(&mut r, start);
    Ok((vec![r], v.consistent()))
}

fn cmd_collapse(ctx: &mut Ctx, loaded: Loaded) -> Result<Outcome, Error> {
    let start = Instant::now();
    let g = loaded.complex.to_general();
    let out = collapse(&g);
    let mut r = base_report(ctx, "collapse", &loaded);
    let log: Vec<String> = out.log.iter().map(|s| format!("{} < {}", s.free, s.facet)).collect();
    let point = out.is_point();
    // a collapsible complex is acyclic
    let ok = !point || r.betti.iter().all(|b| *b == 0);
    r.insert("collapsed_to_point", point);
    r.insert("remaining_f_vector", out.result.f_vector());
    r.insert("steps", log);
    ctx.stamp(&mut r, start);
    Ok((vec![r], ok))
}

fn parse_set(a: &str) -> Result<Vec<u64>, Error> {
    a.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| usage(format!("A must be a comma-separated list of residues, got {a:?}"))))
        .collect()
}

fn cmd_construct(ctx: &mut Ctx, what: Construction, write: Option<PathBuf>) -> Result<Outcome, Error> {
    let start = Instant::now();
    let field = ctx.field;
    let mut ok = true;
    let mut notes = serde_json::Map::new();
    let report: ConstructionReport = match what {
        Construction::Sum { n, a, s } => {
            ctx.warn_size(n, s);
            let spec = SumComplexSpec::new(n, parse_set(&a)?, s)?;
            let x = sum_complex(&spec)?;
            if let Some(r) = spec.interval_length() {
                let matches = (-1..=s as isize)
                    .map(|i| Ok(betti(&x, i, field) == sum_complex_betti_formula(n, r, s, i)?))
                    .collect::<Result<Vec<bool>, Error>>()?
                    .into_iter()
                    .all(|m| m);
                notes.insert("interval_formula_holds".into(), matches.into());
                ok &= matches;
            }
            notes.insert("A".into(), json!(spec.a));
            plain_report("sum", x, None, field)
        }
        Construction::Xnkl { n, k, l } => {
            ctx.warn_size(n, k);
            let order = ctx.seed.map_or(CandidateOrder::Lexicographic, CandidateOrder::Shuffled);
            let rep = build_x_nkl(n, k, l, field, order)?;
            let lambda_zero = rep.lambda_km2 == Some(0);
            let within_cap = completions_within_cap(&rep);
            let base = rep.base_top_betti.unwrap_or(0);
            let lower = rep.tb_km1 as i128 >= base as i128 - rep.total_added() as i128;
            let b = bound_b(n, k, l)?;
            notes.insert("lambda_vanishes".into(), lambda_zero.into());
            notes.insert("completions_within_cap".into(), within_cap.into());
            notes.insert("top_betti_lower_bound_holds".into(), lower.into());
            notes.insert("ratio_to_B".into(), json!(rep.tb_km1 as f64 / to_f64(&b)));
            ok &= lambda_zero && within_cap && lower;
            rep
        }
        Construction::Jnk { n, k } => {
            let x = build_j(n, k)?;
            let b = bound_b(n, k, 0)?;
            let f = bound_f(n, k, 0)?;
            let rep = plain_report("jnk", x, Some(0), field);
            let attains_b = BigRational::from_integer(BigInt::from(rep.tb_km1)) == b;
            let attains_f = BigRational::from_integer(BigInt::from(rep.complex.f_top())) == f;
            notes.insert("top_betti_equals_B".into(), attains_b.into());
            notes.insert("top_faces_equal_F".into(), attains_f.into());
            ok &= attains_b && attains_f;
            rep
        }
        Construction::Steiner { file } => {
            let parsed = parse_complex_file(&file)?;
            let x = sandwiched(&parsed.complex)?;
            steiner_report(x, field, &mut notes, &mut ok)?
        }
        Construction::Fano => steiner_report(fano_complex(), field, &mut notes, &mut ok)?,
    };
    let mut report = report;
    if ctx.no_timing {
        report.elapsed_ms = 0;
    }
    let x = report.complex.clone();
    let mut r = RunReport::for_complex("construct", &x, field);
    r.ell = report.ell.map(|l| l as isize);
    r.lambda_km2 = report.lambda_km2;
    if let Some(l) = report.ell {
        fill_bounds(&mut r, &x, l)?;
    }
    r.insert("construction", &report);
    for (key, v) in notes {
        r.extra.insert(key, v);
    }
    let text = emit_complex(&x.into());
    match write {
        Some(path) => {
            std::fs::write(&path, text)?;
            r.insert("written_to", path.display().to_string());
        }
        None => r.insert("complex_file", text),
    }
    ctx.stamp(&mut r, start);
    Ok((vec![r], ok))
}

fn steiner_report(
    x: SkeletonComplex,
    field: FieldSpec,
    notes: &mut serde_json::Map<String, serde_json::Value>,
    ok: &mut bool,
) -> Result<ConstructionReport, Error> {
    let k = x.k();
    let v = steiner_validity(&x);
    if k >= 1 && k < x.n() && v.uncovered == 0 {
        // every (k-1)-face has a nonempty link, so equality is the Steiner condition
        let b = bound_b(x.n(), k, k - 1)?;
        let attains = BigRational::from_integer(BigInt::from(betti(&x, k as isize - 1, field))) == b;
        notes.insert("top_betti_equals_B".into(), attains.into());
        *ok &= attains == v.is_steiner;
    }
    notes.insert("steiner".into(), json!(v));
    let ell = (k >= 1).then(|| k - 1);
    Ok(plain_report("steiner", x, ell, field))
}

fn cmd_sweep(ctx: &mut Ctx, count: u64, n_max: usize, k_max: usize) -> Result<Outcome, Error> {
    if n_max < 2 || k_max < 1 {
        return Err(Error::ParameterOutOfRange("sweep needs --n-max >= 2 and --k-max >= 1".into()));
    }
    let seed = ctx.seed.unwrap_or(0);
    let field = ctx.field;
    let fixed_ell = ctx.ell;
    let no_timing = ctx.no_timing;
    let rows: Vec<(RunReport, bool)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let start = Instant::now();
            let (x, q) = sweep_sample(seed, i, n_max, k_max);
            let k = x.k();
            let ell = match fixed_ell {
                Some(l) if l >= 0 && (l as usize) < k => l as usize,
                _ => (i % k as u64) as usize,
            };
            let cert = verify_upper_bound(&x, ell, field)?;
            let dual = verify_dual_bound(&x, ell as isize, field)?;
            let mono = match x.top_faces().len() {
                0 => None,
                m => {
                    let pick = rng_for(seed ^ 0x6d6f6e6f, i).random_range(0..m);
                    let sigma = x.top_faces().iter().nth(pick).expect("index in range").clone();
                    Some(monotonicity_check(&x, &sigma, ell, field)?)
                }
            };
            let ok = cert.all_hold() && dual.holds && mono.as_ref().is_none_or(|m| m.holds());
            let mut r = RunReport::for_complex("sweep", &x, field);
            r.apply_certificate(&cert);
            r.seed = Some(seed);
            r.insert("index", i);
            r.insert("q", q);
            r.insert("dual_holds", dual.holds);
            r.insert("monotonicity_holds", mono.map(|m| m.holds()));
            r.elapsed_ms = if no_timing { 0 } else { start.elapsed().as_millis() as u64 };
            Ok((r, ok))
        })
        .collect::<Result<_, Error>>()?;
    let ok = rows.iter().all(|(_, ok)| *ok);
    Ok((rows.into_iter().map(|(r, _)| r).collect(), ok))
}

fn dispatch(cli: Cli) -> Result<(Outcome, Vec<String>), Error> {
    let mut ctx = Ctx { field: cli.field, ell: cli.ell, seed: cli.seed, no_timing: cli.no_timing, warnings: Vec::new() };
    let input = cli.input.as_deref();
    let outcome = match cli.command {
        Command::Construct { what, write } => cmd_construct(&mut ctx, what, write)?,
        Command::Sweep { count, n_max, k_max } => cmd_sweep(&mut ctx, count, n_max, k_max)?,
        other => {
            let loaded = load(&mut ctx, input)?;
            match other {
                Command::Betti => cmd_betti(&mut ctx, loaded)?,
                Command::Links => cmd_links(&mut ctx, loaded)?,
                Command::Lambda => cmd_lambda(&mut ctx, loaded)?,
                Command::VerifyBound => cmd_verify_bound(&mut ctx, loaded)?,
                Command::VerifyDual => cmd_verify_dual(&mut ctx, loaded)?,
                Command::Trichotomy => cmd_trichotomy(&mut ctx, loaded)?,
                Command::Garland => cmd_garland(&mut ctx, loaded)?,
                Command::Collapse => cmd_collapse(&mut ctx, loaded)?,
                Command::Construct { .. } | Command::Sweep { .. } => unreachable!("handled above"),
            }
        }
    };
    Ok((outcome, ctx.warnings))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution { code, stdout: text, stderr: String::new() }
            } else {
                Execution { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.out;
    let result = match cli.parallel {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(usage(format!("cannot start {threads} worker threads: {e}"))),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(((reports, ok), warnings)) => {
            let mut stderr: String = warnings.iter().map(|w| format!("{w}\n")).collect();
            if !ok {
                stderr.push_str("error: a checked relation failed\n");
            }
            Execution { code: if ok { 0 } else { 1 }, stdout: emit_reports(&reports, format), stderr }
        }
        Err(e) => Execution { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
