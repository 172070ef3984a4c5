//! Command-line front end: argument parsing, case orchestration and reports.

pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use rayon::prelude::*;

use qramanujan::arith::cyclotomic::is_prime;
use qramanujan::arith::{parse_rational, Rational};
use qramanujan::congruence::{
    verify_intro, verify_intro_with, verify_modsun, verify_modsun_with, verify_sun,
    CongruenceConfig, CongruenceError, Path,
};
use qramanujan::numeric::{
    check_identity_numeric, classical_target, eval_classical, limit_scan, strictly_decreasing,
    Classical, LimitTarget, NumCtx, NumIdentity,
};
use qramanujan::wz::{check_identity, check_telescoping_grid, IdentityId, WzPairId};
use qramanujan::CheckResult;

pub use report::{Case, Report, Status, Totals};

#[derive(Parser, Debug)]
#[command(
    name = "qramanujan",
    version,
    about = "Verification runs for q-analogues of Ramanujan-type series"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact finite identities.
    VerifyIdentity(IdentityArgs),
    /// WZ telescoping certificates on the grid 0 <= n <= max-n, 1 <= k <= n+2.
    VerifyWz(WzArgs),
    /// Truncated-sum congruences modulo cyclotomic factors.
    VerifyCongruence(CongruenceArgs),
    /// The classical congruence modulo p³ with Euler numbers.
    VerifySun(SunArgs),
    /// High-precision evaluation of the infinite identities and classical series.
    Eval(EvalArgs),
    /// Scan of q_j = 1 - 2^-j towards the classical constants.
    Limit(LimitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IdentityName {
    A2,
    A3,
    Second,
    Second2,
    Whipple,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(value_enum)]
    identity: IdentityName,
    /// Range `a..b` of n (default 1..25, or odd n in 1..99 for whipple).
    #[arg(long)]
    n: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairName {
    #[value(name = "J2")]
    J2,
    #[value(name = "L2")]
    L2,
}

#[derive(Args, Debug)]
struct WzArgs {
    /// Pair to check (default: both).
    #[arg(long, value_enum)]
    pair: Option<PairName>,
    #[arg(long, default_value_t = 20)]
    max_n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CongruenceName {
    #[value(name = "modsun")]
    Modsun,
    #[value(name = "J2")]
    J2,
    #[value(name = "L2")]
    L2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PathName {
    Auto,
    Modular,
    Exact,
}

#[derive(Args, Debug)]
struct CongruenceArgs {
    #[arg(long, value_enum)]
    which: CongruenceName,
    /// Range `a..b`; only odd n are checked.
    #[arg(long)]
    odd_n: Option<String>,
    /// Largest composite n sent down the exact path.
    #[arg(long, default_value_t = 27)]
    composite_bound: u64,
    /// Allow L2 for odd n that are not prime powers.
    #[arg(long)]
    exploratory: bool,
    #[arg(long, value_enum, default_value_t = PathName::Auto)]
    path: PathName,
}

#[derive(Args, Debug)]
struct SunArgs {
    /// Range `a..b`; primes p >= 5 in it are checked.
    #[arg(long, default_value = "5..97")]
    primes: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalName {
    A1,
    A11,
    Slater,
    Prodfact,
    Pi1,
    Pi2,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    identity: EvalName,
    /// Exact rational q in (0,1); repeatable (default 1/4, 1/3, 1/2).
    #[arg(long)]
    q: Vec<String>,
    /// Decimal digits (default 50, or 40 for pi1/pi2).
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LimitName {
    Pi1,
    Pi2,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, value_enum)]
    target: LimitName,
    /// Range of j within 2..16.
    #[arg(long, default_value = "4..10")]
    j: String,
    #[arg(long, default_value_t = 30)]
    digits: u32,
}

/// A configuration error, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

/// Parses `a..b`, `a..=b` or `a` as an inclusive range.
fn parse_range(s: &str) -> Result<(u64, u64), UsageError> {
    let bad = || UsageError(format!("malformed range {s:?}; expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u64 = a.parse().map_err(|_| bad())?;
    let b: u64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(UsageError(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

fn odd_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).filter(|n| n % 2 == 1).collect()
}

fn check_case(r: CheckResult) -> Case {
    let status = if r.passed { Status::Pass } else { Status::Fail };
    Case::new(r.case_label, status).with_witness(r.witness.map(|w| w.to_string()))
}

fn congruence_case(label: String, r: Result<CheckResult, CongruenceError>) -> Case {
    match r {
        Ok(r) => {
            let mut c = check_case(r);
            c.label = label;
            c
        }
        Err(e @ (CongruenceError::GcdNotCoprime | CongruenceError::NonInvertibleDenominator)) => {
            Case::new(label, Status::IllPosed).with_witness(Some(e.to_string()))
        }
        Err(
            e @ (CongruenceError::NotPrimePower(_) | CongruenceError::BeyondCompositeBound(..)),
        ) => Case::new(label, Status::Skipped).with_witness(Some(e.to_string())),
        Err(e) => Case::new(label, Status::Fail).with_witness(Some(e.to_string())),
    }
}

fn error_case(label: String, e: impl std::fmt::Display) -> Case {
    Case::new(label, Status::Fail).with_witness(Some(format!("error: {e}")))
}

fn pair_id(p: PairName) -> WzPairId {
    match p {
        PairName::J2 => WzPairId::PairJ2,
        PairName::L2 => WzPairId::PairL2,
    }
}

type Params = BTreeMap<String, String>;

fn run_identity(a: &IdentityArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let id = match a.identity {
        IdentityName::A2 => IdentityId::IdA2,
        IdentityName::A3 => IdentityId::IdA3,
        IdentityName::Second => IdentityId::IdSecond,
        IdentityName::Second2 => IdentityId::IdSecond2,
        IdentityName::Whipple => IdentityId::IdWhipple,
    };
    let whipple = id == IdentityId::IdWhipple;
    let range =
        a.n.clone()
            .unwrap_or_else(|| if whipple { "1..99" } else { "1..25" }.into());
    let (lo, hi) = parse_range(&range)?;
    if lo == 0 {
        return Err(UsageError("n must be at least 1".into()));
    }
    let ns: Vec<u64> = if whipple {
        odd_in(lo, hi)
    } else {
        (lo..=hi).collect()
    };
    params.insert("identity".into(), id.to_string());
    params.insert("n".into(), format!("{lo}..{hi}"));
    Ok(ns
        .par_iter()
        .map(|&n| match check_identity(id, n) {
            Ok(r) => check_case(r),
            Err(e) => error_case(format!("{id} n={n}"), e),
        })
        .collect())
}

fn run_wz(a: &WzArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let pairs = match a.pair {
        Some(p) => vec![pair_id(p)],
        None => vec![WzPairId::PairJ2, WzPairId::PairL2],
    };
    params.insert(
        "pair".into(),
        pairs
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    params.insert("max_n".into(), a.max_n.to_string());
    Ok(pairs
        .into_iter()
        .flat_map(|p| check_telescoping_grid(p, a.max_n))
        .map(check_case)
        .collect())
}

fn default_congruence_ns(which: CongruenceName) -> Vec<u64> {
    match which {
        CongruenceName::Modsun => odd_in(1, 99),
        CongruenceName::J2 => {
            let mut ns = odd_in(1, 27);
            ns.extend((29..=97).filter(|&p| is_prime(p)));
            ns
        }
        CongruenceName::L2 => vec![3, 5, 7, 9, 11, 13, 25, 27],
    }
}

fn run_congruence(a: &CongruenceArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let ns = match &a.odd_n {
        Some(r) => {
            let (lo, hi) = parse_range(r)?;
            params.insert("odd_n".into(), format!("{lo}..{hi}"));
            odd_in(lo, hi)
        }
        None => {
            params.insert("odd_n".into(), "default".into());
            default_congruence_ns(a.which)
        }
    };
    let cfg = CongruenceConfig {
        composite_bound: a.composite_bound,
        exploratory_l2: a.exploratory,
    };
    let which = match a.which {
        CongruenceName::Modsun => "modsun",
        CongruenceName::J2 => "J2",
        CongruenceName::L2 => "L2",
    };
    params.insert("which".into(), which.into());
    params.insert("composite_bound".into(), a.composite_bound.to_string());
    params.insert("exploratory".into(), a.exploratory.to_string());
    params.insert("path".into(), format!("{:?}", a.path).to_lowercase());
    let forced = match a.path {
        PathName::Auto => None,
        PathName::Modular => Some(Path::Modular),
        PathName::Exact => Some(Path::Exact),
    };
    Ok(ns
        .par_iter()
        .map(|&n| match a.which {
            CongruenceName::Modsun => {
                let path = forced.unwrap_or(Path::Modular);
                let r = match forced {
                    None => verify_modsun(n),
                    Some(p) => verify_modsun_with(n, p),
                };
                congruence_case(format!("modsun n={n} [{path}]"), r)
            }
            CongruenceName::J2 | CongruenceName::L2 => {
                let pair = if a.which == CongruenceName::J2 {
                    WzPairId::PairJ2
                } else {
                    WzPairId::PairL2
                };
                match forced {
                    Some(p) => congruence_case(
                        format!("{pair} n={n} [{p}]"),
                        verify_intro_with(pair, n, p, &cfg),
                    ),
                    None => match verify_intro(pair, n, &cfg) {
                        Ok(rep) => {
                            congruence_case(format!("{pair} n={n} [{}]", rep.path), Ok(rep.result))
                        }
                        Err(e) => congruence_case(format!("{pair} n={n}"), Err(e)),
                    },
                }
            }
        })
        .collect())
}

fn run_sun(a: &SunArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let (lo, hi) = parse_range(&a.primes)?;
    params.insert("primes".into(), format!("{lo}..{hi}"));
    let ps: Vec<u64> = (lo.max(5)..=hi).filter(|&p| is_prime(p)).collect();
    Ok(ps
        .par_iter()
        .map(|&p| match verify_sun(p) {
            Ok((w, r)) => {
                let v = w.valuation.map_or("inf".to_string(), |v| v.to_string());
                let status = if r.passed { Status::Pass } else { Status::Fail };
                Case::new(r.case_label, status)
                    .with_witness(Some(format!("difference={} valuation={v}", w.difference)))
            }
            Err(e) => error_case(format!("SUN p={p}"), e),
        })
        .collect())
}

fn parse_q(s: &str) -> Result<Rational, UsageError> {
    let q = parse_rational(s).ok_or_else(|| UsageError(format!("malformed rational q {s:?}")))?;
    if !q.is_positive() || q >= Rational::one() {
        return Err(UsageError(format!(
            "q = {q} must lie strictly between 0 and 1"
        )));
    }
    Ok(q)
}

fn run_eval(a: &EvalArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let classical = match a.identity {
        EvalName::Pi1 => Some(Classical::Pi1),
        EvalName::Pi2 => Some(Classical::Pi2),
        _ => None,
    };
    let digits = a
        .digits
        .unwrap_or(if classical.is_some() { 40 } else { 50 });
    if digits == 0 {
        return Err(UsageError("digits must be at least 1".into()));
    }
    params.insert(
        "identity".into(),
        format!("{:?}", a.identity).to_lowercase(),
    );
    params.insert("digits".into(), digits.to_string());
    if let Some(which) = classical {
        let label = format!("{which} digits={digits}");
        let case = match eval_classical(which, digits) {
            Ok(r) => {
                let mut ctx = NumCtx::new(digits).expect("digits checked");
                let target = classical_target(which, &mut ctx);
                let diff = ctx.sub(&r.value, &target).abs();
                let ok = matches!(diff.cmp(&ctx.pow10(-(digits as i64))), Some(c) if c < 0);
                let status = if ok { Status::Pass } else { Status::Fail };
                Case::new(label, status)
                    .with_witness(Some(format!(
                        "value={} distance={}",
                        ctx.render(&r.value),
                        ctx.render_sig(&diff, 6)
                    )))
                    .with_bound(ctx.render_sig(&r.tail_bound, 6))
                    .with_terms(r.terms_used)
            }
            Err(e) => error_case(label, e),
        };
        return Ok(vec![case]);
    }
    let which = match a.identity {
        EvalName::A1 => NumIdentity::A1,
        EvalName::A11 => NumIdentity::A11,
        EvalName::Slater => NumIdentity::Slater,
        _ => NumIdentity::ProdFact,
    };
    let qs: Vec<String> = if a.q.is_empty() {
        vec!["1/4".into(), "1/3".into(), "1/2".into()]
    } else {
        a.q.clone()
    };
    let qs: Vec<Rational> = qs.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?;
    params.insert(
        "q".into(),
        qs.iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    Ok(qs
        .par_iter()
        .map(|q| {
            let label = format!("{which} q={q} digits={digits}");
            match check_identity_numeric(which, q, digits) {
                Ok(c) => {
                    let mut ctx = NumCtx::new(digits).expect("digits checked");
                    let bound = ctx.add(&c.lhs.tail_bound, &c.rhs.tail_bound);
                    let status = if c.result.passed {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    Case::new(c.result.case_label, status)
                        .with_witness(Some(format!(
                            "|LHS-RHS|={} allowed={}",
                            ctx.render_sig(&c.difference, 6),
                            ctx.render_sig(&c.allowed, 6)
                        )))
                        .with_bound(ctx.render_sig(&bound, 6))
                        .with_terms(c.lhs.terms_used + c.rhs.terms_used)
                }
                Err(e) => error_case(label, e),
            }
        })
        .collect())
}

fn run_limit(a: &LimitArgs, params: &mut Params) -> Result<Vec<Case>, UsageError> {
    let (lo, hi) = parse_range(&a.j)?;
    if lo < 2 || hi > 16 {
        return Err(UsageError("j range must lie within 2..16".into()));
    }
    if a.digits == 0 {
        return Err(UsageError("digits must be at least 1".into()));
    }
    let target = match a.target {
        LimitName::Pi1 => LimitTarget::A1ToPi1,
        LimitName::Pi2 => LimitTarget::A11ToPi2,
    };
    params.insert("target".into(), target.to_string());
    params.insert("j".into(), format!("{lo}..{hi}"));
    params.insert("digits".into(), a.digits.to_string());
    let points = match limit_scan(target, lo as u32..=hi as u32, a.digits) {
        Ok(p) => p,
        Err(e) => return Ok(vec![error_case(format!("{target} j={lo}..{hi}"), e)]),
    };
    let mut ctx = NumCtx::new(a.digits).expect("digits checked");
    let mut cases: Vec<Case> = points
        .iter()
        .map(|p| {
            Case::new(format!("{target} j={} q={}", p.j, p.q), Status::Pass)
                .with_witness(Some(format!(
                    "value={} distance={}",
                    ctx.render(&p.value.value),
                    ctx.render_sig(&p.distance, 6)
                )))
                .with_bound(ctx.render_sig(&p.value.tail_bound, 6))
                .with_terms(p.value.terms_used)
        })
        .collect();
    let monotone = if strictly_decreasing(&points) {
        Status::Pass
    } else {
        Status::Fail
    };
    cases.push(Case::new(
        format!("{target} distances strictly decreasing"),
        monotone,
    ));
    Ok(cases)
}

fn execute(cli: &Cli) -> Result<Report, UsageError> {
    let start = Instant::now();
    let mut params = Params::new();
    let (name, cases) = match &cli.command {
        Command::VerifyIdentity(a) => ("verify-identity", run_identity(a, &mut params)?),
        Command::VerifyWz(a) => ("verify-wz", run_wz(a, &mut params)?),
        Command::VerifyCongruence(a) => ("verify-congruence", run_congruence(a, &mut params)?),
        Command::VerifySun(a) => ("verify-sun", run_sun(a, &mut params)?),
        Command::Eval(a) => ("eval", run_eval(a, &mut params)?),
        Command::Limit(a) => ("limit", run_limit(a, &mut params)?),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(Report::new(name, params, cases, elapsed))
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 if every case passes, 1 otherwise, 2 on usage or output errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j as usize);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qramanujan: cannot start workers: {e}");
            return 2;
        }
    };
    let report = match pool.install(|| execute(&cli)) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("qramanujan: {msg}");
            return 2;
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("qramanujan: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if report.all_passed() {
        0
    } else {
        1
    }
}
