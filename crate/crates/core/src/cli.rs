//! The `plurilab` command line.
//!
//! [`run`] takes the argument vector and the `PLURILAB_RMAX` value and
//! returns the exit code with both output streams, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage or
//! parse error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::presets::{self, PresetId};
use crate::bounds::theorems;
use crate::bounds::{self, beta_sequence, BoundResult, Scenario};
use crate::error::{BoundsError, InferError, ParseError, WpsError};
use crate::infer::{self, infer_basket, InferenceProblem};
use crate::rational::{self, Rational};
use crate::reid::{Basket, PluriData};
use crate::verify::Harness;
use crate::wps::{self, WeightedHypersurface};

pub const ENV_RMAX: &str = "PLURILAB_RMAX";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "plurilab", version, about = "Exact plurigenus and pluricanonical bound computations")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Accepted for interface stability; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plurigenera from chi(O), K^3 and a basket.
    Pluri(PluriArgs),
    /// Invariants of a weighted hypersurface `d:a0,a1,a2,a3,a4`.
    Wps(WpsArgs),
    /// Recover a basket from plurigenera.
    Infer(InferArgs),
    /// Run the xi/alpha engine on a preset or scenario.
    Bounds(BoundsArgs),
    /// Recompute every golden checkpoint.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
struct PluriArgs {
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long)]
    k3: String,
    /// Comma-separated `mult*b/r` entries; empty for no singular points.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    basket: String,
    /// A single `m` or a range `lo..hi` (inclusive).
    #[arg(long, default_value = "2..10")]
    m: String,
}

#[derive(Debug, Args)]
struct WpsArgs {
    hypersurface: String,
    #[arg(long, default_value = "1..10")]
    m: String,
}

#[derive(Debug, Args)]
struct InferArgs {
    /// Inline plurigenera `2=1,3=2,...`.
    #[arg(long, conflicts_with = "hypersurface")]
    pm: Option<String>,
    /// Take P_2..P_M and K^3 from a hypersurface.
    #[arg(long)]
    hypersurface: Option<String>,
    /// Largest m read from the hypersurface.
    #[arg(long, default_value_t = 8)]
    m_max: i64,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<i64>,
    #[arg(long)]
    k3: Option<String>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long, default_value_t = infer::DEFAULT_SIZE_MAX)]
    size_max: u32,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, conflicts_with = "scenario")]
    preset: Option<String>,
    #[arg(long)]
    m0: Option<i64>,
    /// Scenario text `m0=3 p=1 beta=1/3 g=2 sep=8 [xi0=2/7] [even] [nonhyp]`.
    #[arg(long)]
    scenario: Option<String>,
    /// Comma-separated m values; without it the least birational m is searched.
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    m_hi: Option<i64>,
    /// Assembled threshold over all presets for `--m0`.
    #[arg(long, conflicts_with_all = ["preset", "scenario"])]
    theorem44: bool,
    #[arg(long, requires = "theorem44")]
    chi_zero: bool,
    /// `main` or `corollary`.
    #[arg(long, conflicts_with_all = ["preset", "scenario", "theorem44"])]
    pipeline: Option<String>,
    /// Terms of the beta sequence: `m0,p[,t0]`.
    #[arg(long, conflicts_with_all = ["preset", "scenario", "theorem44", "pipeline"])]
    beta: Option<String>,
    #[arg(long, default_value_t = 5)]
    n: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Only run one checkpoint group.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { code, stdout: String::new(), stderr }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<InferError> for Failure {
    fn from(e: InferError) -> Self {
        match e {
            InferError::Usage(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Parse(_)
            | BoundsError::UnknownPreset(_)
            | BoundsError::InvalidScenario(_)
            | BoundsError::NotApplicable { .. }
            | BoundsError::EmptySchedule
            | BoundsError::RangeTooSmall { .. } => Failure::Usage(e.to_string()),
            BoundsError::NoThreshold(..) => Failure::Compute(e.to_string()),
        }
    }
}

type CmdResult = Result<(i32, String), Failure>;

pub fn run<I, T>(args: I, env_rmax: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(2, text) } else { Outcome::ok(text) };
        }
    };
    let fmt = cli.format;
    let result = match cli.command {
        Command::Pluri(a) => cmd_pluri(&a, fmt),
        Command::Wps(a) => cmd_wps(&a, fmt),
        Command::Infer(a) => cmd_infer(&a, fmt, env_rmax),
        Command::Bounds(a) => cmd_bounds(&a, fmt),
        Command::VerifyPaper(a) => cmd_verify(&a, fmt),
    };
    match result {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => Outcome::fail(2, format!("error: {msg}")),
        Err(Failure::Compute(msg)) => Outcome::fail(1, format!("error: {msg}")),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn fr(x: &Rational) -> String {
    rational::format(x)
}

/// `7` or `2..10`, inclusive.
fn parse_range(text: &str) -> Result<(i64, i64), ParseError> {
    let int = |s: &str, at: usize| {
        s.trim().parse::<i64>().map_err(|_| ParseError::new(at, format!("expected an integer, found `{s}`")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (int(lo, 0)?, int(hi, lo.len() + 2)?);
            if lo > hi {
                return Err(ParseError::new(0, format!("empty range {lo}..{hi}")));
            }
            Ok((lo, hi))
        }
        None => int(text, 0).map(|m| (m, m)),
    }
}

fn cmd_pluri(a: &PluriArgs, fmt: Format) -> CmdResult {
    let k3 = rational::parse(&a.k3)?;
    let basket = Basket::parse(&a.basket)?;
    let (lo, hi) = parse_range(&a.m)?;
    let data = PluriData::new(a.chi, k3, basket).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut rows = Vec::new();
    for m in lo..=hi {
        let p = data.plurigenus(m).map_err(|e| Failure::Usage(e.to_string()))?;
        rows.push((m, p));
    }
    let out = match fmt {
        Format::Json => pretty(&json!({
            "chi": data.chi,
            "k3": fr(&data.k3),
            "basket": data.basket.to_string(),
            "rows": rows.iter().map(|(m, p)| json!({
                "m": m, "p": fr(p), "integral": rational::is_integral(p)
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::from("m\tP_m\tintegral\n");
            for (m, p) in &rows {
                let _ = writeln!(s, "{m}\t{}\t{}", fr(p), if rational::is_integral(p) { "yes" } else { "no" });
            }
            s
        }
    };
    Ok((0, out))
}

fn cmd_wps(a: &WpsArgs, fmt: Format) -> CmdResult {
    let x = WeightedHypersurface::parse(&a.hypersurface)?;
    let (lo, hi) = parse_range(&a.m)?;
    let compute = |e: WpsError| Failure::Compute(e.to_string());
    let k3 = x.k3().map_err(compute)?;
    let mut rows = Vec::new();
    for m in lo.max(0)..=hi {
        rows.push((m, wps::plurigenus_wps(&x, m).map_err(compute)?));
    }
    let out = match fmt {
        Format::Json => pretty(&json!({
            "hypersurface": x.to_string(),
            "well_formed": x.well_formed(),
            "canonical_weight": x.canonical_weight(),
            "k3": fr(&k3),
            "plurigenera": rows.iter().map(|(m, p)| json!({"m": m, "p": p.to_string()})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "hypersurface {x}");
            let _ = writeln!(s, "well-formed {}", x.well_formed());
            let _ = writeln!(s, "k {}", x.canonical_weight());
            let _ = writeln!(s, "K^3 {}", fr(&k3));
            s.push_str("m\tP_m\n");
            for (m, p) in &rows {
                let _ = writeln!(s, "{m}\t{p}");
            }
            s
        }
    };
    Ok((0, out))
}

fn parse_pm(text: &str) -> Result<Vec<(i64, i64)>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let at = offset;
        offset += item.len() + 1;
        let (m, p) =
            item.split_once('=').ok_or_else(|| ParseError::new(at, format!("expected `m=P_m`, found `{item}`")))?;
        let m = m.trim().parse().map_err(|_| ParseError::new(at, format!("invalid m `{m}`")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| ParseError::new(at + item.find('=').unwrap_or(0) + 1, format!("invalid P_m `{p}`")))?;
        out.push((m, p));
    }
    Ok(out)
}

fn cmd_infer(a: &InferArgs, fmt: Format, env_rmax: Option<&str>) -> CmdResult {
    let r_max = match (a.r_max, env_rmax) {
        (Some(r), _) => r,
        (None, Some(v)) => {
            v.trim().parse().map_err(|_| Failure::Usage(format!("{ENV_RMAX} must be a positive integer, got `{v}`")))?
        }
        (None, None) => infer::DEFAULT_R_MAX,
    };
    let mut k3 = a.k3.as_deref().map(rational::parse).transpose()?;
    let pluri = match (&a.pm, &a.hypersurface) {
        (Some(pm), None) => parse_pm(pm)?,
        (None, Some(h)) => {
            let x = WeightedHypersurface::parse(h)?;
            let compute = |e: WpsError| Failure::Compute(e.to_string());
            if k3.is_none() {
                k3 = Some(x.k3().map_err(compute)?);
            }
            let mut pm = Vec::new();
            for m in 2..=a.m_max {
                let p = x.plurigenus(m).map_err(compute)?;
                let p = i64::try_from(p).map_err(|_| Failure::Usage(format!("P_{m} does not fit in 64 bits")))?;
                pm.push((m, p));
            }
            pm
        }
        _ => return Err(Failure::Usage("give exactly one of --pm and --hypersurface".into())),
    };
    let problem = InferenceProblem::new(pluri, a.chi, k3).with_bounds(r_max, a.size_max);
    let res = infer_basket(&problem)?;
    let out = match fmt {
        Format::Json => pretty(&json!({
            "basket": res.basket.to_string(),
            "size": res.basket.len(),
            "chi": res.chi,
            "k3": fr(&res.k3),
            "residual": res.residual,
            "r_max": r_max,
            "size_max": a.size_max,
        })),
        Format::Text => format!(
            "basket {{{}}}\nsize {}\nchi {}\nK^3 {}\nresidual {}\n",
            res.basket,
            res.basket.len(),
            res.chi,
            fr(&res.k3),
            if res.residual { "exact" } else { "inexact" }
        ),
    };
    Ok((0, out))
}

fn trace_json(sc: &Scenario, res: &BoundResult, notes: &[&str]) -> Value {
    json!({
        "scenario": sc.to_string(),
        "start_xi": fr(&res.start_xi),
        "xi_final": fr(&res.xi_final),
        "m_birational": res.m_birational,
        "trace": res.trace.iter().map(|s| json!({
            "m": s.m,
            "alpha": fr(&s.alpha),
            "alpha0": s.alpha0.to_string(),
            "xi_before": fr(&s.xi_before),
            "xi_after": fr(&s.xi_after),
            "criterion": s.criterion,
        })).collect::<Vec<_>>(),
        "notes": res.notes.iter().map(String::as_str).chain(notes.iter().copied()).collect::<Vec<_>>(),
    })
}

fn trace_text(sc: &Scenario, res: &BoundResult, notes: &[&str]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario {sc}");
    let _ = writeln!(s, "start xi {}", fr(&res.start_xi));
    s.push_str("m\talpha\talpha0\txi_before\txi_after\tcriterion\n");
    for st in &res.trace {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{:?}",
            st.m,
            fr(&st.alpha),
            st.alpha0,
            fr(&st.xi_before),
            fr(&st.xi_after),
            st.criterion
        );
    }
    let _ = writeln!(s, "xi final {}", fr(&res.xi_final));
    match res.m_birational {
        Some(m) => {
            let _ = writeln!(s, "birational from m = {m}");
        }
        None => s.push_str("no birational m certified\n"),
    }
    for n in res.notes.iter().map(String::as_str).chain(notes.iter().copied()) {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn cmd_bounds(a: &BoundsArgs, fmt: Format) -> CmdResult {
    if a.theorem44 {
        let m0 = a.m0.ok_or_else(|| Failure::Usage("--theorem44 needs --m0".into()))?;
        let summary = presets::theorem_44_summary(m0, a.chi_zero)?;
        let out = match fmt {
            Format::Json => pretty(&json!({
                "m0": m0,
                "chi_zero": a.chi_zero,
                "threshold": summary.threshold,
                "contributions": summary.contributions.iter().map(|(id, t)| json!({"preset": id.as_str(), "m": t})).collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut s = String::new();
                for (id, t) in &summary.contributions {
                    let _ = writeln!(s, "{id}\t{t}");
                }
                let _ = writeln!(s, "threshold {}", summary.threshold);
                s
            }
        };
        return Ok((0, out));
    }
    if let Some(name) = &a.pipeline {
        let pl = match name.as_str() {
            "main" => theorems::main_pipeline()?,
            "corollary" => theorems::corollary_pipeline()?,
            other => return Err(Failure::Usage(format!("unknown pipeline `{other}`; use main or corollary"))),
        };
        let out = match fmt {
            Format::Json => pretty(&serde_json::to_value(&pl).expect("json")),
            Format::Text => {
                let mut s = String::new();
                for st in &pl.steps {
                    let _ = writeln!(s, "{}: {}", st.label, st.value);
                }
                s
            }
        };
        return Ok((0, out));
    }
    if let Some(text) = &a.beta {
        let parts = text
            .split(',')
            .enumerate()
            .map(|(i, p)| p.trim().parse::<i64>().map_err(|_| ParseError::new(i, format!("invalid integer `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let (m0, p, t0) = match parts[..] {
            [m0, p] => (m0, p, 1),
            [m0, p, t0] => (m0, p, t0),
            _ => return Err(Failure::Usage("--beta takes m0,p or m0,p,t0".into())),
        };
        let seq = beta_sequence(m0, p, t0, a.n)?;
        let terms: Vec<String> = seq.terms().iter().map(fr).collect();
        let out = match fmt {
            Format::Json => pretty(&json!({"m0": m0, "p": p, "t0": t0, "terms": terms, "limit": fr(&seq.limit())})),
            Format::Text => format!("{}\nlimit {}\n", terms.join(" "), fr(&seq.limit())),
        };
        return Ok((0, out));
    }

    let (sc, notes): (Scenario, &[&str]) = match (&a.preset, &a.scenario) {
        (Some(id), None) => {
            let id: PresetId = id.parse()?;
            let m0 = a.m0.ok_or_else(|| Failure::Usage("--preset needs --m0".into()))?;
            (presets::preset(id, m0)?, id.notes())
        }
        (None, Some(text)) => (text.parse()?, &[]),
        _ => {
            return Err(Failure::Usage("give --preset with --m0, --scenario, --theorem44, --pipeline or --beta".into()))
        }
    };
    let res = match &a.schedule {
        Some(list) => {
            let schedule = list
                .split(',')
                .map(|m| m.trim().parse::<i64>().map_err(|_| ParseError::new(0, format!("invalid m `{m}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            bounds::run_schedule(&sc, &schedule)?
        }
        None => bounds::min_birational_m(&sc, a.m_hi.unwrap_or_else(|| bounds::default_m_hi(&sc)))?,
    };
    let out = match fmt {
        Format::Json => pretty(&trace_json(&sc, &res, notes)),
        Format::Text => trace_text(&sc, &res, notes),
    };
    Ok((0, out))
}

fn cmd_verify(a: &VerifyArgs, fmt: Format) -> CmdResult {
    let mut harness = Harness::new();
    if let Some(g) = &a.filter {
        harness = harness.filter(g.clone());
    }
    let report = harness.run();
    if report.checks.is_empty() {
        return Err(Failure::Usage(format!("no checks in group `{}`", a.filter.as_deref().unwrap_or(""))));
    }
    let out = match fmt {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    Ok((if report.all_passed() { 0 } else { 1 }, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), (2, 5));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert_eq!(parse_range("2..x").unwrap_err().position, 3);
        assert!(parse_range("5..2").is_err());
    }

    #[test]
    fn pm_lists() {
        assert_eq!(parse_pm("2=1,3=2").unwrap(), vec![(2, 1), (3, 2)]);
        assert_eq!(parse_pm("2=1,3").unwrap_err().position, 4);
        assert_eq!(parse_pm("2=1,3=x").unwrap_err().position, 6);
    }
}
