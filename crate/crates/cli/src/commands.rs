use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use grnorm_core::ade::{ade_parametrization, verify_ade, AdeVerification};
use grnorm_core::diagram::{chain_frame, render_chain_svg, render_chain_text, render_semigroup_text};
use grnorm_core::{gr_chain, global_n, is_symmetric, AdeType, AlgebroidCurve, ChainReport};
use rayon::prelude::*;
use thiserror::Error;

use crate::parse::{parse_curve, ParseError};
use crate::report::{CurveReport, Report, VerificationReport};
use crate::{Command, Format, Output, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Core(#[from] grnorm_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 1 when a computation itself went wrong.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(grnorm_core::Error::Inconsistent(_) | grnorm_core::Error::NonTermination { .. }) => {
                ExitCode::from(1)
            }
            _ => ExitCode::from(2),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct NamedCurve {
    name: String,
    ring: AlgebroidCurve,
}

fn load_file(path: &Path, box_override: Option<u32>) -> Result<NamedCurve> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let spec = parse_curve(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })?;
    let start = box_override.or(spec.provisional_box);
    let ring = AlgebroidCurve::from_parametrization_with_box(spec.elements(), spec.branches, start)?;
    Ok(NamedCurve { name: spec.name, ring })
}

fn load_ade(name: &str, box_override: Option<u32>) -> Result<NamedCurve> {
    let ade: AdeType = name.parse()?;
    let (gens, s) = ade_parametrization(ade)?;
    let ring = AlgebroidCurve::from_parametrization_with_box(gens, s, box_override)?;
    Ok(NamedCurve { name: ade.to_string(), ring })
}

fn load(source: &Source) -> Result<Vec<NamedCurve>> {
    if source.inputs.is_empty() && source.ades.is_empty() {
        return Err(CliError::Usage("give at least one --input FILE or --ade TYPE".into()));
    }
    let mut out = Vec::new();
    for path in &source.inputs {
        out.push(load_file(path, source.box_)?);
    }
    for name in &source.ades {
        out.push(load_ade(name, source.box_)?);
    }
    Ok(out)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(output: &Output, report: &Report, text: String) -> Result<()> {
    let body = match output.format {
        Format::Text => text,
        Format::Structured => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
    };
    emit(output.out.as_ref(), &body)
}

fn tuple<T: std::fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn branch_word(s: usize) -> &'static str {
    if s == 1 {
        "branch"
    } else {
        "branches"
    }
}

fn semigroup_text(curve: &NamedCurve, diagram: bool) -> Result<String> {
    let ring = &curve.ring;
    let sg = ring.semigroup();
    let s = ring.branch_count();
    let mut out = String::new();
    let members: Vec<String> = sg.members().iter().map(|m| tuple(m)).collect();
    let _ = writeln!(out, "curve {} ({s} {})", curve.name, branch_word(s));
    let _ = writeln!(out, "  gamma      {}", tuple(ring.gamma()));
    let _ = writeln!(out, "  tau        {}", tuple(&ring.tau()));
    let _ = writeln!(out, "  delta      {}", ring.delta_invariant());
    let _ = writeln!(out, "  members in [0,gamma] {{{}}}", members.join(", "));
    let _ = writeln!(out, "  symmetric  {}", yes_no(is_symmetric(sg)));
    if diagram {
        let frame: Vec<u32> = ring.gamma().iter().map(|g| g + 1).collect();
        out.push_str(&render_semigroup_text(sg, &frame)?);
    }
    Ok(out)
}

fn chain_text(name: &str, report: &ChainReport, diagram: bool) -> Result<String> {
    let a = &report.steps[0].ring;
    let s = a.branch_count();
    let mut out = String::new();
    let _ = writeln!(out, "curve {name} ({s} {}): n = {}", branch_word(s), report.n);
    let _ = writeln!(
        out,
        "  {:<4} {:<18} {:<12} {:<12} {:>5} {:>8}  {:<10} criterion",
        "step", "type", "gamma", "tau", "delta", "dim/prev", "gorenstein"
    );
    for step in &report.steps {
        let dim = if step.index == 0 { "-".to_string() } else { step.dim_over_previous.to_string() };
        let _ = writeln!(
            out,
            "  {:<4} {:<18} {:<12} {:<12} {:>5} {:>8}  {:<10} {}",
            format!("A{}", step.index),
            step.recognized.to_string(),
            tuple(step.ring.gamma()),
            tuple(&step.ring.tau()),
            step.delta,
            dim,
            yes_no(step.gorenstein),
            if step.gr_criterion { "holds" } else { "FAILS" }
        );
    }
    if diagram {
        out.push('\n');
        out.push_str(&render_chain_text(name, report)?);
    }
    Ok(out)
}

fn cmd_semigroup(source: &Source, output: &Output, diagram: bool) -> Result<ExitCode> {
    let curves = load(source)?;
    let mut report = Report::new("semigroup");
    let mut text = String::new();
    for curve in &curves {
        report.curves.push(CurveReport::semigroup(&curve.name, &curve.ring));
        text.push_str(&semigroup_text(curve, diagram)?);
    }
    emit_report(output, &report, text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_normalize(source: &Source, output: &Output, jobs: Option<usize>, diagram: bool) -> Result<ExitCode> {
    let curves = load(source)?;
    let chains: Vec<ChainReport> =
        pool(jobs)?.install(|| curves.par_iter().map(|c| gr_chain(&c.ring)).collect::<grnorm_core::Result<_>>())?;
    let mut report = Report::new("normalize");
    let mut text = String::new();
    for (curve, chain) in curves.iter().zip(&chains) {
        report.curves.push(CurveReport::chain(&curve.name, chain));
        text.push_str(&chain_text(&curve.name, chain, diagram)?);
    }
    if curves.len() > 1 {
        let rings: Vec<AlgebroidCurve> = curves.iter().map(|c| c.ring.clone()).collect();
        let n = global_n(&rings)?;
        report.global_n = Some(n);
        let _ = writeln!(text, "global n = {n}");
    }
    emit_report(output, &report, text)?;
    Ok(ExitCode::SUCCESS)
}

/// `9`, `4..12` or `4..=12`; both ends inclusive.
fn parse_range(text: &str) -> Result<(u32, u32)> {
    let bad = || CliError::Usage(format!("invalid index range '{text}'"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(text)?, num(text)?),
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn selected_types(all: bool, family: Option<char>, range: Option<&str>) -> Result<Vec<AdeType>> {
    match (all, family, range) {
        (true, None, None) | (false, None, None) => Ok(AdeType::sweep()),
        (true, _, _) => Err(CliError::Usage("--all cannot be combined with --type or --n".into())),
        (false, None, Some(_)) => Err(CliError::Usage("--n needs --type".into())),
        (false, Some(f), range) => {
            let f = f.to_ascii_uppercase();
            let (lo, hi) = match range {
                Some(r) => parse_range(r)?,
                None => {
                    let family: Vec<u32> = AdeType::sweep()
                        .into_iter()
                        .filter(|t| t.to_string().starts_with(f))
                        .map(AdeType::index)
                        .collect();
                    match (family.first(), family.last()) {
                        (Some(&lo), Some(&hi)) => (lo, hi),
                        _ => return Err(CliError::Core(grnorm_core::Error::InvalidType(f.to_string()))),
                    }
                }
            };
            (lo..=hi).map(|n| AdeType::new(f, n).map_err(CliError::from)).collect()
        }
    }
}

fn verification_text(v: &AdeVerification) -> String {
    let mut out = String::new();
    let n = v.chain.as_ref().map_or("?".to_string(), |c| c.n.to_string());
    let _ = writeln!(out, "{:<4} n = {:<2} {}", v.ade, n, if v.passed() { "PASS" } else { "FAIL" });
    for c in v.checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(out, "       {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    out
}

fn cmd_verify_ade(all: bool, family: Option<char>, range: Option<&str>, output: &Output, jobs: Option<usize>) -> Result<ExitCode> {
    let types = selected_types(all, family, range)?;
    let results: Vec<AdeVerification> =
        pool(jobs)?.install(|| types.par_iter().map(|&t| verify_ade(t)).collect::<grnorm_core::Result<_>>())?;
    let mut report = Report::new("verify-ade");
    let mut text = String::new();
    for v in &results {
        report.verifications.push(VerificationReport::of(v));
        text.push_str(&verification_text(v));
    }
    let passed = results.iter().filter(|v| v.passed()).count();
    let _ = writeln!(text, "{passed} of {} types passed", results.len());
    emit_report(output, &report, text)?;
    Ok(if passed == results.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_diagram(source: &Source, step: Option<usize>, svg: bool, out: Option<&PathBuf>) -> Result<ExitCode> {
    if svg && step.is_some() {
        return Err(CliError::Usage("--step applies to the text grid only".into()));
    }
    let mut text = String::new();
    for curve in load(source)? {
        let chain = gr_chain(&curve.ring)?;
        if svg {
            text.push_str(&render_chain_svg(&curve.name, &chain)?);
            continue;
        }
        match step {
            None => text.push_str(&render_chain_text(&curve.name, &chain)?),
            Some(k) => {
                let Some(st) = chain.steps.get(k) else {
                    return Err(CliError::Usage(format!("{} has only steps 0..={}", curve.name, chain.n)));
                };
                let _ = writeln!(
                    text,
                    "{}: A{k}  type {}  gamma={}  tau={}",
                    curve.name,
                    st.recognized,
                    tuple(st.ring.gamma()),
                    tuple(&st.ring.tau())
                );
                text.push_str(&render_semigroup_text(st.ring.semigroup(), &chain_frame(&chain))?);
            }
        }
    }
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Semigroup { source, output, diagram } => cmd_semigroup(&source, &output, diagram),
        Command::Normalize { source, output, jobs, diagram } => cmd_normalize(&source, &output, jobs, diagram),
        Command::VerifyAde { all, family, range, output, jobs } => {
            cmd_verify_ade(all, family, range.as_deref(), &output, jobs)
        }
        Command::Diagram { source, step, svg, out } => cmd_diagram(&source, step, svg, out.as_ref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..12").unwrap(), (4, 12));
        assert_eq!(parse_range("4..=12").unwrap(), (4, 12));
        assert_eq!(parse_range("9").unwrap(), (9, 9));
        assert!(parse_range("12..4").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn type_selection() {
        assert_eq!(selected_types(true, None, None).unwrap().len(), 24);
        assert_eq!(selected_types(false, Some('D'), Some("4..12")).unwrap().len(), 9);
        assert_eq!(selected_types(false, Some('e'), None).unwrap(), vec![AdeType::E(6), AdeType::E(7), AdeType::E(8)]);
        assert!(selected_types(false, Some('E'), Some("9")).is_err());
        assert!(selected_types(false, None, Some("9")).is_err());
    }
}
