//! The `grl` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::fixtures::{run_fixture, FixtureReport, FIXTURE_NAMES};
use super::instance::{check_instance, CheckReport, Instance, Transform};
use super::laws::{check_laws, law_ring, LawReport, DEFAULT_SAMPLES, DEFAULT_SEED};
use super::sweep::{default_fields, parse_field, sweep, SweepReport};
use super::verify::{Status, VerificationReport, DEFAULT_BUDGET, DEFAULT_CAP};
use super::HarnessError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "grl", version, about = "Central idempotents and support groups of group-graded rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Largest subgroup closure explored before reporting exceeds-cap.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Largest number of center points tried when enumerating idempotents.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in fixtures and their expected facts.
    VerifyExamples {
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check hypotheses and conclusions on an instance file.
    Check {
        file: PathBuf,
        /// dorroh, phi, quotient:N=<gens>, restrict:H=<gens>; applied in order.
        #[arg(long = "transform")]
        transforms: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// List the central idempotents of an instance file.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Verify a generated family of instances.
    Sweep {
        /// group-rings, crossed-products, zk-graded or all.
        #[arg(long)]
        family: String,
        /// Largest group order, or largest dimension for zk-graded.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Q or Fp; repeatable. Defaults to F2, F3, F5 and Q.
        #[arg(long = "field")]
        fields: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Randomized checks of the construction laws on every fixture.
    Laws {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn status_code(statuses: impl IntoIterator<Item = Status>) -> i32 {
    let mut code = EXIT_PASS;
    for s in statuses {
        match s {
            Status::Fail => return EXIT_FAIL,
            Status::BudgetExceeded => code = EXIT_BUDGET,
            Status::Pass | Status::Unsupported => {}
        }
    }
    code
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_verification(out: &mut dyn Write, v: &VerificationReport) -> std::io::Result<()> {
    writeln!(out, "  {} over {}, graded by {}, dimension {}", v.algebra, v.field, v.group, v.dimension)?;
    let h = &v.hypotheses;
    writeln!(
        out,
        "  hypotheses: abelian={} torsion-free={} unital={} condition(i)={} condition(ii)={} strong={} non-degenerate={} principal={}",
        h.abelian,
        h.torsion_free,
        h.unital,
        h.condition_left.holds,
        h.condition_right.holds,
        h.strongly_graded,
        h.non_degenerate_right || h.non_degenerate_left,
        h.principal_component
    )?;
    match v.enumeration.count {
        Some(n) => writeln!(out, "  central idempotents: {n}")?,
        None => writeln!(
            out,
            "  central idempotents: {} ({})",
            v.enumeration.status,
            v.enumeration.detail.as_deref().unwrap_or("")
        )?,
    }
    for c in v.conclusions.iter().filter(|c| c.applies) {
        let verdict = match c.holds {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "UNDECIDED",
        };
        writeln!(out, "  {verdict} {}: {}", c.id, c.detail)?;
    }
    for o in &v.observations {
        writeln!(out, "  note: {o}")?;
    }
    writeln!(out, "  status: {}", serde_json::to_value(v.status).unwrap_or_default().as_str().unwrap_or(""))
}

fn print_fixture(out: &mut dyn Write, r: &FixtureReport) -> std::io::Result<()> {
    writeln!(out, "{} {}: {}", pass_fail(r.pass), r.name, r.description)?;
    for f in &r.facts {
        if f.pass {
            writeln!(out, "  PASS {} = {}", f.id, f.observed)?;
        } else {
            writeln!(out, "  FAIL {}: expected {}, observed {}", f.id, f.expected, f.observed)?;
        }
    }
    if let Some(v) = &r.verification {
        print_verification(out, v)?;
    }
    Ok(())
}

fn print_check(out: &mut dyn Write, r: &CheckReport) -> std::io::Result<()> {
    writeln!(out, "instance {} ({})", r.instance, r.stage)?;
    if !r.transforms.is_empty() {
        writeln!(out, "  transforms: {}", r.transforms.join(", "))?;
    }
    for e in &r.elements {
        let group = match &e.support_group.elements {
            Some(els) => format!("{{{}}}", els.join(", ")),
            None => "exceeds cap".into(),
        };
        writeln!(
            out,
            "  {} = {}: idempotent={} central={} support={{{}}} support group {}",
            e.name,
            e.element,
            e.idempotent,
            e.central,
            e.support.join(", "),
            group
        )?;
    }
    for o in &r.observations {
        writeln!(out, "  note: {o}")?;
    }
    if let Some(v) = &r.verification {
        print_verification(out, v)?;
    }
    Ok(())
}

fn print_sweep(out: &mut dyn Write, r: &SweepReport) -> std::io::Result<()> {
    let t = &r.totals;
    writeln!(out, "sweep {} over {} (max order {})", r.family, r.fields.join(", "), r.max_order)?;
    for v in r.instances.iter().filter(|v| v.status != Status::Pass) {
        writeln!(out, "  {}: {}", v.instance, serde_json::to_value(v.status).unwrap_or_default().as_str().unwrap_or(""))?;
    }
    writeln!(
        out,
        "  instances {} (pass {}, fail {}, budget exceeded {}, unsupported {}), rejected candidates {}",
        t.instances, t.pass, t.fail, t.budget_exceeded, t.unsupported, t.rejected_candidates
    )?;
    writeln!(out, "  central idempotents {}", t.central_idempotents)?;
    writeln!(
        out,
        "  torsion-free abelian: {}/{} idempotents in the principal component",
        t.torsion_free_idempotents_principal, t.torsion_free_idempotents
    )?;
    writeln!(
        out,
        "  annihilator condition: {}/{} nonzero idempotents with finite support group",
        t.condition_idempotents_finite, t.condition_idempotents
    )?;
    for (id, c) in &t.conclusions {
        writeln!(out, "  {id}: applies {} holds {} fails {}", c.applies, c.holds, c.fails)?;
    }
    Ok(())
}

fn print_laws(out: &mut dyn Write, reports: &[LawReport]) -> std::io::Result<()> {
    for r in reports {
        write!(out, "{} {} {}: {} checks", pass_fail(r.pass()), r.fixture, r.law, r.checks)?;
        match &r.first_failure {
            Some(f) => writeln!(out, ", {} failures, first at {f}", r.failures)?,
            None => writeln!(out)?,
        }
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, HarnessError> {
    match cli.command {
        Command::VerifyExamples { only, json, limits } => {
            let names: Vec<&str> = match &only {
                Some(n) => vec![n.as_str()],
                None => FIXTURE_NAMES.to_vec(),
            };
            let reports = names
                .iter()
                .map(|n| run_fixture(n, limits.cap, limits.budget))
                .collect::<Result<Vec<_>, _>>()?;
            for r in &reports {
                print_fixture(out, r)?;
            }
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            if reports.iter().any(|r| !r.pass) {
                return Ok(EXIT_FAIL);
            }
            Ok(status_code(reports.iter().filter_map(|r| r.verification.as_ref().map(|v| v.status))))
        }
        Command::Check {
            file,
            transforms,
            json,
            limits,
        } => {
            let instance = Instance::load(&file)?;
            let transforms = transforms.iter().map(|t| t.parse()).collect::<Result<Vec<Transform>, _>>()?;
            let report = check_instance(&instance, &transforms, limits.cap, limits.budget)?;
            print_check(out, &report)?;
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            Ok(status_code([report.status]))
        }
        Command::Enumerate { file, json, limits } => {
            let instance = Instance::load(&file)?;
            let r = instance.graded()?;
            match r.central_idempotents_enumerate(limits.budget) {
                Ok(list) => {
                    writeln!(out, "{} central idempotents of {}", list.len(), instance.name())?;
                    let listed: Vec<String> = list.iter().map(|f| r.format(f)).collect();
                    for f in &listed {
                        writeln!(out, "  {f}")?;
                    }
                    if let Some(path) = json {
                        write_json(&path, &listed)?;
                    }
                    Ok(EXIT_PASS)
                }
                Err(e @ crate::graded::EnumerationError::BudgetExceeded { .. }) => {
                    writeln!(out, "{e}")?;
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(HarnessError::Input(e.to_string())),
            }
        }
        Command::Sweep {
            family,
            max_order,
            fields,
            json,
            limits,
        } => {
            let fields = if fields.is_empty() {
                default_fields()
            } else {
                fields.iter().map(|f| parse_field(f)).collect::<Result<Vec<_>, _>>()?
            };
            let report = sweep(&family, &fields, max_order, limits.cap, limits.budget)?;
            print_sweep(out, &report)?;
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            if report.conclusion_failures() > 0 || report.totals.fail > 0 {
                return Ok(EXIT_FAIL);
            }
            Ok(status_code(report.instances.iter().map(|v| v.status)))
        }
        Command::Laws {
            samples,
            seed,
            only,
            json,
        } => {
            let names: Vec<&str> = match &only {
                Some(n) => vec![n.as_str()],
                None => FIXTURE_NAMES.to_vec(),
            };
            let mut reports = Vec::new();
            for (i, name) in names.iter().enumerate() {
                let r = law_ring(name)?;
                reports.extend(check_laws(name, &r, samples, seed.wrapping_add(i as u64))?);
            }
            print_laws(out, &reports)?;
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            Ok(if reports.iter().all(LawReport::pass) { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
