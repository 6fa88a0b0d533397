use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use defeasible_core::analysis::{analyze, Regime};
use defeasible_core::gen::{generate, GenSpec, KindMix, Shape};
use defeasible_core::io::{emit_conclusions, load_theory, serialize_theory, Format};
use defeasible_core::pipeline::{self, Route};
use defeasible_core::{bench, engine, ClosureSet, Tag, Theory};

#[derive(Parser)]
#[command(
    name = "dl",
    version,
    about = "Defeasible logic inference and analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and ground a theory, printing the ground rules.
    Parse { file: PathBuf },
    /// Structural report, decisiveness and regime certificates.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Only structural certificates; never compute closures.
        #[arg(long)]
        syntactic: bool,
    },
    /// Conclusions for one tag, or `all`.
    Infer {
        file: PathBuf,
        #[arg(long)]
        logic: TagChoice,
        #[arg(long)]
        json: bool,
        /// Also list undecided literals.
        #[arg(long)]
        undecided: bool,
    },
    /// Status of one literal: plus, minus or undecided.
    Query {
        file: PathBuf,
        #[arg(long)]
        logic: Tag,
        literal: String,
    },
    /// Per-literal differences between two tags.
    Compare {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        logics: Vec<Tag>,
        #[arg(long)]
        json: bool,
    },
    /// Route a target through the certified path and run it.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        target: Tag,
        /// Print the certificate and the preconditions it rests on.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
        /// Instead of a closure, ask whether +target LITERAL is ruled out.
        #[arg(long, value_name = "LITERAL")]
        negative: Option<String>,
    },
    /// Write a random theory.
    Gen {
        #[command(flatten)]
        spec: GenArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Time every closure of a theory file or a generated theory.
    Bench {
        /// Theory file; a theory is generated from the spec flags when absent.
        file: Option<PathBuf>,
        #[command(flatten)]
        spec: GenArgs,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, default_value = "partial")]
        target: Tag,
    },
}

#[derive(Clone, Copy)]
enum TagChoice {
    One(Tag),
    All,
}

impl std::str::FromStr for TagChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(TagChoice::All);
        }
        s.parse()
            .map(TagChoice::One)
            .map_err(|e| format!("{e} (or `all`)"))
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 8)]
    atoms: usize,
    #[arg(long, default_value_t = 16)]
    rules: usize,
    #[arg(long, default_value_t = 2)]
    facts: usize,
    #[arg(long, default_value_t = 2)]
    max_body: usize,
    #[arg(long, default_value_t = 1)]
    strict: u32,
    #[arg(long, default_value_t = 4)]
    defeasible: u32,
    #[arg(long, default_value_t = 1)]
    defeater: u32,
    #[arg(long, default_value_t = 0.3)]
    superiority_density: f64,
    #[arg(long, default_value = "free")]
    shape: Shape,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            atoms: self.atoms,
            rules: self.rules,
            facts: self.facts,
            max_body: self.max_body,
            kind_mix: KindMix {
                strict: self.strict,
                defeasible: self.defeasible,
                defeater: self.defeater,
            },
            superiority_density: self.superiority_density,
            shape: self.shape,
            seed: self.seed,
        }
    }
}

fn load(path: &Path) -> Result<Theory> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    match load_theory(&text) {
        Ok((theory, _)) => Ok(theory),
        Err(e) => bail!("{}: {e}", path.display()),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn run(cli: Cli, out: &mut String) -> Result<()> {
    match cli.command {
        Command::Parse { file } => {
            let theory = load(&file)?;
            write!(out, "{}", serialize_theory(&theory))?;
        }
        Command::Analyze {
            file,
            json: as_json,
            syntactic,
        } => {
            let theory = load(&file)?;
            let report = analyze(&theory, !syntactic);
            if as_json {
                writeln!(out, "{}", json(&report)?)?;
            } else {
                print_analysis(&report, out)?;
            }
        }
        Command::Infer {
            file,
            logic,
            json: as_json,
            undecided,
        } => {
            let theory = load(&file)?;
            let set = match logic {
                TagChoice::All => engine::all_closures(&theory)?,
                TagChoice::One(tag) => engine::closure(&theory, tag)?.restrict(&[tag]),
            };
            let format = if as_json { Format::Json } else { Format::Text };
            write!(
                out,
                "{}",
                emit_conclusions(&theory, &set, format, undecided)
            )?;
            if as_json {
                writeln!(out)?;
            }
        }
        Command::Query {
            file,
            logic,
            literal,
        } => {
            let theory = load(&file)?;
            let status = engine::Reasoner::new(&theory).query_named(logic, &literal)?;
            writeln!(out, "{status}")?;
        }
        Command::Compare {
            file,
            logics,
            json: as_json,
        } => {
            if logics.len() != 2 {
                Cli::command()
                    .error(
                        ErrorKind::WrongNumberOfValues,
                        "--logics takes exactly two tags, e.g. partial_par,partial",
                    )
                    .exit();
            }
            let theory = load(&file)?;
            let diff = pipeline::compare(&theory, logics[0], logics[1])?;
            if as_json {
                writeln!(out, "{}", json(&diff)?)?;
            } else {
                writeln!(
                    out,
                    "{} vs {}: {} agree, {} differ",
                    diff.left,
                    diff.right,
                    diff.agreements,
                    diff.differences.len()
                )?;
                for d in &diff.differences {
                    writeln!(
                        out,
                        "  {}: {} {} / {} {}",
                        d.literal, diff.left, d.left, diff.right, d.right
                    )?;
                }
                let containment = match (diff.left_positives_in_right, diff.right_positives_in_left)
                {
                    (true, true) => "equal",
                    (true, false) => "left contained in right",
                    (false, true) => "right contained in left",
                    (false, false) => "incomparable",
                };
                writeln!(out, "positives: {containment}")?;
            }
        }
        Command::Pipeline {
            file,
            target,
            explain,
            json: as_json,
            negative,
        } => {
            let theory = load(&file)?;
            match negative {
                Some(name) => {
                    let lit = theory
                        .find_literal(&name)
                        .with_context(|| format!("unknown literal `{name}`"))?;
                    let answer = pipeline::negative_query_filter(&theory, target, lit)?;
                    if as_json {
                        writeln!(out, "{}", json(&answer)?)?;
                    } else {
                        writeln!(out, "{}", wire_name(answer))?;
                    }
                }
                None => run_pipeline(&theory, target, explain, as_json, out)?,
            }
        }
        Command::Gen { spec, output } => {
            let theory = generate(&spec.spec())?;
            fs::write(&output, serialize_theory(&theory))
                .with_context(|| format!("cannot write {}", output.display()))?;
        }
        Command::Bench {
            file,
            spec,
            repeat,
            target,
        } => {
            let theory = match file {
                Some(path) => load(&path)?,
                None => generate(&spec.spec())?,
            };
            let record = bench::bench_theory(&theory, target, repeat)?;
            writeln!(out, "{}", json(&record)?)?;
        }
    }
    Ok(())
}

fn run_pipeline(
    theory: &Theory,
    target: Tag,
    explain: bool,
    as_json: bool,
    out: &mut String,
) -> Result<()> {
    let plan = pipeline::plan(theory, target)?;
    let run = pipeline::execute(theory, &plan)?;
    if as_json {
        let value = serde_json::json!({
            "plan": plan,
            "provenance": run.provenance,
        });
        writeln!(out, "{}", json(&value)?)?;
        return Ok(());
    }
    let p = &run.provenance;
    writeln!(out, "route {}", plan.route)?;
    if let Some(basis) = p.basis {
        writeln!(out, "basis {basis}")?;
    }
    if explain {
        match &plan.certificate {
            Some(cert) => {
                writeln!(
                    out,
                    "regime {} ({} against {})",
                    cert.regime, cert.target, cert.via
                )?;
                for d in cert.basis.iter().flat_map(|b| &b.preconditions) {
                    writeln!(out, "  holds: {} [{}]", d.condition, wire_name(d.how))?;
                }
            }
            None => writeln!(out, "regime {} (no certificate applies)", Regime::None)?,
        }
        if plan.route != Route::Direct {
            writeln!(out, "seeded {} residual {}", p.seeded, p.residual)?;
        }
        for phase in &p.phases {
            writeln!(out, "  {} {}us", phase.name, phase.micros)?;
        }
    }
    let only: ClosureSet = run.closures.restrict(&[target]);
    write!(
        out,
        "{}",
        emit_conclusions(theory, &only, Format::Text, false)
    )?;
    Ok(())
}

/// The serialized name of a unit enum variant, e.g. `certified_syntactic`.
fn wire_name<T: serde::Serialize>(value: T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn print_analysis(
    r: &defeasible_core::analysis::AnalysisReport,
    out: &mut String,
) -> std::fmt::Result {
    writeln!(
        out,
        "{} atoms, {} rules, {} facts, {} superiority pairs",
        r.atoms, r.rules, r.facts, r.superiority_pairs
    )?;
    let flags = [
        ("hierarchical", r.hierarchical),
        ("semi-hierarchical", r.semi_hierarchical),
        ("strict rules semi-hierarchical", r.strict_semi_hierarchical),
        (
            "strict and defeasible rules semi-hierarchical",
            r.sd_semi_hierarchical,
        ),
        ("fact-deficient", r.fact_deficient),
        ("empty superiority", r.empty_superiority),
    ];
    for (name, v) in flags {
        writeln!(out, "{name}: {}", if v { "yes" } else { "no" })?;
    }
    let lists = [
        ("looping literals", &r.looping_literals),
        ("self loops", &r.self_loops),
        ("strict loops", &r.strict_loops),
        ("conflicted literals", &r.conflicted_literals),
    ];
    for (name, v) in lists {
        if !v.is_empty() {
            writeln!(out, "{name}: {}", v.join(", "))?;
        }
    }
    if let Some(layers) = &r.atom_layers {
        let shown: Vec<String> = layers.iter().map(|(a, l)| format!("{a}={l}")).collect();
        writeln!(out, "layers: {}", shown.join(", "))?;
    }
    for d in &r.decisiveness {
        write!(
            out,
            "{}-decisive: {} ({})",
            d.tag,
            wire_name(d.status),
            d.basis
        )?;
        if !d.witnesses.is_empty() {
            write!(out, " undecided: {}", d.witnesses.join(", "))?;
        }
        writeln!(out)?;
    }
    for c in &r.regimes {
        match &c.basis {
            Some(b) => writeln!(out, "{}: {} via {} [{}]", c.target, c.regime, c.via, b.name)?,
            None => writeln!(out, "{}: {}", c.target, c.regime)?,
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
