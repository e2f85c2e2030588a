use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quip_core::defaults::build_distribution;
use quip_core::humor::{analyze, analyze_cascade, Statement};
use quip_core::kbio::{parse_kb, KbDocument};
use quip_core::km::{check_km_postulates, Postulate};
use quip_core::orders::{OrderMethod, Reviser};
use quip_core::report::{render_cascade_json, render_degree, render_report, ReportFormat};
use quip_core::Error;

#[derive(Parser)]
#[command(
    name = "quip",
    version,
    about = "Default reasoning and joke analysis over propositional knowledge bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Bo,
    Lex,
}

impl From<Order> for OrderMethod {
    fn from(o: Order) -> Self {
        match o {
            Order::Bo => OrderMethod::BestOut,
            Order::Lex => OrderMethod::Lex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a statement (context, punchline).
    Analyze {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        context: String,
        #[arg(long)]
        punchline: String,
        #[arg(long, value_enum, default_value = "lex")]
        order: Order,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Analyse a cascade: step k is (part1 & ... & partk, partk+1).
    Cascade {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long = "part", required = true, num_args = 1)]
        parts: Vec<String>,
        #[arg(long, value_enum, default_value = "lex")]
        order: Order,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the default strata and the layers of the possibility distribution.
    Stratify {
        #[arg(long)]
        kb: PathBuf,
    },
    /// Print the models of a formula under the strict rules and its preferred models.
    Models {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Randomised check of the revision postulates.
    CheckKm {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long, value_enum, default_value = "lex")]
        order: Order,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Breach(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::InconsistentStrict | Error::InconsistentDefaults { .. }) => 3,
            Failure::Core(_) | Failure::Io(..) => 2,
            Failure::Breach(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Breach(msg) => msg.clone(),
        }
    }
}

fn load(path: &Path) -> Result<KbDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(parse_kb(&text)?)
}

fn list(models: &[String]) -> String {
    if models.is_empty() {
        "(none)".to_string()
    } else {
        models.join(", ")
    }
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Analyze {
            kb,
            context,
            punchline,
            order,
            format,
        } => {
            let doc = load(&kb)?;
            let st = Statement::new(doc.formula(&context)?, doc.formula(&punchline)?);
            let analysis = analyze(&doc.kb, &st, order.into())?;
            out.push_str(&render_report(&analysis, format.into()));
        }
        Command::Cascade {
            kb,
            parts,
            order,
            format,
        } => {
            let doc = load(&kb)?;
            let formulas = parts
                .iter()
                .map(|p| doc.formula(p))
                .collect::<Result<Vec<_>, _>>()?;
            let steps = analyze_cascade(&doc.kb, &formulas, order.into())?;
            match format {
                Format::Json => {
                    out.push_str(&render_cascade_json(&steps));
                }
                Format::Text => {
                    for (k, step) in steps.iter().enumerate() {
                        if k > 0 {
                            out.push('\n');
                        }
                        let _ = writeln!(out, "step {}: punchline {}", k + 1, parts[k + 1]);
                        out.push_str(&render_report(step, ReportFormat::Text));
                    }
                }
            }
        }
        Command::Stratify { kb } => {
            let doc = load(&kb)?;
            let kb = &doc.kb;
            let u = kb.universe();
            let _ = writeln!(
                out,
                "atoms: {}",
                u.atoms()
                    .iter()
                    .map(|a| a.name())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let _ = writeln!(out, "strict:");
            for rule in kb.strict() {
                let _ = writeln!(out, "  {}", rule.formula.render(u));
            }
            for (rank, members) in kb.stratification().strata().iter().enumerate() {
                let _ = writeln!(out, "stratum {rank}:");
                for &i in members {
                    let _ = writeln!(out, "  {}", kb.defaults()[i].render(u));
                }
            }
            let dist = build_distribution(kb)?;
            let _ = writeln!(out, "layers (L = {}):", dist.top_level());
            for (level, models) in dist.layers() {
                let degree =
                    quip_core::defaults::Degree::new(level.into(), dist.top_level().into());
                let _ = writeln!(
                    out,
                    "  {}: {}",
                    render_degree(&degree),
                    list(&models.render(u))
                );
            }
        }
        Command::Models { kb, formula } => {
            let doc = load(&kb)?;
            let phi = doc.formula(&formula)?;
            let u = doc.kb.universe();
            let models = doc.kb.constrained_models(&phi)?;
            let _ = writeln!(out, "models: {}", list(&models.render(u)));
            for method in OrderMethod::ALL {
                let min = Reviser::new(&doc.kb, method)?.min_models(&phi)?;
                let _ = writeln!(out, "min {}: {}", method.short_name(), list(&min.render(u)));
            }
        }
        Command::CheckKm {
            kb,
            order,
            trials,
            seed,
        } => {
            let doc = load(&kb)?;
            let report = check_km_postulates(&doc.kb, order.into(), trials, seed)?;
            let _ = writeln!(
                out,
                "order {}, {} trials, seed {}",
                report.method, trials, seed
            );
            for (i, p) in Postulate::ALL.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{p}: exercised {}, violations {}",
                    report.exercised[i],
                    report.violations_of(*p)
                );
            }
            if !report.passed() {
                print!("{out}");
                let mut msg = String::new();
                for v in &report.violations {
                    let _ = writeln!(
                        msg,
                        "{} violated at trial {}: {}",
                        v.postulate, v.trial, v.detail
                    );
                    let _ = writeln!(msg, "  phi = {}", v.phi);
                    let _ = writeln!(msg, "  psi = {}", v.psi);
                }
                return Err(Failure::Breach(msg.trim_end().to_string()));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
