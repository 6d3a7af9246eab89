use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use amst::adapters::{self, ChuSpace, InformationSystem, ObjectFreeCategory, Quiver};
use amst::bits::all_sets;
use amst::compactness::{self, CheckOptions, Mutation};
use amst::counterexample::verify_counterexample;
use amst::cpl::{self, CplSpec};
use amst::harness::{run_suite, summarize, SuiteConfig, THEOREMS};
use amst::rng::DEFAULT_SEED;
use amst::{Error, Exec, FiniteAmst, LogicalStructure};

#[derive(Parser)]
#[command(name = "amst", version, about = "Checks finite abstract model structures and the theorems about their compactness")]
struct Cli {
    /// Seed for every sampler.
    #[arg(long, global = true, env = "AMST_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Info,
    Chu,
    Quiver,
    Logic,
    Category,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Operators, normality and compactness of an amst JSON file.
    Check { file: PathBuf },
    /// Runs the theorem suite on random instances.
    Theorems {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long = "max-l", default_value_t = 4)]
        max_l: usize,
        #[arg(long = "max-m", default_value_t = 5)]
        max_m: usize,
        /// Comma-separated theorem ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Injects a known bug into the compactness cross-check.
        #[arg(long)]
        inject: Option<String>,
        /// Prints every verdict as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// The canonical normal amst of a Tarski-type consequence JSON file.
    Canon { file: PathBuf },
    /// Encodes a neighbouring structure as an amst.
    Convert {
        #[arg(long, value_enum)]
        from: Source,
        file: PathBuf,
    },
    /// Valuation amst of formulas, optionally checking the ultravaluation theorem on them.
    Cpl {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ';', required = true)]
        formulas: Vec<String>,
        #[arg(long = "check-ultravaluation")]
        check_ultravaluation: bool,
    },
    /// Verifies the infinite non-compact example over the naturals.
    Counterexample {
        #[arg(long, default_value_t = 16)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
    },
    /// Runs larger random instances of every theorem.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

enum Failure {
    Usage(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn check(a: &FiniteAmst, cli: &Cli) -> Result<Value, Failure> {
    let n = a.num_sentences();
    let modc: serde_json::Map<String, Value> = if n <= 6 {
        all_sets(n).map(|g| (a.fmt_sentences(g), json!(a.fmt_models(&a.mod_of(g))))).collect()
    } else {
        Default::default()
    };
    let theories: serde_json::Map<String, Value> = (0..a.num_models())
        .map(|m| (a.model_labels()[m].clone(), json!(a.fmt_sentences(a.theory(m)))))
        .collect();
    let normal = a.is_normal();
    let compact = a.is_compact();
    let mut out = json!({
        "models": a.num_models(),
        "sentences": n,
        "normal": normal.holds(),
        "compact": compact.holds(),
        "l_satisfiable": a.is_satisfiable(a.full()).is_some(),
        "theories": theories,
        "mod": modc,
    });
    if let Some(w) = normal.witness() {
        out["normality_witness"] = json!({"model": a.model_labels()[w.model], "gamma": a.fmt_sentences(w.gamma)});
    }
    if let Some(g) = compact.witness() {
        out["compactness_witness"] = json!(a.fmt_sentences(*g));
    }
    if n <= amst::amst::MAX_TABLE_SENTENCES {
        let opts = CheckOptions {
            seed: cli.seed,
            exec: exec(cli),
            ..CheckOptions::default()
        };
        out["characterization"] = compactness::characterization_report(a, &opts)?.to_json();
    }
    Ok(out)
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn suite(cfg: &SuiteConfig, as_json: bool) -> Result<(), Failure> {
    let verdicts = run_suite(cfg)?;
    if as_json {
        for v in &verdicts {
            println!("{}", serde_json::to_string(v).expect("verdicts serialize"));
        }
    } else {
        for s in summarize(&verdicts) {
            println!("{:<20} verified {:>4}  vacuous {:>4}  violated {:>4}", s.theorem, s.verified, s.vacuous, s.violated);
        }
        for v in verdicts.iter().filter(|v| v.status.is_violated()) {
            println!("VIOLATION {}", serde_json::to_string(v).expect("verdicts serialize"));
        }
    }
    if verdicts.iter().any(|v| v.status.is_violated()) {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { file } => print(&check(&parse(file)?, cli)?),
        Command::Theorems {
            count,
            max_l,
            max_m,
            only,
            inject,
            json,
        } => {
            let cfg = SuiteConfig {
                seed: cli.seed,
                count: *count,
                max_models: *max_m,
                max_sentences: *max_l,
                theorems: only.clone().unwrap_or_else(|| THEOREMS.iter().map(|s| s.to_string()).collect()),
                inject: inject.as_deref().map(Mutation::parse).transpose()?,
                exec: exec(cli),
            };
            if !(1..=8).contains(max_l) || !(1..=12).contains(max_m) {
                return Err(Failure::Usage("--max-l must be in 1..=8 and --max-m in 1..=12".into()));
            }
            suite(&cfg, *json)?;
        }
        Command::Canon { file } => {
            let ls: LogicalStructure = parse(file)?;
            print(&json!(ls.canonical_normal_amst()?));
        }
        Command::Convert { from, file } => {
            let a = match from {
                Source::Info => adapters::info_system_to_amst(&parse::<InformationSystem>(file)?)?,
                Source::Chu => adapters::chu_to_amst(&parse::<ChuSpace>(file)?)?,
                Source::Quiver => adapters::quiver_to_amst(&parse::<Quiver>(file)?)?,
                Source::Logic => adapters::logical_structure_to_amst(&parse::<LogicalStructure>(file)?)?,
                Source::Category => {
                    let c: ObjectFreeCategory = parse(file)?;
                    adapters::category_to_amst(&ObjectFreeCategory::new(c.morphisms, c.compose)?)?
                }
            };
            print(&json!(a));
        }
        Command::Cpl {
            vars,
            formulas,
            check_ultravaluation,
        } => {
            let parsed = formulas.iter().map(|f| cpl::parse_formula(f)).collect::<amst::Result<Vec<_>>>()?;
            let spec = CplSpec {
                variables: vars.clone(),
                formulas: formulas.clone(),
            };
            let a = spec.to_amst()?;
            if !check_ultravaluation {
                print(&json!(a));
                return Ok(());
            }
            let (checked, violations) = cpl::ultravaluation_check_formulas(vars, &parsed, 3)?;
            print(&json!({"amst": a, "ultravaluation": {"checked": checked, "violations": violations}}));
            if !violations.is_empty() {
                return Err(Failure::Violation);
            }
        }
        Command::Counterexample { bound, format } => {
            let r = verify_counterexample(*bound)?;
            if *format != Format::Json {
                print!("{}", r.to_text());
            }
            if *format != Format::Text {
                print(&r.to_json());
            }
            if !r.all_hold() {
                return Err(Failure::Violation);
            }
        }
        Command::Fuzz { budget } => {
            let per = budget.div_ceil(THEOREMS.len() - 1).max(1);
            let cfg = SuiteConfig {
                seed: cli.seed,
                count: per,
                max_models: 7,
                max_sentences: 5,
                exec: exec(cli),
                ..SuiteConfig::default()
            };
            suite(&cfg, false)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
