use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ekrm::chartable::CharacterTable;
use ekrm::clique::SearchBudget;
use ekrm::group::ConjugacyClasses;
use ekrm::job::{parse_group, run_job, Budgets, Check, JobSpec, OutputFormat};
use ekrm::peisert::{build_peisert, parse_reps, peisert_report};
use ekrm::reproduce::reproduce;

#[derive(Parser)]
#[command(
    name = "ekrm",
    version,
    about = "Exact EKR and EKR-module verification for permutation groups"
)]
struct Cli {
    /// Worker threads for clique search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct BudgetArgs {
    /// Clique-search node limit (default from EKRMOD_NODE_LIMIT or 50000000).
    #[arg(long)]
    node_limit: Option<u64>,
    /// Wall-clock limit for the clique search, in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    /// Largest group order that is enumerated element by element.
    #[arg(long)]
    element_limit: Option<u64>,
    /// Largest group order for the rational span oracle.
    #[arg(long)]
    oracle_limit: Option<u64>,
}

impl BudgetArgs {
    fn budgets(&self) -> ekrm::Result<Budgets> {
        let mut b = Budgets::from_env()?;
        if let Some(n) = self.node_limit {
            b.node_limit = n;
        }
        b.time_limit = self.time_limit.map(Duration::from_secs);
        if let Some(n) = self.element_limit {
            b.element_limit = n;
        }
        if let Some(n) = self.oracle_limit {
            b.oracle_limit = n;
        }
        Ok(b)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide the EKR, strict-EKR and EKR-module properties of G acting on [G:H].
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        check: Vec<CheckArg>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify given class weights, or search for a spectral certificate.
    Certify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// Weights as `perm=rational; …`; omitted means search.
        #[arg(long)]
        weights: Option<String>,
        /// Generators of the intersecting set to certify (default: the subgroup).
        #[arg(long)]
        set: Option<String>,
        /// Target size for the search (default: |H| on the faithful quotient).
        #[arg(long)]
        target: Option<u64>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the exact character table of a group.
    Chartab {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 20_000)]
        element_limit: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Spectrum, Delsarte bound, maximum cliques and canonical span of a Peisert-type graph.
    Peisert {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        /// Coset representatives as powers of the field generator, e.g. `g^0,g^3`.
        #[arg(long)]
        reps: Option<String>,
        #[arg(long, value_enum, default_value = "all")]
        check: PeisertCheck,
        #[arg(long, default_value_t = 4096)]
        vertex_limit: usize,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Recompute every worked example and compare with the expected values.
    Reproduce {
        #[arg(default_value = "paper")]
        suite: String,
        /// Append a fixture that must fail, to test the harness.
        #[arg(long)]
        inject_failure: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Ekr,
    Strict,
    Module,
    Certificate,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum PeisertCheck {
    Spectrum,
    All,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Check {
        match c {
            CheckArg::Ekr => Check::Ekr,
            CheckArg::Strict => Check::Strict,
            CheckArg::Module => Check::Module,
            CheckArg::Certificate => Check::Certificate,
            CheckArg::All => Check::All,
        }
    }
}

fn output_format(f: Format) -> OutputFormat {
    match f {
        Format::Json => OutputFormat::Json,
        Format::Table => OutputFormat::Table,
    }
}

/// Writes to stdout; a closed pipe (`ekrm ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json<T: serde::Serialize>(value: &T) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("serializable")
    ));
}

fn job_command(job: JobSpec) -> ekrm::Result<ExitCode> {
    let report = run_job(&job)?;
    match job.format {
        OutputFormat::Json => emit(&format!("{}\n", report.to_json())),
        OutputFormat::Table => emit(&report.to_table()),
    }
    Ok(if report.exhaustive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> ekrm::Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            group,
            subgroup,
            check,
            budget,
            format,
        } => {
            let mut job = JobSpec::new(&group, &subgroup);
            job.checks = check.into_iter().map(Check::from).collect();
            job.budgets = budget.budgets()?;
            job.format = output_format(format);
            job_command(job)
        }
        Command::Certify {
            group,
            subgroup,
            weights,
            set,
            target,
            budget,
            format,
        } => {
            let mut job = JobSpec::new(&group, &subgroup);
            job.checks = vec![Check::Certificate];
            job.budgets = budget.budgets()?;
            job.weights = weights;
            job.certificate_set = set;
            job.target = target;
            job.format = output_format(format);
            job_command(job)
        }
        Command::Chartab {
            group,
            element_limit,
            format,
        } => {
            let g = parse_group(&group)?;
            let table = CharacterTable::compute(std::sync::Arc::new(ConjugacyClasses::compute(
                &g,
                element_limit,
            )?))?;
            let export = table.export();
            match format {
                Format::Json => print_json(&export),
                Format::Table => emit(&export.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Peisert {
            q,
            m,
            reps,
            check,
            vertex_limit,
            node_limit,
        } => {
            let reps = reps.as_deref().map(parse_reps).transpose()?;
            let graph = build_peisert(q, m, reps.as_deref())?;
            match check {
                PeisertCheck::Spectrum => {
                    print_json(&serde_json::json!({
                        "q": q,
                        "m": m,
                        "reps": graph.reps(),
                        "spectrum": graph.spectrum(),
                        "delsarte_bound": graph.delsarte_bound().ok(),
                    }));
                }
                PeisertCheck::All => {
                    let budget = SearchBudget {
                        node_limit: node_limit.unwrap_or(Budgets::from_env()?.node_limit),
                        ..SearchBudget::default()
                    };
                    let report = peisert_report(&graph, vertex_limit, 400, budget)?;
                    print_json(&report);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce {
            suite,
            inject_failure,
            format,
        } => {
            let report = reproduce(&suite, inject_failure)?;
            match format {
                Format::Json => print_json(&report),
                Format::Table => {
                    for line in report.lines() {
                        emit(&format!("{line}\n"));
                    }
                    let failed = report.fixtures.iter().filter(|f| !f.passed).count();
                    emit(&format!(
                        "{} fixtures, {failed} failed\n",
                        report.fixtures.len()
                    ));
                }
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, ekrm::Error::Budget { .. }) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
