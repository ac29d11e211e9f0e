use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use pomkit::envy::{is_pareto_optimal, ParetoVerdict};
use pomkit::format::{parse_instance, parse_matching, parse_ordering, write_instance, write_matching, write_ordering};
use pomkit::generate::{generate_random_instance, GeneratorParams};
use pomkit::gsdt::{derive_ordering, run_gsdt, GsdtPolicy};
use pomkit::instance::{Instance, PreferenceList, PriorityOrdering};
use pomkit::matching::{is_feasible, Matching};
use pomkit::oracle::{
    catalog_csv, check_reachability, enumerate_poms, find_beneficial_misreport, matching_text,
    verify_impossibility_scenario, MisreportOutcome, OracleError, DEFAULT_LIMIT, MISREPORT_SPACE,
};

#[derive(Parser)]
#[command(name = "pomkit", version, about = "Pareto optimal many-to-many matchings with tied preferences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the serial mechanism and print the resulting matching.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Print the per-stage trace to standard error.
        #[arg(long)]
        trace: bool,
        /// Steer path choice toward this matching (a POM of the instance).
        #[arg(long, value_name = "MATCHING")]
        guided: Option<PathBuf>,
    },
    /// Check whether a matching is Pareto optimal.
    Verify { instance: PathBuf, matching: PathBuf },
    /// List every Pareto optimal matching by brute force.
    Enumerate {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Print a priority ordering under which the mechanism can return the
    /// given Pareto optimal matching.
    OrderingFor { instance: PathBuf, matching: PathBuf },
    /// Search for a profitable misreport of one applicant.
    Misreport {
        instance: PathBuf,
        applicant: String,
        #[command(flatten)]
        ordering: OrderingArgs,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        applicants: usize,
        #[arg(long)]
        courses: usize,
        #[arg(long, default_value_t = 2)]
        max_applicant_quota: u32,
        #[arg(long, default_value_t = 2)]
        max_course_quota: u32,
        #[arg(long, default_value_t = 0.5)]
        tie_density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that every POM of an instance is an output of the mechanism.
    Reachability {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Run the case analysis on the four bundled 2x2 instances.
    Impossibility {
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct OrderingArgs {
    /// File holding the priority ordering.
    #[arg(value_name = "ORDERING_FILE", conflicts_with = "ordering")]
    file: Option<PathBuf>,
    /// Priority ordering inline, e.g. "a1 a2 a1". Defaults to each
    /// applicant's copies in a block, in file order.
    #[arg(long)]
    ordering: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Limit(#[from] OracleError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

fn usage(context: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{context}: {err}"))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(path.display(), e))
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| usage(path.display(), e))
}

fn load_matching(instance: &Instance, path: &Path) -> Result<Matching, CliError> {
    let m = parse_matching(instance, &read(path)?).map_err(|e| usage(path.display(), e))?;
    is_feasible(instance, &m).map_err(|e| usage(path.display(), e))?;
    Ok(m)
}

fn load_ordering(instance: &Instance, args: &OrderingArgs) -> Result<PriorityOrdering, CliError> {
    let sigma = match (&args.file, &args.ordering) {
        (Some(path), _) => parse_ordering(instance, &read(path)?).map_err(|e| usage(path.display(), e))?,
        (None, Some(text)) => parse_ordering(instance, text).map_err(|e| usage("--ordering", e))?,
        (None, None) => PriorityOrdering(
            instance
                .applicants()
                .flat_map(|a| std::iter::repeat_n(a, instance.applicant_quota(a) as usize))
                .collect(),
        ),
    };
    pomkit::instance::validate_ordering(instance, &sigma).map_err(|e| usage("ordering", e))?;
    Ok(sigma)
}

fn list_text(instance: &Instance, list: &PreferenceList) -> String {
    let ties: Vec<String> = list
        .ties()
        .iter()
        .map(|t| {
            let names: Vec<&str> = t.iter().map(|&c| instance.course_name(c)).collect();
            format!("( {} )", names.join(" "))
        })
        .collect();
    ties.join(" ")
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve { instance, ordering, trace, guided } => {
            let inst = load_instance(&instance)?;
            let sigma = load_ordering(&inst, &ordering)?;
            let policy = match guided {
                Some(path) => GsdtPolicy::GuidedToward(load_matching(&inst, &path)?),
                None => GsdtPolicy::BreadthFirstCanonical,
            };
            let (mu, t) = run_gsdt(&inst, &sigma, &policy).map_err(|e| usage("ordering", e))?;
            if trace {
                eprint!("{}", t.to_text(&inst));
            }
            print!("{}", write_matching(&inst, &mu));
            Ok(0)
        }
        Command::Verify { instance, matching } => {
            let inst = load_instance(&instance)?;
            let m = load_matching(&inst, &matching)?;
            match is_pareto_optimal(&inst, &m).map_err(|e| usage(matching.display(), e))? {
                ParetoVerdict::Optimal => {
                    println!("PARETO-OPTIMAL");
                    Ok(0)
                }
                ParetoVerdict::Dominated { coalition, dominating } => {
                    println!("NOT PARETO-OPTIMAL");
                    println!("coalition {}", coalition.display(&inst));
                    println!("dominating matching:");
                    print!("{}", write_matching(&inst, &dominating));
                    Ok(1)
                }
            }
        }
        Command::Enumerate { instance, limit, csv } => {
            let inst = load_instance(&instance)?;
            let cat = enumerate_poms(&inst, limit)?;
            if csv {
                print!("{}", catalog_csv(&inst, &cat));
            } else {
                println!("poms={} feasible={}", cat.poms.len(), cat.feasible_count);
                for m in &cat.poms {
                    println!("{}", matching_text(&inst, m));
                }
            }
            Ok(0)
        }
        Command::OrderingFor { instance, matching } => {
            let inst = load_instance(&instance)?;
            let m = load_matching(&inst, &matching)?;
            match derive_ordering(&inst, &m) {
                Ok(sigma) => {
                    print!("{}", write_ordering(&inst, &sigma));
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("{}: {e}", matching.display());
                    Ok(1)
                }
            }
        }
        Command::Misreport { instance, applicant, ordering, limit } => {
            let inst = load_instance(&instance)?;
            let sigma = load_ordering(&inst, &ordering)?;
            let a = inst
                .find_applicant(&applicant)
                .ok_or_else(|| CliError::Usage(format!("unknown applicant `{applicant}`")))?;
            println!("# {MISREPORT_SPACE}");
            match find_beneficial_misreport(&inst, &sigma, a, limit).map_err(|e| usage("ordering", e))? {
                MisreportOutcome::None { examined } => {
                    println!("NONE examined={examined}");
                    Ok(0)
                }
                MisreportOutcome::Found(f) => {
                    println!("FOUND applicant={applicant}");
                    println!("true list: {}", list_text(&inst, &f.true_list));
                    println!("reported list: {}", list_text(&inst, &f.fabricated));
                    println!("ordering: {}", write_ordering(&inst, &f.ordering).trim_end());
                    println!("truthful outcome: {}", matching_text(&inst, &f.truthful_outcome));
                    println!("lying outcome: {}", matching_text(&inst, &f.lying_outcome));
                    Ok(1)
                }
                MisreportOutcome::Inconclusive { examined, space } => {
                    println!("INCONCLUSIVE examined={examined} space={space}");
                    Ok(3)
                }
            }
        }
        Command::Gen { applicants, courses, max_applicant_quota, max_course_quota, tie_density, seed } => {
            if max_applicant_quota == 0 || max_course_quota == 0 {
                return Err(CliError::Usage("quotas must be at least 1".into()));
            }
            if !(0.0..=1.0).contains(&tie_density) {
                return Err(CliError::Usage("--tie-density must lie in [0, 1]".into()));
            }
            let params = GeneratorParams { applicants, courses, max_applicant_quota, max_course_quota, tie_density };
            print!("{}", write_instance(&generate_random_instance(params, seed)));
            Ok(0)
        }
        Command::Reachability { instance, limit, csv } => {
            let inst = load_instance(&instance)?;
            let report = check_reachability(&inst, limit)?;
            if csv {
                print!("{}", report.to_csv(&inst));
            } else {
                print!("{}", report.to_text(&inst));
            }
            let clean = report.all_reproduced() && report.sweep.as_ref().is_none_or(|s| s.non_poms.is_empty());
            Ok(if clean { 0 } else { 1 })
        }
        Command::Impossibility { csv } => {
            let report = verify_impossibility_scenario();
            if csv {
                print!("{}", report.to_csv());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.impossible() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
