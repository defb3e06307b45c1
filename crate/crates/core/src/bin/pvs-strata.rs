use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pvs_strata::golden::{compare, load_golden, load_golden_file, BUILTIN_ROW_COUNTS};
use pvs_strata::output::{to_csv, to_json, to_latex};
use pvs_strata::pipeline::{compute_observed, ComputeOptions, Observer, RankRange};
use pvs_strata::sieve::RepresentativeSet;
use pvs_strata::weyl::InducedActionList;
use pvs_strata::{builtin_case, parse_case_config, CaseDescriptor, DedupStrategy, Error, RankTables, Result};

#[derive(Parser)]
#[command(name = "pvs-strata", version, about = "Exact GIT stratification index sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Csv,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Built-in case 1-4, or path to a TOML case file.
    #[arg(long)]
    case: String,
    /// Simplex sizes to process, `A..B` (default: all).
    #[arg(long)]
    rank_range: Option<RankRange>,
    /// Solver threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Use quadratic pairwise deduplication instead of hashing.
    #[arg(long)]
    conformance_dedup: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the strata index set and write it out.
    Compute {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the induced Weyl permutation list here.
        #[arg(long)]
        dump_weyl: Option<PathBuf>,
        /// Write the orbit representatives for each R here.
        #[arg(long)]
        dump_reps: Option<PathBuf>,
    },
    /// Compute and compare against a golden table; exit 0 iff identical.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Golden file (default: the shipped table for built-in cases).
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Rank or unrank an R-combination of 1..N in lexicographic order.
    Combinadic {
        #[arg(value_enum)]
        mode: CombinadicMode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Rank mode: comma-separated indices. Unrank mode: the rank.
        value: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CombinadicMode {
    Rank,
    Unrank,
}

fn resolve_case(selector: &str) -> Result<(CaseDescriptor, String, Option<u32>)> {
    if let Ok(id) = selector.parse::<u32>() {
        return Ok((builtin_case(id)?, id.to_string(), Some(id)));
    }
    let path = Path::new(selector);
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((parse_case_config(&text)?, selector.to_string(), None))
}

fn options(run: &RunArgs) -> ComputeOptions {
    ComputeOptions {
        rank_range: run.rank_range,
        threads: run.threads,
        dedup: if run.conformance_dedup {
            DedupStrategy::Pairwise
        } else {
            DedupStrategy::Hashed
        },
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Default)]
struct Dumps {
    weyl: Option<String>,
    reps: String,
}

impl Observer for Dumps {
    fn weyl(&mut self, actions: &InducedActionList) {
        self.weyl = Some(actions.dump());
    }

    fn representatives(&mut self, reps: &RepresentativeSet) {
        writeln!(self.reps, "# R={} count={}", reps.r, reps.len()).unwrap();
        self.reps.push_str(&reps.dump());
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute {
            run,
            format,
            out,
            dump_weyl,
            dump_reps,
        } => {
            let (case, label, _) = resolve_case(&run.case)?;
            let mut dumps = Dumps::default();
            let (set, mut report) = compute_observed(&case, &label, &options(&run), &mut dumps)?;
            if let Some(p) = &dump_weyl {
                write_file(p, dumps.weyl.as_deref().unwrap_or_default())?;
            }
            if let Some(p) = &dump_reps {
                write_file(p, &dumps.reps)?;
            }
            let text = match format {
                Format::Json => to_json(&set),
                Format::Latex => to_latex(&set),
                Format::Csv => to_csv(&set),
            };
            match &out {
                Some(p) => write_file(p, &text)?,
                None => print!("{text}"),
            }
            report.output = out;
            eprint!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { run, golden } => {
            let (case, label, builtin) = resolve_case(&run.case)?;
            let expected = builtin.map(|id| BUILTIN_ROW_COUNTS[id as usize - 1]);
            let table = match (&golden, builtin) {
                (Some(p), _) => load_golden_file(p, expected)?,
                (None, Some(id)) => load_golden(id)?,
                (None, None) => {
                    return Err(Error::Golden("--golden is required for a case file".into()));
                }
            };
            let (set, report) = compute_observed(&case, &label, &options(&run), &mut ())?;
            eprint!("{report}");
            let cmp = compare(&set, &table);
            print!("{cmp}");
            if cmp.is_pass() {
                println!("PASS case {label}: {} records match", set.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("FAIL case {label}: {} differences", cmp.problem_count());
                Ok(ExitCode::from(1))
            }
        }
        Command::Combinadic { mode, n, r, value } => {
            let tables = RankTables::build(n, r)?;
            match mode {
                CombinadicMode::Rank => {
                    let indices = value
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::Parse(format!("expected comma-separated indices, got {value:?}")))?;
                    println!("{}", tables.rank(&indices)?);
                }
                CombinadicMode::Unrank => {
                    let m = value
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("expected a rank, got {value:?}")))?;
                    println!("{}", tables.unrank(m)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let combinadic = matches!(cli.command, Command::Combinadic { .. });
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if combinadic {
                eprintln!("usage: pvs-strata combinadic rank --n N --r R i1,...,iR | unrank --n N --r R M");
            }
            ExitCode::from(2)
        }
    }
}
