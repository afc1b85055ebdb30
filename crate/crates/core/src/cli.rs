//! Command-line front end. [`run`] never exits the process; it returns the
//! exit code so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 a cross-check
//! failed, 3 the matrix budget was exceeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cohomology::{pn_table, product_table, y_cohomology, CohomologyTable};
use crate::error::Error;
use crate::fp_linalg::EliminationConfig;
use crate::frobenius::{build_matrix, FrobeniusProblem, MatrixBudget, DEFAULT_MAX_ENTRIES};
use crate::incidence_ring::Bidegree;
use crate::pipeline::{sweep, verify, Sweep, SweepEntry, VerificationReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kodaira",
    version,
    about = "Exact cohomology of O(1,n,1)^-1 on the Frobenius-twisted flag bundle X over the incidence variety, over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the full table of H^i(X, L^-1) for one (n, p) and check every step
    Verify(VerifyArgs),
    /// Verify a range of (n, p) pairs
    Sweep(SweepArgs),
    /// Print line-bundle cohomology dimensions on Y, P^n x P^n or P^n
    Cohomology(CohomologyArgs),
    /// Write the matrix of the Frobenius map and its index maps
    Dump(DumpArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Space {
    Y,
    Product,
    Pn,
}

#[derive(Args, Debug)]
struct MatrixOptions {
    /// Accept primes p < n-1 (the matrix is built, nonvanishing is not claimed)
    #[arg(long)]
    allow_small_p: bool,
    /// Maximum stored entries of the assembled matrix
    #[arg(long, value_name = "ENTRIES", default_value_t = DEFAULT_MAX_ENTRIES)]
    budget: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Projective dimension n, an integer >= 3
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=1000))]
    n: u64,
    /// Prime characteristic p with n-1 <= p < 2^20
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the matrix dump to PATH (plus PATH.rows and PATH.cols)
    #[arg(long, value_name = "PATH")]
    dump_matrix: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    matrix: MatrixOptions,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Smallest n, an integer >= 3
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=1000))]
    n_min: u64,
    /// Largest n, an integer >= 3
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=1000))]
    n_max: u64,
    /// Smallest p tried (composite values are skipped)
    #[arg(long, default_value_t = 2)]
    p_min: u64,
    /// Largest p tried, below 2^20
    #[arg(long)]
    p_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    matrix: MatrixOptions,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    /// Projective dimension n, an integer >= 1
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1000))]
    n: u64,
    /// X-degree a (the degree d on P^n)
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    /// Y-degree b (ignored for --space pn)
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    b: i64,
    #[arg(long, value_enum, default_value_t = Space::Y)]
    space: Space,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DumpArgs {
    /// Projective dimension n, an integer >= 3
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=1000))]
    n: u64,
    /// Prime characteristic p with n-1 <= p < 2^20
    #[arg(long)]
    p: u64,
    /// Matrix dump path; index maps go to PATH.rows and PATH.cols
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    #[command(flatten)]
    matrix: MatrixOptions,
}

impl MatrixOptions {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            allow_small_p: self.allow_small_p,
            budget: MatrixBudget {
                max_entries: self.budget,
            },
            elimination: EliminationConfig::default(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => run_verify(&args, stdout),
        Command::Sweep(args) => run_sweep(&args, stdout),
        Command::Cohomology(args) => run_cohomology(&args, stdout),
        Command::Dump(args) => run_dump(&args, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossCheckFailed { .. } => EXIT_CHECK_FAILED,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            let io = |source| Error::Io {
                path: path.to_path_buf(),
                source,
            };
            let mut f = BufWriter::new(File::create(path).map_err(io)?);
            f.write_all(text.as_bytes()).and_then(|_| f.flush()).map_err(io)
        }
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn csv_text(sweep: &Sweep) -> String {
    let mut buf = Vec::new();
    sweep.write_csv(&mut buf).expect("writing csv to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => csv_text(&Sweep {
            entries: vec![SweepEntry {
                n: report.n,
                p: report.p as u64,
                error: (!report.all_checks_passed())
                    .then(|| format!("cross-check failed: {}", report.failed_checks().join(", "))),
                report: Some(report.clone()),
            }],
            skipped: Vec::new(),
        }),
    }
}

fn run_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let cfg = args.matrix.config();
    let n = args.n as usize;
    if let Some(path) = &args.dump_matrix {
        write_dump(n, args.p, &cfg, path)?;
    }
    match verify(n, args.p, &cfg) {
        Ok(report) => {
            emit(args.out.as_deref(), stdout, &render_report(&report, args.format))?;
            Ok(EXIT_OK)
        }
        Err(Error::CrossCheckFailed { failed, report }) => {
            emit(args.out.as_deref(), stdout, &render_report(&report, args.format))?;
            Err(Error::CrossCheckFailed { failed, report })
        }
        Err(e) => Err(e),
    }
}

fn run_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let cfg = args.matrix.config();
    let result = sweep(
        args.n_min as usize..=args.n_max as usize,
        args.p_min..=args.p_max,
        &cfg,
    );
    let text = match args.format {
        Format::Text => result.render_text(),
        Format::Json => serde_json::to_string_pretty(&result).expect("sweep serializes") + "\n",
        Format::Csv => csv_text(&result),
    };
    emit(args.out.as_deref(), stdout, &text)?;
    let check_failed = result
        .entries
        .iter()
        .any(|e| e.report.as_ref().is_some_and(|r| !r.all_checks_passed()));
    Ok(if check_failed {
        EXIT_CHECK_FAILED
    } else if !result.all_passed() {
        // only budget or validation errors remain
        let budget = result
            .entries
            .iter()
            .any(|e| e.error.as_ref().is_some_and(|m| m.contains("budget")));
        if budget {
            EXIT_BUDGET
        } else {
            EXIT_USAGE
        }
    } else {
        EXIT_OK
    })
}

fn run_cohomology(args: &CohomologyArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let n = args.n as usize;
    let d = Bidegree::new(args.a, args.b);
    let table: CohomologyTable = match args.space {
        Space::Y => y_cohomology(n, d),
        Space::Product => product_table(n, d),
        Space::Pn => pn_table(n, args.a),
    };
    let text = match args.format {
        Format::Text => table.to_string(),
        Format::Json => serde_json::to_string_pretty(&table).expect("table serializes") + "\n",
        Format::Csv => {
            let mut s = String::from("j,dim\n");
            for (j, dim) in &table.dims {
                s.push_str(&format!("{j},{dim}\n"));
            }
            s
        }
    };
    emit(args.out.as_deref(), stdout, &text)?;
    Ok(EXIT_OK)
}

fn write_dump(n: usize, p: u64, cfg: &VerifyConfig, path: &Path) -> Result<(usize, usize, usize), Error> {
    let prob = if cfg.allow_small_p {
        FrobeniusProblem::exploratory(n, p)?
    } else {
        FrobeniusProblem::new(n, p)?
    };
    let fm = build_matrix(&prob, &cfg.budget)?;
    fm.write_dump(path)?;
    Ok((fm.matrix.rows(), fm.matrix.cols(), fm.matrix.nnz()))
}

fn run_dump(args: &DumpArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let (rows, cols, nnz) = write_dump(args.n as usize, args.p, &args.matrix.config(), &args.out)?;
    emit(
        None,
        stdout,
        &format!(
            "wrote {rows}x{cols} matrix with {nnz} entries to {}\n",
            args.out.display()
        ),
    )?;
    Ok(EXIT_OK)
}
