//! The `glring` command line.
//!
//! Exit codes: 0 success, 1 verification failure (or a computation hitting a
//! resource limit), 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_linalg::kernel_basis;
use crate::format::{self, json_int};
use crate::lambda_ring::RingElement;
use crate::paper_tables::{verify_paper_tables, Fixtures};
use crate::partitions::{enumerate_basis, parse_parts, ModeKind, Partition};
use crate::series_lab::{self, RationalForm, DEFAULT_ORDER};
use crate::simple_f2;
use crate::symmetric_powers::{covectors_of, mod2_reduce, rank_profile_of, SymTable};
use crate::t_operator::{self, block_decompose, build_t_matrices};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "glring", version, about = "Exact computations in the Grothendieck rings of M_n(F2) and GL_n(F2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Paper,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetric powers [S^k] in the exterior-power basis of R(M_n(F2)).
    Sym {
        #[arg(long)]
        n: u32,
        #[arg(long = "max-k")]
        max_k: usize,
        /// Reduce coefficients mod 2.
        #[arg(long)]
        mod2: bool,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
    /// The matrix tau_n of multiplication by the sum of exterior powers in R(GL_n(F2)).
    Tau {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
    /// The matrix t_n on R(M_n(F2)).
    Tmat {
        #[arg(long)]
        n: u32,
        /// Print the block decomposition and its identities.
        #[arg(long)]
        blocks: bool,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
    /// Check diagonalizability of t_n with eigenvalues 2^i.
    Eigen {
        #[arg(long)]
        n: u32,
        /// Also compute an explicit basis of ker(t_n - 1).
        #[arg(long = "kernel-at-1")]
        kernel_at_1: bool,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
    /// Rank profile of span{s_0, .., s_k}.
    RankSym {
        #[arg(long)]
        n: u32,
        #[arg(long = "max-k")]
        max_k: usize,
        /// Print an integer basis of the covectors killing every s_k.
        #[arg(long = "null-covectors")]
        null_covectors: bool,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
    /// Rational forms and power series.
    Series(SeriesArgs),
    /// Dimensions of Young-symmetrizer images over F2.
    SimpleDim {
        /// Partition, e.g. 2,1
        #[arg(long)]
        lambda: String,
        /// One or more dimensions, e.g. 1,2,3
        #[arg(long)]
        dim: String,
        #[arg(long, default_value_t = simple_f2::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Recompute the golden tables and compare.
    VerifyPaperTables {
        /// Fixture directory; defaults to the copies built into the binary.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "paper")]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(subcommand)]
    pub command: SeriesCommand,
}

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// Poincare series of the Steinberg summand.
    Steinberg {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// chi_j = sum_h q^(j 2^h) for odd j.
    Chi {
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Expand num / prod (1 - q^d).
    Expand {
        /// Dense numerator coefficients from degree 0, e.g. 0,0,0,0,1
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        /// Denominator exponents, e.g. 1,3
        #[arg(long, default_value = "")]
        den: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Order of the pole at q = 1 of num / prod (1 - q^d).
    PoleOrder {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, default_value = "")]
        den: String,
    },
    /// lambda_1 + 2 lambda_2 + ... + 2^(h-1) lambda_h.
    Connectivity {
        #[arg(long)]
        lambda: String,
    },
    /// prod_{i=1..n} (1 + q + ... + q^(2^i - 2)).
    EigenDenominator {
        #[arg(long)]
        n: u32,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse { .. } | Error::ModeMismatch { .. } => EXIT_USAGE,
                Error::ResourceLimit(_) | Error::Io(_) => EXIT_FAILED,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(io)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    emit(out, &s)
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Sym { n, max_k, mod2, format } => cmd_sym(*n, *max_k, *mod2, *format, out),
        Command::Tau { n, format } => cmd_tau(*n, *format, out),
        Command::Tmat { n, blocks, format } => cmd_tmat(*n, *blocks, *format, out),
        Command::Eigen { n, kernel_at_1, format } => cmd_eigen(*n, *kernel_at_1, *format, out),
        Command::RankSym { n, max_k, null_covectors, format } => {
            cmd_rank_sym(*n, *max_k, *null_covectors, *format, out)
        }
        Command::Series(args) => cmd_series(&args.command, out),
        Command::SimpleDim { lambda, dim, budget } => cmd_simple_dim(lambda, dim, *budget, out),
        Command::VerifyPaperTables { data, format } => cmd_verify(data.as_deref(), *format, out),
    }
}

fn check_n(n: u32, max: u32) -> Result<()> {
    if n > max {
        return Err(Error::invalid(format!("n = {n} is above the supported maximum {max}")));
    }
    Ok(())
}

fn cmd_sym(n: u32, max_k: usize, mod2: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    check_n(n, 12)?;
    let table = SymTable::build(n, max_k);
    let rows: Vec<RingElement> = if mod2 {
        table.rows.iter().map(mod2_reduce).collect()
    } else {
        table.rows.clone()
    };
    let prefix = if mod2 { "sq" } else { "s" };
    let labelled: Vec<(String, &RingElement)> = rows
        .iter()
        .enumerate()
        .map(|(k, e)| (format!("{prefix}_{k}"), e))
        .collect();
    let basis = enumerate_basis(n, ModeKind::M)?;
    match format {
        Format::Paper => {
            for (label, e) in &labelled {
                emit(out, &format!("{label} = {}\n", e.render(true)))?;
            }
        }
        Format::Json => emit_json(out, &format::rows_json(&basis, &labelled))?,
        Format::Csv => emit(out, &format::rows_csv(&basis, "k", &labelled)?)?,
    }
    Ok(EXIT_OK)
}

fn basis_line(labels: &[String]) -> String {
    format!("basis: {{{}}}\n", labels.join(", "))
}

fn cmd_tau(n: u32, format: Format, out: &mut dyn Write) -> Result<i32> {
    check_n(n, 10)?;
    let m = build_t_matrices(n)?;
    let basis = if n == 0 {
        enumerate_basis(0, ModeKind::M)?
    } else {
        enumerate_basis(n, ModeKind::GL)?
    };
    match format {
        Format::Paper => {
            emit(out, &format!("tau_{n}\n"))?;
            emit(out, &basis_line(&basis.labels()))?;
            emit(out, &format::matrix_grid(&m.tau_printed))?;
        }
        Format::Json => emit_json(out, &format::matrix_json(&basis, &m.tau_printed))?,
        Format::Csv => emit(out, &format::matrix_csv(&basis, &m.tau_printed)?)?,
    }
    Ok(EXIT_OK)
}

fn cmd_tmat(n: u32, blocks: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    check_n(n, 10)?;
    let m = build_t_matrices(n)?;
    let basis = enumerate_basis(n, ModeKind::M)?;
    if !blocks {
        match format {
            Format::Paper => {
                emit(out, &format!("t_{n}\n"))?;
                emit(out, &basis_line(&basis.labels()))?;
                emit(out, &format::matrix_grid(&m.t))?;
            }
            Format::Json => emit_json(out, &format::matrix_json(&basis, &m.t))?,
            Format::Csv => emit(out, &format::matrix_csv(&basis, &m.t)?)?,
        }
        return Ok(EXIT_OK);
    }
    if n == 0 {
        return Err(Error::invalid("--blocks needs n >= 1"));
    }
    let prev = build_t_matrices(n - 1)?;
    let check = t_operator::check_blocks(&m, &prev)?;
    let b = block_decompose(&m.t, n)?;
    match format {
        Format::Paper | Format::Csv => {
            for (name, blk) in [
                ("t_prev", &b.upper_left),
                ("delta", &b.delta),
                ("lower_left", &b.lower_left),
                ("tau_block", &b.tau_block),
            ] {
                emit(out, &format!("{name}\n"))?;
                emit(out, &format::matrix_grid(blk))?;
            }
            emit(
                out,
                &format!(
                    "upper_left == t_{}: {}\nlower_left == 0: {}\ntau_block == t_{} + delta: {}\ntau_block == transpose(GL matrix): {}\n",
                    n - 1,
                    check.upper_left_is_previous,
                    check.lower_left_zero,
                    n - 1,
                    check.tau_is_sum,
                    check.tau_matches_gl
                ),
            )?;
        }
        Format::Json => {
            let grid = |m: &crate::exact_linalg::IntMatrix| -> serde_json::Value {
                (0..m.rows())
                    .map(|i| m.row(i).iter().map(json_int).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into()
            };
            emit_json(
                out,
                &json!({
                    "n": n,
                    "t_prev": grid(&b.upper_left),
                    "delta": grid(&b.delta),
                    "lower_left": grid(&b.lower_left),
                    "tau_block": grid(&b.tau_block),
                    "upper_left_is_previous": check.upper_left_is_previous,
                    "lower_left_zero": check.lower_left_zero,
                    "tau_is_sum": check.tau_is_sum,
                    "tau_matches_gl": check.tau_matches_gl,
                }),
            )?;
        }
    }
    Ok(if check.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_eigen(n: u32, kernel_at_1: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    check_n(n, 10)?;
    let report = t_operator::conjecture_report(n, kernel_at_1)?;
    let kernel: Vec<Vec<BigInt>> = if kernel_at_1 {
        let t = build_t_matrices(n)?.t;
        kernel_basis(&t.shift_diagonal(&BigInt::from(1))?)
            .iter()
            .map(|v| v.to_primitive_integer())
            .collect()
    } else {
        Vec::new()
    };
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            if kernel_at_1 {
                v["kernel_at_one"] = kernel
                    .iter()
                    .map(|k| k.iter().map(json_int).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into();
            }
            emit_json(out, &v)?;
        }
        Format::Paper | Format::Csv => {
            emit(out, &format!("t_{n}: dimension {}\n", report.dimension))?;
            emit(
                out,
                &format!("annihilated by prod (x - 2^i), i = 0..{n}: {}\n", report.annihilated),
            )?;
            for e in &report.spectrum {
                emit(
                    out,
                    &format!(
                        "eigenvalue {}: multiplicity {} (expected {})\n",
                        e.eigenvalue, e.multiplicity, e.expected
                    ),
                )?;
            }
            emit(
                out,
                &format!(
                    "dim ker(t_{n} - 1) = {} (expected {})\n",
                    report.kernel_at_one_dim, report.kernel_at_one_expected
                ),
            )?;
            for k in &kernel {
                let s: Vec<String> = k.iter().map(ToString::to_string).collect();
                emit(out, &format!("  [{}]\n", s.join(", ")))?;
            }
            emit(out, &format!("result: {}\n", if report.passed { "PASS" } else { "FAIL" }))?;
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_rank_sym(n: u32, max_k: usize, null_covectors: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    check_n(n, 10)?;
    let table = SymTable::build(n, max_k);
    let profile = rank_profile_of(&table);
    let covectors = if null_covectors { covectors_of(&table) } else { Vec::new() };
    let dim = 1usize << n;
    match format {
        Format::Json => {
            let mut v = json!({
                "n": n,
                "mode": "M",
                "dimension": dim,
                "profile": profile.iter().map(|(k, r)| json!({"k": k, "rank": r})).collect::<Vec<_>>(),
            });
            if null_covectors {
                let basis = enumerate_basis(n, ModeKind::M)?;
                v["basis"] = (0..basis.len())
                    .map(|i| json!(basis.printed(i).parts()))
                    .collect::<Vec<_>>()
                    .into();
                v["null_covectors"] = covectors
                    .iter()
                    .map(|c| c.iter().map(json_int).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into();
            }
            emit_json(out, &v)?;
        }
        Format::Csv => {
            emit(out, "k,rank\n")?;
            for (k, r) in &profile {
                emit(out, &format!("{k},{r}\n"))?;
            }
        }
        Format::Paper => {
            for (k, r) in &profile {
                emit(out, &format!("k = {k}: rank {r} / {dim}\n"))?;
            }
            if null_covectors {
                emit(out, &format!("null covectors: {}\n", covectors.len()))?;
                let basis = enumerate_basis(n, ModeKind::M)?;
                for c in &covectors {
                    let terms: Vec<String> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| *x != &BigInt::from(0))
                        .map(|(i, x)| format!("{x}*{}", basis.printed(i)))
                        .collect();
                    emit(out, &format!("  {}\n", terms.join(" ")))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_exponents(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(0, format!("bad exponent {t:?}")))
        })
        .collect()
}

fn print_series(out: &mut dyn Write, s: &series_lab::PowerSeries) -> Result<()> {
    let coeffs: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    emit(out, &format!("coefficients: {}\n", coeffs.join(",")))?;
    let sparse: Vec<String> = s.sparse().iter().map(|(d, c)| format!("{d}:{c}")).collect();
    emit(out, &format!("sparse: {}\n", sparse.join(" ")))
}

fn cmd_series(cmd: &SeriesCommand, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        SeriesCommand::Steinberg { n, order } => {
            let form = series_lab::steinberg_form(*n)?;
            emit(out, &format!("form: {form}\n"))?;
            print_series(out, &series_lab::expand(&form, *order))?;
        }
        SeriesCommand::Chi { j, order } => {
            print_series(out, &series_lab::chi_series(*j, *order)?)?;
        }
        SeriesCommand::Expand { num, den, order } => {
            let form = RationalForm::new(series_lab::parse_polynomial(num)?, parse_exponents(den)?)?;
            print_series(out, &series_lab::expand(&form, *order))?;
        }
        SeriesCommand::PoleOrder { num, den } => {
            let form = RationalForm::new(series_lab::parse_polynomial(num)?, parse_exponents(den)?)?;
            match series_lab::pole_order_at_one(&form) {
                Some(p) => emit(out, &format!("{p}\n"))?,
                None => return Err(Error::invalid("the zero form has no pole order")),
            }
        }
        SeriesCommand::Connectivity { lambda } => {
            let p = Partition::new(parse_parts(lambda)?)?;
            emit(out, &format!("{}\n", series_lab::connectivity(&p)))?;
        }
        SeriesCommand::EigenDenominator { n } => {
            emit(out, &format!("{}\n", series_lab::eigenvector_denominator(*n)?))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simple_dim(lambda: &str, dims: &str, budget: usize, out: &mut dyn Write) -> Result<i32> {
    let parts = parse_parts(lambda)?;
    let dims: Vec<usize> = dims
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(0, format!("bad dimension {t:?}")))
        })
        .collect::<Result<_>>()?;
    let label = Partition::new(parts.clone())
        .map(|p| p.to_string())
        .unwrap_or_else(|_| format!("{parts:?}"));
    let header: Vec<String> = dims.iter().map(|m| format!("m={m}")).collect();
    emit(out, &format!("lambda\t{}\n", header.join("\t")))?;
    let values = dims
        .iter()
        .map(|&m| simple_f2::jk_image_dim_with_budget(&parts, m, budget).map(|d| d.to_string()))
        .collect::<Result<Vec<_>>>()?;
    emit(out, &format!("{label}\t{}\n", values.join("\t")))?;
    Ok(EXIT_OK)
}

fn cmd_verify(data: Option<&std::path::Path>, format: Format, out: &mut dyn Write) -> Result<i32> {
    let fixtures = match data {
        Some(dir) => Fixtures::load(dir)?,
        None => Fixtures::embedded(),
    };
    let report = verify_paper_tables(&fixtures)?;
    match format {
        Format::Json => emit_json(out, &serde_json::to_value(&report).expect("report serializes"))?,
        Format::Paper | Format::Csv => {
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    emit(out, &format!("{status} {}\n", c.name))?;
                } else {
                    emit(out, &format!("{status} {}: {}\n", c.name, c.detail))?;
                }
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            emit(
                out,
                &format!("{} checks, {failed} failed\n", report.checks.len()),
            )?;
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

