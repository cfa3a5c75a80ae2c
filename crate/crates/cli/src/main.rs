//! `ssr`: generate, verify, extend and insert into strictly sign regular
//! matrices with exact rational arithmetic.
//!
//! Exit codes: 0 success or accepted, 1 rejected (`verify` only), 2 usage or
//! contract error.

mod doc;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use doc::{Format, MatrixDocument, Metadata};
use ssr_core::construct::{extend_border_ssr_p_with_trace, extend_border_with_trace};
use ssr_core::insert::{insert_line_ssr_p_with_trace, insert_line_with_trace};
use ssr_core::{
    ssr_construction, ssr_p_construction, verify_contiguous, verify_full, Axis, ConstructionTrace,
    Mat, Side, Sign, SignPattern, SsrError,
};

#[derive(Parser)]
#[command(
    name = "ssr",
    version,
    about = "Strictly sign regular matrices with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an SSR (or SSR_p) matrix with a given sign pattern.
    Gen(GenArgs),
    /// Check whether a matrix is SSR (or SSR_p).
    Verify(VerifyArgs),
    /// Add a line at a border.
    Extend(ExtendArgs),
    /// Insert a line between two existing ones.
    Insert(InsertArgs),
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Include the construction trace (JSON only).
    #[arg(long)]
    trace: bool,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Signs over {+,-}, one per minor size.
    #[arg(long, allow_hyphen_values = true)]
    signs: String,
    /// Only minors up to this size are constrained.
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix file (CSV or JSON), `-` for stdin.
    #[arg(long)]
    input: String,
    #[arg(long)]
    order: Option<usize>,
    /// Enumerate every minor instead of the contiguous ones.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 8)]
    max_oracle_dim: usize,
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = parse_side)]
    side: Side,
    /// Sign of the new minor size relative to the last one.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    new_sign: Option<Sign>,
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct InsertArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = parse_axis)]
    axis: Axis,
    /// Insert after this line (1-based).
    #[arg(long)]
    at: usize,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    new_sign: Option<Sign>,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: SsrError| e.to_string())
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: SsrError| e.to_string())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    let mut chars = s.chars();
    match (chars.next().and_then(Sign::from_char), chars.next()) {
        (Some(sign), None) => Ok(sign),
        _ => Err(format!("expected '+' or '-', got `{s}`")),
    }
}

enum Failure {
    Rejected,
    Usage(String),
}

impl From<SsrError> for Failure {
    fn from(e: SsrError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read_input(path: &str) -> Result<Mat, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?
    };
    let doc = MatrixDocument::parse(&text).map_err(Failure::Usage)?;
    doc.matrix().map_err(Failure::Usage)
}

fn emit(
    m: &Mat,
    pattern: SignPattern,
    order: usize,
    trace: ConstructionTrace,
    out: &OutputArgs,
) -> CmdResult {
    let metadata = match out.format {
        Format::Csv => None,
        Format::Json => Some(Metadata {
            pattern: Some(pattern),
            order: Some(order),
            trace: out.trace.then_some(trace),
        }),
    };
    let text = MatrixDocument::new(m, metadata).render(out.format);
    match &out.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn check_output_args(out: &OutputArgs) -> CmdResult {
    if out.trace && out.format != Format::Json {
        return Err(Failure::Usage("--trace requires --format json".into()));
    }
    Ok(())
}

fn parse_signs(s: &str, expected: usize) -> Result<SignPattern, Failure> {
    let signs = s
        .chars()
        .map(|c| Sign::from_char(c).ok_or_else(|| SsrError::InvalidSign(c.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if signs.len() != expected {
        return Err(SsrError::PatternLength {
            expected,
            found: signs.len(),
        }
        .into());
    }
    Ok(SignPattern::new(signs)?)
}

/// The pattern of an operation's output, read off its contiguous minors.
fn pattern_of(m: &Mat, order: usize) -> Result<SignPattern, Failure> {
    verify_contiguous(m, order, None)?
        .inferred_pattern
        .ok_or_else(|| Failure::Usage("internal error: result failed verification".into()))
}

fn order_in_range(order: Option<usize>, m: &Mat) -> Result<Option<usize>, Failure> {
    let d = m.min_dim();
    match order {
        Some(p) if p == 0 || p > d => Err(SsrError::OrderOutOfRange { p, max: d }.into()),
        _ => Ok(order),
    }
}

fn gen(args: GenArgs) -> CmdResult {
    check_output_args(&args.output)?;
    if args.rows == 0 || args.cols == 0 {
        return Err(Failure::Usage("--rows and --cols must be positive".into()));
    }
    let d = args.rows.min(args.cols);
    let (m, trace, order, pattern) = match args.order {
        Some(p) if p < d => {
            let eps = parse_signs(&args.signs, p)?;
            let (m, t) = ssr_p_construction(args.rows, args.cols, p, &eps)?;
            (m, t, p, eps)
        }
        Some(p) if p > d || p == 0 => {
            return Err(SsrError::OrderOutOfRange { p, max: d }.into());
        }
        _ => {
            let eps = parse_signs(&args.signs, d)?;
            let (m, t) = ssr_construction(args.rows, args.cols, &eps)?;
            (m, t, d, eps)
        }
    };
    emit(&m, pattern, order, trace, &args.output)
}

fn verify(args: VerifyArgs) -> CmdResult {
    let m = read_input(&args.input)?;
    let p = order_in_range(args.order, &m)?.unwrap_or(m.min_dim());
    let report = if args.oracle {
        if m.min_dim() > args.max_oracle_dim {
            return Err(Failure::Usage(format!(
                "full enumeration refused: min(m, n) = {} exceeds --max-oracle-dim {}",
                m.min_dim(),
                args.max_oracle_dim
            )));
        }
        verify_full(&m, p)?
    } else {
        verify_contiguous(&m, p, None)?
    };
    let mut out = io::stdout();
    let method = if args.oracle {
        "all minors"
    } else {
        "contiguous minors"
    };
    let verdict = if report.accepted() {
        "accepted"
    } else {
        "rejected"
    };
    let mut text = format!("verdict: {verdict}\norder: {p}\nmethod: {method}\n");
    if let Some(pattern) = &report.inferred_pattern {
        text.push_str(&format!("pattern: {pattern}\n"));
    }
    if let Some(w) = &report.witness {
        text.push_str(&format!("witness: {w}\n"));
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if report.accepted() {
        Ok(())
    } else {
        Err(Failure::Rejected)
    }
}

fn extend(args: ExtendArgs) -> CmdResult {
    check_output_args(&args.output)?;
    let m = read_input(&args.input)?;
    let mut trace = ConstructionTrace::new();
    let (out, order) = match order_in_range(args.order, &m)? {
        Some(p) if p < m.min_dim() => {
            if args.new_sign.is_some() {
                return Err(SsrError::NewSignNotAllowed.into());
            }
            (
                extend_border_ssr_p_with_trace(&m, p, args.side, &mut trace)?,
                p,
            )
        }
        _ => {
            let out = extend_border_with_trace(&m, args.side, args.new_sign, &mut trace)?;
            let d = out.min_dim();
            (out, d)
        }
    };
    let pattern = pattern_of(&out, order)?;
    emit(&out, pattern, order, trace, &args.output)
}

fn insert(args: InsertArgs) -> CmdResult {
    check_output_args(&args.output)?;
    let m = read_input(&args.input)?;
    let mut trace = ConstructionTrace::new();
    let (out, order) = match order_in_range(args.order, &m)? {
        Some(p) if p < m.min_dim() => {
            if args.new_sign.is_some() {
                return Err(SsrError::NewSignNotAllowed.into());
            }
            (
                insert_line_ssr_p_with_trace(&m, p, args.axis, args.at, &mut trace)?,
                p,
            )
        }
        _ => {
            let out = insert_line_with_trace(&m, args.axis, args.at, args.new_sign, &mut trace)?;
            let d = out.min_dim();
            (out, d)
        }
    };
    let pattern = pattern_of(&out, order)?;
    emit(&out, pattern, order, trace, &args.output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Extend(a) => extend(a),
        Command::Insert(a) => insert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
