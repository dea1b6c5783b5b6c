//! The `grt` command-line tool.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning                                              |
//! |------|------------------------------------------------------|
//! | 0    | success, or the input classified as a GRT            |
//! | 1    | a classification or identity check came out negative |
//! | 2    | the multiplication rule failed during generation     |
//! | 3    | a requested identity does not apply to the input     |
//! | 64   | usage error                                          |
//! | 65   | malformed input                                      |
//! | 66   | input file could not be read                         |

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::analysis::{classify, Verdict};
use crate::format::{integer_to_json, parse_triangle, to_csv, to_json, to_plain};
use crate::generation::{
    boundary_from_params, generate_by_addition, generate_by_multiplication, generate_closed_form,
    mult_constant,
};
use crate::identities::{
    embed_in_rascal, multiple_of_rascal, row_sum_formula, sweep, IdentityCheck, IdentityError,
    IdentityName,
};
use crate::report::{classification_csv, classification_json, classification_text, params_json, rational_json};
use crate::triangle::{GrtParams, TriangleGrid};

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const GENERATION_FAILED: i32 = 2;
    pub const INAPPLICABLE: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const MALFORMED: i32 = 65;
    pub const NO_INPUT: i32 = 66;
}

#[derive(Debug, Parser)]
#[command(name = "grt", version, about = "Generate, classify and verify Generalized Rascal Triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a triangle built from (c, d, d1, d2).
    Generate(GenerateArgs),
    /// Classify a triangle read from a file or stdin.
    Classify(ClassifyArgs),
    /// Verify GRT identities for given parameters or a GRT read from input.
    Props(PropsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Closed,
    Add,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, allow_negative_numbers = true)]
    c: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    d: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    d1: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    d2: BigInt,
    #[arg(long)]
    rows: usize,
    #[arg(long, value_enum, default_value_t = Rule::Closed)]
    rule: Rule,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Triangle file, or `-` for stdin. Plain rows or JSON, detected from content.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct PropsArgs {
    /// Triangle file, or `-` for stdin. Must classify as a GRT.
    #[arg(long, conflicts_with_all = ["c", "d", "d1", "d2"])]
    input: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<BigInt>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<BigInt>,
    #[arg(long, allow_negative_numbers = true)]
    d1: Option<BigInt>,
    #[arg(long, allow_negative_numbers = true)]
    d2: Option<BigInt>,
    /// Comma-separated subset of: rowsums, odd-diamond, even-diamond, ashley,
    /// ashley-mod1, ashley-mod2, ashley-mod3, column-diff, tmeg, embed,
    /// multiple. Defaults to all of them, leaving out tmeg when d1 or d2 is
    /// nonzero.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Largest index visited by each check.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Output of one command: what goes to stdout, stderr and the exit code.
struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = String::from("error: ");
        stderr.push_str(&message.into());
        stderr.push('\n');
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code. Each stream is written once, after the command completes.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let outcome = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command, stdin),
        Err(err) => {
            let code = if err.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = err.render().to_string();
            if err.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(code, rendered)
            }
        }
    };
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    let _ = stderr.flush();
    outcome.code
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Classify(args) => cmd_classify(args, stdin),
        Command::Props(args) => cmd_props(args, stdin),
    }
}

fn render_grid(grid: &TriangleGrid, format: Format) -> String {
    match format {
        Format::Text => to_plain(grid),
        Format::Json => to_json(grid),
        Format::Csv => to_csv(grid),
    }
}

fn cmd_generate(args: GenerateArgs) -> Outcome {
    if args.rows == 0 {
        return Outcome::fail(exit::USAGE, "--rows must be at least 1");
    }
    let params = GrtParams {
        c: args.c,
        d: args.d,
        d1: args.d1,
        d2: args.d2,
    };
    let grid = match args.rule {
        Rule::Closed => generate_closed_form(&params, args.rows),
        Rule::Add => generate_by_addition(&boundary_from_params(&params, args.rows), &params.d),
        Rule::Mul => {
            let boundary = boundary_from_params(&params, args.rows);
            match generate_by_multiplication(&boundary, &mult_constant(&params)) {
                Ok(grid) => grid,
                Err(err) => {
                    let (r, k) = err.position();
                    return Outcome::fail(
                        exit::GENERATION_FAILED,
                        format!("multiplication rule failed at (r={r}, k={k}): {err}"),
                    );
                }
            }
        }
    };
    Outcome::ok(exit::OK, render_grid(&grid, args.format))
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Outcome> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Outcome::fail(exit::NO_INPUT, format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Outcome::fail(exit::NO_INPUT, format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn load_grid(path: &str, stdin: &mut dyn Read) -> Result<TriangleGrid, Outcome> {
    let text = read_input(path, stdin)?;
    parse_triangle(&text).map_err(|e| Outcome::fail(exit::MALFORMED, format!("malformed triangle: {e}")))
}

fn cmd_classify(args: ClassifyArgs, stdin: &mut dyn Read) -> Outcome {
    let grid = match load_grid(&args.input, stdin) {
        Ok(grid) => grid,
        Err(outcome) => return outcome,
    };
    let cls = match classify(&grid) {
        Ok(cls) => cls,
        Err(err) => return Outcome::fail(exit::MALFORMED, err.to_string()),
    };
    let body = match args.format {
        Format::Text => classification_text(&cls),
        Format::Json => format!("{}\n", classification_json(&cls)),
        Format::Csv => classification_csv(&cls),
    };
    let code = if cls.is_grt() { exit::OK } else { exit::NEGATIVE };
    Outcome::ok(code, body)
}

enum CheckResult {
    Ran(IdentityCheck),
    Inapplicable(IdentityName, IdentityError),
}

fn resolve_params(args: &PropsArgs, stdin: &mut dyn Read) -> Result<GrtParams, Outcome> {
    if let Some(path) = &args.input {
        let grid = load_grid(path, stdin)?;
        let cls = classify(&grid).map_err(|e| Outcome::fail(exit::MALFORMED, e.to_string()))?;
        return match cls.verdict {
            Verdict::Grt(params) => Ok(params),
            other => Err(Outcome::fail(
                exit::NEGATIVE,
                format!(
                    "input classifies as {}, not as a GRT; the identities only hold for GRTs",
                    other.name()
                ),
            )),
        };
    }
    match (&args.c, &args.d, &args.d1, &args.d2) {
        (Some(c), Some(d), Some(d1), Some(d2)) => Ok(GrtParams {
            c: c.clone(),
            d: d.clone(),
            d1: d1.clone(),
            d2: d2.clone(),
        }),
        _ => Err(Outcome::fail(
            exit::USAGE,
            "props needs either --input or all of --c, --d, --d1, --d2",
        )),
    }
}

fn cmd_props(args: PropsArgs, stdin: &mut dyn Read) -> Outcome {
    let params = match resolve_params(&args, stdin) {
        Ok(p) => p,
        Err(outcome) => return outcome,
    };
    let names = match &args.checks {
        Some(list) => {
            let mut names = Vec::new();
            for raw in list {
                match IdentityName::parse(raw.trim()) {
                    Some(name) if !names.contains(&name) => names.push(name),
                    Some(_) => {}
                    None => return Outcome::fail(exit::USAGE, format!("unknown check `{raw}`")),
                }
            }
            names
        }
        None => IdentityName::ALL
            .into_iter()
            .filter(|n| *n != IdentityName::TMeg || (params.d1 == BigInt::default() && params.d2 == BigInt::default()))
            .collect(),
    };

    let results: Vec<CheckResult> = names
        .iter()
        .map(|&name| match sweep(&params, name, args.depth) {
            Ok(check) => CheckResult::Ran(check),
            Err(err) => CheckResult::Inapplicable(name, err),
        })
        .collect();

    let code = if results.iter().any(|r| matches!(r, CheckResult::Inapplicable(..))) {
        exit::INAPPLICABLE
    } else if results.iter().any(|r| matches!(r, CheckResult::Ran(c) if !c.holds())) {
        exit::NEGATIVE
    } else {
        exit::OK
    };

    let body = match args.format {
        Format::Text => props_text(&params, args.depth, &results),
        Format::Json => format!("{}\n", props_json(&params, args.depth, &results)),
        Format::Csv => props_csv(&results),
    };
    Outcome::ok(code, body)
}

fn embed_text(params: &GrtParams) -> String {
    match embed_in_rascal(params) {
        Some((r0, k0)) => format!("sub-triangle of the Rascal Triangle at offset (r0={r0}, k0={k0})"),
        None => "no embedding".to_string(),
    }
}

fn multiple_text(params: &GrtParams) -> String {
    match multiple_of_rascal(params) {
        Some(m) => format!("{m} times the Rascal Triangle"),
        None => "not a multiple of the Rascal Triangle".to_string(),
    }
}

fn props_text(params: &GrtParams, depth: usize, results: &[CheckResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "params: c={} d={} d1={} d2={}", params.c, params.d, params.d1, params.d2);
    for result in results {
        match result {
            CheckResult::Inapplicable(name, err) => {
                let _ = writeln!(out, "{name}: inapplicable: {err}");
            }
            CheckResult::Ran(check) => match check.name {
                IdentityName::Embedding => {
                    let _ = writeln!(out, "embed: {}", embed_text(params));
                }
                IdentityName::Multiple => {
                    let _ = writeln!(out, "multiple: {}", multiple_text(params));
                }
                name => {
                    match &check.first_failure {
                        None => {
                            let _ = writeln!(out, "{name}: holds ({} instances)", check.instances);
                        }
                        Some(f) => {
                            let _ = writeln!(
                                out,
                                "{name}: fails at {:?}: lhs {}, rhs {}",
                                f.location, f.lhs, f.rhs
                            );
                        }
                    }
                    if name == IdentityName::RowSum {
                        for n in 0..=depth {
                            let _ = writeln!(out, "  n={n}: {}", row_sum_formula(params, n));
                        }
                    }
                }
            },
        }
    }
    out
}

fn props_json(params: &GrtParams, depth: usize, results: &[CheckResult]) -> Value {
    let checks: Vec<Value> = results
        .iter()
        .map(|result| match result {
            CheckResult::Inapplicable(name, err) => json!({
                "name": name.as_str(),
                "status": "inapplicable",
                "reason": err.to_string(),
            }),
            CheckResult::Ran(check) => {
                let mut obj = json!({
                    "name": check.name.as_str(),
                    "status": if check.holds() { "holds" } else { "fails" },
                    "instances": check.instances,
                    "first_failure": check.first_failure.as_ref().map(|f| json!({
                        "location": f.location,
                        "lhs": rational_json(&f.lhs),
                        "rhs": rational_json(&f.rhs),
                    })),
                });
                match check.name {
                    IdentityName::RowSum => {
                        obj["values"] = (0..=depth).map(|n| integer_to_json(&row_sum_formula(params, n))).collect();
                    }
                    IdentityName::Embedding => {
                        obj["offset"] = embed_in_rascal(params).map(|(r0, k0)| json!([r0, k0])).into();
                    }
                    IdentityName::Multiple => {
                        obj["multiple"] = multiple_of_rascal(params).as_ref().map(integer_to_json).into();
                    }
                    _ => {}
                }
                obj
            }
        })
        .collect();
    json!({ "params": params_json(params), "depth": depth, "checks": checks })
}

fn props_csv(results: &[CheckResult]) -> String {
    let mut out = String::from("check,status,instances,location,lhs,rhs\n");
    for result in results {
        match result {
            CheckResult::Inapplicable(name, _) => {
                let _ = writeln!(out, "{name},inapplicable,0,,,");
            }
            CheckResult::Ran(check) => {
                let status = if check.holds() { "holds" } else { "fails" };
                let (loc, lhs, rhs) = match &check.first_failure {
                    Some(f) => (
                        f.location.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                        f.lhs.to_string(),
                        f.rhs.to_string(),
                    ),
                    None => Default::default(),
                };
                let _ = writeln!(out, "{},{status},{},{loc},{lhs},{rhs}", check.name, check.instances);
            }
        }
    }
    out
}
