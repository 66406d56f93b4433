//! `mmi` — command-line front end for exact mixed multiplier ideal
//! computations.
//!
//! Exit codes: 0 success, 2 invalid input, 3 unsupported geometry,
//! 4 internal invariant breach.

mod svg;
mod text;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;

use mmi_core::jumping::DEFAULT_DICHOTOMY_CAP;
use mmi_core::rational::{self, Rational};
use mmi_core::report::{
    self, CanonicalReport, EnumerationReport, JumpingNumbersReport, MinimalJumpingDivisorReport,
    MmiReport, RegionReport, Scalar, VerifyReport, WallsReport,
};
use mmi_core::{Error, OrthantPoint, Resolution};

const ITERS_ENV: &str = "MMI_MAX_UNLOAD_ITERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Canonical,
    Mmi,
    Region,
    Walls,
    Enumerate,
    JumpingNumbers,
    MinJumpingDivisor,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mmi", version, about = "Mixed multiplier ideals from a log-resolution")]
struct Cli {
    command: Command,
    /// Resolution data (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Upper-right corner of the box, e.g. `1,3`.
    #[arg(long = "box")]
    corner: Option<String>,
    /// Point of the orthant, e.g. `17/42,1/4`.
    #[arg(long)]
    lambda: Option<String>,
    /// Nonnegative integer direction, e.g. `1,1`.
    #[arg(long)]
    direction: Option<String>,
    /// Largest parameter for `jumping-numbers`.
    #[arg(long)]
    upto: Option<String>,
    /// Ideal name for `jumping-numbers`.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::GeometryUnsupported(_) => 3,
            e if e.is_internal() => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str, cmd: Command) -> Result<&'a str, Failure> {
    value
        .as_deref()
        .ok_or_else(|| usage(format!("--{flag} is required for {cmd:?}")))
}

fn parse_point(text: &str) -> Result<OrthantPoint, Failure> {
    Ok(OrthantPoint::parse(text)?)
}

fn parse_corner(text: &str) -> Result<OrthantPoint, Failure> {
    let corner = parse_point(text)?;
    if corner.coords().iter().any(|c| !c.is_positive()) {
        return Err(Error::InvalidBox.into());
    }
    Ok(corner)
}

fn parse_direction(text: &str) -> Result<Vec<BigInt>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .ok()
                .filter(|n| !n.is_negative())
                .ok_or_else(|| usage(format!("invalid direction entry `{s}`")))
        })
        .collect()
}

fn load(cli: &Cli) -> Result<Resolution, Failure> {
    let text = fs::read_to_string(&cli.input)
        .map_err(|e| usage(format!("cannot read {}: {e}", cli.input.display())))?;
    let mut res = Resolution::from_json(&text)?;
    if let Ok(value) = std::env::var(ITERS_ENV) {
        let cap = value
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("{ITERS_ENV} must be a positive integer")))?;
        res = res.with_max_unload_iters(cap);
    }
    Ok(res)
}

/// Output document and whether it reports a failed verification.
struct Output {
    body: String,
    failed_check: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failed_check: false,
        }
    }
}

fn no_svg(cmd: Command) -> Failure {
    usage(format!("--format svg is only available for walls and enumerate, not {cmd:?}"))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let res = load(cli)?;
    let cmd = cli.command;
    match cmd {
        Command::Canonical => {
            let r = CanonicalReport::new(&res);
            match cli.format {
                Format::Json => Ok(Output::ok(report::to_json(&r))),
                Format::Text => Ok(Output::ok(text::canonical(&r))),
                Format::Svg => Err(no_svg(cmd)),
            }
        }
        Command::Mmi => {
            let lambda = parse_point(required(&cli.lambda, "lambda", cmd)?)?;
            let r = MmiReport::new(&res, &lambda)?;
            match cli.format {
                Format::Json => Ok(Output::ok(report::to_json(&r))),
                Format::Text => Ok(Output::ok(text::mmi(&r))),
                Format::Svg => Err(no_svg(cmd)),
            }
        }
        Command::Region => {
            let lambda = parse_point(required(&cli.lambda, "lambda", cmd)?)?;
            let r = RegionReport::new(&res, &res.region_of(&lambda)?);
            match cli.format {
                Format::Json => Ok(Output::ok(report::to_json(&r))),
                Format::Text => Ok(Output::ok(text::region(&r))),
                Format::Svg => Err(no_svg(cmd)),
            }
        }
        Command::Walls | Command::Enumerate => {
            let corner = parse_corner(required(&cli.corner, "box", cmd)?)?;
            let run = res.enumerate_constancy_regions(&corner)?;
            let body = match (cmd, cli.format) {
                (_, Format::Svg) => svg::render(&res, &run)?,
                (Command::Walls, Format::Json) => report::to_json(&WallsReport::new(&res, &run)),
                (Command::Walls, _) => text::walls(&WallsReport::new(&res, &run)),
                (_, Format::Json) => report::to_json(&EnumerationReport::new(&res, &run)),
                (_, Format::Text) => text::enumeration(&EnumerationReport::new(&res, &run)),
            };
            for w in &run.warnings {
                eprintln!("warning: {w:?}");
            }
            Ok(Output::ok(body))
        }
        Command::JumpingNumbers => {
            let upto = rational::parse(required(&cli.upto, "upto", cmd)?)?;
            let r = jumping_numbers(&res, cli, &upto)?;
            match cli.format {
                Format::Json => Ok(Output::ok(report::to_json(&r))),
                Format::Text => Ok(Output::ok(text::jumping_numbers(&r))),
                Format::Svg => Err(no_svg(cmd)),
            }
        }
        Command::MinJumpingDivisor => {
            let lambda = parse_point(required(&cli.lambda, "lambda", cmd)?)?;
            let g = res.minimal_jumping_divisor(&lambda)?;
            let r = MinimalJumpingDivisorReport::new(&res, &g);
            match cli.format {
                Format::Json => Ok(Output::ok(report::to_json(&r))),
                Format::Text => Ok(Output::ok(text::min_jumping_divisor(&r))),
                Format::Svg => Err(no_svg(cmd)),
            }
        }
        Command::Verify => {
            let lambda = parse_point(required(&cli.lambda, "lambda", cmd)?)?;
            let r = VerifyReport::new(&res, &lambda, DEFAULT_DICHOTOMY_CAP)?;
            let body = match cli.format {
                Format::Json => report::to_json(&r),
                Format::Text => text::verify(&r),
                Format::Svg => return Err(no_svg(cmd)),
            };
            Ok(Output {
                body,
                failed_check: !r.passed,
            })
        }
    }
}

fn jumping_numbers(
    res: &Resolution,
    cli: &Cli,
    upto: &Rational,
) -> Result<JumpingNumbersReport, Failure> {
    let (ideal, direction) = match (&cli.ideal, &cli.direction) {
        (Some(_), Some(_)) => return Err(usage("give either --ideal or --direction, not both")),
        (Some(name), None) => {
            let i = res
                .ideals()
                .index_of(name)
                .ok_or_else(|| Failure::from(Error::UnknownIdeal(name.clone())))?;
            let mut u = vec![BigInt::from(0); res.ideal_count()];
            u[i] = BigInt::from(1);
            (Some(name.clone()), u)
        }
        (None, Some(text)) => (None, parse_direction(text)?),
        (None, None) if res.ideal_count() == 1 => {
            (Some(res.ideals().names()[0].clone()), vec![BigInt::from(1)])
        }
        (None, None) => return Err(usage("--ideal or --direction is required")),
    };
    if direction.iter().all(|u| !u.is_positive()) {
        return Err(usage("direction must have a positive entry"));
    }
    let values = res.wall_ray_restriction(&direction, upto)?;
    Ok(JumpingNumbersReport {
        direction: ideal
            .is_none()
            .then(|| direction.iter().map(Scalar::from_big).collect()),
        ideal,
        upto: rational::format(upto),
        jumping_numbers: values.iter().map(rational::format).collect(),
    })
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("cannot write output: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out.body)?;
        if out.failed_check {
            return Err(Failure {
                code: 4,
                message: "verification failed".into(),
            });
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
