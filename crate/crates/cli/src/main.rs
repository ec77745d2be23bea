//! `digisheff` command-line tool.
//!
//! Exit codes: 0 pass, 1 identity failed, 2 usage, 3 invalid family
//! specification, 4 size cap exceeded.

mod args;
mod pretty;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Builder, CapArg, Cli, Command, FamilyArg, OutputArgs, VerifyArgs, VerifyCommand, WidthArg};
use digisheff::digits::min_width;
use digisheff::identity::{self, IdentityReport};
use digisheff::sierpinski::{self, MultiplicativeReport};
use digisheff::umbral::{self, UmbralForm};
use digisheff::{expand_system, json, Axis, Error, FamilyId, ShefferSystem, VerifyOptions};

#[derive(Debug)]
enum Failure {
    Usage(String),
    Spec(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Spec(_) => 3,
            Failure::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Spec(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_)
            | Error::NotInvertible
            | Error::NonzeroConstantTerm
            | Error::NotDeltaSeries
            | Error::TruncationTooShort { .. }
            | Error::NonUnitConstant(_) => Failure::Spec(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Rendered, Failure>;

/// One command's result in both output styles, plus the verdict for
/// `verify` commands.
struct Rendered {
    json: Value,
    pretty: String,
    pass: Option<bool>,
}

fn resolve_family(arg: &FamilyArg) -> Result<FamilyId, Failure> {
    if let Some(path) = arg.name.strip_prefix("custom:") {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let spec = json::spec_from_str(&text).map_err(|e| Failure::Spec(e.to_string()))?;
        return Ok(FamilyId::Custom(Box::new(spec)));
    }
    arg.name.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

/// Every failure while expanding is a problem with the family data.
fn system(arg: &FamilyArg, degree: usize) -> Result<ShefferSystem, Failure> {
    let family = resolve_family(arg)?;
    expand_system(&family, degree).map_err(|e| Failure::Spec(e.to_string()))
}

fn digit_degree(base: u64) -> Result<usize, Failure> {
    if base < 2 {
        return Err(Error::BadBase(base).into());
    }
    Ok(base as usize - 1)
}

fn check_cap(base: u64, levels: usize, cap: &CapArg) -> Result<(), Failure> {
    digit_degree(base)?;
    let dim = sierpinski::dimension(base, levels)
        .map_err(|_| Failure::Cap(format!("{base}^{levels} rows exceed the size cap of {}", cap.size_cap)))?;
    if dim > cap.size_cap {
        return Err(Failure::Cap(format!("{dim} rows exceed the size cap of {}", cap.size_cap)));
    }
    Ok(())
}

fn width(n: u64, base: u64, arg: &WidthArg) -> Result<usize, Failure> {
    digit_degree(base)?;
    match arg.levels {
        Some(w) => Ok(w),
        None => Ok(min_width(n, base)?),
    }
}

fn options(common: &VerifyArgs) -> VerifyOptions {
    let mut opts = match (common.fast, common.seed) {
        (true, Some(seed)) => VerifyOptions::probabilistic(seed),
        _ => VerifyOptions::exact(),
    };
    opts.tamper = common.tamper;
    opts
}

fn report(r: IdentityReport) -> Rendered {
    Rendered { json: json::report_to_json(&r), pretty: pretty::report(&r), pass: Some(r.pass) }
}

fn mult_report(r: MultiplicativeReport) -> Rendered {
    Rendered { json: json::multiplicative_to_json(&r), pretty: pretty::multiplicative(&r), pass: Some(r.pass()) }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Expand { family, degree, .. } => {
            let sys = system(family, *degree)?;
            Ok(Rendered { json: json::system_to_json(&sys), pretty: pretty::system(&sys), pass: None })
        }
        Command::Matrix { kind, family, base, levels, builder, cap, .. } => {
            check_cap(*base, *levels, cap)?;
            let sys = system(family, digit_degree(*base)?)?;
            let vars = sierpinski::symbolic_vars(Axis::X, *levels);
            let build = match builder {
                Builder::Direct => sierpinski::build_direct,
                Builder::Kronecker => sierpinski::build_kronecker,
            };
            let m = build((*kind).into(), &sys, *base, *levels, &vars)?;
            Ok(Rendered { json: json::matrix_to_json(&m), pretty: pretty::matrix(&m), pass: None })
        }
        Command::Verify { identity } => verify(identity),
    }
}

fn verify(cmd: &VerifyCommand) -> Outcome {
    match cmd {
        VerifyCommand::Mult { family, base, levels, cap, common } => {
            check_cap(*base, *levels, cap)?;
            let sys = system(family, digit_degree(*base)?)?;
            Ok(mult_report(sierpinski::verify_multiplicative(&sys, *base, *levels, &options(common))?))
        }
        VerifyCommand::Digital { family, base, n, width: w, kind, common } => {
            let width = width(*n, *base, w)?;
            let sys = system(family, digit_degree(*base)?)?;
            Ok(report(identity::verify_digital_binomial(&sys, *base, *n, width, (*kind).into(), &options(common))?))
        }
        VerifyCommand::Corollary { family, base, levels, kind, common } => {
            let sys = system(family, digit_degree(*base)?)?;
            Ok(report(identity::verify_digital_power(&sys, *base, *levels, (*kind).into(), &options(common))?))
        }
        VerifyCommand::BernoulliPower { base, levels, no_y, common } => {
            Ok(report(identity::verify_bernoulli_power(*base, *levels, !no_y, &options(common))?))
        }
        VerifyCommand::Multinomial { family, base, n, d, width: w, kind, common } => {
            let width = width(*n, *base, w)?;
            let sys = system(family, digit_degree(*base)?)?;
            Ok(report(identity::verify_multinomial(&sys, *base, *n, width, *d, (*kind).into(), &options(common))?))
        }
        VerifyCommand::Umbral { family, n, d, digital, base, width: w, common } => {
            let seed = common.seed.unwrap_or(0);
            let (form, bound) = if *digital {
                let width = width(*n, *base, w)?;
                (UmbralForm::Digital { base: *base, n: *n, width }, digit_degree(*base)?)
            } else {
                let n = usize::try_from(*n).map_err(|_| Failure::Usage(format!("n = {n} is too large")))?;
                (UmbralForm::Classical { n }, n)
            };
            let sys = system(family, bound)?;
            let fs = umbral::seeded_functionals(seed, *d, bound);
            Ok(report(umbral::verify_roman_rota(&sys, &fs, form, &options(common))?))
        }
        VerifyCommand::Crosscheck { family, base, n, width: w, kind, cap, common } => {
            let width = width(*n, *base, w)?;
            check_cap(*base, width, cap)?;
            let sys = system(family, digit_degree(*base)?)?;
            Ok(report(identity::crosscheck_matrix_extraction(
                &sys,
                *base,
                *n,
                width,
                (*kind).into(),
                &options(common),
            )?))
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Expand { out, .. } | Command::Matrix { out, .. } => out,
        Command::Verify { identity } => match identity {
            VerifyCommand::Mult { common, .. }
            | VerifyCommand::Digital { common, .. }
            | VerifyCommand::Corollary { common, .. }
            | VerifyCommand::BernoulliPower { common, .. }
            | VerifyCommand::Multinomial { common, .. }
            | VerifyCommand::Umbral { common, .. }
            | VerifyCommand::Crosscheck { common, .. } => &common.out,
        },
    }
}

fn emit(out: &OutputArgs, r: &Rendered) -> std::io::Result<()> {
    let mut text = if out.pretty { r.pretty.clone() } else { r.json.to_string() };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(rendered) => {
            if let Err(e) = emit(output_args(&cli.command), &rendered) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            match rendered.pass {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
