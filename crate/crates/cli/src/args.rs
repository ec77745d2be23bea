use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digisheff::identity::IdentityForm;
use digisheff::MatrixKind;

/// Exact Sheffer-sequence tables, generalized Sierpiński matrices and digital
/// binomial identity checks. Output is canonical JSON.
#[derive(Parser, Debug)]
#[command(name = "digisheff", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand the Sheffer and associated tables of a family up to a degree.
    Expand {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build a symbolic generalized Sierpiński matrix.
    Matrix {
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Builder::Direct)]
        builder: Builder,
        #[command(flatten)]
        cap: CapArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check an identity; exits 0 on pass and 1 on failure.
    Verify {
        #[command(subcommand)]
        identity: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// P(x)S(y) = S(x+y) and P(x)P(y) = P(x+y) for the matrices of one family.
    Mult {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        levels: usize,
        #[command(flatten)]
        cap: CapArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Digital binomial identity at one index n.
    Digital {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        width: WidthArg,
        #[arg(long, value_enum, default_value_t = FormArg::Sheffer)]
        kind: FormArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Digital power identity at n = b^levels - 1 with a single x and y.
    Corollary {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = FormArg::Sheffer)]
        kind: FormArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Bernoulli power formula, with its rescaled and literal companions.
    BernoulliPower {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        levels: usize,
        /// Set y = 0, so the right side runs over Bernoulli numbers.
        #[arg(long)]
        no_y: bool,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// d-fold digital multinomial identity.
    Multinomial {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        width: WidthArg,
        #[arg(long, value_enum, default_value_t = FormArg::Sheffer)]
        kind: FormArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Umbral product identity on the associated sequence, with random
    /// functionals drawn from --seed (default 0).
    Umbral {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Use the digit-product form instead of the classical one.
        #[arg(long)]
        digital: bool,
        #[arg(long, default_value_t = 2, requires = "digital")]
        base: u64,
        #[command(flatten)]
        width: WidthArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Read entry (n, 0) off the matrix identity and compare it with the
    /// digital binomial identity.
    Crosscheck {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        width: WidthArg,
        #[arg(long, value_enum, default_value_t = FormArg::Sheffer)]
        kind: FormArg,
        #[command(flatten)]
        cap: CapArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArg {
    /// bernoulli | hermite | laguerre:<alpha> | monomial | rising | custom:<file>
    #[arg(long = "family", default_value = "monomial")]
    pub name: String,
}

#[derive(Args, Debug)]
pub struct WidthArg {
    /// Number of digit positions; defaults to the number of digits of n.
    #[arg(long = "levels")]
    pub levels: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CapArg {
    /// Largest allowed matrix row count.
    #[arg(long = "size-cap", env = "DIGISHEFF_SIZE_CAP", default_value_t = 256)]
    pub size_cap: usize,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Human-readable text instead of JSON.
    #[arg(long)]
    pub pretty: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Bind variables to seeded random rationals instead of comparing
    /// symbolically.
    #[arg(long, requires = "seed")]
    pub fast: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, hide = true)]
    pub tamper: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KindArg {
    S,
    P,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::S => MatrixKind::S,
            KindArg::P => MatrixKind::P,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builder {
    Direct,
    Kronecker,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormArg {
    Sheffer,
    Binomial,
}

impl From<FormArg> for IdentityForm {
    fn from(k: FormArg) -> Self {
        match k {
            FormArg::Sheffer => IdentityForm::Sheffer,
            FormArg::Binomial => IdentityForm::BinomialType,
        }
    }
}
