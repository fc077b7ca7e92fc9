use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "logw", version, about = "Exact root-system, character and Fock-space computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data of a simply-laced type.
    Root {
        #[command(subcommand)]
        cmd: RootCmd,
    },
    /// Module parameters `lambda`.
    Lambda {
        #[command(subcommand)]
        cmd: LambdaCmd,
    },
    /// Carries of the shifted Weyl action.
    Epsilon {
        #[command(subcommand)]
        cmd: EpsilonCmd,
    },
    /// Alcove and novel conditions.
    Cond {
        #[command(subcommand)]
        cmd: CondCmd,
    },
    /// Both sides of the character identity.
    Char {
        #[command(subcommand)]
        cmd: CharCmd,
    },
    /// Lattice Fock spaces and screening kernels.
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// `dim H^n(P_i x_B C_mu)` for `n = 0, 1`.
    Dims(DimsArgs),
}

#[derive(Debug, Args)]
pub struct TypeArg {
    /// Root system, e.g. A2, D4, E6.
    #[arg(long = "type", value_name = "TYPE")]
    pub ty: String,
}

#[derive(Debug, Args)]
pub struct Level {
    #[command(flatten)]
    pub ty: TypeArg,
    #[arg(short = 'p', value_name = "P")]
    pub p: i64,
}

#[derive(Debug, Args)]
pub struct Module {
    #[command(flatten)]
    pub level: Level,
    /// `0` or `hat=<k|0>,s=<c1,...,cl>`.
    #[arg(long, value_name = "LAMBDA", default_value = "0")]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum RootCmd {
    Info(TypeArg),
}

#[derive(Debug, Subcommand)]
pub enum LambdaCmd {
    List {
        #[command(flatten)]
        level: Level,
        /// Only parameters with (s + rho, theta) <= p.
        #[arg(long)]
        alcove: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum EpsilonCmd {
    /// Step carries along a word; the first letter acts first. Defaults to the fixed `w0` word.
    Chain {
        #[command(flatten)]
        module: Module,
        #[arg(long, value_name = "I,J,...")]
        word: Option<String>,
    },
    /// `epsilon_lambda(sigma)` for `sigma` given as a written word.
    Of {
        #[command(flatten)]
        module: Module,
        #[arg(long, value_name = "I,J,...", default_value = "")]
        word: String,
    },
    /// Carries along `w0` grouped into blocks.
    Table2 {
        #[command(flatten)]
        module: Module,
    },
}

#[derive(Debug, Subcommand)]
pub enum CondCmd {
    Check {
        #[command(flatten)]
        module: Module,
        /// Index set for the novel condition; all of Pi by default.
        #[arg(long = "j", value_name = "I,J,...")]
        j: Option<String>,
    },
    Scan {
        #[command(flatten)]
        level: Level,
    },
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[command(flatten)]
    pub module: Module,
    /// Truncation order in q.
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    pub qmax: String,
    /// Evaluate the right-hand side outside the alcove (flagged as conjectural).
    #[arg(long = "unsafe")]
    pub allow_outside: bool,
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    Euler(CharArgs),
    Rhs(CharArgs),
    Compare(CharArgs),
}

#[derive(Debug, Args)]
pub struct Graded {
    #[command(flatten)]
    pub module: Module,
    /// Bound on the conformal weight.
    #[arg(long, value_name = "D", allow_negative_numbers = true)]
    pub deltamax: String,
}

#[derive(Debug, Subcommand)]
pub enum FockCmd {
    Basis(Graded),
    Kernel {
        #[command(flatten)]
        graded: Graded,
        /// Screening indices; all of Pi by default, `--j ""` for none.
        #[arg(long = "j", value_name = "I,J,...")]
        j: Option<String>,
        /// Split each grade by h-weight.
        #[arg(long)]
        refine: bool,
        /// Compare with the right-hand side of the character identity.
        #[arg(long)]
        compare: bool,
    },
    Relations {
        #[command(flatten)]
        level: Level,
        #[arg(long, value_name = "D", allow_negative_numbers = true)]
        deltamax: String,
    },
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    /// Weight in fundamental coordinates.
    #[arg(long, value_name = "C1,...,CL", allow_hyphen_values = true)]
    pub mu: String,
    /// Simple root index.
    #[arg(long = "i", value_name = "I")]
    pub i: usize,
}
