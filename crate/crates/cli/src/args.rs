use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "glocal", version, about = "Exact experiments on unramified GL_n, reported as canonical JSON")]
pub struct Cli {
    /// Largest group or candidate set scanned exhaustively.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, simple roots and axiom checks for a named system.
    Roots {
        #[command(subcommand)]
        system: RootsCmd,
    },
    /// Cartan matrix of a simple system given as JSON integer vectors.
    Cartan {
        #[arg(long)]
        roots: String,
        /// Test the Cartan conditions.
        #[arg(long)]
        check: bool,
        /// Factor A = D S.
        #[arg(long)]
        ds: bool,
    },
    /// The Lang map on GL_s(F_(p^d)) under the p-power Frobenius.
    Lang {
        #[command(subcommand)]
        op: LangCmd,
    },
    /// Non-abelian H^1 of the Frobenius on GL_s over a Galois ring tower.
    H1 {
        #[arg(long, value_enum, default_value_t = GroupName::Gl)]
        group: GroupName,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Conjugacy classes of GL_s(F_q) against twisted classes of GL_s(F_(q^n)).
    DmCheck {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Chamber simplices, stabilizer patterns, Iwasawa, residue audits.
    Building {
        #[command(subcommand)]
        op: BuildingCmd,
    },
    /// Satake transform of a basis element T_lambda.
    Satake {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Spherical and twisted Hecke algebra products.
    Hecke {
        #[command(subcommand)]
        op: HeckeCmd,
    },
    /// Local L-factors of Satake parameters.
    Lfactor(LfactorArgs),
    /// Run a named batch: paper-audit or full.
    Suite { name: String },
    /// Run a command described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupName {
    Gl,
}

#[derive(Debug, Subcommand)]
pub enum RootsCmd {
    Gl {
        #[arg(long)]
        n: usize,
    },
    G2,
}

#[derive(Debug, Subcommand)]
pub enum LangCmd {
    /// Size of the image of X -> X^-1 sigma(X).
    Image {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Solve X^-1 sigma(X) = Y; entries are element codes.
    Preimage {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        max_ext: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildingCmd {
    Simplices {
        #[arg(long)]
        n: usize,
    },
    Pattern {
        #[arg(long, value_delimiter = ',')]
        simplex: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
    Iwasawa {
        /// Integer matrix as JSON rows.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        precision: u32,
        /// The matrix is p^offset times the given one.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i32,
    },
    Audit {
        #[arg(value_enum)]
        kind: AuditKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuditKind {
    Ub,
    Selfnorm,
}

#[derive(Debug, Subcommand)]
pub enum HeckeCmd {
    /// Convolution of two elements given as JSON [{"lambda": [..], "coeff": int}].
    Convolve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        p: u64,
    },
    /// Twisted algebra of Q_p^*; supports as m:c lists.
    Gl1 {
        /// trivial, or tame:k for the tame character of F_p^*.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        g: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct LfactorArgs {
    #[command(subcommand)]
    pub op: Option<LfactorCmd>,
    #[command(flatten)]
    pub split: Option<RepArgs>,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// trivial, standard, dual, symK or wedgeK.
    #[arg(long)]
    pub rep: String,
    /// Names of the Satake parameter entries.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Subcommand)]
pub enum LfactorCmd {
    /// GL_n x GL_m Rankin-Selberg factor.
    Rankin {
        #[arg(long, value_delimiter = ',')]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<String>,
        #[arg(long)]
        q: u64,
    },
    /// Base change through a degree-d unramified extension.
    Bc {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        rep: RepArgs,
        /// Frobenius permutation of the torus coordinates; identity if absent.
        #[arg(long, value_delimiter = ',')]
        action: Option<Vec<usize>>,
    },
}
