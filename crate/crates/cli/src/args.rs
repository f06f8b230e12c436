use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_MAX_LEN: usize = 12;
pub const DEFAULT_TRUNCATE: u64 = 20;

#[derive(Debug, Parser)]
#[command(name = "tdlc", version, about = "Euler-Poincare characteristics and double-coset zeta functions, exactly")]
pub struct Cli {
    /// Emit {command, inputs, result, identity_checks} as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts of elements by length and the rational growth series.
    Growth {
        #[arg(short = 'c', long = "coxeter", value_name = "FILE")]
        coxeter: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Also compute the rational form and check it against the counts.
        #[arg(long)]
        exact: bool,
    },
    /// Euler-Poincare characteristics.
    #[command(subcommand)]
    Euler(EulerCommand),
    /// Double-coset zeta functions.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Iwahori-Hecke algebra computations.
    Hecke(HeckeArgs),
    /// Run an identity suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum EulerCommand {
    /// Chamber-transitive action on a building of uniform thickness q+1.
    Building {
        #[arg(short = 'c', long = "coxeter", value_name = "FILE")]
        coxeter: PathBuf,
        #[arg(short = 'q', value_name = "Q")]
        q: String,
    },
    /// Fundamental group of a finite graph of profinite groups.
    Gog {
        #[arg(short = 'g', long = "graph", value_name = "FILE")]
        graph: PathBuf,
        /// Subgroup whose measure is the base (default: 1 if all groups are
        /// finite, else the first edge group by name).
        #[arg(long)]
        base: Option<String>,
    },
    /// Split Chevalley group over a local field with residue field of size q.
    Chevalley {
        #[arg(long = "type", value_name = "LETTER")]
        ty: char,
        #[arg(long)]
        rank: usize,
        #[arg(short = 'q', value_name = "Q")]
        q: String,
    },
    /// Orbit data of a proper cocompact action on a contractible complex.
    Complex {
        #[arg(short = 'f', long = "file", value_name = "FILE")]
        file: PathBuf,
        /// Commensurability context: lines `index U V a b`, `order G m`, `subgroup G`.
        #[arg(long, value_name = "FILE")]
        ctx: Option<PathBuf>,
        /// Base subgroup (default: the first stabilizer listed).
        #[arg(long)]
        base: Option<String>,
    },
    /// Uniform lattice with Euler characteristic chi and covolume.
    Lattice {
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long)]
        covol: String,
        #[arg(long, default_value = "O")]
        base: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeSubgroup {
    Vertex,
    Edge,
}

#[derive(Debug, Subcommand)]
pub enum ZetaCommand {
    /// Chamber, parahoric or pro-p level of a building.
    Building {
        #[arg(short = 'c', long = "coxeter", value_name = "FILE")]
        coxeter: PathBuf,
        #[arg(short = 'q', value_name = "Q")]
        q: String,
        /// 1-based generators of a spherical J, e.g. `1,2`.
        #[arg(long, value_name = "i,j,...")]
        parabolic: Option<String>,
        /// Use the pro-p radical of the parahoric.
        #[arg(long)]
        pro_p: bool,
        /// Semisimple rank (default: rank - 1).
        #[arg(long)]
        ssrank: Option<usize>,
        /// Length bound for enumerating double cosets.
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Keep Dirichlet coefficients with n <= N (default: q^max-len).
        #[arg(long, value_name = "N")]
        truncate: Option<u64>,
        /// Also evaluate the closed form at this integer s.
        #[arg(long, value_name = "S", allow_hyphen_values = true)]
        eval_at: Option<i64>,
    },
    /// Vertex or edge stabilizer in the automorphism group of a regular tree.
    Tree {
        #[arg(short = 'd', value_name = "D")]
        d: u64,
        #[arg(long, value_enum)]
        subgroup: TreeSubgroup,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_TRUNCATE)]
        truncate: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeckeOp {
    /// Product of all element blocks, in order.
    Mult,
    /// Trace and augmentation of the product of all element blocks.
    Trace,
    /// Hattori-Stallings rank of an idempotent matrix.
    Rank,
}

#[derive(Debug, Args)]
pub struct HeckeArgs {
    #[arg(short = 'c', long = "coxeter", value_name = "FILE")]
    pub coxeter: PathBuf,
    #[arg(short = 'q', value_name = "Q")]
    pub q: String,
    #[arg(value_enum)]
    pub op: HeckeOp,
    #[arg(short = 'i', long = "input", value_name = "FILE")]
    pub input: PathBuf,
    /// Base subgroup for ranks: `B` or a spherical parahoric such as `P{1}`.
    #[arg(long, default_value = "B")]
    pub base: String,
}
