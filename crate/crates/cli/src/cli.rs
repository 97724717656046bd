use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyadic_core::Domain;

#[derive(Debug, Parser)]
#[command(
    name = "polyadic",
    version,
    about = "Block-shift polyadization of matrix groups and polyadic axiom checks",
    after_help = "Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Arity n of the polyadic product (n >= 2).
    #[arg(long, global = true, value_parser = parse_arity)]
    pub arity: Option<usize>,
    /// Scalar domain: rational, complex-rational, grassmann:N or turns.
    #[arg(long, global = true, value_parser = parse_domain)]
    pub scalar: Option<Domain>,
    /// Number of random trials for randomized checks.
    #[arg(long, global = true, default_value_t = polyadic_core::verify::DEFAULT_TRIALS)]
    pub trials: usize,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run independent trials on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,
}

pub fn parse_arity(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("'{s}' is not a whole number"))?;
    if n < 2 {
        return Err("arity must be ≥ 2".into());
    }
    Ok(n)
}

pub fn parse_domain(s: &str) -> Result<Domain, String> {
    Domain::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a block-shift matrix from its n-1 blocks.
    Polyadize(PolyadizeArgs),
    /// Querelement of a block-shift matrix, with the querelement law checked.
    Quer(InputArgs),
    /// The n-ary identity of block size p, checked at the chosen placements.
    Identity(IdentityArgs),
    /// Complete free blocks to an n-ary idempotent.
    Idempotent(IdempotentArgs),
    /// Polyadized determinant character of a block-shift matrix.
    Character(InputArgs),
    /// Run the axiom checks on a structure or on a fixture of elements.
    Verify(VerifyArgs),
    /// Shift-diagonal and diagonal-shift decompositions.
    #[command(subcommand)]
    Decompose(DecomposeCommand),
    /// The shift-deformed n-ary sum on tuples.
    #[command(subcommand)]
    Shiftdeform(ShiftdeformCommand),
    /// Worked examples: SO(2), GL(2) and GL(1|1).
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Time blockwise against dense n-fold products (floating point).
    Bench(BenchArgs),
    /// Run a job described by a JSON file.
    Job(JobArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON block-shift matrix.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct PolyadizeArgs {
    /// JSON array of the n-1 blocks (a single matrix with --unique).
    #[arg(long, alias = "blocks")]
    pub input: PathBuf,
    /// Repeat one square block n-1 times.
    #[arg(long)]
    pub unique: bool,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 2)]
    pub block_size: usize,
    /// 1-based placements to check; all n by default.
    #[arg(long, value_delimiter = ',')]
    pub positions: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct IdempotentArgs {
    #[arg(long, default_value_t = 2)]
    pub block_size: usize,
    /// JSON array of the n-2 free invertible blocks; random when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureKind {
    Blockshift,
    Shiftdeform,
    So2,
    Gl2,
    Gl11,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// Associativity and querelement law.
    All,
    Associativity,
    Querelement,
    Identity,
    Commutative,
    /// Confirm each checker catches a corrupted operation.
    Mutation,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = StructureKind::Blockshift)]
    pub structure: StructureKind,
    #[arg(long = "check", value_enum, value_delimiter = ',', default_value = "all")]
    pub checks: Vec<CheckKind>,
    /// Block size for random block-shift elements.
    #[arg(long, default_value_t = 2)]
    pub block_size: usize,
    /// Tuple length for the shift-deformed sum; n-1 by default.
    #[arg(long)]
    pub m: Option<usize>,
    /// Fixture of block-shift elements (and optionally their claimed
    /// querelements) to sample from instead of random elements.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecompositionKind {
    Shiftdiag,
    Diagshift,
    Pmatrix,
}

#[derive(Debug, Subcommand)]
pub enum DecomposeCommand {
    /// Closure, addition and total associativity on random instances.
    Verify {
        #[arg(long, value_enum)]
        kind: DecompositionKind,
        /// Component sizes (shift-diagonal), largest shift dim of each
        /// component (diagonal-shift) or the block size (P matrix).
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        sizes: Vec<usize>,
    },
    /// Whether the two embeddings have different supports.
    Patterns {
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        sizes: Vec<usize>,
    },
    /// Product of elements read from JSON files (n files, 3 for P matrices).
    Product {
        #[arg(long, value_enum)]
        kind: DecompositionKind,
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct TupleArgs {
    /// Tuples written as comma-separated components, e.g. 1,2,3.
    pub tuples: Vec<String>,
    /// JSON array of tuples (arrays of component strings or numbers).
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ShiftdeformCommand {
    /// The deformed sum of n tuples, next to the undeformed sum.
    Eval(TupleArgs),
    /// Querelement of one tuple, with the querelement law checked.
    Quer(TupleArgs),
    /// Whether a tuple lies in the identity set.
    Identity(TupleArgs),
    /// Search for a total-associativity violation.
    Assoc {
        /// Tuple length; n-1 by default.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// 4-ary SO(2) products on angle triples (exact turns).
    #[command(subcommand)]
    So2(So2Command),
    /// Ternary GL(2) block-shift matrices.
    #[command(subcommand)]
    Gl2(Gl2Command),
    /// Ternary GL(1|1) supermatrices over a Grassmann algebra.
    #[command(subcommand)]
    Gl11(Gl11Command),
}

#[derive(Debug, Subcommand)]
pub enum So2Command {
    /// 4-ary product of four angle triples, by three independent routes.
    Product(InputArgs),
    /// Querelement of one angle triple.
    Quer(InputArgs),
    /// Whether an angle triple is a polyadic identity.
    Identity(InputArgs),
    /// Random agreement and querelement checks.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum Gl2Command {
    /// Block-shift matrix from three 2x2 blocks.
    Instance(InputArgs),
    /// Closed-form querelement compared with the general one.
    Quer(InputArgs),
    /// The residuals of the idempotent equations.
    Idempotent(InputArgs),
    /// Engine checks plus the character homomorphism on random instances.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum Gl11Command {
    /// Block-shift matrix from two (1|1) supermatrices.
    Instance(InputArgs),
    /// Querelement, with the querelement law checked.
    Quer(InputArgs),
    /// Component equations and querelement law on random instances.
    Verify,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 64)]
    pub block_size: usize,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    pub file: PathBuf,
}
