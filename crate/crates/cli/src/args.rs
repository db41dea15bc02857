use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "affsl2", version, about = "Exact computations with generalized Verma modules for affine sl(2)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Seed for randomized orderings.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Upper bound on the number of basis vectors of any module built.
    #[arg(long, env = "AFFSL2_BASIS_CAP", global = true)]
    pub basis_cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    JsonLines,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fusion rule for V^M(p) x V^M(q) -> V^M(r), or into L(r) with --irreducible.
    Fusion(FusionArgs),
    /// Highest weights and grade shifts of the resolution of L(n, level).
    Resolve(ResolveArgs),
    /// Gram ranks and coranks per weight block at one grade.
    Radical(ModuleArgs),
    /// Gram matrices of the invariant pairing at one grade.
    Gram(GramArgs),
    /// Graded dimensions of V^M(n) and of its irreducible quotient.
    Character(ModuleArgs),
    /// Build, verify or descend intertwining operators.
    Intertwine {
        #[command(subcommand)]
        action: IntertwineAction,
    },
}

#[derive(Args, Debug)]
pub struct FusionArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub level: usize,
    /// Take q and r as irreducible modules.
    #[arg(long)]
    pub irreducible: bool,
}

#[derive(Args, Debug)]
pub struct ResolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub level: usize,
    #[arg(long, default_value_t = 4)]
    pub j_max: usize,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub level: usize,
    #[arg(long)]
    pub grade: usize,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Restrict to one h-weight.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum IntertwineAction {
    /// Build the component maps and print a summary.
    Build(IntertwineArgs),
    /// Build and run the commutator and Jacobi checks.
    Verify(IntertwineArgs),
    /// Build and descend to the irreducible quotients.
    Descend(IntertwineArgs),
}

#[derive(Args, Debug)]
pub struct IntertwineArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub level: usize,
    #[arg(long, default_value_t = 3)]
    pub grade: usize,
    /// Run the construction even when its hypotheses fail.
    #[arg(long)]
    pub override_conditions: bool,
}
