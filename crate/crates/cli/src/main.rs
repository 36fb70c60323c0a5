use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

use output::{Exit, Report};

#[derive(Parser)]
#[command(name = "gentorsion")]
#[command(about = "Construct, verify, search for and refute generalized torsion certificates")]
#[command(version)]
struct Cli {
    /// Print machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Write the produced witness file (or the JSON report) to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of conjugates in a witness
    #[arg(long, default_value_t = 4)]
    max_conjugates: usize,

    /// Word-length radius of the conjugator ball
    #[arg(long, default_value_t = 2)]
    ball_radius: usize,

    /// Maximum number of partial products explored
    #[arg(long, default_value_t = gentorsion::search::DEFAULT_NODE_CAP)]
    node_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a witness file against the defining equation
    Verify {
        #[arg(long)]
        witness: PathBuf,

        /// Cap for the order search used to classify the base
        #[arg(long, default_value_t = gentorsion::witness::DEFAULT_ORDER_CAP)]
        order_cap: u64,
    },

    /// Breadth-first search for a witness
    Search {
        #[arg(long)]
        group: PathBuf,

        #[arg(long)]
        element: String,

        #[command(flatten)]
        budget: BudgetArgs,

        /// Disable the abelianization pruning
        #[arg(long)]
        no_obstruction: bool,
    },

    /// Build a witness with one of the constructions
    #[command(subcommand)]
    Construct(Construct),

    /// Lower and upper scl bounds for an element
    Bounds {
        #[arg(long)]
        group: PathBuf,

        #[arg(long)]
        element: String,

        /// Witness whose length gives an upper bound
        #[arg(long)]
        witness: Option<PathBuf>,
    },

    /// Try to certify that an element is not generalized torsion
    Refute {
        #[arg(long)]
        group: PathBuf,

        #[arg(long)]
        element: String,
    },

    /// Decide whether a group is a generalized torsion group
    Classify {
        /// Group file from the zoo
        #[arg(long, conflicts_with_all = ["factors_a", "factors_b"])]
        group: Option<PathBuf>,

        /// Cyclic orders of A for a free product A * B (0 or inf for Z)
        #[arg(long, value_delimiter = ',', value_parser = parse_order, requires = "factors_b")]
        factors_a: Option<Vec<u64>>,

        /// Cyclic orders of B for a free product A * B (0 or inf for Z)
        #[arg(long, value_delimiter = ',', value_parser = parse_order, requires = "factors_a")]
        factors_b: Option<Vec<u64>>,

        /// Radius of the sampled element ball
        #[arg(long, default_value_t = 2)]
        element_radius: usize,

        /// Also probe whether torsion elements of this ball form a subgroup
        #[arg(long)]
        probe_radius: Option<usize>,

        #[arg(long, default_value_t = gentorsion::witness::DEFAULT_ORDER_CAP)]
        order_cap: u64,

        #[command(flatten)]
        budget: BudgetArgs,

        /// Human-readable Markdown report instead of plain text
        #[arg(long)]
        markdown: bool,
    },

    /// Search every element of a ball; JSON output is one line per element
    Survey {
        #[arg(long)]
        group: PathBuf,

        #[arg(long, default_value_t = 2)]
        element_radius: usize,

        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Scripted checks of closure under quotients, extensions and subgroups
    ClosureSuite,
}

#[derive(Subcommand)]
enum Construct {
    /// Witness for a·b with a and b torsion
    ProdTorsion {
        #[arg(long)]
        group: PathBuf,

        /// The two torsion factors, in order
        #[arg(long = "element", num_args = 1, required = true)]
        elements: Vec<String>,
    },

    /// Lift a quotient witness through an extension with torsion kernel
    LiftTorsionKernel {
        #[arg(long)]
        morphism: PathBuf,

        #[arg(long)]
        element: String,

        /// Witness for the image of the element in the codomain
        #[arg(long)]
        witness: PathBuf,

        #[arg(long, default_value_t = gentorsion::witness::DEFAULT_ORDER_CAP)]
        order_cap: u64,
    },

    /// Lift a quotient witness; the kernel residual is found by search
    LiftGtKernel {
        #[arg(long)]
        morphism: PathBuf,

        #[arg(long)]
        element: String,

        #[arg(long)]
        witness: PathBuf,

        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Witness for k^n in BS(1, m) with m < 0
    BsPower {
        #[arg(long)]
        group: PathBuf,

        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        power: String,
    },

    /// Length-two witness in the infinite dihedral group
    Dinf {
        #[arg(long)]
        group: PathBuf,

        #[arg(long)]
        element: String,
    },

    /// The element repeated as many times as its order
    Torsion {
        #[arg(long)]
        group: PathBuf,

        #[arg(long)]
        element: String,
    },
}

fn parse_order(s: &str) -> Result<u64, String> {
    match s.trim() {
        "inf" | "Z" => Ok(0),
        t => t
            .parse()
            .map_err(|_| format!("`{t}` is not a cyclic order (use a positive integer, 0 or inf)")),
    }
}

fn dispatch(command: Command) -> Result<Report, output::Failure> {
    use commands as c;
    match command {
        Command::Verify { witness, order_cap } => c::verify(&witness, order_cap),
        Command::Search {
            group,
            element,
            budget,
            no_obstruction,
        } => c::search(&group, &element, budget.into(), !no_obstruction),
        Command::Construct(which) => match which {
            Construct::ProdTorsion { group, elements } => c::prod_torsion(&group, &elements),
            Construct::LiftTorsionKernel {
                morphism,
                element,
                witness,
                order_cap,
            } => c::lift_torsion_kernel(&morphism, &element, &witness, order_cap),
            Construct::LiftGtKernel {
                morphism,
                element,
                witness,
                budget,
            } => c::lift_gt_kernel(&morphism, &element, &witness, budget.into()),
            Construct::BsPower { group, power } => c::bs_power(&group, &power),
            Construct::Dinf { group, element } => c::dinf(&group, &element),
            Construct::Torsion { group, element } => c::torsion(&group, &element),
        },
        Command::Bounds {
            group,
            element,
            witness,
        } => c::bounds(&group, &element, witness.as_deref()),
        Command::Refute { group, element } => c::refute(&group, &element),
        Command::Classify {
            group,
            factors_a,
            factors_b,
            element_radius,
            probe_radius,
            order_cap,
            budget,
            markdown,
        } => c::classify(c::ClassifyArgs {
            group,
            factors: factors_a.zip(factors_b),
            element_radius,
            probe_radius,
            order_cap,
            budget: budget.into(),
            markdown,
        }),
        Command::Survey {
            group,
            element_radius,
            budget,
        } => c::survey(&group, element_radius, budget.into()),
        Command::ClosureSuite => c::closure_suite(),
    }
}

impl From<BudgetArgs> for gentorsion::SearchBudget {
    fn from(b: BudgetArgs) -> Self {
        gentorsion::SearchBudget::new(b.max_conjugates, b.ball_radius, b.node_cap)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Exit::Usage
            } else {
                Exit::Affirmative
            };
            let _ = e.print();
            return code.into();
        }
    };
    match dispatch(cli.command) {
        Ok(report) => report.emit(cli.json, cli.out.as_deref()),
        Err(failure) => failure.emit(),
    }
}
