//! Thin command-line front end. All logic lives in the library; this binary
//! parses arguments, reads instance files, prints reports to stdout and
//! maps outcomes to exit codes (0 ok, 1 violated check, 2 usage or parse
//! error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ecte::format;
use ecte::generator::{generate, GeneratorSpec};
use ecte::report::{
    adversarial_report, certify_report, explore_report, optimal_report, ratio_csv,
    rearrange_report, simulate_report, verify_report, Objective,
};
use ecte::traversal::ChildOrder;
use ecte::tree::Instance;
use ecte::weight::Weight;

#[derive(Parser)]
#[command(
    name = "ecte",
    about = "Budget-constrained exploration of weighted rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and print it in the instance file format.
    Gen(GenArgs),
    /// Decompose a depth-first traversal into budget-bounded routes.
    Explore {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::File)]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the first-route-capped variant at one cap or at the worst cap.
    Adversarial {
        file: PathBuf,
        /// First-route budget; exact decimal or p/q.
        #[arg(long, conflicts_with = "max")]
        bprime: Option<String>,
        /// Sweep all effective caps and report the costliest.
        #[arg(long)]
        max: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::File)]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact brute-force optimum (cost or route count).
    Optimal {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Cost)]
        objective: ObjectiveArg,
        /// Leaf cap for the partition search.
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Run the full inequality-certificate suite (exit 1 on any failure).
    Certify { file: PathBuf },
    /// Split bunched light edges apart; verify the construction conditions.
    Rearrange {
        file: PathBuf,
        /// Perturbation magnitude; computed from the instance when omitted.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Explore the tree online through a reveal gate.
    Simulate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PolicyArg::RevealOrder)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Batch competitive-ratio study over random instances; CSV to stdout.
    Ratio {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
        #[arg(long, default_value_t = 8)]
        nodes: usize,
    },
    /// Structural-invariant suite on one instance (exit 1 on any failure).
    Verify { file: PathBuf },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Star: number of arms.
    #[arg(long, default_value_t = 3)]
    arms: usize,
    /// Star: arm length (exact decimal or p/q).
    #[arg(long, default_value = "5")]
    arm_length: String,
    /// Caterpillar: spine length.
    #[arg(long, default_value_t = 4)]
    spine: usize,
    /// Node count for random / subdivided.
    #[arg(long, default_value_t = 8)]
    nodes: usize,
    #[arg(long, default_value_t = 1)]
    min_weight: u32,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    /// Route budget; families without a default need it.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random: resample until at most this many leaves.
    #[arg(long)]
    max_leaves: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    File,
    Lex,
    Random,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Cost,
    Routes,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    RevealOrder,
    Random,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Star,
    Caterpillar,
    HeavyPath,
    Random,
    Subdivided,
    LowerBound,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen(args) => {
            let spec = spec_from(&args)?;
            let instance = generate(&spec).map_err(|e| e.to_string())?;
            print!("{}", format::serialize(&instance));
            Ok(ExitCode::SUCCESS)
        }
        Command::Explore { file, order, seed } => {
            let instance = load(&file)?;
            let text =
                explore_report(&instance, &child_order(order, seed)).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Adversarial {
            file,
            bprime,
            max,
            order,
            seed,
        } => {
            let instance = load(&file)?;
            let budget = match (&bprime, max) {
                (Some(b), false) => Some(parse_weight(b)?),
                (None, true) => None,
                (None, false) => {
                    return Err("pass either --bprime <X> or --max".into());
                }
                (Some(_), true) => unreachable!("clap conflicts_with"),
            };
            let text = adversarial_report(&instance, &child_order(order, seed), budget.as_ref())
                .map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Optimal {
            file,
            objective,
            cap,
        } => {
            let instance = load(&file)?;
            let objective = match objective {
                ObjectiveArg::Cost => Objective::Cost,
                ObjectiveArg::Routes => Objective::Routes,
            };
            let text = optimal_report(&instance, objective, cap).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { file } => {
            let instance = load(&file)?;
            let (text, ok) = certify_report(&instance).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(check_exit(ok))
        }
        Command::Rearrange { file, epsilon } => {
            let instance = load(&file)?;
            let eps = epsilon.as_deref().map(parse_weight).transpose()?;
            let text = rearrange_report(&instance, eps.as_ref()).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { file, policy, seed } => {
            let instance = load(&file)?;
            let name = match policy {
                PolicyArg::RevealOrder => "reveal-order",
                PolicyArg::Random => "random",
            };
            let text = simulate_report(&instance, name, seed).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Ratio {
            count,
            seed,
            max_leaves,
            nodes,
        } => {
            let csv = ratio_csv(count, seed, max_leaves, nodes).map_err(|e| e.to_string())?;
            print!("{csv}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let instance = load(&file)?;
            let (text, ok) = verify_report(&instance).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(check_exit(ok))
        }
    }
}

fn check_exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &PathBuf) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    format::parse(&text).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

fn child_order(order: OrderArg, seed: u64) -> ChildOrder {
    match order {
        OrderArg::File => ChildOrder::FileOrder,
        OrderArg::Lex => ChildOrder::Lexicographic,
        OrderArg::Random => ChildOrder::Seeded(seed),
    }
}

fn spec_from(args: &GenArgs) -> Result<GeneratorSpec, String> {
    let budget = args.budget.as_deref().map(parse_weight).transpose()?;
    Ok(match args.family {
        FamilyArg::Star => GeneratorSpec::Star {
            arms: args.arms,
            arm_length: parse_weight(&args.arm_length)?,
            budget: budget.ok_or("star needs --budget")?,
        },
        FamilyArg::Caterpillar => GeneratorSpec::Caterpillar {
            spine: args.spine,
            max_weight: args.max_weight,
            budget,
            seed: args.seed,
        },
        FamilyArg::HeavyPath => GeneratorSpec::HeavyPath { seed: args.seed },
        FamilyArg::Random => GeneratorSpec::Random {
            nodes: args.nodes,
            min_weight: args.min_weight,
            max_weight: args.max_weight,
            budget,
            max_leaves: args.max_leaves,
            seed: args.seed,
        },
        FamilyArg::Subdivided => GeneratorSpec::Subdivided {
            nodes: args.nodes,
            seed: args.seed,
        },
        FamilyArg::LowerBound => GeneratorSpec::LowerBoundBranches {
            budget: budget.ok_or("lower-bound needs --budget")?,
        },
    })
}
