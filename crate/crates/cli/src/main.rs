//! `tautilt`: command-line front end for the tautilt library.

mod commands;
mod cover;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tautilt::error::Category;
use tautilt::field::F2147483647;
use tautilt::rep::TrialBudget;
use tautilt::{Field, Rational};

#[derive(Parser, Debug)]
#[command(
    name = "tautilt",
    version,
    about = "Support tau-tilting pairs and Galois coverings of bound quiver algebras"
)]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Ground field: rationals or the prime 2^31 - 1.
    #[arg(long, global = true, value_enum, default_value_t = FieldChoice::Q)]
    field: FieldChoice,
    /// Seed for the randomized isomorphism searches.
    #[arg(long, global = true, default_value_t = TrialBudget::default().seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldChoice {
    Q,
    P,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound quiver algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Modules.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Support tau-tilting pairs.
    #[command(subcommand)]
    Tautilt(TautiltCmd),
    /// Windows of Galois coverings.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Runs the worked example end to end and prints a summary.
    PaperExample,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Admissibility, dimension and fundamental group.
    Check { quiver: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// Auslander-Reiten translate of a module file.
    Tau {
        module: PathBuf,
        /// Algebra file; defaults to the one named in the module header.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum TautiltCmd {
    /// Explores the mutation quiver from (A, 0).
    Enumerate {
        quiver: PathBuf,
        /// Writes the mutation quiver as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Node cap.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Run the mutations of each level on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    pub quiver: PathBuf,
    /// Grading file.
    #[arg(long)]
    pub grading: PathBuf,
    /// Base vertex at the center of the window.
    #[arg(long)]
    pub center: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub radius: usize,
    /// Comma-separated tower choices `a_1,a_2,...`; fibers become cosets of
    /// the stage given by `--stage`.
    #[arg(long, requires = "stage")]
    pub tower: Option<String>,
    #[arg(long, requires = "tower")]
    pub stage: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Builds a window and checks the covering property on it.
    Window(WindowArgs),
    /// Pushes a module on the window down to the base.
    Pushdown {
        #[command(flatten)]
        window: WindowArgs,
        /// Module file over the window (vertices named `x_label`).
        #[arg(long)]
        module: PathBuf,
    },
    /// Lifts a string of a monomial algebra starting at a window vertex.
    LiftString {
        #[command(flatten)]
        window: WindowArgs,
        /// Walk, right to left, e.g. `c^-1 e a d^-1 b`.
        #[arg(long)]
        string: String,
        /// Start vertex, `x@label`.
        #[arg(long)]
        start: String,
    },
    /// Mutates the lift of (A, 0) along a sequence of positions.
    MutateOrbit {
        #[command(flatten)]
        window: WindowArgs,
        /// Comma-separated positions `summand:K` or `vertex:X`.
        #[arg(long)]
        path: String,
    },
    /// Explores orbit mutations and base mutations in lockstep.
    VerifyCommute {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        sequential: bool,
    },
}

/// Lines of a report, each with a text and a JSON form.
#[derive(Default)]
pub struct Report {
    lines: Vec<(String, Value)>,
    /// 0 on success, 1 when a check ran and failed, 4 when a search hit
    /// its budget.
    pub code: u8,
}

impl Report {
    pub fn line(&mut self, text: impl Into<String>, value: Value) {
        self.lines.push((text.into(), value));
    }

    fn print(&self, as_json: bool) {
        for (text, value) in &self.lines {
            if as_json {
                println!("{value}");
            } else {
                println!("{text}");
            }
        }
    }
}

pub struct Ctx {
    pub budget: TrialBudget,
}

fn dispatch<F: Field>(cmd: &Command, ctx: &Ctx) -> Result<Report> {
    match cmd {
        Command::Algebra(AlgebraCmd::Check { quiver }) => commands::algebra_check::<F>(quiver),
        Command::Module(ModuleCmd::Tau { module, algebra }) => commands::module_tau::<F>(module, algebra.as_deref()),
        Command::Tautilt(TautiltCmd::Enumerate {
            quiver,
            dot,
            budget,
            sequential,
        }) => commands::enumerate::<F>(quiver, dot.as_deref(), *budget, *sequential),
        Command::Cover(c) => match c {
            CoverCmd::Window(w) => cover::window::<F>(w),
            CoverCmd::Pushdown { window, module } => cover::pushdown::<F>(window, module),
            CoverCmd::LiftString { window, string, start } => cover::lift_string::<F>(window, string, start, ctx),
            CoverCmd::MutateOrbit { window, path } => cover::mutate_orbit::<F>(window, path, ctx),
            CoverCmd::VerifyCommute {
                window,
                depth,
                sequential,
            } => cover::verify_commute::<F>(window, *depth, *sequential),
        },
        Command::PaperExample => cover::paper_example::<F>(ctx),
    }
}

fn exit_code(err: &anyhow::Error) -> (u8, &'static str) {
    let category = err
        .chain()
        .find_map(|e| e.downcast_ref::<tautilt::Error>())
        .map(|e| e.category());
    match category {
        Some(Category::Parse) => (2, "parse"),
        Some(Category::Budget) => (4, "budget"),
        Some(Category::Inconclusive) => (5, "inconclusive"),
        Some(Category::Precondition) | None => (3, "precondition"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        budget: TrialBudget {
            seed: cli.seed,
            ..TrialBudget::default()
        },
    };
    let out = match cli.field {
        FieldChoice::Q => dispatch::<Rational>(&cli.command, &ctx),
        FieldChoice::P => dispatch::<F2147483647>(&cli.command, &ctx),
    };
    match out {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::from(report.code)
        }
        Err(err) => {
            let (code, category) = exit_code(&err);
            if cli.json {
                println!("{}", json!({"error": category, "message": format!("{err:#}")}));
            }
            eprintln!("error[{category}]: {err:#}");
            ExitCode::from(code)
        }
    }
}
