//! Single entry point wiring corpus labeling, splitting, the three
//! evaluation dimensions, predictor training, simulation, comment
//! generation, and consolidated benchmark reports.

mod commands;
mod config;
mod exit;
mod provenance;
mod reports;

use clap::{Parser, Subcommand};

use exit::CliResult;

#[derive(Parser)]
#[command(
    name = "popcmt",
    about = "Comment popularity evaluation and style-resonant generation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assign popularity labels to a raw corpus
    Label(commands::label::LabelArgs),
    /// Stratified train/val/test split of a labeled corpus
    Split(commands::split::SplitArgs),
    /// Reference-based similarity metrics for candidate comments
    EvalContent(commands::eval_content::EvalContentArgs),
    /// Panel-judged stylistic dimension scores
    EvalStyle(commands::eval_style::EvalStyleArgs),
    /// Train a per-platform popularity predictor
    TrainPredictor(commands::train_predictor::TrainPredictorArgs),
    /// Score candidates with a trained predictor
    Predict(commands::predict::PredictArgs),
    /// Agent-based engagement simulation for candidates
    Simulate(commands::simulate::SimulateArgs),
    /// Validate the simulator against real like-count rankings
    ValidateSim(commands::validate_sim::ValidateSimArgs),
    /// Generate a style-resonant comment for one content item
    Generate(commands::generate::GenerateArgs),
    /// Consolidated benchmark over candidate sets
    Bench(commands::bench::BenchArgs),
}

fn dispatch(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        Command::Label(args) => commands::label::run(args),
        Command::Split(args) => commands::split::run(args),
        Command::EvalContent(args) => commands::eval_content::run(args),
        Command::EvalStyle(args) => commands::eval_style::run(args),
        Command::TrainPredictor(args) => commands::train_predictor::run(args),
        Command::Predict(args) => commands::predict::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::ValidateSim(args) => commands::validate_sim::run(args),
        Command::Generate(args) => commands::generate::run(args),
        Command::Bench(args) => commands::bench::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {:#}", failure.err);
            std::process::exit(failure.code);
        }
    }
}
