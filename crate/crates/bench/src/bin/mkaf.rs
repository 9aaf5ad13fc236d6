//! `mkaf` command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mkaf_bench::config::{preset, ConfigFile, ExperimentConfig, PRESETS};
use mkaf_bench::{run_experiment, run_experiment_with_threads, write_results, Result};
use mkaf_core::complexity::{multiplications, ComplexityClass, ComplexityInputs};

#[derive(Parser)]
#[command(name = "mkaf", version, about = "Multikernel adaptive filtering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment and write per-iteration curves.
    Run(RunArgs),
    /// List shipped presets, or print one.
    Presets {
        name: Option<String>,
    },
    /// Evaluate a per-update multiplication count.
    Complexity {
        /// One of nlms, knlms, hypass, chypass-lg, chypass-gg, mknlms-lg,
        /// mknlms-gg, chypass-lg-full, chypass-gg-full.
        class: ComplexityClass,
        #[arg(long = "dim", short = 'L')]
        input_dim: usize,
        #[arg(long, default_value_t = 0.0)]
        r1: f64,
        #[arg(long, default_value_t = 0.0)]
        r2: f64,
        #[arg(long, short = 's', default_value_t = 0.0)]
        s: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Shipped preset; its keys override the file.
    #[arg(long)]
    preset: Option<String>,
    /// Time series for the `timeseries` scenario.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; a summary is printed either way.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: RunArgs) -> Result<()> {
    let mut layer = ConfigFile::default();
    if let Some(path) = &args.config {
        layer = layer.merge(ConfigFile::load(path)?);
    }
    if let Some(name) = &args.preset {
        layer = layer.merge(preset(name)?);
    }
    layer = layer.merge(ConfigFile {
        data: args.data,
        seed: args.seed,
        trials: args.trials,
        iterations: args.iterations,
        ..Default::default()
    });
    let config = ExperimentConfig::resolve(&layer)?;
    let result = match args.threads {
        Some(t) => run_experiment_with_threads(&config, t)?,
        None => run_experiment(&config)?,
    };
    if let Some(out) = &args.out {
        write_results(out, &result)?;
    }
    let window = (result.iterations() / 10).max(1);
    println!("label               {}", result.label);
    println!("trials              {}", result.trials);
    println!("iterations          {}", result.iterations());
    println!("mean dict size      {:.3}", result.mean_dict_size);
    println!("per-kernel mean     {:?}", rounded(&result.mean_kernel_sizes));
    println!("final dict size     {:.3}", result.final_dict_size);
    println!("per-kernel final    {:?}", rounded(&result.final_kernel_sizes));
    println!("tail mse ({window:>5})    {:.6e}", result.tail_mse(window));
    match result.complexity_estimate {
        Some(c) => println!("multiplications     {c:.1}"),
        None => println!("multiplications     n/a"),
    }
    eprintln!(
        "skipped updates {} ({} degenerate), admissions per kernel {:?}",
        result.skipped, result.degenerate, result.admissions
    );
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Presets { name: None } => {
            for (name, _) in PRESETS {
                println!("{name}");
            }
            Ok(())
        }
        Command::Presets { name: Some(name) } => match PRESETS.iter().find(|(n, _)| *n == name) {
            Some((_, text)) => {
                print!("{text}");
                Ok(())
            }
            None => preset(&name).map(|_| ()),
        },
        Command::Complexity { class, input_dim, r1, r2, s } => {
            println!("{}", multiplications(class, ComplexityInputs { input_dim, r1, r2, s }));
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mkaf: {e}");
            ExitCode::FAILURE
        }
    }
}
