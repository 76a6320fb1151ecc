use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nervelab::nerves::Flavor;
use nervelab::sset::json as sset_json;
use nervelab::{Error, Result};

mod commands;
mod inputs;

use commands::{Output, Shape};

#[derive(Parser)]
#[command(name = "nervelab", version, about = "Nerves of simplicial categories, Kan checks and the counterexample suite")]
struct Cli {
    /// Default truncation for inputs given as ordinary categories.
    #[arg(long, global = true, env = "NERVELAB_CAP", default_value_t = 3)]
    cap: usize,

    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FlavorArg {
    Standard,
    Hc,
    Wbar,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Standard => Flavor::Standard,
            FlavorArg::Hc => Flavor::Hc,
            FlavorArg::Wbar => Flavor::Wbar,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// The nerve of a simplicial category, as sset/v1.
    Nerve {
        /// A scat/v1 file, or a cat/v1 category taken as discrete.
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, value_enum, default_value = "hc")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Horn filling for an sset/v1 file, or lifting against a map.
    KanCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// A map from the input to --target; checks it is a Kan fibration.
        #[arg(long, requires = "target")]
        map: Option<PathBuf>,
        #[arg(long, requires = "map")]
        target: Option<PathBuf>,
        /// Report every failing horn.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Classifies Δ_N(Λ^n_i)(a, b) inside its cube.
    HornImage {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The indecomposable generators of Δ_N^n.
    Ind {
        #[arg(long)]
        n: usize,
    },
    /// Runs a named counterexample and reports its claims.
    ReplayCounterexample {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(nervelab::cases::COUNTEREXAMPLES))]
        name: String,
    },
    /// Runs the fibrant groupoid battery.
    Battery,
    /// Fibered, quasifibered and limit checks for a cat/v1 diagram.
    QfCheck {
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 2)]
        ncap: usize,
    },
    /// The truncated homotopy limit of a cat/v1 diagram of simplicial sets.
    Holim {
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 2)]
        ncap: usize,
        #[arg(long, default_value_t = 1)]
        dimcap: usize,
    },
    /// Checks Hom(S, 𝔑C) ≅ Hom(Δ_N(S), C) elementwise.
    AdjunctionCheck {
        input: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, value_enum, default_value = "simplex")]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Output> {
    let cap = cli.cap;
    match &cli.command {
        Command::Nerve { input, builtin, flavor, dim } => {
            let c = inputs::load_scat(input.as_deref(), builtin.as_deref(), cap.max(*dim))?;
            commands::nerve_cmd(&c, (*flavor).into(), *dim)
        }
        Command::KanCheck { input, dim, map, target, exhaustive } => {
            let (x, xids) = inputs::load_sset(input)?;
            match (map, target) {
                (Some(m), Some(t)) => {
                    let (y, yids) = inputs::load_sset(t)?;
                    let p = sset_json::map_from_json_at(&inputs::read_json(m)?, (&x, &xids), (&y, &yids), "")?;
                    commands::kan_fibration_check(&p, &x, &y, *dim, *exhaustive)
                }
                _ => commands::kan_check(&x, *dim, *exhaustive),
            }
        }
        Command::HornImage { n, i, a, b } => commands::horn_image_cmd(*n, *i, *a, *b),
        Command::Ind { n } => commands::ind_cmd(*n),
        Command::ReplayCounterexample { name } => commands::replay_cmd(name),
        Command::Battery => commands::battery_cmd(),
        Command::QfCheck { input, builtin, ncap } => {
            commands::qf_check(&inputs::load_cat_diagram(input.as_deref(), builtin.as_deref())?, *ncap)
        }
        Command::Holim { input, builtin, ncap, dimcap } => {
            let f = inputs::load_sdiagram(input.as_deref(), builtin.as_deref(), cap.max(ncap + dimcap))?;
            commands::holim_cmd(&f, *ncap, *dimcap)
        }
        Command::AdjunctionCheck { input, builtin, shape, n, i } => {
            let c = inputs::load_scat(input.as_deref(), builtin.as_deref(), cap.max(*n))?;
            commands::adjunction_cmd(&c, *shape, *n, *i)
        }
    }
}

fn emit(out: &Output, path: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n";
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            print!("{}", out.summary);
            if !out.summary.ends_with('\n') {
                println!();
            }
        }
        None => {
            print!("{text}");
            eprintln!("{}", out.summary.trim_end());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&out, cli.output.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match &e {
                Error::Parse { pointer, message } => {
                    eprintln!("error: invalid input at {}: {message}", if pointer.is_empty() { "/" } else { pointer })
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(2)
        }
    }
}
