mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bsk::embedding::Bounds;
use bsk::presentation::SpecFile;
use bsk::{make_bs, GroupSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Output;

#[derive(Parser, Debug)]
#[command(
    name = "bsk",
    version,
    about = "Normal forms, Bass-Serre trees and kernels for HNN extensions of Z^n"
)]
pub struct Cli {
    /// Baumslag-Solitar group BS(P,Q): x^P = t x^Q t^-1
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true, global = true)]
    bs: Option<Vec<i64>>,

    /// JSON datum {"n": .., "A": [[..]], "B": [[..]]}; --bs takes precedence
    #[arg(long, value_name = "FILE", global = true)]
    spec: Option<PathBuf>,

    /// Write the result to FILE instead of standard output
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args, Debug)]
pub struct BallArgs {
    /// Word-length radius
    #[arg(short = 'L', default_value_t = 6)]
    pub length: usize,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(short = 'L', default_value_t = 6)]
    pub length: usize,
    /// Number of independent samples
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    /// Elements per sample
    #[arg(long, default_value_t = 40)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Kernel parameters
    #[arg(short = 's', value_delimiter = ',', default_value = "1.0")]
    pub s: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Tree,
    Witness,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of a word
    Reduce { word: String },
    /// Decide whether a word is the identity
    Wp { word: String },
    /// List the word-metric ball of radius L
    Ball(BallArgs),
    /// The vertex g·v of the tree
    Vertex { word: String },
    /// Tree distance d(v, g·v), or d(g·v, h·v) with two words
    Dist { word: String, other: Option<String> },
    /// Neighbors of the vertex g·v
    Neighbors { word: String },
    /// Point of the upper half-plane reached from i
    Orbit { word: String },
    /// Tree ball around the base vertex
    Dot {
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Image in Z ⋉ Q^n
    Affine { word: String },
    /// Check that the combined map is injective on a ball
    InjectCheck(BallArgs),
    /// Check that the vertex stabilizer is the vertex group on a ball
    StabCheck(BallArgs),
    /// Sublevel-set counts per word length and threshold
    Proper {
        #[arg(short = 'L', default_value_t = 10)]
        length: usize,
        #[arg(short = 'R', value_delimiter = ',', default_value = "1,2,4")]
        thresholds: Vec<u64>,
    },
    /// Signed edge set of the tree cocycle b(g)
    Cocycle { word: String },
    /// Norm and cocycle identities on a ball and on random pairs
    CocycleCheck {
        #[arg(short = 'L', default_value_t = 6)]
        length: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gram matrices on random samples of a ball, with PSD verdicts
    Gram {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_enum, default_value_t = KernelKind::Tree)]
        kernel: KernelKind,
    },
    /// Witness value exp(-s (d(v, g·v) + D(g)))
    Witness {
        word: String,
        #[arg(short = 's', default_value_t = 1.0)]
        s: f64,
    },
    /// Largest witness value per word-length sphere
    C0 {
        #[arg(short = 'L', default_value_t = 10)]
        length: usize,
        #[arg(short = 's', default_value_t = 1.0)]
        s: f64,
    },
}

/// What a command produced besides its text.
pub enum Status {
    Ok,
    Violations,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(bsk::Error),
}

impl From<bsk::Error> for Failure {
    fn from(e: bsk::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(bsk::Error::Resource { requested, bound }) => write!(
                f,
                "resource bound exceeded: radius {requested} > {bound} (set BSK_MAX_BALL to raise it)"
            ),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

fn load_group(cli: &Cli) -> Result<GroupSpec, Failure> {
    if let Some(pq) = &cli.bs {
        return Ok(make_bs(pq[0], pq[1])?);
    }
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| Failure::Usage("no group given: pass --bs P Q or --spec FILE".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: SpecFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: not a valid datum: {e}", path.display())))?;
    Ok(file.build()?)
}

fn bounds(spec: &GroupSpec) -> Result<Bounds, Failure> {
    match std::env::var("BSK_MAX_BALL") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&b| b > 0)
            .map(Bounds::uniform)
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "BSK_MAX_BALL must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(Bounds::for_spec(spec)),
    }
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    let spec = load_group(cli)?;
    let bounds = bounds(&spec)?;
    let mut out = Output::new(cli.format);
    let status = commands::dispatch(&cli.command, &spec, &bounds, &mut out)?;
    out.finish(cli.out.as_deref())?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
