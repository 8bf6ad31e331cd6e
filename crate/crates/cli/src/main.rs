use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use commands::Outcome;
use config::Config;

/// Exact search for monochromatic homothetic copies of finite point sets.
///
/// Exit status: 0 verified, 1 verification failed, 2 budget exhausted or
/// no result within the limits, 3 input error.
#[derive(Parser, Debug)]
#[command(name = "gallai", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the search engines (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// JSON file whose keys mirror the long flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the document (or SVG) here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find the smallest monochromatic copy in a colored grid
    Find(FindArgs),
    /// Least grid side forcing a monochromatic copy under every coloring
    Number(NumberArgs),
    /// Pairwise-disjoint monochromatic copies in Euclidean space
    Family(FamilyArgs),
    /// Disjoint families at pairwise-distinct dilation factors
    Dilations(DilationsArgs),
    /// Re-check a witness document from scratch
    Verify(VerifyArgs),
    /// Draw a witness document as SVG
    Render(RenderArgs),
}

#[derive(Args, Debug, Default)]
pub struct Source {
    /// Point set `x1,y1; x2,y2; ...`, coordinates `p/q` or `p/q+r/s√d`; `@path` reads a file
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Coloring: expression, `constant:c`, `checkerboard`, `linear:w;m`, `tile:path`, `image:path`, `random[:seed]`
    #[arg(long, allow_hyphen_values = true)]
    pub coloring: Option<String>,
    /// Number of colors (overrides the count inferred from the coloring)
    #[arg(long)]
    pub colors: Option<u32>,
    /// Seed for the random coloring
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct FindArgs {
    #[command(flatten)]
    pub source: Source,
    /// Grid side (default 20)
    #[arg(long)]
    pub side: Option<usize>,
    /// Largest scale to try (default: whatever fits)
    #[arg(long)]
    pub max_scale: Option<u64>,
}

#[derive(Args, Debug)]
pub struct NumberArgs {
    /// Point set with integer coordinates
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Number of colors
    #[arg(long)]
    pub colors: Option<u32>,
    /// Largest side to search (default 12)
    #[arg(long)]
    pub max_side: Option<usize>,
    /// Restrict the search to colorings using colors in first-use order
    #[arg(long)]
    pub canonical_colors: bool,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Number of disjoint copies (default 1)
    #[arg(long)]
    pub k: Option<usize>,
    /// direct or proof-faithful (default direct)
    #[arg(long)]
    pub mode: Option<String>,
    /// a_max,d_max,denom_max (default 8,4,16)
    #[arg(long)]
    pub budget: Option<String>,
}

#[derive(Args, Debug)]
pub struct DilationsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Distinct squarefree radicands m; one family at pitch √m each
    #[arg(long)]
    pub radicands: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Witness document
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Witness document
    pub file: PathBuf,
    /// Drawing window x0,x1,y0,y1 (default: fitted to the copies)
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
}

fn error_code(err: &anyhow::Error) -> u8 {
    let budget = err
        .chain()
        .filter_map(|e| e.downcast_ref::<gallai::error::Error>())
        .any(|e| matches!(e, gallai::error::Error::BudgetExhausted(_)));
    if budget {
        2
    } else {
        3
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let config = Config::load(cli.config.as_deref())?;
    let threads = cli.threads.or(config.threads).unwrap_or(0);
    let out = cli.out.or_else(|| config.out.clone());
    gallai::parallel::with_threads(threads, move || {
        commands::dispatch(cli.command, &config, out.as_deref())
    })?
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
