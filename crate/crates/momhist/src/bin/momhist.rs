//! momhist: enumerate every shape a uniform-bin-width histogram of a dataset
//! can take, and analyze those shapes for mean/variance/skewness consistency,
//! width stability, likelihood, and symmetry diagnostics.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use momhist::consistency::{analyze_catalog, Flavor, RankBands};
use momhist::report::{
    audit_from_strings, audit_text, catalog_text, classify_text, dotplot_text, rank_text,
    reversals_text, stability_text, to_json, CatalogDoc, ClassifyDoc, DotplotDoc, RankDoc,
    ReversalsDoc, StabilityDoc,
};
use momhist::selection::{exact_moment_grid, ml_rank, stability_cells};
use momhist::svg::{histogram_svg, level_set_map_svg, write_svg};
use momhist::{
    enumerate_level_sets, parse_dataset, BinGrid, Dataset, DomainMode, Error, Scalar,
};

/// Histogram shape enumeration and method-of-moments analysis.
///
/// The environment variable MOMHIST_SEED is reserved and unused: every
/// algorithm here is deterministic.
#[derive(Parser)]
#[command(name = "momhist", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorOpt {
    Frequency,
    Density,
}

impl From<FlavorOpt> for Flavor {
    fn from(f: FlavorOpt) -> Flavor {
        match f {
            FlavorOpt::Frequency => Flavor::Frequency,
            FlavorOpt::Density => Flavor::Density,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: one decimal numeral per line, or comma-separated;
    /// '#' lines are comments.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,

    /// Maximum number of bins (K).
    #[arg(long, default_value_t = 6, value_name = "K")]
    max_bins: u32,

    /// Require exactly K occupied-width bins instead of at most K.
    #[arg(long)]
    exactly_k: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatOpt::Text)]
    format: FormatOpt,
}

impl CommonArgs {
    fn mode(&self) -> DomainMode {
        if self.exactly_k {
            DomainMode::ExactlyK
        } else {
            DomainMode::AtMostK
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate all attainable shapes and their level sets.
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write a level-set map as a standalone SVG.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Classify every shape by mean/variance consistency.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Variance constraint flavor.
        #[arg(long, value_enum, default_value_t = FlavorOpt::Frequency)]
        flavor: FlavorOpt,
    },
    /// Rank shapes by skewness closeness and by maximum likelihood.
    Rank {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = FlavorOpt::Frequency)]
        flavor: FlavorOpt,
    },
    /// Partition the width axis into shape-stability cells.
    Stability {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Report symmetry, reversal pairs, and mode inversions.
    Reversals {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build the exact all-moment dot-plot grid and verify moment equality.
    Dotplot {
        #[command(flatten)]
        common: CommonArgs,
        /// Width refinement factor: bin width is 1/(m·Q).
        #[arg(long, default_value_t = 1, value_name = "M")]
        m: u32,
    },
    /// Audit one concrete grid: counts, skewness sign, class, alternative.
    Audit {
        #[command(flatten)]
        common: CommonArgs,
        /// Bin anchor, decimal or p/q.
        #[arg(long, value_name = "R")]
        t0: String,
        /// Bin width, decimal or p/q.
        #[arg(long, value_name = "R")]
        h: String,
        #[arg(long, value_enum, default_value_t = FlavorOpt::Frequency)]
        flavor: FlavorOpt,
        /// Also write the audited histogram as a standalone SVG.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EmptyInput | Error::ParseToken { .. } | Error::ParseRational { .. } => 2,
        Error::DegenerateData => 3,
        _ => 1,
    }
}

fn load(common: &CommonArgs) -> Result<Dataset, Error> {
    let text = std::fs::read_to_string(&common.input)?;
    parse_dataset(&text)
}

fn emit(format: FormatOpt, text: String, json: String) {
    match format {
        FormatOpt::Text => print!("{text}"),
        FormatOpt::Json => print!("{json}"),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Enumerate { common, svg } => {
            let d = load(&common)?;
            let cat = enumerate_level_sets(&d, common.max_bins, common.mode())?;
            if let Some(path) = &svg {
                write_svg(path, &level_set_map_svg(&cat)?)?;
            }
            let doc = CatalogDoc::from_catalog(&cat);
            emit(common.format, catalog_text(&doc), to_json(&doc)?);
        }
        Cmd::Classify { common, flavor } => {
            let d = load(&common)?;
            let cat = enumerate_level_sets(&d, common.max_bins, common.mode())?;
            let analysis = analyze_catalog(&d, &cat, flavor.into(), &RankBands::default())?;
            let doc = ClassifyDoc::from_analysis(&cat, &analysis);
            emit(common.format, classify_text(&doc), to_json(&doc)?);
        }
        Cmd::Rank { common, flavor } => {
            let d = load(&common)?;
            let cat = enumerate_level_sets(&d, common.max_bins, common.mode())?;
            let analysis = analyze_catalog(&d, &cat, flavor.into(), &RankBands::default())?;
            let ml = ml_rank(&d, &cat)?;
            let doc = RankDoc::build(&cat, &analysis, &ml);
            emit(common.format, rank_text(&doc), to_json(&doc)?);
        }
        Cmd::Stability { common } => {
            let d = load(&common)?;
            let cat = enumerate_level_sets(&d, common.max_bins, common.mode())?;
            let report = stability_cells(&cat)?;
            let doc = StabilityDoc::build(&cat, &report);
            emit(common.format, stability_text(&doc), to_json(&doc)?);
        }
        Cmd::Reversals { common } => {
            let d = load(&common)?;
            let cat = enumerate_level_sets(&d, common.max_bins, common.mode())?;
            let doc = ReversalsDoc::build(&d, &cat);
            emit(common.format, reversals_text(&doc), to_json(&doc)?);
        }
        Cmd::Dotplot { common, m } => {
            let d = load(&common)?;
            let grid = exact_moment_grid(&d, m)?;
            let doc = DotplotDoc::build(&d, &grid, 6)?;
            emit(common.format, dotplot_text(&doc), to_json(&doc)?);
        }
        Cmd::Audit {
            common,
            t0,
            h,
            flavor,
            svg,
        } => {
            let d = load(&common)?;
            let doc = audit_from_strings(&d, &t0, &h, common.max_bins, flavor.into())?;
            if let Some(path) = &svg {
                let grid = BinGrid::new(Scalar::parse(&t0)?, Scalar::parse(&h)?, common.max_bins)?;
                write_svg(path, &histogram_svg(&d, &grid)?)?;
            }
            emit(common.format, audit_text(&doc), to_json(&doc)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
