mod pipeline;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use pipeline::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "fhsi",
    version,
    about = "Fuzzy HSI color analysis: palette extraction, corpus grouping, harmony reports"
)]
struct Cli {
    /// Configuration file (key = value lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for checkpoints, reports and charts
    #[arg(long, global = true, default_value = "fhsi-out")]
    out: PathBuf,

    /// Override the grouping threshold
    #[arg(long, global = true)]
    threshold: Option<f64>,

    /// Override the palette size
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Print the effective configuration and exit
    #[arg(long, global = true)]
    show_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Extract and print the fuzzy palette of one image
    Extract {
        /// PNG or JPEG file
        image: PathBuf,
        /// Also write a swatch strip SVG here
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Group a directory of images by palette similarity
    Cluster {
        /// Directory of PNG/JPEG images
        dir: PathBuf,
    },
    /// Label the dominant groups of a clustering checkpoint
    Classify {
        /// Checkpoint written by `cluster`
        checkpoint: PathBuf,
    },
    /// Full pipeline: extract, cluster, label, summarize, emit files
    Report {
        /// Directory of PNG/JPEG images
        dir: PathBuf,
        /// Domain name for the report
        #[arg(long)]
        domain: String,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = pipeline::load_config(cli.config.as_deref(), cli.threshold, cli.k)?;

    if cli.show_config {
        print!("{}", config.render());
        return Ok(());
    }

    let command = cli.command.ok_or_else(|| {
        CliError::Input("missing subcommand (try extract, cluster, classify or report)".into())
    })?;

    let space = config
        .space()
        .map_err(|e| CliError::Input(format!("invalid configuration: {e}")))?;

    match command {
        Command::Extract { image, svg } => {
            let name = image
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| image.display().to_string());
            let raster = pipeline::decode_image(&image)?;
            let palette = pipeline::extract_one(&raster, &space, &config, &name)?;
            print!("{}", pipeline::format_palette(&palette, &space));
            if let Some(svg_path) = svg {
                let svg_text = fhsi::render_palette_svg(&palette, &space);
                fs::write(&svg_path, svg_text).map_err(|e| {
                    CliError::Input(format!("cannot write {}: {e}", svg_path.display()))
                })?;
            }
            Ok(())
        }

        Command::Cluster { dir } => {
            let files = pipeline::list_images(&dir)?;
            let extraction = pipeline::extract_corpus(&files, &space, &config)?;
            let result = pipeline::cluster(extraction.palettes, &space, &config)?;
            let path = pipeline::write_checkpoint_file(&result, &cli.out)?;
            println!(
                "clustered {} images into {} groups (skipped {})",
                result.corpus_size,
                result.groups.len(),
                extraction.skipped.len()
            );
            for group in &result.groups {
                println!("group {} size {}", group.id, group.members.len());
            }
            println!("checkpoint {}", path.display());
            Ok(())
        }

        Command::Classify { checkpoint } => {
            let result = pipeline::read_checkpoint_file(&checkpoint)?;
            let dominant = pipeline::dominant_or_all(&result);
            let labeled = pipeline::label_groups(&dominant, &space, &config)?;
            for entry in labeled {
                println!(
                    "group {} size {} labels {} chromatic {:.3} achromatic {:.3}",
                    entry.group.id,
                    entry.group.members.len(),
                    pipeline::format_label_set(&entry.labels),
                    entry.chromatic_weight,
                    entry.achromatic_weight
                );
            }
            Ok(())
        }

        Command::Report { dir, domain } => {
            let files = pipeline::list_images(&dir)?;
            let extraction = pipeline::extract_corpus(&files, &space, &config)?;
            let result = pipeline::cluster(extraction.palettes, &space, &config)?;
            pipeline::write_checkpoint_file(&result, &cli.out)?;
            let report_text = pipeline::build_report(&domain, &result, &space, &config, &cli.out)?;
            print!("{report_text}");
            Ok(())
        }
    }
}
