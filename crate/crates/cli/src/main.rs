mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ihsfuse_core::{
    consistency_report, decode_netpbm, encode_netpbm, evaluate, fuse, generate_scene,
    upsampled_reference, Format, FusionConfig, InverseMode, MatchMode, Raster, Variant,
};

use report::{write_report, ReportFormat};

/// IHS-family pan-sharpening toolkit: fuse MS/PAN pairs, audit transform
/// variants, score results, and generate synthetic test scenes.
#[derive(Parser)]
#[command(name = "ihsfuse", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse a multispectral image with a panchromatic image.
    Fuse(FuseArgs),
    /// Score one image against another with the six quality indices.
    Metrics(MetricsArgs),
    /// Audit every transform variant's printed matrix pair.
    Variants,
    /// Generate a deterministic synthetic scene (ground truth, MS, PAN).
    Synth(SynthArgs),
}

#[derive(Args)]
struct FuseArgs {
    /// Transform variant: hsv, ihs1..ihs7, hls, yiq.
    #[arg(long)]
    variant: String,
    /// Inverse-matrix selection.
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    mode: ModeArg,
    /// Radiometric matching of PAN to the intensity component.
    #[arg(long = "match", value_enum, default_value_t = MatchArg::MeanStd)]
    match_mode: MatchArg,
    /// Weight of the matched PAN plane in the intensity blend.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Weight of the original intensity in the blend.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// 3-band multispectral input (PPM).
    #[arg(long)]
    ms: PathBuf,
    /// 1-band panchromatic input (PGM).
    #[arg(long)]
    pan: PathBuf,
    /// Fused output image (PPM).
    #[arg(long)]
    out: PathBuf,
    /// Metrics report comparing the fused image to the upsampled MS.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report serialization.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Level count for CDF matching and entropy bins
    /// (default: 2^bit_depth of the output).
    #[arg(long)]
    levels: Option<u32>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Image under test.
    image_a: PathBuf,
    /// Reference image.
    image_b: PathBuf,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report serialization.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Entropy bin count (default: 2^bit_depth of the measured image).
    #[arg(long)]
    levels: Option<u32>,
}

#[derive(Args)]
struct SynthArgs {
    /// Scene seed; identical seeds give byte-identical outputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ground-truth and PAN width in pixels.
    #[arg(long, default_value_t = 256)]
    width: u32,
    /// Ground-truth and PAN height in pixels.
    #[arg(long, default_value_t = 256)]
    height: u32,
    /// MS downsampling factor; width and height must be divisible by it.
    #[arg(long, default_value_t = 4)]
    factor: u32,
    /// Directory receiving ground_truth.ppm, ms.ppm, and pan.pgm.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PaperExact,
    Corrected,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchArg {
    MeanStd,
    Cdf,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            // single-line machine-parsable error report
            let msg = format!("{err:#}").replace('\n', "; ");
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

/// IHSFUSE_THREADS caps data parallelism; unset means all cores.
fn configure_threads() {
    if let Ok(v) = std::env::var("IHSFUSE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Fuse(args) => cmd_fuse(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Variants => cmd_variants(),
        Command::Synth(args) => cmd_synth(args),
    }
}

fn read_raster(path: &Path) -> Result<Raster> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    decode_netpbm(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_raster(path: &Path, raster: &Raster) -> Result<()> {
    let format = if raster.bands() == 3 {
        Format::P6
    } else {
        Format::P5
    };
    let bytes = encode_netpbm(raster, format)?;
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn cmd_fuse(args: FuseArgs) -> Result<()> {
    let variant = Variant::from_str(&args.variant)?;
    let ms = read_raster(&args.ms)?;
    let pan = read_raster(&args.pan)?;

    let mut cfg = FusionConfig::new(variant);
    cfg.inverse_mode = match args.mode {
        ModeArg::PaperExact => InverseMode::PaperExact,
        ModeArg::Corrected => InverseMode::Corrected,
    };
    cfg.output_bit_depth = ms.bit_depth();
    let levels = args.levels.unwrap_or(1u32 << cfg.output_bit_depth);
    cfg.match_mode = match args.match_mode {
        MatchArg::MeanStd => MatchMode::MeanStd,
        MatchArg::Cdf => MatchMode::Cdf { levels },
        MatchArg::None => MatchMode::None,
    };
    cfg.alpha = args.alpha;
    cfg.beta = args.beta;

    let fused = fuse(&ms, &pan, &cfg)?;
    write_raster(&args.out, &fused)?;

    if let Some(report_path) = &args.report {
        let reference = upsampled_reference(&ms, pan.width(), pan.height())?;
        let mut report = evaluate(&fused, &reference, levels)?;
        report.method = variant.name().to_string();
        report.variant = Some(variant.name().to_string());
        report.mode = Some(cfg.inverse_mode.name().to_string());
        report.match_mode = Some(cfg.match_mode.name().to_string());
        let text = write_report(&report, args.format.into());
        fs::write(report_path, text)
            .with_context(|| format!("writing {}", report_path.display()))?;
    }
    Ok(())
}

fn cmd_metrics(args: MetricsArgs) -> Result<()> {
    let a = read_raster(&args.image_a)?;
    let b = read_raster(&args.image_b)?;
    let levels = args.levels.unwrap_or(1u32 << a.bit_depth());
    let mut report = evaluate(&a, &b, levels)?;
    report.method = args
        .image_a
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "metrics".to_string());
    let text = write_report(&report, args.format.into());
    match &args.report {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_variants() -> Result<()> {
    println!(
        "{:<8} {:>14} {:>18} {:>20} {:>12}",
        "variant", "det(forward)", "printed-pair-dev", "corrected-pair-dev", "recommended"
    );
    for row in consistency_report() {
        println!(
            "{:<8} {:>14.6} {:>18.6e} {:>20.3e} {:>12}",
            row.variant.name(),
            row.forward_det,
            row.printed_pair_deviation,
            row.corrected_pair_deviation,
            row.recommendation.name()
        );
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;
    let scene = generate_scene(args.seed, args.width, args.height, args.factor)?;
    write_raster(&args.out.join("ground_truth.ppm"), &scene.ground_truth)?;
    write_raster(&args.out.join("ms.ppm"), &scene.ms)?;
    write_raster(&args.out.join("pan.pgm"), &scene.pan)?;
    Ok(())
}
