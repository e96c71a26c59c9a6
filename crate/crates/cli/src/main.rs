use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dealias_core::edge::{detect_edges, PassParams, PeakinessConfig, SOBEL_NORM};
use dealias_core::fragment::{dump_fragments, fragments_from_mask};
use dealias_core::refine::refine_edges;
use dealias_core::{
    aliasing_energy, generate_synthetic, load_image, run_pipeline, save_image, CleaningConfig,
    Error, FilterParams, FragmentConfig, PipelineConfig, ScaleFactor, SyntheticSpec, Upsampler,
};

#[derive(Parser)]
#[command(
    name = "dealias",
    version,
    about = "Remove raster aliasing from upsampled images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upsample an image by an integer factor
    Upsample {
        input: PathBuf,
        output: PathBuf,
        /// Integer upsampling factor
        #[arg(long, default_value_t = 4)]
        scale: u32,
        #[arg(long, value_enum, default_value_t = Kernel::CatmullRom)]
        upsampler: Kernel,
    },
    /// Detect and clean edges, write the edge map
    Edges {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        clean: CleanArgs,
        /// Directory for stage artifacts
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Filter an image that is already upsampled
    Filter {
        input: PathBuf,
        output: PathBuf,
        /// Factor the input was upsampled by
        #[arg(long, default_value_t = 4)]
        scale: u32,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Upsample and filter a low resolution image
    Pipeline {
        input: PathBuf,
        output: PathBuf,
        /// Integer upsampling factor
        #[arg(long, default_value_t = 4)]
        scale: u32,
        /// Treat the input as already upsampled by this factor
        #[arg(long, conflicts_with = "scale")]
        assume_scale: Option<u32>,
        #[arg(long, value_enum, default_value_t = Kernel::CatmullRom)]
        upsampler: Kernel,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Render a synthetic straight edge
    Synth {
        output: PathBuf,
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        /// Columns per row of the edge direction
        #[arg(long, default_value_t = 4.0)]
        dx: f64,
        /// Rows per column of the edge direction
        #[arg(long, default_value_t = 1.0)]
        dy: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Unsharp mask amount, 0 disables sharpening
        #[arg(long, default_value_t = 0.0)]
        unsharp: f64,
    },
    /// Report the aliasing energy of every fragment found in an upsampled image
    Measure {
        input: PathBuf,
        /// Also measure this image on the same fragments
        #[arg(long)]
        against: Option<PathBuf>,
        /// Factor the input was upsampled by
        #[arg(long, default_value_t = 4)]
        scale: u32,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        clean: CleanArgs,
        /// Straightness tolerance in source pixels
        #[arg(long, default_value_t = 0.4)]
        s_d: f64,
        /// Directory for the fragment dump
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernel {
    CatmullRom,
    Bilinear,
}

impl From<Kernel> for Upsampler {
    fn from(k: Kernel) -> Self {
        match k {
            Kernel::CatmullRom => Upsampler::CatmullRom,
            Kernel::Bilinear => Upsampler::Bilinear,
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    /// Number of scan angles
    #[arg(long, default_value_t = 7)]
    n_angles: usize,
    /// Number of peakiness passes
    #[arg(long, default_value_t = 3)]
    p_max: usize,
    /// Peakiness threshold
    #[arg(long, default_value_t = 6)]
    e_min: u32,
    /// Also scan the mirrored angles
    #[arg(long)]
    mirror_angles: bool,
    /// Divisor of the Sobel magnitude
    #[arg(long, default_value_t = SOBEL_NORM)]
    grad_norm: f64,
}

impl DetectArgs {
    fn config(&self) -> PeakinessConfig {
        PeakinessConfig {
            angles: self.n_angles,
            passes: (1..=self.p_max).map(PassParams::default_for).collect(),
            e_min: self.e_min,
            mirror_angles: self.mirror_angles,
        }
    }
}

#[derive(Args)]
struct CleanArgs {
    /// Shortest edge segment kept
    #[arg(long, default_value_t = 4)]
    l_min: usize,
    /// Junction move budget slope
    #[arg(long, default_value_t = 3)]
    l1: usize,
    /// Junction move budget offset
    #[arg(long, default_value_t = 1)]
    l2: usize,
    /// Maximum number of waving sweeps
    #[arg(long, default_value_t = 50)]
    n_w: usize,
}

impl CleanArgs {
    fn config(&self) -> CleaningConfig {
        CleaningConfig {
            l_min: self.l_min,
            l1: self.l1,
            l2: self.l2,
            n_w: self.n_w,
        }
    }
}

#[derive(Args)]
struct Tuning {
    #[command(flatten)]
    detect: DetectArgs,
    #[command(flatten)]
    clean: CleanArgs,
    /// Straightness tolerance in source pixels
    #[arg(long, default_value_t = 0.4)]
    s_d: f64,
    /// Minimum fragment length in periods
    #[arg(long, default_value_t = 2.0)]
    s_l: f64,
    /// Offset count as a fraction of fragment length
    #[arg(long, default_value_t = 0.25)]
    s_u: f64,
    /// Width of the spectral weight lobes
    #[arg(long, default_value_t = 3.0)]
    w_s: f64,
    /// Width of the spectral mask valley
    #[arg(long, default_value_t = 0.03)]
    m_s: f64,
    /// Directory for stage artifacts
    #[arg(long)]
    dump_dir: Option<PathBuf>,
}

impl Tuning {
    fn config(&self, scale: ScaleFactor) -> PipelineConfig {
        PipelineConfig {
            peakiness: self.detect.config(),
            gradient_norm: self.detect.grad_norm,
            cleaning: self.clean.config(),
            s_d: self.s_d,
            filter: FilterParams {
                s_l: self.s_l,
                s_u: self.s_u,
                w_s: self.w_s,
                m_s: self.m_s,
            },
            dump_dir: self.dump_dir.clone(),
            ..PipelineConfig::new(scale)
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn filter_image(input: &Path, output: &Path, cfg: &PipelineConfig) -> Result<(), Error> {
    let img = load_image(input)?;
    let out = run_pipeline(&img, cfg)?;
    save_image(&out.output, output)?;
    print!("{}", out.report.to_text());
    Ok(())
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Upsample {
            input,
            output,
            scale,
            upsampler,
        } => {
            let img = load_image(&input)?;
            let up = Upsampler::from(upsampler).apply(&img, ScaleFactor::new(scale)?)?;
            save_image(&up, &output)?;
            println!("width={}", up.width());
            println!("height={}", up.height());
        }
        Command::Edges {
            input,
            output,
            detect,
            clean,
            dump_dir,
        } => {
            let img = load_image(&input)?;
            let cfg = detect.config();
            cfg.validate()?;
            let edges = detect_edges(&img, &cfg, detect.grad_norm)?;
            let refined = refine_edges(&edges.thinned, &clean.config())?;
            save_image(&refined.balanced.to_image(), &output)?;
            if let Some(dir) = dump_dir {
                create_dir(&dir)?;
                save_image(&edges.gradient.to_image(), dir.join("gradient.pgm"))?;
                save_image(&edges.raw.to_image(), dir.join("edges_raw.pgm"))?;
                save_image(&edges.thinned.to_image(), dir.join("edges_thin.pgm"))?;
                let path = dir.join("junctions.txt");
                std::fs::write(&path, refined.waving.dump())
                    .map_err(|source| Error::Io { path, source })?;
            }
            println!("edge_pixels={}", refined.balanced.count());
            println!("waving_sweeps={}", refined.waving.sweeps);
        }
        Command::Filter {
            input,
            output,
            scale,
            tuning,
        } => {
            let cfg = PipelineConfig {
                assume_scale: true,
                ..tuning.config(ScaleFactor::new(scale)?)
            };
            filter_image(&input, &output, &cfg)?;
        }
        Command::Pipeline {
            input,
            output,
            scale,
            assume_scale,
            upsampler,
            tuning,
        } => {
            let cfg = PipelineConfig {
                assume_scale: assume_scale.is_some(),
                upsampler: upsampler.into(),
                ..tuning.config(ScaleFactor::new(assume_scale.unwrap_or(scale))?)
            };
            filter_image(&input, &output, &cfg)?;
        }
        Command::Synth {
            output,
            width,
            height,
            dx,
            dy,
            gamma,
            unsharp,
        } => {
            let spec = SyntheticSpec {
                width,
                height,
                dx,
                dy,
                gamma,
                unsharp,
                ..SyntheticSpec::default()
            };
            let (img, line) = generate_synthetic(&spec)?;
            save_image(&img, &output)?;
            println!("edge_point={},{}", line.point.0, line.point.1);
            println!("edge_direction={},{}", line.direction.0, line.direction.1);
        }
        Command::Measure {
            input,
            against,
            scale,
            detect,
            clean,
            s_d,
            dump_dir,
        } => {
            let img = load_image(&input)?;
            let other = against.as_deref().map(load_image).transpose()?;
            let cfg = detect.config();
            cfg.validate()?;
            let edges = detect_edges(&img, &cfg, detect.grad_norm)?;
            let refined = refine_edges(&edges.thinned, &clean.config())?;
            let fcfg = FragmentConfig {
                s_d,
                scale: ScaleFactor::new(scale)?,
            };
            fcfg.validate()?;
            let fragments = fragments_from_mask(&refined.balanced, &fcfg);
            println!("fragments={}", fragments.len());
            for (i, f) in fragments.iter().enumerate() {
                let Some(l0) = f.l0 else { continue };
                let e = aliasing_energy(&img, f)?;
                match &other {
                    Some(o) => println!(
                        "fragment={i} n_b={} l0={l0} energy={e} against={}",
                        f.n_b(),
                        aliasing_energy(o, f)?
                    ),
                    None => println!("fragment={i} n_b={} l0={l0} energy={e}", f.n_b()),
                }
            }
            if let Some(dir) = dump_dir {
                create_dir(&dir)?;
                let path = dir.join("fragments.txt");
                std::fs::write(&path, dump_fragments(&fragments))
                    .map_err(|source| Error::Io { path, source })?;
            }
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::UnsupportedFormat(_) | Error::Truncated(_) | Error::Png(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
