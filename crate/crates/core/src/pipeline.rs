//! End-to-end de-aliasing of one image.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::edge::{detect_edges, EdgeDetection, EdgeMask, PeakinessConfig, SOBEL_NORM};
use crate::error::{Error, Result};
use crate::fragment::{dump_fragments, fragments_from_mask, Fragment, FragmentConfig};
use crate::io::save_image;
use crate::raster::Image;
use crate::refine::{refine_edges, CleaningConfig, RefinedEdges};
use crate::spectral::{filter_fragment, FilterOutcome, FilterParams, SkipReason};
use crate::upsample::{ScaleFactor, Upsampler};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub scale: ScaleFactor,
    /// The input is already upsampled by `scale`; skip upsampling.
    pub assume_scale: bool,
    pub upsampler: Upsampler,
    pub peakiness: PeakinessConfig,
    /// Divisor applied to the Sobel magnitude.
    pub gradient_norm: f64,
    pub cleaning: CleaningConfig,
    pub s_d: f64,
    pub filter: FilterParams,
    /// Directory receiving stage artifacts.
    pub dump_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(scale: ScaleFactor) -> Self {
        Self {
            scale,
            assume_scale: false,
            upsampler: Upsampler::default(),
            peakiness: PeakinessConfig::default(),
            gradient_norm: SOBEL_NORM,
            cleaning: CleaningConfig::default(),
            s_d: 0.4,
            filter: FilterParams::default(),
            dump_dir: None,
        }
    }

    pub fn fragment_config(&self) -> FragmentConfig {
        FragmentConfig {
            s_d: self.s_d,
            scale: self.scale,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.peakiness.validate()?;
        self.cleaning.validate()?;
        self.fragment_config().validate()?;
        self.filter.validate()?;
        if self.gradient_norm.is_nan() || self.gradient_norm <= 0.0 {
            return Err(Error::InvalidParameter(
                "gradient norm must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FragmentReport {
    pub n_b: usize,
    pub l0: Option<f64>,
    pub s_f: usize,
    pub skipped: Option<SkipReason>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub width: usize,
    pub height: usize,
    pub edge_pixels: usize,
    pub waving_sweeps: usize,
    pub fragments: Vec<FragmentReport>,
}

impl PipelineReport {
    pub fn filtered(&self) -> usize {
        self.fragments
            .iter()
            .filter(|f| f.skipped.is_none())
            .count()
    }

    /// `key=value` lines; fragment lines carry their own fields.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "width={}", self.width);
        let _ = writeln!(out, "height={}", self.height);
        let _ = writeln!(out, "edge_pixels={}", self.edge_pixels);
        let _ = writeln!(out, "waving_sweeps={}", self.waving_sweeps);
        let _ = writeln!(out, "fragments={}", self.fragments.len());
        let _ = writeln!(out, "filtered={}", self.filtered());
        let _ = writeln!(out, "skipped={}", self.fragments.len() - self.filtered());
        for (i, f) in self.fragments.iter().enumerate() {
            let l0 =
                f.l0.map_or_else(|| "undefined".to_string(), |v| format!("{v}"));
            let status = match f.skipped {
                None => "filtered".to_string(),
                Some(r) => format!("skipped reason={}", r.label()),
            };
            let _ = writeln!(
                out,
                "fragment={i} n_b={} l0={l0} s_f={} status={status}",
                f.n_b, f.s_f
            );
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// The image before filtering.
    pub upsampled: Image,
    pub output: Image,
    pub edges: EdgeDetection,
    pub refined: RefinedEdges,
    pub fragments: Vec<Fragment>,
    /// Every pixel written by the filter.
    pub filtered_pixels: EdgeMask,
    pub report: PipelineReport,
    /// Spectrum dump text, one block per filtered profile.
    pub spectra: String,
}

/// Upsamples (unless the input is already at scale), detects and refines
/// edges, splits them into fragments and filters each fragment in order.
pub fn run_pipeline(input: &Image, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    let upsampled = if cfg.assume_scale {
        input.clone()
    } else {
        cfg.upsampler.apply(input, cfg.scale)?
    };
    let edges = detect_edges(&upsampled, &cfg.peakiness, cfg.gradient_norm)?;
    let refined = refine_edges(&edges.thinned, &cfg.cleaning)?;
    let fragments = fragments_from_mask(&refined.balanced, &cfg.fragment_config());

    let mut output = upsampled.clone();
    let mut filtered_pixels = EdgeMask::new(output.width(), output.height());
    let mut reports = Vec::with_capacity(fragments.len());
    let mut spectra = String::new();
    for (id, frag) in fragments.iter().enumerate() {
        let outcome = filter_fragment(&mut output, frag, &cfg.filter)?;
        let (s_f, skipped) = match outcome {
            FilterOutcome::Skipped(r) => (0, Some(r)),
            FilterOutcome::Filtered {
                s_f,
                pixels,
                spectra: recs,
            } => {
                for p in pixels {
                    filtered_pixels.set_at(p, true);
                }
                if cfg.dump_dir.is_some() {
                    for r in &recs {
                        r.write_dump(id, &mut spectra);
                    }
                }
                (s_f, None)
            }
        };
        reports.push(FragmentReport {
            n_b: frag.n_b(),
            l0: frag.l0,
            s_f,
            skipped,
        });
    }
    let report = PipelineReport {
        width: output.width(),
        height: output.height(),
        edge_pixels: refined.balanced.count(),
        waving_sweeps: refined.waving.sweeps,
        fragments: reports,
    };
    let out = PipelineOutput {
        upsampled,
        output,
        edges,
        refined,
        fragments,
        filtered_pixels,
        report,
        spectra,
    };
    if let Some(dir) = &cfg.dump_dir {
        write_dumps(&out, dir)?;
    }
    Ok(out)
}

fn write_text(path: PathBuf, text: &str) -> Result<()> {
    std::fs::write(&path, text).map_err(|source| Error::Io { path, source })
}

/// Writes stage artifacts: edge masks as PGM, the gradient magnitude, and
/// the fragment, junction and spectrum dumps as text.
pub fn write_dumps(out: &PipelineOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    save_image(&out.upsampled, dir.join("upsampled.pgm"))?;
    save_image(&out.edges.gradient.to_image(), dir.join("gradient.pgm"))?;
    save_image(&out.edges.raw.to_image(), dir.join("edges_raw.pgm"))?;
    save_image(&out.edges.thinned.to_image(), dir.join("edges_thin.pgm"))?;
    save_image(&out.refined.balanced.to_image(), dir.join("edges.pgm"))?;
    write_text(dir.join("fragments.txt"), &dump_fragments(&out.fragments))?;
    write_text(dir.join("junctions.txt"), &out.refined.waving.dump())?;
    write_text(dir.join("spectra.txt"), &out.spectra)?;
    write_text(dir.join("report.txt"), &out.report.to_text())
}
