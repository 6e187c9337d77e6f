//! Pipeline stages shared by the subcommands: image ingestion, corpus
//! extraction, clustering, labeling and reporting.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use fhsi::harmony::{classify_harmonies, harmony_distribution, wheel_profile};
use fhsi::{
    cluster_corpus, dominant_groups, ClusterParams, FuzzyColorSpace, FuzzyPalette, GroupingResult,
    HarmonyLabel, PaletteGroup, PipelineConfig, Raster, RgbPixel,
};

/// Input problems exit with code 2, pipeline failures with code 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Pipeline(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Pipeline(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Pipeline(m) => m,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn input(message: impl Into<String>) -> CliError {
    CliError::Input(message.into())
}

fn stage(name: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Pipeline(format!("{name}: {err}"))
}

/// Loads the effective configuration: defaults, then the config file,
/// then command-line overrides.
pub fn load_config(
    path: Option<&Path>,
    threshold: Option<f64>,
    k: Option<usize>,
) -> CliResult<PipelineConfig> {
    let mut config = match path {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| input(format!("cannot read config {}: {e}", p.display())))?;
            PipelineConfig::parse(&text).map_err(|e| input(format!("{}: {e}", p.display())))?
        }
        None => PipelineConfig::default(),
    };
    if let Some(t) = threshold {
        config.diff_threshold = t;
    }
    if let Some(k) = k {
        config.k = k;
    }
    config
        .validate()
        .map_err(|e| input(format!("invalid configuration: {e}")))?;
    Ok(config)
}

fn has_supported_extension(path: &Path) -> bool {
    matches!(
        path.extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref(),
        Some("png" | "jpg" | "jpeg")
    )
}

/// Decodes a PNG or JPEG into a raster. Anything else is rejected.
pub fn decode_image(path: &Path) -> CliResult<Raster> {
    if !has_supported_extension(path) {
        return Err(input(format!(
            "{}: unsupported format (only PNG and JPEG are accepted)",
            path.display()
        )));
    }
    let img = image::open(path)
        .map_err(|e| input(format!("{}: cannot decode: {e}", path.display())))?
        .to_rgb8();
    let (w, h) = img.dimensions();
    let pixels: Vec<RgbPixel> = img
        .pixels()
        .map(|p| RgbPixel::new(p.0[0], p.0[1], p.0[2]))
        .collect();
    Raster::new(w, h, pixels).map_err(|e| stage("decode", e))
}

/// Image files of a directory in ascending file-name order.
pub fn list_images(dir: &Path) -> CliResult<Vec<(String, PathBuf)>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| input(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| input(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        if path.is_file() && has_supported_extension(&path) {
            let name = entry.file_name().to_string_lossy().into_owned();
            files.push((name, path));
        }
    }
    if files.is_empty() {
        return Err(input(format!(
            "{}: no PNG or JPEG images found",
            dir.display()
        )));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(files)
}

pub fn extract_one(
    raster: &Raster,
    space: &FuzzyColorSpace,
    config: &PipelineConfig,
    source_id: &str,
) -> CliResult<FuzzyPalette> {
    let scaled = raster.downscale_to_fit(config.downscale_cap);
    fhsi::extract_fuzzy_palette(
        &scaled,
        space,
        config.k,
        config.pixel_assignment(),
        source_id,
    )
    .map_err(|e| stage("extract", e))
}

pub struct CorpusExtraction {
    pub palettes: Vec<FuzzyPalette>,
    pub skipped: Vec<String>,
}

/// Decodes and extracts every image, fanning out across the corpus.
/// Decode failures are collected as warnings, not errors.
pub fn extract_corpus(
    files: &[(String, PathBuf)],
    space: &FuzzyColorSpace,
    config: &PipelineConfig,
) -> CliResult<CorpusExtraction> {
    let results: Vec<(String, CliResult<FuzzyPalette>)> =
        fhsi::exec::par_map(files, |(name, path)| {
            let palette =
                decode_image(path).and_then(|raster| extract_one(&raster, space, config, name));
            (name.clone(), palette)
        });

    let mut palettes = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (name, result) in results {
        match result {
            Ok(p) => palettes.push(p),
            Err(e) => {
                eprintln!("warning: skipping {name}: {}", e.message());
                skipped.push(name);
            }
        }
    }
    if palettes.is_empty() {
        return Err(input("no image in the directory could be decoded"));
    }
    Ok(CorpusExtraction { palettes, skipped })
}

pub fn cluster(
    palettes: Vec<FuzzyPalette>,
    space: &FuzzyColorSpace,
    config: &PipelineConfig,
) -> CliResult<GroupingResult> {
    let params = ClusterParams::new(
        config.diff_threshold,
        config
            .difference_params()
            .map_err(|e| input(format!("invalid configuration: {e}")))?,
    )
    .map_err(|e| input(format!("invalid configuration: {e}")))?;
    cluster_corpus(palettes, space, &params).map_err(|e| stage("cluster", e))
}

/// Dominant groups per the strict above-average rule; degenerate corpora
/// where no group exceeds the average fall back to every group.
pub fn dominant_or_all(result: &GroupingResult) -> Vec<&PaletteGroup> {
    let dominant = dominant_groups(result);
    if dominant.is_empty() {
        result.groups.iter().collect()
    } else {
        dominant
    }
}

pub struct LabeledGroup<'a> {
    pub group: &'a PaletteGroup,
    pub labels: BTreeSet<HarmonyLabel>,
    pub chromatic_weight: f64,
    pub achromatic_weight: f64,
}

pub fn label_groups<'a>(
    groups: &[&'a PaletteGroup],
    space: &FuzzyColorSpace,
    config: &PipelineConfig,
) -> CliResult<Vec<LabeledGroup<'a>>> {
    let rules = config
        .harmony_rules()
        .map_err(|e| input(format!("invalid configuration: {e}")))?;
    let opts = config.wheel_options();
    Ok(groups
        .iter()
        .map(|g| {
            let profile = wheel_profile(&g.prototype, space, &opts);
            LabeledGroup {
                group: g,
                labels: classify_harmonies(&profile, &rules),
                chromatic_weight: profile.chromatic_weight(),
                achromatic_weight: profile.achromatic_weight(),
            }
        })
        .collect())
}

pub fn format_label_set(labels: &BTreeSet<HarmonyLabel>) -> String {
    labels
        .iter()
        .map(|l| l.name())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_palette(palette: &FuzzyPalette, space: &FuzzyColorSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "palette {} entries {}",
        palette.source_id(),
        palette.len()
    );
    for entry in palette.entries() {
        let rep = space.representative(entry.color);
        let _ = writeln!(
            out,
            "{} hsi({},{},{}) {:.3}",
            entry.color, rep.hue, rep.saturation, rep.intensity, entry.weight
        );
    }
    out
}

/// The full report stage on an already-clustered corpus; returns the
/// rendered report text for stdout.
pub fn build_report(
    domain: &str,
    result: &GroupingResult,
    space: &FuzzyColorSpace,
    config: &PipelineConfig,
    out_dir: &Path,
) -> CliResult<String> {
    let dominant = dominant_or_all(result);
    let labeled = label_groups(&dominant, space, config)?;
    let label_sets: Vec<BTreeSet<HarmonyLabel>> =
        labeled.iter().map(|l| l.labels.clone()).collect();
    let distribution = harmony_distribution(&label_sets);

    let report = fhsi::summarize(domain, &dominant, &label_sets, space)
        .map_err(|e| stage("summarize", e))?;
    let echo = config.echo();
    let report_text = fhsi::render_report(&report, &echo);

    fhsi::emit_report(&report, &echo, &distribution, &dominant, space, out_dir)
        .map_err(|e| stage("emit", e))?;

    Ok(report_text)
}

pub fn write_checkpoint_file(result: &GroupingResult, out_dir: &Path) -> CliResult<PathBuf> {
    fs::create_dir_all(out_dir)
        .map_err(|e| input(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join("grouping.txt");
    let mut buf = Vec::new();
    fhsi::write_checkpoint(result, &mut buf).map_err(|e| stage("checkpoint", e))?;
    fs::write(&path, buf).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn read_checkpoint_file(path: &Path) -> CliResult<GroupingResult> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    fhsi::read_checkpoint(text.as_bytes()).map_err(|e| input(format!("{}: {e}", path.display())))
}
