//! Fuzzy HSI color analysis.
//!
//! The crate implements a fuzzy color model over the HSI space and the
//! pipeline built on it: per-pixel fuzzy classification, dominant
//! palette extraction, single-pass grouping of image corpora by palette
//! similarity, color-wheel harmony classification, and domain-level
//! reporting.
//!
//! With the default `parallel` feature the pixel and corpus stages fan
//! out over rayon; disabling it swaps in sequential equivalents that
//! produce identical results.

pub mod color;
pub mod config;
pub mod error;
pub mod exec;
pub mod fuzzy;
pub mod grouping;
pub mod harmony;
pub mod matching;
pub mod palette;
pub mod raster;
pub mod report;

pub use color::{hsi_to_rgb, hue_distance, rgb_to_hsi, HsiPoint, RgbPixel};
pub use config::PipelineConfig;
pub use error::{Error, Result};
pub use fuzzy::{
    DifferenceWeights, FuzzyColor, FuzzyColorSpace, FuzzyPartition, LinguisticTerm, COLOR_CELLS,
};
pub use grouping::{
    cluster_corpus, dominant_groups, read_checkpoint, write_checkpoint, ClusterParams,
    GroupingResult, PaletteGroup,
};
pub use harmony::{
    classify_harmonies, harmony_distribution, wheel_profile, wheel_profile_from_points,
    ChromaticProfile, HarmonyDistribution, HarmonyLabel, HarmonyRules, WheelOptions, WheelPosition,
};
pub use palette::{
    extract_fuzzy_palette, palette_difference, DifferenceParams, FuzzyPalette, PaletteMetric,
    PixelAssignment, WeightedFuzzyColor,
};
pub use raster::Raster;
pub use report::{
    emit_report, parse_report, render_distribution_csv, render_distribution_svg,
    render_palette_svg, render_report, summarize, DomainReport, EmittedFiles,
};
