//! Pipeline configuration: every tunable defaults to the values baked
//! into the model modules and can be overridden from a small `key =
//! value` text file.
//!
//! Schema (one setting per line, `#` starts a comment):
//!
//!   k = 8                      # palette size, 1..=120
//!   lambda = 0.5               # weight-gap penalty in palette matching
//!   diff_threshold = 0.25      # grouping threshold, (0, 1]
//!   epsilon = 0.1              # off-template tolerance, [0, 1]
//!   weight_hue = 0.5           # fuzzy color difference weights,
//!   weight_saturation = 0.25   # non-negative, summing to 1
//!   weight_intensity = 0.25
//!   sat_floor = 15             # achromatic filtering thresholds
//!   dark_floor = 25
//!   light_ceil = 245
//!   downscale_cap = 256        # max image dimension before extraction
//!   soft_assign = false        # spread pixel mass over touched cells
//!   rectangular_gap = 2        # rectangle template short side (1 or 2)
//!   hue_centers = 0 30 60 120 180 240 280 320   # core centers, 8 values
//!   hue_core_halfwidth = 5
//!   sat_cores = 0:10 45:55 90:100               # core intervals, 3 values
//!   int_cores = 0:13 57:70 121:134 185:198 242:255   # 5 values

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fuzzy::{
    Attribute, DifferenceWeights, FuzzyColorSpace, FuzzyPartition, DEFAULT_HUE_CENTERS,
    DEFAULT_HUE_CORE_HALFWIDTH, DEFAULT_INTENSITY_CORES, DEFAULT_SATURATION_CORES, HUE_TERM_NAMES,
    INTENSITY_TERM_NAMES, SATURATION_TERM_NAMES,
};
use crate::harmony::{HarmonyRules, WheelOptions};
use crate::palette::{DifferenceParams, PixelAssignment};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub k: usize,
    pub lambda: f64,
    pub diff_threshold: f64,
    pub epsilon: f64,
    pub weight_hue: f64,
    pub weight_saturation: f64,
    pub weight_intensity: f64,
    pub sat_floor: f64,
    pub dark_floor: f64,
    pub light_ceil: f64,
    pub downscale_cap: u32,
    pub soft_assign: bool,
    pub rectangular_gap: usize,
    pub hue_centers: Vec<f64>,
    pub hue_core_halfwidth: f64,
    pub sat_cores: Vec<(f64, f64)>,
    pub int_cores: Vec<(f64, f64)>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            k: 8,
            lambda: 0.5,
            diff_threshold: 0.25,
            epsilon: 0.1,
            weight_hue: 0.5,
            weight_saturation: 0.25,
            weight_intensity: 0.25,
            sat_floor: 15.0,
            dark_floor: 25.0,
            light_ceil: 245.0,
            downscale_cap: 256,
            soft_assign: false,
            rectangular_gap: 2,
            hue_centers: DEFAULT_HUE_CENTERS.to_vec(),
            hue_core_halfwidth: DEFAULT_HUE_CORE_HALFWIDTH,
            sat_cores: DEFAULT_SATURATION_CORES.to_vec(),
            int_cores: DEFAULT_INTENSITY_CORES.to_vec(),
        }
    }
}

impl PipelineConfig {
    /// Parses overrides from the config text onto the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = PipelineConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                message: format!("expected 'key = value', got {raw:?}"),
            })?;
            let key = key.trim();
            let value = value.trim();
            config.apply(key, value).map_err(|message| Error::Config {
                line: line_no,
                message,
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        fn scalar<T: std::str::FromStr>(value: &str, what: &str) -> std::result::Result<T, String> {
            value
                .parse()
                .map_err(|_| format!("bad {what} value {value:?}"))
        }
        fn values(value: &str) -> std::result::Result<Vec<f64>, String> {
            value
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| format!("bad number {v:?}")))
                .collect()
        }
        fn cores(value: &str) -> std::result::Result<Vec<(f64, f64)>, String> {
            value
                .split_whitespace()
                .map(|pair| {
                    let (lo, hi) = pair
                        .split_once(':')
                        .ok_or_else(|| format!("core {pair:?} is not lo:hi"))?;
                    Ok((
                        lo.parse().map_err(|_| format!("bad number {lo:?}"))?,
                        hi.parse().map_err(|_| format!("bad number {hi:?}"))?,
                    ))
                })
                .collect()
        }

        match key {
            "k" => self.k = scalar(value, "k")?,
            "lambda" => self.lambda = scalar(value, "lambda")?,
            "diff_threshold" => self.diff_threshold = scalar(value, "diff_threshold")?,
            "epsilon" => self.epsilon = scalar(value, "epsilon")?,
            "weight_hue" => self.weight_hue = scalar(value, "weight_hue")?,
            "weight_saturation" => self.weight_saturation = scalar(value, "weight_saturation")?,
            "weight_intensity" => self.weight_intensity = scalar(value, "weight_intensity")?,
            "sat_floor" => self.sat_floor = scalar(value, "sat_floor")?,
            "dark_floor" => self.dark_floor = scalar(value, "dark_floor")?,
            "light_ceil" => self.light_ceil = scalar(value, "light_ceil")?,
            "downscale_cap" => self.downscale_cap = scalar(value, "downscale_cap")?,
            "soft_assign" => self.soft_assign = scalar(value, "soft_assign")?,
            "rectangular_gap" => self.rectangular_gap = scalar(value, "rectangular_gap")?,
            "hue_centers" => self.hue_centers = values(value)?,
            "hue_core_halfwidth" => self.hue_core_halfwidth = scalar(value, "hue_core_halfwidth")?,
            "sat_cores" => self.sat_cores = cores(value)?,
            "int_cores" => self.int_cores = cores(value)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// Range checks beyond what the model constructors enforce.
    pub fn validate(&self) -> Result<()> {
        let invalid = |name: &'static str, reason: String| Error::InvalidParameter { name, reason };
        if self.k == 0 || self.k > crate::fuzzy::COLOR_CELLS {
            return Err(invalid("k", format!("must be 1..=120, got {}", self.k)));
        }
        if self.lambda.is_nan() || self.lambda < 0.0 {
            return Err(invalid(
                "lambda",
                format!("must be >= 0, got {}", self.lambda),
            ));
        }
        if !(self.diff_threshold > 0.0 && self.diff_threshold <= 1.0) {
            return Err(invalid(
                "diff_threshold",
                format!("must be in (0, 1], got {}", self.diff_threshold),
            ));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(invalid(
                "epsilon",
                format!("must be in [0, 1], got {}", self.epsilon),
            ));
        }
        if !(0.0..=100.0).contains(&self.sat_floor) {
            return Err(invalid(
                "sat_floor",
                format!("must be in [0, 100], got {}", self.sat_floor),
            ));
        }
        if !(0.0..=255.0).contains(&self.dark_floor) || !(0.0..=255.0).contains(&self.light_ceil) {
            return Err(invalid(
                "dark_floor/light_ceil",
                "intensity thresholds must be in [0, 255]".into(),
            ));
        }
        if self.dark_floor >= self.light_ceil {
            return Err(invalid(
                "dark_floor",
                format!(
                    "must be below light_ceil, got {} >= {}",
                    self.dark_floor, self.light_ceil
                ),
            ));
        }
        if self.downscale_cap == 0 {
            return Err(invalid("downscale_cap", "must be positive".into()));
        }
        // These constructors run the detailed checks.
        self.difference_weights()?;
        self.space()?;
        self.harmony_rules()?;
        Ok(())
    }

    pub fn difference_weights(&self) -> Result<DifferenceWeights> {
        DifferenceWeights::new(
            self.weight_hue,
            self.weight_saturation,
            self.weight_intensity,
        )
    }

    pub fn difference_params(&self) -> Result<DifferenceParams> {
        DifferenceParams::new(self.difference_weights()?, self.lambda)
    }

    pub fn space(&self) -> Result<FuzzyColorSpace> {
        let hue = FuzzyPartition::from_hue_centers(
            &HUE_TERM_NAMES,
            &self.hue_centers,
            self.hue_core_halfwidth,
        )?;
        let saturation = FuzzyPartition::from_cores(
            Attribute::Saturation,
            &SATURATION_TERM_NAMES,
            &self.sat_cores,
            (0.0, 100.0),
        )?;
        let intensity = FuzzyPartition::from_cores(
            Attribute::Intensity,
            &INTENSITY_TERM_NAMES,
            &self.int_cores,
            (0.0, 255.0),
        )?;
        FuzzyColorSpace::from_partitions(hue, saturation, intensity)
    }

    pub fn wheel_options(&self) -> WheelOptions {
        WheelOptions {
            sat_floor: self.sat_floor,
            dark_floor: self.dark_floor,
            light_ceil: self.light_ceil,
        }
    }

    pub fn harmony_rules(&self) -> Result<HarmonyRules> {
        HarmonyRules::new(self.epsilon, self.rectangular_gap)
    }

    pub fn pixel_assignment(&self) -> PixelAssignment {
        if self.soft_assign {
            PixelAssignment::Soft
        } else {
            PixelAssignment::Hard
        }
    }

    /// Effective settings as (key, value) pairs, echoed into report
    /// headers and printed by `--show-config`.
    pub fn echo(&self) -> Vec<(String, String)> {
        let join = |vals: &[f64]| {
            vals.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let join_cores = |cores: &[(f64, f64)]| {
            cores
                .iter()
                .map(|(lo, hi)| format!("{lo}:{hi}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        vec![
            ("k".into(), self.k.to_string()),
            ("lambda".into(), self.lambda.to_string()),
            ("diff_threshold".into(), self.diff_threshold.to_string()),
            ("epsilon".into(), self.epsilon.to_string()),
            ("weight_hue".into(), self.weight_hue.to_string()),
            (
                "weight_saturation".into(),
                self.weight_saturation.to_string(),
            ),
            ("weight_intensity".into(), self.weight_intensity.to_string()),
            ("sat_floor".into(), self.sat_floor.to_string()),
            ("dark_floor".into(), self.dark_floor.to_string()),
            ("light_ceil".into(), self.light_ceil.to_string()),
            ("downscale_cap".into(), self.downscale_cap.to_string()),
            ("soft_assign".into(), self.soft_assign.to_string()),
            ("rectangular_gap".into(), self.rectangular_gap.to_string()),
            ("hue_centers".into(), join(&self.hue_centers)),
            (
                "hue_core_halfwidth".into(),
                self.hue_core_halfwidth.to_string(),
            ),
            ("sat_cores".into(), join_cores(&self.sat_cores)),
            ("int_cores".into(), join_cores(&self.int_cores)),
        ]
    }

    /// The echo rendered as a loadable config file.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.echo() {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}
