//! Color-wheel harmony classification on the 12-split wheel.
//!
//! Palettes are reduced to a chromatic profile: entries whose
//! representative is too gray, too dark or too light are set aside as
//! achromatic, the rest land in one of twelve 30-degree sectors. Seven
//! rotational templates are then matched against the occupied sectors;
//! palettes matching none fall back to Other.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::color::HsiPoint;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyColorSpace;
use crate::palette::FuzzyPalette;

pub const WHEEL_SECTORS: usize = 12;

/// One 30-degree sector of the wheel, centered at index * 30 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WheelPosition(u8);

impl WheelPosition {
    pub fn new(index: usize) -> Result<Self> {
        if index >= WHEEL_SECTORS {
            return Err(Error::InvalidParameter {
                name: "wheel position",
                reason: format!("index {index} outside 0..{WHEEL_SECTORS}"),
            });
        }
        Ok(WheelPosition(index as u8))
    }

    pub fn from_hue(hue: f64) -> Self {
        let index = (hue.rem_euclid(360.0) / 30.0).round() as usize % WHEEL_SECTORS;
        WheelPosition(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The seven wheel rules plus the Other fallback, in the canonical
/// listing order used for tie-breaking and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarmonyLabel {
    Monochromatic,
    Complementary,
    SplitComplementary,
    Triad,
    Square,
    Rectangular,
    Analogous,
    Other,
}

impl HarmonyLabel {
    pub const ALL: [HarmonyLabel; 8] = [
        HarmonyLabel::Monochromatic,
        HarmonyLabel::Complementary,
        HarmonyLabel::SplitComplementary,
        HarmonyLabel::Triad,
        HarmonyLabel::Square,
        HarmonyLabel::Rectangular,
        HarmonyLabel::Analogous,
        HarmonyLabel::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HarmonyLabel::Monochromatic => "Monochromatic",
            HarmonyLabel::Complementary => "Complementary",
            HarmonyLabel::SplitComplementary => "Split Complementary",
            HarmonyLabel::Triad => "Triad",
            HarmonyLabel::Square => "Square",
            HarmonyLabel::Rectangular => "Rectangular",
            HarmonyLabel::Analogous => "Analogous",
            HarmonyLabel::Other => "Other",
        }
    }
}

impl fmt::Display for HarmonyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HarmonyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HarmonyLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: "harmony label",
                reason: format!("unknown label {s:?}"),
            })
    }
}

/// Aggregated chromatic weight per wheel sector plus the weight excluded
/// as achromatic. Weights sum to the palette total (1 after palette
/// normalization).
#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticProfile {
    weights: [f64; WHEEL_SECTORS],
    achromatic_weight: f64,
}

impl ChromaticProfile {
    pub fn weights(&self) -> &[f64; WHEEL_SECTORS] {
        &self.weights
    }

    pub fn achromatic_weight(&self) -> f64 {
        self.achromatic_weight
    }

    pub fn chromatic_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_achromatic(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0)
    }

    pub fn occupied(&self) -> impl Iterator<Item = (WheelPosition, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| (WheelPosition(i as u8), w))
    }
}

/// Achromatic filtering thresholds for wheel mapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelOptions {
    /// Entries with representative saturation below this are achromatic.
    pub sat_floor: f64,
    /// Entries with representative intensity below this are achromatic.
    pub dark_floor: f64,
    /// Entries with representative intensity above this are achromatic.
    pub light_ceil: f64,
}

impl Default for WheelOptions {
    fn default() -> Self {
        WheelOptions {
            sat_floor: 15.0,
            dark_floor: 25.0,
            light_ceil: 245.0,
        }
    }
}

/// Template matching parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonyRules {
    /// Tolerated total weight on occupied sectors outside a template.
    pub epsilon: f64,
    /// Sector gap of the rectangular template's short side (1 or 2).
    pub rectangular_gap: usize,
}

impl HarmonyRules {
    pub fn new(epsilon: f64, rectangular_gap: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("must be in [0, 1], got {epsilon}"),
            });
        }
        if !(rectangular_gap == 1 || rectangular_gap == 2) {
            return Err(Error::InvalidParameter {
                name: "rectangular gap",
                reason: format!("must be 1 or 2, got {rectangular_gap}"),
            });
        }
        Ok(HarmonyRules {
            epsilon,
            rectangular_gap,
        })
    }
}

impl Default for HarmonyRules {
    fn default() -> Self {
        HarmonyRules {
            epsilon: 0.1,
            rectangular_gap: 2,
        }
    }
}

/// Maps crisp (point, weight) pairs onto the wheel.
pub fn wheel_profile_from_points(
    points: &[(HsiPoint, f64)],
    opts: &WheelOptions,
) -> ChromaticProfile {
    let mut weights = [0.0f64; WHEEL_SECTORS];
    let mut achromatic_weight = 0.0f64;
    for &(p, w) in points {
        if p.saturation < opts.sat_floor
            || p.intensity < opts.dark_floor
            || p.intensity > opts.light_ceil
        {
            achromatic_weight += w;
        } else {
            weights[WheelPosition::from_hue(p.hue).index()] += w;
        }
    }
    ChromaticProfile {
        weights,
        achromatic_weight,
    }
}

/// Maps a fuzzy palette onto the wheel via entry representatives.
pub fn wheel_profile(
    palette: &FuzzyPalette,
    space: &FuzzyColorSpace,
    opts: &WheelOptions,
) -> ChromaticProfile {
    let points: Vec<(HsiPoint, f64)> = palette
        .entries()
        .iter()
        .map(|e| (space.representative(e.color), e.weight))
        .collect();
    wheel_profile_from_points(&points, opts)
}

fn template_offsets(label: HarmonyLabel, rectangular_gap: usize) -> Option<Vec<usize>> {
    match label {
        HarmonyLabel::Monochromatic => Some(vec![0]),
        HarmonyLabel::Complementary => Some(vec![0, 6]),
        HarmonyLabel::SplitComplementary => Some(vec![0, 5, 7]),
        HarmonyLabel::Triad => Some(vec![0, 4, 8]),
        HarmonyLabel::Square => Some(vec![0, 3, 6, 9]),
        HarmonyLabel::Rectangular => Some(vec![0, rectangular_gap, 6, 6 + rectangular_gap]),
        _ => None,
    }
}

/// Matches the profile against every template at every rotation.
///
/// A template matches when all of its sectors carry weight and the total
/// weight on occupied sectors outside it is at most epsilon. Analogous
/// uses the same rule over contiguous arcs of 3 to 5 sectors. All
/// matching labels are returned; a profile matching nothing (including
/// a fully achromatic one) yields {Other}.
pub fn classify_harmonies(
    profile: &ChromaticProfile,
    rules: &HarmonyRules,
) -> BTreeSet<HarmonyLabel> {
    let weights = &profile.weights;
    let chromatic: f64 = profile.chromatic_weight();
    let mut labels = BTreeSet::new();

    if chromatic <= 0.0 {
        labels.insert(HarmonyLabel::Other);
        return labels;
    }

    let matches = |offsets: &[usize], rotation: usize| -> bool {
        let mut covered = [false; WHEEL_SECTORS];
        for &off in offsets {
            let pos = (rotation + off) % WHEEL_SECTORS;
            if weights[pos] == 0.0 {
                return false;
            }
            covered[pos] = true;
        }
        let off_template: f64 = weights
            .iter()
            .enumerate()
            .filter(|&(i, &w)| !covered[i] && w > 0.0)
            .map(|(_, &w)| w)
            .sum();
        off_template <= rules.epsilon
    };

    for label in [
        HarmonyLabel::Monochromatic,
        HarmonyLabel::Complementary,
        HarmonyLabel::SplitComplementary,
        HarmonyLabel::Triad,
        HarmonyLabel::Square,
        HarmonyLabel::Rectangular,
    ] {
        let offsets = template_offsets(label, rules.rectangular_gap).expect("fixed template");
        if (0..WHEEL_SECTORS).any(|rot| matches(&offsets, rot)) {
            labels.insert(label);
        }
    }

    // Analogous: contiguous arcs of 3 to 5 sectors.
    'arcs: for width in 3..=5usize {
        let offsets: Vec<usize> = (0..width).collect();
        for rot in 0..WHEEL_SECTORS {
            if matches(&offsets, rot) {
                labels.insert(HarmonyLabel::Analogous);
                break 'arcs;
            }
        }
    }

    if labels.is_empty() {
        labels.insert(HarmonyLabel::Other);
    }
    labels
}

/// Per-label counts across a corpus; multi-label palettes count once per
/// label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HarmonyDistribution {
    counts: [u64; HarmonyLabel::ALL.len()],
}

impl HarmonyDistribution {
    pub fn count(&self, label: HarmonyLabel) -> u64 {
        self.counts[HarmonyLabel::ALL.iter().position(|&l| l == label).unwrap()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (HarmonyLabel, u64)> + '_ {
        HarmonyLabel::ALL.iter().map(move |&l| (l, self.count(l)))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn harmony_distribution(labeled: &[BTreeSet<HarmonyLabel>]) -> HarmonyDistribution {
    let mut dist = HarmonyDistribution::default();
    for set in labeled {
        for &label in set {
            let idx = HarmonyLabel::ALL.iter().position(|&l| l == label).unwrap();
            dist.counts[idx] += 1;
        }
    }
    dist
}
