//! Dominant fuzzy palette extraction and palette-to-palette
//! dissimilarity (the Dp used by corpus grouping).

use crate::error::{Error, Result};
use crate::exec;
use crate::fuzzy::{DifferenceWeights, FuzzyColor, FuzzyColorSpace, COLOR_CELLS};
use crate::matching::min_cost_assignment;
use crate::raster::Raster;

/// Pixels per work unit in the histogram stage; partials are merged in
/// chunk order so the result is independent of scheduling.
const HISTOGRAM_CHUNK: usize = 1 << 14;

/// Costs are snapped to this dyadic grid before matching: sums of up to
/// 120 grid values stay exact in f64 and the integer solver sees the
/// same numbers the brute-force oracle does.
const COST_GRID: f64 = (1u64 << 26) as f64;

/// How pixels contribute histogram mass during extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelAssignment {
    /// Each pixel adds mass 1 to its argmax cell. Default.
    Hard,
    /// Each pixel spreads its joint membership over all touched cells.
    Soft,
}

/// A fuzzy color together with its share of the palette, in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedFuzzyColor {
    pub color: FuzzyColor,
    pub weight: f64,
}

/// Up to k weighted fuzzy colors extracted from one image, sorted by
/// descending weight (ties to the lower cell index), weights normalized
/// to sum 1, no duplicate colors.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPalette {
    entries: Vec<WeightedFuzzyColor>,
    source_id: String,
}

impl FuzzyPalette {
    /// Builds a palette from raw (color, mass) pairs: drops non-positive
    /// masses, merges duplicates, keeps the `k` heaviest cells and
    /// renormalizes.
    pub fn from_masses(
        masses: impl IntoIterator<Item = (FuzzyColor, f64)>,
        k: usize,
        source_id: impl Into<String>,
    ) -> Result<Self> {
        if k == 0 || k > COLOR_CELLS {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: format!("palette size must be in 1..={COLOR_CELLS}, got {k}"),
            });
        }
        let mut bins = [0.0f64; COLOR_CELLS];
        for (color, mass) in masses {
            if !mass.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "mass",
                    reason: format!("mass for {color} must be finite, got {mass}"),
                });
            }
            if mass > 0.0 {
                bins[color.index()] += mass;
            }
        }
        let mut occupied: Vec<(usize, f64)> = bins
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(i, &m)| (i, m))
            .collect();
        if occupied.is_empty() {
            return Err(Error::EmptyPalette);
        }
        // Heaviest first; equal masses resolve to the lower cell index.
        occupied.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        occupied.truncate(k);

        let total: f64 = occupied.iter().map(|&(_, m)| m).sum();
        let entries = occupied
            .into_iter()
            .map(|(i, m)| WeightedFuzzyColor {
                color: FuzzyColor::from_index(i).expect("occupied index in range"),
                weight: m / total,
            })
            .collect();

        Ok(FuzzyPalette {
            entries,
            source_id: source_id.into(),
        })
    }

    pub fn entries(&self) -> &[WeightedFuzzyColor] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }
}

/// Extracts the dominant fuzzy palette of an image: every pixel is
/// classified into the 120-cell space, cell masses are accumulated into
/// a histogram, and the k heaviest occupied cells form the palette.
pub fn extract_fuzzy_palette(
    image: &Raster,
    space: &FuzzyColorSpace,
    k: usize,
    assignment: PixelAssignment,
    source_id: impl Into<String>,
) -> Result<FuzzyPalette> {
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }

    let partials = exec::par_chunk_map(image.pixels(), HISTOGRAM_CHUNK, |chunk| {
        let mut bins = vec![0.0f64; COLOR_CELLS];
        match assignment {
            PixelAssignment::Hard => {
                for &px in chunk {
                    let (color, _) = space.classify(crate::color::rgb_to_hsi(px));
                    bins[color.index()] += 1.0;
                }
            }
            PixelAssignment::Soft => {
                for &px in chunk {
                    let hsi = crate::color::rgb_to_hsi(px);
                    accumulate_soft(space, hsi, &mut bins);
                }
            }
        }
        bins
    });

    // Sequential merge in chunk order keeps the histogram deterministic.
    let mut bins = vec![0.0f64; COLOR_CELLS];
    for partial in partials {
        for (acc, p) in bins.iter_mut().zip(partial) {
            *acc += p;
        }
    }

    FuzzyPalette::from_masses(
        bins.iter()
            .enumerate()
            .map(|(i, &m)| (FuzzyColor::from_index(i).expect("in range"), m)),
        k,
        source_id,
    )
}

/// Spreads a point's joint membership (product over attributes) across
/// every cell it touches. A trapezoid point overlaps at most two terms
/// per attribute, so at most eight cells receive mass; the Ruspini
/// property makes the total mass exactly the per-attribute product of
/// sums, i.e. 1.
fn accumulate_soft(space: &FuzzyColorSpace, p: crate::color::HsiPoint, bins: &mut [f64]) {
    let hue_value = if p.saturation == 0.0 { 0.0 } else { p.hue };
    let mut hue_hits = [(0usize, 0.0f64); 2];
    let mut sat_hits = [(0usize, 0.0f64); 2];
    let mut int_hits = [(0usize, 0.0f64); 2];
    let nh = collect_hits(space.hue_partition(), hue_value, &mut hue_hits);
    let ns = collect_hits(space.saturation_partition(), p.saturation, &mut sat_hits);
    let ni = collect_hits(space.intensity_partition(), p.intensity, &mut int_hits);

    for &(h, mu_h) in &hue_hits[..nh] {
        for &(s, mu_s) in &sat_hits[..ns] {
            for &(i, mu_i) in &int_hits[..ni] {
                let cell = (h * crate::fuzzy::SATURATION_TERM_NAMES.len() + s)
                    * crate::fuzzy::INTENSITY_TERM_NAMES.len()
                    + i;
                bins[cell] += mu_h * mu_s * mu_i;
            }
        }
    }
}

fn collect_hits(
    partition: &crate::fuzzy::FuzzyPartition,
    value: f64,
    out: &mut [(usize, f64); 2],
) -> usize {
    let mut n = 0;
    for (i, term) in partition.terms().iter().enumerate() {
        let mu = term.membership(value);
        if mu > 0.0 && n < 2 {
            out[n] = (i, mu);
            n += 1;
        }
    }
    n
}

/// Parameters of the palette dissimilarity: the fuzzy color difference
/// weights plus the prominence penalty lambda on weight gaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceParams {
    pub weights: DifferenceWeights,
    pub lambda: f64,
}

impl DifferenceParams {
    pub fn new(weights: DifferenceWeights, lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("must be non-negative, got {lambda}"),
            });
        }
        Ok(DifferenceParams { weights, lambda })
    }
}

impl Default for DifferenceParams {
    fn default() -> Self {
        DifferenceParams {
            weights: DifferenceWeights::default(),
            lambda: 0.5,
        }
    }
}

/// Palette dissimilarity Dp with a precomputed 120x120 color-difference
/// table; build one per corpus run and reuse it across comparisons.
pub struct PaletteMetric<'a> {
    space: &'a FuzzyColorSpace,
    params: DifferenceParams,
    table: Vec<f64>,
}

impl<'a> PaletteMetric<'a> {
    pub fn new(space: &'a FuzzyColorSpace, params: DifferenceParams) -> Self {
        let n = COLOR_CELLS;
        let mut table = vec![0.0f64; n * n];
        for i in 0..n {
            let ci = FuzzyColor::from_index(i).expect("in range");
            for j in 0..n {
                let cj = FuzzyColor::from_index(j).expect("in range");
                table[i * n + j] = space.color_difference(ci, cj, &params.weights);
            }
        }
        PaletteMetric {
            space,
            params,
            table,
        }
    }

    pub fn space(&self) -> &FuzzyColorSpace {
        self.space
    }

    pub fn params(&self) -> DifferenceParams {
        self.params
    }

    /// Per-pair matching cost on the quantized grid. Real-to-real pairs
    /// cost `min(1, color_difference + lambda*|w1 - w2|)`; a pad slot
    /// (present when palette sizes differ) has no color, so only the
    /// prominence term applies.
    fn pair_cost_units(
        &self,
        a: Option<&WeightedFuzzyColor>,
        b: Option<&WeightedFuzzyColor>,
    ) -> i64 {
        let cost = match (a, b) {
            (Some(x), Some(y)) => {
                self.table[x.color.index() * COLOR_CELLS + y.color.index()]
                    + self.params.lambda * (x.weight - y.weight).abs()
            }
            (Some(x), None) => self.params.lambda * x.weight,
            (None, Some(y)) => self.params.lambda * y.weight,
            (None, None) => 0.0,
        };
        (cost.min(1.0) * COST_GRID).round() as i64
    }

    /// Dp in [0, 1]: pad the shorter palette with zero-weight slots,
    /// find the exact minimal-cost perfect matching of entries, and
    /// average the matched pair costs.
    pub fn difference(&self, p1: &FuzzyPalette, p2: &FuzzyPalette) -> f64 {
        let n = p1.len().max(p2.len());
        let mut cost = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                cost[i * n + j] = self.pair_cost_units(p1.entries.get(i), p2.entries.get(j));
            }
        }
        let (_, total) = min_cost_assignment(&cost, n);
        total as f64 / (COST_GRID * n as f64)
    }
}

/// One-off convenience wrapper around [`PaletteMetric`].
pub fn palette_difference(
    p1: &FuzzyPalette,
    p2: &FuzzyPalette,
    space: &FuzzyColorSpace,
    params: DifferenceParams,
) -> f64 {
    PaletteMetric::new(space, params).difference(p1, p2)
}
