//! The fuzzy HSI color space: linguistic partitions of hue, saturation
//! and intensity, classification of crisp points into fuzzy colors,
//! representative colors, and the fuzzy color difference.
//!
//! Each attribute is partitioned into trapezoidal linguistic terms whose
//! cores are separated by complementary linear ramps, so memberships sum
//! to 1 everywhere in the domain (a Ruspini partition) by construction.
//! The full space is the cross product of the three partitions:
//! 8 hue x 3 saturation x 5 intensity = 120 fuzzy colors.

use std::fmt;
use std::str::FromStr;

use crate::color::{hue_distance, HsiPoint};
use crate::error::{Error, Result};

pub const HUE_TERM_NAMES: [&str; 8] = [
    "Red", "Orange", "Yellow", "Green", "Cyan", "Blue", "Violet", "Magenta",
];
pub const SATURATION_TERM_NAMES: [&str; 3] = ["Low", "Medium", "High"];
pub const INTENSITY_TERM_NAMES: [&str; 5] = ["Dark", "Deep", "Medium", "Pale", "Light"];

/// Number of cells in the canonical space: 8 * 3 * 5.
pub const COLOR_CELLS: usize = 120;

pub const DEFAULT_HUE_CENTERS: [f64; 8] = [0.0, 30.0, 60.0, 120.0, 180.0, 240.0, 280.0, 320.0];
pub const DEFAULT_HUE_CORE_HALFWIDTH: f64 = 5.0;
pub const DEFAULT_SATURATION_CORES: [(f64, f64); 3] = [(0.0, 10.0), (45.0, 55.0), (90.0, 100.0)];
pub const DEFAULT_INTENSITY_CORES: [(f64, f64); 5] = [
    (0.0, 13.0),
    (57.0, 70.0),
    (121.0, 134.0),
    (185.0, 198.0),
    (242.0, 255.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attribute {
    Hue,
    Saturation,
    Intensity,
}

impl Attribute {
    pub fn name(self) -> &'static str {
        match self {
            Attribute::Hue => "hue",
            Attribute::Saturation => "saturation",
            Attribute::Intensity => "intensity",
        }
    }
}

/// One linguistic term, represented by trapezoid breakpoints
/// a <= b <= c <= d: membership is 1 on [b, c], 0 outside [a, d] and
/// linear in between. Circular terms (hue) store breakpoints on an
/// unwrapped axis and interpret inputs modulo 360.
#[derive(Debug, Clone)]
pub struct LinguisticTerm {
    pub name: &'static str,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub circular: bool,
}

impl LinguisticTerm {
    fn membership_raw(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else if x <= self.c {
            1.0
        } else {
            (self.d - x) / (self.d - self.c)
        }
    }

    pub fn membership(&self, x: f64) -> f64 {
        if self.circular {
            let x = x.rem_euclid(360.0);
            self.membership_raw(x).max(self.membership_raw(x + 360.0))
        } else {
            self.membership_raw(x)
        }
    }

    /// Midpoint of the core [b, c], wrapped for circular terms.
    fn core_midpoint(&self) -> f64 {
        let mid = (self.b + self.c) / 2.0;
        if self.circular {
            mid.rem_euclid(360.0)
        } else {
            mid
        }
    }
}

/// An ordered family of linguistic terms covering one attribute domain
/// with memberships that sum to 1 at every point.
#[derive(Debug, Clone)]
pub struct FuzzyPartition {
    pub attribute: Attribute,
    terms: Vec<LinguisticTerm>,
    domain: (f64, f64),
    circular: bool,
}

impl FuzzyPartition {
    /// Builds a non-circular partition from term core intervals. Cores
    /// must be ascending and disjoint, the first must start at the domain
    /// minimum and the last must end at the domain maximum; the ramps
    /// between consecutive cores are derived so the partition sums to 1.
    pub fn from_cores(
        attribute: Attribute,
        names: &[&'static str],
        cores: &[(f64, f64)],
        domain: (f64, f64),
    ) -> Result<Self> {
        let param = match attribute {
            Attribute::Saturation => "saturation cores",
            _ => "intensity cores",
        };
        let invalid = |reason: String| Error::InvalidParameter {
            name: param,
            reason,
        };
        if names.len() != cores.len() || cores.is_empty() {
            return Err(invalid(format!(
                "expected {} cores, got {}",
                names.len(),
                cores.len()
            )));
        }
        if cores.iter().any(|&(lo, hi)| lo.is_nan() || hi.is_nan()) {
            return Err(invalid("cores must be finite numbers".into()));
        }
        for (i, &(lo, hi)) in cores.iter().enumerate() {
            if lo > hi {
                return Err(invalid(format!("core {i} has lo {lo} > hi {hi}")));
            }
            if i + 1 < cores.len() && hi >= cores[i + 1].0 {
                return Err(invalid(format!("core {i} overlaps core {}", i + 1)));
            }
        }
        if cores[0].0 != domain.0 || cores[cores.len() - 1].1 != domain.1 {
            return Err(invalid(format!(
                "first core must start at {} and last core must end at {}",
                domain.0, domain.1
            )));
        }

        let n = cores.len();
        let terms = (0..n)
            .map(|t| LinguisticTerm {
                name: names[t],
                a: if t == 0 { domain.0 } else { cores[t - 1].1 },
                b: cores[t].0,
                c: cores[t].1,
                d: if t + 1 == n { domain.1 } else { cores[t + 1].0 },
                circular: false,
            })
            .collect();

        Ok(FuzzyPartition {
            attribute,
            terms,
            domain,
            circular: false,
        })
    }

    /// Builds the circular hue partition from core centers (ascending,
    /// in [0, 360)) and a shared core half-width. Ramps span the full
    /// gap between adjacent cores, wrapping from the last back to the
    /// first across 360.
    pub fn from_hue_centers(
        names: &[&'static str],
        centers: &[f64],
        halfwidth: f64,
    ) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidParameter {
            name: "hue centers",
            reason,
        };
        if names.len() != centers.len() || centers.len() < 2 {
            return Err(invalid(format!(
                "expected {} centers (at least 2), got {}",
                names.len(),
                centers.len()
            )));
        }
        if halfwidth.is_nan() || halfwidth < 0.0 {
            return Err(invalid(format!("bad core half-width {halfwidth}")));
        }
        for (i, &c) in centers.iter().enumerate() {
            if !(0.0..360.0).contains(&c) {
                return Err(invalid(format!("center {i} = {c} outside [0, 360)")));
            }
            if i + 1 < centers.len() && c >= centers[i + 1] {
                return Err(invalid(format!(
                    "centers must be strictly ascending at {i}"
                )));
            }
        }
        let n = centers.len();
        for i in 0..n {
            let next = if i + 1 == n {
                centers[0] + 360.0
            } else {
                centers[i + 1]
            };
            if next - centers[i] <= 2.0 * halfwidth {
                return Err(invalid(format!(
                    "cores {i} and {} overlap (gap {} <= 2*halfwidth)",
                    (i + 1) % n,
                    next - centers[i]
                )));
            }
        }

        let terms = (0..n)
            .map(|t| {
                let prev = if t == 0 {
                    centers[n - 1] - 360.0
                } else {
                    centers[t - 1]
                };
                let next = if t + 1 == n {
                    centers[0] + 360.0
                } else {
                    centers[t + 1]
                };
                let mut a = prev + halfwidth;
                let mut b = centers[t] - halfwidth;
                let mut c = centers[t] + halfwidth;
                let mut d = next - halfwidth;
                // Keep the unwrapped support non-negative so membership
                // lookup only ever probes x and x + 360.
                if a < 0.0 {
                    a += 360.0;
                    b += 360.0;
                    c += 360.0;
                    d += 360.0;
                }
                LinguisticTerm {
                    name: names[t],
                    a,
                    b,
                    c,
                    d,
                    circular: true,
                }
            })
            .collect();

        Ok(FuzzyPartition {
            attribute: Attribute::Hue,
            terms,
            domain: (0.0, 360.0),
            circular: true,
        })
    }

    pub fn terms(&self) -> &[LinguisticTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Membership degree of `value` in every term, in term order.
    /// Values outside the domain of a non-circular attribute are an
    /// error; hue wraps.
    pub fn memberships(&self, value: f64) -> Result<Vec<f64>> {
        if !self.circular && !(self.domain.0 <= value && value <= self.domain.1) {
            return Err(Error::OutOfDomain {
                attribute: self.attribute.name(),
                value,
                min: self.domain.0,
                max: self.domain.1,
            });
        }
        Ok(self.terms.iter().map(|t| t.membership(value)).collect())
    }

    /// Index and degree of the best-matching term, ties to the lower
    /// index. Clamps non-circular values into the domain; hue wraps.
    /// Allocation-free: this is the per-pixel hot path.
    pub fn argmax(&self, value: f64) -> (usize, f64) {
        let value = if self.circular {
            value.rem_euclid(360.0)
        } else {
            value.clamp(self.domain.0, self.domain.1)
        };
        let mut best = 0usize;
        let mut best_mu = self.terms[0].membership(value);
        for (i, term) in self.terms.iter().enumerate().skip(1) {
            let mu = term.membership(value);
            if mu > best_mu {
                best = i;
                best_mu = mu;
            }
        }
        (best, best_mu)
    }

    /// Checks the sum-to-1 property on a uniform sweep of the domain.
    pub fn max_ruspini_deviation(&self, samples: usize) -> f64 {
        let samples = samples.max(2);
        let (lo, hi) = self.domain;
        let mut worst = 0.0f64;
        for i in 0..samples {
            let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            let sum: f64 = self.terms.iter().map(|t| t.membership(x)).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }

    fn representative(&self, term: usize) -> f64 {
        if self.circular {
            self.terms[term].core_midpoint().round().rem_euclid(360.0)
        } else if term == 0 {
            self.domain.0
        } else if term == self.terms.len() - 1 {
            self.domain.1
        } else {
            self.terms[term].core_midpoint().round()
        }
    }
}

/// One cell of the fuzzy color space, named by a (hue, saturation,
/// intensity) term triple. Cells order hue-major: index =
/// (hue * 3 + saturation) * 5 + intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyColor {
    hue: u8,
    sat: u8,
    int: u8,
}

impl FuzzyColor {
    pub fn new(hue: usize, sat: usize, int: usize) -> Result<Self> {
        if hue >= HUE_TERM_NAMES.len() {
            return Err(Error::InvalidTerm {
                attribute: "hue",
                index: hue,
                count: HUE_TERM_NAMES.len(),
            });
        }
        if sat >= SATURATION_TERM_NAMES.len() {
            return Err(Error::InvalidTerm {
                attribute: "saturation",
                index: sat,
                count: SATURATION_TERM_NAMES.len(),
            });
        }
        if int >= INTENSITY_TERM_NAMES.len() {
            return Err(Error::InvalidTerm {
                attribute: "intensity",
                index: int,
                count: INTENSITY_TERM_NAMES.len(),
            });
        }
        Ok(FuzzyColor {
            hue: hue as u8,
            sat: sat as u8,
            int: int as u8,
        })
    }

    pub fn hue_term(self) -> usize {
        self.hue as usize
    }

    pub fn sat_term(self) -> usize {
        self.sat as usize
    }

    pub fn int_term(self) -> usize {
        self.int as usize
    }

    pub fn index(self) -> usize {
        (self.hue as usize * SATURATION_TERM_NAMES.len() + self.sat as usize)
            * INTENSITY_TERM_NAMES.len()
            + self.int as usize
    }

    pub fn from_index(index: usize) -> Result<Self> {
        if index >= COLOR_CELLS {
            return Err(Error::InvalidTerm {
                attribute: "color",
                index,
                count: COLOR_CELLS,
            });
        }
        let int = index % INTENSITY_TERM_NAMES.len();
        let rest = index / INTENSITY_TERM_NAMES.len();
        let sat = rest % SATURATION_TERM_NAMES.len();
        let hue = rest / SATURATION_TERM_NAMES.len();
        FuzzyColor::new(hue, sat, int)
    }
}

impl fmt::Display for FuzzyColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}",
            HUE_TERM_NAMES[self.hue as usize],
            SATURATION_TERM_NAMES[self.sat as usize],
            INTENSITY_TERM_NAMES[self.int as usize]
        )
    }
}

impl FromStr for FuzzyColor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter {
            name: "fuzzy color",
            reason: format!("expected Hue/Saturation/Intensity term names, got {s:?}"),
        };
        let mut parts = s.split('/');
        let hue_name = parts.next().ok_or_else(bad)?;
        let sat_name = parts.next().ok_or_else(bad)?;
        let int_name = parts.next().ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let hue = HUE_TERM_NAMES
            .iter()
            .position(|&n| n == hue_name)
            .ok_or_else(bad)?;
        let sat = SATURATION_TERM_NAMES
            .iter()
            .position(|&n| n == sat_name)
            .ok_or_else(bad)?;
        let int = INTENSITY_TERM_NAMES
            .iter()
            .position(|&n| n == int_name)
            .ok_or_else(bad)?;
        FuzzyColor::new(hue, sat, int)
    }
}

/// Weights of the three attribute gaps in the fuzzy color difference.
/// Non-negative, summing to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceWeights {
    hue: f64,
    saturation: f64,
    intensity: f64,
}

impl DifferenceWeights {
    pub fn new(hue: f64, saturation: f64, intensity: f64) -> Result<Self> {
        if hue < 0.0 || saturation < 0.0 || intensity < 0.0 {
            return Err(Error::InvalidParameter {
                name: "difference weights",
                reason: "weights must be non-negative".into(),
            });
        }
        let sum = hue + saturation + intensity;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter {
                name: "difference weights",
                reason: format!("weights must sum to 1, got {sum}"),
            });
        }
        Ok(DifferenceWeights {
            hue,
            saturation,
            intensity,
        })
    }

    pub fn hue(&self) -> f64 {
        self.hue
    }

    pub fn saturation(&self) -> f64 {
        self.saturation
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }
}

impl Default for DifferenceWeights {
    fn default() -> Self {
        DifferenceWeights {
            hue: 0.5,
            saturation: 0.25,
            intensity: 0.25,
        }
    }
}

/// The full fuzzy color space: three partitions plus precomputed
/// representative crisp colors for all 120 cells. Immutable after
/// construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct FuzzyColorSpace {
    hue: FuzzyPartition,
    saturation: FuzzyPartition,
    intensity: FuzzyPartition,
    representatives: Vec<HsiPoint>,
}

impl FuzzyColorSpace {
    /// The canonical space with the default breakpoints.
    pub fn standard() -> Self {
        let hue = FuzzyPartition::from_hue_centers(
            &HUE_TERM_NAMES,
            &DEFAULT_HUE_CENTERS,
            DEFAULT_HUE_CORE_HALFWIDTH,
        )
        .expect("default hue partition is valid");
        let saturation = FuzzyPartition::from_cores(
            Attribute::Saturation,
            &SATURATION_TERM_NAMES,
            &DEFAULT_SATURATION_CORES,
            (0.0, 100.0),
        )
        .expect("default saturation partition is valid");
        let intensity = FuzzyPartition::from_cores(
            Attribute::Intensity,
            &INTENSITY_TERM_NAMES,
            &DEFAULT_INTENSITY_CORES,
            (0.0, 255.0),
        )
        .expect("default intensity partition is valid");
        FuzzyColorSpace::from_partitions(hue, saturation, intensity)
            .expect("default partitions have the canonical term counts")
    }

    pub fn from_partitions(
        hue: FuzzyPartition,
        saturation: FuzzyPartition,
        intensity: FuzzyPartition,
    ) -> Result<Self> {
        if hue.len() != HUE_TERM_NAMES.len()
            || saturation.len() != SATURATION_TERM_NAMES.len()
            || intensity.len() != INTENSITY_TERM_NAMES.len()
        {
            return Err(Error::InvalidParameter {
                name: "partitions",
                reason: format!(
                    "expected {}x{}x{} terms, got {}x{}x{}",
                    HUE_TERM_NAMES.len(),
                    SATURATION_TERM_NAMES.len(),
                    INTENSITY_TERM_NAMES.len(),
                    hue.len(),
                    saturation.len(),
                    intensity.len()
                ),
            });
        }

        let mut representatives = Vec::with_capacity(COLOR_CELLS);
        for h in 0..hue.len() {
            for s in 0..saturation.len() {
                for i in 0..intensity.len() {
                    representatives.push(HsiPoint::new(
                        hue.representative(h),
                        saturation.representative(s),
                        intensity.representative(i),
                    ));
                }
            }
        }

        Ok(FuzzyColorSpace {
            hue,
            saturation,
            intensity,
            representatives,
        })
    }

    pub fn hue_partition(&self) -> &FuzzyPartition {
        &self.hue
    }

    pub fn saturation_partition(&self) -> &FuzzyPartition {
        &self.saturation
    }

    pub fn intensity_partition(&self) -> &FuzzyPartition {
        &self.intensity
    }

    pub fn color_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = FuzzyColor> {
        (0..COLOR_CELLS).map(|i| FuzzyColor::from_index(i).expect("index in range"))
    }

    /// Classifies a crisp point into its best-matching fuzzy color.
    ///
    /// Per attribute the argmax term wins (ties to the lower index); the
    /// degree is the product of the three attribute memberships. Points
    /// with zero saturation use the canonical hue 0.
    pub fn classify(&self, p: HsiPoint) -> (FuzzyColor, f64) {
        let hue_value = if p.saturation == 0.0 { 0.0 } else { p.hue };
        let (h, mu_h) = self.hue.argmax(hue_value);
        let (s, mu_s) = self.saturation.argmax(p.saturation);
        let (i, mu_i) = self.intensity.argmax(p.intensity);
        let color = FuzzyColor {
            hue: h as u8,
            sat: s as u8,
            int: i as u8,
        };
        (color, mu_h * mu_s * mu_i)
    }

    /// The crisp representative of a fuzzy color: first/last terms of the
    /// linear attributes snap to the domain endpoints, interior terms and
    /// hue use the rounded core midpoint. Every representative has full
    /// membership in its own cell.
    pub fn representative(&self, c: FuzzyColor) -> HsiPoint {
        self.representatives[c.index()]
    }

    /// Weighted dissimilarity of two fuzzy colors in [0, 1], computed on
    /// their representatives: hue gap over 180, saturation gap over 100,
    /// intensity gap over 255, combined by `weights`. Symmetric, zero
    /// exactly for identical representatives.
    pub fn color_difference(
        &self,
        a: FuzzyColor,
        b: FuzzyColor,
        weights: &DifferenceWeights,
    ) -> f64 {
        let ra = self.representatives[a.index()];
        let rb = self.representatives[b.index()];
        weights.hue * (hue_distance(ra.hue, rb.hue) / 180.0)
            + weights.saturation * ((ra.saturation - rb.saturation).abs() / 100.0)
            + weights.intensity * ((ra.intensity - rb.intensity).abs() / 255.0)
    }
}

impl Default for FuzzyColorSpace {
    fn default() -> Self {
        FuzzyColorSpace::standard()
    }
}
