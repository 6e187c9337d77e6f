//! Domain-level summaries and file outputs: the key/value report, the
//! harmony distribution table and chart, and palette swatch strips.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use crate::color::hsi_to_rgb;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyColor, FuzzyColorSpace};
use crate::grouping::PaletteGroup;
use crate::harmony::{HarmonyDistribution, HarmonyLabel};
use crate::palette::FuzzyPalette;

/// How many top fuzzy colors a report keeps.
const TOP_COLORS: usize = 8;

/// Per-domain summary over the dominant palette groups.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainReport {
    pub domain_name: String,
    pub dominant_palette_count: usize,
    pub dominant_harmony: HarmonyLabel,
    pub unrecognized_pct: f64,
    /// Proportion-weighted mean of representative intensities over the
    /// dominant prototypes, normalized to [0, 1].
    pub mean_intensity: f64,
    /// Same for saturation.
    pub mean_saturation: f64,
    /// Most frequent fuzzy colors across prototypes, weighted by
    /// proportion, descending.
    pub top_fuzzy_colors: Vec<(FuzzyColor, f64)>,
}

/// Summarizes dominant groups and their label sets into a report row.
///
/// `labels` aligns one-to-one with `dominant`. Groups appearing more
/// than once (same id) are counted once.
pub fn summarize(
    domain_name: &str,
    dominant: &[&PaletteGroup],
    labels: &[BTreeSet<HarmonyLabel>],
    space: &FuzzyColorSpace,
) -> Result<DomainReport> {
    if dominant.is_empty() {
        return Err(Error::InvalidParameter {
            name: "dominant groups",
            reason: "cannot summarize an empty dominant list".into(),
        });
    }
    if dominant.len() != labels.len() {
        return Err(Error::InvalidParameter {
            name: "labels",
            reason: format!(
                "expected {} label sets, got {}",
                dominant.len(),
                labels.len()
            ),
        });
    }

    let mut seen = BTreeSet::new();
    let mut groups: Vec<(&PaletteGroup, &BTreeSet<HarmonyLabel>)> = Vec::new();
    for (g, l) in dominant.iter().zip(labels) {
        if seen.insert(g.id) {
            groups.push((g, l));
        }
    }

    // Most frequent non-Other label; ties resolve to the listing order.
    let mut label_counts = [0u64; HarmonyLabel::ALL.len()];
    let mut only_other = 0usize;
    for (_, set) in &groups {
        for &label in set.iter() {
            let idx = HarmonyLabel::ALL.iter().position(|&l| l == label).unwrap();
            label_counts[idx] += 1;
        }
        if set.iter().all(|&l| l == HarmonyLabel::Other) {
            only_other += 1;
        }
    }
    let count_of = |label: HarmonyLabel| {
        label_counts[HarmonyLabel::ALL.iter().position(|&l| l == label).unwrap()]
    };
    let best_count = HarmonyLabel::ALL
        .into_iter()
        .filter(|&l| l != HarmonyLabel::Other)
        .map(count_of)
        .max()
        .unwrap_or(0);
    let dominant_harmony = if best_count == 0 {
        HarmonyLabel::Other
    } else {
        // First label in listing order wins ties.
        HarmonyLabel::ALL
            .into_iter()
            .filter(|&l| l != HarmonyLabel::Other)
            .find(|&l| count_of(l) == best_count)
            .expect("best_count > 0 implies a matching label")
    };

    let unrecognized_pct = 100.0 * only_other as f64 / groups.len() as f64;

    let mut intensity_sum = 0.0f64;
    let mut saturation_sum = 0.0f64;
    let mut weight_sum = 0.0f64;
    let mut color_freq: Vec<f64> = vec![0.0; crate::fuzzy::COLOR_CELLS];
    for (g, _) in &groups {
        for entry in g.prototype.entries() {
            let rep = space.representative(entry.color);
            intensity_sum += entry.weight * rep.intensity;
            saturation_sum += entry.weight * rep.saturation;
            weight_sum += entry.weight;
            color_freq[entry.color.index()] += entry.weight;
        }
    }
    let mean_intensity = intensity_sum / weight_sum / 255.0;
    let mean_saturation = saturation_sum / weight_sum / 100.0;

    let mut ranked: Vec<(usize, f64)> = color_freq
        .iter()
        .enumerate()
        .filter(|(_, &f)| f > 0.0)
        .map(|(i, &f)| (i, f))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    ranked.truncate(TOP_COLORS);
    let top_fuzzy_colors = ranked
        .into_iter()
        .map(|(i, f)| (FuzzyColor::from_index(i).expect("in range"), f))
        .collect();

    Ok(DomainReport {
        domain_name: domain_name.to_string(),
        dominant_palette_count: groups.len(),
        dominant_harmony,
        unrecognized_pct,
        mean_intensity,
        mean_saturation,
        top_fuzzy_colors,
    })
}

// --- report text format ---------------------------------------------------

/// Renders the report in the line-oriented key/value format. Config
/// echo lines (`config.<key> <value>`) go into the header for
/// provenance; floats print losslessly.
pub fn render_report(report: &DomainReport, config_echo: &[(String, String)]) -> String {
    let mut out = String::new();
    out.push_str("fhsi report 1\n");
    let _ = writeln!(out, "domain {}", report.domain_name);
    for (key, value) in config_echo {
        let _ = writeln!(out, "config.{key} {value}");
    }
    let _ = writeln!(
        out,
        "dominant_palette_count {}",
        report.dominant_palette_count
    );
    let _ = writeln!(out, "dominant_harmony {}", report.dominant_harmony);
    let _ = writeln!(out, "unrecognized_pct {}", report.unrecognized_pct);
    let _ = writeln!(out, "mean_intensity {}", report.mean_intensity);
    let _ = writeln!(out, "mean_saturation {}", report.mean_saturation);
    for (color, freq) in &report.top_fuzzy_colors {
        let _ = writeln!(out, "top_color {color} {freq}");
    }
    out
}

/// Parses a rendered report back; config echo lines are skipped.
pub fn parse_report(reader: impl BufRead) -> Result<DomainReport> {
    let mut domain_name: Option<String> = None;
    let mut dominant_palette_count: Option<usize> = None;
    let mut dominant_harmony: Option<HarmonyLabel> = None;
    let mut unrecognized_pct: Option<f64> = None;
    let mut mean_intensity: Option<f64> = None;
    let mut mean_saturation: Option<f64> = None;
    let mut top_fuzzy_colors: Vec<(FuzzyColor, f64)> = Vec::new();

    let fail = |line: usize, message: String| Error::Report { line, message };

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| fail(line_no, e.to_string()))?;
        if line_no == 1 {
            if line != "fhsi report 1" {
                return Err(fail(line_no, format!("unrecognized header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() || line.starts_with("config.") {
            continue;
        }
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| fail(line_no, format!("expected 'key value', got {line:?}")))?;
        match key {
            "domain" => domain_name = Some(value.to_string()),
            "dominant_palette_count" => {
                dominant_palette_count = Some(
                    value
                        .parse()
                        .map_err(|_| fail(line_no, format!("bad count {value:?}")))?,
                )
            }
            "dominant_harmony" => {
                dominant_harmony = Some(
                    value
                        .parse()
                        .map_err(|_| fail(line_no, format!("bad label {value:?}")))?,
                )
            }
            "unrecognized_pct" => {
                unrecognized_pct = Some(
                    value
                        .parse()
                        .map_err(|_| fail(line_no, format!("bad percent {value:?}")))?,
                )
            }
            "mean_intensity" => {
                mean_intensity = Some(
                    value
                        .parse()
                        .map_err(|_| fail(line_no, format!("bad mean {value:?}")))?,
                )
            }
            "mean_saturation" => {
                mean_saturation = Some(
                    value
                        .parse()
                        .map_err(|_| fail(line_no, format!("bad mean {value:?}")))?,
                )
            }
            "top_color" => {
                let (name, freq) = value
                    .split_once(' ')
                    .ok_or_else(|| fail(line_no, format!("bad top_color line {line:?}")))?;
                let color: FuzzyColor = name
                    .parse()
                    .map_err(|_| fail(line_no, format!("unknown fuzzy color {name:?}")))?;
                let freq: f64 = freq
                    .parse()
                    .map_err(|_| fail(line_no, format!("bad frequency {freq:?}")))?;
                top_fuzzy_colors.push((color, freq));
            }
            other => return Err(fail(line_no, format!("unknown key {other:?}"))),
        }
    }

    let missing = |what: &str| fail(0, format!("missing {what}"));
    Ok(DomainReport {
        domain_name: domain_name.ok_or_else(|| missing("domain"))?,
        dominant_palette_count: dominant_palette_count
            .ok_or_else(|| missing("dominant_palette_count"))?,
        dominant_harmony: dominant_harmony.ok_or_else(|| missing("dominant_harmony"))?,
        unrecognized_pct: unrecognized_pct.ok_or_else(|| missing("unrecognized_pct"))?,
        mean_intensity: mean_intensity.ok_or_else(|| missing("mean_intensity"))?,
        mean_saturation: mean_saturation.ok_or_else(|| missing("mean_saturation"))?,
        top_fuzzy_colors,
    })
}

// --- tabular and SVG outputs ----------------------------------------------

/// `label,count` CSV over all eight labels in listing order.
pub fn render_distribution_csv(dist: &HarmonyDistribution) -> String {
    let mut out = String::from("label,count\n");
    for (label, count) in dist.iter() {
        let _ = writeln!(out, "{label},{count}");
    }
    out
}

const CHART_WIDTH: f64 = 640.0;
const CHART_HEIGHT: f64 = 360.0;
const CHART_MARGIN: f64 = 40.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Bar chart of the harmony distribution. All eight category bars are
/// always rendered; an all-zero distribution yields zero-height bars.
pub fn render_distribution_svg(dist: &HarmonyDistribution, title: &str) -> String {
    let n = HarmonyLabel::ALL.len() as f64;
    let plot_w = CHART_WIDTH - 2.0 * CHART_MARGIN;
    let plot_h = CHART_HEIGHT - 2.0 * CHART_MARGIN;
    let max_count = dist.iter().map(|(_, c)| c).max().unwrap_or(0).max(1) as f64;
    let slot = plot_w / n;
    let bar_w = slot * 0.7;

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CHART_WIDTH}" height="{CHART_HEIGHT}" viewBox="0 0 {CHART_WIDTH} {CHART_HEIGHT}">"#
    );
    let _ = write!(
        svg,
        r#"<rect width="{CHART_WIDTH}" height="{CHART_HEIGHT}" fill="white"/>"#
    );
    let _ = write!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        CHART_WIDTH / 2.0,
        xml_escape(title)
    );
    let base_y = CHART_HEIGHT - CHART_MARGIN;
    let _ = write!(
        svg,
        r#"<line x1="{CHART_MARGIN}" y1="{base_y}" x2="{}" y2="{base_y}" stroke="black"/>"#,
        CHART_WIDTH - CHART_MARGIN
    );

    for (i, (label, count)) in dist.iter().enumerate() {
        let height = plot_h * count as f64 / max_count;
        let x = CHART_MARGIN + i as f64 * slot + (slot - bar_w) / 2.0;
        let y = base_y - height;
        let _ = write!(
            svg,
            r##"<rect x="{x:.2}" y="{y:.2}" width="{bar_w:.2}" height="{height:.2}" fill="#4878a8"/>"##
        );
        let _ = write!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="10">{count}</text>"#,
            x + bar_w / 2.0,
            y - 4.0
        );
        let _ = write!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="9" transform="rotate(-35 {:.2} {:.2})">{}</text>"#,
            x + bar_w / 2.0,
            base_y + 12.0,
            x + bar_w / 2.0,
            base_y + 12.0,
            xml_escape(label.name())
        );
    }
    svg.push_str("</svg>");
    svg
}

const SWATCH_WIDTH: f64 = 480.0;
const SWATCH_HEIGHT: f64 = 60.0;

/// Swatch strip of a palette: one rectangle per entry, widths
/// proportional to weights, filled with the representative color.
pub fn render_palette_svg(palette: &FuzzyPalette, space: &FuzzyColorSpace) -> String {
    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SWATCH_WIDTH}" height="{SWATCH_HEIGHT}" viewBox="0 0 {SWATCH_WIDTH} {SWATCH_HEIGHT}">"#
    );
    let total: f64 = palette.entries().iter().map(|e| e.weight).sum();
    let mut x = 0.0f64;
    for entry in palette.entries() {
        let w = SWATCH_WIDTH * entry.weight / total;
        let rgb = hsi_to_rgb(space.representative(entry.color));
        let _ = write!(
            svg,
            r##"<rect x="{x:.4}" y="0" width="{w:.4}" height="{SWATCH_HEIGHT}" fill="#{:02x}{:02x}{:02x}"><title>{} {:.3}</title></rect>"##,
            rgb.r, rgb.g, rgb.b, entry.color, entry.weight
        );
        x += w;
    }
    svg.push_str("</svg>");
    svg
}

/// Files written by [`emit_report`].
#[derive(Debug, Clone)]
pub struct EmittedFiles {
    pub report: PathBuf,
    pub distribution_csv: PathBuf,
    pub distribution_svg: PathBuf,
    pub palette_svgs: Vec<PathBuf>,
}

/// Writes the report, the distribution table and chart, and one swatch
/// strip per dominant palette into `out_dir` (created if needed).
pub fn emit_report(
    report: &DomainReport,
    config_echo: &[(String, String)],
    dist: &HarmonyDistribution,
    dominant: &[&PaletteGroup],
    space: &FuzzyColorSpace,
    out_dir: &Path,
) -> Result<EmittedFiles> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let write = |name: &str, contents: &str| -> Result<PathBuf> {
        let path = out_dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    };

    let report_path = write("report.txt", &render_report(report, config_echo))?;
    let csv_path = write("distribution.csv", &render_distribution_csv(dist))?;
    let title = format!("Harmony distribution: {}", report.domain_name);
    let svg_path = write("distribution.svg", &render_distribution_svg(dist, &title))?;

    let mut palette_svgs = Vec::with_capacity(dominant.len());
    for group in dominant {
        let name = format!("palette_{}.svg", group.id);
        palette_svgs.push(write(&name, &render_palette_svg(&group.prototype, space))?);
    }

    Ok(EmittedFiles {
        report: report_path,
        distribution_csv: csv_path,
        distribution_svg: svg_path,
        palette_svgs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmony::harmony_distribution;
    use crate::palette::FuzzyPalette;

    fn space() -> FuzzyColorSpace {
        FuzzyColorSpace::standard()
    }

    fn group(id: usize, masses: &[(usize, usize, usize, f64)]) -> PaletteGroup {
        let palette = FuzzyPalette::from_masses(
            masses
                .iter()
                .map(|&(h, s, i, m)| (FuzzyColor::new(h, s, i).unwrap(), m)),
            8,
            format!("proto{id}"),
        )
        .unwrap();
        PaletteGroup {
            id,
            prototype: palette.clone(),
            members: vec![palette],
        }
    }

    fn set(labels: &[HarmonyLabel]) -> BTreeSet<HarmonyLabel> {
        labels.iter().copied().collect()
    }

    // A simple well-formedness check: tags balance and attributes are
    // quoted. Good enough to catch malformed output without an XML dep.
    fn assert_well_formed_xml(s: &str) {
        let mut stack: Vec<String> = Vec::new();
        let mut rest = s;
        while let Some(start) = rest.find('<') {
            let end = rest[start..].find('>').expect("unclosed tag") + start;
            let tag = &rest[start + 1..end];
            rest = &rest[end + 1..];
            if let Some(name) = tag.strip_prefix('/') {
                let open = stack.pop().unwrap_or_else(|| panic!("stray closer {name}"));
                assert_eq!(open, name, "mismatched tag");
            } else if !tag.ends_with('/') && !tag.starts_with('?') && !tag.starts_with('!') {
                let name = tag.split_whitespace().next().unwrap().to_string();
                stack.push(name);
            }
            // Attribute quoting: an even number of quotes per tag.
            assert_eq!(
                tag.matches('"').count() % 2,
                0,
                "unbalanced quotes in {tag}"
            );
        }
        assert!(stack.is_empty(), "unclosed tags: {stack:?}");
        assert!(!rest.contains('>'), "stray closing bracket");
    }

    #[test]
    fn mean_intensity_of_medium_prototype() {
        let s = space();
        let g = group(0, &[(0, 2, 2, 0.6), (4, 2, 2, 0.4)]);
        let report = summarize("d", &[&g], &[set(&[HarmonyLabel::Complementary])], &s).unwrap();
        assert!((report.mean_intensity - 128.0 / 255.0).abs() < 1e-12);
        assert!((report.mean_saturation - 1.0).abs() < 1e-12);
        assert_eq!(report.dominant_palette_count, 1);
    }

    #[test]
    fn dominant_harmony_and_unrecognized() {
        let s = space();
        let groups = [
            group(0, &[(0, 2, 2, 1.0)]),
            group(1, &[(1, 2, 2, 1.0)]),
            group(2, &[(2, 2, 2, 1.0)]),
        ];
        let refs: Vec<&PaletteGroup> = groups.iter().collect();
        let labels = vec![
            set(&[HarmonyLabel::Analogous]),
            set(&[HarmonyLabel::Analogous]),
            set(&[HarmonyLabel::Other]),
        ];
        let report = summarize("d", &refs, &labels, &s).unwrap();
        assert_eq!(report.dominant_harmony, HarmonyLabel::Analogous);
        assert!((report.unrecognized_pct - 100.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn dominant_harmony_tie_breaks_to_listing_order() {
        let s = space();
        let groups = [group(0, &[(0, 2, 2, 1.0)]), group(1, &[(1, 2, 2, 1.0)])];
        let refs: Vec<&PaletteGroup> = groups.iter().collect();
        let labels = vec![
            set(&[HarmonyLabel::Analogous]),
            set(&[HarmonyLabel::Complementary]),
        ];
        let report = summarize("d", &refs, &labels, &s).unwrap();
        assert_eq!(report.dominant_harmony, HarmonyLabel::Complementary);
    }

    #[test]
    fn duplicated_group_does_not_skew_means() {
        let s = space();
        let g0 = group(0, &[(0, 2, 1, 1.0)]);
        let g1 = group(1, &[(4, 1, 3, 1.0)]);
        let labels2 = vec![set(&[HarmonyLabel::Other]), set(&[HarmonyLabel::Other])];
        let labels3 = vec![
            set(&[HarmonyLabel::Other]),
            set(&[HarmonyLabel::Other]),
            set(&[HarmonyLabel::Other]),
        ];
        let once = summarize("d", &[&g0, &g1], &labels2, &s).unwrap();
        let duplicated = summarize("d", &[&g0, &g1, &g0], &labels3, &s).unwrap();
        assert_eq!(once.mean_intensity, duplicated.mean_intensity);
        assert_eq!(once.mean_saturation, duplicated.mean_saturation);
        assert_eq!(
            once.dominant_palette_count,
            duplicated.dominant_palette_count
        );
    }

    #[test]
    fn empty_dominant_list_is_an_error() {
        let s = space();
        assert!(summarize("d", &[], &[], &s).is_err());
    }

    #[test]
    fn all_other_labels_fall_back_to_other() {
        let s = space();
        let g = group(0, &[(0, 2, 2, 1.0)]);
        let report = summarize("d", &[&g], &[set(&[HarmonyLabel::Other])], &s).unwrap();
        assert_eq!(report.dominant_harmony, HarmonyLabel::Other);
        assert_eq!(report.unrecognized_pct, 100.0);
    }

    #[test]
    fn report_round_trip() {
        let s = space();
        let g = group(0, &[(0, 2, 2, 0.75), (4, 1, 1, 0.25)]);
        let report = summarize(
            "mixed domain name",
            &[&g],
            &[set(&[HarmonyLabel::Analogous, HarmonyLabel::Triad])],
            &s,
        )
        .unwrap();
        let echo = vec![("k".to_string(), "8".to_string())];
        let text = render_report(&report, &echo);
        let parsed = parse_report(text.as_bytes()).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn report_schema_has_table_columns() {
        let s = space();
        let g = group(0, &[(0, 2, 2, 1.0)]);
        let report = summarize("fashion", &[&g], &[set(&[HarmonyLabel::Analogous])], &s).unwrap();
        let text = render_report(&report, &[]);
        for key in [
            "dominant_palette_count",
            "dominant_harmony",
            "unrecognized_pct",
            "mean_intensity",
            "mean_saturation",
            "top_color",
        ] {
            assert!(text.contains(key), "missing {key} in:\n{text}");
        }
    }

    #[test]
    fn empty_distribution_renders_valid_svg() {
        let dist = harmony_distribution(&[]);
        let svg = render_distribution_svg(&dist, "empty");
        assert_well_formed_xml(&svg);
        // All eight bars present, zero height.
        assert_eq!(svg.matches("<rect").count(), 1 + 8);
        assert_eq!(svg.matches(r#"height="0.00""#).count(), 8);
    }

    #[test]
    fn distribution_svg_renders_all_categories() {
        let sets = vec![
            set(&[HarmonyLabel::Analogous]),
            set(&[HarmonyLabel::Analogous, HarmonyLabel::Triad]),
            set(&[HarmonyLabel::Other]),
        ];
        let svg = render_distribution_svg(&harmony_distribution(&sets), "three");
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<rect").count(), 1 + 8);
        for label in HarmonyLabel::ALL {
            assert!(svg.contains(label.name()), "missing {label}");
        }
    }

    #[test]
    fn swatch_widths_are_proportional() {
        let s = space();
        let palette = FuzzyPalette::from_masses(
            [
                (FuzzyColor::new(0, 2, 2).unwrap(), 0.75),
                (FuzzyColor::new(4, 2, 2).unwrap(), 0.25),
            ],
            8,
            "p",
        )
        .unwrap();
        let svg = render_palette_svg(&palette, &s);
        assert_well_formed_xml(&svg);
        assert!(svg.contains(r#"width="360.0000""#), "{svg}");
        assert!(svg.contains(r#"width="120.0000""#), "{svg}");
    }

    #[test]
    fn csv_lists_all_labels() {
        let dist = harmony_distribution(&[set(&[HarmonyLabel::Complementary])]);
        let csv = render_distribution_csv(&dist);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "label,count");
        assert_eq!(lines[2], "Complementary,1");
        assert_eq!(lines[8], "Other,0");
    }

    #[test]
    fn emit_writes_all_files() {
        let s = space();
        let g = group(3, &[(0, 2, 2, 1.0)]);
        let report = summarize("emit", &[&g], &[set(&[HarmonyLabel::Monochromatic])], &s).unwrap();
        let dist = harmony_distribution(&[set(&[HarmonyLabel::Monochromatic])]);
        let dir = std::env::temp_dir().join(format!("fhsi-report-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let files = emit_report(&report, &[], &dist, &[&g], &s, &dir).unwrap();
        assert!(files.report.exists());
        assert!(files.distribution_csv.exists());
        assert!(files.distribution_svg.exists());
        assert_eq!(files.palette_svgs.len(), 1);
        assert!(files.palette_svgs[0].ends_with("palette_3.svg"));
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn unwritable_path_reports_the_path() {
        let s = space();
        let g = group(0, &[(0, 2, 2, 1.0)]);
        let report = summarize("emit", &[&g], &[set(&[HarmonyLabel::Monochromatic])], &s).unwrap();
        let dist = harmony_distribution(&[]);
        let bogus = Path::new("/proc/fhsi-definitely-unwritable/out");
        let err = emit_report(&report, &[], &dist, &[&g], &s, bogus).unwrap_err();
        assert!(err.to_string().contains("fhsi-definitely-unwritable"));
    }
}
