//! Generates the committed test fixtures: the 50-image mini corpus plus
//! a couple of single-purpose files. Deterministic; rerunning produces
//! identical bytes.
//!
//!   cargo run -p fhsi-cli --example gen_fixtures
//!
//! The corpus is six families of striped images. Each family shares a
//! palette (with one-column stripe jitter per image) chosen so that
//! grouping at threshold 0.2 recovers the families exactly and the
//! dominant groups carry the intended harmony labels. The generator
//! asserts all of that before writing anything.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use fhsi::harmony::{classify_harmonies, wheel_profile};
use fhsi::{
    cluster_corpus, dominant_groups, hsi_to_rgb, rgb_to_hsi, ClusterParams, DifferenceParams,
    FuzzyColorSpace, FuzzyPalette, HarmonyLabel, HsiPoint, PaletteMetric, PixelAssignment, Raster,
    RgbPixel,
};

const SIZE: u32 = 128;

struct Family {
    prefix: &'static str,
    count: usize,
    /// (hue, saturation, intensity) of each stripe color.
    stripes: Vec<(f64, f64, f64)>,
    weights: Vec<f64>,
    /// Expected cell per stripe as (hue, sat, int) term indices.
    cells: Vec<(usize, usize, usize)>,
    label: HarmonyLabel,
}

fn families() -> Vec<Family> {
    vec![
        Family {
            prefix: "a",
            count: 14,
            stripes: vec![(0.0, 50.0, 128.0), (30.0, 50.0, 128.0), (60.0, 50.0, 128.0)],
            weights: vec![0.40, 0.35, 0.25],
            cells: vec![(0, 1, 2), (1, 1, 2), (2, 1, 2)],
            label: HarmonyLabel::Analogous,
        },
        Family {
            prefix: "b",
            count: 11,
            stripes: vec![(60.0, 95.0, 64.0), (240.0, 95.0, 64.0)],
            weights: vec![0.60, 0.40],
            cells: vec![(2, 2, 1), (5, 2, 1)],
            label: HarmonyLabel::Complementary,
        },
        Family {
            prefix: "c",
            count: 9,
            stripes: vec![(320.0, 95.0, 64.0), (0.0, 95.0, 64.0), (30.0, 95.0, 64.0)],
            weights: vec![0.45, 0.35, 0.20],
            cells: vec![(7, 2, 1), (0, 2, 1), (1, 2, 1)],
            label: HarmonyLabel::Analogous,
        },
        Family {
            prefix: "d",
            count: 7,
            stripes: vec![
                (240.0, 95.0, 64.0),
                (240.0, 50.0, 128.0),
                (240.0, 12.0, 192.0),
            ],
            weights: vec![0.40, 0.35, 0.25],
            cells: vec![(5, 2, 1), (5, 1, 2), (5, 0, 3)],
            label: HarmonyLabel::Monochromatic,
        },
        Family {
            prefix: "e",
            count: 5,
            stripes: vec![(0.0, 0.0, 20.0), (0.0, 0.0, 128.0), (0.0, 0.0, 200.0)],
            weights: vec![0.34, 0.33, 0.33],
            cells: vec![(0, 0, 0), (0, 0, 2), (0, 0, 3)],
            label: HarmonyLabel::Other,
        },
        Family {
            prefix: "f",
            count: 4,
            stripes: vec![
                (60.0, 50.0, 192.0),
                (180.0, 50.0, 192.0),
                (300.0, 50.0, 192.0),
            ],
            weights: vec![0.40, 0.30, 0.30],
            cells: vec![(2, 1, 3), (4, 1, 3), (6, 1, 3)],
            label: HarmonyLabel::Other,
        },
    ]
}

/// Stripe boundaries in columns, with a deterministic one-column jitter
/// per image so family members differ slightly.
fn stripe_bounds(weights: &[f64], image_idx: usize) -> Vec<u32> {
    let mut bounds = Vec::with_capacity(weights.len() + 1);
    bounds.push(0u32);
    let mut cum = 0.0;
    for (i, w) in weights[..weights.len() - 1].iter().enumerate() {
        cum += w;
        let jitter = ((image_idx + i) % 3) as i64 - 1;
        let col = ((cum * SIZE as f64).round() as i64 + jitter).clamp(1, SIZE as i64 - 1);
        bounds.push(col as u32);
    }
    bounds.push(SIZE);
    for pair in bounds.windows(2) {
        assert!(pair[0] < pair[1], "stripe collapsed: {bounds:?}");
    }
    bounds
}

fn family_image(family: &Family, image_idx: usize) -> Raster {
    let colors: Vec<RgbPixel> = family
        .stripes
        .iter()
        .map(|&(h, s, i)| hsi_to_rgb(HsiPoint::new(h, s, i)))
        .collect();
    let bounds = stripe_bounds(&family.weights, image_idx);
    Raster::from_fn(SIZE, SIZE, |x, _| {
        let stripe = bounds
            .windows(2)
            .position(|b| x >= b[0] && x < b[1])
            .unwrap();
        colors[stripe]
    })
}

fn save_png(raster: &Raster, path: &Path) {
    let mut img = image::RgbImage::new(raster.width(), raster.height());
    for (i, px) in raster.pixels().iter().enumerate() {
        let x = (i as u32) % raster.width();
        let y = (i as u32) / raster.width();
        img.put_pixel(x, y, image::Rgb([px.r, px.g, px.b]));
    }
    img.save(path).expect("write png");
}

fn main() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let corpus_dir = root.join("mini_corpus");
    fs::create_dir_all(&corpus_dir).expect("create fixture dir");

    let space = FuzzyColorSpace::standard();
    let families = families();

    // Construction check 1: each stripe color classifies into its cell.
    for family in &families {
        for (&(h, s, i), &(eh, es, ei)) in family.stripes.iter().zip(&family.cells) {
            let rgb = hsi_to_rgb(HsiPoint::new(h, s, i));
            let (cell, _) = space.classify(rgb_to_hsi(rgb));
            assert_eq!(
                (cell.hue_term(), cell.sat_term(), cell.int_term()),
                (eh, es, ei),
                "family {}: stripe ({h}, {s}, {i}) -> {cell}",
                family.prefix
            );
        }
    }

    // Generate, extract, and collect palettes per family.
    let metric = PaletteMetric::new(&space, DifferenceParams::default());
    let mut all_palettes: Vec<FuzzyPalette> = Vec::new();
    let mut family_base: Vec<FuzzyPalette> = Vec::new();
    for family in &families {
        for idx in 0..family.count {
            let name = format!("{}{idx:02}.png", family.prefix);
            let raster = family_image(family, idx);
            save_png(&raster, &corpus_dir.join(&name));
            let palette =
                fhsi::extract_fuzzy_palette(&raster, &space, 8, PixelAssignment::Hard, name)
                    .expect("extract");
            if idx == 0 {
                family_base.push(palette.clone());
            }
            all_palettes.push(palette);
        }
    }

    // Construction check 2: families are tight inside, separated outside.
    let mut offset = 0usize;
    for (fi, family) in families.iter().enumerate() {
        for idx in 0..family.count {
            let dp = metric.difference(&all_palettes[offset + idx], &family_base[fi]);
            assert!(
                dp < 0.05,
                "family {} image {idx}: intra dp {dp}",
                family.prefix
            );
        }
        offset += family.count;
    }
    for i in 0..family_base.len() {
        for j in (i + 1)..family_base.len() {
            let dp = metric.difference(&family_base[i], &family_base[j]);
            assert!(
                dp > 0.21,
                "families {} and {} too close: dp {dp}",
                families[i].prefix,
                families[j].prefix
            );
        }
    }

    // Construction check 3: clustering at 0.2 recovers the families in
    // file order, and the dominant groups carry the intended labels.
    let params = ClusterParams::new(0.2, DifferenceParams::default()).unwrap();
    let result = cluster_corpus(all_palettes, &space, &params).expect("cluster");
    let sizes: Vec<usize> = result.groups.iter().map(|g| g.members.len()).collect();
    assert_eq!(
        sizes,
        vec![14, 11, 9, 7, 5, 4],
        "unexpected grouping {sizes:?}"
    );
    for (group, family) in result.groups.iter().zip(&families) {
        for member in &group.members {
            assert!(
                member.source_id().starts_with(family.prefix),
                "group {} contains {}",
                group.id,
                member.source_id()
            );
        }
        let labels = classify_harmonies(
            &wheel_profile(&group.prototype, &space, &Default::default()),
            &Default::default(),
        );
        assert!(
            labels.contains(&family.label),
            "family {} labeled {labels:?}, wanted {}",
            family.prefix,
            family.label
        );
        if family.label == HarmonyLabel::Other {
            assert_eq!(labels, BTreeSet::from([HarmonyLabel::Other]));
        }
    }
    let dominant: Vec<usize> = dominant_groups(&result).iter().map(|g| g.id).collect();
    assert_eq!(dominant, vec![0, 1, 2], "dominant groups changed");

    // Standalone fixtures for CLI tests.
    let solid = Raster::from_fn(32, 32, |_, _| RgbPixel::new(255, 0, 0));
    save_png(&solid, &root.join("solid_red.png"));
    fs::write(root.join("corrupt.png"), b"not a png at all").expect("write corrupt fixture");

    println!("fixtures written to {}", root.display());
}
