//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured numbers (visible with --nocapture).

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use fhsi::harmony::{classify_harmonies, wheel_profile_from_points, WHEEL_SECTORS};
use fhsi::{
    cluster_corpus, ClusterParams, DifferenceParams, FuzzyColor, FuzzyColorSpace, FuzzyPalette,
    HarmonyLabel, HarmonyRules, HsiPoint, PaletteMetric, PixelAssignment, Raster, RgbPixel,
    WheelOptions, COLOR_CELLS,
};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fhsi-acceptance-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Criterion 1: the three default partitions sum to 1 within 1e-9 on a
/// 10,000-point uniform sweep, in under a second.
#[test]
fn criterion_1_ruspini_partitions() {
    let start = Instant::now();
    let space = FuzzyColorSpace::standard();
    let mut worst = 0.0f64;
    for partition in [
        space.hue_partition(),
        space.saturation_partition(),
        space.intensity_partition(),
    ] {
        worst = worst.max(partition.max_ruspini_deviation(10_000));
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-9, "worst deviation {worst}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1 PASS: Ruspini sweeps, worst deviation {worst:.2e} in {:.3}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: the fuzzy color difference is symmetric over all 120^2
/// pairs and satisfies the triangle inequality over all 120^3 triples
/// (1e-12 float slack), in under 30 seconds.
#[test]
fn criterion_2_color_pseudometric() {
    let start = Instant::now();
    let space = FuzzyColorSpace::standard();
    let weights = Default::default();
    let n = COLOR_CELLS;

    let mut d = vec![0.0f64; n * n];
    for i in 0..n {
        let ci = FuzzyColor::from_index(i).unwrap();
        for j in 0..n {
            let cj = FuzzyColor::from_index(j).unwrap();
            d[i * n + j] = space.color_difference(ci, cj, &weights);
        }
    }

    for i in 0..n {
        assert_eq!(d[i * n + i], 0.0, "nonzero diagonal at {i}");
        for j in 0..n {
            assert_eq!(d[i * n + j], d[j * n + i], "asymmetry at ({i}, {j})");
        }
    }

    let mut checks = 0u64;
    for i in 0..n {
        for j in 0..n {
            let dij = d[i * n + j];
            for k in 0..n {
                assert!(
                    dij <= d[i * n + k] + d[k * n + j] + 1e-12,
                    "triangle violated at ({i}, {j}, {k})"
                );
                checks += 1;
            }
        }
    }

    let elapsed = start.elapsed();
    assert_eq!(checks, (n * n * n) as u64);
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 2 PASS: symmetry over {} pairs, triangle over {checks} triples in {:.2}s",
        n * n,
        elapsed.as_secs_f64()
    );
}

/// Criterion 3: on 200 random 8-entry palette pairs the matched Dp
/// equals the brute-force minimum over all 8! permutations, bit-exact,
/// in under 60 seconds.
#[test]
fn criterion_3_matching_against_permutation_oracle() {
    const GRID: f64 = (1u64 << 26) as f64;

    let start = Instant::now();
    let space = FuzzyColorSpace::standard();
    let params = DifferenceParams::default();
    let metric = PaletteMetric::new(&space, params);
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // Oracle cost matrix straight from the documented per-pair formula.
    let cost_matrix = |a: &FuzzyPalette, b: &FuzzyPalette| -> Vec<i64> {
        let mut m = vec![0i64; 64];
        for i in 0..8 {
            for j in 0..8 {
                let x = &a.entries()[i];
                let y = &b.entries()[j];
                let cost = space.color_difference(x.color, y.color, &params.weights)
                    + params.lambda * (x.weight - y.weight).abs();
                m[i * 8 + j] = (cost.min(1.0) * GRID).round() as i64;
            }
        }
        m
    };

    let random_palette = |rng: &mut StdRng, id: &str| -> FuzzyPalette {
        // Eight distinct cells so the palette keeps exactly 8 entries.
        let mut picked = BTreeSet::new();
        while picked.len() < 8 {
            picked.insert(rng.random_range(0..COLOR_CELLS));
        }
        FuzzyPalette::from_masses(
            picked.into_iter().map(|i| {
                (
                    FuzzyColor::from_index(i).unwrap(),
                    rng.random_range(0.05f64..3.0),
                )
            }),
            8,
            id,
        )
        .unwrap()
    };

    for round in 0..200 {
        let a = random_palette(&mut rng, "a");
        let b = random_palette(&mut rng, "b");
        let fast = metric.difference(&a, &b);

        let costs = cost_matrix(&a, &b);
        let mut perm: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
        let mut best = i64::MAX;
        // Heap's algorithm over all 40,320 permutations.
        let mut stack = [0usize; 8];
        let total = |p: &[usize; 8]| -> i64 { (0..8).map(|i| costs[i * 8 + p[i]]).sum() };
        best = best.min(total(&perm));
        let mut i = 1usize;
        while i < 8 {
            if stack[i] < i {
                if i.is_multiple_of(2) {
                    perm.swap(0, i);
                } else {
                    perm.swap(stack[i], i);
                }
                best = best.min(total(&perm));
                stack[i] += 1;
                i = 1;
            } else {
                stack[i] = 0;
                i += 1;
            }
        }

        let slow = best as f64 / (GRID * 8.0);
        assert_eq!(
            fast.to_bits(),
            slow.to_bits(),
            "round {round}: matcher {fast} vs oracle {slow}"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 3 PASS: 200 pairs bit-exact against 8! enumeration in {:.2}s",
        elapsed.as_secs_f64()
    );
}

fn jittered_points(rng: &mut StdRng, sectors: &[usize], rotation: usize) -> Vec<(HsiPoint, f64)> {
    sectors
        .iter()
        .map(|&s| {
            let hue =
                30.0 * ((rotation + s) % WHEEL_SECTORS) as f64 + rng.random_range(-10.0..=10.0);
            (
                HsiPoint::new(
                    hue,
                    rng.random_range(40.0f64..100.0),
                    rng.random_range(60.0f64..200.0),
                ),
                rng.random_range(0.1f64..1.0),
            )
        })
        .collect()
}

/// Criterion 4: 100 jittered synthetic palettes per rule all receive
/// that rule's label; the {0,2,5,9} counterexample is Other at zero
/// tolerance. Under 5 seconds.
#[test]
fn criterion_4_harmony_templates() {
    let start = Instant::now();
    let opts = WheelOptions::default();
    let rules = HarmonyRules::default();
    let mut rng = StdRng::seed_from_u64(42);

    let templates: [(HarmonyLabel, Vec<Vec<usize>>); 7] = [
        (HarmonyLabel::Monochromatic, vec![vec![0, 0, 0]]),
        (HarmonyLabel::Complementary, vec![vec![0, 6]]),
        (HarmonyLabel::SplitComplementary, vec![vec![0, 5, 7]]),
        (HarmonyLabel::Triad, vec![vec![0, 4, 8]]),
        (HarmonyLabel::Square, vec![vec![0, 3, 6, 9]]),
        (HarmonyLabel::Rectangular, vec![vec![0, 2, 6, 8]]),
        (
            HarmonyLabel::Analogous,
            vec![vec![0, 1, 2], vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]],
        ),
    ];

    for (label, variants) in &templates {
        for trial in 0..100 {
            let sectors = &variants[trial % variants.len()];
            let rotation = rng.random_range(0..WHEEL_SECTORS);
            let points = jittered_points(&mut rng, sectors, rotation);
            let profile = wheel_profile_from_points(&points, &opts);
            let labels = classify_harmonies(&profile, &rules);
            assert!(
                labels.contains(label),
                "{label} trial {trial} rotation {rotation}: got {labels:?}"
            );
        }
    }

    // The counterexample matches nothing at zero tolerance.
    let points: Vec<(HsiPoint, f64)> = [0usize, 2, 5, 9]
        .iter()
        .map(|&s| (HsiPoint::new(30.0 * s as f64, 80.0, 128.0), 0.25))
        .collect();
    let profile = wheel_profile_from_points(&points, &opts);
    let labels = classify_harmonies(
        &profile,
        &HarmonyRules {
            epsilon: 0.0,
            rectangular_gap: 2,
        },
    );
    assert_eq!(labels, BTreeSet::from([HarmonyLabel::Other]));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 4 PASS: 700 template palettes labeled, counterexample Other, in {:.2}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 5: 1,000 random palettes keep identical label sets under
/// 30-degree-multiple hue rotation and weight rescaling.
#[test]
fn criterion_5_rotation_and_scale_invariance() {
    let opts = WheelOptions::default();
    let rules = HarmonyRules::default();
    let mut rng = StdRng::seed_from_u64(2024);

    for trial in 0..1000 {
        let count = rng.random_range(1..=8);
        let points: Vec<(HsiPoint, f64)> = (0..count)
            .map(|_| {
                (
                    HsiPoint::new(
                        rng.random_range(0.0f64..360.0),
                        rng.random_range(0.0f64..=100.0),
                        rng.random_range(0.0f64..=255.0),
                    ),
                    rng.random_range(0.05f64..1.0),
                )
            })
            .collect();
        let total: f64 = points.iter().map(|&(_, w)| w).sum();
        let normalized: Vec<(HsiPoint, f64)> =
            points.iter().map(|&(p, w)| (p, w / total)).collect();
        let base = classify_harmonies(&wheel_profile_from_points(&normalized, &opts), &rules);

        let k = rng.random_range(0..WHEEL_SECTORS);
        let rotated: Vec<(HsiPoint, f64)> = normalized
            .iter()
            .map(|&(p, w)| {
                (
                    HsiPoint::new(p.hue + 30.0 * k as f64, p.saturation, p.intensity),
                    w,
                )
            })
            .collect();
        assert_eq!(
            classify_harmonies(&wheel_profile_from_points(&rotated, &opts), &rules),
            base,
            "trial {trial}: rotation by {k} sectors changed labels"
        );

        let scale = rng.random_range(0.01f64..100.0);
        let scaled_total: f64 = points.iter().map(|&(_, w)| w * scale).sum();
        let rescaled: Vec<(HsiPoint, f64)> = points
            .iter()
            .map(|&(p, w)| (p, w * scale / scaled_total))
            .collect();
        assert_eq!(
            classify_harmonies(&wheel_profile_from_points(&rescaled, &opts), &rules),
            base,
            "trial {trial}: rescaling by {scale} changed labels"
        );
    }
    println!("criterion 5 PASS: 1000 palettes invariant under rotation and rescaling");
}

/// Criterion 6: a 30-palette corpus drawn from 3 seeds (intra-Dp < 0.05,
/// inter-Dp > 0.4, both verified) clusters into exactly the 3 seed
/// groups at threshold 0.25.
#[test]
fn criterion_6_clustering_recovery() {
    let space = FuzzyColorSpace::standard();
    let metric = PaletteMetric::new(&space, DifferenceParams::default());

    let cell = |h: usize, s: usize, i: usize| FuzzyColor::new(h, s, i).unwrap();
    let seeds: [Vec<(FuzzyColor, f64)>; 3] = [
        vec![
            (cell(0, 2, 2), 0.4),
            (cell(1, 2, 2), 0.3),
            (cell(2, 2, 2), 0.2),
            (cell(0, 2, 1), 0.1),
        ],
        vec![
            (cell(3, 1, 1), 0.4),
            (cell(4, 1, 1), 0.3),
            (cell(3, 1, 2), 0.2),
            (cell(4, 1, 0), 0.1),
        ],
        vec![
            (cell(5, 0, 4), 0.4),
            (cell(6, 0, 0), 0.3),
            (cell(5, 0, 3), 0.2),
            (cell(6, 0, 1), 0.1),
        ],
    ];

    // Ten small weight perturbations per seed, interleaved a,b,c,a,b,c...
    let mut corpus: Vec<FuzzyPalette> = Vec::new();
    let mut expected_seed: Vec<usize> = Vec::new();
    for round in 0..10 {
        for (si, seed) in seeds.iter().enumerate() {
            let masses: Vec<(FuzzyColor, f64)> = seed
                .iter()
                .enumerate()
                .map(|(ei, &(c, w))| {
                    let tweak = 0.004 * ((round + ei) % 3) as f64;
                    (c, w + tweak)
                })
                .collect();
            let palette = FuzzyPalette::from_masses(masses, 8, format!("s{si}_r{round}")).unwrap();
            corpus.push(palette);
            expected_seed.push(si);
        }
    }

    // Verify the construction gap.
    let seed_palettes: Vec<FuzzyPalette> = seeds
        .iter()
        .enumerate()
        .map(|(si, s)| {
            FuzzyPalette::from_masses(s.iter().copied(), 8, format!("seed{si}")).unwrap()
        })
        .collect();
    let mut max_intra = 0.0f64;
    for (palette, &si) in corpus.iter().zip(&expected_seed) {
        max_intra = max_intra.max(metric.difference(palette, &seed_palettes[si]));
    }
    let mut min_inter = f64::MAX;
    for i in 0..3 {
        for j in (i + 1)..3 {
            min_inter = min_inter.min(metric.difference(&seed_palettes[i], &seed_palettes[j]));
        }
    }
    assert!(max_intra < 0.05, "intra gap violated: {max_intra}");
    assert!(min_inter > 0.4, "inter gap violated: {min_inter}");

    let params = ClusterParams::new(0.25, DifferenceParams::default()).unwrap();
    let result = cluster_corpus(corpus, &space, &params).unwrap();
    assert_eq!(result.groups.len(), 3, "expected 3 groups");
    for group in &result.groups {
        assert_eq!(group.members.len(), 10);
        for member in &group.members {
            assert!(
                member.source_id().starts_with(&format!("s{}", group.id)),
                "group {} contains {}",
                group.id,
                member.source_id()
            );
        }
    }
    println!(
        "criterion 6 PASS: 3 seed groups recovered exactly (intra {max_intra:.3} < 0.05, inter {min_inter:.3} > 0.4)"
    );
}

fn run_report(corpus: &std::path::Path, out: &std::path::Path, domain: &str) {
    let output = Command::new(env!("CARGO_BIN_EXE_fhsi"))
        .args([
            "report",
            corpus.to_str().unwrap(),
            "--domain",
            domain,
            "--threshold",
            "0.2",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .expect("spawn fhsi");
    assert!(
        output.status.success(),
        "report failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

/// Criterion 7: the pipeline reproduces the committed golden report
/// byte-for-byte on repeated runs, and the means match an independent
/// hand computation on a 3-image sub-corpus within 1e-6.
#[test]
fn criterion_7_end_to_end_determinism() {
    let corpus = fixtures().join("mini_corpus");
    let golden = fixtures().join("golden");

    let out1 = temp_dir("det-run1");
    let out2 = temp_dir("det-run2");
    run_report(&corpus, &out1, "mini");
    run_report(&corpus, &out2, "mini");

    for name in ["report.txt", "distribution.csv", "grouping.txt"] {
        let a = fs::read(out1.join(name)).unwrap();
        let b = fs::read(out2.join(name)).unwrap();
        let committed = fs::read(golden.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
        assert_eq!(a, committed, "{name} differs from the committed golden");
    }

    // Mean fields are within [0, 1].
    let report = fhsi::parse_report(fs::read(out1.join("report.txt")).unwrap().as_slice()).unwrap();
    assert!((0.0..=1.0).contains(&report.mean_intensity));
    assert!((0.0..=1.0).contains(&report.mean_saturation));

    // Hand-computed means on a 3-image sub-corpus. All three images come
    // from one palette family, so the corpus forms a single group whose
    // prototype is the first image's palette; the means are its
    // proportion-weighted representative attributes.
    let sub = temp_dir("det-sub");
    for name in ["a00.png", "a01.png", "a02.png"] {
        fs::copy(corpus.join(name), sub.join(name)).unwrap();
    }
    let sub_out = temp_dir("det-sub-out");
    run_report(&sub, &sub_out, "sub");
    let sub_report =
        fhsi::parse_report(fs::read(sub_out.join("report.txt")).unwrap().as_slice()).unwrap();

    let space = FuzzyColorSpace::standard();
    let img = image::open(sub.join("a00.png")).unwrap().to_rgb8();
    let raster = Raster::new(
        img.width(),
        img.height(),
        img.pixels()
            .map(|p| RgbPixel::new(p.0[0], p.0[1], p.0[2]))
            .collect(),
    )
    .unwrap();
    let prototype =
        fhsi::extract_fuzzy_palette(&raster, &space, 8, PixelAssignment::Hard, "a00.png").unwrap();
    let mut num_i = 0.0f64;
    let mut num_s = 0.0f64;
    let mut den = 0.0f64;
    for entry in prototype.entries() {
        let rep = space.representative(entry.color);
        num_i += entry.weight * rep.intensity;
        num_s += entry.weight * rep.saturation;
        den += entry.weight;
    }
    let expected_i = num_i / den / 255.0;
    let expected_s = num_s / den / 100.0;
    assert_eq!(sub_report.dominant_palette_count, 1);
    assert!(
        (sub_report.mean_intensity - expected_i).abs() < 1e-6,
        "mean I {} vs hand {}",
        sub_report.mean_intensity,
        expected_i
    );
    assert!(
        (sub_report.mean_saturation - expected_s).abs() < 1e-6,
        "mean S {} vs hand {}",
        sub_report.mean_saturation,
        expected_s
    );

    for dir in [out1, out2, sub, sub_out] {
        let _ = fs::remove_dir_all(&dir);
    }
    println!("criterion 7 PASS: byte-identical golden reports; sub-corpus means match within 1e-6");
}

/// Criterion 8: extracting and clustering 1,250 images at 256x256
/// finishes in under 60 seconds.
#[test]
fn criterion_8_corpus_throughput() {
    let space = FuzzyColorSpace::standard();

    // Five stripe families spread over the wheel, generated up front so
    // only extraction and clustering are timed.
    let rasters: Vec<Raster> = (0..1250usize)
        .map(|i| {
            let family = i % 5;
            let h1 = 72.0 * family as f64;
            let h2 = (h1 + 150.0) % 360.0;
            let c1 = fhsi::hsi_to_rgb(HsiPoint::new(h1, 55.0, 100.0));
            let c2 = fhsi::hsi_to_rgb(HsiPoint::new(h2, 55.0, 100.0));
            let split = 96 + (i % 40) as u32;
            Raster::from_fn(256, 256, |x, _| if x < split { c1 } else { c2 })
        })
        .collect();

    let indices: Vec<usize> = (0..rasters.len()).collect();
    let start = Instant::now();
    let palettes: Vec<FuzzyPalette> = fhsi::exec::par_map(&indices, |&i| {
        fhsi::extract_fuzzy_palette(
            &rasters[i],
            &space,
            8,
            PixelAssignment::Hard,
            format!("img{i:04}.png"),
        )
        .unwrap()
    });
    let extract_elapsed = start.elapsed();

    let params = ClusterParams::new(0.15, DifferenceParams::default()).unwrap();
    let result = cluster_corpus(palettes, &space, &params).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(result.corpus_size, 1250);
    assert!(result.groups.len() >= 2, "degenerate corpus");
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "extract+cluster took {elapsed:?}"
    );
    println!(
        "criterion 8 PASS: 1250 images extracted in {:.1}s, clustered into {} groups, total {:.1}s",
        extract_elapsed.as_secs_f64(),
        result.groups.len(),
        elapsed.as_secs_f64()
    );
}

/// Criterion 9: on the bundled mini corpus, Analogous plus Complementary
/// carry the plurality of non-Other labels across dominant groups.
#[test]
fn criterion_9_qualitative_alignment() {
    let corpus = fixtures().join("mini_corpus");
    let out = temp_dir("qualitative");
    run_report(&corpus, &out, "mini");

    let csv = fs::read_to_string(out.join("distribution.csv")).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for line in csv.lines().skip(1) {
        let (label, count) = line.rsplit_once(',').unwrap();
        counts.insert(label.to_string(), count.parse::<u64>().unwrap());
    }
    let analogous = counts["Analogous"];
    let complementary = counts["Complementary"];
    let other_templates: u64 = [
        "Monochromatic",
        "Split Complementary",
        "Triad",
        "Square",
        "Rectangular",
    ]
    .iter()
    .map(|&l| counts[l])
    .sum();
    let non_other = analogous + complementary + other_templates;

    assert!(non_other > 0, "no recognized labels at all");
    assert!(
        analogous + complementary > other_templates,
        "Analogous {analogous} + Complementary {complementary} vs rest {other_templates}"
    );

    let _ = fs::remove_dir_all(&out);
    println!(
        "criterion 9 PASS: Analogous {analogous} + Complementary {complementary} lead {other_templates} other template labels"
    );
}
