//! Acceptance gate: seven end-to-end criteria covering the exact censuses,
//! exact probabilities, Monte Carlo table reproduction, sampler uniformity,
//! solver reduction laws, and CLI determinism.
//!
//! Each criterion is one test that prints a single `criterion N (...): PASS`
//! line on success (visible with `--nocapture`, or implied by the test name
//! in the harness summary) and panics with a matching FAIL message otherwise.

use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use lightsout::canon::canonical_form;
use lightsout::census::Catalog;
use lightsout::graph::{Graph, VertexSet};
use lightsout::montecarlo::{run_experiment, trial_rng, Estimate, ExperimentConfig};
use lightsout::sampler::{SamplerStats, WormaldSampler};
use lightsout::solver::{is_universally_solvable, join_solvable, odd_dominating_set};
use lightsout::stats::chi_square_goodness_of_fit;

/// Seed for every randomized criterion; any fixed value works, and fixing it
/// makes the whole gate bit-for-bit reproducible.
const ACCEPT_SEED: u64 = 42;

fn pass(criterion: usize, title: &str, detail: &str) {
    println!("criterion {criterion} ({title}): PASS  [{detail}]");
}

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lightsout"));
    cmd.env_remove("LIGHTSOUT_WORKERS");
    cmd
}

/// Stabilized excess-degree census counts at n = 3d for d = 1..=5.
///
/// The d = 5 census has five classes; one of them, "5-cycle plus five
/// disjoint edges", is easy to miss by hand, so criterion 1 re-proves its
/// membership below by direct rank computation.
const STABLE_E: [usize; 5] = [0, 1, 2, 4, 5];

#[test]
fn criterion_1_excess_degree_census() {
    let started = Instant::now();
    let catalog = Catalog::new();

    // Stabilized counts at n = 3d, both through the library and the CLI.
    for d in 1..=5usize {
        let want = STABLE_E[d - 1];
        let got = catalog.compute_e(3 * d, d).expect("census computes").len();
        assert_eq!(got, want, "criterion 1 FAIL: E(3*{d}, {d}) = {got}, want {want}");

        let out = binary()
            .args(["census", "--d", &d.to_string()])
            .output()
            .expect("binary runs");
        let text = String::from_utf8(out.stdout).expect("utf-8");
        assert!(
            text.contains(&format!("# count={want}")),
            "criterion 1 FAIL: census --d {d} printed {text:?}, want count={want}"
        );
    }

    // Machine check of the fifth d = 5 class: C5 plus five disjoint edges on
    // 15 vertices has excess degree 5 and a universally solvable complement.
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    edges.extend((0..5).map(|t| (5 + 2 * t, 6 + 2 * t)));
    let witness = Graph::from_edges(15, &edges).expect("witness builds");
    assert_eq!(witness.excess_degree(), 5);
    assert!(
        is_universally_solvable(&witness.complement()),
        "criterion 1 FAIL: the C5 + 5 K2 witness complement must be solvable"
    );
    let census_15_5 = catalog.compute_e(15, 5).expect("census computes");
    let matching = census_15_5
        .iter()
        .filter(|g| {
            let mut sizes: Vec<usize> = g.components().iter().map(VertexSet::len).collect();
            sizes.sort_unstable();
            let mut degrees = g.degrees();
            degrees.sort_unstable();
            // Five K2 components plus one component that is 2-regular on five
            // vertices, i.e. a 5-cycle: this pins the witness class uniquely.
            sizes == [2, 2, 2, 2, 2, 5] && degrees == [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2]
        })
        .count();
    assert_eq!(
        matching, 1,
        "criterion 1 FAIL: exactly one census class should match the witness"
    );

    // Stabilization window: E(n, d) = E(3d, d) for n in [3d, 3d+8], with
    // zeros exactly where d is odd and n is even (degree-sum parity forces
    // an isolated vertex there, which kills solvability at even n).
    for d in 1..=5usize {
        for n in (3 * d)..=(3 * d + 8) {
            let want = if d % 2 == 1 && n % 2 == 0 {
                0
            } else {
                STABLE_E[d - 1]
            };
            let got = catalog.compute_e(n, d).expect("census computes").len();
            assert_eq!(
                got, want,
                "criterion 1 FAIL: E({n}, {d}) = {got}, want {want}"
            );
        }
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 FAIL: took {elapsed:.2?}, budget is one minute"
    );
    pass(
        1,
        "excess-degree census",
        &format!(
            "E(3d,d) = {STABLE_E:?} for d = 1..=5, windows stabilized, \
             fifth d=5 class verified by rank; {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_2_solvable_census_counts() {
    let catalog = Catalog::new();
    let u = |n: usize, m: usize| catalog.compute_u(n, m).expect("census computes").len();
    let e = |n: usize, d: usize| catalog.compute_e(n, d).expect("census computes").len();

    for n in 2..=20 {
        assert_eq!(u(n, 0), 1, "criterion 2 FAIL: U({n}, 0)");
    }
    for n in 4..=16 {
        assert_eq!(u(n, 1), 1, "criterion 2 FAIL: U({n}, 1)");
    }
    for n in 8..=16 {
        let want = if n % 2 == 0 { 4 } else { 6 };
        assert_eq!(u(n, 2), want, "criterion 2 FAIL: U({n}, 2)");
    }

    // Census identity: for n >= 6m, U(n, m) counts the complements by excess
    // degree, E(6m, 2m) alone at even n and E(6m-3, 2m-1) + E(6m, 2m) at odd
    // n. Checked exactly, including off-stabilization n.
    for m in 1..=3usize {
        let even_count = e(6 * m, 2 * m);
        let odd_count = e(6 * m - 3, 2 * m - 1) + even_count;
        for n in [6 * m, 6 * m + 1, 6 * m + 2, 6 * m + 3, 6 * m + 5] {
            let want = if n % 2 == 0 { even_count } else { odd_count };
            assert_eq!(
                u(n, m),
                want,
                "criterion 2 FAIL: U({n}, {m}) vs excess-census identity"
            );
        }
    }
    assert_eq!(u(19, 3), 20, "criterion 2 FAIL: U(19, 3)");

    pass(
        2,
        "solvable census",
        "U(n,0), U(n,1), parity-split U(n,2), and the excess identity through m = 3",
    );
}

#[test]
fn criterion_3_exact_probabilities() {
    let started = Instant::now();
    let catalog = Catalog::new();

    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    assert_eq!(
        catalog.exact_probability(8, 2).expect("exact"),
        half,
        "criterion 3 FAIL: P(8, 2)"
    );

    // Zero region: no solvable class exists for e in (N - floor(n/2), N].
    for n in 2..=13usize {
        let npairs = n * (n - 1) / 2;
        for e in (npairs - n / 2 + 1)..=npairs {
            let p = catalog.exact_probability(n, e).expect("exact");
            assert!(
                p.is_zero(),
                "criterion 3 FAIL: P({n}, {e}) = {p}, want 0"
            );
        }
    }

    // Right-edge identity: P(n, N - floor(n/2) - m) = U(n, m) / G(n, floor(n/2) + m).
    for n in 8..=13usize {
        let npairs = n * (n - 1) / 2;
        for m in 0..=3usize {
            let e = npairs - n / 2 - m;
            let p = catalog.exact_probability(n, e).expect("exact");
            let solvable = catalog.compute_u(n, m).expect("census computes").len();
            let classes = catalog
                .count_graphs(n, n / 2 + m)
                .expect("class count")
                .to_f64()
                .expect("fits f64") as usize;
            let want = BigRational::new(BigInt::from(solvable), BigInt::from(classes));
            assert_eq!(
                p, want,
                "criterion 3 FAIL: P({n}, {e}) vs U({n}, {m}) / G({n}, {})",
                n / 2 + m
            );
        }
    }

    // Local-maximum window: e = N - floor(n/2) carries the last nonzero
    // probability, and that peak strictly dominates the next m smaller edge
    // counts once n clears a per-m threshold. The dominance window is
    // genuinely asymptotic in n: exact computation shows it fails in exactly
    // four small cells, (8,3), (9,2), (9,3), and (11,3), which are pinned
    // here with the reversed inequality so any drift is caught. The m = 1
    // case (a true local maximum) holds for every n in range.
    for n in 8..=13usize {
        let npairs = n * (n - 1) / 2;
        let peak = catalog
            .exact_probability(n, npairs - n / 2)
            .expect("exact");
        for m in 1..=3usize {
            let p = catalog
                .exact_probability(n, npairs - n / 2 - m)
                .expect("exact");
            let dominates = !matches!((n, m), (8, 3) | (9, 2) | (9, 3) | (11, 3));
            if dominates {
                assert!(
                    peak > p,
                    "criterion 3 FAIL: P({n}, {}) = {peak} not above P({n}, {}) = {p}",
                    npairs - n / 2,
                    npairs - n / 2 - m
                );
            } else {
                assert!(
                    p > peak,
                    "criterion 3 FAIL: exception cell (n={n}, m={m}) no longer exceeds the peak"
                );
            }
        }
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "criterion 3 FAIL: took {elapsed:.2?}, budget is five minutes"
    );
    pass(
        3,
        "exact probabilities",
        &format!(
            "P(8,2) = 1/2, zero region, right-edge identity, dominance window \
             with its four small-n exceptions pinned; {elapsed:.2?}"
        ),
    );
}

/// Frozen reference estimates for n = 8, from independent million-trial runs
/// (95% margin of error below 0.001 per cell).
const REFERENCE_8: &[(usize, f64)] = &[
    (1, 0.0),
    (2, 0.499919),
    (3, 0.199316),
    (4, 0.363499),
    (5, 0.249911),
    (6, 0.321910),
    (7, 0.312796),
    (8, 0.321971),
    (9, 0.325698),
    (10, 0.343950),
    (11, 0.346355),
    (12, 0.359100),
    (13, 0.353405),
    (14, 0.354413),
    (15, 0.345785),
    (16, 0.336634),
    (17, 0.304621),
    (18, 0.273169),
    (19, 0.219285),
    (20, 0.167277),
    (21, 0.104666),
    (22, 0.071329),
    (23, 0.041872),
    (24, 0.091008),
    (25, 0.0),
    (26, 0.0),
    (27, 0.0),
];

/// Frozen reference estimates for n = 11, same provenance as [`REFERENCE_8`].
const REFERENCE_11: &[(usize, f64)] = &[
    (1, 0.0),
    (2, 0.499724),
    (3, 0.200551),
    (4, 0.363507),
    (5, 0.230845),
    (6, 0.283949),
    (7, 0.244384),
    (8, 0.263545),
    (9, 0.262488),
    (10, 0.283742),
    (11, 0.295869),
    (12, 0.314470),
    (13, 0.328777),
    (14, 0.344268),
    (15, 0.357644),
    (16, 0.368724),
    (17, 0.376659),
    (18, 0.383929),
    (19, 0.388856),
    (20, 0.393536),
    (21, 0.396004),
    (22, 0.396182),
    (23, 0.397806),
    (24, 0.398648),
    (25, 0.398657),
    (26, 0.397970),
    (27, 0.397904),
    (28, 0.397958),
    (29, 0.398135),
    (30, 0.397270),
    (31, 0.395805),
    (32, 0.393628),
    (33, 0.390987),
    (34, 0.386070),
    (35, 0.378623),
    (36, 0.370198),
    (37, 0.358598),
    (38, 0.344516),
    (39, 0.324121),
    (40, 0.299494),
    (41, 0.267545),
    (42, 0.229736),
    (43, 0.184645),
    (44, 0.140461),
    (45, 0.096906),
    (46, 0.068320),
    (47, 0.040787),
    (48, 0.035003),
    (49, 0.014937),
    (50, 0.038504),
    (51, 0.0),
    (52, 0.0),
    (53, 0.0),
    (54, 0.0),
];

/// Spot rows for n = 12 and n = 13, same provenance as [`REFERENCE_8`].
const SPOT_12: &[(usize, f64)] = &[(2, 0.499463), (33, 0.407777), (60, 0.014655)];
const SPOT_13: &[(usize, f64)] = &[(2, 0.499294), (39, 0.412263), (72, 0.014552)];

fn run_cells(n: usize, edges: Vec<usize>, trials: u64) -> Vec<Estimate> {
    let config = ExperimentConfig {
        n,
        edges,
        trials,
        seed: ACCEPT_SEED,
        workers: 1,
        quiet: false,
    };
    run_experiment(&config).expect("experiment runs")
}

#[test]
fn criterion_4_monte_carlo_tables() {
    let started = Instant::now();

    // Full sweeps at 1e5 trials per cell; each estimate must land within
    // max(0.005, 5 * moe95) of the frozen reference value.
    let mut worst = (0.0f64, 0usize, 0usize);
    for (n, table) in [(8usize, REFERENCE_8), (11, REFERENCE_11)] {
        let edges: Vec<usize> = table.iter().map(|&(e, _)| e).collect();
        let estimates = run_cells(n, edges, 100_000);
        for (est, &(e, reference)) in estimates.iter().zip(table) {
            assert_eq!(est.e, e);
            let tolerance = (5.0 * est.moe95).max(0.005);
            let gap = (est.p_hat - reference).abs();
            assert!(
                gap <= tolerance,
                "criterion 4 FAIL: n={n} e={e}: estimate {:.6} vs reference {reference:.6} \
                 (gap {gap:.6} > tolerance {tolerance:.6})",
                est.p_hat
            );
            if gap / tolerance > worst.0 {
                worst = (gap / tolerance, n, e);
            }
        }
    }

    // Spot rows for the larger tables. The stated tolerance is an absolute
    // 0.01; running 3e4 trials (above the 1e4 floor) keeps that bound at
    // 3.5 sigma so the fixed-seed check is stable.
    for (n, table) in [(12usize, SPOT_12), (13, SPOT_13)] {
        let edges: Vec<usize> = table.iter().map(|&(e, _)| e).collect();
        let estimates = run_cells(n, edges, 30_000);
        for (est, &(e, reference)) in estimates.iter().zip(table) {
            assert_eq!(est.e, e);
            let gap = (est.p_hat - reference).abs();
            assert!(
                gap <= 0.01,
                "criterion 4 FAIL: n={n} e={e}: estimate {:.6} vs reference {reference:.6} \
                 (gap {gap:.6} > 0.01)",
                est.p_hat
            );
        }
    }

    pass(
        4,
        "Monte Carlo tables",
        &format!(
            "n=8 and n=11 full sweeps at 1e5 trials, n=12/13 spot rows; \
             worst gap/tolerance {:.2} at n={} e={}; {:.1?}",
            worst.0,
            worst.1,
            worst.2,
            started.elapsed()
        ),
    );
}

#[test]
fn criterion_5_sampler_uniformity() {
    const DRAWS: u64 = 100_000;
    const SIGNIFICANCE: f64 = 1e-3;
    let catalog = Catalog::new();
    let mut cells = 0usize;
    let mut tested = 0usize;
    let mut min_p_value = 1.0f64;

    for n in 0..=6usize {
        let all_classes = catalog.classes_by_vertices(n).expect("catalog");
        let npairs = n * n.saturating_sub(1) / 2;
        for e in 0..=npairs {
            cells += 1;
            let classes: Vec<Graph> = all_classes
                .iter()
                .filter(|g| g.edge_count() == e)
                .cloned()
                .collect();
            assert!(!classes.is_empty(), "every (n, e) cell has classes");
            let index: HashMap<_, _> = classes
                .iter()
                .enumerate()
                .map(|(slot, g)| (canonical_form(g).expect("canon"), slot))
                .collect();

            let sampler = WormaldSampler::new(n, e).expect("sampler builds");
            // The identity-class thinning ratio is pinned to exactly 1 by
            // construction; verify in log space wherever the class exists.
            if let Some(ln_ratio) = sampler.identity_class_ln_ratio() {
                assert!(
                    ln_ratio.abs() <= 1e-9,
                    "criterion 5 FAIL: |ln ratio| = {} at n={n} e={e}",
                    ln_ratio.abs()
                );
            }

            let mut observed = vec![0u64; classes.len()];
            let mut stats = SamplerStats::default();
            for draw in 0..DRAWS {
                let mut rng = trial_rng(ACCEPT_SEED, n, e, draw);
                let g = sampler.sample_with_stats(&mut rng, &mut stats).graph;
                let slot = index
                    .get(&canonical_form(&g).expect("canon"))
                    .unwrap_or_else(|| panic!("criterion 5 FAIL: foreign class at n={n} e={e}"));
                observed[*slot] += 1;
            }

            if classes.len() < 2 {
                assert_eq!(observed[0], DRAWS);
                continue;
            }
            let expected = vec![DRAWS as f64 / classes.len() as f64; classes.len()];
            let test = chi_square_goodness_of_fit(&observed, &expected);
            assert!(
                test.passes(SIGNIFICANCE),
                "criterion 5 FAIL: chi-square {:.2} (dof {}, p {:.6}) at n={n} e={e}",
                test.stat,
                test.dof,
                test.p_value
            );
            tested += 1;
            min_p_value = min_p_value.min(test.p_value);
        }
    }

    pass(
        5,
        "sampler uniformity",
        &format!(
            "{cells} cells, {tested} chi-square tests at 1e5 draws, \
             smallest p-value {min_p_value:.4}; identity ratio pinned"
        ),
    );
}

/// Rank verdict for the complement of `sparse`.
fn complement_solvable(sparse: &Graph) -> bool {
    is_universally_solvable(&sparse.complement())
}

fn remove_vertices(g: &Graph, drop: &[usize]) -> Graph {
    g.delete_vertices(VertexSet::from_iter(drop.iter().copied()))
}

/// Apply the five complement-solvability reduction laws plus the two derived
/// filters to `sparse`, verifying each against direct rank computation.
/// Returns how many law applications fired.
fn check_reduction_laws(sparse: &Graph) -> usize {
    let n = sparse.n();
    let verdict = complement_solvable(sparse);
    let summary = sparse.structural_summary();
    let isolated: Vec<usize> = summary.isolated_vertices.iter().collect();
    let mut fired = 0usize;

    // Law 1: isolated vertex at even n kills solvability.
    if !isolated.is_empty() && n.is_multiple_of(2) {
        fired += 1;
        assert!(!verdict, "law 1 contradicted on {sparse:?}");
    }
    // Law 2: at odd n, an isolated vertex can be removed without changing
    // the verdict.
    if n % 2 == 1 {
        for &v in &isolated {
            fired += 1;
            assert_eq!(
                verdict,
                complement_solvable(&remove_vertices(sparse, &[v])),
                "law 2 contradicted on {sparse:?} at vertex {v}"
            );
        }
    }
    // Law 3: a vertex with two or more degree-1 neighbors kills solvability.
    for v in 0..n {
        let pendant_neighbors = (0..n)
            .filter(|&u| sparse.has_edge(u, v) && summary.degrees[u] == 1)
            .count();
        if pendant_neighbors >= 2 {
            fired += 1;
            assert!(!verdict, "law 3 contradicted on {sparse:?} at vertex {v}");
        }
    }
    // Law 4: two isolated vertices kill solvability.
    if isolated.len() >= 2 {
        fired += 1;
        assert!(!verdict, "law 4 contradicted on {sparse:?}");
    }
    // Law 5: an isolated edge can be removed without changing the verdict.
    for &(u, v) in &summary.isolated_edges {
        fired += 1;
        assert_eq!(
            verdict,
            complement_solvable(&remove_vertices(sparse, &[u, v])),
            "law 5 contradicted on {sparse:?} at edge ({u}, {v})"
        );
    }
    // Derived filter A: a vertex of degree d >= 3 with at most d - 1
    // vertices of degree >= 2 in the whole graph kills solvability.
    let heavy = summary.degrees.iter().filter(|&&d| d >= 2).count();
    for v in 0..n {
        if summary.degrees[v] >= 3 && heavy < summary.degrees[v] {
            fired += 1;
            assert!(!verdict, "degree filter contradicted on {sparse:?} at {v}");
        }
    }
    // Derived filter B: a 4-cycle through two non-adjacent degree-2 vertices
    // kills solvability. Two such vertices lie on a common 4-cycle exactly
    // when they share both neighbors.
    for u in 0..n {
        if summary.degrees[u] != 2 {
            continue;
        }
        for v in (u + 1)..n {
            if summary.degrees[v] != 2 || sparse.has_edge(u, v) {
                continue;
            }
            if sparse.neighbors(u) == sparse.neighbors(v) {
                fired += 1;
                assert!(!verdict, "4-cycle filter contradicted on {sparse:?}");
            }
        }
    }
    fired
}

#[test]
fn criterion_6_solver_laws() {
    let catalog = Catalog::new();

    // Reduction laws on every 8-vertex class (and every 7-vertex class, so
    // the odd-n isolated-vertex law gets non-vacuous coverage).
    let eight = catalog.classes_by_vertices(8).expect("catalog");
    assert_eq!(eight.len(), 12_346, "criterion 6 FAIL: 8-vertex class count");
    let seven = catalog.classes_by_vertices(7).expect("catalog");
    let mut fired = 0usize;
    for g in eight.iter().chain(seven.iter()) {
        fired += check_reduction_laws(g);
    }
    assert!(fired > 1_000, "criterion 6 FAIL: laws barely exercised ({fired})");

    // Join theorem, exhaustively over ordered pairs from the n <= 5 catalogs.
    let mut parts: Vec<Graph> = Vec::new();
    for n in 0..=5usize {
        parts.extend(catalog.classes_by_vertices(n).expect("catalog").iter().cloned());
    }
    let mut joins = 0usize;
    for g1 in &parts {
        for g2 in &parts {
            let joined = g1.join(g2).expect("within capacity");
            assert_eq!(
                join_solvable(g1, g2),
                is_universally_solvable(&joined),
                "criterion 6 FAIL: join theorem on {g1:?} + {g2:?}"
            );
            joins += 1;
        }
    }

    // Parity law: every universally solvable graph has an odd dominating set
    // whose cardinality matches n mod 2.
    let mut solvable_count = 0usize;
    for n in 0..=8usize {
        for g in catalog.classes_by_vertices(n).expect("catalog").iter() {
            if !is_universally_solvable(g) {
                continue;
            }
            solvable_count += 1;
            let ods = odd_dominating_set(g).unwrap_or_else(|| {
                panic!("criterion 6 FAIL: solvable graph lacks an odd dominating set: {g:?}")
            });
            assert_eq!(
                ods.len() % 2,
                n % 2,
                "criterion 6 FAIL: parity law on {g:?} (|D| = {})",
                ods.len()
            );
        }
    }

    pass(
        6,
        "solver laws",
        &format!(
            "{fired} reduction-law firings, {joins} joins, \
             parity law on {solvable_count} solvable classes"
        ),
    );
}

#[test]
fn criterion_7_cli_determinism() {
    let run = |workers: &str| {
        let out = binary()
            .args([
                "table", "--n", "8", "--trials", "1000", "--seed", "42", "--format", "csv",
                "--workers", workers,
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "table run failed: {out:?}");
        out.stdout
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(
        one, eight,
        "criterion 7 FAIL: CSV differs between --workers 1 and --workers 8"
    );
    let text = String::from_utf8(one).expect("utf-8");
    assert_eq!(
        text.lines().count(),
        28,
        "criterion 7 FAIL: expected header plus 27 rows"
    );
    assert!(text.starts_with("n,e,trials,successes,p_hat,moe95\n"));

    pass(7, "CLI determinism", "byte-identical CSV for workers 1 and 8");
}
