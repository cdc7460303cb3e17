//! End-to-end acceptance checks. Each test writes one `criterion N: PASS|FAIL`
//! line to stderr (bypassing output capture) before asserting.
//!
//! Benchmark networks other than the bundled karate club are looked up in
//! `$COIN_DATASETS` (default: the crate's `data/` directory) as
//! `dolphins.gml`, `football.gml` and `polbooks.gml`.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use coin::bench::load_dataset;
use coin::fca::{build_one_mode_context, enumerate_concepts, extract_identical_concepts};
use coin::{
    expected_isolated_stability, fast_identical_concepts, nmi, run_coin, stability_exact,
    stability_sampled, CoinConfig, Graph, IdenticalConcept, NodeSet, Partition, StabilityValue,
};
use common::*;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "\ncriterion {n} ({title}): {verdict} - {detail}");
}

fn toy_communities_expected() -> Vec<Vec<String>> {
    labels(&[
        &["1", "2", "3", "4"],
        &["5", "6", "7"],
        &["8", "9", "10", "11", "12"],
        &["13", "14", "15"],
    ])
}

#[test]
fn criterion_1_toy_end_to_end() {
    let start = Instant::now();
    let g = toy();
    let run = run_coin(&g, &CoinConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let cut = label_sets(&g, run.stage1.cut_bridges.iter()) == labels(&[&["4", "5"], &["6", "12"]]);
    let iso = label_sets(&g, run.stage1.isolated.iter()) == labels(&[&["13", "14", "15"]]);
    let found = label_sets(&g, run.communities.iter().map(|c| &c.members));
    let comms = found == toy_communities_expected();
    let pass = cut && iso && comms && elapsed < Duration::from_secs(1);
    report(
        1,
        "toy network",
        pass,
        &format!("bridges cut {cut}, isolated {iso}, communities {found:?}, {elapsed:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_2_stability_closed_forms() {
    let exact = |g: &Graph, l: &[&str]| match stability_exact(
        &build_one_mode_context(g),
        &IdenticalConcept::new(set(g, l)),
    )
    .unwrap()
    {
        StabilityValue::Exact {
            numerator,
            extent_size,
        } => (numerator, 1u64 << extent_size),
        other => panic!("{other:?}"),
    };
    let g = toy();
    let s = toy_star();
    let a = exact(&g, &["13", "14", "15"]);
    let b = exact(&g, &["4", "5"]);
    let leaves: Vec<(u64, u64)> = ["17", "18", "19"]
        .iter()
        .map(|l| exact(&s, &["16", l]))
        .collect();
    let pass = a == (7, 8) && b == (1, 4) && leaves.iter().all(|&r| r == (2, 4));
    let show = |(n, d): (u64, u64)| format!("{n}/{d}");
    report(
        2,
        "stability closed forms",
        pass,
        &format!(
            "{{13,14,15}} = {}, {{4,5}} = {}, star leaves = {}",
            show(a),
            show(b),
            leaves
                .iter()
                .map(|&r| show(r))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_star_graph() {
    let g = toy_star();
    let found = label_sets(
        &g,
        coin::detect_communities(&g, &CoinConfig::default())
            .unwrap()
            .iter()
            .map(|c| &c.members),
    );
    let mut expected = toy_communities_expected();
    expected.extend(labels(&[&["16", "17", "18", "19"]]));
    expected.sort();
    let pass = found == expected;
    report(
        3,
        "star-graph percolation",
        pass,
        &format!("{} communities, star kept whole: {pass}", found.len()),
    );
    assert!(pass);
}

/// 500 seeded graphs with n in 5..=25 and p cycling through 0.1, 0.3, 0.5.
fn corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..500)
        .map(|i| {
            let n = rng.gen_range(5..=25);
            let p = [0.1, 0.3, 0.5][i % 3];
            random_graph(n, p, rng.gen())
        })
        .collect()
}

#[test]
fn criterion_4_identical_concepts_are_maximal_cliques() {
    let start = Instant::now();
    let mut agree = 0;
    for g in corpus() {
        let lattice = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
        let ours: Vec<NodeSet> = extract_identical_concepts(&lattice)
            .unwrap()
            .into_iter()
            .map(|c| c.members)
            .collect();
        let bk: Vec<NodeSet> = g.maximal_cliques().into_vec();
        if ours == bk {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = agree == 500 && elapsed < Duration::from_secs(60);
    report(
        4,
        "lattice vs Bron-Kerbosch",
        pass,
        &format!("{agree}/500 graphs agree, {elapsed:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_5_isolation_and_bridge_theorems() {
    let (mut iso_checked, mut iso_agree, mut bridge_checked, mut bridge_agree) = (0, 0, 0, 0);
    for g in corpus() {
        let ctx = build_one_mode_context(&g);
        for c in fast_identical_concepts(&g) {
            let s = stability_exact(&ctx, &c).unwrap().ratio().unwrap();
            iso_checked += 1;
            if (s == expected_isolated_stability(c.size())) == g.is_isolated_set(&c.members) {
                iso_agree += 1;
            }
            if c.size() == 2 && c.members.iter().all(|v| g.degree(v).unwrap() >= 2) {
                bridge_checked += 1;
                if s == Ratio::new(1, 4) {
                    bridge_agree += 1;
                }
            }
        }
    }
    let pass = iso_agree == iso_checked && bridge_agree == bridge_checked;
    report(
        5,
        "isolation and bridge theorems",
        pass,
        &format!(
            "isolation {iso_agree}/{iso_checked}, 2-cliques at 1/4 {bridge_agree}/{bridge_checked}"
        ),
    );
    assert!(pass);
}

/// Clique `0..k` plus ten outside nodes each adjacent to a random part of it.
fn planted(k: usize, rng: &mut ChaCha8Rng) -> (Graph, IdenticalConcept) {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    let extra = 10;
    for x in k..k + extra {
        let p: f64 = rng.gen_range(0.2..0.9);
        let skip = rng.gen_range(0..k);
        for a in (0..k).filter(|&a| a != skip) {
            if rng.gen_bool(p) {
                edges.push((a, x));
            }
        }
        for y in x + 1..k + extra {
            if rng.gen_bool(0.3) {
                edges.push((x, y));
            }
        }
    }
    let g = Graph::with_nodes(k + extra, &edges);
    let c = IdenticalConcept::new(NodeSet::from_members(k + extra, 0..k));
    (g, c)
}

#[test]
fn criterion_6_sampled_estimator_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut within, mut sampled) = (0, 0);
    let mut worst: f64 = 0.0;
    for i in 0..100u64 {
        let k = 8 + (i % 9) as usize;
        let (g, c) = planted(k, &mut rng);
        let ctx = build_one_mode_context(&g);
        assert!(fast_identical_concepts(&g).contains(&c));
        let exact = stability_exact(&ctx, &c).unwrap().value();
        let s = stability_sampled(&ctx, &c, 4096, i).unwrap();
        let bound = match s {
            StabilityValue::Sampled { error_bound, .. } => {
                sampled += 1;
                error_bound
            }
            StabilityValue::Exact { .. } => 0.0,
        };
        let err = (s.value() - exact).abs();
        worst = worst.max(err);
        if err <= bound + 1e-12 {
            within += 1;
        }
    }
    let pass = within >= 95;
    report(
        6,
        "sampled estimator accuracy",
        pass,
        &format!("{within}/100 within bound ({sampled} sampled, the rest exact because 2^|A| <= budget), worst error {worst:.5}"),
    );
    assert!(pass);
}

fn datasets_dir() -> PathBuf {
    std::env::var_os("COIN_DATASETS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"))
}

const BENCHMARKS: [(&str, f64, usize, bool); 4] = [
    ("dolphins", 1.00, 2, true),
    ("karate", 0.837, 2, false),
    ("football", 0.978, 12, false),
    ("polbooks", 0.885, 3, false),
];

#[test]
fn criterion_7_benchmark_reproduction() {
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, target_nmi, target_count, exact) in BENCHMARKS {
        let mut path = datasets_dir().join(format!("{name}.gml"));
        if name == "karate" && !path.exists() {
            path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/karate.gml");
        }
        if !path.exists() {
            pass = false;
            lines.push(format!("{name}: missing {}", path.display()));
            continue;
        }
        let ds = load_dataset(&path, None).unwrap();
        let start = Instant::now();
        let cs = coin::detect_communities(&ds.graph, &CoinConfig::default()).unwrap();
        let elapsed = start.elapsed();
        let truth = ds.labeling.ground_truth_partition().expect("ground truth");
        let v = nmi(&truth, &cs.partition().unwrap()).unwrap();
        let ok = if exact {
            (v - target_nmi).abs() < 5e-4 && cs.len() == target_count
        } else {
            (v - target_nmi).abs() <= 0.05 && cs.len().abs_diff(target_count) <= 1
        } && elapsed < Duration::from_secs(30);
        pass &= ok;
        lines.push(format!(
            "{name}: NMI {v:.3} ({}) vs {target_nmi:.3} ({target_count}) {}",
            cs.len(),
            if ok { "ok" } else { "off" }
        ));
    }
    report(7, "benchmark reproduction", pass, &lines.join("; "));
    assert!(pass, "{}", lines.join("\n"));
}

#[test]
fn criterion_8_nmi_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=200);
        let (ka, kb) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let a: Vec<usize> = (0..n).map(|_| rng.gen_range(0..ka)).collect();
        let b: Vec<usize> = (0..n).map(|_| rng.gen_range(0..kb)).collect();
        let shift = rng.gen_range(1..50);
        let renamed: Vec<usize> = b.iter().map(|&x| x * 7 + shift).collect();
        let (pa, pb) = (
            Partition::from_assignment(&a),
            Partition::from_assignment(&b),
        );
        let v = nmi(&pa, &pb).unwrap();
        let ok = (0.0..=1.0).contains(&v)
            && (v - nmi(&pb, &pa).unwrap()).abs() < 1e-12
            && (v - nmi(&pa, &Partition::from_assignment(&renamed)).unwrap()).abs() < 1e-12
            && (nmi(&pa, &pa).unwrap() - 1.0).abs() < 1e-12;
        if !ok {
            failures += 1;
        }
    }
    let truth = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
    let pred = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
    let hand = nmi(&truth, &pred).unwrap();
    let pass = failures == 0 && hand.abs() < 1e-12;
    report(
        8,
        "NMI properties",
        pass,
        &format!(
            "{}/1000 fuzzed pairs ok, hand example {hand:.3}",
            1000 - failures
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_deterministic_output() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let mut files: Vec<PathBuf> = ["toy.edgelist", "toy_star.edgelist", "karate.gml"]
        .iter()
        .map(|f| manifest.join("data").join(f))
        .collect();
    let mut missing = Vec::new();
    for (name, ..) in BENCHMARKS.iter().filter(|b| b.0 != "karate") {
        let p = datasets_dir().join(format!("{name}.gml"));
        if p.exists() {
            files.push(p);
        } else {
            missing.push(*name);
        }
    }
    let mut identical = 0;
    for f in &files {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_coin"))
                .args(["detect", f.to_str().unwrap(), "--seed", "1"])
                .env_remove("COIN_SEED")
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        if a.status.success() && a.stdout == b.stdout {
            identical += 1;
        }
    }
    let pass = identical == files.len();
    let note = if missing.is_empty() {
        String::new()
    } else {
        format!(", not available: {}", missing.join(", "))
    };
    report(
        9,
        "deterministic output",
        pass,
        &format!("{identical}/{} files byte-identical{note}", files.len()),
    );
    assert!(pass);
}
