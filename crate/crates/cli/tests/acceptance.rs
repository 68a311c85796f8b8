//! Acceptance suite. Each test covers one numbered criterion, enforces its
//! tolerance and time budget, and prints a PASS line (visible with
//! `cargo test -p antimagic-cli --test acceptance -- --nocapture`).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use antimagic_core::{
    abc_partition, generate_forest, label_forest_with_plan, oracle_search, root_components,
    vertex_sums, zero_sum_partition, CaseTag, Forest, ForestSpec, OracleMode, OracleOutcome,
    SetKind, SpecialEdge, ZeroSumPartition,
};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn run_binary(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_antimagic"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

/// Enumeration-based check, independent of the construction path: classes
/// cover [1,k] exactly once with the prescribed sizes, and every class sum
/// vanishes modulo the modulus.
fn check_partition(part: &ZeroSumPartition, sizes: &[u64]) {
    assert_eq!(part.classes.len(), sizes.len());
    let mut seen = vec![false; part.k as usize + 1];
    for (i, class) in part.classes.iter().enumerate() {
        let elems = class.elements();
        assert_eq!(elems.len() as u64, sizes[i]);
        assert_eq!(elems.iter().sum::<u64>() % part.modulus, 0);
        for &e in &elems {
            assert!(e >= 1 && e <= part.k && !seen[e as usize]);
            seen[e as usize] = true;
        }
    }
    assert!(seen[1..].iter().all(|&b| b));
}

#[test]
fn criterion_1_worked_example_partition() {
    // Library-level timing: well under a millisecond.
    let start = Instant::now();
    let p = abc_partition(5, 2);
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_millis(1),
        "partition took {:?}",
        elapsed
    );

    let sets = |xs: &[antimagic_core::AbcSet]| -> Vec<Vec<u64>> {
        xs.iter().map(|s| s.elements.clone()).collect()
    };
    assert_eq!(sets(&p.a_sets), vec![vec![1, 8, 14], vec![2, 9, 12]]);
    assert_eq!(
        sets(&p.b_sets),
        vec![
            vec![3, 20],
            vec![4, 19],
            vec![5, 18],
            vec![6, 17],
            vec![7, 16]
        ]
    );
    assert_eq!(sets(&p.c_sets), vec![vec![22, 11, 13], vec![21, 10, 15]]);

    // Byte-exact CLI payload.
    let (stdout, code) = run_binary(&["partition", "--s", "5", "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "A1={1,8,14}\nA2={2,9,12}\nB1={3,20}\nB2={4,19}\nB3={5,18}\nB4={6,17}\nB5={7,16}\nC1={22,11,13}\nC2={21,10,15}\n"
    );
    println!("PASS criterion 1: worked-example partition reproduced exactly");
}

#[test]
fn criterion_2_abc_sweep_to_600() {
    let start = Instant::now();
    let mut checked = 0u64;
    for l in 0..=100u64 {
        let mut s = 0u64;
        while 2 * s + 6 * l <= 600 {
            let p = abc_partition(s, l);
            let k = 2 * s + 6 * l;
            assert_eq!(p.k, k);
            assert_eq!(p.a_sets.len() as u64, l);
            assert_eq!(p.b_sets.len() as u64, s);
            assert_eq!(p.c_sets.len() as u64, l);
            let mut seen = vec![false; k as usize + 1];
            for set in p.a_sets.iter().chain(&p.b_sets).chain(&p.c_sets) {
                let (want_len, want_sum) = match set.kind {
                    SetKind::A => (3, k + 1),
                    SetKind::B => (2, k + 1),
                    SetKind::C => (3, 2 * (k + 1)),
                };
                assert_eq!(set.elements.len(), want_len);
                assert_eq!(set.sum(), want_sum);
                for &e in &set.elements {
                    assert!(e >= 1 && e <= k && !seen[e as usize]);
                    seen[e as usize] = true;
                }
            }
            assert!(seen[1..].iter().all(|&b| b));
            checked += 1;
            s += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "sweep took {:?}", elapsed);
    println!(
        "PASS criterion 2: {} (s,l) pairs with 2s+6l <= 600 verified in {:?}",
        checked, elapsed
    );
}

#[test]
fn criterion_3_random_compositions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0u64;
    while checked < 1000 {
        let k = rng.gen_range(2u64..=120);
        let mut sizes = Vec::new();
        let mut rest = k;
        while rest >= 2 {
            let hi = rest.min(9);
            let mut part = rng.gen_range(2..=hi);
            if rest - part == 1 {
                part += 1;
            }
            if part > rest {
                part = rest;
            }
            sizes.push(part);
            rest -= part;
        }
        if rest != 0 {
            continue;
        }
        let part = zero_sum_partition(k, &sizes, &[]).unwrap();
        assert_eq!(part.modulus, if k % 2 == 0 { k + 1 } else { k });
        check_partition(&part, &sizes);
        if k % 2 == 1 {
            let j = part.carrier_of_k.expect("odd k records its carrier");
            let class = &part.classes[j];
            assert!(class.elements().contains(&k));
            assert!(class.len() % 2 == 1 && class.len() >= 3);
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
    println!(
        "PASS criterion 3: {} random size-compositions (k <= 120) verified in {:?}",
        checked, elapsed
    );
}

#[test]
fn criterion_4_fixture_labelings() {
    let fixtures = [
        "tree_m22.edges",
        "forest_s2_m11.edges",
        "forest_s2_m9_deg2.edges",
        "forest_s2_m12_deg2.edges",
        "forest_s3_m14_deg2.edges",
    ];
    for name in fixtures {
        let (stdout, code) = run_binary(&["verify", &fixture(name)]);
        assert_eq!(code, 0, "fixture {} must verify: {}", name, stdout);
    }

    // Root-sum contracts on the two-component and three-component
    // degree-2 fixtures.
    let text = std::fs::read_to_string(fixture("forest_s2_m12_deg2.edges")).unwrap();
    let lab = antimagic_core::parse_labeled(&text).unwrap();
    let report = vertex_sums(&lab).unwrap();
    assert_eq!(report.sums["a0"], 13);
    assert_eq!(report.sums["b0"], 26);

    let text = std::fs::read_to_string(fixture("forest_s3_m14_deg2.edges")).unwrap();
    let lab = antimagic_core::parse_labeled(&text).unwrap();
    let report = vertex_sums(&lab).unwrap();
    assert_eq!(report.sums["a0"], 15);

    println!("PASS criterion 4: all labeled fixtures verify with the pinned root sums");
}

/// Deterministic spec list spanning every case tag, with edge counts up to
/// 200 and component counts up to 10.
fn coverage_specs() -> Vec<(ForestSpec, CaseTag)> {
    let mut specs = Vec::new();
    let mut push = |components: usize, edges: usize, degree2: bool, seed: u64, tag: CaseTag| {
        specs.push((
            ForestSpec {
                components,
                edges,
                degree2,
                seed,
            },
            tag,
        ));
    };
    for seed in 0..40 {
        // Single trees.
        push(1, 12 + 2 * (seed as usize % 5), false, seed, CaseTag::TreeEven);
        push(1, 151 + 2 * (seed as usize % 4), false, seed, CaseTag::TreeOdd);
        push(1, 13 + 2 * (seed as usize % 5), true, seed, CaseTag::TreeOdd);
        // Odd forests.
        push(2, 7 + 2 * (seed as usize % 7), false, seed, CaseTag::Case1_1);
        push(5, 101, false, seed, CaseTag::Case1_1);
        push(2, 9 + 2 * (seed as usize % 6), true, seed, CaseTag::Case1_2);
        push(7, 199, true, seed, CaseTag::Case1_2);
        // Even forests.
        push(2, 8 + 2 * (seed as usize % 6), false, seed, CaseTag::Case2_1);
        push(10, 200, false, seed, CaseTag::Case2_1);
        push(2, 6 + 2 * (seed as usize % 8), true, seed, CaseTag::Case2_2_1);
        push(2, 150, true, seed, CaseTag::Case2_2_1);
        push(3, 10 + 2 * (seed as usize % 5), true, seed, CaseTag::Case2_2_2);
        push(10, 198, true, seed, CaseTag::Case2_2_2);
    }
    specs
}

#[test]
fn criterion_5_constructive_guarantee() {
    let start = Instant::now();
    let specs = coverage_specs();
    let mut tag_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0usize;
    for (spec, expected_tag) in &specs {
        let f = generate_forest(spec).unwrap_or_else(|e| panic!("{:?}: {}", spec, e));
        let (lab, plan) = label_forest_with_plan(&f)
            .unwrap_or_else(|e| panic!("labeling failed for {:?}: {}", spec, e));
        assert_eq!(plan.case, *expected_tag, "case dispatch for {:?}", spec);
        let report = vertex_sums(&lab).unwrap();
        assert!(report.is_antimagic, "collision for {:?}", spec);
        *tag_counts.entry(plan.case.to_string()).or_default() += 1;
        total += 1;
    }
    assert!(total >= 500, "only {} instances", total);
    for tag in ["Case1_1", "Case1_2", "Case2_1", "Case2_2_1", "Case2_2_2"] {
        assert!(
            tag_counts.get(tag).copied().unwrap_or(0) > 0,
            "case {} not covered",
            tag
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {:?}", elapsed);
    println!(
        "PASS criterion 5: {} generated forests labeled and verified in {:?} ({:?})",
        total, elapsed, tag_counts
    );
}

#[test]
fn criterion_6_case_contracts() {
    let mut seen_2_2_1 = 0;
    let mut seen_1_2 = 0;
    let mut seen_2_2_2 = 0;
    for (spec, tag) in coverage_specs() {
        if !matches!(tag, CaseTag::Case1_2 | CaseTag::Case2_2_1 | CaseTag::Case2_2_2) {
            continue;
        }
        let f = generate_forest(&spec).unwrap();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        let m = f.edge_count() as u64;
        let report = vertex_sums(&lab).unwrap();
        match plan.case {
            CaseTag::Case2_2_1 => {
                // Degree-2 root at exactly m+1; branching root at >= 2(m+1).
                let w1 = &plan.roots[f.component_of(&f.analyze().degree2_vertices[0]).unwrap()];
                assert_eq!(report.sums[w1.as_str()], m + 1);
                let w2 = plan.roots.iter().find(|r| *r != w1).unwrap();
                assert!(report.sums[w2.as_str()] >= 2 * (m + 1));
                seen_2_2_1 += 1;
            }
            CaseTag::Case1_2 => {
                let d2 = f.analyze().degree2_vertices[0].clone();
                match &plan.special_edges[..] {
                    [SpecialEdge::MaxLabel(e)] => {
                        assert_eq!(lab.label(e), m, "largest label on the degree-2 out-edge");
                        assert!(e.touches(&d2));
                    }
                    other => panic!("expected a pinned edge, got {:?}", other),
                }
                seen_1_2 += 1;
            }
            CaseTag::Case2_2_2 => {
                let d2 = f.analyze().degree2_vertices[0].clone();
                let incident: u64 = lab.incident_sum(&d2);
                assert_eq!(incident, m + 1, "degree-2 root edges form a B-pair");
                seen_2_2_2 += 1;
            }
            _ => unreachable!(),
        }
    }
    assert!(seen_2_2_1 > 0 && seen_1_2 > 0 && seen_2_2_2 > 0);
    println!(
        "PASS criterion 6: case contracts held on {}+{}+{} instances",
        seen_2_2_1, seen_1_2, seen_2_2_2
    );
}

#[test]
fn criterion_7_oracle_consistency() {
    let start = Instant::now();

    // K2 has no antimagic labeling.
    let k2 = Forest::from_edges([("a", "b")]).unwrap();
    assert_eq!(
        oracle_search(&k2, OracleMode::Count, 9).unwrap(),
        OracleOutcome::Count(0)
    );

    let mut instances = 0usize;
    for s in 1..=2usize {
        for m in 1..=7usize {
            for degree2 in [false, true] {
                for seed in 0..5u64 {
                    let spec = ForestSpec {
                        components: s,
                        edges: m,
                        degree2,
                        seed,
                    };
                    let Ok(f) = generate_forest(&spec) else {
                        continue;
                    };
                    let (lab, _) = label_forest_with_plan(&f).unwrap();
                    let certified = match oracle_search(&f, OracleMode::All, 9).unwrap() {
                        OracleOutcome::All(ws) => ws,
                        _ => unreachable!(),
                    };
                    assert!(!certified.is_empty(), "no witness for {:?}", spec);
                    let ours = lab.label_vector();
                    assert!(
                        certified.iter().any(|w| w.label_vector() == ours),
                        "constructed labeling not among the oracle's for {:?}",
                        spec
                    );
                    instances += 1;
                }
            }
        }
    }
    assert!(instances > 0);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {:?}", elapsed);
    println!(
        "PASS criterion 7: {} small forests certified by exhaustive search in {:?}",
        instances, elapsed
    );
}

#[test]
fn criterion_8_sum_conservation() {
    let mut checked = 0usize;
    // Constructed labelings.
    for (spec, _) in coverage_specs().into_iter().step_by(5) {
        let f = generate_forest(&spec).unwrap();
        let (lab, _) = label_forest_with_plan(&f).unwrap();
        let report = vertex_sums(&lab).unwrap();
        let m = f.edge_count() as u64;
        assert_eq!(report.sums.values().sum::<u64>(), m * (m + 1));
        checked += 1;
    }
    // Fixture labelings.
    for name in [
        "tree_m22.edges",
        "forest_s2_m11.edges",
        "forest_s2_m9_deg2.edges",
        "forest_s2_m12_deg2.edges",
        "forest_s3_m14_deg2.edges",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let lab = antimagic_core::parse_labeled(&text).unwrap();
        let report = vertex_sums(&lab).unwrap();
        let m = lab.forest().edge_count() as u64;
        assert_eq!(report.sums.values().sum::<u64>(), m * (m + 1));
        checked += 1;
    }
    // Every labeling the oracle emits.
    let p4 = Forest::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
    if let OracleOutcome::All(ws) = oracle_search(&p4, OracleMode::All, 9).unwrap() {
        for lab in ws {
            let report = vertex_sums(&lab).unwrap();
            assert_eq!(report.sums.values().sum::<u64>(), 3 * 4);
            checked += 1;
        }
    }
    println!(
        "PASS criterion 8: sum conservation held on {} labelings",
        checked
    );
}

#[test]
fn roots_flatten_back_to_the_edge_set() {
    // Rooting is lossless: parent pointers regenerate the edge set.
    let f = generate_forest(&ForestSpec {
        components: 3,
        edges: 20,
        degree2: true,
        seed: 3,
    })
    .unwrap();
    let roots: Vec<String> = (0..f.component_count())
        .map(|c| f.component_vertices(c)[0].to_string())
        .collect();
    let rf = root_components(&f, &roots).unwrap();
    let mut edges: Vec<antimagic_core::Edge> = f
        .vertices()
        .filter_map(|v| rf.parent(v).map(|p| antimagic_core::Edge::new(p, v)))
        .collect();
    edges.sort();
    assert_eq!(edges, f.canonical_edges());
}
