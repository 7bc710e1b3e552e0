//! Acceptance suite. Prints one line per criterion and exits non-zero on any failure that
//! is not listed in `RECORDED_GAPS`. All comparisons are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use multicross::census::{self, build_invariant_table, load_fixtures, InvariantTable};
use multicross::diagram::{two_crossing_corpus, MultiCrossingDiagram, SpanReport, Wiring};
use multicross::laws::{self, LawReport};
use multicross::skein::{all_types, build_relation, realized_widths, relation_width, CrossingType};
use multicross::splits::enumerate_splits;

const SEED: u64 = 1;
const ORACLE_SAMPLES_AT_SIX: usize = 500;
const CORPUS_SIZE: usize = 100;

/// Criteria known to fail, with the exact reason they fail.
const RECORDED_GAPS: &[(u32, &str)] = &[(13, "9_42 not found at n=6")];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixtures() -> &'static [(String, MultiCrossingDiagram)] {
    static F: OnceLock<Vec<(String, MultiCrossingDiagram)>> = OnceLock::new();
    F.get_or_init(|| load_fixtures(&fixture_dir()).expect("fixtures load"))
}

fn fixture(name: &str) -> &'static MultiCrossingDiagram {
    &fixtures().iter().find(|(n, _)| n == name).expect("fixture present").1
}

fn table() -> &'static InvariantTable {
    static T: OnceLock<InvariantTable> = OnceLock::new();
    T.get_or_init(|| build_invariant_table(fixtures()).expect("table builds"))
}

fn triple_trefoil() -> MultiCrossingDiagram {
    MultiCrossingDiagram::load(&fixture_dir().join("trefoil_triple.json")).expect("triple trefoil loads")
}

/// Every (type, exterior) single-crossing diagram of order `n`.
fn single_crossings(n: usize) -> Vec<MultiCrossingDiagram> {
    let exteriors = enumerate_splits(n).unwrap();
    let mut out = Vec::new();
    for t in all_types(n).unwrap() {
        for e in &exteriors {
            out.push(MultiCrossingDiagram::single_crossing(t.clone(), e).unwrap());
        }
    }
    out
}

fn corpus() -> &'static [MultiCrossingDiagram] {
    static C: OnceLock<Vec<MultiCrossingDiagram>> = OnceLock::new();
    C.get_or_init(|| two_crossing_corpus(SEED, CORPUS_SIZE, 3..=5).expect("corpus builds"))
}

/// Span reports for every single-crossing diagram with n = 2..=6, the corpus, the fixtures
/// and the doubled triple trefoil, labelled by origin.
fn span_reports() -> &'static [(String, SpanReport)] {
    static R: OnceLock<Vec<(String, SpanReport)>> = OnceLock::new();
    R.get_or_init(|| {
        let mut out = Vec::new();
        for n in 2..=6 {
            for (i, d) in single_crossings(n).iter().enumerate() {
                out.push((format!("single n={n} #{i}"), d.verify_span_bound().unwrap()));
            }
        }
        for (i, d) in corpus().iter().enumerate() {
            out.push((format!("corpus #{i}"), d.verify_span_bound().unwrap()));
        }
        for (name, d) in fixtures() {
            out.push((format!("fixture {name}"), d.verify_span_bound().unwrap()));
        }
        let triple = triple_trefoil();
        out.push(("trefoil_triple".into(), triple.verify_span_bound().unwrap()));
        out.push(("trefoil_triple doubled".into(), triple.double_order(0).unwrap().verify_span_bound().unwrap()));
        out
    })
}

fn law_outcome(reports: Vec<LawReport>) -> Outcome {
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.holds())
        .map(|r| format!("{} n={}: {} violations, e.g. {:?}", r.law, r.n, r.violation_count, r.violations.first()))
        .collect();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    if failing.is_empty() {
        outcome(true, format!("{} laws, {checked} instances, 0 violations", reports.len()))
    } else {
        outcome(false, failing.join("; "))
    }
}

fn c1() -> Outcome {
    let widths: Vec<u32> = (2..=8).map(|n| relation_width(&CrossingType::standard(n).unwrap()).unwrap()).collect();
    let expected = vec![2, 4, 8, 12, 18, 24, 32];
    let floors: Vec<u32> = (2..=8u32).map(|n| n * n / 2).collect();
    outcome(widths == expected && widths == floors, format!("w(12..n), n=2..8: {widths:?}, expected {expected:?}"))
}

fn c2() -> Outcome {
    law_outcome((2..=8).map(|n| laws::width_bound(n).unwrap()).collect())
}

fn c3() -> Outcome {
    let expected: BTreeMap<usize, Vec<u32>> = BTreeMap::from([
        (5, vec![8, 12]),
        (6, vec![14, 16, 18]),
        (7, vec![16, 20, 24]),
        (8, vec![24, 26, 28, 30, 32]),
    ]);
    let mut pass = true;
    let mut detail = Vec::new();
    for (n, want) in &expected {
        let got = realized_widths(*n).unwrap();
        let keys: Vec<u32> = got.keys().copied().collect();
        pass &= &keys == want;
        if *n == 5 {
            pass &= got.values().copied().collect::<Vec<_>>() == vec![2, 22];
        }
        detail.push(format!("n={n} {got:?}"));
    }
    outcome(pass, detail.join(", "))
}

fn c4() -> Outcome {
    let rel = build_relation(&"12345".parse().unwrap()).unwrap();
    let hist: Vec<u64> = rel.histogram().into_iter().rev().map(|(_, m)| m).collect();
    let powers: Vec<i32> = rel.histogram().keys().rev().copied().collect();
    let support = rel.support().len();
    let hard = rel.width() == 12 && powers == (-5..=1).rev().map(|k| 2 * k).collect::<Vec<_>>();
    let figure = hist == [5, 12, 16, 14, 9, 4, 1] && support == 42;
    outcome(
        hard && figure,
        format!("width {}, powers {powers:?}, histogram {hist:?}, support {support}", rel.width()),
    )
}

fn c5() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |d: &MultiCrossingDiagram, label: String| {
        checked += 1;
        let b = d.bracket().unwrap();
        for wiring in [Wiring::Bubble, Wiring::Insertion] {
            if d.perturb_with(wiring).bracket_oracle().unwrap() != b {
                bad.push(format!("{label} ({wiring:?})"));
            }
        }
    };
    for n in 2..=5 {
        for (i, d) in single_crossings(n).iter().enumerate() {
            check(d, format!("n={n} #{i}"));
        }
    }
    let mut six = single_crossings(6);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEED);
    six.shuffle(&mut rng);
    for (i, d) in six.iter().take(ORACLE_SAMPLES_AT_SIX).enumerate() {
        check(d, format!("n=6 sample {i}"));
    }
    outcome(bad.is_empty(), format!("{checked} diagrams, two wirings each, {} mismatches {bad:?}", bad.len()))
}

fn c6() -> Outcome {
    law_outcome((1..=6).map(|n| laws::distance_matches_closure(n).unwrap()).collect())
}

fn c7() -> Outcome {
    let mut reports = Vec::new();
    for n in 2..=6 {
        reports.push(laws::rotation_step_bound(n).unwrap());
        reports.push(laws::rotation_reach_bound(n).unwrap());
    }
    for n in 2..=5 {
        reports.push(laws::double_overstrand_bound(n).unwrap());
        reports.push(laws::power_gap_bound(n).unwrap());
    }
    law_outcome(reports)
}

fn c8() -> Outcome {
    let mut reports = Vec::new();
    for n in 3..=6 {
        reports.push(laws::high_low_directions(n).unwrap());
        reports.push(laws::high_low_disjoint(n).unwrap());
        reports.push(laws::high_low_distance(n).unwrap());
    }
    law_outcome(reports)
}

fn bound_outcome(names: &[&str]) -> Outcome {
    let mut checked = BTreeMap::new();
    let mut bad = Vec::new();
    for (label, r) in span_reports() {
        if r.size_smax.is_none() || r.size_smin.is_none() {
            bad.push(format!("{label}: no all-high or all-low extreme state"));
        }
        for c in r.checks.iter().filter(|c| names.contains(&c.name.as_str())) {
            *checked.entry(c.name.clone()).or_insert(0usize) += 1;
            if !c.holds {
                bad.push(format!("{label}: {} {} > {}", c.name, c.value, c.bound));
            }
        }
    }
    let all_present = names.iter().all(|n| checked.contains_key(*n));
    let shown: Vec<&String> = bad.iter().take(5).collect();
    outcome(bad.is_empty() && all_present, format!("{} diagrams, checks {checked:?}, {} violations {shown:?}", span_reports().len(), bad.len()))
}

fn c9() -> Outcome {
    bound_outcome(&["extreme state components"])
}

fn c10() -> Outcome {
    bound_outcome(&["span per crossing", "5-crossing type bound", "petal bound"])
}

fn c11() -> Outcome {
    let mut spans = Vec::new();
    for name in ["3_1", "4_1"] {
        let d = fixture(name);
        spans.push(d.bracket().unwrap().span().unwrap());
        spans.push(d.bracket_oracle().unwrap().span().unwrap());
    }
    outcome(spans == [12, 12, 16, 16], format!("3_1 {:?}, 4_1 {:?} (skein, oracle)", &spans[..2], &spans[2..]))
}

fn census_at(n: usize) -> &'static census::CensusResult {
    static R: [OnceLock<census::CensusResult>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    R[n - 5].get_or_init(|| census::census(n, table()).unwrap())
}

fn c12() -> Outcome {
    let r = census_at(5);
    let found = r.found_names();
    let want: BTreeSet<String> = ["3_1", "4_1"].iter().map(|s| s.to_string()).collect();
    let recheck = r.reverify(table());
    outcome(
        found == want && r.unknown.is_empty() && recheck.is_empty(),
        format!("{} candidates, found {found:?}, {} unknown, {} reverify failures", r.candidates, r.unknown.len(), recheck.len()),
    )
}

fn c13() -> Outcome {
    let r = census_at(6);
    let found = r.found_names();
    let want = [
        "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "3_1#3_1", "3_1#m3_1", "8_19", "8_20", "8_21", "9_42",
    ];
    let missing: Vec<&str> = want.iter().copied().filter(|k| !found.contains(*k)).collect();
    let surplus: Vec<&String> = found.iter().filter(|k| !want.contains(&k.as_str())).collect();
    let has_71 = found.contains("7_1");
    let recheck = r.reverify(table());
    let first_seen: Vec<String> = missing
        .iter()
        .map(|k| {
            let at7 = census_at(7).found_names().contains(*k);
            format!("{k} {}", if at7 { "found at n=7" } else { "not found at n=7" })
        })
        .collect();
    let pass = missing.is_empty() && !has_71 && recheck.is_empty();
    let mut detail = format!(
        "{} candidates, found {found:?}, missing {missing:?}, surplus {surplus:?}, 7_1 {}, {} unknown",
        r.candidates,
        if has_71 { "present" } else { "absent" },
        r.unknown.len()
    );
    if !first_seen.is_empty() {
        detail.push_str(&format!(", {}", first_seen.join(", ")));
    }
    if !pass && missing == ["9_42"] && !has_71 && recheck.is_empty() && census_at(7).found_names().contains("9_42") {
        detail = format!("{}; {detail}", RECORDED_GAPS[0].1);
    }
    outcome(pass, detail)
}

fn c14() -> Outcome {
    let triple = triple_trefoil();
    let jones = triple.jones().unwrap();
    let mut detail = Vec::new();
    let mut pass = jones == fixture("3_1").jones().unwrap();
    for basepoint in 0..triple.edges.len() {
        let d = triple.double_order(basepoint).unwrap();
        let ok = d.order_counts() == BTreeMap::from([(6, 2)]) && d.jones().unwrap() == jones && d.is_planar().unwrap();
        pass &= ok;
        detail.push(format!("edge {basepoint}: {:?}", d.order_counts()));
    }
    outcome(pass, format!("{}, Jones of 3_1 kept on every basepoint: {pass}", detail.join(", ")))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "width of 12..n", c1),
        (2, "width bound", c2),
        (3, "realized widths", c3),
        (4, "relation of 12345", c4),
        (5, "oracle equivalence", c5),
        (6, "split distance law", c6),
        (7, "rotation and surgery laws", c7),
        (8, "high and low laws", c8),
        (9, "component bound", c9),
        (10, "span bounds", c10),
        (11, "classical spans", c11),
        (12, "census n=5", c12),
        (13, "census n=6", c13),
        (14, "doubling (stretch)", c14),
    ];
    let (mut passed, mut recorded, mut unexpected) = (0, 0, 0);
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let gap = RECORDED_GAPS.iter().find(|(g, reason)| *g == id && o.detail.starts_with(reason));
        let verdict = match (o.pass, gap) {
            (true, _) => {
                passed += 1;
                "PASS"
            }
            (false, Some(_)) => {
                recorded += 1;
                "FAIL (recorded)"
            }
            (false, None) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {id:>2} {verdict}: {name} [exact] {:.1}s | {}", secs, o.detail);
    }
    println!("acceptance: {passed} passed, {recorded} recorded failures, {unexpected} unexpected failures");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
