use std::collections::BTreeMap;
use std::path::PathBuf;

use multicross::census::{build_invariant_table, load_fixtures, Chirality};
use multicross::LaurentPoly;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn reference() -> BTreeMap<String, LaurentPoly> {
    let text = std::fs::read_to_string(fixture_dir().join("reference_jones.json")).unwrap();
    let raw: BTreeMap<String, Vec<(i64, i64)>> = serde_json::from_str(&text).unwrap();
    raw.into_iter().map(|(k, v)| (k, LaurentPoly::from_terms(v))).collect()
}

fn part_jones(reference: &BTreeMap<String, LaurentPoly>, part: &str) -> LaurentPoly {
    match reference.get(part) {
        Some(j) => j.clone(),
        None => reference[part.strip_prefix('m').unwrap()].mirror(),
    }
}

#[test]
fn prime_fixtures_match_reference_jones() {
    let reference = reference();
    let fixtures = load_fixtures(&fixture_dir()).unwrap();
    let mut checked = 0;
    for (name, d) in &fixtures {
        let expected = match reference.get(name) {
            Some(j) => j.clone(),
            None => name.split('#').map(|p| part_jones(&reference, p)).fold(LaurentPoly::one(), |a, b| &a * &b),
        };
        assert_eq!(d.components(), 1, "{name}");
        assert_eq!(d.jones().unwrap(), expected, "{name} via skein terms");
        assert_eq!(d.jones_oracle().unwrap(), expected, "{name} via double crossings");
        checked += 1;
    }
    assert_eq!(checked, 85 + 15);
}

#[test]
fn full_table_has_no_collisions() {
    let fixtures = load_fixtures(&fixture_dir()).unwrap();
    let table = build_invariant_table(&fixtures).unwrap();
    assert_eq!(table.len(), fixtures.len());
    let square = table.get("3_1#m3_1").unwrap().jones();
    assert_eq!(table.identify(&square).unwrap().chirality, Chirality::Amphichiral);
    let granny = table.get("3_1#3_1").unwrap().jones();
    assert_eq!(table.identify(&granny.mirror()).unwrap().display_name(), "m3_1#3_1");
}

#[test]
fn jones_equal_composite_is_reported() {
    let mut fixtures = load_fixtures(&fixture_dir()).unwrap();
    let eight = fixtures.iter().find(|(n, _)| n == "4_1").unwrap().1.clone();
    fixtures.push(("4_1#4_1".into(), eight.connect_sum(0, &eight, 0).unwrap()));
    let err = build_invariant_table(&fixtures).unwrap_err();
    assert_eq!(err.to_string(), "8_9 and 4_1#4_1 have the same Jones polynomial up to mirror image");
}
