//! Exhaustive search over diagrams with one multi-crossing, identified by Jones
//! polynomial against a table built from double-crossing fixtures.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, MultiCrossingDiagram};
use crate::laurent::LaurentPoly;
use crate::skein::{all_types, build_relation, CrossingType, SkeinError, SkeinRelation};
use crate::splits::{closure_count_tables, enumerate_splits, Split, SplitError};

pub const MIN_ORDER: usize = 3;
pub const MAX_ORDER: usize = 7;

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("census order {0} outside {MIN_ORDER}..={MAX_ORDER}")]
    Order(usize),
    #[error("petal diagrams need an odd number of strands, got {0}")]
    EvenPetal(usize),
    #[error("{first} and {second} have the same Jones polynomial up to mirror image")]
    Collision { first: String, second: String },
    #[error("fixture {0} is not a knot")]
    NotAKnot(String),
    #[error("composite {0} names unknown part {1}")]
    UnknownPart(String, String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Split(#[from] SplitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Same,
    Mirror,
    Amphichiral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub name: String,
    pub chirality: Chirality,
}

impl Identification {
    /// Name with an `m` prefix when the mirror image matched.
    pub fn display_name(&self) -> String {
        match self.chirality {
            Chirality::Mirror => format!("m{}", self.name),
            _ => self.name.clone(),
        }
    }
}

pub type JonesKey = Vec<(i64, BigInt)>;

/// The smaller of the machine forms of `j` and its mirror image.
pub fn canonical_key(j: &LaurentPoly) -> JonesKey {
    let (a, b) = (j.machine_form(), j.mirror().machine_form());
    a.min(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub jones_machine_form: Vec<(i64, BigInt)>,
}

impl TableEntry {
    pub fn jones(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.jones_machine_form.iter().cloned())
    }
}

/// Known knots keyed by Jones polynomial up to mirror image.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantTable {
    entries: BTreeMap<JonesKey, TableEntry>,
}

impl InvariantTable {
    pub fn from_entries(entries: Vec<TableEntry>) -> Result<Self, CensusError> {
        let mut table = Self::default();
        for e in entries {
            table.insert(e)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, entry: TableEntry) -> Result<(), CensusError> {
        let key = canonical_key(&entry.jones());
        if let Some(old) = self.entries.get(&key) {
            return Err(CensusError::Collision { first: old.name.clone(), second: entry.name });
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by name.
    pub fn entries(&self) -> Vec<&TableEntry> {
        let mut out: Vec<&TableEntry> = self.entries.values().collect();
        out.sort_by(|a, b| name_order(&a.name, &b.name));
        out
    }

    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        self.entries.values().find(|e| e.name == name)
    }

    pub fn identify(&self, j: &LaurentPoly) -> Option<Identification> {
        let entry = self.entries.get(&canonical_key(j))?;
        let stored = entry.jones();
        let chirality = if stored == stored.mirror() {
            Chirality::Amphichiral
        } else if &stored == j {
            Chirality::Same
        } else {
            Chirality::Mirror
        };
        Some(Identification { name: entry.name.clone(), chirality })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries()).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CensusError> {
        let entries: Vec<TableEntry> = serde_json::from_str(text).map_err(|e| CensusError::Io(e.to_string()))?;
        Self::from_entries(entries)
    }

    pub fn load(path: &Path) -> Result<Self, CensusError> {
        let text = std::fs::read_to_string(path).map_err(|e| CensusError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), CensusError> {
        std::fs::write(path, self.to_json() + "\n").map_err(|e| CensusError::Io(format!("{}: {e}", path.display())))
    }
}

/// Orders knot names by crossing number, then index, then anything else.
pub fn name_order(a: &str, b: &str) -> std::cmp::Ordering {
    fn rank(name: &str) -> (usize, usize, usize, String) {
        let parts = name.split('#').count();
        let first = name.split('#').next().unwrap_or("").trim_start_matches('m');
        let mut it = first.split('_').map(|x| x.parse::<usize>().unwrap_or(usize::MAX));
        let (c, i) = (it.next().unwrap_or(usize::MAX), it.next().unwrap_or(usize::MAX));
        (parts, c, i, name.to_string())
    }
    rank(a).cmp(&rank(b))
}

/// A composite built from fixture knots; parts prefixed with `m` are mirrored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub name: String,
    pub parts: Vec<String>,
}

/// Reads `knots/*.json` from `dir`, plus composites listed in `composites.json` if
/// present. Returned in name order.
pub fn load_fixtures(dir: &Path) -> Result<Vec<(String, MultiCrossingDiagram)>, CensusError> {
    let io = |e: std::io::Error| CensusError::Io(format!("{}: {e}", dir.display()));
    let mut primes = BTreeMap::new();
    let knots = dir.join("knots");
    for entry in std::fs::read_dir(&knots).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        primes.insert(name, MultiCrossingDiagram::load(&path)?);
    }
    let mut out: Vec<(String, MultiCrossingDiagram)> = primes.clone().into_iter().collect();
    let composites = dir.join("composites.json");
    if composites.exists() {
        let text = std::fs::read_to_string(&composites).map_err(io)?;
        let specs: Vec<CompositeSpec> = serde_json::from_str(&text).map_err(|e| CensusError::Io(e.to_string()))?;
        for spec in specs {
            out.push((spec.name.clone(), compose_parts(&spec, &primes)?));
        }
    }
    out.sort_by(|a, b| name_order(&a.0, &b.0));
    Ok(out)
}

fn compose_parts(spec: &CompositeSpec, primes: &BTreeMap<String, MultiCrossingDiagram>) -> Result<MultiCrossingDiagram, CensusError> {
    let mut acc = MultiCrossingDiagram::unknot();
    for part in &spec.parts {
        let (base, mirrored) = match primes.get(part) {
            Some(d) => (d, false),
            None => match part.strip_prefix('m').and_then(|p| primes.get(p)) {
                Some(d) => (d, true),
                None => return Err(CensusError::UnknownPart(spec.name.clone(), part.clone())),
            },
        };
        let piece = if mirrored { base.mirror() } else { base.clone() };
        acc = acc.connect_sum(0, &piece, 0)?;
    }
    Ok(acc)
}

/// Jones polynomials of the fixtures through the perturbed double-crossing bracket.
pub fn build_invariant_table(fixtures: &[(String, MultiCrossingDiagram)]) -> Result<InvariantTable, CensusError> {
    let computed: Vec<Result<TableEntry, CensusError>> = fixtures
        .par_iter()
        .map(|(name, d)| {
            let j = d.jones_oracle().map_err(|e| match e {
                DiagramError::NotAKnot(_) => CensusError::NotAKnot(name.clone()),
                other => other.into(),
            })?;
            Ok(TableEntry { name: name.clone(), jones_machine_form: j.machine_form() })
        })
        .collect();
    let mut table = InvariantTable::default();
    for entry in computed {
        table.insert(entry?)?;
    }
    Ok(table)
}

/// Single crossing of order `p` whose spokes `2k` and `2k + 1` are joined outside.
pub fn petal_diagram(heights: &[u8]) -> Result<MultiCrossingDiagram, CensusError> {
    let p = heights.len();
    if p.is_multiple_of(2) {
        return Err(CensusError::EvenPetal(p));
    }
    let t = CrossingType::new(heights.to_vec())?;
    let pairs: Vec<(usize, usize)> = (0..p).map(|k| (2 * k, 2 * k + 1)).collect();
    let exterior = Split::from_pairs(p, &pairs)?;
    Ok(MultiCrossingDiagram::single_crossing(t, &exterior)?)
}

/// Through-strand matching of a single crossing: spoke `k` to spoke `k + n`.
fn antipodal(n: usize) -> Vec<u8> {
    (0..2 * n).map(|k| ((k + n) % (2 * n)) as u8).collect()
}

fn check_order(n: usize) -> Result<(), CensusError> {
    if (MIN_ORDER..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(CensusError::Order(n))
    }
}

/// Every (type, exterior) pair at order `n`, types outermost, before any filtering.
pub fn single_crossing_candidates(n: usize) -> Result<Vec<(CrossingType, Split)>, CensusError> {
    check_order(n)?;
    let splits = enumerate_splits(n)?;
    let mut out = Vec::new();
    for t in all_types(n)? {
        for s in &splits {
            out.push((t.clone(), *s));
        }
    }
    Ok(out)
}

/// Exterior splits closing a single `n`-crossing into one component.
pub fn knot_exteriors(n: usize) -> Result<Vec<Split>, CensusError> {
    let through = antipodal(n);
    Ok(enumerate_splits(n)?
        .into_iter()
        .filter(|s| closure_count_tables(&through, s.partner_table()) == 1)
        .collect())
}

/// Single-crossing knot diagrams at order `n`, types outermost.
pub fn single_crossing_diagrams(n: usize) -> Result<Vec<MultiCrossingDiagram>, CensusError> {
    check_order(n)?;
    let exteriors = knot_exteriors(n)?;
    let mut out = Vec::new();
    for t in all_types(n)? {
        for s in &exteriors {
            out.push(MultiCrossingDiagram::single_crossing(t.clone(), s)?);
        }
    }
    Ok(out)
}

/// Bracket of a single crossing closed by `exterior`, read straight off its relation.
pub fn single_crossing_bracket(relation: &SkeinRelation, exterior: &Split) -> LaurentPoly {
    let mut by_loops: BTreeMap<usize, BTreeMap<i64, i64>> = BTreeMap::new();
    for term in &relation.terms {
        let loops = closure_count_tables(term.split.partner_table(), exterior.partner_table());
        *by_loops.entry(loops).or_default().entry(term.power as i64).or_insert(0) += term.multiplicity as i64;
    }
    let mut total = LaurentPoly::zero();
    for (loops, terms) in by_loops {
        let poly = LaurentPoly::from_terms(terms);
        total += &(&poly * &LaurentPoly::delta_power(loops as u32 - 1));
    }
    total
}

/// Single-crossing Jones polynomial: the crossing's own writhe needs no diagram walk.
fn single_crossing_jones(relation: &SkeinRelation, t: &CrossingType, exterior: &Split) -> Result<LaurentPoly, CensusError> {
    let d = MultiCrossingDiagram::single_crossing(t.clone(), exterior)?;
    let w = d.writhe(&Default::default());
    let sign = BigInt::from(if w % 2 == 0 { 1 } else { -1 });
    Ok(single_crossing_bracket(relation, exterior).shift(-3 * w).scale(&sign))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundKnot {
    pub name: String,
    pub chiralities: BTreeSet<Chirality>,
    /// Number of candidate diagrams realizing the knot.
    pub count: usize,
    /// First witness in enumeration order.
    pub witness: MultiCrossingDiagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownKnot {
    pub jones: String,
    pub count: usize,
    pub witness: MultiCrossingDiagram,
}

/// Knots found among the single-crossing diagrams of one order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub n: usize,
    pub candidates: usize,
    pub knot_diagrams: usize,
    pub unknots: usize,
    pub found: Vec<FoundKnot>,
    pub unknown: Vec<UnknownKnot>,
}

impl CensusResult {
    /// Names of the nontrivial knots found, without chirality.
    pub fn found_names(&self) -> BTreeSet<String> {
        self.found.iter().map(|f| f.name.clone()).collect()
    }

    /// Merges shards in the order given.
    pub fn merge(n: usize, shards: Vec<CensusShard>) -> Self {
        let mut out = CensusResult { n, ..Default::default() };
        let mut found: BTreeMap<String, FoundKnot> = BTreeMap::new();
        let mut unknown: BTreeMap<String, UnknownKnot> = BTreeMap::new();
        for shard in shards {
            out.candidates += shard.candidates;
            out.knot_diagrams += shard.knot_diagrams;
            out.unknots += shard.unknots;
            for f in shard.found {
                match found.get_mut(&f.name) {
                    Some(prev) => {
                        prev.count += f.count;
                        prev.chiralities.extend(f.chiralities);
                    }
                    None => {
                        found.insert(f.name.clone(), f);
                    }
                }
            }
            for u in shard.unknown {
                match unknown.get_mut(&u.jones) {
                    Some(prev) => prev.count += u.count,
                    None => {
                        unknown.insert(u.jones.clone(), u);
                    }
                }
            }
        }
        out.found = found.into_values().collect();
        out.found.sort_by(|a, b| name_order(&a.name, &b.name));
        out.unknown = unknown.into_values().collect();
        out
    }

    /// Recomputes every witness's Jones polynomial through the perturbed diagram and
    /// checks it is a single-crossing knot of the right order with the recorded name.
    /// Returns a description of each failure.
    pub fn reverify(&self, table: &InvariantTable) -> Vec<String> {
        let mut problems = Vec::new();
        for f in &self.found {
            let d = &f.witness;
            if d.crossings.len() != 1 || d.crossings[0].order != self.n {
                problems.push(format!("{}: witness is not a single {}-crossing", f.name, self.n));
                continue;
            }
            match d.jones_oracle() {
                Ok(j) => match table.identify(&j) {
                    Some(id) if id.name == f.name => {}
                    other => problems.push(format!("{}: witness re-identifies as {other:?}", f.name)),
                },
                Err(e) => problems.push(format!("{}: {e}", f.name)),
            }
        }
        problems
    }
}

/// Census work for one crossing type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusShard {
    pub crossing: Option<CrossingType>,
    pub candidates: usize,
    pub knot_diagrams: usize,
    pub unknots: usize,
    pub found: Vec<FoundKnot>,
    pub unknown: Vec<UnknownKnot>,
}

/// Identifies every knot diagram with crossing type `t`.
pub fn census_shard(t: &CrossingType, exteriors: &[Split], candidates: usize, table: &InvariantTable) -> Result<CensusShard, CensusError> {
    let relation = build_relation(t)?;
    let mut shard = CensusShard { crossing: Some(t.clone()), candidates, ..Default::default() };
    let mut found: BTreeMap<String, FoundKnot> = BTreeMap::new();
    let mut unknown: BTreeMap<String, UnknownKnot> = BTreeMap::new();
    for s in exteriors {
        shard.knot_diagrams += 1;
        let j = single_crossing_jones(&relation, t, s)?;
        if j == LaurentPoly::one() {
            shard.unknots += 1;
            continue;
        }
        let witness = || MultiCrossingDiagram::single_crossing(t.clone(), s).expect("valid candidate");
        match table.identify(&j) {
            Some(id) => {
                let entry = found.entry(id.name.clone()).or_insert_with(|| FoundKnot {
                    name: id.name.clone(),
                    chiralities: BTreeSet::new(),
                    count: 0,
                    witness: witness(),
                });
                entry.count += 1;
                entry.chiralities.insert(id.chirality);
            }
            None => {
                let key = j.to_string();
                unknown.entry(key.clone()).or_insert_with(|| UnknownKnot { jones: key, count: 0, witness: witness() }).count += 1;
            }
        }
    }
    shard.found = found.into_values().collect();
    shard.unknown = unknown.into_values().collect();
    Ok(shard)
}

/// Crossing types of order `n` in enumeration order; one shard each.
pub fn census_types(n: usize) -> Result<Vec<CrossingType>, CensusError> {
    check_order(n)?;
    Ok(all_types(n)?)
}

/// Runs the single-crossing census at order `n`.
pub fn census(n: usize, table: &InvariantTable) -> Result<CensusResult, CensusError> {
    let types = census_types(n)?;
    let exteriors = knot_exteriors(n)?;
    let per_type = enumerate_splits(n)?.len();
    let shards: Result<Vec<CensusShard>, CensusError> =
        types.par_iter().map(|t| census_shard(t, &exteriors, per_type, table)).collect();
    Ok(CensusResult::merge(n, shards?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub name: String,
    /// Least order with a single-crossing witness.
    pub minimal_order: Option<usize>,
    /// Orders with a single-crossing witness.
    pub orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub max_n: usize,
    pub rows: Vec<SpectrumRow>,
    /// Knots found at order `n` but not at order `2n` when both were searched.
    pub doubling_gaps: Vec<String>,
}

/// Least single-crossing order per table knot, from censuses at consecutive orders.
pub fn spectrum_report(table: &InvariantTable, results: &[CensusResult]) -> SpectrumReport {
    let max_n = results.iter().map(|r| r.n).max().unwrap_or(0);
    let mut rows = Vec::new();
    for entry in table.entries() {
        let orders: Vec<usize> = results
            .iter()
            .filter(|r| r.found.iter().any(|f| f.name == entry.name))
            .map(|r| r.n)
            .collect();
        let unknot = entry.jones() == LaurentPoly::one();
        let minimal_order = if unknot { results.iter().map(|r| r.n).min() } else { orders.iter().copied().min() };
        rows.push(SpectrumRow { name: entry.name.clone(), minimal_order, orders });
    }
    let mut doubling_gaps = Vec::new();
    for r in results {
        if let Some(double) = results.iter().find(|d| d.n == 2 * r.n) {
            for name in r.found_names() {
                if !double.found_names().contains(&name) {
                    doubling_gaps.push(format!("{name}: found at {} but not at {}", r.n, double.n));
                }
            }
        }
    }
    SpectrumReport { max_n, rows, doubling_gaps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_table() -> InvariantTable {
        let trefoil = MultiCrossingDiagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap();
        let eight = MultiCrossingDiagram::from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap();
        let fixtures = vec![
            ("0_1".to_string(), MultiCrossingDiagram::unknot()),
            ("3_1".to_string(), trefoil),
            ("4_1".to_string(), eight),
        ];
        build_invariant_table(&fixtures).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(single_crossing_candidates(3).unwrap().len(), 10);
        assert_eq!(single_crossing_candidates(5).unwrap().len(), 1008);
        assert!(matches!(single_crossing_candidates(2), Err(CensusError::Order(2))));
        assert!(matches!(single_crossing_candidates(8), Err(CensusError::Order(8))));
    }

    #[test]
    fn fast_bracket_matches_state_sum() {
        for n in 3..=5 {
            for (t, s) in single_crossing_candidates(n).unwrap() {
                let d = MultiCrossingDiagram::single_crossing(t.clone(), &s).unwrap();
                let relation = build_relation(&t).unwrap();
                assert_eq!(single_crossing_bracket(&relation, &s), d.bracket().unwrap());
            }
        }
    }

    #[test]
    fn petals() {
        for heights in [[1, 2, 3], [1, 3, 2]] {
            let d = petal_diagram(&heights).unwrap();
            assert_eq!(d.components(), 1);
            assert_eq!(d.traverse()[0], vec![(0, 0), (0, 2), (0, 4)]);
        }
        assert_eq!(petal_diagram(&[1, 2, 3, 4, 5]).unwrap().jones().unwrap(), LaurentPoly::one());
        assert!(matches!(petal_diagram(&[1, 2]), Err(CensusError::EvenPetal(2))));
        let table = small_table();
        let trefoil = all_types(5)
            .unwrap()
            .into_iter()
            .filter_map(|t| petal_diagram(t.heights()).unwrap().jones().ok())
            .any(|j| table.identify(&j).is_some_and(|id| id.name == "3_1"));
        assert!(trefoil);
    }

    #[test]
    fn table_identification() {
        let table = small_table();
        assert_eq!(table.len(), 3);
        assert_eq!(table.identify(&LaurentPoly::one()).unwrap().name, "0_1");
        let j = table.get("3_1").unwrap().jones();
        assert_eq!(table.identify(&j).unwrap().chirality, Chirality::Same);
        let m = table.identify(&j.mirror()).unwrap();
        assert_eq!((m.chirality, m.display_name().as_str()), (Chirality::Mirror, "m3_1"));
        let e = table.get("4_1").unwrap().jones();
        assert_eq!(canonical_key(&e), e.machine_form());
        assert_eq!(table.identify(&e).unwrap().chirality, Chirality::Amphichiral);
        assert!(table.identify(&LaurentPoly::monomial(4, 2)).is_none());
        let round = InvariantTable::from_json(&table.to_json()).unwrap();
        assert_eq!(round, table);
    }

    #[test]
    fn collisions_are_rejected() {
        let table = small_table();
        let mut entries: Vec<TableEntry> = table.entries().into_iter().cloned().collect();
        let mut copy = entries[1].clone();
        copy.name = "copy".into();
        copy.jones_machine_form = copy.jones().mirror().machine_form();
        entries.push(copy);
        let err = InvariantTable::from_entries(entries).unwrap_err();
        assert!(matches!(err, CensusError::Collision { .. }), "{err}");
    }

    #[test]
    fn census_at_five() {
        let table = small_table();
        let result = census(5, &table).unwrap();
        assert_eq!(result.candidates, 1008);
        assert_eq!(result.found_names(), ["3_1", "4_1"].iter().map(|s| s.to_string()).collect());
        assert!(result.unknown.is_empty(), "{:?}", result.unknown);
        assert!(result.reverify(&table).is_empty());
        let again = census(5, &table).unwrap();
        assert_eq!(serde_json::to_string(&again).unwrap(), serde_json::to_string(&result).unwrap());
    }

    #[test]
    fn spectrum_from_censuses() {
        let table = small_table();
        let results: Vec<CensusResult> = (3..=5).map(|n| census(n, &table).unwrap()).collect();
        let report = spectrum_report(&table, &results);
        let order = |name: &str| report.rows.iter().find(|r| r.name == name).unwrap().minimal_order;
        assert_eq!(order("3_1"), Some(4));
        assert_eq!(order("4_1"), Some(5));
    }
}
