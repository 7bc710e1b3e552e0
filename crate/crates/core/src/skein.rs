//! Crossing types and the n-skein relations they generate.
//!
//! A relation of order `n` is built from the relation of the type left after removing
//! the top strand: the strand is laid back over every term's split, each double
//! crossing it makes is smoothed as an A- or B-split, and equal offspring are merged.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::splits::{OverstrandPos, Split, SplitError, MAX_STRANDS};

/// Largest order for which relations are built.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SkeinError {
    #[error("order {0} out of range 2..={MAX_ORDER}")]
    Order(usize),
    #[error("heights {0:?} are not a permutation of 1..n starting with 1")]
    NotAType(Vec<u8>),
    #[error("cannot parse crossing type `{0}`")]
    Parse(String),
    #[error("spoke {0} out of range")]
    Spoke(usize),
    #[error(transparent)]
    Split(#[from] SplitError),
}

/// Heights of the strands met clockwise around a crossing, starting at the top strand.
///
/// Spoke `k` and spoke `k + n` lie on the same strand, so `heights[k]` is the height of
/// both.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingType {
    heights: Vec<u8>,
}

impl CrossingType {
    pub fn new(heights: Vec<u8>) -> Result<Self, SkeinError> {
        let n = heights.len();
        let mut seen = vec![false; n + 1];
        let ok = (1..=MAX_STRANDS).contains(&n)
            && heights[0] == 1
            && heights.iter().all(|&h| {
                let h = h as usize;
                (1..=n).contains(&h) && !std::mem::replace(&mut seen[h], true)
            });
        if ok {
            Ok(Self { heights })
        } else {
            Err(SkeinError::NotAType(heights))
        }
    }

    /// `<12…n>`: each strand sits immediately clockwise of the one above it.
    pub fn standard(n: usize) -> Result<Self, SkeinError> {
        Self::new((1..=n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    pub fn heights(&self) -> &[u8] {
        &self.heights
    }

    /// Height of the strand through `spoke` (any of the `2n` spokes).
    pub fn height_at(&self, spoke: usize) -> u8 {
        self.heights[spoke % self.n()]
    }

    /// The type seen in a mirror held along the diameter through spoke 0.
    pub fn reflect(&self) -> Self {
        let n = self.n();
        Self { heights: (0..n).map(|k| self.heights[(n - k) % n]).collect() }
    }

    /// Deletes the top strand and re-reads the remaining heights from the new top.
    ///
    /// Returns the smaller type together with the gap at which the removed strand
    /// has to be laid back on to recover `self` (see [`CrossingType::add_overstrand`]).
    pub fn remove_top(&self) -> Result<(CrossingType, OverstrandPos), SkeinError> {
        let n = self.n();
        if n < 3 {
            return Err(SkeinError::Order(n));
        }
        let m = n - 1;
        let j = self.heights.iter().position(|&h| h == 2).expect("valid type");
        let gap = n - j;
        let heights = (0..m).map(|q| self.height_at(child_spoke(m, gap, q)) - 1).collect();
        Ok((CrossingType { heights }, OverstrandPos::new(gap)))
    }

    /// Lays a new top strand across the crossing, entering just before point `gap`.
    pub fn add_overstrand(&self, gap: OverstrandPos) -> CrossingType {
        let m = self.n();
        let mut heights = Vec::with_capacity(m + 1);
        heights.push(1);
        heights.extend((0..m).map(|i| self.heights[(gap.gap + i) % m] + 1));
        CrossingType { heights }
    }
}

/// Spoke of the enlarged crossing occupied by point `p` of an order-`m` crossing when a
/// strand is laid on at `gap`. The new strand takes spokes `0` and `m + 1`.
pub(crate) fn child_spoke(m: usize, gap: usize, p: usize) -> usize {
    let q = (p + 2 * m - gap % (2 * m)) % (2 * m);
    if q < m {
        q + 1
    } else {
        q + 2
    }
}

impl fmt::Display for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for h in &self.heights {
                write!(f, "{h}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for CrossingType {
    type Err = SkeinError;

    /// Accepts a digit string such as `13524` or a bracketed list such as `[1,3,5,2,4]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('<').trim_end_matches('>');
        let err = || SkeinError::Parse(s.to_string());
        let heights: Vec<u8> = if let Some(body) = s.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(err)?;
            body.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| err())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(err)).collect::<Result<_, _>>()?
        };
        Self::new(heights)
    }
}

impl Serialize for CrossingType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.heights.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CrossingType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let heights = Vec::<u8>::deserialize(deserializer)?;
        Self::new(heights).map_err(serde::de::Error::custom)
    }
}

/// All `(n-1)!` types of order `n` in lexicographic order.
pub fn all_types(n: usize) -> Result<Vec<CrossingType>, SkeinError> {
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(SkeinError::Order(n));
    }
    let mut out = Vec::new();
    let mut rest: Vec<u8> = (2..=n as u8).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut heights = vec![1];
        heights.extend_from_slice(p);
        out.push(CrossingType { heights });
    });
    out.sort();
    Ok(out)
}

fn permute(items: &mut Vec<u8>, k: usize, emit: &mut dyn FnMut(&[u8])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// One smoothing of a double crossing made by an overstrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothing {
    A,
    B,
}

/// A split with an extra strand laid over it, before the double crossings are smoothed.
///
/// Points are labeled as in the enlarged crossing: the new strand runs from spoke `0`
/// (north) to spoke `n` (south), the old points take the remaining spokes.
#[derive(Clone, Debug)]
pub struct Overlay {
    n: usize,
    fixed: Vec<(usize, usize)>,
    crossed: Vec<(usize, usize)>,
}

impl Overlay {
    pub fn new(parent: &Split, gap: OverstrandPos) -> Self {
        let m = parent.n();
        let n = m + 1;
        let mut fixed = Vec::new();
        let mut crossed = Vec::new();
        for (a, b) in parent.pairs() {
            let (a, b) = (child_spoke(m, gap.gap, a), child_spoke(m, gap.gap, b));
            let east = |x: usize| x < n;
            match (east(a), east(b)) {
                (true, false) => crossed.push((a, b)),
                (false, true) => crossed.push((b, a)),
                _ => fixed.push((a.min(b), a.max(b))),
            }
        }
        // Crossed arcs are nested; the one whose east end is nearest spoke 0 is met first.
        crossed.sort_unstable();
        Self { n, fixed, crossed }
    }

    /// Order of the enlarged crossing.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs under the new strand as `(east, west)` endpoints, from north to south.
    pub fn crossed_arcs(&self) -> &[(usize, usize)] {
        &self.crossed
    }

    /// Every old arc in the enlarged labeling.
    pub fn old_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = self.fixed.clone();
        arcs.extend(self.crossed.iter().map(|&(e, w)| (e.min(w), e.max(w))));
        arcs.sort_unstable();
        arcs
    }

    /// The split left after smoothing the `i`-th double crossing by `choice(i)`.
    pub fn resolve(&self, choice: impl Fn(usize) -> Smoothing) -> Split {
        let n = self.n;
        let k = self.crossed.len();
        let mut table = vec![0u8; 2 * n];
        for &(a, b) in &self.fixed {
            table[a] = b as u8;
            table[b] = a as u8;
        }
        if k == 0 {
            table[0] = n as u8;
            table[n] = 0;
            return Split::from_partners_unchecked(&table);
        }
        // Ports of crossing i: 4i + {0: north, 1: east, 2: south, 3: west}.
        let internal = |port: usize| -> usize {
            let (i, dir) = (port / 4, port % 4);
            let other = match (choice(i), dir) {
                (Smoothing::A, 0) => 1,
                (Smoothing::A, 1) => 0,
                (Smoothing::A, 2) => 3,
                (Smoothing::A, 3) => 2,
                (Smoothing::B, 0) => 3,
                (Smoothing::B, 3) => 0,
                (Smoothing::B, 2) => 1,
                (Smoothing::B, 1) => 2,
                _ => unreachable!(),
            };
            4 * i + other
        };
        enum End {
            Boundary(usize),
            Port(usize),
        }
        let external = |port: usize| -> End {
            let (i, dir) = (port / 4, port % 4);
            match dir {
                0 if i == 0 => End::Boundary(0),
                0 => End::Port(4 * (i - 1) + 2),
                2 if i + 1 == k => End::Boundary(n),
                2 => End::Port(4 * (i + 1)),
                1 => End::Boundary(self.crossed[i].0),
                _ => End::Boundary(self.crossed[i].1),
            }
        };
        let mut entry = HashMap::with_capacity(2 * k + 2);
        entry.insert(0, 0);
        entry.insert(n, 4 * (k - 1) + 2);
        for (i, &(e, w)) in self.crossed.iter().enumerate() {
            entry.insert(e, 4 * i + 1);
            entry.insert(w, 4 * i + 3);
        }
        for (&start, &port) in &entry {
            let mut port = port;
            let end = loop {
                match external(internal(port)) {
                    End::Boundary(b) => break b,
                    End::Port(p) => port = p,
                }
            };
            table[start] = end as u8;
        }
        Split::from_partners_unchecked(&table)
    }

    /// All `2^k` smoothings, each with its number of A-splits minus B-splits.
    pub fn offspring(&self) -> Vec<(Split, i32)> {
        let k = self.crossed.len();
        (0..1u32 << k)
            .map(|mask| {
                let split = self.resolve(|i| if mask >> i & 1 == 1 { Smoothing::A } else { Smoothing::B });
                let a = mask.count_ones() as i32;
                (split, 2 * a - k as i32)
            })
            .collect()
    }
}

/// A split with its power of `A` and the number of resolution paths producing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkeinTerm {
    pub split: Split,
    pub power: i32,
    pub multiplicity: u64,
}

/// The expansion of one crossing type into splits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinRelation {
    #[serde(rename = "type")]
    pub crossing: CrossingType,
    /// Sorted by descending power, then by split.
    pub terms: Vec<SkeinTerm>,
}

impl SkeinRelation {
    fn from_map(crossing: CrossingType, map: HashMap<(Split, i32), u64>) -> Self {
        let mut terms: Vec<SkeinTerm> =
            map.into_iter().map(|((split, power), multiplicity)| SkeinTerm { split, power, multiplicity }).collect();
        terms.sort_by(|a, b| b.power.cmp(&a.power).then(a.split.cmp(&b.split)));
        Self { crossing, terms }
    }

    pub fn n(&self) -> usize {
        self.crossing.n()
    }

    pub fn highest(&self) -> i32 {
        self.terms.first().map_or(0, |t| t.power)
    }

    pub fn lowest(&self) -> i32 {
        self.terms.last().map_or(0, |t| t.power)
    }

    pub fn width(&self) -> u32 {
        (self.highest() - self.lowest()) as u32
    }

    /// Total multiplicity at each power.
    pub fn histogram(&self) -> BTreeMap<i32, u64> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.power).or_insert(0) += t.multiplicity;
        }
        out
    }

    pub fn support(&self) -> BTreeSet<Split> {
        self.terms.iter().map(|t| t.split).collect()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }

    /// Terms grouped by split: each split with its `(power, multiplicity)` list.
    pub fn by_split(&self) -> Vec<(Split, Vec<(i32, u64)>)> {
        let mut map: BTreeMap<Split, Vec<(i32, u64)>> = BTreeMap::new();
        for t in &self.terms {
            map.entry(t.split).or_default().push((t.power, t.multiplicity));
        }
        map.into_iter().collect()
    }

    /// Text form: one `power multiplicity split` line per term.
    pub fn to_text(&self) -> String {
        let mut out = format!("type {} width {}\n", self.crossing, self.width());
        for t in &self.terms {
            out.push_str(&format!("{:>4} {:>6} {}\n", t.power, t.multiplicity, t.split));
        }
        out
    }
}

type OffspringKey = (Split, usize);
type Offspring = Arc<Vec<(Split, i32, u64)>>;

fn relation_cache() -> &'static RwLock<HashMap<CrossingType, Arc<SkeinRelation>>> {
    static CACHE: OnceLock<RwLock<HashMap<CrossingType, Arc<SkeinRelation>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn offspring_cache() -> &'static RwLock<HashMap<OffspringKey, Offspring>> {
    static CACHE: OnceLock<RwLock<HashMap<OffspringKey, Offspring>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Merged offspring of `parent` under a strand laid on at `gap`.
pub fn offspring(parent: &Split, gap: OverstrandPos) -> Offspring {
    let key = (*parent, gap.gap);
    if let Some(hit) = offspring_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let mut merged: HashMap<(Split, i32), u64> = HashMap::new();
    for (split, delta) in Overlay::new(parent, gap).offspring() {
        *merged.entry((split, delta)).or_insert(0) += 1;
    }
    let mut list: Vec<(Split, i32, u64)> = merged.into_iter().map(|((s, d), c)| (s, d, c)).collect();
    list.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let list = Arc::new(list);
    offspring_cache().write().unwrap().insert(key, list.clone());
    list
}

/// The relation of the 2-crossing: A-split `(0,1)(2,3)` at `A`, B-split `(0,3)(1,2)` at `A^-1`.
pub fn base_relation() -> SkeinRelation {
    let a = Split::from_pairs(2, &[(0, 1), (2, 3)]).expect("valid split");
    let b = Split::from_pairs(2, &[(0, 3), (1, 2)]).expect("valid split");
    SkeinRelation {
        crossing: CrossingType { heights: vec![1, 2] },
        terms: vec![
            SkeinTerm { split: a, power: 1, multiplicity: 1 },
            SkeinTerm { split: b, power: -1, multiplicity: 1 },
        ],
    }
}

/// The skein relation of `t`, cached per type.
pub fn build_relation(t: &CrossingType) -> Result<Arc<SkeinRelation>, SkeinError> {
    let n = t.n();
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(SkeinError::Order(n));
    }
    if let Some(hit) = relation_cache().read().unwrap().get(t) {
        return Ok(hit.clone());
    }
    let relation = if n == 2 {
        base_relation()
    } else {
        let (parent_type, gap) = t.remove_top()?;
        let parent = build_relation(&parent_type)?;
        let mut map: HashMap<(Split, i32), u64> = HashMap::new();
        for (split, powers) in parent.by_split() {
            for &(child, delta, count) in offspring(&split, gap).iter() {
                for &(power, mult) in &powers {
                    *map.entry((child, power + delta)).or_insert(0) += mult * count;
                }
            }
        }
        SkeinRelation::from_map(t.clone(), map)
    };
    let relation = Arc::new(relation);
    relation_cache().write().unwrap().insert(t.clone(), relation.clone());
    Ok(relation)
}

/// Width of the relation of `t` without materializing it.
///
/// Every offspring power lies between `-k` and `k` of its parent's, where `k` is the
/// number of arcs the new strand crosses, and the all-A and all-B smoothings reach both
/// ends.
pub fn relation_width(t: &CrossingType) -> Result<u32, SkeinError> {
    let n = t.n();
    if n <= 3 || relation_cache().read().unwrap().contains_key(t) {
        return Ok(build_relation(t)?.width());
    }
    let (parent_type, gap) = t.remove_top()?;
    let parent = build_relation(&parent_type)?;
    let mut high = i32::MIN;
    let mut low = i32::MAX;
    for (split, powers) in parent.by_split() {
        let k = split.intersections(gap) as i32;
        let top = powers.iter().map(|p| p.0).max().expect("nonempty");
        let bottom = powers.iter().map(|p| p.0).min().expect("nonempty");
        high = high.max(top + k);
        low = low.min(bottom - k);
    }
    Ok((high - low) as u32)
}

/// Number of types of order `n` realizing each width.
pub fn realized_widths(n: usize) -> Result<BTreeMap<u32, usize>, SkeinError> {
    let types = all_types(n)?;
    if n > 3 {
        // Parents first, so workers only read the cache for them.
        for parent in all_types(n - 1)? {
            build_relation(&parent)?;
        }
    }
    let widths: Vec<u32> = types.par_iter().map(relation_width).collect::<Result<_, _>>()?;
    let mut out = BTreeMap::new();
    for w in widths {
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}

/// Drops cached relations of order above `max_order` (used between long runs).
pub fn trim_cache(max_order: usize) {
    relation_cache().write().unwrap().retain(|t, _| t.n() <= max_order);
    offspring_cache().write().unwrap().retain(|(s, _), _| s.n() < max_order);
}

/// The covering relation on the terms of a relation: `lower ≺ upper` when their splits
/// are one split move apart and the powers differ by exactly 2.
pub struct TermOrder {
    pub terms: Vec<SkeinTerm>,
    /// `covers[i]` lists the terms covering term `i`.
    pub covers: Vec<Vec<usize>>,
    /// `covered[i]` lists the terms covered by term `i`.
    pub covered: Vec<Vec<usize>>,
}

impl TermOrder {
    pub fn new(relation: &SkeinRelation) -> Self {
        let terms = relation.terms.clone();
        let index: HashMap<(Split, i32), usize> =
            terms.iter().enumerate().map(|(i, t)| ((t.split, t.power), i)).collect();
        let mut covers = vec![Vec::new(); terms.len()];
        let mut covered = vec![Vec::new(); terms.len()];
        for (i, t) in terms.iter().enumerate() {
            for u in t.split.neighbors() {
                if let Some(&j) = index.get(&(u, t.power + 2)) {
                    covers[i].push(j);
                    covered[j].push(i);
                }
            }
        }
        Self { terms, covers, covered }
    }

    /// Terms nothing covers.
    pub fn high(&self) -> Vec<usize> {
        (0..self.terms.len()).filter(|&i| self.covers[i].is_empty()).collect()
    }

    /// Terms covering nothing.
    pub fn low(&self) -> Vec<usize> {
        (0..self.terms.len()).filter(|&i| self.covered[i].is_empty()).collect()
    }

    /// Whether the covering digraph has a directed cycle.
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm on the covering edges.
        let mut indegree: Vec<usize> = self.covered.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.terms.len()).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = ready.pop() {
            seen += 1;
            for &j in &self.covers[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
        seen != self.terms.len()
    }

    /// Every term strictly above term `i` in the transitive closure.
    pub fn above(&self, i: usize) -> HashSet<usize> {
        let mut out = HashSet::new();
        let mut stack = vec![i];
        while let Some(u) = stack.pop() {
            for &v in &self.covers[u] {
                if out.insert(v) {
                    stack.push(v);
                }
            }
        }
        out
    }
}

/// High and low terms of a relation.
pub fn high_low_terms(relation: &SkeinRelation) -> (Vec<SkeinTerm>, Vec<SkeinTerm>) {
    let order = TermOrder::new(relation);
    let high = order.high().into_iter().map(|i| order.terms[i]).collect();
    let low = order.low().into_iter().map(|i| order.terms[i]).collect();
    (high, low)
}

/// How the arcs leaving the newest strand's endpoints turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Clockwise,
    Counterclockwise,
    Straight,
    Neither,
}

/// Classifies `child` by the arcs at spokes `spoke` and `spoke + n`, the endpoints of
/// the most recently added strand. Travelling in from spoke 0, an arc reaching the
/// points `1..n` turns counterclockwise.
pub fn classify_offspring(child: &Split, spoke: usize) -> Result<Direction, SkeinError> {
    let n = child.n();
    let m = 2 * n;
    if spoke >= m {
        return Err(SkeinError::Spoke(spoke));
    }
    let a = spoke;
    let b = (spoke + n) % m;
    let rel = |from: usize, to: usize| (to + m - from) % m;
    let pa = rel(a, child.partner(a));
    let pb = rel(b, child.partner(b));
    Ok(if child.partner(a) == b {
        Direction::Straight
    } else if pa < n && pb < n {
        Direction::Counterclockwise
    } else if pa > n && pb > n {
        Direction::Clockwise
    } else {
        Direction::Neither
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits::enumerate_splits;

    fn ty(s: &str) -> CrossingType {
        s.parse().unwrap()
    }

    #[test]
    fn type_counts() {
        assert_eq!(all_types(2).unwrap(), vec![ty("12")]);
        assert_eq!(all_types(4).unwrap().len(), 6);
        assert_eq!(all_types(5).unwrap().len(), 24);
        assert_eq!(all_types(7).unwrap().len(), 720);
        assert!(all_types(1).is_err());
        assert!(all_types(9).is_err());
    }

    #[test]
    fn type_parsing() {
        assert_eq!(ty("[1,3,5,2,4]"), ty("13524"));
        assert!("21".parse::<CrossingType>().is_err());
        assert!("1224".parse::<CrossingType>().is_err());
        assert_eq!(ty("13524").to_string(), "13524");
    }

    #[test]
    fn reflection_of_types() {
        assert_eq!(ty("13524").reflect(), ty("14253"));
        assert_eq!(ty("12345").reflect(), ty("15432"));
        for t in all_types(5).unwrap() {
            assert_eq!(t.reflect().reflect(), t);
        }
    }

    #[test]
    fn remove_top_round_trip() {
        let (parent, gap) = ty("123").remove_top().unwrap();
        assert_eq!(parent, ty("12"));
        assert_eq!(parent.add_overstrand(gap), ty("123"));
        for n in 3..=7 {
            for t in all_types(n).unwrap() {
                let (parent, gap) = t.remove_top().unwrap();
                assert_eq!(parent.n(), n - 1);
                assert_eq!(parent.add_overstrand(gap), t);
            }
        }
    }

    #[test]
    fn base_relation_comes_from_one_arc() {
        let arc = Split::from_pairs(1, &[(0, 1)]).unwrap();
        let mut got: Vec<(Split, i32)> = Overlay::new(&arc, OverstrandPos::new(0)).offspring();
        got.sort_by_key(|x| -x.1);
        let base = base_relation();
        assert_eq!(got, base.terms.iter().map(|t| (t.split, t.power)).collect::<Vec<_>>());
    }

    #[test]
    fn small_widths() {
        assert_eq!(build_relation(&ty("12")).unwrap().width(), 2);
        assert_eq!(build_relation(&ty("123")).unwrap().width(), 4);
        assert_eq!(build_relation(&ty("1234")).unwrap().width(), 8);
        assert_eq!(build_relation(&ty("13524")).unwrap().width(), 8);
        assert_eq!(build_relation(&ty("12345")).unwrap().width(), 12);
    }

    #[test]
    fn shortcut_width_matches_full_build() {
        for n in 2..=6 {
            for t in all_types(n).unwrap() {
                let full = build_relation(&t).unwrap().width();
                trim_cache(n - 1);
                assert_eq!(relation_width(&t).unwrap(), full, "{t}");
            }
        }
    }

    #[test]
    fn total_multiplicity_counts_resolution_paths() {
        assert_eq!(base_relation().total_multiplicity(), 2);
        for n in 3..=6 {
            for t in all_types(n).unwrap() {
                let (parent, gap) = t.remove_top().unwrap();
                let expected: u64 = build_relation(&parent)
                    .unwrap()
                    .terms
                    .iter()
                    .map(|term| term.multiplicity << term.split.intersections(gap))
                    .sum();
                assert_eq!(build_relation(&t).unwrap().total_multiplicity(), expected, "{t}");
            }
        }
        // Every pair of strands crosses once on the way down.
        let r = build_relation(&"123456".parse().unwrap()).unwrap();
        assert!(r.total_multiplicity() <= 1 << 15);
    }

    #[test]
    fn relation_is_symmetric_under_half_turn() {
        for n in 2..=6 {
            for t in all_types(n).unwrap() {
                let r = build_relation(&t).unwrap();
                let mut rotated: Vec<SkeinTerm> = r
                    .terms
                    .iter()
                    .map(|x| SkeinTerm { split: x.split.rotate(n), ..*x })
                    .collect();
                rotated.sort_by(|a, b| b.power.cmp(&a.power).then(a.split.cmp(&b.split)));
                assert_eq!(rotated, r.terms, "{t}");
            }
        }
    }

    #[test]
    fn reflected_type_mirrors_relation() {
        for n in 2..=6 {
            for t in all_types(n).unwrap() {
                let r = build_relation(&t).unwrap();
                let mirror = build_relation(&t.reflect()).unwrap();
                let mut expected: Vec<SkeinTerm> = r
                    .terms
                    .iter()
                    .map(|x| SkeinTerm { split: x.split.reflect_diameter(), power: -x.power, ..*x })
                    .collect();
                expected.sort_by(|a, b| b.power.cmp(&a.power).then(a.split.cmp(&b.split)));
                assert_eq!(mirror.terms, expected, "{t}");
            }
        }
    }

    #[test]
    fn two_crossing_order() {
        let order = TermOrder::new(&base_relation());
        assert_eq!(order.covers[1], vec![0]);
        let (high, low) = high_low_terms(&base_relation());
        assert_eq!(high.len(), 1);
        assert_eq!(high[0].power, 1);
        assert_eq!(low.len(), 1);
        assert_eq!(low[0].power, -1);
    }

    #[test]
    fn order_has_no_cycles() {
        for n in 2..=6 {
            for t in all_types(n).unwrap() {
                assert!(!TermOrder::new(&build_relation(&t).unwrap()).has_cycle());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let arc = Split::from_pairs(2, &[(0, 1), (2, 3)]).unwrap();
        // From the one-arc relation, the A-split turns counterclockwise at both ends.
        assert_eq!(classify_offspring(&arc, 0).unwrap(), Direction::Counterclockwise);
        let b = Split::from_pairs(2, &[(0, 3), (1, 2)]).unwrap();
        assert_eq!(classify_offspring(&b, 0).unwrap(), Direction::Clockwise);
        // A strand laid beside a 2-arc split without crossing stays straight.
        let s = Split::from_pairs(2, &[(0, 1), (2, 3)]).unwrap();
        let o = Overlay::new(&s, OverstrandPos::new(0));
        assert!(o.crossed_arcs().is_empty());
        let child = o.resolve(|_| Smoothing::A);
        assert_eq!(classify_offspring(&child, 0).unwrap(), Direction::Straight);
        assert!(classify_offspring(&child, 6).is_err());
        let neither = Split::from_pairs(3, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(classify_offspring(&neither, 0).unwrap(), Direction::Neither);
    }

    #[test]
    fn overlay_preserves_arcs_and_counts() {
        for m in 1..=5 {
            for s in enumerate_splits(m).unwrap() {
                for g in 0..2 * m {
                    let o = Overlay::new(&s, OverstrandPos::new(g));
                    assert_eq!(o.crossed_arcs().len(), s.intersections(OverstrandPos::new(g)));
                    let kids = o.offspring();
                    assert_eq!(kids.len(), 1 << o.crossed_arcs().len());
                }
            }
        }
    }
}
