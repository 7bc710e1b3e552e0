//! Non-crossing perfect matchings ("splits") on `2n` boundary points labeled clockwise,
//! and the operations used to compare them: split moves, split distance, closures
//! against an exterior matching, overstrand intersections, rotations and arc surgery.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest strand count a [`Split`] can hold.
pub const MAX_STRANDS: usize = 10;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("strand count {0} out of range 1..={MAX_STRANDS}")]
    StrandCount(usize),
    #[error("not a perfect matching on {0} points")]
    NotPerfectMatching(usize),
    #[error("arcs ({0},{1}) and ({2},{3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("splits have different strand counts ({0} vs {1})")]
    MismatchedOrder(usize, usize),
    #[error("arcs {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("arc index {0} out of range")]
    ArcIndex(usize),
    #[error("cannot parse split `{0}`")]
    Parse(String),
}

/// A non-crossing perfect matching on points `0..2n`.
///
/// Stored as a partner table so the type is `Copy`; two splits are equal exactly when
/// they match the same points. The derived ordering is the canonical enumeration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    n: u8,
    partner: [u8; 2 * MAX_STRANDS],
}

impl Split {
    /// Builds a split from its arcs, checking it is a non-crossing perfect matching.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SplitError> {
        if n == 0 || n > MAX_STRANDS {
            return Err(SplitError::StrandCount(n));
        }
        let points = 2 * n;
        let mut partner = [u8::MAX; 2 * MAX_STRANDS];
        if pairs.len() != n {
            return Err(SplitError::NotPerfectMatching(points));
        }
        for &(a, b) in pairs {
            if a >= points || b >= points || a == b {
                return Err(SplitError::NotPerfectMatching(points));
            }
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(SplitError::NotPerfectMatching(points));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        for slot in partner.iter_mut().skip(points) {
            *slot = 0;
        }
        let split = Self { n: n as u8, partner };
        split.check_noncrossing()?;
        Ok(split)
    }

    /// Builds a split from a partner table (`partner[partner[i]] == i`).
    pub fn from_partners(partner: &[usize]) -> Result<Self, SplitError> {
        if !partner.len().is_multiple_of(2) {
            return Err(SplitError::NotPerfectMatching(partner.len()));
        }
        let pairs: Vec<(usize, usize)> = partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
            .collect();
        let split = Self::from_pairs(partner.len() / 2, &pairs)?;
        if (0..partner.len()).any(|i| split.partner(i) != partner[i]) {
            return Err(SplitError::NotPerfectMatching(partner.len()));
        }
        Ok(split)
    }

    pub(crate) fn from_partners_unchecked(partner: &[u8]) -> Self {
        let mut table = [0u8; 2 * MAX_STRANDS];
        table[..partner.len()].copy_from_slice(partner);
        Self { n: (partner.len() / 2) as u8, partner: table }
    }

    fn check_noncrossing(&self) -> Result<(), SplitError> {
        let pairs = self.pairs();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                if interleaved(a, b, c, d) {
                    return Err(SplitError::Crossing(a, b, c, d));
                }
            }
        }
        Ok(())
    }

    /// The split of `n` arcs joining `i` to `2n - 1 - i`.
    pub fn parallel(n: usize) -> Result<Self, SplitError> {
        let pairs: Vec<_> = (0..n).map(|i| (i, 2 * n - 1 - i)).collect();
        Self::from_pairs(n, &pairs)
    }

    /// Strand count (half the number of points).
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn points(&self) -> usize {
        2 * self.n as usize
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    pub(crate) fn partner_table(&self) -> &[u8] {
        &self.partner[..self.points()]
    }

    /// Arcs as `(min, max)`, sorted by first coordinate.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter_map(|i| {
                let j = self.partner(i);
                (i < j).then_some((i, j))
            })
            .collect()
    }

    /// Relabels every point `p` as `p + k` (mod `2n`).
    pub fn rotate(&self, k: usize) -> Self {
        let m = self.points();
        let mut table = [0u8; 2 * MAX_STRANDS];
        for p in 0..m {
            table[(p + k) % m] = ((self.partner(p) + k) % m) as u8;
        }
        Self { n: self.n, partner: table }
    }

    /// Relabels every point `p` as `-p` (mod `2n`), the reflection through the diameter
    /// passing through point 0.
    pub fn reflect_diameter(&self) -> Self {
        let m = self.points();
        let mut table = [0u8; 2 * MAX_STRANDS];
        for p in 0..m {
            table[(m - p) % m] = ((m - self.partner(p)) % m) as u8;
        }
        Self { n: self.n, partner: table }
    }

    /// Reflection of an exterior matching through the bounding circle.
    ///
    /// A matching that is non-crossing outside the disk is the same matching inside, so
    /// this is the identity on labels.
    pub fn reflect(&self) -> Self {
        *self
    }

    /// Faces of the disk cut along the arcs. Entry `i` is the face containing the
    /// boundary segment from point `i` to point `i + 1`.
    pub fn segment_faces(&self) -> Vec<usize> {
        let m = self.points();
        let mut face = vec![usize::MAX; m];
        let mut next_face = 0;
        for start in 0..m {
            if face[start] != usize::MAX {
                continue;
            }
            let mut seg = start;
            while face[seg] == usize::MAX {
                face[seg] = next_face;
                seg = self.partner((seg + 1) % m);
            }
            next_face += 1;
        }
        face
    }

    /// The two faces touching `point`.
    fn point_faces(faces: &[usize], point: usize) -> [usize; 2] {
        let m = faces.len();
        [faces[(point + m - 1) % m], faces[point]]
    }

    /// Whether two points lie on the boundary of a common complementary region.
    pub fn share_region(&self, p: usize, q: usize) -> bool {
        let faces = self.segment_faces();
        let fp = Self::point_faces(&faces, p);
        let fq = Self::point_faces(&faces, q);
        fp.iter().any(|f| fq.contains(f))
    }

    /// Whether arcs `a` and `b` (indices into [`Split::pairs`]) border a common region.
    pub fn arcs_share_region(&self, a: usize, b: usize) -> Result<bool, SplitError> {
        let pairs = self.pairs();
        let &(pa, _) = pairs.get(a).ok_or(SplitError::ArcIndex(a))?;
        let &(pb, _) = pairs.get(b).ok_or(SplitError::ArcIndex(b))?;
        Ok(a != b && self.share_region(pa, pb))
    }

    /// Replaces arcs `a` and `b` (indices into [`Split::pairs`]) by the other
    /// non-crossing matching of their four endpoints.
    pub fn split_move(&self, a: usize, b: usize) -> Result<Self, SplitError> {
        let pairs = self.pairs();
        let &(p1, q1) = pairs.get(a).ok_or(SplitError::ArcIndex(a))?;
        let &(p2, q2) = pairs.get(b).ok_or(SplitError::ArcIndex(b))?;
        if a == b {
            return Err(SplitError::NotAdjacent(a, b));
        }
        let mut four = [p1, q1, p2, q2];
        four.sort_unstable();
        let [w, x, y, z] = four;
        // The non-crossing matchings of four cyclic points are {wx, yz} and {wz, xy}.
        let current_is_adjacent_pairs = self.partner(w) == x;
        let (r1, r2) = if current_is_adjacent_pairs { ((w, z), (x, y)) } else { ((w, x), (y, z)) };
        let mut table: Vec<u8> = self.partner_table().to_vec();
        table[r1.0] = r1.1 as u8;
        table[r1.1] = r1.0 as u8;
        table[r2.0] = r2.1 as u8;
        table[r2.1] = r2.0 as u8;
        let moved = Self::from_partners_unchecked(&table);
        match moved.check_noncrossing() {
            Ok(()) => Ok(moved),
            Err(_) => Err(SplitError::NotAdjacent(a, b)),
        }
    }

    /// Every split one split move away.
    pub fn neighbors(&self) -> Vec<Split> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if let Ok(s) = self.split_move(a, b) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Number of arcs with exactly one endpoint on the clockwise side of `o`.
    pub fn intersections(&self, o: OverstrandPos) -> usize {
        let n = self.n();
        (0..self.points())
            .filter(|&p| p < self.partner(p) && o.separates(n, p, self.partner(p)))
            .count()
    }

    /// Number of arcs crossed by both `o` and `o2`.
    pub fn common_intersections(&self, o: OverstrandPos, o2: OverstrandPos) -> usize {
        let n = self.n();
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| o.separates(n, a, b) && o2.separates(n, a, b))
            .count()
    }

    /// Intersection counts of the rotations `r_0 … r_⌈n/2⌉` and `r̄_1 … r̄_⌊n/2⌋` of `o`.
    pub fn rotation_profile(&self, o: OverstrandPos) -> RotationProfile {
        let n = self.n();
        let clockwise = (0..=n.div_ceil(2)).map(|j| self.intersections(o.rotate_cw(n, j))).collect();
        let counterclockwise = (1..=n / 2).map(|j| self.intersections(o.rotate_ccw(n, j))).collect();
        RotationProfile { clockwise, counterclockwise }
    }

    /// Arc surgery with respect to `o`: delete every arc crossing `o`, join the east pair
    /// and the west pair, then reconnect the remaining freed endpoints by the unique
    /// nested family of arcs that all cross `o`.
    ///
    /// The east side of `o` is the run of `n` points clockwise from its gap.
    pub fn arc_surgery(
        &self,
        o: OverstrandPos,
        east: (usize, usize),
        west: (usize, usize),
    ) -> Result<Self, SurgeryError> {
        let n = self.n();
        let m = self.points();
        for p in [east.0, east.1, west.0, west.1] {
            if p >= m {
                return Err(SurgeryError::PointOutOfRange(p));
            }
        }
        if east.0 == east.1 || west.0 == west.1 {
            return Err(SurgeryError::DegeneratePair);
        }
        if !(o.on_east(n, east.0) && o.on_east(n, east.1)) {
            return Err(SurgeryError::EastPairWrongSide);
        }
        if o.on_east(n, west.0) || o.on_east(n, west.1) {
            return Err(SurgeryError::WestPairWrongSide);
        }
        let separated = |p: usize| o.separates(n, p, self.partner(p));
        if !(separated(east.0) && separated(east.1)) {
            return Err(SurgeryError::EastPairNotSeparated);
        }
        if !(separated(west.0) && separated(west.1)) {
            return Err(SurgeryError::WestPairNotSeparated);
        }
        if !self.share_region(east.0, east.1) {
            return Err(SurgeryError::EastPairNoCommonRegion);
        }
        if !self.share_region(west.0, west.1) {
            return Err(SurgeryError::WestPairNoCommonRegion);
        }

        let mut table: Vec<u8> = self.partner_table().to_vec();
        table[east.0] = east.1 as u8;
        table[east.1] = east.0 as u8;
        table[west.0] = west.1 as u8;
        table[west.1] = west.0 as u8;
        let chosen = [east.0, east.1, west.0, west.1];
        let freed_east: Vec<usize> = (0..n)
            .map(|i| (o.gap + i) % m)
            .filter(|&p| separated(p) && !chosen.contains(&p))
            .collect();
        let freed_west: Vec<usize> = (0..n)
            .map(|i| (o.gap + n + i) % m)
            .filter(|&p| separated(p) && !chosen.contains(&p))
            .collect();
        debug_assert_eq!(freed_east.len(), freed_west.len());
        for (e, w) in freed_east.iter().zip(freed_west.iter().rev()) {
            table[*e] = *w as u8;
            table[*w] = *e as u8;
        }
        let out = Self::from_partners_unchecked(&table);
        out.check_noncrossing().map_err(|_| SurgeryError::CrossingResult)?;
        Ok(out)
    }

    /// Every split reachable from `self` by one arc surgery with respect to `o`.
    pub fn arc_surgeries(&self, o: OverstrandPos) -> Vec<Split> {
        let n = self.n();
        let m = self.points();
        let separated: Vec<usize> = (0..m).filter(|&p| o.separates(n, p, self.partner(p))).collect();
        let east: Vec<usize> = separated.iter().copied().filter(|&p| o.on_east(n, p)).collect();
        let west: Vec<usize> = separated.iter().copied().filter(|&p| !o.on_east(n, p)).collect();
        let mut out = Vec::new();
        for (i, &e1) in east.iter().enumerate() {
            for &e2 in &east[i + 1..] {
                for (j, &w1) in west.iter().enumerate() {
                    for &w2 in &west[j + 1..] {
                        if let Ok(s) = self.arc_surgery(o, (e1, e2), (w1, w2)) {
                            if !out.contains(&s) {
                                out.push(s);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("a pair repeats a point")]
    DegeneratePair,
    #[error("east pair not on the east side of the overstrand")]
    EastPairWrongSide,
    #[error("west pair not on the west side of the overstrand")]
    WestPairWrongSide,
    #[error("east pair not separated")]
    EastPairNotSeparated,
    #[error("west pair not separated")]
    WestPairNotSeparated,
    #[error("east pair does not share a region")]
    EastPairNoCommonRegion,
    #[error("west pair does not share a region")]
    WestPairNoCommonRegion,
    #[error("reconnection produced crossing arcs")]
    CrossingResult,
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Split({self})")
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl FromStr for Split {
    type Err = SplitError;

    /// Parses `(0,1)(2,3)(4,5)`; whitespace and commas between pairs are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SplitError::Parse(s.to_string());
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let (a, b) = body[..close].split_once(',').ok_or_else(err)?;
            let a = a.trim().parse::<usize>().map_err(|_| err())?;
            let b = b.trim().parse::<usize>().map_err(|_| err())?;
            pairs.push((a, b));
            rest = &body[close + 1..];
        }
        Self::from_pairs(pairs.len(), &pairs)
    }
}

impl Serialize for Split {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Split {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A bisecting chord through a `2n`-point boundary: it enters in the gap just before
/// point `gap` and leaves in the gap just before point `gap + n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OverstrandPos {
    pub gap: usize,
}

impl OverstrandPos {
    pub fn new(gap: usize) -> Self {
        Self { gap }
    }

    /// Representative with `gap < n`; `gap` and `gap + n` name the same chord.
    pub fn canonical(self, n: usize) -> Self {
        Self { gap: self.gap % n }
    }

    /// Whether `p` lies among the `n` points clockwise from the gap.
    pub fn on_east(self, n: usize, p: usize) -> bool {
        (p + 2 * n - self.gap % (2 * n)) % (2 * n) < n
    }

    pub fn separates(self, n: usize, a: usize, b: usize) -> bool {
        self.on_east(n, a) != self.on_east(n, b)
    }

    /// `r_j`: the chord rotated clockwise past `j` endpoints.
    pub fn rotate_cw(self, n: usize, j: usize) -> Self {
        Self { gap: (self.gap + j) % (2 * n) }
    }

    /// `r̄_j`: the chord rotated counterclockwise past `j` endpoints.
    pub fn rotate_ccw(self, n: usize, j: usize) -> Self {
        Self { gap: (self.gap + 2 * n - j % (2 * n)) % (2 * n) }
    }

    /// The `n` distinct chords of a `2n`-point boundary.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..n).map(Self::new)
    }
}

/// Intersection counts along successive rotations of an overstrand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationProfile {
    /// `|I(r_j)|` for `j = 0 ..= ⌈n/2⌉`.
    pub clockwise: Vec<usize>,
    /// `|I(r̄_j)|` for `j = 1 ..= ⌊n/2⌋`.
    pub counterclockwise: Vec<usize>,
}

/// Counts of increasing, level and decreasing rotation steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepCounts {
    pub increasing: usize,
    pub level: usize,
    pub decreasing: usize,
}

impl RotationProfile {
    fn counts(values: impl Iterator<Item = usize> + Clone) -> StepCounts {
        let mut out = StepCounts::default();
        let mut prev = None;
        for v in values {
            if let Some(p) = prev {
                match (v as i64) - (p as i64) {
                    2 => out.increasing += 1,
                    0 => out.level += 1,
                    -2 => out.decreasing += 1,
                    other => panic!("rotation changed intersections by {other}"),
                }
            }
            prev = Some(v);
        }
        out
    }

    /// Step counts over the first `steps` clockwise rotations.
    pub fn clockwise_steps(&self, steps: usize) -> StepCounts {
        Self::counts(self.clockwise.iter().copied().take(steps + 1))
    }

    /// Step counts over the first `steps` counterclockwise rotations.
    pub fn counterclockwise_steps(&self, steps: usize) -> StepCounts {
        let start = self.clockwise[0];
        Self::counts(std::iter::once(start).chain(self.counterclockwise.iter().copied()).take(steps + 1))
    }
}

/// Every non-crossing perfect matching on `2n` points, in canonical order.
pub fn enumerate_splits(n: usize) -> Result<Vec<Split>, SplitError> {
    if n == 0 || n > MAX_STRANDS {
        return Err(SplitError::StrandCount(n));
    }
    let mut out = Vec::new();
    let mut partner = vec![0u8; 2 * n];
    fill_interval(&mut partner, 0, 2 * n, &mut |p| out.push(Split::from_partners_unchecked(p)));
    out.sort();
    Ok(out)
}

// Enumerates the matchings of `lo..hi` given that everything before `lo` is fixed.
fn fill_interval(partner: &mut [u8], lo: usize, hi: usize, emit: &mut dyn FnMut(&[u8])) {
    fn go(partner: &mut [u8], stack: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[u8])) {
        let Some((lo, hi)) = stack.pop() else {
            emit(partner);
            return;
        };
        if lo >= hi {
            go(partner, stack, emit);
            stack.push((lo, hi));
            return;
        }
        let mut j = lo + 1;
        while j < hi {
            partner[lo] = j as u8;
            partner[j] = lo as u8;
            stack.push((j + 1, hi));
            stack.push((lo + 1, j));
            go(partner, stack, emit);
            stack.pop();
            stack.pop();
            j += 2;
        }
        stack.push((lo, hi));
    }
    let mut stack = vec![(lo, hi)];
    go(partner, &mut stack, emit);
}

/// Number of loops formed by gluing matching `s` to matching `t` on the same points.
pub fn closure_count(s: &Split, t: &Split) -> Result<usize, SplitError> {
    if s.n() != t.n() {
        return Err(SplitError::MismatchedOrder(s.n(), t.n()));
    }
    Ok(closure_count_tables(s.partner_table(), t.partner_table()))
}

pub(crate) fn closure_count_tables(s: &[u8], t: &[u8]) -> usize {
    let mut seen = [false; 2 * MAX_STRANDS];
    let mut loops = 0;
    for start in 0..s.len() {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = s[p] as usize;
            seen[q] = true;
            p = t[q] as usize;
            if p == start {
                break;
            }
        }
    }
    loops
}

/// Minimum number of split moves from `s` to `t`.
pub fn split_distance(s: &Split, t: &Split) -> Result<usize, SplitError> {
    if s.n() != t.n() {
        return Err(SplitError::MismatchedOrder(s.n(), t.n()));
    }
    if s == t {
        return Ok(0);
    }
    let mut dist: HashMap<Split, usize> = HashMap::from([(*s, 0)]);
    let mut queue = VecDeque::from([*s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for v in u.neighbors() {
            if v == *t {
                return Ok(d + 1);
            }
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(v) {
                slot.insert(d + 1);
                queue.push_back(v);
            }
        }
    }
    unreachable!("the split-move graph is connected")
}

/// The split-move graph on all splits of a fixed order, with all-pairs distances.
pub struct SplitGraph {
    pub splits: Vec<Split>,
    index: HashMap<Split, usize>,
    pub adjacency: Vec<Vec<usize>>,
    distances: Vec<Vec<u16>>,
}

impl SplitGraph {
    pub fn new(n: usize) -> Result<Self, SplitError> {
        let splits = enumerate_splits(n)?;
        let index: HashMap<Split, usize> = splits.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let adjacency: Vec<Vec<usize>> = splits
            .iter()
            .map(|s| s.neighbors().iter().map(|t| index[t]).collect())
            .collect();
        let distances = (0..splits.len())
            .map(|src| {
                let mut dist = vec![u16::MAX; splits.len()];
                dist[src] = 0;
                let mut queue = VecDeque::from([src]);
                while let Some(u) = queue.pop_front() {
                    for &v in &adjacency[u] {
                        if dist[v] == u16::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect();
        Ok(Self { splits, index, adjacency, distances })
    }

    pub fn index_of(&self, s: &Split) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `None` when the two splits are in different components.
    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.distances[i][j];
        (d != u16::MAX).then_some(d as usize)
    }

    pub fn split_distance(&self, s: &Split, t: &Split) -> Option<usize> {
        self.distance(self.index_of(s)?, self.index_of(t)?)
    }
}
