//! Combinatorial link projections whose crossings may have any order.
//!
//! Endpoints are `(crossing, spoke)` pairs; inside a crossing spoke `k` continues
//! straight through to spoke `k + n`. The bracket is a state sum over one skein term per
//! crossing, and an independent check perturbs every crossing into double crossings and
//! sums over plain A/B smoothings.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly;
use crate::skein::{build_relation, CrossingType, SkeinError, TermOrder};
use crate::splits::Split;

/// Default cap on the number of split combinations examined by a state search.
pub const STATE_BUDGET: u128 = 10_000_000;

#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("endpoint ({0}, {1}) is not on any edge")]
    Dangling(usize, usize),
    #[error("endpoint ({0}, {1}) appears on more than one edge")]
    Duplicate(usize, usize),
    #[error("endpoint ({0}, {1}) does not exist")]
    NoSuchEndpoint(usize, usize),
    #[error("crossing {0} declares order {1} but its type has order {2}")]
    OrderMismatch(usize, usize, usize),
    #[error("diagram has no crossings and no loops")]
    Empty,
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("state search needs {0} split combinations, over the budget of {1}")]
    Budget(u128, u128),
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("all crossings must have the same order")]
    MixedOrders,
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("{0}")]
    Io(String),
}

pub type Endpoint = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub order: usize,
    #[serde(rename = "type")]
    pub crossing_type: CrossingType,
}

impl Crossing {
    pub fn new(crossing_type: CrossingType) -> Self {
        Self { order: crossing_type.n(), crossing_type }
    }

    fn double() -> Self {
        Self::new(CrossingType::standard(2).expect("valid type"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiCrossingDiagram {
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub edges: Vec<[Endpoint; 2]>,
}

/// Result of [`MultiCrossingDiagram::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub components: usize,
    pub projection_components: usize,
}

/// Direction of travel along each link component, in the order
/// [`MultiCrossingDiagram::traverse`] lists them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

/// One skein term chosen at every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    /// Index into each crossing's relation terms.
    pub choice: Vec<usize>,
    pub power: i64,
    pub multiplicity: BigInt,
    pub loops: usize,
}

/// How a crossing of order `n` is spread into `n(n-1)/2` double crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Wiring {
    /// Adjacent swaps pass by pass, left to right.
    Bubble,
    /// Each new strand is swapped all the way to the left edge in turn.
    Insertion,
}

impl Wiring {
    fn swaps(self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        match self {
            Wiring::Bubble => {
                for pass in 0..n.saturating_sub(1) {
                    out.extend(0..n - 1 - pass);
                }
            }
            Wiring::Insertion => {
                for p in 1..n {
                    out.extend((0..p).rev());
                }
            }
        }
        out
    }
}

impl MultiCrossingDiagram {
    /// A single crossingless loop.
    pub fn unknot() -> Self {
        Self { free_loops: 1, crossings: Vec::new(), edges: Vec::new() }
    }

    /// One crossing of type `t` closed off outside by `exterior`.
    pub fn single_crossing(t: CrossingType, exterior: &Split) -> Result<Self, DiagramError> {
        if exterior.n() != t.n() {
            return Err(DiagramError::OrderMismatch(0, exterior.n(), t.n()));
        }
        let edges = exterior.pairs().into_iter().map(|(a, b)| [(0, a), (0, b)]).collect();
        Ok(Self { free_loops: 0, crossings: vec![Crossing::new(t)], edges })
    }

    /// Builds a double-crossing diagram from planar-diagram code: `[a, b, c, d]` lists the
    /// labels around a crossing counterclockwise, starting with the incoming under-strand.
    pub fn from_pd(pd: &[[usize; 4]]) -> Result<Self, DiagramError> {
        let mut seen: HashMap<usize, Endpoint> = HashMap::new();
        let mut edges = Vec::new();
        for (i, x) in pd.iter().enumerate() {
            // Clockwise from the over-strand: d, c, b, a.
            for (spoke, &label) in [x[3], x[2], x[1], x[0]].iter().enumerate() {
                match seen.remove(&label) {
                    Some(other) => edges.push([other, (i, spoke)]),
                    None => {
                        seen.insert(label, (i, spoke));
                    }
                }
            }
        }
        if let Some((_, &(c, s))) = seen.iter().next() {
            return Err(DiagramError::Dangling(c, s));
        }
        let d = Self { free_loops: 0, crossings: vec![Crossing::double(); pd.len()], edges };
        if pd.is_empty() {
            return Ok(Self::unknot());
        }
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let d: Self = serde_json::from_str(text).map_err(|e| DiagramError::Io(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn load(path: &Path) -> Result<Self, DiagramError> {
        let text = std::fs::read_to_string(path).map_err(|e| DiagramError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.crossings.len() + 1);
        let mut total = 0;
        for c in &self.crossings {
            out.push(total);
            total += 2 * c.order;
        }
        out.push(total);
        out
    }

    /// For every flat endpoint index, the endpoint at the other end of its edge.
    fn edge_partner(&self) -> Result<(Vec<usize>, Vec<usize>), DiagramError> {
        let offsets = self.offsets();
        let total = *offsets.last().unwrap_or(&0);
        let mut partner = vec![usize::MAX; total];
        let flat = |(c, s): Endpoint| -> Result<usize, DiagramError> {
            let cr = self.crossings.get(c).ok_or(DiagramError::NoSuchEndpoint(c, s))?;
            if s >= 2 * cr.order {
                return Err(DiagramError::NoSuchEndpoint(c, s));
            }
            Ok(offsets[c] + s)
        };
        for [a, b] in &self.edges {
            let (fa, fb) = (flat(*a)?, flat(*b)?);
            if partner[fa] != usize::MAX || fa == fb {
                return Err(DiagramError::Duplicate(a.0, a.1));
            }
            partner[fa] = fb;
            if partner[fb] != usize::MAX {
                return Err(DiagramError::Duplicate(b.0, b.1));
            }
            partner[fb] = fa;
        }
        Ok((partner, offsets))
    }

    /// Checks the endpoint pairing and counts link and projection components.
    pub fn validate(&self) -> Result<Validation, DiagramError> {
        for (i, c) in self.crossings.iter().enumerate() {
            if c.order != c.crossing_type.n() {
                return Err(DiagramError::OrderMismatch(i, c.order, c.crossing_type.n()));
            }
        }
        if self.crossings.is_empty() && self.free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let (partner, offsets) = self.edge_partner()?;
        for (c, cr) in self.crossings.iter().enumerate() {
            for s in 0..2 * cr.order {
                if partner[offsets[c] + s] == usize::MAX {
                    return Err(DiagramError::Dangling(c, s));
                }
            }
        }
        Ok(Validation {
            components: self.traverse().len() + self.free_loops,
            projection_components: self.projection_components(),
        })
    }

    pub fn components(&self) -> usize {
        self.traverse().len() + self.free_loops
    }

    fn projection_components(&self) -> usize {
        let mut uf = UnionFind::new(self.crossings.len());
        for [a, b] in &self.edges {
            uf.union(a.0, b.0);
        }
        uf.count() + self.free_loops
    }

    /// Link components through crossings, each as the sequence of `(crossing, entry
    /// spoke)` passages met in order. Components start at their smallest endpoint.
    pub fn traverse(&self) -> Vec<Vec<Endpoint>> {
        let Ok((partner, offsets)) = self.edge_partner() else { return Vec::new() };
        let mut owner = Vec::with_capacity(partner.len());
        for (c, cr) in self.crossings.iter().enumerate() {
            for s in 0..2 * cr.order {
                owner.push((c, s));
            }
        }
        let mut visited = vec![false; partner.len()];
        let mut out = Vec::new();
        for start in 0..partner.len() {
            if visited[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut at = start;
            loop {
                let (c, s) = owner[at];
                let n = self.crossings[c].order;
                let exit = offsets[c] + (s + n) % (2 * n);
                visited[at] = true;
                visited[exit] = true;
                component.push((c, s));
                at = partner[exit];
                if at == start || at == usize::MAX {
                    break;
                }
            }
            out.push(component);
        }
        out
    }

    /// Projection and link components after replacing crossing `index` by `split`.
    ///
    /// Returns `(link components, projection components)`.
    pub fn split_components(&self, index: usize, split: &Split) -> Result<(usize, usize), DiagramError> {
        let (partner, offsets) = self.edge_partner()?;
        let total = partner.len();
        let mut link = UnionFind::new(total);
        let mut proj = UnionFind::new(total);
        for (a, &b) in partner.iter().enumerate() {
            link.union(a, b);
            proj.union(a, b);
        }
        for (c, cr) in self.crossings.iter().enumerate() {
            let n = cr.order;
            if c == index {
                for (a, b) in split.pairs() {
                    link.union(offsets[c] + a, offsets[c] + b);
                    proj.union(offsets[c] + a, offsets[c] + b);
                }
            } else {
                for s in 0..2 * n {
                    link.union(offsets[c] + s, offsets[c] + (s + n) % (2 * n));
                    proj.union(offsets[c] + s, offsets[c]);
                }
            }
        }
        Ok((link.count() + self.free_loops, proj.count() + self.free_loops))
    }

    /// Number of crossings of each order.
    pub fn order_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.crossings {
            *out.entry(c.order).or_insert(0) += 1;
        }
        out
    }

    /// The common order of all crossings, if there is one.
    pub fn uniform_order(&self) -> Option<usize> {
        let counts = self.order_counts();
        (counts.len() == 1).then(|| *counts.keys().next().expect("one key"))
    }

    /// Kauffman bracket by summing over one skein term per crossing.
    pub fn bracket(&self) -> Result<LaurentPoly, DiagramError> {
        self.validate()?;
        let (partner, offsets) = self.edge_partner()?;
        let mut options: Vec<Vec<(Split, LaurentPoly)>> = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let relation = build_relation(&c.crossing_type)?;
            options.push(
                relation
                    .by_split()
                    .into_iter()
                    .map(|(s, powers)| {
                        let poly = LaurentPoly::from_terms(powers.iter().map(|&(p, m)| (p as i64, BigInt::from(m))));
                        (s, poly)
                    })
                    .collect(),
            );
        }
        let mut by_loops: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut split_partner = vec![0usize; partner.len()];
        sum_states(&options, &offsets, &partner, &mut split_partner, 0, LaurentPoly::one(), &mut |loops, poly| {
            let slot = by_loops.entry(loops).or_insert_with(LaurentPoly::zero);
            *slot += poly;
        });
        let mut total = LaurentPoly::zero();
        for (loops, poly) in by_loops {
            let loops = loops + self.free_loops;
            total += &(&poly * &LaurentPoly::delta_power(loops as u32 - 1));
        }
        Ok(total)
    }

    /// Replaces every crossing of order above 2 by double crossings, one per pair of its
    /// strands, with the higher strand (smaller height) on top at each.
    pub fn perturb(&self) -> MultiCrossingDiagram {
        self.perturb_with(Wiring::Bubble)
    }

    pub fn perturb_with(&self, wiring: Wiring) -> MultiCrossingDiagram {
        // Nodes: real endpoints of the new diagram, then pass-through spokes of the old
        // crossings being spread out.
        let mut crossings: Vec<Crossing> = Vec::new();
        let mut links: Vec<(Node, Node)> = Vec::new();
        let mut kept: HashMap<usize, usize> = HashMap::new();
        for (c, cr) in self.crossings.iter().enumerate() {
            let n = cr.order;
            if n == 2 {
                kept.insert(c, crossings.len());
                crossings.push(cr.clone());
                continue;
            }
            let heights = cr.crossing_type.heights();
            let mut wire: Vec<usize> = (0..n).collect();
            let mut open: Vec<Node> = (0..n).map(|col| Node::Pass(c, col)).collect();
            for col in wiring.swaps(n) {
                let k = crossings.len();
                crossings.push(Crossing::double());
                let (a, b) = (wire[col], wire[col + 1]);
                // Spokes of the ports NW, NE, SE, SW.
                let ports = if heights[a] < heights[b] { [0, 1, 2, 3] } else { [3, 0, 1, 2] };
                links.push((open[col], Node::Real(k, ports[0])));
                links.push((open[col + 1], Node::Real(k, ports[1])));
                open[col] = Node::Real(k, ports[3]);
                open[col + 1] = Node::Real(k, ports[2]);
                wire.swap(col, col + 1);
            }
            for (col, node) in open.into_iter().enumerate() {
                links.push((node, Node::Pass(c, 2 * n - 1 - col)));
            }
        }
        let lift = |(c, s): Endpoint| -> Node {
            match kept.get(&c) {
                Some(&k) => Node::Real(k, s),
                None => Node::Pass(c, s),
            }
        };
        for [a, b] in &self.edges {
            links.push((lift(*a), lift(*b)));
        }
        let mut at: HashMap<Node, Vec<usize>> = HashMap::new();
        for (i, (u, v)) in links.iter().enumerate() {
            at.entry(*u).or_default().push(i);
            at.entry(*v).or_default().push(i);
        }
        let mut edges = Vec::new();
        let mut used = vec![false; links.len()];
        for (i, &(u, v)) in links.iter().enumerate() {
            if used[i] {
                continue;
            }
            let (start, other) = match (u, v) {
                (Node::Real(..), _) => (u, v),
                (_, Node::Real(..)) => (v, u),
                _ => continue,
            };
            used[i] = true;
            let (mut node, mut via) = (other, i);
            while let Node::Pass(..) = node {
                let next = *at[&node].iter().find(|&&l| l != via).expect("pass-through has two links");
                used[next] = true;
                let (p, q) = links[next];
                node = if p == node { q } else { p };
                via = next;
            }
            let (Node::Real(c1, s1), Node::Real(c2, s2)) = (start, node) else { unreachable!() };
            edges.push([(c1, s1), (c2, s2)]);
        }
        MultiCrossingDiagram { free_loops: self.free_loops, crossings, edges }
    }

    /// Writhe, from the sign of every pair of strands meeting at a crossing.
    pub fn writhe(&self, orientation: &Orientation) -> i64 {
        let components = self.traverse();
        let mut entry: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, comp) in components.iter().enumerate() {
            let reversed = orientation.reversed.get(i).copied().unwrap_or(false);
            for &(c, s) in comp {
                let n = self.crossings[c].order;
                let s = if reversed { (s + n) % (2 * n) } else { s };
                entry.insert((c, s % n), s);
            }
        }
        let mut w = 0;
        for (c, cr) in self.crossings.iter().enumerate() {
            let n = cr.order;
            let heights = cr.crossing_type.heights();
            for i in 0..n {
                for j in i + 1..n {
                    let (over, under) = if heights[i] < heights[j] { (i, j) } else { (j, i) };
                    let a = entry[&(c, over)];
                    let b = entry[&(c, under)];
                    w += if (b + 2 * n - a) % (2 * n) > n { 1 } else { -1 };
                }
            }
        }
        w
    }

    /// Jones polynomial in `A` (`t = A^-4`): `(-A^3)^(-w) <D>`.
    pub fn jones(&self) -> Result<LaurentPoly, DiagramError> {
        let components = self.validate()?.components;
        if components != 1 {
            return Err(DiagramError::NotAKnot(components));
        }
        Ok(normalize(&self.bracket()?, self.writhe(&Orientation::default())))
    }

    /// Jones polynomial computed through [`MultiCrossingDiagram::bracket_oracle`].
    pub fn jones_oracle(&self) -> Result<LaurentPoly, DiagramError> {
        let components = self.validate()?.components;
        if components != 1 {
            return Err(DiagramError::NotAKnot(components));
        }
        let flat = self.perturb();
        Ok(normalize(&bracket_oracle(&flat)?, flat.writhe(&Orientation::default())))
    }

    /// Bracket of the perturbed diagram using only the double-crossing smoothings.
    pub fn bracket_oracle(&self) -> Result<LaurentPoly, DiagramError> {
        self.validate()?;
        bracket_oracle(&self.perturb())
    }

    /// The mirror image: every height order reversed.
    pub fn mirror(&self) -> MultiCrossingDiagram {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        let mut shift = Vec::with_capacity(self.crossings.len());
        for cr in &self.crossings {
            let n = cr.order as u8;
            let flipped: Vec<u8> = cr.crossing_type.heights().iter().map(|&h| n + 1 - h).collect();
            let top = flipped.iter().position(|&h| h == 1).expect("permutation");
            let heights = (0..cr.order).map(|k| flipped[(k + top) % cr.order]).collect();
            crossings.push(Crossing::new(CrossingType::new(heights).expect("valid type")));
            shift.push(top);
        }
        let relabel = |(c, s): Endpoint| -> Endpoint {
            let n2 = 2 * self.crossings[c].order;
            (c, (s + n2 - shift[c]) % n2)
        };
        let edges = self.edges.iter().map(|[a, b]| [relabel(*a), relabel(*b)]).collect();
        MultiCrossingDiagram { free_loops: self.free_loops, crossings, edges }
    }

    /// Extreme summand exponents over all states, with maximal and minimal states.
    pub fn extremal_states(&self) -> Result<ExtremalStates, DiagramError> {
        self.extremal_states_with_budget(STATE_BUDGET)
    }

    pub fn extremal_states_with_budget(&self, budget: u128) -> Result<ExtremalStates, DiagramError> {
        self.validate()?;
        let (partner, offsets) = self.edge_partner()?;
        let mut options: Vec<Vec<SplitChoice>> = Vec::new();
        let mut relations = Vec::new();
        let mut combos: u128 = 1;
        for c in &self.crossings {
            let relation = build_relation(&c.crossing_type)?;
            let order = TermOrder::new(&relation);
            let high: Vec<bool> = (0..order.terms.len()).map(|i| order.covers[i].is_empty()).collect();
            let low: Vec<bool> = (0..order.terms.len()).map(|i| order.covered[i].is_empty()).collect();
            let mut per_split: BTreeMap<Split, SplitChoice> = BTreeMap::new();
            for (i, t) in relation.terms.iter().enumerate() {
                let entry = per_split.entry(t.split).or_insert(SplitChoice {
                    split: t.split,
                    top: (i64::MIN, 0),
                    bottom: (i64::MAX, 0),
                    top_high: false,
                    bottom_low: false,
                });
                if (t.power as i64) > entry.top.0 {
                    entry.top = (t.power as i64, i);
                    entry.top_high = high[i];
                }
                if (t.power as i64) < entry.bottom.0 {
                    entry.bottom = (t.power as i64, i);
                    entry.bottom_low = low[i];
                }
            }
            combos = combos.saturating_mul(per_split.len() as u128);
            options.push(per_split.into_values().collect());
            relations.push(relation);
        }
        if combos > budget {
            return Err(DiagramError::Budget(combos, budget));
        }
        let mut search = ExtremalSearch::default();
        let mut split_partner = vec![0usize; partner.len()];
        let mut choice = vec![0usize; self.crossings.len()];
        extremal_walk(&options, &offsets, &partner, &mut split_partner, &mut choice, 0, self.free_loops, &mut search);
        let make_state = |picks: &[usize], top: bool, loops: usize| -> State {
            let mut power = 0;
            let mut multiplicity = BigInt::from(1);
            let mut terms = Vec::new();
            for (c, &k) in picks.iter().enumerate() {
                let opt = &options[c][k];
                let index = if top { opt.top.1 } else { opt.bottom.1 };
                let term = relations[c].terms[index];
                power += term.power as i64;
                multiplicity *= term.multiplicity;
                terms.push(index);
            }
            State { choice: terms, power, multiplicity, loops }
        };
        let max_state = search.max_pick.as_ref().map(|(p, l)| make_state(p, true, *l));
        let min_state = search.min_pick.as_ref().map(|(p, l)| make_state(p, false, *l));
        Ok(ExtremalStates {
            top: search.top,
            bottom: search.bottom,
            size_smax: max_state.as_ref().map(|s| s.loops),
            size_smin: min_state.as_ref().map(|s| s.loops),
            max_state,
            min_state,
            combinations: combos as u64,
        })
    }

    /// Checks every span inequality that applies to this diagram.
    pub fn verify_span_bound(&self) -> Result<SpanReport, DiagramError> {
        let validation = self.validate()?;
        let bracket = self.bracket()?;
        let span = bracket.span().map_err(|e| DiagramError::Io(e.to_string()))? as i64;
        let mut widths = Vec::new();
        for c in &self.crossings {
            widths.push(build_relation(&c.crossing_type)?.width() as i64);
        }
        let width_sum: i64 = widths.iter().sum();
        let ext = self.extremal_states()?;
        let mut checks = Vec::new();
        checks.push(BoundCheck::new("span within extreme summands", span, ext.top - ext.bottom));
        let connected = validation.projection_components == 1 && (self.free_loops == 0 || self.crossings.is_empty());
        if let (Some(smax), Some(smin)) = (ext.size_smax, ext.size_smin) {
            let components = (smax + smin) as i64;
            checks.push(BoundCheck::new("span within widths plus components", span, width_sum + 2 * (components - 2)));
            if let (true, Some(n)) = (connected && !self.crossings.is_empty(), self.uniform_order()) {
                let c = self.crossings.len() as i64;
                let n = n as i64;
                let per_crossing = if n == 2 { 1 } else { 2 * n - 4 };
                checks.push(BoundCheck::new("extreme state components", components, per_crossing * c + 2));
                let per_crossing = if n == 2 { 4 } else { n * n / 2 + 4 * n - 8 };
                checks.push(BoundCheck::new("span per crossing", span, per_crossing * c));
                if n >= 3 {
                    checks.push(BoundCheck::new("span within type widths", span, width_sum + (4 * n - 8) * c));
                }
                if n == 5 {
                    let narrow: [CrossingType; 2] = ["13524".parse()?, "14253".parse()?];
                    let c512 = self.crossings.iter().filter(|x| !narrow.contains(&x.crossing_type)).count() as i64;
                    checks.push(BoundCheck::new("5-crossing type bound", span, 20 * c + 4 * c512));
                }
            }
        }
        if let Some(p) = self.petal_count() {
            let p = p as i64;
            checks.push(BoundCheck::new("petal bound", span, (p - 1) * (p - 1) / 2 + 4 * p - 12));
        }
        Ok(SpanReport {
            span,
            bracket: bracket.to_string(),
            width_sum,
            top: ext.top,
            bottom: ext.bottom,
            size_smax: ext.size_smax,
            size_smin: ext.size_smin,
            checks,
        })
    }

    /// Face count of the projection, from the clockwise spoke order at each crossing.
    pub fn faces(&self) -> Result<usize, DiagramError> {
        let (partner, offsets) = self.edge_partner()?;
        let mut owner = Vec::with_capacity(partner.len());
        for (c, cr) in self.crossings.iter().enumerate() {
            for s in 0..2 * cr.order {
                owner.push((c, s));
            }
        }
        let mut seen = vec![false; partner.len()];
        let mut faces = 0;
        for start in 0..partner.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let (c, s) = owner[partner[d]];
                d = offsets[c] + (s + 1) % (2 * self.crossings[c].order);
            }
        }
        Ok(faces)
    }

    /// Whether the spoke orders and edges embed in the sphere (Euler characteristic 2 per
    /// connected piece).
    pub fn is_planar(&self) -> Result<bool, DiagramError> {
        let v = self.crossings.len() as i64;
        let e = self.edges.len() as i64;
        let f = self.faces()? as i64;
        let pieces = (self.projection_components() - self.free_loops) as i64;
        Ok(v - e + f == 2 * pieces)
    }

    /// Doubles the order of every crossing without changing the knot: a parallel copy
    /// of the knot, pushed through each crossing beside the strand it follows and lying
    /// over everything, is spliced in at edge `basepoint`.
    pub fn double_order(&self, basepoint: usize) -> Result<MultiCrossingDiagram, DiagramError> {
        let components = self.validate()?.components;
        if components != 1 || self.free_loops != 0 {
            return Err(DiagramError::NotAKnot(components));
        }
        let [a, b] = *self.edges.get(basepoint).ok_or(DiagramError::EdgeIndex(basepoint))?;
        let mut passes = self.traverse().remove(0);
        let start = passes.iter().position(|&p| p == a || p == b).expect("basepoint lies on the knot");
        passes.rotate_left(start);
        let exit_of = |(c, s): Endpoint| (c, (s + self.crossings[c].order) % (2 * self.crossings[c].order));

        // Within each crossing, every old spoke s sits in a slot list; the copy enters
        // just counterclockwise of the entry spoke when it runs on the right, and just
        // clockwise when on the left, leaving on the opposite side of the exit spoke.
        struct Layout {
            // For each old spoke: copy endpoint inserted before it, and after it.
            before: Vec<Option<usize>>,
            after: Vec<Option<usize>>,
        }
        let mut layouts: Vec<Layout> = self
            .crossings
            .iter()
            .map(|cr| Layout { before: vec![None; 2 * cr.order], after: vec![None; 2 * cr.order] })
            .collect();
        // Copy endpoints are numbered 2i (entry of pass i) and 2i + 1 (exit).
        let mut right = true;
        for (i, &(c, e)) in passes.iter().enumerate() {
            let n = self.crossings[c].order;
            let x = (e + n) % (2 * n);
            let lay = &mut layouts[c];
            if right {
                lay.before[e] = Some(2 * i);
                lay.before[x] = Some(2 * i + 1);
            } else {
                lay.after[e] = Some(2 * i);
                lay.after[x] = Some(2 * i + 1);
            }
            right = !right;
        }

        let mut crossings = Vec::with_capacity(self.crossings.len());
        let mut old_spoke: Vec<Vec<usize>> = Vec::new();
        let mut copy_spoke: Vec<Endpoint> = vec![(0, 0); 2 * passes.len()];
        for (c, cr) in self.crossings.iter().enumerate() {
            let n = cr.order;
            let lay = &layouts[c];
            // Clockwise sequence of (old spoke | copy endpoint).
            let mut seq: Vec<Result<usize, usize>> = Vec::with_capacity(4 * n);
            for s in 0..2 * n {
                if let Some(g) = lay.before[s] {
                    seq.push(Err(g));
                }
                seq.push(Ok(s));
                if let Some(g) = lay.after[s] {
                    seq.push(Err(g));
                }
            }
            let mut rank: Vec<usize> = seq.iter().filter_map(|x| x.err()).filter(|g| g % 2 == 0).collect();
            rank.sort_unstable();
            let height = |item: &Result<usize, usize>| -> u8 {
                match item {
                    Ok(s) => n as u8 + cr.crossing_type.height_at(*s),
                    Err(g) => 1 + rank.iter().position(|&r| r == g - g % 2).expect("ranked") as u8,
                }
            };
            let top = seq.iter().position(|x| height(x) == 1).expect("copy passes every crossing");
            let m = 4 * n;
            let heights: Vec<u8> = (0..2 * n).map(|k| height(&seq[(top + k) % m])).collect();
            crossings.push(Crossing::new(CrossingType::new(heights)?));
            let mut olds = vec![0; 2 * n];
            for (pos, item) in seq.iter().enumerate() {
                let spoke = (pos + m - top) % m;
                match item {
                    Ok(s) => olds[*s] = spoke,
                    Err(g) => copy_spoke[*g] = (c, spoke),
                }
            }
            old_spoke.push(olds);
        }
        let lift = |(c, s): Endpoint| (c, old_spoke[c][s]);
        let mut edges: Vec<[Endpoint; 2]> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != basepoint)
            .map(|(_, [p, q])| [lift(*p), lift(*q)])
            .collect();
        let last = passes.len() - 1;
        for i in 0..last {
            edges.push([copy_spoke[2 * i + 1], copy_spoke[2 * i + 2]]);
        }
        // Splice: knot exit to the copy's last exit, the copy's first entry to knot entry.
        let (x, y) = (exit_of(passes[last]), passes[0]);
        edges.push([lift(x), copy_spoke[2 * last + 1]]);
        edges.push([copy_spoke[0], lift(y)]);
        let out = MultiCrossingDiagram { free_loops: 0, crossings, edges };
        out.validate()?;
        Ok(out)
    }

    /// Strand count if this is a petal diagram: one crossing of odd order whose spokes
    /// `2k` and `2k + 1` are joined outside.
    pub fn petal_count(&self) -> Option<usize> {
        if self.free_loops != 0 || self.crossings.len() != 1 {
            return None;
        }
        let p = self.crossings[0].order;
        if p.is_multiple_of(2) {
            return None;
        }
        let mut pairs: Vec<(usize, usize)> =
            self.edges.iter().map(|[a, b]| (a.1.min(b.1), a.1.max(b.1))).collect();
        pairs.sort_unstable();
        let expected: Vec<(usize, usize)> = (0..p).map(|k| (2 * k, 2 * k + 1)).collect();
        (pairs == expected).then_some(p)
    }

    /// Connected sum along edge `e1` of `self` and edge `e2` of `other`.
    pub fn connect_sum(&self, e1: usize, other: &MultiCrossingDiagram, e2: usize) -> Result<Self, DiagramError> {
        for d in [self, other] {
            let components = d.validate()?.components;
            if components != 1 {
                return Err(DiagramError::NotAKnot(components));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let [p, q] = *self.edges.get(e1).ok_or(DiagramError::EdgeIndex(e1))?;
        let [r, s] = *other.edges.get(e2).ok_or(DiagramError::EdgeIndex(e2))?;
        let shift = self.crossings.len();
        let moved = |(c, x): Endpoint| (c + shift, x);
        let mut edges: Vec<[Endpoint; 2]> =
            self.edges.iter().enumerate().filter(|&(i, _)| i != e1).map(|(_, e)| *e).collect();
        edges.extend(other.edges.iter().enumerate().filter(|&(i, _)| i != e2).map(|(_, [a, b])| [moved(*a), moved(*b)]));
        edges.push([p, moved(r)]);
        edges.push([q, moved(s)]);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().cloned());
        let out = MultiCrossingDiagram { free_loops: 0, crossings, edges };
        out.validate()?;
        Ok(out)
    }
}

/// Two crossings joined without edge crossings. Reading the spokes of `t0` clockwise from
/// `r0` and then those of `t1` clockwise from `r1` gives `2(n0 + n1)` points in a row;
/// `pairs` is a non-crossing matching of those points.
pub fn two_crossing(t0: &CrossingType, r0: usize, t1: &CrossingType, r1: usize, pairs: &Split) -> Result<MultiCrossingDiagram, DiagramError> {
    let (n0, n1) = (t0.n(), t1.n());
    if pairs.n() != n0 + n1 {
        return Err(DiagramError::OrderMismatch(1, pairs.n(), n0 + n1));
    }
    let point = |p: usize| -> Endpoint {
        if p < 2 * n0 {
            (0, (r0 + p) % (2 * n0))
        } else {
            (1, (r1 + p - 2 * n0) % (2 * n1))
        }
    };
    let edges = pairs.pairs().into_iter().map(|(p, q)| [point(p), point(q)]).collect();
    let d = MultiCrossingDiagram {
        free_loops: 0,
        crossings: vec![Crossing::new(t0.clone()), Crossing::new(t1.clone())],
        edges,
    };
    d.validate()?;
    Ok(d)
}

/// Seeded sample of connected two-crossing diagrams whose crossings share an order
/// drawn from `orders`.
pub fn two_crossing_corpus(seed: u64, count: usize, orders: std::ops::RangeInclusive<usize>) -> Result<Vec<MultiCrossingDiagram>, DiagramError> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let orders: Vec<usize> = orders.collect();
    let mut types = HashMap::new();
    let mut splits = HashMap::new();
    for &n in &orders {
        types.insert(n, crate::skein::all_types(n)?);
        splits.insert(n, crate::splits::enumerate_splits(2 * n).map_err(|e| DiagramError::Io(e.to_string()))?);
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = *orders.choose(&mut rng).expect("nonempty order range");
        let t0 = types[&n].choose(&mut rng).expect("types exist");
        let t1 = types[&n].choose(&mut rng).expect("types exist");
        let pairs = splits[&n].choose(&mut rng).expect("splits exist");
        let (r0, r1) = (rng.gen_range(0..2 * n), rng.gen_range(0..2 * n));
        let d = two_crossing(t0, r0, t1, r1, pairs)?;
        if d.projection_components() == 1 {
            out.push(d);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Real(usize, usize),
    Pass(usize, usize),
}

/// Extreme exponents of state summands and witnesses built from high (resp. low) terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalStates {
    /// `M`: the largest `power + 2(loops - 1)` over all states.
    pub top: i64,
    /// `m`: the smallest `power - 2(loops - 1)` over all states.
    pub bottom: i64,
    /// Loops of the largest all-high state attaining `M`; `None` if no all-high state
    /// attains it.
    pub size_smax: Option<usize>,
    pub size_smin: Option<usize>,
    pub max_state: Option<State>,
    pub min_state: Option<State>,
    pub combinations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: i64,
    pub bound: i64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &str, value: i64, bound: i64) -> Self {
        Self { name: name.to_string(), value, bound, holds: value <= bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub span: i64,
    pub bracket: String,
    pub width_sum: i64,
    pub top: i64,
    pub bottom: i64,
    pub size_smax: Option<usize>,
    pub size_smin: Option<usize>,
    pub checks: Vec<BoundCheck>,
}

impl SpanReport {
    pub fn holds(&self) -> bool {
        self.size_smax.is_some() && self.size_smin.is_some() && self.checks.iter().all(|c| c.holds)
    }
}

struct SplitChoice {
    split: Split,
    top: (i64, usize),
    bottom: (i64, usize),
    top_high: bool,
    bottom_low: bool,
}

#[derive(Default)]
struct ExtremalSearch {
    top: i64,
    bottom: i64,
    started: bool,
    max_pick: Option<(Vec<usize>, usize)>,
    min_pick: Option<(Vec<usize>, usize)>,
}

#[allow(clippy::too_many_arguments)]
fn extremal_walk(
    options: &[Vec<SplitChoice>],
    offsets: &[usize],
    partner: &[usize],
    split_partner: &mut [usize],
    choice: &mut [usize],
    depth: usize,
    free_loops: usize,
    search: &mut ExtremalSearch,
) {
    if depth == options.len() {
        let loops = count_cycles(partner, split_partner) + free_loops;
        let slack = 2 * (loops as i64 - 1);
        let top: i64 = choice.iter().enumerate().map(|(c, &k)| options[c][k].top.0).sum::<i64>() + slack;
        let bottom: i64 = choice.iter().enumerate().map(|(c, &k)| options[c][k].bottom.0).sum::<i64>() - slack;
        let all_high = choice.iter().enumerate().all(|(c, &k)| options[c][k].top_high);
        let all_low = choice.iter().enumerate().all(|(c, &k)| options[c][k].bottom_low);
        if !search.started || top > search.top {
            search.top = top;
            search.max_pick = None;
        }
        if !search.started || bottom < search.bottom {
            search.bottom = bottom;
            search.min_pick = None;
        }
        search.started = true;
        if top == search.top && all_high && search.max_pick.as_ref().is_none_or(|(_, l)| loops > *l) {
            search.max_pick = Some((choice.to_vec(), loops));
        }
        if bottom == search.bottom && all_low && search.min_pick.as_ref().is_none_or(|(_, l)| loops > *l) {
            search.min_pick = Some((choice.to_vec(), loops));
        }
        return;
    }
    for (k, opt) in options[depth].iter().enumerate() {
        let base = offsets[depth];
        for (a, b) in opt.split.pairs() {
            split_partner[base + a] = base + b;
            split_partner[base + b] = base + a;
        }
        choice[depth] = k;
        extremal_walk(options, offsets, partner, split_partner, choice, depth + 1, free_loops, search);
    }
}

#[allow(clippy::too_many_arguments)]
fn sum_states(
    options: &[Vec<(Split, LaurentPoly)>],
    offsets: &[usize],
    partner: &[usize],
    split_partner: &mut [usize],
    depth: usize,
    weight: LaurentPoly,
    emit: &mut dyn FnMut(usize, &LaurentPoly),
) {
    if depth == options.len() {
        emit(count_cycles(partner, split_partner), &weight);
        return;
    }
    for (split, poly) in &options[depth] {
        let base = offsets[depth];
        for (a, b) in split.pairs() {
            split_partner[base + a] = base + b;
            split_partner[base + b] = base + a;
        }
        let next = &weight * poly;
        sum_states(options, offsets, partner, split_partner, depth + 1, next, emit);
    }
}

/// Cycles of the permutation alternating edge partners and split partners.
fn count_cycles(edge: &[usize], split: &[usize]) -> usize {
    let mut seen = vec![false; edge.len()];
    let mut loops = 0;
    for start in 0..edge.len() {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = edge[p];
            seen[q] = true;
            p = split[q];
            if p == start {
                break;
            }
        }
    }
    loops
}

fn normalize(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    bracket.shift(-3 * writhe).scale(&BigInt::from(sign))
}

/// Bracket of a diagram made only of double crossings, summed over A/B smoothings.
fn bracket_oracle(d: &MultiCrossingDiagram) -> Result<LaurentPoly, DiagramError> {
    let c = d.crossings.len();
    if d.crossings.iter().any(|x| x.order != 2) {
        return Err(DiagramError::MixedOrders);
    }
    if c == 0 {
        return Ok(LaurentPoly::delta_power(d.free_loops as u32 - 1));
    }
    let endpoint = |(x, s): Endpoint| 4 * x + s;
    let mut counts: HashMap<(i64, usize), u64> = HashMap::new();
    for mask in 0u64..1 << c {
        let mut uf = UnionFind::new(4 * c);
        for [a, b] in &d.edges {
            uf.union(endpoint(*a), endpoint(*b));
        }
        for x in 0..c {
            // A joins spoke 0 (over strand) to the spoke clockwise of it.
            if mask >> x & 1 == 1 {
                uf.union(4 * x, 4 * x + 1);
                uf.union(4 * x + 2, 4 * x + 3);
            } else {
                uf.union(4 * x + 1, 4 * x + 2);
                uf.union(4 * x + 3, 4 * x);
            }
        }
        let a = mask.count_ones() as i64;
        let power = a - (c as i64 - a);
        *counts.entry((power, uf.count() + d.free_loops)).or_insert(0) += 1;
    }
    let mut total = LaurentPoly::zero();
    for ((power, loops), count) in counts {
        total += &LaurentPoly::delta_power(loops as u32 - 1).shift(power).scale(&BigInt::from(count));
    }
    Ok(total)
}

struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sets: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }

    fn count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::all_types;
    use crate::splits::enumerate_splits;

    fn trefoil() -> MultiCrossingDiagram {
        MultiCrossingDiagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap()
    }

    fn figure_eight() -> MultiCrossingDiagram {
        MultiCrossingDiagram::from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap()
    }

    #[test]
    fn trefoil_bracket_and_jones() {
        let d = trefoil();
        assert_eq!(d.validate().unwrap(), Validation { components: 1, projection_components: 1 });
        assert_eq!(d.bracket().unwrap().to_string(), "-A^5 - A^-3 + A^-7");
        assert_eq!(d.writhe(&Orientation::default()), 3);
        let expected = LaurentPoly::from_terms([(-4, 1), (-12, 1), (-16, -1)]);
        assert_eq!(d.jones().unwrap(), expected);
        assert_eq!(d.jones_oracle().unwrap(), expected);
        assert_eq!(d.mirror().jones().unwrap(), expected.mirror());
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let j = figure_eight().jones().unwrap();
        assert_eq!(j, j.mirror());
        assert_eq!(j.span().unwrap(), 16);
    }

    #[test]
    fn unknot_and_free_loops() {
        assert_eq!(MultiCrossingDiagram::unknot().bracket().unwrap(), LaurentPoly::one());
        let two = MultiCrossingDiagram { free_loops: 2, ..MultiCrossingDiagram::unknot() };
        assert_eq!(two.bracket().unwrap(), LaurentPoly::delta());
        assert!(matches!(two.jones(), Err(DiagramError::NotAKnot(2))));
    }

    #[test]
    fn validation_errors() {
        let mut d = trefoil();
        d.edges.pop();
        assert!(matches!(d.validate(), Err(DiagramError::Dangling(..))));
        let mut d = trefoil();
        let e = d.edges[0];
        d.edges.push(e);
        assert!(matches!(d.validate(), Err(DiagramError::Duplicate(..))));
        let mut d = trefoil();
        d.crossings[0].order = 3;
        assert!(matches!(d.validate(), Err(DiagramError::OrderMismatch(0, 3, 2))));
    }

    #[test]
    fn single_crossings_match_oracle() {
        for n in 2..=4 {
            for t in all_types(n).unwrap() {
                for s in enumerate_splits(n).unwrap() {
                    let d = MultiCrossingDiagram::single_crossing(t.clone(), &s).unwrap();
                    let b = d.bracket().unwrap();
                    assert_eq!(b, d.bracket_oracle().unwrap(), "{t} {s}");
                    assert_eq!(b, bracket_oracle(&d.perturb_with(Wiring::Insertion)).unwrap(), "{t} {s}");
                    let flat = d.perturb();
                    assert_eq!(d.writhe(&Orientation::default()), flat.writhe(&Orientation::default()));
                }
            }
        }
    }

    #[test]
    fn mirror_reverses_bracket() {
        for t in all_types(4).unwrap() {
            for s in enumerate_splits(4).unwrap() {
                let d = MultiCrossingDiagram::single_crossing(t.clone(), &s).unwrap();
                assert_eq!(d.mirror().bracket().unwrap(), d.bracket().unwrap().mirror());
            }
        }
    }

    #[test]
    fn connected_sum_multiplies_brackets() {
        let (a, b) = (trefoil(), figure_eight());
        for e1 in 0..a.edges.len() {
            let sum = a.connect_sum(e1, &b, 1).unwrap();
            assert_eq!(sum.components(), 1);
            assert_eq!(sum.bracket().unwrap(), &a.bracket().unwrap() * &b.bracket().unwrap());
            assert_eq!(sum.jones().unwrap(), &a.jones().unwrap() * &b.jones().unwrap());
        }
    }

    #[test]
    fn splitting_components() {
        let t: CrossingType = "123".parse().unwrap();
        let s: Split = "(0,5)(1,2)(3,4)".parse().unwrap();
        let d = MultiCrossingDiagram::single_crossing(t, &s).unwrap();
        let r: Split = "(0,1)(2,3)(4,5)".parse().unwrap();
        assert_eq!(d.split_components(0, &r).unwrap(), (1, 1));
        assert_eq!(d.split_components(0, &s).unwrap(), (3, 3));
    }

    #[test]
    fn trefoil_satisfies_bounds() {
        let report = trefoil().verify_span_bound().unwrap();
        assert_eq!(report.span, 12);
        assert_eq!((report.size_smax, report.size_smin), (Some(2), Some(3)));
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn petal_detection() {
        let t: CrossingType = "13524".parse().unwrap();
        let ext = Split::from_pairs(5, &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]).unwrap();
        let d = MultiCrossingDiagram::single_crossing(t, &ext).unwrap();
        assert_eq!(d.petal_count(), Some(5));
        let report = d.verify_span_bound().unwrap();
        assert!(report.checks.iter().any(|c| c.name == "petal bound"));
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn json_round_trip() {
        let d = trefoil();
        let text = d.to_json();
        assert!(text.contains("\"type\":[1,2]"));
        assert_eq!(MultiCrossingDiagram::from_json(&text).unwrap(), d);
    }

    #[test]
    fn planarity() {
        assert!(trefoil().is_planar().unwrap());
        assert_eq!(trefoil().faces().unwrap(), 5);
        // Swapping two endpoints of the trefoil breaks the embedding.
        let mut d = trefoil();
        let (x, y) = (d.edges[0][1], d.edges[1][1]);
        d.edges[0][1] = y;
        d.edges[1][1] = x;
        assert!(!d.is_planar().unwrap());
        let corpus = two_crossing_corpus(7, 40, 3..=5).unwrap();
        assert_eq!(corpus, two_crossing_corpus(7, 40, 3..=5).unwrap());
        assert!(corpus.iter().all(|d| d.is_planar().unwrap() && d.validate().unwrap().projection_components == 1));
    }

    #[test]
    fn doubling_keeps_the_knot() {
        let d = trefoil();
        let j = d.jones().unwrap();
        for bp in 0..d.edges.len() {
            let doubled = d.double_order(bp).unwrap();
            assert_eq!(doubled.order_counts(), BTreeMap::from([(4, 3)]));
            assert!(doubled.is_planar().unwrap());
            assert_eq!(doubled.jones().unwrap(), j);
        }
        let t: CrossingType = "1324".parse().unwrap();
        let single = enumerate_splits(4)
            .unwrap()
            .into_iter()
            .map(|s| MultiCrossingDiagram::single_crossing(t.clone(), &s).unwrap())
            .find(|d| d.components() == 1)
            .unwrap();
        let doubled = single.double_order(0).unwrap();
        assert_eq!(doubled.order_counts(), BTreeMap::from([(8, 1)]));
        assert_eq!(doubled.jones().unwrap(), single.jones().unwrap());
        assert!(matches!(MultiCrossingDiagram::unknot().double_order(0), Err(DiagramError::NotAKnot(_)) | Err(DiagramError::EdgeIndex(0))));
    }
}
