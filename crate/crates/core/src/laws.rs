//! Exhaustive checks of the combinatorial laws relating splits, overstrands and skein
//! terms at small orders. Each check returns a [`LawReport`] listing counterexamples.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::skein::{
    all_types, build_relation, classify_offspring, CrossingType, Direction, Overlay, SkeinError, Smoothing,
    TermOrder,
};
use crate::splits::{closure_count, enumerate_splits, OverstrandPos, Split, SplitError, SplitGraph};

const LISTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub n: usize,
    pub checked: u64,
    pub violation_count: u64,
    /// The first few counterexamples, rendered as text.
    pub violations: Vec<String>,
}

impl LawReport {
    fn new(law: &str, n: usize) -> Self {
        Self { law: law.to_string(), n, checked: 0, violation_count: 0, violations: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < LISTED {
                self.violations.push(describe());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LawError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// Number of clockwise rotation steps examined from an overstrand.
///
/// For odd `n` the rotation `r_⌈n/2⌉` already sits past the perpendicular position, and
/// the step into it can be level even for the parallel split, so odd orders stop at
/// `⌊n/2⌋` in both directions.
pub fn clockwise_steps(n: usize) -> usize {
    n / 2
}

/// `d(S,T) = n - ||S,T||` for every pair of splits.
pub fn distance_matches_closure(n: usize) -> Result<LawReport, LawError> {
    let graph = SplitGraph::new(n)?;
    let mut report = LawReport::new("split distance equals n minus closure count", n);
    for (i, s) in graph.splits.iter().enumerate() {
        for (j, t) in graph.splits.iter().enumerate() {
            let d = graph.distance(i, j);
            let c = closure_count(s, t)?;
            report.check(d == Some(n - c), || format!("S={s} T={t} d={d:?} closure={c}"));
        }
    }
    Ok(report)
}

/// The split-move graph is connected and its distance is a metric.
pub fn split_distance_is_metric(n: usize) -> Result<LawReport, LawError> {
    let graph = SplitGraph::new(n)?;
    let k = graph.splits.len();
    let mut report = LawReport::new("split distance is a metric on a connected graph", n);
    for i in 0..k {
        for j in 0..k {
            let d = graph.distance(i, j);
            report.check(d.is_some(), || format!("{} and {} disconnected", graph.splits[i], graph.splits[j]));
            let Some(d) = d else { continue };
            report.check((d == 0) == (i == j), || format!("zero distance mismatch at {}", graph.splits[i]));
            report.check(graph.distance(j, i) == Some(d), || format!("asymmetric at {}", graph.splits[i]));
            if n <= 5 {
                for l in 0..k {
                    if let (Some(a), Some(b)) = (graph.distance(i, l), graph.distance(l, j)) {
                        report.check(d <= a + b, || {
                            format!("triangle {} {} {}", graph.splits[i], graph.splits[l], graph.splits[j])
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Every split move changes the closure count against a fixed exterior split by one.
pub fn split_move_changes_closure_by_one(n: usize) -> Result<LawReport, LawError> {
    let splits = enumerate_splits(n)?;
    let mut report = LawReport::new("split move changes closure count by one", n);
    for s in &splits {
        for u in s.neighbors() {
            for t in &splits {
                let a = closure_count(s, t)? as i64;
                let b = closure_count(&u, t)? as i64;
                report.check((a - b).abs() == 1, || format!("S={s} U={u} T={t}"));
            }
        }
    }
    Ok(report)
}

/// With `|I(O,T)| = n - 2m`, rotating `O` gives `2c + l ≤ 2m` in each direction.
pub fn rotation_step_bound(n: usize) -> Result<LawReport, LawError> {
    rotation_step_bound_with(n, clockwise_steps(n))
}

/// [`rotation_step_bound`] with an explicit number of clockwise steps.
pub fn rotation_step_bound_with(n: usize, cw_steps: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("rotations add at most 2m intersections", n);
    for s in enumerate_splits(n)? {
        for g in 0..2 * n {
            let o = OverstrandPos::new(g);
            let m2 = n - s.intersections(o);
            let prof = s.rotation_profile(o);
            let cw = prof.clockwise_steps(cw_steps);
            let ccw = prof.counterclockwise_steps(n / 2);
            report.check(2 * cw.increasing + cw.level <= m2, || format!("T={s} gap={g} clockwise {:?}", prof.clockwise));
            report.check(2 * ccw.increasing + ccw.level <= m2, || {
                format!("T={s} gap={g} counterclockwise {:?}", prof.counterclockwise)
            });
        }
    }
    Ok(report)
}

/// With `|I(O',T)| = n - 2m`, the rotation past `m + j` endpoints meets at most `n - 2j` arcs.
pub fn rotation_reach_bound(n: usize) -> Result<LawReport, LawError> {
    let cw_limit = clockwise_steps(n);
    let ccw_limit = n / 2;
    let mut report = LawReport::new("rotation past m+j endpoints meets at most n-2j arcs", n);
    for s in enumerate_splits(n)? {
        for g in 0..2 * n {
            let o = OverstrandPos::new(g);
            let m = (n - s.intersections(o)) / 2;
            for j in 0..=n {
                if m + j <= cw_limit {
                    let got = s.intersections(o.rotate_cw(n, m + j));
                    report.check(got + 2 * j <= n, || format!("T={s} gap={g} m={m} j={j} clockwise meets {got}"));
                }
                if m + j <= ccw_limit {
                    let got = s.intersections(o.rotate_ccw(n, m + j));
                    report.check(got + 2 * j <= n, || {
                        format!("T={s} gap={g} m={m} j={j} counterclockwise meets {got}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// If `|I(O',S)| + |I(O',T)| = n + p` then `|I(O,S)| + |I(O,T)| - 2I* ≤ n - p` for every `O`,
/// where `I*` is the smaller of the two counts of arcs crossed by both strands.
pub fn double_overstrand_bound(n: usize) -> Result<LawReport, LawError> {
    let splits = enumerate_splits(n)?;
    let mut report = LawReport::new("shared intersections bound the second overstrand", n);
    for s in &splits {
        for t in &splits {
            for g1 in 0..n {
                let o1 = OverstrandPos::new(g1);
                let p = (s.intersections(o1) + t.intersections(o1)) as i64 - n as i64;
                for g in 0..n {
                    let o = OverstrandPos::new(g);
                    let star = s.common_intersections(o, o1).min(t.common_intersections(o, o1)) as i64;
                    let lhs = (s.intersections(o) + t.intersections(o)) as i64 - 2 * star;
                    report.check(lhs <= n as i64 - p, || format!("S={s} T={t} O'={g1} O={g} lhs={lhs} p={p}"));
                }
            }
        }
    }
    Ok(report)
}

/// The power gap between two terms is bounded by how many arcs one overstrand can
/// meet in both splits together.
pub fn power_gap_bound(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("power gap shrinks with shared overstrand intersections", n);
    let floor = (n * n / 2) as i64;
    for t in all_types(n)? {
        let relation = build_relation(&t)?;
        for a in &relation.terms {
            for b in &relation.terms {
                let max = (0..n)
                    .map(|g| {
                        let o = OverstrandPos::new(g);
                        a.split.intersections(o) + b.split.intersections(o)
                    })
                    .max()
                    .unwrap_or(0) as i64;
                let bound = if n.is_multiple_of(2) {
                    let k = (max - n as i64) / 2;
                    floor - 2 * k * k
                } else {
                    let k = (max - n as i64 - 1) / 2;
                    floor - 2 * k * k - 2 * k
                };
                let gap = (a.power - b.power).abs() as i64;
                report.check(gap <= bound, || {
                    format!("type {t}: {} @{} vs {} @{}: gap {gap} > {bound}", a.split, a.power, b.split, b.power)
                });
            }
        }
    }
    Ok(report)
}

/// Laying `O` on `T` and smoothing gives `|I(O',T')| ≤ |I(O',T)| + 1`, with equality
/// exactly when `O` misses `T`, or no arc is met by both strands, or `O` lies
/// counterclockwise of `O'` and every arc met by both is smoothed A, or `O` lies
/// clockwise of `O'` and all of those are smoothed B.
///
/// `n` is the order after adding `O`.
pub fn intersection_growth(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("new strand adds at most one intersection", n);
    let m = n - 1;
    for t in enumerate_splits(m)? {
        for g in 0..2 * m {
            let overlay = Overlay::new(&t, OverstrandPos::new(g));
            let old = overlay.old_arcs();
            let crossed = overlay.crossed_arcs().to_vec();
            let k = crossed.len();
            for mask in 0..1u32 << k {
                let smoothing = |i: usize| if mask >> i & 1 == 1 { Smoothing::A } else { Smoothing::B };
                let child = overlay.resolve(smoothing);
                for g2 in 1..=n {
                    let o2 = OverstrandPos::new(g2);
                    let before = old.iter().filter(|&&(a, b)| o2.separates(n, a, b)).count();
                    let after = child.intersections(o2);
                    let shared: Vec<usize> =
                        (0..k).filter(|&i| o2.separates(n, crossed[i].0, crossed[i].1)).collect();
                    // O runs from spoke 0 to spoke n. It counts as counterclockwise of O'
                    // when turning O' counterclockwise onto it sweeps past no endpoint of
                    // a shared arc, i.e. every shared arc leaves O's east side at or after
                    // the gap of O'.
                    let ccw_of = shared.iter().all(|&i| crossed[i].0 >= g2);
                    let cw_of = shared.iter().all(|&i| crossed[i].0 < g2);
                    // With no shared arcs the smoothed strand crosses O' once and nothing
                    // else, so equality holds whatever the smoothing.
                    let cond1 = k == 0;
                    let vacuous = shared.is_empty();
                    let cond2 = ccw_of && shared.iter().all(|&i| smoothing(i) == Smoothing::A);
                    let cond3 = cw_of && shared.iter().all(|&i| smoothing(i) == Smoothing::B);
                    let equality_expected = cond1 || vacuous || cond2 || cond3;
                    report.check(after <= before + 1, || format!("T={t} gap={g} O'={g2} mask={mask:b}: {after} > {before}+1"));
                    report.check((after == before + 1) == equality_expected, || {
                        format!("T={t} gap={g} O'={g2} mask={mask:b}: after={after} before={before}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Every split meeting `O` in `n - 2m` arcs (`m ≥ 1`) is one arc surgery away from some
/// split meeting it in two more.
pub fn surgery_has_inverse(n: usize) -> Result<LawReport, LawError> {
    let splits = enumerate_splits(n)?;
    let mut report = LawReport::new("arc surgery results have a preimage", n);
    for g in 0..n {
        let o = OverstrandPos::new(g);
        let mut reached: HashSet<Split> = HashSet::new();
        for t0 in &splits {
            for t1 in t0.arc_surgeries(o) {
                reached.insert(t1);
            }
        }
        for t1 in &splits {
            if t1.intersections(o) + 2 <= n {
                report.check(reached.contains(t1), || format!("T1={t1} gap={g} has no preimage"));
            }
        }
    }
    Ok(report)
}

/// Split distance between each split and the results of one arc surgery on it.
pub fn surgery_distance_profile(n: usize) -> Result<BTreeMap<usize, usize>, LawError> {
    let graph = SplitGraph::new(n)?;
    let mut out = BTreeMap::new();
    for t0 in &graph.splits {
        for g in 0..n {
            for t1 in t0.arc_surgeries(OverstrandPos::new(g)) {
                let d = graph.split_distance(t0, &t1).expect("connected");
                *out.entry(d).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// High splits turn counterclockwise or run straight; low splits turn clockwise or run
/// straight.
pub fn high_low_directions(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("high splits turn counterclockwise, low splits clockwise", n);
    for t in all_types(n)? {
        let order = TermOrder::new(&*build_relation(&t)?);
        for i in order.high() {
            let s = order.terms[i].split;
            let d = classify_offspring(&s, 0)?;
            report.check(matches!(d, Direction::Counterclockwise | Direction::Straight), || {
                format!("type {t}: high {s} is {d:?}")
            });
        }
        for i in order.low() {
            let s = order.terms[i].split;
            let d = classify_offspring(&s, 0)?;
            report.check(matches!(d, Direction::Clockwise | Direction::Straight), || {
                format!("type {t}: low {s} is {d:?}")
            });
        }
    }
    Ok(report)
}

fn high_low_splits(t: &CrossingType) -> Result<(HashSet<Split>, HashSet<Split>), LawError> {
    let order = TermOrder::new(&*build_relation(t)?);
    let high = order.high().into_iter().map(|i| order.terms[i].split).collect();
    let low = order.low().into_iter().map(|i| order.terms[i].split).collect();
    Ok((high, low))
}

/// No split is both high and low.
pub fn high_low_disjoint(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("no split is both high and low", n);
    for t in all_types(n)? {
        let (high, low) = high_low_splits(&t)?;
        for s in &high {
            report.check(!low.contains(s), || format!("type {t}: {s} is high and low"));
        }
    }
    Ok(report)
}

/// High and low splits are at least two split moves apart.
pub fn high_low_distance(n: usize) -> Result<LawReport, LawError> {
    let graph = SplitGraph::new(n)?;
    let mut report = LawReport::new("high and low splits are two moves apart", n);
    for t in all_types(n)? {
        let (high, low) = high_low_splits(&t)?;
        for h in &high {
            for l in &low {
                let d = graph.split_distance(h, l).expect("connected");
                report.check(d >= 2, || format!("type {t}: d({h}, {l}) = {d}"));
            }
        }
    }
    Ok(report)
}

/// Straight splits appear only in relations of odd order.
pub fn straight_only_odd(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("straight splits only at odd order", n);
    for t in all_types(n)? {
        for term in &build_relation(&t)?.terms {
            let straight = classify_offspring(&term.split, 0)? == Direction::Straight;
            report.check(!straight || n % 2 == 1, || format!("type {t}: {} is straight", term.split));
        }
    }
    Ok(report)
}

/// Moving a single crossing's split down the order never raises the top exponent of a
/// state, and moving it up never lowers the bottom one.
pub fn order_switching_monotone(n: usize) -> Result<LawReport, LawError> {
    let exteriors = enumerate_splits(n)?;
    let mut report = LawReport::new("lowering a split never raises the top power", n);
    for t in all_types(n)? {
        let order = TermOrder::new(&*build_relation(&t)?);
        let loops: Vec<Vec<i64>> = order
            .terms
            .iter()
            .map(|term| exteriors.iter().map(|e| closure_count(&term.split, e).map(|c| c as i64)).collect())
            .collect::<Result<_, _>>()?;
        for lower in 0..order.terms.len() {
            for upper in order.above(lower) {
                let (pl, pu) = (order.terms[lower].power as i64, order.terms[upper].power as i64);
                for (e, ext) in exteriors.iter().enumerate() {
                    let (ll, lu) = (loops[lower][e], loops[upper][e]);
                    report.check(pl + 2 * (ll - 1) <= pu + 2 * (lu - 1), || {
                        format!("type {t} exterior {ext}: {} below {}", order.terms[lower].split, order.terms[upper].split)
                    });
                    report.check(pu - 2 * (lu - 1) >= pl - 2 * (ll - 1), || {
                        format!("type {t} exterior {ext}: {} above {}", order.terms[upper].split, order.terms[lower].split)
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Every relation of order `n` has width at most `⌊n²/2⌋`.
pub fn width_bound(n: usize) -> Result<LawReport, LawError> {
    let mut report = LawReport::new("width at most floor(n^2/2)", n);
    let widths = crate::skein::realized_widths(n)?;
    for (&w, &count) in &widths {
        for _ in 0..count {
            report.check(w as usize <= n * n / 2, || format!("width {w} exceeds {}", n * n / 2));
        }
    }
    Ok(report)
}

/// Replacing a single crossing by splits `U` and `V` leaves at most `2n - d(U, V)`
/// projection components between them, for every exterior.
pub fn split_component_bound(n: usize) -> Result<LawReport, LawError> {
    let graph = SplitGraph::new(n)?;
    let t = CrossingType::standard(n)?;
    let mut report = LawReport::new("projection components after splitting bounded by distance", n);
    for exterior in &graph.splits {
        let d = crate::diagram::MultiCrossingDiagram::single_crossing(t.clone(), exterior)?;
        let mut k = Vec::with_capacity(graph.splits.len());
        for u in &graph.splits {
            let (link, projection) = d.split_components(0, u)?;
            report.check(link == closure_count(u, exterior)?, || format!("T={exterior} U={u} link={link}"));
            k.push(projection);
        }
        for i in 0..graph.splits.len() {
            for j in 0..graph.splits.len() {
                let dist = graph.distance(i, j).unwrap_or(usize::MAX);
                report.check(k[i] + k[j] + dist <= 2 * n, || {
                    format!("T={exterior} U={} V={} k={}+{} d={dist}", graph.splits[i], graph.splits[j], k[i], k[j])
                });
            }
        }
    }
    Ok(report)
}

/// Runs every law that applies at order `n`, within the orders where the exhaustive
/// checks stay fast.
pub fn run_all(n: usize) -> Result<Vec<LawReport>, LawError> {
    let mut out = Vec::new();
    if n <= 6 {
        out.push(distance_matches_closure(n)?);
        out.push(split_distance_is_metric(n)?);
        out.push(split_move_changes_closure_by_one(n)?);
        out.push(rotation_step_bound(n)?);
        out.push(rotation_reach_bound(n)?);
        out.push(surgery_has_inverse(n)?);
        out.push(split_component_bound(n)?);
    }
    if n <= 5 {
        out.push(double_overstrand_bound(n)?);
        out.push(intersection_growth(n)?);
    }
    if n >= 2 {
        out.push(width_bound(n)?);
    }
    if (3..=5).contains(&n) {
        out.push(power_gap_bound(n)?);
        out.push(order_switching_monotone(n)?);
    }
    if (3..=6).contains(&n) {
        out.push(high_low_directions(n)?);
        out.push(high_low_disjoint(n)?);
        out.push(high_low_distance(n)?);
        out.push(straight_only_odd(n)?);
    }
    Ok(out)
}

/// Realized widths keyed by width, and for each width the lexicographically first type.
pub fn width_witnesses(n: usize) -> Result<BTreeMap<u32, CrossingType>, LawError> {
    let mut out: BTreeMap<u32, CrossingType> = BTreeMap::new();
    for t in all_types(n)? {
        let w = crate::skein::relation_width(&t)?;
        out.entry(w).or_insert(t);
    }
    Ok(out)
}
