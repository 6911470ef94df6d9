//! Exhaustive suites for the bounds and Q-increasing moves.

use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{h_gadget, path_join, PathJoinSpec};
use crate::enumeration::Family;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recognition::local_structure_violations;
use crate::spectral::{eta_max, q_compare_to, q_index, reference_tol, Comparison, SpectralResult};
use crate::transforms::{path_shift, perron_rotate_with, role_tuples, MoveKind, TransformMove};

use super::checks::class_members;
use super::report::{timed, Status, VerificationReport};

/// Slack used when a bound is checked numerically.
pub const BOUND_TOL: f64 = 1e-9;
/// Random specs per order for the Perron-entry bound above the exhaustive range.
pub const CLAIM_SAMPLES: usize = 100;
pub const CLAIM_SEED: u64 = 0x5eed_4101;
/// Residual tolerance for the Perron-entry bound; attainable up to order 64.
pub const CLAIM_TOL: f64 = 1e-11;
/// Witnesses kept per report.
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaName {
    /// Edge bound and local structure of outerplanar graphs.
    Obv,
    AddEdges,
    /// `q >= Δ + 1`, equality only on stars.
    Delta,
    /// `q <= max η`.
    Qmu,
    Perron,
    EdgeMove2,
    EdgeMove3,
    EdgeMove,
    EdgeShift,
    /// Perron entries of join graphs scaled to 1 at the join vertex.
    Claim41,
}

impl LemmaName {
    pub const ALL: [LemmaName; 10] = [
        LemmaName::Obv,
        LemmaName::AddEdges,
        LemmaName::Delta,
        LemmaName::Qmu,
        LemmaName::Perron,
        LemmaName::EdgeMove2,
        LemmaName::EdgeMove3,
        LemmaName::EdgeMove,
        LemmaName::EdgeShift,
        LemmaName::Claim41,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaName::Obv => "obv",
            LemmaName::AddEdges => "addedges",
            LemmaName::Delta => "delta",
            LemmaName::Qmu => "qmu",
            LemmaName::Perron => "perron",
            LemmaName::EdgeMove2 => "edgemove2",
            LemmaName::EdgeMove3 => "edgemove3",
            LemmaName::EdgeMove => "edgemove",
            LemmaName::EdgeShift => "edgeshift",
            LemmaName::Claim41 => "claim41",
        }
    }

    /// Orders covered when no range is given. For `edgeshift` the range
    /// bounds `t + s`; for `claim41` it bounds the join order.
    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            LemmaName::Obv => 1..=8,
            LemmaName::EdgeShift => 2..=8,
            LemmaName::Claim41 => 6..=40,
            _ => 1..=7,
        }
    }

    fn move_kind(self) -> Option<MoveKind> {
        match self {
            LemmaName::AddEdges => Some(MoveKind::AddEdge),
            LemmaName::Perron => Some(MoveKind::PerronRotate),
            LemmaName::EdgeMove2 => Some(MoveKind::LeafReattach),
            LemmaName::EdgeMove3 => Some(MoveKind::PendantPull),
            LemmaName::EdgeMove => Some(MoveKind::ChordSwap),
            _ => None,
        }
    }
}

impl FromStr for LemmaName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaName::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl std::fmt::Display for LemmaName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One failed instance: the graph and a description.
struct Violation {
    graph: Graph,
    q: f64,
    what: String,
}

fn finish(
    mut r: VerificationReport,
    violations: Vec<Violation>,
    total_violations: usize,
    instances: usize,
) -> VerificationReport {
    r = r
        .param("instances", instances)
        .param("violations", total_violations);
    if total_violations == 0 {
        r.status = Status::Confirmed;
        r.note(format!("{instances} instances checked, no violations"));
    } else {
        r.status = Status::Refuted;
        r.note(format!(
            "{total_violations} violations in {instances} instances"
        ));
        for v in violations.into_iter().take(MAX_WITNESSES) {
            r.witness(&v.graph);
            r.q_values.push(v.q);
            r.note(v.what);
        }
    }
    r
}

/// Runs the suite `name` over orders `range` (the suite's default when `None`).
pub fn check_lemma(
    name: LemmaName,
    range: Option<RangeInclusive<usize>>,
    sep: f64,
) -> Result<VerificationReport> {
    let range = range.unwrap_or_else(|| name.default_range());
    timed(|| {
        let r = VerificationReport::new(format!("lemma_{name}"))
            .param("lemma", name.as_str())
            .param("n_min", *range.start())
            .param("n_max", *range.end())
            .param("sep", sep);
        match name {
            LemmaName::Obv => obv_suite(r, range),
            LemmaName::Delta => delta_suite(r, range),
            LemmaName::Qmu => qmu_suite(r, range),
            LemmaName::EdgeShift => edgeshift_suite(r, range, sep),
            LemmaName::Claim41 => claim_suite(r, range),
            other => move_suite(r, other.move_kind().expect("move lemma"), range, sep),
        }
    })
}

fn graphs_in(family: Family, range: &RangeInclusive<usize>) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in range.clone().filter(|&n| n >= 1) {
        out.extend(class_members(family, n)?.iter().cloned());
    }
    Ok(out)
}

fn obv_suite(r: VerificationReport, range: RangeInclusive<usize>) -> Result<VerificationReport> {
    let graphs = graphs_in(Family::Outerplanar, &range)?;
    let mut violations = Vec::new();
    let mut total = 0;
    let mut by_kind: std::collections::BTreeMap<&'static str, usize> = Default::default();
    for g in &graphs {
        let found = local_structure_violations(g);
        if found.is_empty() {
            continue;
        }
        total += found.len();
        for v in &found {
            *by_kind.entry(violation_item(v)).or_default() += 1;
        }
        violations.push(Violation {
            q: q_index(g, 1e-12)?.q,
            what: format!("{}: {}", crate::graph6::encode(g), found[0]),
            graph: g.clone(),
        });
    }
    let mut r = r.param("violations_by_item", &by_kind);
    if total > 0 {
        r.note(format!(
            "{} of {} graphs violate at least one item",
            violations.len(),
            graphs.len()
        ));
    }
    Ok(finish(r, violations, total, graphs.len()))
}

fn violation_item(v: &crate::recognition::LocalStructureViolation) -> &'static str {
    use crate::recognition::LocalStructureViolation::*;
    match v {
        EdgeBound { .. } => "edge_bound",
        NeighborhoodNotPaths { .. } => "i",
        TooManyCommonNeighbors { .. } => "ii",
        CommonPairMisplaced { .. } | CommonPairNotEndpoints { .. } => "iii",
        CommonPairsOverlap { .. } => "iv",
    }
}

fn delta_suite(r: VerificationReport, range: RangeInclusive<usize>) -> Result<VerificationReport> {
    let graphs: Vec<Graph> = graphs_in(Family::All, &range)?
        .into_iter()
        .filter(|g| g.order() >= 2)
        .collect();
    let results: Vec<(f64, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let q = q_index(g, reference_tol(BOUND_TOL))?.q;
            let slack = q - (g.max_degree() as f64 + 1.0);
            let star = g.is_star();
            let bad = if slack < -BOUND_TOL {
                Some(format!("q = {q} below Δ + 1 = {}", g.max_degree() + 1))
            } else if star != (slack.abs() <= BOUND_TOL) {
                Some(format!(
                    "equality case mismatch: star = {star}, q - Δ - 1 = {slack:e}"
                ))
            } else {
                None
            };
            Ok((if star { f64::INFINITY } else { slack }, bad))
        })
        .collect::<Result<_>>()?;
    let mut r = r;
    let strict = results.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    r.margin = strict.is_finite().then_some(strict);
    r.note("margin is the smallest q - Δ - 1 over non-star graphs");
    let violations = collect_violations(&graphs, &results)?;
    let total = violations.len();
    Ok(finish(r, violations, total, graphs.len()))
}

fn qmu_suite(r: VerificationReport, range: RangeInclusive<usize>) -> Result<VerificationReport> {
    let graphs: Vec<Graph> = graphs_in(Family::All, &range)?
        .into_iter()
        .filter(|g| g.order() >= 2)
        .collect();
    let results: Vec<(f64, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let q = q_index(g, reference_tol(BOUND_TOL))?.q;
            let bound = eta_max(g)?;
            let slack = bound - q;
            let bad = (slack < -BOUND_TOL).then(|| format!("q = {q} exceeds max eta = {bound}"));
            Ok((slack, bad))
        })
        .collect::<Result<_>>()?;
    let tight = results.iter().filter(|x| x.0.abs() <= BOUND_TOL).count();
    let strict = results
        .iter()
        .map(|x| x.0)
        .filter(|&s| s > BOUND_TOL)
        .fold(f64::INFINITY, f64::min);
    let mut r = r.param("equality_instances", tight);
    r.margin = strict.is_finite().then_some(strict);
    r.note("margin is the smallest max eta - q over graphs where the bound is not attained");
    let violations = collect_violations(&graphs, &results)?;
    let total = violations.len();
    Ok(finish(r, violations, total, graphs.len()))
}

fn collect_violations(
    graphs: &[Graph],
    results: &[(f64, Option<String>)],
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (g, (_, bad)) in graphs.iter().zip(results) {
        if let Some(what) = bad {
            out.push(Violation {
                graph: g.clone(),
                q: q_index(g, 1e-12)?.q,
                what: format!("{}: {what}", crate::graph6::encode(g)),
            });
        }
    }
    Ok(out)
}

/// Every connected graph, every role tuple meeting the move's hypotheses:
/// the index must increase by more than `sep`.
fn move_suite(
    r: VerificationReport,
    kind: MoveKind,
    range: RangeInclusive<usize>,
    sep: f64,
) -> Result<VerificationReport> {
    let graphs = graphs_in(Family::All, &range)?;
    let per_graph: Vec<(usize, f64, Vec<Violation>)> = graphs
        .par_iter()
        .map(|g| move_instances(g, kind, sep))
        .collect::<Result<_>>()?;
    let instances: usize = per_graph.iter().map(|x| x.0).sum();
    let gain = per_graph.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let violations: Vec<Violation> = per_graph.into_iter().flat_map(|x| x.2).collect();
    let total = violations.len();
    let mut r = r.param("move", format!("{kind:?}"));
    r.margin = gain.is_finite().then_some(gain);
    r.note("margin is the smallest certified increase of q over all instances");
    Ok(finish(r, violations, total, instances))
}

fn move_instances(g: &Graph, kind: MoveKind, sep: f64) -> Result<(usize, f64, Vec<Violation>)> {
    if !g.is_connected() || g.order() < 2 {
        return Ok((0, f64::INFINITY, Vec::new()));
    }
    let base: SpectralResult = q_index(g, reference_tol(sep))?;
    let mut count = 0;
    let mut gain = f64::INFINITY;
    let mut bad = Vec::new();
    for t in role_tuples(kind, g.order()) {
        let mv = TransformMove { kind, vertices: t };
        let attempt = match kind {
            MoveKind::PerronRotate => {
                perron_rotate_with(g, &base.x, mv.vertices[0], mv.vertices[1], mv.vertices[2])
            }
            _ => mv.apply(g),
        };
        let next = match attempt {
            Ok(h) => h,
            Err(Error::Precondition { .. } | Error::EdgeState { .. }) => continue,
            Err(e) => return Err(e),
        };
        count += 1;
        let cmp = q_compare_to(&next, base.q, sep)?;
        if cmp.ordering == Comparison::Greater {
            gain = gain.min(cmp.q1 - base.q);
        } else {
            bad.push(Violation {
                graph: g.clone(),
                q: base.q,
                what: format!(
                    "{} with {mv}: q {} -> {} ({:?})",
                    crate::graph6::encode(g),
                    base.q,
                    cmp.q1,
                    cmp.ordering
                ),
            });
        }
    }
    Ok((count, gain, bad))
}

/// Seeds: connected graphs on 1 to 3 vertices, every attachment vertex,
/// every `t >= s >= 1` with `t + s` in `range`.
fn edgeshift_suite(
    r: VerificationReport,
    range: RangeInclusive<usize>,
    sep: f64,
) -> Result<VerificationReport> {
    let mut seeds = Vec::new();
    for n in 1..=3 {
        seeds.extend(class_members(Family::All, n)?.iter().cloned());
    }
    let mut cases = Vec::new();
    for h in &seeds {
        for u in 0..h.order() {
            for total in range.clone() {
                for s in 1..=total / 2 {
                    cases.push((h.clone(), u, total - s, s));
                }
            }
        }
    }
    let results: Vec<(f64, Option<Violation>)> = cases
        .par_iter()
        .map(|(h, u, t, s)| {
            let before = h_gadget(h, *u, *t, *s)?;
            let after = path_shift(h, *u, *t, *s)?;
            let q = q_index(&before, reference_tol(sep))?.q;
            let cmp = q_compare_to(&after, q, sep)?;
            let bad = (cmp.ordering != Comparison::Greater).then(|| Violation {
                graph: before.clone(),
                q,
                what: format!(
                    "seed {} u = {u}, t = {t}, s = {s}: q {q} -> {} ({:?})",
                    crate::graph6::encode(h),
                    cmp.q1,
                    cmp.ordering
                ),
            });
            Ok((cmp.q1 - q, bad))
        })
        .collect::<Result<_>>()?;
    let mut r = r.param("seed_orders", "1..=3");
    r.margin = results.iter().map(|x| x.0).reduce(f64::min);
    r.note("range bounds t + s; margin is the smallest increase of q");
    let violations: Vec<Violation> = results.into_iter().filter_map(|x| x.1).collect();
    let total = violations.len();
    Ok(finish(r, violations, total, cases.len()))
}

/// Integer partitions of `m`, parts in non-increasing order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            rec(m - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Random composition of `m`, sorted into a spec.
fn random_spec(m: usize, rng: &mut ChaCha8Rng) -> PathJoinSpec {
    let mut parts = Vec::new();
    let mut left = m;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    PathJoinSpec::new(parts)
}

/// Join specs checked for order `n`: all partitions of `n - 1` when
/// `n <= 12`, otherwise `CLAIM_SAMPLES` seeded random specs.
pub fn claim_specs(n: usize) -> Vec<PathJoinSpec> {
    if n <= 12 {
        partitions(n - 1)
            .into_iter()
            .map(PathJoinSpec::new)
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(CLAIM_SEED ^ n as u64);
        (0..CLAIM_SAMPLES)
            .map(|_| random_spec(n - 1, &mut rng))
            .collect()
    }
}

/// For a join graph with Perron vector scaled to 1 at the join vertex,
/// `(min over v of x_v - 1/q, min over v of 1/q + 30/q² - x_v)`.
pub fn claim_slacks(g: &Graph) -> Result<(f64, f64, f64)> {
    let res = q_index(g, CLAIM_TOL)?;
    let x = res.scaled_to(0);
    let q = res.q;
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for v in g.neighbors(0) {
        lower = lower.min(x[v] - 1.0 / q);
        upper = upper.min(1.0 / q + 30.0 / (q * q) - x[v]);
    }
    Ok((q, lower, upper))
}

fn claim_suite(r: VerificationReport, range: RangeInclusive<usize>) -> Result<VerificationReport> {
    let cases: Vec<PathJoinSpec> = range
        .clone()
        .filter(|&n| n >= 2)
        .flat_map(claim_specs)
        .collect();
    let results: Vec<(f64, Option<Violation>)> = cases
        .par_iter()
        .map(|spec| {
            let g = path_join(spec)?;
            let (q, lower, upper) = claim_slacks(&g)?;
            let bad = (lower <= 0.0 || upper <= 0.0).then(|| Violation {
                graph: g.clone(),
                q,
                what: format!("{spec}: lower slack {lower:e}, upper slack {upper:e}"),
            });
            Ok((lower.min(upper), bad))
        })
        .collect::<Result<_>>()?;
    let mut r = r
        .param("samples_above_12", CLAIM_SAMPLES)
        .param("seed", CLAIM_SEED);
    r.margin = results.iter().map(|x| x.0).reduce(f64::min);
    r.note("margin is the smallest slack of either inequality");
    let violations: Vec<Violation> = results.into_iter().filter_map(|x| x.1).collect();
    let total = violations.len();
    Ok(finish(r, violations, total, cases.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DEFAULT_SEP;

    #[test]
    fn names() {
        for l in LemmaName::ALL {
            assert_eq!(l.as_str().parse::<LemmaName>().unwrap(), l);
        }
        assert!(matches!(
            "nope".parse::<LemmaName>(),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(11).len(), 56);
        assert_eq!(claim_specs(20).len(), CLAIM_SAMPLES);
        assert!(claim_specs(20).iter().all(|s| s.order() == 20));
        assert_eq!(claim_specs(20), claim_specs(20));
    }

    #[test]
    fn small_suites() {
        assert_eq!(
            check_lemma(LemmaName::Qmu, Some(2..=5), DEFAULT_SEP)
                .unwrap()
                .status,
            Status::Confirmed
        );
        assert_eq!(
            check_lemma(LemmaName::Delta, Some(2..=5), DEFAULT_SEP)
                .unwrap()
                .status,
            Status::Confirmed
        );
        let r = check_lemma(LemmaName::AddEdges, Some(2..=5), DEFAULT_SEP).unwrap();
        assert_eq!(r.status, Status::Confirmed);
        assert!(r.margin.unwrap() > DEFAULT_SEP);
        let r = check_lemma(LemmaName::EdgeShift, Some(2..=4), DEFAULT_SEP).unwrap();
        assert_eq!(r.status, Status::Confirmed);
    }
}
