//! Guarded Q-increasing rewrites and a greedy ascent built from them.
//!
//! Every move checks its hypotheses exactly as stated and reports the first
//! failing clause. A move never fires on a configuration outside its
//! hypotheses, even when the conclusion might still hold there.

use serde::{Deserialize, Serialize};

use crate::canon::same_orbit;
use crate::constructions::h_gadget;
use crate::error::{Error, PreconditionKind, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::recognition::{is_f_free, is_linear_forest, is_outerplanar, ForbiddenPattern};
use crate::spectral::{q_compare_to, q_index, reference_tol, Comparison};

/// Margin by which `x_u` must exceed `x_v` for a rotation when `u` and `v`
/// are not exchanged by an automorphism.
pub const PERRON_MARGIN: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    AddEdge,
    PerronRotate,
    LeafReattach,
    PendantPull,
    ChordSwap,
    PathShift,
}

impl MoveKind {
    /// Kinds scanned by [`greedy_ascent`], in scan order.
    pub const ASCENT: [MoveKind; 5] = [
        MoveKind::AddEdge,
        MoveKind::PerronRotate,
        MoveKind::LeafReattach,
        MoveKind::PendantPull,
        MoveKind::ChordSwap,
    ];

    /// Names of the entries of [`TransformMove::vertices`].
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            MoveKind::AddEdge => &["u", "v"],
            MoveKind::PerronRotate | MoveKind::LeafReattach => &["u", "v", "w"],
            MoveKind::PendantPull => &["u", "w1", "w2"],
            MoveKind::ChordSwap => &["u", "w", "v1", "v2"],
            MoveKind::PathShift => &["u", "t", "s"],
        }
    }
}

/// A move and its role-labelled arguments. For `PathShift` the entries are
/// the attachment vertex and the two path orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformMove {
    pub kind: MoveKind,
    pub vertices: Vec<usize>,
}

impl TransformMove {
    pub fn new(kind: MoveKind, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() != kind.roles().len() {
            return Err(Error::Domain(format!(
                "{kind:?} takes {} arguments",
                kind.roles().len()
            )));
        }
        Ok(TransformMove { kind, vertices })
    }

    /// Edges removed and added when the move is applied to a graph.
    pub fn edge_changes(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let a = &self.vertices;
        match self.kind {
            MoveKind::AddEdge => (vec![], vec![(a[0], a[1])]),
            MoveKind::PerronRotate | MoveKind::LeafReattach => {
                (vec![(a[1], a[2])], vec![(a[0], a[2])])
            }
            MoveKind::PendantPull => (vec![(a[1], a[2])], vec![(a[0], a[1])]),
            MoveKind::ChordSwap => (vec![(a[2], a[3])], vec![(a[0], a[1])]),
            MoveKind::PathShift => (vec![], vec![]),
        }
    }

    /// Applies the move to `g`, checking its hypotheses. `PathShift` is
    /// defined on a seed graph and is rejected here; use [`path_shift`].
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let a = &self.vertices;
        match self.kind {
            MoveKind::AddEdge => add_edge_move(g, a[0], a[1]),
            MoveKind::PerronRotate => perron_rotate(g, a[0], a[1], a[2]),
            MoveKind::LeafReattach => leaf_reattach(g, a[0], a[1], a[2]),
            MoveKind::PendantPull => pendant_pull(g, a[0], a[1], a[2]),
            MoveKind::ChordSwap => chord_swap(g, a[0], a[1], a[2], a[3]),
            MoveKind::PathShift => Err(Error::Domain(
                "path shift applies to a seed graph, not to a graph".into(),
            )),
        }
    }
}

impl std::fmt::Display for TransformMove {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let args: Vec<String> = self
            .kind
            .roles()
            .iter()
            .zip(&self.vertices)
            .map(|(r, v)| format!("{r}={v}"))
            .collect();
        write!(f, "{:?}({})", self.kind, args.join(", "))
    }
}

fn structural(clause: &str) -> Error {
    Error::Precondition {
        kind: PreconditionKind::Structural,
        clause: clause.to_string(),
    }
}

fn require(ok: bool, clause: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(structural(clause))
    }
}

fn check_vertices(g: &Graph, vs: &[usize]) -> Result<()> {
    for &v in vs {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
    }
    let set = VertexSet::from_vertices(vs.iter().copied());
    require(set.len() == vs.len(), "role vertices are distinct")
}

fn rewire(g: &Graph, removed: (usize, usize), added: (usize, usize)) -> Result<Graph> {
    g.rewire(&[removed], &[added])
}

/// `G + uv`.
pub fn add_edge_move(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    check_vertices(g, &[u, v])?;
    require(g.is_connected(), "G is connected")?;
    g.add_edge(u, v)
}

/// `G - vw + uw`, given `x_u >= x_v` for the Perron vector of `G`.
pub fn perron_rotate(g: &Graph, u: usize, v: usize, w: usize) -> Result<Graph> {
    check_perron_rotate_structure(g, u, v, w)?;
    let x = q_index(g, crate::spectral::DEFAULT_TOL)?.x;
    finish_perron_rotate(g, &x, u, v, w)
}

/// [`perron_rotate`] with a Perron vector already computed for `g`.
pub fn perron_rotate_with(g: &Graph, x: &[f64], u: usize, v: usize, w: usize) -> Result<Graph> {
    check_perron_rotate_structure(g, u, v, w)?;
    finish_perron_rotate(g, x, u, v, w)
}

fn check_perron_rotate_structure(g: &Graph, u: usize, v: usize, w: usize) -> Result<()> {
    check_vertices(g, &[u, v, w])?;
    require(g.is_connected(), "G is connected")?;
    require(!g.has_edge(u, w), "uw is not an edge")?;
    require(g.has_edge(v, w), "vw is an edge")
}

fn finish_perron_rotate(g: &Graph, x: &[f64], u: usize, v: usize, w: usize) -> Result<Graph> {
    let diff = x[u] - x[v];
    if !(diff > PERRON_MARGIN || (diff.abs() <= PERRON_MARGIN && same_orbit(g, u, v))) {
        return Err(Error::Precondition {
            kind: PreconditionKind::Perron,
            clause: format!("x_u >= x_v (x_u - x_v = {diff:e}, not certified)"),
        });
    }
    rewire(g, (v, w), (u, w))
}

/// `G - vw + uw` for a neighbour `v` of `u` whose outside neighbours hang
/// off `v` alone.
pub fn leaf_reattach(g: &Graph, u: usize, v: usize, w: usize) -> Result<Graph> {
    check_vertices(g, &[u, v, w])?;
    require(g.is_connected(), "G is connected")?;
    require(g.has_edge(u, v), "v ∈ N(u)")?;
    require(g.degree(v) + 2 <= g.degree(u), "d(v) <= d(u) - 2")?;
    let outside = g.neighbors(v).difference(g.closed_neighbors(u));
    require(outside.contains(w), "w ∈ N(v) \\ N[u]")?;
    require(matches!(outside.len(), 1 | 2), "|N(v) \\ N[u]| ∈ {1, 2}")?;
    let allowed = g.neighbors(v).difference(g.neighbors(u));
    require(
        outside
            .iter()
            .all(|z| g.neighbors(z).without(v).is_subset(allowed)),
        "N(z) \\ {v} ⊆ N(v) \\ N(u) for every z ∈ N(v) \\ N[u]",
    )?;
    rewire(g, (v, w), (u, w))
}

/// `G - w1w2 + uw1` for a pendant `w1` hanging off `w2`.
pub fn pendant_pull(g: &Graph, u: usize, w1: usize, w2: usize) -> Result<Graph> {
    check_vertices(g, &[u, w1, w2])?;
    require(g.is_connected(), "G is connected")?;
    let closed = g.closed_neighbors(u);
    require(
        !closed.contains(w1) && !closed.contains(w2),
        "w1, w2 ∉ N[u]",
    )?;
    require(
        g.neighbors(w2).without(w1).is_subset(g.neighbors(u)),
        "N(w2) \\ {w1} ⊆ N(u)",
    )?;
    require(g.neighbors(w1) == VertexSet::singleton(w2), "N(w1) = {w2}")?;
    require(g.degree(u) > g.degree(w2), "d(u) >= d(w2) + 1")?;
    rewire(g, (w1, w2), (u, w1))
}

/// `G - v1v2 + uw` where `w` sees exactly the edge `v1v2` inside `N(u)`.
pub fn chord_swap(g: &Graph, u: usize, w: usize, v1: usize, v2: usize) -> Result<Graph> {
    check_vertices(g, &[u, w, v1, v2])?;
    require(g.is_connected(), "G is connected")?;
    require(
        is_linear_forest(g, g.neighbors(u)),
        "G[N(u)] consists of paths",
    )?;
    if g.degree(u) <= 4 {
        return Err(structural(&format!("d(u) >= 5 (d(u) = {})", g.degree(u))));
    }
    require(!g.closed_neighbors(u).contains(w), "w ∉ N[u]")?;
    require(
        g.neighbors(w) == VertexSet::from_vertices([v1, v2]),
        "N(w) = {v1, v2}",
    )?;
    require(
        g.neighbors(u).contains(v1) && g.neighbors(u).contains(v2),
        "v1, v2 ∈ N(u)",
    )?;
    require(g.has_edge(v1, v2), "v1v2 is an edge")?;
    let allowed = g.closed_neighbors(u).with(w);
    require(
        g.neighbors(v1).is_subset(allowed) && g.neighbors(v2).is_subset(allowed),
        "N(vi) \\ (N[u] ∪ {w}) = ∅ for i = 1, 2",
    )?;
    rewire(g, (v1, v2), (u, w))
}

/// `H(u; t+1, s-1)` from the seed `H`, the image of `H(u; t, s)`.
pub fn path_shift(h: &Graph, u: usize, t: usize, s: usize) -> Result<Graph> {
    require(s >= 1, "s >= 1")?;
    require(t >= s, "t >= s")?;
    h_gadget(h, u, t + 1, s - 1)
}

/// Every role tuple for `kind` on `n` vertices, in lexicographic order.
pub fn role_tuples(kind: MoveKind, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let k = kind.roles().len();
    let total = n.pow(k as u32);
    (0..total).filter_map(move |mut idx| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        let distinct = VertexSet::from_vertices(t.iter().copied()).len() == k;
        distinct.then_some(t)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AscentStep {
    #[serde(rename = "move")]
    pub mv: TransformMove,
    pub q_before: f64,
    pub q_after: f64,
    /// The graph after the move, in graph6.
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ascent {
    pub start: Graph,
    pub graph: Graph,
    pub q: f64,
    pub trace: Vec<AscentStep>,
    /// True when the scan found no applicable move, false when the run
    /// stopped at `max_steps`.
    pub local_maximum: bool,
}

/// Repeatedly applies the first move (kinds in [`MoveKind::ASCENT`] order,
/// role tuples lexicographic) whose result stays connected, outerplanar and
/// `pattern`-free and whose index is certified larger at separation `sep`.
pub fn greedy_ascent(
    g: &Graph,
    pattern: Option<ForbiddenPattern>,
    max_steps: usize,
    sep: f64,
) -> Result<Ascent> {
    let in_class = |h: &Graph| {
        h.is_connected() && is_outerplanar(h) && pattern.is_none_or(|p| is_f_free(h, p))
    };
    if !in_class(g) {
        return Err(structural(
            "seed is connected, outerplanar and pattern-free",
        ));
    }
    let mut cur = g.clone();
    let mut perron = q_index(&cur, reference_tol(sep))?;
    let mut trace = Vec::new();
    loop {
        if trace.len() == max_steps {
            return Ok(Ascent {
                start: g.clone(),
                q: perron.q,
                graph: cur,
                trace,
                local_maximum: false,
            });
        }
        let Some((mv, next, q_after)) = best_first_move(&cur, &perron.x, perron.q, &in_class, sep)?
        else {
            return Ok(Ascent {
                start: g.clone(),
                q: perron.q,
                graph: cur,
                trace,
                local_maximum: true,
            });
        };
        trace.push(AscentStep {
            mv,
            q_before: perron.q,
            q_after,
            graph6: graph6::encode(&next),
        });
        cur = next;
        perron = q_index(&cur, reference_tol(sep))?;
    }
}

type Found = Option<(TransformMove, Graph, f64)>;

fn best_first_move(
    g: &Graph,
    x: &[f64],
    q: f64,
    in_class: &dyn Fn(&Graph) -> bool,
    sep: f64,
) -> Result<Found> {
    for kind in MoveKind::ASCENT {
        for t in role_tuples(kind, g.order()) {
            let attempt = match kind {
                MoveKind::PerronRotate => perron_rotate_with(g, x, t[0], t[1], t[2]),
                _ => TransformMove {
                    kind,
                    vertices: t.clone(),
                }
                .apply(g),
            };
            let next = match attempt {
                Ok(h) => h,
                Err(Error::Precondition { .. } | Error::EdgeState { .. }) => continue,
                Err(e) => return Err(e),
            };
            if !in_class(&next) {
                continue;
            }
            let cmp = q_compare_to(&next, q, sep)?;
            if cmp.ordering == Comparison::Greater {
                return Ok(Some((TransformMove { kind, vertices: t }, next, cmp.q1)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_extremal, path_join, PathJoinSpec};
    use crate::spectral::{q_compare, DEFAULT_SEP};

    fn increases(before: &Graph, after: &Graph) -> bool {
        q_compare(after, before, DEFAULT_SEP).unwrap().is_greater()
    }

    fn clause(e: Error) -> String {
        match e {
            Error::Precondition { clause, .. } => clause,
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn add_edge() {
        let p3 = Graph::path(3).unwrap();
        let c3 = add_edge_move(&p3, 0, 2).unwrap();
        assert!(increases(&p3, &c3));
        assert!(matches!(
            add_edge_move(&p3, 0, 1),
            Err(Error::EdgeState { .. })
        ));
        let split = path_join(&PathJoinSpec::new(vec![3, 1])).unwrap();
        assert!(increases(&split, &add_edge_move(&split, 3, 4).unwrap()));
    }

    #[test]
    fn rotation() {
        // star with centre 0 and leaves 1..4, plus 5 hanging off leaf 4
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap();
        assert!(increases(&g, &perron_rotate(&g, 0, 4, 5).unwrap()));
        assert_eq!(
            clause(perron_rotate(&g, 0, 1, 2).unwrap_err()),
            "uw is not an edge"
        );
        // P4 = 0-1-2-3: the ends are exchanged by an automorphism
        let p4 = Graph::path(4).unwrap();
        let h = perron_rotate(&p4, 0, 3, 2).unwrap();
        assert!(increases(&p4, &h));
        assert_eq!(
            clause(perron_rotate(&p4, 1, 3, 2).unwrap_err()),
            "uw is not an edge"
        );
        let err = perron_rotate(&g, 5, 0, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::Precondition {
                kind: PreconditionKind::Perron,
                ..
            }
        ));
    }

    #[test]
    fn leaf_moves() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)]).unwrap();
        assert!(increases(&g, &leaf_reattach(&g, 0, 5, 6).unwrap()));
        // v carries a triangle w w' with d(w) = d(w') = 2
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap();
        assert!(increases(&g, &leaf_reattach(&g, 0, 5, 6).unwrap()));
        let tight = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 1)]).unwrap();
        assert_eq!(
            clause(leaf_reattach(&tight, 0, 3, 4).unwrap_err()),
            "d(v) <= d(u) - 2"
        );
    }

    #[test]
    fn pull() {
        // hub 0 over path 1-2-3 and leaf 6, w2 = 4 adjacent to 1 and 3, w1 = 5 pendant on 4
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 6),
                (1, 2),
                (2, 3),
                (1, 4),
                (3, 4),
                (4, 5),
            ],
        )
        .unwrap();
        let h = pendant_pull(&g, 0, 5, 4).unwrap();
        assert_eq!(h.size(), g.size());
        assert!(increases(&g, &h));
        let flat = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            clause(pendant_pull(&flat, 0, 4, 3).unwrap_err()),
            "d(u) >= d(w2) + 1"
        );
    }

    #[test]
    fn swap() {
        // hub 0 over P2 = 1-2 and leaves 3, 4, 5; w = 6 adjacent to 1 and 2
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 6),
                (2, 6),
            ],
        )
        .unwrap();
        assert!(increases(&g, &chord_swap(&g, 0, 6, 1, 2).unwrap()));
        // v2 interior: hub over P3 = 1-2-3 and leaves 4, 5; w = 6 on 1 and 2
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (1, 6),
                (2, 6),
            ],
        )
        .unwrap();
        assert!(increases(&g, &chord_swap(&g, 0, 6, 1, 2).unwrap()));
        let small = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 5)])
            .unwrap();
        assert!(clause(chord_swap(&small, 0, 5, 1, 2).unwrap_err()).starts_with("d(u) >= 5"));
    }

    #[test]
    fn shift() {
        let k1 = Graph::empty(1).unwrap();
        let before = h_gadget(&k1, 0, 3, 3).unwrap();
        let after = path_shift(&k1, 0, 3, 3).unwrap();
        assert!(increases(&before, &after));
        assert!(path_shift(&k1, 0, 2, 3).is_err());
        assert!(path_shift(&k1, 0, 2, 0).is_err());
    }

    #[test]
    fn tuples_are_lexicographic() {
        let t: Vec<Vec<usize>> = role_tuples(MoveKind::AddEdge, 3).collect();
        assert_eq!(
            t,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1]
            ]
        );
        assert_eq!(role_tuples(MoveKind::ChordSwap, 5).count(), 120);
    }

    #[test]
    fn ascent_from_spanning_tree() {
        let ext = cycle_extremal(8, 4).unwrap().graph;
        // spanning star of the join
        let tree = Graph::star(8).unwrap();
        assert!(ext.edges().collect::<Vec<_>>().contains(&(0, 7)));
        let pattern = Some("C4".parse().unwrap());
        let run = greedy_ascent(&tree, pattern, 100, DEFAULT_SEP).unwrap();
        assert!(run.local_maximum);
        let mut q = q_index(&tree, 1e-12).unwrap().q;
        for step in &run.trace {
            assert!(step.q_after > step.q_before + DEFAULT_SEP);
            assert!((step.q_before - q).abs() < 1e-9);
            q = step.q_after;
        }
        assert!(run.q >= q_index(&tree, 1e-12).unwrap().q);
        let again = greedy_ascent(&run.graph, pattern, 100, DEFAULT_SEP).unwrap();
        assert!(again.trace.is_empty());
    }
}
