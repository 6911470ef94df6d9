use proptest::prelude::*;

use outerq::constructions::{path_join, PathJoinSpec};
use outerq::recognition::{is_outerplanar, is_outerplanar_by_minors};
use outerq::spectral::{eta_max, q_index};
use outerq::transforms::{greedy_ascent, MoveKind, TransformMove};
use outerq::{canonical_code, graph6, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let m = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 0..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

/// Sparse graphs, where outerplanar instances are common.
fn sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=2 * n)))
        .prop_map(|(n, pairs)| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            let mut g = Graph::empty(n).unwrap();
            for (a, b) in edges {
                if !g.has_edge(a, b) {
                    g = g.add_edge(a, b).unwrap();
                }
            }
            g
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(64)) {
        let code = graph6::encode(&g);
        let back = graph6::decode(&code).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph6::encode(&back), code);
    }

    #[test]
    fn canonical_code_ignores_labels((g, p) in graph_and_perm(12)) {
        prop_assert_eq!(canonical_code(&g), canonical_code(&g.permuted(&p)));
    }

    #[test]
    fn q_ignores_labels((g, p) in graph_and_perm(12)) {
        let a = q_index(&g, 1e-12).unwrap().q;
        let b = q_index(&g.permuted(&p), 1e-12).unwrap().q;
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn add_then_remove_is_identity(g in graph(16), a in 0usize..16, b in 0usize..16) {
        let (a, b) = (a % g.order(), b % g.order());
        prop_assume!(a != b && !g.has_edge(a, b));
        let h = g.add_edge(a, b).unwrap();
        prop_assert_eq!(h.size(), g.size() + 1);
        prop_assert_eq!(h.remove_edge(a, b).unwrap(), g);
    }

    #[test]
    fn q_of_union_is_max_of_parts(g in graph(8), h in graph(8)) {
        let u = Graph::disjoint_union(&[g.clone(), h.clone()]).unwrap();
        let (qg, qh, qu) = (q_index(&g, 1e-12).unwrap().q, q_index(&h, 1e-12).unwrap().q, q_index(&u, 1e-12).unwrap().q);
        prop_assert!((qu - qg.max(qh)).abs() <= 1e-9);
    }

    #[test]
    fn q_within_degree_bounds(g in graph(12)) {
        prop_assume!(g.size() > 0 && g.is_connected());
        let q = q_index(&g, 1e-12).unwrap().q;
        prop_assert!(q >= g.max_degree() as f64 + 1.0 - 1e-9);
        prop_assert!(q <= eta_max(&g).unwrap() + 1e-9);
        prop_assert!(q <= 2.0 * (g.order() as f64 - 1.0) + 1e-9);
    }

    #[test]
    fn perron_vector_is_positive_eigenvector(g in graph(12)) {
        prop_assume!(g.order() >= 2 && g.is_connected());
        let r = q_index(&g, 1e-12).unwrap();
        prop_assert!(r.x.iter().all(|&v| v > 0.0));
        for v in 0..g.order() {
            let qx = g.degree(v) as f64 * r.x[v] + g.neighbors(v).iter().map(|w| r.x[w]).sum::<f64>();
            prop_assert!((qx - r.q * r.x[v]).abs() <= 1e-9);
        }
    }

    #[test]
    fn outerplanarity_routes_agree(g in sparse_graph(11)) {
        prop_assert_eq!(is_outerplanar(&g), is_outerplanar_by_minors(&g));
    }

    #[test]
    fn path_join_order_and_class(parts in proptest::collection::vec(0usize..7, 1..6)) {
        let spec = PathJoinSpec::new(parts.clone());
        prop_assume!(spec.order() >= 2);
        let g = path_join(&spec).unwrap();
        prop_assert_eq!(g.order(), 1 + parts.iter().sum::<usize>());
        prop_assert!(g.is_connected() && is_outerplanar(&g));
        prop_assert_eq!(g.degree(0), g.order() - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn moves_preserve_order_and_edge_count(g in sparse_graph(8), seed in any::<u64>()) {
        prop_assume!(g.is_connected());
        let n = g.order();
        for kind in MoveKind::ASCENT {
            let k = kind.roles().len();
            let vertices: Vec<usize> = (0..k).map(|i| (seed as usize >> (4 * i)) % n).collect();
            let Ok(mv) = TransformMove::new(kind, vertices) else { continue };
            if let Ok(h) = mv.apply(&g) {
                prop_assert_eq!(h.order(), n);
                let extra = usize::from(kind == MoveKind::AddEdge);
                prop_assert_eq!(h.size(), g.size() + extra);
                prop_assert!(q_index(&h, 1e-12).unwrap().q > q_index(&g, 1e-12).unwrap().q);
            }
        }
    }

    #[test]
    fn ascent_trace_strictly_increases(g in sparse_graph(8)) {
        prop_assume!(g.is_connected() && is_outerplanar(&g));
        let a = greedy_ascent(&g, None, 200, 1e-9).unwrap();
        prop_assert!(a.local_maximum);
        let mut prev = q_index(&g, 1e-12).unwrap().q;
        for step in &a.trace {
            prop_assert!(step.q_after > step.q_before + 1e-9);
            prop_assert!((step.q_before - prev).abs() < 1e-8);
            prev = step.q_after;
        }
        prop_assert!(is_outerplanar(&a.graph) && a.graph.is_connected());
    }
}
