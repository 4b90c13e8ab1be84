use godan::export::{graph_dot, graph_json, read_tree_set, tree_set_dot, tree_set_json, GraphDump, TreeSetRecord};
use godan::graph::{ordered, AdjacencyGraph};
use godan::idst::godan_graph;
use godan::oracle::{
    kappa_k_exact, kappa_s_exact, sample_subsets, upper_bound_min_degree_rule, whitney_kappa, OracleOptions, Policy,
};
use godan::{build_idsts, verify_idst, verify_stree, AltNetwork, Graph, Permutation, Vertex};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_roundtrip(p in (3usize..=8).prop_flat_map(perm_strategy)) {
        prop_assert_eq!(Permutation::unrank(p.n(), p.rank()).unwrap(), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(p.n()));
    }

    #[test]
    fn translation_is_an_automorphism(n in 3usize..=6, sigma_rank in any::<u64>(), v_rank in any::<u64>()) {
        let g = godan_graph(n).unwrap();
        let sigma = Permutation::unrank(n, sigma_rank % g.order() as u64).unwrap();
        let v = (v_rank % g.order() as u64) as Vertex;
        let image = g.left_translate(&sigma, v);
        let mut mapped: Vec<Vertex> = g.neighbors(v).iter().map(|&u| g.left_translate(&sigma, u)).collect();
        mapped.sort_unstable();
        let mut expected = g.neighbors(image).to_vec();
        expected.sort_unstable();
        prop_assert_eq!(mapped, expected);
        if n >= 4 {
            // Left and right actions commute.
            prop_assert_eq!(g.left_translate(&sigma, g.out_neighbor(v, n)), g.out_neighbor(image, n));
            let inv = sigma.inverse();
            prop_assert_eq!(g.left_translate(&inv, image), v);
        }
    }

    #[test]
    fn corruptions_are_detected(seed in any::<u64>(), pick in any::<usize>()) {
        let g = godan_graph(4).unwrap();
        let s = &sample_subsets(24, 4, 1, seed)[0];
        let set = build_idsts(g, s).unwrap();
        let fails = |trees: &[Vec<(Vertex, Vertex)>], check: &str| {
            verify_idst(g, trees, s).failures().any(|c| c.name.ends_with(check))
        };
        prop_assert!(verify_idst(g, &set.trees, s).overall);

        // Edge removal: dropping any edge disconnects its tree or uncovers S.
        let mut t = set.trees.clone();
        let i = pick % t.len();
        let j = pick % t[i].len();
        t[i].remove(j);
        prop_assert!(fails(&t, "connected") || fails(&t, "S covered"));

        // A non-edge in place of a tree edge.
        let mut t = set.trees.clone();
        let (a, _) = t[i][j];
        let far = (0..24).find(|&v| v != a && !g.has_edge(a, v)).unwrap();
        t[i][j] = ordered(a, far);
        prop_assert!(fails(&t, "edges exist"));

        // Duplicate tree.
        let mut t = set.trees.clone();
        let k = (i + 1) % t.len();
        t[k] = t[i].clone();
        prop_assert!(fails(&t, "edge intersection is empty"));

        // Terminal dropped from the terminal list given to the verifier.
        let mut wider = s.clone();
        let extra = (0..24).find(|v| !s.contains(v)).unwrap();
        wider[pick % 4] = extra;
        prop_assert!(!verify_idst(g, &set.trees, &wider).overall);
    }

    #[test]
    fn tree_sets_roundtrip_through_json(n in 3usize..=6, seed in any::<u64>()) {
        let g = godan_graph(n).unwrap();
        let s = &sample_subsets(g.order(), 4, 1, seed)[0];
        let set = build_idsts(g, s).unwrap();
        let text = tree_set_json(g, &set).unwrap();
        let loaded = read_tree_set(&text).unwrap();
        prop_assert!(loaded.is_valid());
        prop_assert_eq!(loaded.terminals, set.terminals);
        let mut a = loaded.trees.clone();
        let mut b = set.trees.clone();
        for t in a.iter_mut().chain(b.iter_mut()) {
            t.sort_unstable();
        }
        prop_assert_eq!(a, b);
        prop_assert_eq!(tree_set_json(g, &set).unwrap(), text);
    }
}

#[test]
fn stree_examples() {
    let g = godan_graph(3).unwrap();
    let (a, b) = g.edges()[0];
    assert!(verify_stree(g, &[(a, b)], &[a, b]).overall);
    let c = (0..6).find(|&v| v != a && v != b).unwrap();
    let r = verify_stree(g, &[(a, b)], &[a, b, c]);
    assert!(r.summary().contains("S not covered"));
    let d = (0..6).find(|&v| v != a && !g.has_edge(a, v)).unwrap();
    let r = verify_stree(g, &[ordered(a, d)], &[a, d]);
    assert!(r.summary().contains("edge absent"));
}

#[test]
fn tampered_tree_set_file_fails_reverification() {
    let g = godan_graph(4).unwrap();
    let set = build_idsts(g, &[0, 7, 13, 22]).unwrap();
    let mut rec = TreeSetRecord::of(g, &set);
    let first = rec.trees[0].clone();
    rec.trees[1] = first;
    let loaded = read_tree_set(&serde_json::to_string(&rec).unwrap()).unwrap();
    assert!(!loaded.is_valid());
    assert!(loaded.report.summary().contains("shared edges"));
    assert!(read_tree_set("{\"n\": 4}").is_err());
}

#[test]
fn graph_exports() {
    let g = godan_graph(3).unwrap();
    let dump: GraphDump = serde_json::from_str(&graph_json(g).unwrap()).unwrap();
    assert_eq!((dump.n, dump.vertices.len(), dump.edges.len()), (3, 6, 9));
    let g4 = godan_graph(4).unwrap();
    let dot = graph_dot(g4, 4).unwrap();
    assert!(dot.starts_with("graph EA4 {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
    let set = build_idsts(g4, &[0, 5, 10, 23]).unwrap();
    let tdot = tree_set_dot(g4, &set);
    assert_eq!(tdot.matches("subgraph tree_").count(), 3);
    assert_eq!(tdot.matches("doublecircle").count(), 4);
}

#[test]
fn oracle_examples() {
    let opts = OracleOptions::default();
    let g3 = godan_graph(3).unwrap();
    let g4 = godan_graph(4).unwrap();
    assert_eq!(kappa_k_exact(g3, 4, Policy::Exhaustive, opts).unwrap().value, 2);
    let k4 = kappa_k_exact(g4, 4, Policy::Exhaustive, opts).unwrap();
    assert_eq!((k4.value, k4.subsets, k4.exact), (3, 10_626, true));
    let r = kappa_s_exact(g4, &k4.minimizer, opts).unwrap();
    assert_eq!(r.max_t, 3);
    assert!(verify_idst(g4, r.witness.as_ref().unwrap(), &k4.minimizer).overall);

    assert_eq!(upper_bound_min_degree_rule(g4, 3), Some(3));
    assert_eq!(upper_bound_min_degree_rule(godan_graph(5).unwrap(), 3), Some(4));
    let star = AdjacencyGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
    // No two adjacent leaves, so the rule does not apply; a bound of 0 would
    // be wrong, since every 3-set of the star has one connecting tree.
    assert_eq!(upper_bound_min_degree_rule(&star, 3), None);
    assert_eq!(kappa_k_exact(&star, 3, Policy::Exhaustive, opts).unwrap().value, 1);

    assert_eq!(whitney_kappa(g3), 3);
    assert_eq!(whitney_kappa(g4), 4);
    assert_eq!(whitney_kappa(&AltNetwork::new(4).unwrap()), 3);

    let sampled = kappa_k_exact(g4, 4, Policy::Sample { count: 30, seed: 3 }, opts).unwrap();
    assert_eq!((sampled.value, sampled.subsets, sampled.seed, sampled.exact), (3, 30, Some(3), false));
    assert!(kappa_k_exact(godan_graph(5).unwrap(), 4, Policy::Exhaustive, opts).is_err());
}

#[test]
fn acceptance_helpers() {
    use godan::acceptance::{monotonicity_ea3, negative_controls, oracle_agreement};
    for (name, caught, detail) in negative_controls().unwrap() {
        assert!(caught, "{name} not caught: {detail}");
    }
    let (bad, total) = oracle_agreement().unwrap();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(total, 515);
    assert_eq!(monotonicity_ea3().unwrap(), (0, 60));
}
