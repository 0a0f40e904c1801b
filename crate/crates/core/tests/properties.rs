mod common;

use common::{all_maximum_matchings, arb_graph, arb_graph_with_subset, reachability};
use proptest::prelude::*;
use structctl::*;

fn brute_count(g: &Digraph, f: &NodeSet) -> Option<usize> {
    match brute_force_min_drivers(g, f, 12).unwrap() {
        BruteForceOutcome::Found { count, .. } => Some(count),
        BruteForceOutcome::Infeasible => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transpose_is_an_involution(g in arb_graph(10)) {
        prop_assert_eq!(transpose(&transpose(&g)), g.clone());
        prop_assert_eq!(bipartite_of(&g).link_count(), g.edge_count());
    }

    #[test]
    fn one_dilation_set_per_unmatched_node(g in arb_graph(10)) {
        let m = maximum_matching(&bipartite_of(&g));
        prop_assert!(!has_augmenting_path(&bipartite_of(&g), &m));
        let anchors: NodeSet = dilation_sets(&g).iter().map(|d| d.anchor).collect();
        prop_assert_eq!(anchors, unmatched_nodes(&m));
        prop_assert!(s_rank(&g) <= g.node_count());
    }

    #[test]
    fn dilation_sets_are_dilations(g in arb_graph(10)) {
        for d in dilation_sets(&g) {
            prop_assert!(d.members.contains(d.anchor));
            prop_assert!(g.in_neighborhood(&d.members).len() < d.members.len());
        }
    }

    // Every dilation set keeps at least one unmatched node under any maximum
    // matching, since its in-neighborhood is too small to cover it.
    #[test]
    fn dilation_sets_meet_every_maximum_matching(g in arb_graph(7)) {
        let sets = dilation_sets(&g);
        for mate_right in all_maximum_matchings(&g) {
            for d in &sets {
                prop_assert!(d.members.iter().any(|r| mate_right[r - 1].is_none()));
            }
        }
    }

    #[test]
    fn single_node_rank_recovery(g in arb_graph(10)) {
        let base = s_rank(&g);
        let sets = dilation_sets(&g);
        for v in 1..=g.node_count() {
            let in_some = sets.iter().any(|d| d.members.contains(v));
            let expected = base + usize::from(in_some);
            prop_assert_eq!(s_rank_with_drivers(&g, &[v].into()).unwrap(), expected);
        }
    }

    #[test]
    fn numeric_rank_matches_structural_rank((g, drivers) in arb_graph_with_subset(8)) {
        let structural = s_rank_with_drivers(&g, &drivers).unwrap();
        prop_assert_eq!(numeric_rank_with_drivers(&g, &drivers, 3, 11).unwrap(), structural);
    }

    #[test]
    fn scc_matches_reachability(g in arb_graph(10)) {
        let n = g.node_count();
        let r = reachability(&g);
        let d = scc_decompose(&g);
        let mut covered = vec![0; n];
        for c in d.components() {
            for v in c.iter() {
                covered[v - 1] += 1;
            }
        }
        prop_assert!(covered.iter().all(|&k| k == 1));
        for u in 1..=n {
            for v in 1..=n {
                let same = d.component_of(u) == d.component_of(v);
                prop_assert_eq!(same, r[u - 1][v - 1] && r[v - 1][u - 1]);
            }
        }
        for (c, comp) in d.components().iter().enumerate() {
            let entered = (1..=n)
                .filter(|&u| !comp.contains(u))
                .any(|u| comp.iter().any(|v| r[u - 1][v - 1]));
            prop_assert_eq!(d.is_child(c), !entered);
        }
        prop_assert!(!d.child_indices().is_empty());
        for &(a, b) in d.condensation_edges() {
            prop_assert!(!d.precedes(b, a));
        }
    }

    #[test]
    fn dfs_intervals_nest(g in arb_graph(10)) {
        let n = g.node_count();
        let order: Vec<usize> = (1..=n).collect();
        let a = dfs_forest(&g, &order).unwrap();
        for u in 1..=n {
            prop_assert!(a.visited(u));
            prop_assert!(1 <= a.start(u) && a.start(u) < a.end(u) && a.end(u) <= 2 * n);
            for v in 1..=n {
                let (su, eu, sv, ev) = (a.start(u), a.end(u), a.start(v), a.end(v));
                let disjoint = eu < sv || ev < su;
                let nested = (su < sv && ev < eu) || (sv < su && eu < ev) || u == v;
                prop_assert!(disjoint || nested);
            }
        }
    }

    #[test]
    fn driver_count_bounds(g in arb_graph(12)) {
        let d = dilation_sets(&g).len();
        let c = child_sccs(&scc_decompose(&g)).len();
        let n_min = min_driver_count(&g, &NodeSet::new()).unwrap();
        prop_assert!(d <= n_min && n_min <= d + c);
        prop_assert!(n_min >= 1 && n_min <= g.node_count());
    }

    #[test]
    fn exact_against_brute_force((g, f) in arb_graph_with_subset(8)) {
        prop_assert_eq!(min_driver_count(&g, &NodeSet::new()).ok(), brute_count(&g, &NodeSet::new()));
        prop_assert_eq!(min_driver_count(&g, &f).ok(), brute_count(&g, &f));
    }

    #[test]
    fn selection_is_sound((g, f) in arb_graph_with_subset(12)) {
        let Ok(r) = select_driver_nodes(&g, &f) else {
            prop_assert!(min_driver_count(&g, &f).is_err());
            return Ok(());
        };
        prop_assert_eq!(r.drivers.len(), r.n_min);
        prop_assert!(r.verified);
        prop_assert!(r.drivers.intersection(&f).is_empty());
        prop_assert_eq!(
            verify_structural_controllability(&g, &r.drivers).unwrap(),
            Verdict::Controllable
        );
        for v in r.drivers.iter() {
            prop_assert!(!r.types[&v].is_empty());
        }
        for s in &r.child_sccs {
            prop_assert!(s.iter().any(|v| r.types.get(&v).is_some_and(|t| t.contains(&DriverType::TypeI))));
        }
        let type_two = r.types.values().filter(|t| t.contains(&DriverType::TypeII)).count();
        prop_assert_eq!(type_two, r.dilations.len());
        prop_assert_eq!(r.input_pattern.cols(), r.n_min);
        let rows: NodeSet = r.input_pattern.entries().iter().map(|&(row, _)| row).collect();
        prop_assert_eq!(rows, r.drivers.clone());
    }

    #[test]
    fn blocking_more_never_helps((g, f) in arb_graph_with_subset(10), extra in 1usize..=10) {
        let mut bigger = f.clone().into_vec();
        if extra <= g.node_count() {
            bigger.push(extra);
        }
        let bigger = NodeSet::from(bigger);
        if let (Ok(a), Ok(b)) = (min_driver_count(&g, &f), min_driver_count(&g, &bigger)) {
            prop_assert!(a <= b);
        }
        if min_driver_count(&g, &f).is_err() {
            prop_assert!(min_driver_count(&g, &bigger).is_err());
        }
    }

    #[test]
    fn flow_bound_on_graph_decompositions((g, f) in arb_graph_with_subset(10)) {
        let dil: Vec<NodeSet> = dilation_sets(&g).into_iter().map(|d| d.members).collect();
        let scc = child_sccs(&scc_decompose(&g));
        match (pair_decomposition(&dil, &scc, &f), min_driver_count(&g, &f)) {
            (Ok(p), Ok(exact)) => prop_assert!(p.n_min <= exact),
            (Err(_), exact) => prop_assert!(exact.is_err()),
            (Ok(_), Err(_)) => {}
        }
    }

    #[test]
    fn structural_agrees_with_numeric((g, drivers) in arb_graph_with_subset(8)) {
        prop_assume!(!drivers.is_empty());
        let structural = verify_structural_controllability(&g, &drivers).unwrap().is_controllable();
        let numeric = numeric_controllability_check(&g, &drivers, 5, 3).unwrap().is_full_rank();
        prop_assert_eq!(structural, numeric);
    }

    // A Hamiltonian cycle makes the graph strongly connected and gives it a
    // perfect matching.
    #[test]
    fn strongly_connected_with_perfect_matching_needs_one(
        perm in Just((1..=9usize).collect::<Vec<_>>()).prop_shuffle(),
        extra in proptest::collection::vec((1..=9usize, 1..=9usize), 0..20),
    ) {
        let cycle = (0..9).map(|k| (perm[k], perm[(k + 1) % 9]));
        let g = Digraph::new(9, cycle.chain(extra)).unwrap();
        prop_assert_eq!(min_driver_count(&g, &NodeSet::new()), Ok(1));
    }
}
