use proptest::collection::vec;
use proptest::prelude::*;

use herdisc::approx::halve;
use herdisc::discrepancy::{beck_fiala, eval_discrepancy, exact_discrepancy, spectral_lower_bound, Coloring};
use herdisc::graph::{read_edge_list, write_edge_list, Graph};
use herdisc::orderings::{degeneracy, degeneracy_order, orient_along, wcol_exact, wcol_from_order, LinearOrder};
use herdisc::pointer::{parse_formula, random_formula, FormulaShape};
use herdisc::power::orientation_coloring_on;
use herdisc::setsystem::{neighborhood_system, SetSystem};

fn system(max_ground: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_ground).prop_flat_map(|n| vec(vec(0..n, 0..=n), 0..=2 * n).prop_map(move |sets| SetSystem::new(n, sets).unwrap()))
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        vec((0..n, 0..n), 0..=3 * n).prop_map(move |pairs| Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

proptest! {
    #[test]
    fn beck_fiala_below_twice_degree(s in system(40)) {
        let disc = eval_discrepancy(&s, &beck_fiala(&s)).unwrap().max;
        prop_assert!(disc < 2 * s.degree().max(1) as u64);
    }

    #[test]
    fn oracles_sandwich(s in system(10)) {
        let (exact, chi) = exact_discrepancy(&s).unwrap();
        prop_assert_eq!(eval_discrepancy(&s, &chi).unwrap().max, exact);
        prop_assert!(exact <= eval_discrepancy(&s, &beck_fiala(&s)).unwrap().max);
        prop_assert!(spectral_lower_bound(&s).unwrap().floor().to_integer() <= exact);
    }

    #[test]
    fn system_json_round_trip(s in system(20)) {
        prop_assert_eq!(SetSystem::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn edge_list_round_trip(g in graph(30)) {
        prop_assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn coloring_text_round_trip(values in vec(prop_oneof![Just(1i8), Just(-1i8)], 0..50)) {
        let chi = Coloring::new(values).unwrap();
        prop_assert_eq!(Coloring::parse(&chi.to_text()).unwrap(), chi);
    }

    #[test]
    fn traced_orientation_bound(g in graph(40), mask in vec(any::<bool>(), 40)) {
        prop_assume!(g.edge_count() > 0);
        let (order, deg) = degeneracy_order(&g);
        let subset: Vec<usize> = (0..g.n()).filter(|&v| mask[v]).collect();
        let run = orientation_coloring_on(&g, &orient_along(&g, &order).unwrap(), Some(&subset)).unwrap();
        let (traced, _) = neighborhood_system(&g).trace(&subset).unwrap();
        prop_assert!(eval_discrepancy(&traced, &run.coloring).unwrap().max < 3 * deg as u64);
    }

    #[test]
    fn wcol_one_is_degeneracy_plus_one(g in graph(6)) {
        prop_assert_eq!(wcol_exact(&g, 1).unwrap(), degeneracy(&g) + 1);
    }

    #[test]
    fn any_order_bounds_wcol(g in graph(6), seq in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let seq: Vec<usize> = seq.into_iter().filter(|&v| v < g.n()).collect();
        let order = LinearOrder::from_sequence(seq).unwrap();
        for d in 1..=2 {
            prop_assert!(wcol_exact(&g, d).unwrap() <= wcol_from_order(&g, &order, d));
        }
    }

    #[test]
    fn formula_display_round_trip(seed in any::<u64>(), x in 1usize..=2, y in 0usize..=2) {
        let phi = random_formula(&FormulaShape::standard(x, y, 2, 2, 5), seed).unwrap();
        let back = parse_formula(&phi.to_string()).unwrap().with_arities(x, y).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn halving_keeps_the_ceiling(s in system(30)) {
        let (full, _) = s.with_ground_set();
        let all: Vec<usize> = (0..full.ground_size()).collect();
        let (kept, level) = halve(&full, &all).unwrap();
        prop_assert_eq!(kept.len(), all.len().div_ceil(2));
        prop_assert!(level.disc_used <= level.beck_fiala_disc + 2 * level.moved as u64);
    }
}
