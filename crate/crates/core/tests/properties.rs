mod common;

use std::collections::BTreeSet;

use dbwalk::analysis::{classify, verify};
use dbwalk::seq::{Alphabet, CyclicSequence, KString};
use dbwalk::watchman::{enumerate_min_walks, induced_walk, solve_min_walk, theorem_walk};
use dbwalk::{build_de_bruijn_graph, generated_subdigraph, Generator, Limits};
use proptest::prelude::*;

fn sequence_strategy(max_a: usize, max_len: usize) -> impl Strategy<Value = CyclicSequence> {
    (2..=max_a).prop_flat_map(move |a| {
        prop::collection::vec(0..a as u8, 1..=max_len).prop_map(move |symbols| {
            CyclicSequence::new(Alphabet::new(a).unwrap(), symbols).unwrap()
        })
    })
}

fn kstring_strategy() -> impl Strategy<Value = KString> {
    (2usize..=6, 1usize..=5).prop_flat_map(|(a, k)| {
        prop::collection::vec(0..a as u8, k)
            .prop_map(move |s| KString::new(Alphabet::new(a).unwrap(), s).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn successors_split_into_cycle_and_de_bruijn_shifts(s in kstring_strategy()) {
        let all = s.successors();
        let cycle = s.cycle_shift();
        let others = s.de_bruijn_shift_successors();
        prop_assert_eq!(all.len(), s.alphabet().size());
        prop_assert_eq!(others.len(), s.alphabet().size() - 1);
        prop_assert!(!others.contains(&cycle));
        let mut union: BTreeSet<_> = others.into_iter().collect();
        union.insert(cycle);
        prop_assert_eq!(union, all.into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn k_tour_windows_chain_by_left_shift(d in sequence_strategy(5, 12), k in 1usize..=4) {
        prop_assume!(d.len() >= k);
        let tour = d.k_tour(k).unwrap();
        prop_assert_eq!(tour.len(), d.len());
        let w = tour.windows();
        for i in 0..w.len() {
            let next = &w[(i + 1) % w.len()];
            prop_assert!(w[i].successors().contains(next));
            prop_assert_eq!(w[i].symbols(), &d.window(i, k)[..]);
        }
    }

    #[test]
    fn generated_subdigraph_is_induced_and_matches_brute_force(
        d in sequence_strategy(4, 8),
        k in 1usize..=3,
    ) {
        prop_assume!(d.len() >= k);
        let a = d.alphabet().size();
        let g = generated_subdigraph(&d, k).unwrap();
        let (vertices, arcs) = common::brute_force_subdigraph(&d.to_string(), a, k);
        let got_vertices: BTreeSet<String> = g.vertices().iter().map(ToString::to_string).collect();
        prop_assert_eq!(&got_vertices, &vertices);
        let got_arcs: BTreeSet<(String, String)> = g
            .arcs()
            .iter()
            .map(|&(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect();
        prop_assert_eq!(got_arcs, arcs);
    }

    #[test]
    fn distinct_windows_give_a_times_n_vertices(d in sequence_strategy(4, 8), k in 2usize..=4) {
        prop_assume!(d.len() >= k);
        let distinct = dbwalk::analysis::has_distinct_windows(&d, k).unwrap();
        prop_assume!(distinct);
        let (vertices, _) = common::brute_force_subdigraph(&d.to_string(), d.alphabet().size(), k);
        prop_assert_eq!(vertices.len(), d.alphabet().size() * d.len());
    }

    #[test]
    fn solver_agrees_with_naive_oracle_on_tiny_graphs(d in sequence_strategy(3, 6), k in 1usize..=3) {
        prop_assume!(d.len() >= k);
        let g = generated_subdigraph(&d, k).unwrap();
        prop_assume!(g.vertex_count() <= 6);
        let r = solve_min_walk(&g, &Limits::default()).unwrap();
        prop_assert!(g.is_closed_dominating_walk(&r.witness));
        prop_assert_eq!(r.witness.len(), r.optimum_length);
        prop_assert_eq!(common::naive_min_walk(&g, d.len()), Some(r.optimum_length));
    }

    #[test]
    fn enumeration_matches_naive_rotation_classes(d in sequence_strategy(3, 6), k in 1usize..=3) {
        prop_assume!(d.len() >= k);
        let g = generated_subdigraph(&d, k).unwrap();
        prop_assume!(g.vertex_count() <= 7);
        let limits = Limits::default();
        let opt = solve_min_walk(&g, &limits).unwrap().optimum_length;
        let fast = enumerate_min_walks(&g, opt, &limits).unwrap();
        let fast: Vec<Vec<usize>> = fast.iter().map(|w| w.vertices().to_vec()).collect();
        let slow: BTreeSet<Vec<usize>> = common::naive_walks(&g, opt)
            .iter()
            .map(|w| common::least_rotation(w))
            .collect();
        prop_assert_eq!(fast, slow.into_iter().collect::<Vec<_>>());
        if opt > 0 {
            prop_assert!(enumerate_min_walks(&g, opt - 1, &limits).unwrap().is_empty());
        }
    }

    #[test]
    fn classification_and_verification_are_rotation_invariant(
        d in sequence_strategy(3, 7),
        k in 1usize..=3,
        r in 0usize..7,
    ) {
        prop_assume!(d.len() >= k);
        let rotated = d.rotate(r);
        prop_assert_eq!(classify(&d, k).unwrap(), classify(&rotated, k).unwrap());
        let limits = Limits::default();
        let (x, y) = (verify(&d, k, &limits), verify(&rotated, k, &limits));
        match (x, y) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x.classification, y.classification);
                prop_assert_eq!(x.is_watchman, y.is_watchman);
                prop_assert_eq!(x.oracle_optimum, y.oracle_optimum);
                prop_assert!(x.violations().is_empty(), "{:?}", x.violations());
            }
            (Err(x), Err(y)) => prop_assert_eq!(x, y),
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }
}

#[test]
fn generated_sequences_survive_rotation() {
    let limits = Limits::default();
    for (a, k) in [(2, 5), (3, 3), (5, 2), (7, 2), (2, 8)] {
        for generator in Generator::ALL {
            let s = generator.generate(a, k, &limits).unwrap();
            for r in 0..s.len() {
                assert!(
                    s.rotate(r).is_de_bruijn_sequence(k),
                    "{generator:?} {a} {k} r={r}"
                );
            }
        }
    }
}

#[test]
fn de_bruijn_graph_degrees_up_to_256_vertices() {
    let limits = Limits::default();
    for a in 2..=16usize {
        for k in 1.. {
            let n = a.pow(k as u32);
            if n > 256 {
                break;
            }
            let g = build_de_bruijn_graph(a, k, &limits).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert_eq!(g.arc_count(), n * a);
            for v in 0..n {
                assert_eq!(g.out_neighbors(v).len(), a);
                assert_eq!(g.in_neighbors(v).len(), a);
            }
        }
    }
}

#[test]
fn full_sequence_generates_full_graph_up_to_81_vertices() {
    let limits = Limits::default();
    for a in 2..=9usize {
        for k in 1.. {
            if a.pow(k as u32) > 81 {
                break;
            }
            let s = dbwalk::gen_fkm(a, k, &limits).unwrap();
            let sub = generated_subdigraph(&s, k).unwrap();
            let full = build_de_bruijn_graph(a, k, &limits).unwrap();
            assert_eq!(sub.vertices(), full.vertices(), "a={a} k={k}");
            assert_eq!(sub.arcs(), full.arcs(), "a={a} k={k}");
        }
    }
}

#[test]
fn theorem_walk_holds_for_every_generator() {
    let limits = Limits::default();
    for (a, k) in [
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 2),
        (3, 3),
        (4, 2),
        (4, 3),
        (5, 3),
    ] {
        for generator in Generator::ALL {
            let seed = generator.generate(a, k - 1, &limits).unwrap();
            let t = theorem_walk(a, k, Some(&seed), &limits).unwrap();
            assert!(
                t.graph.is_closed_dominating_walk(&t.walk),
                "{generator:?} {a} {k}"
            );
            assert_eq!(
                t.walk.len() as u64,
                dbwalk::watchman_number_formula(a, k).unwrap()
            );
        }
    }
}

#[test]
fn solver_matches_formula_on_small_de_bruijn_graphs() {
    let limits = Limits::default();
    for (a, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
        let g = build_de_bruijn_graph(a, k, &limits).unwrap();
        let r = solve_min_walk(&g, &limits).unwrap();
        assert_eq!(
            r.optimum_length as u64,
            dbwalk::watchman_number_formula(a, k).unwrap()
        );
    }
}

#[test]
fn quaternary_subdigraph_by_brute_force() {
    let (vertices, arcs) = common::brute_force_subdigraph("01210123", 4, 3);
    let s = dbwalk::parse_sequence("01210123", 4).unwrap();
    let g = generated_subdigraph(&s, 3).unwrap();
    assert_eq!(g.vertex_count(), vertices.len());
    assert_eq!(g.arc_count(), arcs.len());
    // 6 distinct windows, 5 distinct 2-suffixes, 4 successors each, and every
    // window is some window's successor.
    assert_eq!(vertices.len(), 24);
    let (_, walk) = induced_walk(&s, 3).unwrap();
    let dot = g.to_dot(Some(&walk)).unwrap();
    assert_eq!(dot.matches("style=bold").count(), 8);
}
