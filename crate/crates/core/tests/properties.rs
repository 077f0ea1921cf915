use num_rational::Rational64;
use proptest::prelude::*;

use twodist::classify::classify_all;
use twodist::colorer::{color, verify_coloring};
use twodist::discharge::audit;
use twodist::planar::{distance_profile, distances_from, square, trace_faces, PlanarGraph};
use twodist::reductions::{check_properness, check_properness_exhaustive, find_applied, Applied, AppliedSearch};
use twodist::workbench::{gen_with, parse_graph, write_graph, GenOptions};

fn graphs() -> impl Strategy<Value = PlanarGraph> {
    (
        5usize..60,
        any::<u64>(),
        prop_oneof![Just(None), Just(Some(6)), Just(Some(7)), Just(Some(9))],
        prop_oneof![Just((0usize, 0.2f64)), Just((20, 0.05)), Just((60, 0.0))],
    )
        .prop_map(|(n, seed, cap, (flips_per_vertex, del))| {
            let opts = GenOptions::new(n, 3)
                .max_delta(cap)
                .flips(flips_per_vertex * n)
                .deletion_fraction(del);
            gen_with(&opts, seed).expect("minimum degree 3 is always reachable")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_invariants(g in graphs()) {
        let faces = trace_faces(&g).unwrap();
        prop_assert_eq!(g.n() + faces.len(), g.m() + 2);
        prop_assert_eq!(faces.iter().map(|f| f.degree()).sum::<usize>(), 2 * g.m());
        prop_assert!(g.is_connected());
        for v in 0..g.n() {
            for &u in g.neighbors(v) {
                prop_assert!(u != v);
                prop_assert!(g.neighbors(u).contains(&v));
            }
        }
    }

    #[test]
    fn square_degrees_match_distance_profiles(g in graphs()) {
        let h = square(&g);
        for v in 0..g.n() {
            let p = distance_profile(&g, v).unwrap();
            prop_assert_eq!(h.degree(v), p.d2);
            let dist = distances_from(&g, v);
            let close: Vec<usize> = (0..g.n()).filter(|&u| u != v && dist[u] <= 2).collect();
            prop_assert_eq!(&p.n2, &close);
        }
    }

    #[test]
    fn incidences_add_up(g in graphs()) {
        let faces = twodist::Faces::trace(&g).unwrap();
        let classes = classify_all(&g, &faces);
        let f3 = faces.faces().iter().filter(|f| f.degree() == 3).count();
        let f4 = faces.faces().iter().filter(|f| f.degree() == 4).count();
        prop_assert_eq!(classes.iter().map(|c| c.t3).sum::<usize>(), 3 * f3);
        prop_assert_eq!(classes.iter().map(|c| c.t4).sum::<usize>(), 4 * f4);
        for c in &classes {
            prop_assert_eq!(c.t3 + c.t4 + c.t5p, c.k);
        }
    }

    #[test]
    fn audit_total_is_minus_eight(g in graphs()) {
        let r = audit(&g).unwrap();
        prop_assert_eq!(r.total, Rational64::from_integer(-8));
        prop_assert!(r.is_consistent());
    }

    #[test]
    fn found_reductions_are_sound(g in graphs()) {
        let faces = twodist::Faces::trace(&g).unwrap();
        let palette = 3 * g.max_degree() + 2;
        if let AppliedSearch::Found(Applied::Surgery(r, out)) = find_applied(&g, &faces, palette) {
            prop_assert!(out.graph.size() < g.size());
            prop_assert!(check_properness(&g, &r, &out));
            prop_assert!(check_properness_exhaustive(&g, &r, &out));
            prop_assert!(r.d2_bound < palette);
        }
    }

    #[test]
    fn colorings_verify(g in graphs()) {
        let c = color(&g).unwrap();
        let report = verify_coloring(&g, &c);
        prop_assert!(report.valid);
        prop_assert!(report.colors_used <= 3 * g.max_degree() + 2);
    }

    #[test]
    fn files_round_trip(g in graphs()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
