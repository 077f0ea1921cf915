use super::catalog::candidates;
use super::*;
use crate::classify::classify_vertex;
use crate::planar::fixtures::*;
use crate::planar::distance_profile;

fn cut(g: &PlanarGraph, edges: &[(Vertex, Vertex)]) -> PlanarGraph {
    surgery(
        g,
        &Surgery {
            delete_edges: edges.to_vec(),
            ..Surgery::default()
        },
    )
    .unwrap()
    .graph
}

fn applied(g: &PlanarGraph, tag: LemmaTag) -> (Reduction, SurgeryOutcome) {
    let faces = Faces::trace(g).unwrap();
    let ctx = Context::new(g, &faces, 3 * g.max_degree() + 2);
    match ctx.first_match(tag, &mut Vec::new()) {
        Some(Applied::Surgery(r, out)) => (r, out),
        other => panic!("{tag} did not fire with a surgery: {other:?}"),
    }
}

fn sound(g: &PlanarGraph, r: &Reduction, out: &SurgeryOutcome) {
    assert!(check_properness(g, r, out), "{r}");
    assert!(check_properness_exhaustive(g, r, out), "{r}");
    assert!(out.graph.size() < g.size());
    assert!(out.graph.max_degree() <= g.max_degree());
    for &p in &r.pending {
        let d2 = distance_profile(g, p).unwrap().d2;
        assert!(d2 <= r.lemma_bound, "{r}: d2({p}) = {d2}");
        assert!(r.d2_bound <= r.lemma_bound);
    }
    assert!(r.d2_bound < 3 * g.max_degree() + 2);
}

#[test]
fn tags_are_ordered_and_labelled() {
    assert_eq!(LemmaTag::ALL.len(), 27);
    assert!(LemmaTag::ALL.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(LemmaTag::L2_6_1.to_string(), "L2.6.1");
    assert_eq!(LemmaTag::L2_11Case1.to_string(), "L2.11.case1");
    assert_eq!(LemmaTag::L2_10_3.bound(6), 18);
    assert_eq!(LemmaTag::L2_10_1.bound(6), 20);
}

#[test]
fn cut_vertex_matches_first() {
    let g = bowtie();
    let r = match_l2_1(&g).unwrap();
    assert_eq!(r.split, Some(0));
    assert!(match_l2_1(&cycle(5)).is_none());
    let p = path(4);
    assert_eq!(match_l2_1(&p).unwrap().center, 1);
    // a pendant vertex makes both L2.1 and L2.2 applicable; L2.1 wins
    let mut rot = wheel(6).rotation().to_vec();
    rot[1].push(7);
    rot.push(vec![1]);
    let g = PlanarGraph::from_rotation(rot).unwrap();
    let f = Faces::trace(&g).unwrap();
    assert_eq!(find_reduction(&g, &f).reduction().unwrap().lemma, LemmaTag::L2_1);
}

#[test]
fn low_degree_vertices() {
    let g = cycle(6);
    let (r, out) = applied(&g, LemmaTag::L2_2);
    assert_eq!(r.center, 0);
    assert_eq!(r.add_edges.len(), 1);
    let (a, b) = r.add_edges[0];
    assert_eq!((a.min(b), a.max(b)), (1, 5));
    assert_eq!((out.graph.n(), out.graph.m()), (5, 5));
    sound(&g, &r, &out);

    assert!(match_l2_2(&octahedron()).is_none());

    let g = star(6);
    let r = match_l2_2(&g).unwrap();
    assert_eq!(r.center, 1);
    assert!(r.add_edges.is_empty());
}

#[test]
fn three_vertex_cases() {
    let g = wheel(6);
    let f = Faces::trace(&g).unwrap();
    let r = match_lemma(&g, &f, LemmaTag::L2_3_2).unwrap();
    assert_eq!(r.center, 1);
    assert_eq!(r.add_edges.len(), 1);

    let g = k4();
    let f = Faces::trace(&g).unwrap();
    let (r, out) = applied(&g, LemmaTag::L2_3_2);
    assert_eq!(out.skipped.len(), 1);
    sound(&g, &r, &out);
    assert!(match_l2_3(&g, &f).is_some());

    let g = cube();
    let (r, out) = applied(&g, LemmaTag::L2_3_3);
    assert_eq!(r.center, 0);
    sound(&g, &r, &out);
}

#[test]
fn octahedron_deletes_a_4_4_vertex() {
    let g = octahedron();
    let f = Faces::trace(&g).unwrap();
    let r = find_reduction(&g, &f).reduction().cloned().unwrap();
    assert_eq!(r.lemma, LemmaTag::L2_4);
    assert_eq!(r.delete_vertices, vec![0]);
    assert!(r.add_edges.is_empty());
    let (r, out) = applied(&g, LemmaTag::L2_4);
    sound(&g, &r, &out);
}

#[test]
fn icosahedron_matches_a_5_5_vertex() {
    let g = icosahedron();
    let f = Faces::trace(&g).unwrap();
    assert!(matches!(find_reduction(&g, &f), Search::Found(_)));
    let r = match_l2_8_to_10(&g, &f).unwrap();
    assert_eq!(r.lemma, LemmaTag::L2_8_1);
    let (r, out) = applied(&g, LemmaTag::L2_8_1);
    sound(&g, &r, &out);
}

#[test]
fn four_two_vertex_with_adjacent_triangles() {
    // rims 1..4 of degrees 5,5,6,6; dropping 3-4 and 4-1 leaves triangles
    // at corners (1,2) and (2,3), so the shared neighbor is 2
    let g = cut(&layered(&[1, 1, 2, 2]), &[(3, 4), (4, 1)]);
    let f = Faces::trace(&g).unwrap();
    let c = classify_vertex(&g, &f, 0).unwrap();
    assert!(c.is3(4, 2, 2));
    let (r, out) = applied(&g, LemmaTag::L2_6_1);
    assert_eq!(r.center, 0);
    assert_eq!(r.case, Some("adjacent"));
    assert_eq!(r.labels[1], 2);
    assert_eq!(r.add_edges, vec![(2, 4)]);
    sound(&g, &r, &out);
}

#[test]
fn four_two_vertex_with_opposite_triangles() {
    let g = cut(&layered(&[1, 2, 1, 2]), &[(2, 3), (4, 1)]);
    let f = Faces::trace(&g).unwrap();
    assert!(classify_vertex(&g, &f, 0).unwrap().is(4, 2));
    let (r, out) = applied(&g, LemmaTag::L2_6_1);
    assert_eq!(r.case, Some("apart"));
    assert_eq!(r.add_edges.len(), 2);
    sound(&g, &r, &out);
}

#[test]
fn four_one_vertex_with_separated_quadrangles() {
    // triangle at (1,2), 4-faces at (2,3) and (4,1), a 5-face at (3,4);
    // rim 4 ends with degree 5, rim 1 with degree 6
    let base = layered(&[3, 2, 2, 4]);
    let o = |j: usize| 5 + j;
    // rim 4 starts at outer index 3 + 2 + 2 = 7
    let g = cut(&base, &[(2, 3), (4, 1), (3, 4), (4, o(7))]);
    let f = Faces::trace(&g).unwrap();
    let c = classify_vertex(&g, &f, 0).unwrap();
    assert!(c.is3(4, 1, 2), "{c:?}");
    assert_eq!(g.degree(1), 6);
    assert_eq!(g.degree(4), 5);
    let (r, out) = applied(&g, LemmaTag::L2_7_2);
    assert_eq!(r.case, Some("apart"));
    assert_eq!(r.labels, vec![1, 2, 3, 4]);
    assert_eq!(r.add_edges, vec![(1, 4), (3, 4)]);
    sound(&g, &r, &out);
}

#[test]
fn four_one_vertex_with_three_quadrangles_needs_two_chords() {
    let g = cut(&layered(&[2, 2, 2, 2]), &[(2, 3), (3, 4), (4, 1)]);
    let f = Faces::trace(&g).unwrap();
    assert!(classify_vertex(&g, &f, 0).unwrap().is3(4, 1, 3));
    let ctx = Context::new(&g, &f, 3 * g.max_degree() + 2);
    let cands = candidates(&ctx, LemmaTag::L2_7_1, 0);
    assert_eq!(cands[0].add_edges.len(), 1);
    // the single chord leaves a pair at distance 3
    let mut misses = Vec::new();
    let found = ctx.first_match(LemmaTag::L2_7_1, &mut misses).unwrap();
    let r = found.reduction();
    assert_eq!(r.case, Some("matching"));
    assert!(misses.iter().any(|m| m.reason.contains("distance 2")));
    let (r, out) = applied(&g, LemmaTag::L2_7_1);
    sound(&g, &r, &out);
}

#[test]
fn five_four_zero_with_three_full_six_neighbors() {
    // rims 2,3,4 stay (6,6); corner (5,1) becomes a 5-face
    let g = cut(&layered(&[3, 2, 2, 2, 2]), &[(5, 1), (1, 6)]);
    let f = Faces::trace(&g).unwrap();
    let c = classify_vertex(&g, &f, 0).unwrap();
    assert!(c.is3(5, 4, 0), "{c:?}");
    let (r, out) = applied(&g, LemmaTag::L2_10_3);
    let d = g.max_degree();
    assert_eq!(r.lemma_bound, 2 * d + 6);
    assert_eq!(r.add_edges.len(), 1);
    sound(&g, &r, &out);
}

#[test]
fn special_five_five_vertex_is_left_alone() {
    // each rim drops its first outer neighbor, so every rim edge borders a
    // 4-face on the outside
    let base = layered(&[3, 5, 5, 5, 5]);
    let starts = [0, 3, 8, 13, 18];
    let edges: Vec<_> = (0..5).map(|i| (1 + i, 6 + starts[i])).collect();
    let g = cut(&base, &edges);
    let f = Faces::trace(&g).unwrap();
    let c = classify_vertex(&g, &f, 0).unwrap();
    assert!(c.is(5, 5) && c.special, "{c:?}");
    let mut degs: Vec<_> = g.neighbors(0).iter().map(|&u| g.degree(u)).collect();
    degs.sort();
    assert_eq!(degs, vec![6, 8, 8, 8, 8]);
    let ctx = Context::new(&g, &f, 3 * g.max_degree() + 2);
    for tag in &LemmaTag::ALL[15..25] {
        assert!(candidates(&ctx, *tag, 0).is_empty(), "{tag}");
    }
}

fn six_five_gadget(extra0: usize, extra5: usize) -> PlanarGraph {
    // rims 2 and 4 are (5,5); dropping 6-1 makes rim 6 a (5,4)-vertex
    cut(&layered(&[extra0, 1, 1, 1, 0, extra5]), &[(6, 1)])
}

#[test]
fn six_five_with_max_degree_six_drops_an_edge() {
    let g = six_five_gadget(1, 2);
    assert_eq!(g.max_degree(), 6);
    let f = Faces::trace(&g).unwrap();
    assert!(classify_vertex(&g, &f, 0).unwrap().is(6, 5));
    let (r, out) = applied(&g, LemmaTag::L2_11Case1);
    assert_eq!(r.pending, vec![0, 4]);
    assert_eq!(r.delete_edges, vec![(0, 4)]);
    assert!(r.delete_vertices.is_empty());
    assert!(r.d2_bound <= 18);
    sound(&g, &r, &out);
    assert!(match_l2_11(&g, &f).is_some());
}

#[test]
fn six_five_with_max_degree_seven_fans_out() {
    let g = six_five_gadget(2, 2);
    assert_eq!(g.max_degree(), 7);
    let f = Faces::trace(&g).unwrap();
    assert!(match_lemma(&g, &f, LemmaTag::L2_11Case1).is_none());
    let (r, out) = applied(&g, LemmaTag::L2_11Case2);
    assert_eq!(r.delete_vertices, vec![0]);
    let mut adds = r.add_edges.clone();
    adds.sort();
    assert_eq!(adds, vec![(1, 4), (2, 4), (4, 6)]);
    assert_eq!(out.graph.degree(out.renaming.new_id(4).unwrap()), 7);
    sound(&g, &r, &out);
}

#[test]
fn six_five_without_a_five_four_neighbor() {
    let g = six_five_gadget(1, 1);
    let f = Faces::trace(&g).unwrap();
    assert!(match_l2_11(&g, &f).is_none());
}

#[test]
fn improper_surgery_is_detected() {
    // hub 0 joined to 1, 2, 3 on a 9-cycle; deleting it with no chords
    // leaves the three spokes' ends at distance 3
    let ring = [1, 4, 5, 2, 6, 7, 3, 8, 9];
    let mut rot = vec![vec![1, 2, 3]; 10];
    for (i, &x) in ring.iter().enumerate() {
        let next = ring[(i + 1) % 9];
        let prev = ring[(i + 8) % 9];
        rot[x] = if [1, 2, 3].contains(&x) {
            vec![next, 0, prev]
        } else {
            vec![next, prev]
        };
    }
    let g = PlanarGraph::from_rotation(rot).unwrap();
    let r = Reduction {
        lemma: LemmaTag::L2_3_3,
        case: None,
        center: 0,
        labels: g.neighbors(0).to_vec(),
        pending: vec![0],
        delete_vertices: vec![0],
        delete_edges: Vec::new(),
        add_edges: Vec::new(),
        d2_bound: 6,
        lemma_bound: 7,
        degree_cap: 3,
        split: None,
    };
    let out = surgery(&g, &r.surgery()).unwrap();
    assert!(!check_properness(&g, &r, &out));
    assert!(!check_properness_exhaustive(&g, &r, &out));
    assert_eq!(properness_violations(&g, &r, &out), vec![(1, 2), (1, 3), (2, 3)]);
}

#[test]
fn searches_are_deterministic() {
    let g = icosahedron();
    let f = Faces::trace(&g).unwrap();
    let a = find_reduction(&g, &f).reduction().cloned();
    let b = find_reduction(&g, &f).reduction().cloned();
    assert_eq!(a, b);
}

#[test]
fn small_degree_graphs_exhaust_quietly() {
    // Δ = 4 and every vertex (4,4): only L2.4 applies; after forbidding
    // everything with a one-color palette nothing fires and no gap is raised
    let g = octahedron();
    let f = Faces::trace(&g).unwrap();
    assert!(matches!(find_reduction_with(&g, &f, 1), Search::Exhausted));
}

#[test]
fn views_follow_the_rotation() {
    let g = wheel(5);
    let f = Faces::trace(&g).unwrap();
    let ctx = Context::new(&g, &f, 17);
    let vs = super::catalog::views(&ctx, 0);
    assert_eq!(vs.len(), 10);
    assert_eq!(vs[0].l, vec![1, 2, 3, 4, 5]);
    assert_eq!(vs[5].l, vec![1, 5, 4, 3, 2]);
    assert!(vs.iter().all(|v| v.cd.iter().all(|&d| d == 3)));
    // rim vertex: corner between 0 and the previous rim vertex is a triangle,
    // the one between the two rim neighbors is the outer face
    let vs = super::catalog::views(&ctx, 1);
    assert_eq!(vs[0].l, vec![0, 5, 2]);
    assert_eq!(vs[0].cd, vec![3, 5, 3]);
    assert_eq!(vs[3].l, vec![0, 2, 5]);
    assert_eq!(vs[3].cd, vec![3, 5, 3]);
}
