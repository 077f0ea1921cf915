//! Per-lemma matchers. Each returns the candidate surgeries for one vertex,
//! the configuration's own surgery first and any repaired variant after it.

use crate::planar::Vertex;

use super::{Candidate, Context, LemmaTag};

/// The neighbors of a vertex read around it from some start, in either
/// direction. `cd[j]` is the degree of the face between `l[j]` and `l[j+1]`.
pub(crate) struct View {
    pub l: Vec<Vertex>,
    pub cd: Vec<usize>,
}

/// All labelings of `N(v)` that follow the rotation: counterclockwise
/// starting at the smallest neighbor id and onward, then clockwise.
pub(crate) fn views(ctx: &Context, v: Vertex) -> Vec<View> {
    let rot = ctx.g.neighbors(v);
    let k = rot.len();
    if k == 0 {
        return Vec::new();
    }
    let corner = |i: usize| ctx.faces.degree(ctx.faces.corner(v, i % k));
    let p = (0..k).min_by_key(|&i| rot[i]).unwrap_or(0);
    let mut out = Vec::with_capacity(2 * k);
    for t in 0..k {
        let s = p + t;
        out.push(View {
            l: (0..k).map(|j| rot[(s + j) % k]).collect(),
            cd: (0..k).map(|j| corner(s + j)).collect(),
        });
    }
    for t in 0..k {
        let s = p + k - t;
        out.push(View {
            l: (0..k).map(|j| rot[(s + k - j) % k]).collect(),
            cd: (0..k).map(|j| corner(s + 2 * k - j - 1)).collect(),
        });
    }
    out
}

fn delete_center(
    lemma: LemmaTag,
    case: Option<&'static str>,
    v: Vertex,
    labels: &[Vertex],
    add: &[(usize, usize)],
) -> Candidate {
    Candidate {
        lemma,
        case,
        labels: labels.to_vec(),
        pending: vec![v],
        delete_vertices: vec![v],
        delete_edges: Vec::new(),
        add_edges: add.iter().map(|&(a, b)| (labels[a], labels[b])).collect(),
    }
}

fn normalized(c: &Candidate) -> (LemmaTag, Vec<Vertex>, Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>) {
    let norm = |es: &[(Vertex, Vertex)]| {
        let mut es: Vec<_> = es.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        es.sort_unstable();
        es
    };
    (
        c.lemma,
        c.delete_vertices.clone(),
        norm(&c.delete_edges),
        norm(&c.add_edges),
    )
}

fn dedup(cands: Vec<Candidate>) -> Vec<Candidate> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for c in cands {
        let key = normalized(&c);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(c);
        }
    }
    out
}

pub(crate) fn candidates(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    use LemmaTag::*;
    let cands = match tag {
        L2_1 => Vec::new(),
        L2_2 => low_degree(ctx, v),
        L2_3_1 | L2_3_2 | L2_3_3 => three_vertex(ctx, tag, v),
        L2_4 | L2_5_1 | L2_5_2 => four_vertex_dense(ctx, tag, v),
        L2_6_1 | L2_6_2 | L2_6_3 | L2_6_4 | L2_6_5 => four_two(ctx, tag, v),
        L2_7_1 | L2_7_2 => four_one(ctx, tag, v),
        L2_8_1 | L2_8_2 | L2_8_3 => five_five(ctx, tag, v),
        L2_9_1 | L2_9_2 | L2_9_3 | L2_10_1 | L2_10_2 | L2_10_3 | L2_10_4 => five_four(ctx, tag, v),
        L2_11Case1 | L2_11Case2 => six_five(ctx, tag, v),
    };
    dedup(cands)
}

struct Nbrs<'c, 'a> {
    ctx: &'c Context<'a>,
    v: Vertex,
}

impl Nbrs<'_, '_> {
    fn count(&self, pred: impl Fn(Vertex) -> bool) -> usize {
        self.ctx.g.neighbors(self.v).iter().filter(|&&u| pred(u)).count()
    }

    fn deg_at_most(&self, d: usize) -> usize {
        self.count(|u| self.ctx.deg(u) <= d)
    }

    fn deg_exactly(&self, d: usize) -> usize {
        self.count(|u| self.ctx.deg(u) == d)
    }

    fn full_six(&self) -> usize {
        self.count(|u| self.ctx.class(u).is(6, 6))
    }
}

fn low_degree(ctx: &Context, v: Vertex) -> Vec<Candidate> {
    let k = ctx.deg(v);
    if k > 2 || k != ctx.g.min_degree() {
        return Vec::new();
    }
    let labels = ctx.g.neighbors(v).to_vec();
    let add: &[(usize, usize)] = if k == 2 { &[(0, 1)] } else { &[] };
    vec![delete_center(LemmaTag::L2_2, None, v, &labels, add)]
}

fn three_vertex(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    if ctx.deg(v) != 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for view in views(ctx, v) {
        let l = &view.l;
        match tag {
            LemmaTag::L2_3_1 if ctx.deg(l[1]) < ctx.delta => {
                out.push(delete_center(tag, None, v, l, &[(0, 1), (1, 2)]));
            }
            LemmaTag::L2_3_2 if view.cd[0] == 3 => {
                out.push(delete_center(tag, None, v, l, &[(0, 2)]));
            }
            LemmaTag::L2_3_3 if view.cd[0] == 4 && view.cd[1] == 4 => {
                out.push(delete_center(tag, None, v, l, &[(0, 2)]));
            }
            _ => {}
        }
    }
    out
}

fn four_vertex_dense(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    let c = *ctx.class(v);
    let n = Nbrs { ctx, v };
    match tag {
        LemmaTag::L2_4 if c.is(4, 4) && n.deg_at_most(9) > 0 => {
            vec![delete_center(tag, None, v, ctx.g.neighbors(v), &[])]
        }
        LemmaTag::L2_5_1 | LemmaTag::L2_5_2 if c.is(4, 3) => {
            let fires = if tag == LemmaTag::L2_5_1 {
                n.deg_at_most(7) > 0
            } else {
                c.t4 == 1 && n.deg_at_most(8) > 0
            };
            if !fires {
                return Vec::new();
            }
            let mut out = Vec::new();
            for view in views(ctx, v) {
                if view.cd[..3].iter().all(|&d| d == 3) {
                    if tag == LemmaTag::L2_5_1 {
                        out.push(delete_center(tag, None, v, &view.l, &[(0, 3)]));
                    } else {
                        out.push(delete_center(tag, None, v, &view.l, &[]));
                        out.push(delete_center(tag, Some("chord"), v, &view.l, &[(0, 3)]));
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

fn four_two(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    let c = *ctx.class(v);
    if !c.is(4, 2) {
        return Vec::new();
    }
    let n = Nbrs { ctx, v };
    let fires = match tag {
        LemmaTag::L2_6_1 => n.deg_at_most(5) > 0,
        LemmaTag::L2_6_2 => n.deg_exactly(6) > 0 && !c.special,
        LemmaTag::L2_6_3 => c.t4 == 2 && n.deg_at_most(7) > 0,
        LemmaTag::L2_6_4 => c.t4 == 1 && n.deg_at_most(6) > 0,
        LemmaTag::L2_6_5 => c.t4 == 1 && n.deg_exactly(7) > 0 && !c.special,
        _ => false,
    };
    if !fires {
        return Vec::new();
    }
    let mut out = Vec::new();
    for view in views(ctx, v) {
        if view.cd[0] == 3 && view.cd[1] == 3 {
            out.push(delete_center(tag, Some("adjacent"), v, &view.l, &[(1, 3)]));
        } else if view.cd[0] == 3 && view.cd[2] == 3 {
            out.push(delete_center(tag, Some("apart"), v, &view.l, &[(0, 3), (1, 2)]));
        }
    }
    out
}

fn four_one(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    let c = *ctx.class(v);
    let n = Nbrs { ctx, v };
    let mut out = Vec::new();
    match tag {
        LemmaTag::L2_7_1 if c.is3(4, 1, 3) && n.deg_at_most(6) > 0 => {
            for view in views(ctx, v) {
                if view.cd[0] == 3 && view.cd[1..].iter().all(|&d| d == 4) {
                    out.push(delete_center(tag, None, v, &view.l, &[(1, 2)]));
                    out.push(delete_center(tag, Some("matching"), v, &view.l, &[(1, 2), (0, 3)]));
                }
            }
        }
        LemmaTag::L2_7_2 if c.is3(4, 1, 2) && n.deg_at_most(5) > 0 => {
            let small = |u: Vertex| ctx.deg(u) <= 5;
            for view in views(ctx, v) {
                let cd = &view.cd;
                if cd[0] != 3 {
                    continue;
                }
                if cd[1] == 4 && cd[2] == 4 {
                    out.push(delete_center(tag, Some("adjacent"), v, &view.l, &[(1, 2), (0, 3)]));
                } else if cd[1] == 4 && cd[3] == 4 {
                    if small(view.l[0]) {
                        out.push(delete_center(tag, Some("apart"), v, &view.l, &[(0, 2), (0, 3)]));
                    }
                    if small(view.l[3]) {
                        out.push(delete_center(tag, Some("apart"), v, &view.l, &[(0, 3), (2, 3)]));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn five_five(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    let c = *ctx.class(v);
    if !c.is(5, 5) {
        return Vec::new();
    }
    let n = Nbrs { ctx, v };
    let fires = match tag {
        LemmaTag::L2_8_1 => n.deg_at_most(5) >= 1 && n.deg_at_most(6) >= 2,
        LemmaTag::L2_8_2 => n.deg_at_most(5) >= 1 && n.deg_exactly(7) >= 1 && !c.special,
        LemmaTag::L2_8_3 => n.deg_exactly(6) >= 2 && !c.special,
        _ => false,
    };
    if fires {
        vec![delete_center(tag, None, v, ctx.g.neighbors(v), &[])]
    } else {
        Vec::new()
    }
}

fn five_four(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    use LemmaTag::*;
    let c = *ctx.class(v);
    let n = Nbrs { ctx, v };
    let fires = match tag {
        L2_9_1 | L2_9_2 | L2_9_3 if !c.is3(5, 4, 1) => false,
        L2_10_1 | L2_10_2 | L2_10_3 | L2_10_4 if !c.is3(5, 4, 0) => false,
        L2_9_1 => n.deg_at_most(5) >= 2,
        L2_9_2 => n.deg_exactly(6) >= 1 && n.deg_at_most(5) >= 1 && !c.special,
        L2_9_3 => n.full_six() >= 2,
        L2_10_1 => n.deg_at_most(5) >= 2 && n.deg_at_most(6) >= 3,
        L2_10_2 => n.deg_at_most(5) >= 2 && n.deg_exactly(7) >= 1 && !c.special,
        L2_10_3 => n.full_six() >= 3,
        L2_10_4 => n.deg_at_most(5) >= 1 && n.full_six() >= 2,
        _ => false,
    };
    if !fires {
        return Vec::new();
    }
    views(ctx, v)
        .into_iter()
        .filter(|view| view.cd[..4].iter().all(|&d| d == 3))
        .map(|view| delete_center(tag, None, v, &view.l, &[(0, 4)]))
        .collect()
}

fn six_five(ctx: &Context, tag: LemmaTag, v: Vertex) -> Vec<Candidate> {
    let c = *ctx.class(v);
    let n = Nbrs { ctx, v };
    if !c.is(6, 5)
        || n.count(|u| ctx.class(u).is(5, 5)) < 2
        || n.count(|u| ctx.class(u).is(5, 4)) < 1
    {
        return Vec::new();
    }
    let mut out = Vec::new();
    for view in views(ctx, v) {
        let l = &view.l;
        let layout = view.cd[..5].iter().all(|&d| d == 3)
            && ctx.class(l[1]).is(5, 5)
            && ctx.class(l[3]).is(5, 5)
            && ctx.class(l[5]).is(5, 4);
        if !layout {
            continue;
        }
        let drop_edge = Candidate {
            lemma: LemmaTag::L2_11Case1,
            case: None,
            labels: l.clone(),
            pending: vec![v, l[3]],
            delete_vertices: Vec::new(),
            delete_edges: vec![(v, l[3])],
            add_edges: Vec::new(),
        };
        let fan = delete_center(LemmaTag::L2_11Case2, None, v, l, &[(0, 3), (1, 3), (3, 5)]);
        match tag {
            LemmaTag::L2_11Case1 if ctx.delta <= 6 => out.push(drop_edge),
            LemmaTag::L2_11Case2 => {
                out.push(fan);
                if ctx.delta > 6 {
                    out.push(drop_edge);
                }
            }
            _ => {}
        }
    }
    out
}
