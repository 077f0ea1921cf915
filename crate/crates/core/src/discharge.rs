//! Exact discharging: initial charges, rules R1–R14, and the audit.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_rational::Rational64;

use crate::classify::{classify_all, VertexClass};
use crate::error::GraphError;
use crate::planar::{Faces, PlanarGraph, Vertex};
use crate::reductions::{find_reduction, Reduction, Search};

pub type Charge = Rational64;

/// A vertex or a face (by its index in the traced [`Faces`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
        Rule::R13,
        Rule::R14,
    ];

    pub fn id(self) -> usize {
        self as usize + 1
    }

    /// Receiver class `(k, t3, t4)` and amount of the neighbor income rules
    /// R4–R14; `t4 = None` matches any 4-face count.
    fn income(self) -> Option<(usize, usize, Option<usize>, Charge)> {
        let q = Rational64::new;
        Some(match self {
            Rule::R4 => (4, 4, None, q(1, 3)),
            Rule::R5 => (4, 3, Some(1), q(1, 4)),
            Rule::R6 => (4, 3, Some(0), q(1, 5)),
            Rule::R7 => (4, 2, Some(2), q(1, 6)),
            Rule::R8 => (4, 2, Some(1), q(7, 60)),
            Rule::R9 => (4, 2, Some(0), q(1, 15)),
            Rule::R10 => (4, 1, Some(3), q(1, 12)),
            Rule::R11 => (4, 1, Some(2), q(1, 30)),
            Rule::R12 => (5, 5, None, q(1, 6)),
            Rule::R13 => (5, 4, Some(1), q(1, 12)),
            Rule::R14 => (5, 4, Some(0), q(2, 45)),
            _ => return None,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.id())
    }
}

/// Every amount a rule can move.
pub fn rule_constants() -> [Charge; 10] {
    let q = Rational64::new;
    [
        q(1, 3),
        q(1, 5),
        q(1, 9),
        q(1, 4),
        q(1, 6),
        q(7, 60),
        q(1, 15),
        q(1, 12),
        q(1, 30),
        q(2, 45),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
}

/// Charges of every vertex and face plus the log of applied transfers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex_charge: Vec<Charge>,
    pub face_charge: Vec<Charge>,
    /// Canonical boundary of each face, as a stable key.
    pub face_keys: Vec<Vec<Vertex>>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charge(&self, e: Element) -> Charge {
        match e {
            Element::Vertex(v) => self.vertex_charge[v],
            Element::Face(f) => self.face_charge[f],
        }
    }

    pub fn total(&self) -> Charge {
        self.vertex_charge.iter().chain(&self.face_charge).sum()
    }

    fn slot(&mut self, e: Element) -> &mut Charge {
        match e {
            Element::Vertex(v) => &mut self.vertex_charge[v],
            Element::Face(f) => &mut self.face_charge[f],
        }
    }

    fn apply(&mut self, t: Transfer) {
        *self.slot(t.from) -= t.amount;
        *self.slot(t.to) += t.amount;
        self.transfers.push(t);
    }

    /// Per rule: total sent and total received, accumulated separately.
    pub fn rule_balance(&self) -> BTreeMap<Rule, (Charge, Charge)> {
        let mut sent: BTreeMap<(Rule, Element), Charge> = BTreeMap::new();
        let mut got: BTreeMap<(Rule, Element), Charge> = BTreeMap::new();
        for t in &self.transfers {
            *sent.entry((t.rule, t.from)).or_default() += t.amount;
            *got.entry((t.rule, t.to)).or_default() += t.amount;
        }
        let mut out: BTreeMap<Rule, (Charge, Charge)> = BTreeMap::new();
        for ((rule, _), c) in sent {
            out.entry(rule).or_default().0 += c;
        }
        for ((rule, _), c) in got {
            out.entry(rule).or_default().1 += c;
        }
        out
    }
}

/// `d(v) - 4` on every vertex and `d(f) - 4` on every face.
pub fn initial_charges(g: &PlanarGraph, faces: &Faces) -> ChargeLedger {
    let c = |d: usize| Rational64::from_integer(d as i64 - 4);
    ChargeLedger {
        vertex_charge: (0..g.n()).map(|v| c(g.degree(v))).collect(),
        face_charge: faces.faces().iter().map(|f| c(f.degree())).collect(),
        face_keys: faces.faces().iter().map(|f| f.canonical_key()).collect(),
        transfers: Vec::new(),
    }
}

/// Applies all fourteen rules simultaneously, reading classes from `g`.
pub fn apply_rules(g: &PlanarGraph, faces: &Faces, ledger: ChargeLedger) -> ChargeLedger {
    apply_selected(g, faces, ledger, &Rule::ALL)
}

/// Applies only the face rules R1 and R2.
pub fn apply_face_rules(g: &PlanarGraph, faces: &Faces, ledger: ChargeLedger) -> ChargeLedger {
    apply_selected(g, faces, ledger, &[Rule::R1, Rule::R2])
}

fn apply_selected(g: &PlanarGraph, faces: &Faces, mut ledger: ChargeLedger, rules: &[Rule]) -> ChargeLedger {
    let classes = classify_all(g, faces);
    for t in transfers(g, faces, &classes, rules) {
        ledger.apply(t);
    }
    ledger
}

fn transfers(g: &PlanarGraph, faces: &Faces, classes: &[VertexClass], rules: &[Rule]) -> Vec<Transfer> {
    let q = Rational64::new;
    let delta = g.max_degree();
    let mut out = Vec::new();
    for &rule in rules {
        match rule {
            Rule::R1 => {
                for (id, f) in faces.faces().iter().enumerate() {
                    if f.degree() == 3 {
                        for &x in &f.boundary {
                            out.push(Transfer {
                                rule,
                                from: Element::Vertex(x),
                                to: Element::Face(id),
                                amount: q(1, 3),
                            });
                        }
                    }
                }
            }
            Rule::R2 => {
                for (id, f) in faces.faces().iter().enumerate() {
                    if f.degree() < 5 {
                        continue;
                    }
                    for &x in &f.boundary {
                        let amount = match g.degree(x) {
                            3 => q(1, 3),
                            d if d < delta => q(1, 5),
                            _ => continue,
                        };
                        out.push(Transfer {
                            rule,
                            from: Element::Face(id),
                            to: Element::Vertex(x),
                            amount,
                        });
                    }
                }
            }
            Rule::R3 => {
                for v in (0..g.n()).filter(|&v| g.degree(v) == 3) {
                    for &u in g.neighbors(v) {
                        out.push(Transfer {
                            rule,
                            from: Element::Vertex(u),
                            to: Element::Vertex(v),
                            amount: q(1, 9),
                        });
                    }
                }
            }
            _ => {
                let Some((k, t3, t4, amount)) = rule.income() else {
                    continue;
                };
                let only_big = k == 5;
                for c in classes {
                    if !c.is(k, t3) || t4.is_some_and(|t4| c.t4 != t4) {
                        continue;
                    }
                    for &u in g.neighbors(c.v) {
                        let sender = &classes[u];
                        if only_big && (sender.k < 6 || sender.is(6, 6)) {
                            continue;
                        }
                        out.push(Transfer {
                            rule,
                            from: Element::Vertex(u),
                            to: Element::Vertex(c.v),
                            amount,
                        });
                    }
                }
            }
        }
    }
    out
}

/// An element whose final charge is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeElement {
    pub element: Element,
    pub charge: Charge,
    /// Degree bucket and incidence signature, e.g. `4-vertex (4,4,0) bad4`.
    pub classification: String,
}

/// Result of the full discharging pipeline on one graph.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub initial: ChargeLedger,
    pub ledger: ChargeLedger,
    pub total: Charge,
    pub negative_elements: Vec<NegativeElement>,
    pub max_degree: usize,
    /// Configuration found on the same graph, if any.
    pub reduction: Option<Reduction>,
    pub faces: Faces,
}

impl AuditReport {
    pub fn rule_log(&self) -> &[Transfer] {
        &self.ledger.transfers
    }

    /// Total is −8 (for n ≥ 3), every rule balances, and on `Δ ≥ 6`
    /// negative charge coexists with a reducible configuration.
    pub fn is_consistent(&self) -> bool {
        let balanced = self.ledger.rule_balance().values().all(|(s, r)| s == r);
        let cross = self.max_degree < 6 || self.negative_elements.is_empty() || self.reduction.is_some();
        self.total == self.initial.total() && balanced && cross && !self.impossible()
    }

    /// All final charges nonnegative although the total is negative.
    pub fn impossible(&self) -> bool {
        self.negative_elements.is_empty() && self.total < Rational64::from_integer(0)
    }

    /// Tab-separated `kind id initial final` rows with 1-based ids; faces
    /// are keyed by their canonical boundary.
    pub fn to_tsv(&self, trace: bool) -> String {
        let mut s = String::from("kind\tid\tinitial\tfinal\n");
        for v in 0..self.ledger.vertex_charge.len() {
            let e = Element::Vertex(v);
            let _ = writeln!(
                s,
                "vertex\t{}\t{}\t{}",
                v + 1,
                ratio(self.initial.charge(e)),
                ratio(self.ledger.charge(e))
            );
        }
        for f in 0..self.ledger.face_charge.len() {
            let e = Element::Face(f);
            let _ = writeln!(
                s,
                "face\t{}\t{}\t{}",
                self.element_name(e),
                ratio(self.initial.charge(e)),
                ratio(self.ledger.charge(e))
            );
        }
        if trace {
            s.push_str("# rule\tfrom\tto\tamount\n");
            for t in &self.ledger.transfers {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    t.rule,
                    self.element_name(t.from),
                    self.element_name(t.to),
                    ratio(t.amount)
                );
            }
        }
        s
    }

    /// `v<id>` for vertices, the dash-joined canonical boundary for faces.
    pub fn element_name(&self, e: Element) -> String {
        match e {
            Element::Vertex(v) => format!("{}", v + 1),
            Element::Face(f) => {
                let key: Vec<String> = self.ledger.face_keys[f].iter().map(|v| (v + 1).to_string()).collect();
                format!("f:{}", key.join("-"))
            }
        }
    }
}

/// `p/q` with the sign on the numerator.
pub fn ratio(c: Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Traces faces, discharges, and cross-checks negativity against the
/// reduction catalog.
pub fn audit(g: &PlanarGraph) -> Result<AuditReport, GraphError> {
    let faces = Faces::trace(g)?;
    Ok(audit_traced(g, faces))
}

pub fn audit_traced(g: &PlanarGraph, faces: Faces) -> AuditReport {
    let reduction = match find_reduction(g, &faces) {
        Search::Found(r) => Some(r),
        _ => None,
    };
    audit_given(g, faces, reduction)
}

/// Audit with the cross-referenced reduction supplied by the caller.
pub fn audit_given(g: &PlanarGraph, faces: Faces, reduction: Option<Reduction>) -> AuditReport {
    let initial = initial_charges(g, &faces);
    let ledger = apply_rules(g, &faces, initial.clone());
    let classes = classify_all(g, &faces);
    let mut negative_elements = Vec::new();
    for (v, &c) in ledger.vertex_charge.iter().enumerate() {
        if c < Rational64::from_integer(0) {
            let cl = &classes[v];
            let mut label = format!("{}-vertex {}", cl.k, cl.signature());
            if cl.bad4 {
                label.push_str(" bad4");
            }
            if cl.bad5 {
                label.push_str(" bad5");
            }
            negative_elements.push(NegativeElement {
                element: Element::Vertex(v),
                charge: c,
                classification: label,
            });
        }
    }
    for (f, &c) in ledger.face_charge.iter().enumerate() {
        if c < Rational64::from_integer(0) {
            negative_elements.push(NegativeElement {
                element: Element::Face(f),
                charge: c,
                classification: format!("{}-face", faces.degree(f)),
            });
        }
    }
    AuditReport {
        total: ledger.total(),
        initial,
        ledger,
        negative_elements,
        max_degree: g.max_degree(),
        reduction,
        faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_vertex;
    use crate::planar::fixtures::*;
    use crate::reductions::LemmaTag;

    fn q(p: i64, d: i64) -> Charge {
        Rational64::new(p, d)
    }

    fn q1(n: i64) -> impl Fn(i64, i64) -> Charge {
        move |p, d| Rational64::new(n * p, d)
    }

    fn final_ledger(g: &PlanarGraph) -> (Faces, ChargeLedger) {
        let f = Faces::trace(g).unwrap();
        let l = apply_rules(g, &f, initial_charges(g, &f));
        (f, l)
    }

    #[test]
    fn initial_charges_of_small_graphs() {
        let g = octahedron();
        let f = Faces::trace(&g).unwrap();
        let l = initial_charges(&g, &f);
        assert!(l.vertex_charge.iter().all(|&c| c == q(0, 1)));
        assert!(l.face_charge.iter().all(|&c| c == q(-1, 1)));
        assert_eq!(l.total(), q(-8, 1));

        let g = cycle(6);
        let f = Faces::trace(&g).unwrap();
        let l = initial_charges(&g, &f);
        assert!(l.vertex_charge.iter().all(|&c| c == q(-2, 1)));
        assert_eq!(l.face_charge, vec![q(2, 1), q(2, 1)]);
        assert_eq!(l.total(), q(-8, 1));

        let g = wheel(6);
        let f = Faces::trace(&g).unwrap();
        let l = initial_charges(&g, &f);
        assert_eq!(l.vertex_charge[0], q(2, 1));
        assert!(l.vertex_charge[1..].iter().all(|&c| c == q(-1, 1)));
        let mut faces = l.face_charge.clone();
        faces.sort();
        assert_eq!(faces, [vec![q(-1, 1); 6], vec![q(2, 1)]].concat());
        assert_eq!(l.total(), q(-8, 1));
    }

    #[test]
    fn octahedron_golden_values() {
        // R1: each vertex pays 1/3 to four triangles; R4: each (4,4)-vertex
        // receives 1/3 from four neighbors and pays 1/3 to four neighbors.
        let r1 = -q1(4)(1, 3);
        let r4 = q1(4)(1, 3) - q1(4)(1, 3);
        let expected = q(0, 1) + r1 + r4;
        assert_eq!(expected, q(-4, 3));
        let (_, l) = final_ledger(&octahedron());
        assert!(l.vertex_charge.iter().all(|&c| c == expected));
        assert!(l.face_charge.iter().all(|&c| c == q(0, 1)));
        assert_eq!(l.total(), q(-8, 1));
        let rules: Vec<_> = l.rule_balance().keys().copied().collect();
        assert_eq!(rules, vec![Rule::R1, Rule::R4]);
    }

    #[test]
    fn cycle_moves_nothing() {
        let g = cycle(6);
        let f = Faces::trace(&g).unwrap();
        let l = initial_charges(&g, &f);
        let done = apply_rules(&g, &f, l.clone());
        assert!(done.transfers.is_empty());
        assert_eq!(done.vertex_charge, l.vertex_charge);
        assert_eq!(done.face_charge, l.face_charge);
    }

    #[test]
    fn wheel_by_hand() {
        // rim: -1, pays 2/3 to triangles, gets 1/3 from the outer face and
        // 1/9 from each of 3 neighbors, pays 1/9 to each rim neighbor
        let rim = q(-1, 1) - q(2, 3) + q(1, 3) + q1(3)(1, 9) - q1(2)(1, 9);
        // hub: 2, pays 6/3 to triangles and 1/9 to six rims
        let hub = q(2, 1) - q(6, 3) - q1(6)(1, 9);
        let (f, l) = final_ledger(&wheel(6));
        assert_eq!(l.vertex_charge[0], hub);
        assert!(l.vertex_charge[1..].iter().all(|&c| c == rim));
        for (id, face) in f.faces().iter().enumerate() {
            assert_eq!(l.face_charge[id], q(0, 1), "{face:?}");
        }
        assert_eq!(l.total(), q(-8, 1));
    }

    #[test]
    fn five_five_income_skips_small_and_full_senders() {
        // the icosahedron is 5-regular: no 6⁺ senders, so R12 moves nothing
        let (_, l) = final_ledger(&icosahedron());
        assert!(l.transfers.iter().all(|t| t.rule == Rule::R1));
        assert!(l.vertex_charge.iter().all(|&c| c == q(1, 1) - q(5, 3)));
    }

    #[test]
    fn conservation_on_fixtures() {
        let graphs = [
            octahedron(),
            icosahedron(),
            wheel(7),
            cube(),
            k4(),
            bowtie(),
            star(6),
            path(5),
            layered(&[1, 2, 1, 2, 3]),
            layered(&[0, 1, 0, 1, 0, 2]),
        ];
        let consts = rule_constants();
        for g in &graphs {
            let (f, l) = final_ledger(g);
            assert_eq!(l.total(), q(-8, 1));
            for (s, r) in l.rule_balance().values() {
                assert_eq!(s, r);
            }
            assert!(l.transfers.iter().all(|t| consts.contains(&t.amount)));
            for (id, face) in f.faces().iter().enumerate() {
                if face.degree() == 3 {
                    assert_eq!(l.face_charge[id], q(0, 1));
                }
            }
        }
    }

    #[test]
    fn bad_flags_match_face_rules() {
        for g in [octahedron(), icosahedron(), wheel(6), layered(&[1, 2, 0, 3, 0]), cube()] {
            let f = Faces::trace(&g).unwrap();
            let l = apply_face_rules(&g, &f, initial_charges(&g, &f));
            for v in 0..g.n() {
                let c = classify_vertex(&g, &f, v).unwrap();
                let negative = l.vertex_charge[v] < q(0, 1);
                assert_eq!(c.bad4, c.k == 4 && negative);
                assert_eq!(c.bad5, c.k == 5 && negative);
            }
        }
    }

    #[test]
    fn audit_cross_checks_reductions() {
        let r = audit(&octahedron()).unwrap();
        assert_eq!(r.total, q(-8, 1));
        assert_eq!(r.negative_elements.len(), 6);
        assert_eq!(r.reduction.as_ref().unwrap().lemma, LemmaTag::L2_4);
        assert!(r.is_consistent());
        assert!(!r.impossible());
        assert!(r.negative_elements[0].classification.starts_with("4-vertex (4,4,0)"));

        let g = layered(&[1, 1, 1, 1, 1, 1]);
        let r = audit(&g).unwrap();
        assert!(r.max_degree >= 6);
        assert_eq!(r.total, q(-8, 1));
        assert!(!r.negative_elements.is_empty());
        assert!(r.reduction.is_some());
        assert!(r.is_consistent());
    }

    #[test]
    fn tsv_rows() {
        let r = audit(&k4()).unwrap();
        let tsv = r.to_tsv(false);
        let lines: Vec<_> = tsv.lines().collect();
        assert_eq!(lines[0], "kind\tid\tinitial\tfinal");
        assert_eq!(lines.len(), 1 + 4 + 4);
        assert!(lines[1].starts_with("vertex\t1\t-1/1\t"));
        assert!(lines.iter().any(|l| l.starts_with("face\tf:1-")));
        let traced = r.to_tsv(true);
        assert!(traced.lines().any(|l| l.starts_with("R1\t")));
        assert!(traced.lines().any(|l| l.starts_with("R3\t")));
    }

    #[test]
    fn ratio_format() {
        assert_eq!(ratio(q(-4, 3)), "-4/3");
        assert_eq!(ratio(q(0, 1)), "0/1");
        assert_eq!(ratio(q(6, 3)), "2/1");
    }
}
