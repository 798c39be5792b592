//! Exact checks of the counting inequalities and discharging ledgers on
//! embedded instances.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use crate::classes::{adjacent_3faces, classify_plane, has_cycle_of_length, Theorem};
use crate::graph::{BackbonePair, Graph};
use crate::io::to_graph6;
use crate::planar::PlaneGraph;
use crate::workbench::{enumerate_graphs, Filters};
use crate::{Error, Result};

/// An exact rational with denominator 6, stored as a count of sixths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sixths(pub i64);

impl Sixths {
    pub const ZERO: Sixths = Sixths(0);
    pub const HALF: Sixths = Sixths(3);
    pub const THIRD: Sixths = Sixths(2);

    pub fn int(x: i64) -> Sixths {
        Sixths(6 * x)
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for Sixths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.0.unsigned_abs(), 6) as i64;
        let (num, den) = (self.0 / g, 6 / g);
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Serialize for Sixths {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for Sixths {
    type Output = Sixths;
    fn add(self, o: Sixths) -> Sixths {
        Sixths(self.0 + o.0)
    }
}

impl Sub for Sixths {
    type Output = Sixths;
    fn sub(self, o: Sixths) -> Sixths {
        Sixths(self.0 - o.0)
    }
}

impl Neg for Sixths {
    type Output = Sixths;
    fn neg(self) -> Sixths {
        Sixths(-self.0)
    }
}

impl AddAssign for Sixths {
    fn add_assign(&mut self, o: Sixths) {
        self.0 += o.0;
    }
}

impl SubAssign for Sixths {
    fn sub_assign(&mut self, o: Sixths) {
        self.0 -= o.0;
    }
}

impl std::iter::Sum for Sixths {
    fn sum<I: Iterator<Item = Sixths>>(it: I) -> Sixths {
        Sixths(it.map(|s| s.0).sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditVerdict {
    Holds,
    Fails,
}

/// One checked inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub lemma: &'static str,
    pub lhs: Sixths,
    pub rhs: Sixths,
    pub slack: Sixths,
    pub verdict: AuditVerdict,
}

impl AuditRow {
    fn new(lemma: &'static str, lhs: Sixths, rhs: Sixths) -> Self {
        let slack = rhs - lhs;
        let verdict = if slack.is_negative() { AuditVerdict::Fails } else { AuditVerdict::Holds };
        AuditRow { lemma, lhs, rhs, slack, verdict }
    }

    pub fn holds(&self) -> bool {
        self.verdict == AuditVerdict::Holds
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(what.to_string()))
    }
}

fn is_k3(g: &Graph) -> bool {
    g.n() == 3 && g.m() == 3
}

/// `Σ d(v) <= 3n + 3 f_3 / 2 - 6` for connected plane graphs without 4- and
/// 5-cycles, other than `K3`, with minimum degree at least 2.
pub fn degree_sum_no_c4_c5(pg: &PlaneGraph) -> Result<AuditRow> {
    let g = pg.graph();
    require(g.is_connected(), "graph is not connected")?;
    require(has_cycle_of_length(g, 4).is_none(), "graph contains a 4-cycle")?;
    require(has_cycle_of_length(g, 5).is_none(), "graph contains a 5-cycle")?;
    require(!is_k3(g), "graph is K3")?;
    require(g.n() > 0 && g.min_degree() >= 2, "minimum degree below 2")?;
    let n = g.n() as i64;
    let f3 = pg.faces().f3() as i64;
    Ok(AuditRow::new("degree_sum_c4c5", Sixths::int(g.degree_sum() as i64), Sixths(18 * n + 9 * f3 - 36)))
}

/// `Σ d(v) <= 5n + γ - f_3 - 10` (islands with `r = 4`) for connected plane
/// graphs on at least 3 vertices without adjacent 3-faces.
pub fn degree_sum_no_adjacent_triangles(pg: &PlaneGraph) -> Result<AuditRow> {
    let g = pg.graph();
    require(g.is_connected(), "graph is not connected")?;
    require(g.n() >= 3, "fewer than 3 vertices")?;
    require(adjacent_3faces(g, pg.faces()).is_none(), "two 3-faces share an edge")?;
    let n = g.n() as i64;
    let gamma = pg.islands(4).gamma as i64;
    let f3 = pg.faces().f3() as i64;
    Ok(AuditRow::new("degree_sum_triangles", Sixths::int(g.degree_sum() as i64), Sixths::int(5 * n + gamma - f3 - 10)))
}

/// `m <= 2n - 4 + γ / 3` (islands with `r = 5`) for connected planar
/// graphs on at least 3 vertices without 4-cycles, other than `K3`.
pub fn edge_bound_no_c4(pg: &PlaneGraph) -> Result<AuditRow> {
    let g = pg.graph();
    require(g.is_connected(), "graph is not connected")?;
    require(g.n() >= 3, "fewer than 3 vertices")?;
    require(has_cycle_of_length(g, 4).is_none(), "graph contains a 4-cycle")?;
    require(!is_k3(g), "graph is K3")?;
    let n = g.n() as i64;
    let gamma = pg.islands(5).gamma as i64;
    Ok(AuditRow::new("edge_bound_c4", Sixths::int(g.m() as i64), Sixths(12 * n - 24 + 2 * gamma)))
}

/// Which face-edge inequality: `3 f_3 + f_r <= m + γ_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceEdgeVariant {
    /// `r = 4`, no adjacent 3-faces.
    NoAdjacentTriangles,
    /// `r = 5`, no 4-cycles.
    NoC4,
}

pub fn face_edge_inequality(pg: &PlaneGraph, variant: FaceEdgeVariant) -> Result<AuditRow> {
    let g = pg.graph();
    require(g.is_connected(), "graph is not connected")?;
    let (r, id) = match variant {
        FaceEdgeVariant::NoAdjacentTriangles => {
            require(adjacent_3faces(g, pg.faces()).is_none(), "two 3-faces share an edge")?;
            (4, "face_edge_triangles")
        }
        FaceEdgeVariant::NoC4 => {
            require(has_cycle_of_length(g, 4).is_none(), "graph contains a 4-cycle")?;
            require(!is_k3(g), "graph is K3")?;
            (5, "face_edge_c4")
        }
    };
    let fs = pg.faces();
    let lhs = 3 * fs.f3() + fs.count_of_degree(r);
    let rhs = g.m() + pg.islands(r).gamma;
    Ok(AuditRow::new(id, Sixths::int(lhs as i64), Sixths::int(rhs as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Entity {
    Vertex(usize),
    Face(usize),
    Island(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: &'static str,
    pub from: Entity,
    pub to: Entity,
    pub amount: Sixths,
}

/// Charges per entity after each stage; `stages[0]` is the initial charge.
#[derive(Clone, Debug, Serialize)]
pub struct ChargeLedger {
    pub entities: Vec<Entity>,
    pub stages: Vec<Vec<Sixths>>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    fn new(entities: Vec<Entity>, initial: Vec<Sixths>) -> Self {
        ChargeLedger { entities, stages: vec![initial], transfers: Vec::new() }
    }

    fn index(&self, e: Entity) -> usize {
        self.entities.iter().position(|&x| x == e).expect("known entity")
    }

    /// Applies one rule's transfers as a new stage.
    fn stage(&mut self, moves: Vec<Transfer>) {
        let mut next = self.stages.last().unwrap().clone();
        for t in &moves {
            next[self.index(t.from)] -= t.amount;
            next[self.index(t.to)] += t.amount;
        }
        self.transfers.extend(moves);
        self.stages.push(next);
    }

    pub fn total(&self, stage: usize) -> Sixths {
        self.stages[stage].iter().copied().sum()
    }

    pub fn is_conserved(&self) -> bool {
        let t0 = self.total(0);
        (0..self.stages.len()).all(|i| self.total(i) == t0)
    }

    pub fn final_charge(&self, e: Entity) -> Sixths {
        self.stages.last().unwrap()[self.index(e)]
    }

    /// Entities ending with negative charge.
    pub fn negatives(&self) -> Vec<(Entity, Sixths)> {
        let last = self.stages.last().unwrap();
        self.entities.iter().zip(last).filter(|(_, c)| c.is_negative()).map(|(&e, &c)| (e, c)).collect()
    }
}

fn three_faces(pg: &PlaneGraph) -> Vec<usize> {
    (0..pg.faces().len()).filter(|&f| pg.faces().face(f).degree() == 3).collect()
}

/// Ledger for [`Theorem::Thm1`]: vertices start at `d(v) - 3`, 3-faces at `-3/2`; a
/// matched partner sends `1/2` to each degree-3 vertex, then every vertex
/// sends `1/2` to each incident 3-face.
pub fn charge_ledger_thm1(pg: &PlaneGraph, p: &BackbonePair) -> Result<ChargeLedger> {
    require(pg.graph() == p.graph(), "embedding and pair describe different graphs")?;
    require(classify_plane(p, pg).contains(Theorem::Thm1), "pair is not in the class of theorem 1")?;
    let g = pg.graph();
    let tri = three_faces(pg);
    let mut entities: Vec<Entity> = (0..g.n()).map(Entity::Vertex).collect();
    let mut initial: Vec<Sixths> = (0..g.n()).map(|v| Sixths::int(g.degree(v) as i64 - 3)).collect();
    for &f in &tri {
        entities.push(Entity::Face(f));
        initial.push(Sixths(-9));
    }
    let mut ledger = ChargeLedger::new(entities, initial);

    let mut partner = Vec::new();
    for &(a, b) in p.backbone() {
        for (u, w) in [(a, b), (b, a)] {
            if g.degree(u) == 3 {
                partner.push(Transfer {
                    rule: "partner_to_degree3",
                    from: Entity::Vertex(w),
                    to: Entity::Vertex(u),
                    amount: Sixths::HALF,
                });
            }
        }
    }
    ledger.stage(partner);

    let mut to_faces = Vec::new();
    for &f in &tri {
        for u in pg.faces().face(f).vertices() {
            to_faces.push(Transfer {
                rule: "vertex_to_triangle",
                from: Entity::Vertex(u),
                to: Entity::Face(f),
                amount: Sixths::HALF,
            });
        }
    }
    ledger.stage(to_faces);
    Ok(ledger)
}

/// Ledger for [`Theorem::Thm2`]: vertices start at `d(v) - 5`, 3-faces at `+1`, bad
/// islands (`r = 4`) at `-1`; each 3-face sends `1/3` to each bad island it
/// borders, then each degree-4 vertex receives `1` from its matched partner.
pub fn charge_ledger_thm2(pg: &PlaneGraph, p: &BackbonePair) -> Result<ChargeLedger> {
    require(pg.graph() == p.graph(), "embedding and pair describe different graphs")?;
    require(classify_plane(p, pg).contains(Theorem::Thm2), "pair is not in the class of theorem 2")?;
    let g = pg.graph();
    let tri = three_faces(pg);
    let islands = pg.islands(4);
    let mut entities: Vec<Entity> = (0..g.n()).map(Entity::Vertex).collect();
    let mut initial: Vec<Sixths> = (0..g.n()).map(|v| Sixths::int(g.degree(v) as i64 - 5)).collect();
    for &f in &tri {
        entities.push(Entity::Face(f));
        initial.push(Sixths::int(1));
    }
    for b in islands.bad_islands() {
        entities.push(Entity::Island(b));
        initial.push(Sixths::int(-1));
    }
    let mut ledger = ChargeLedger::new(entities, initial);

    let mut to_islands = Vec::new();
    for &f in &tri {
        for &b in &islands.gamma_of_face[f] {
            to_islands.push(Transfer {
                rule: "triangle_to_island",
                from: Entity::Face(f),
                to: Entity::Island(b),
                amount: Sixths::THIRD,
            });
        }
    }
    ledger.stage(to_islands);

    let mut partner = Vec::new();
    for u in 0..g.n() {
        if g.degree(u) == 4 {
            if let Some(&w) = p.backbone_neighbors(u).first() {
                partner.push(Transfer {
                    rule: "partner_to_degree4",
                    from: Entity::Vertex(w),
                    to: Entity::Vertex(u),
                    amount: Sixths::int(1),
                });
            }
        }
    }
    ledger.stage(partner);
    Ok(ledger)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProfileOutcome {
    NoneFound { examined: usize },
    Witness { graph6: String, matching: Vec<(usize, usize)> },
}

/// Matches every vertex of degree `low` to a distinct neighbor of degree at
/// least `high`, if possible.
fn profile_matching(g: &Graph, low: usize, high: usize) -> Option<Vec<(usize, usize)>> {
    let lows: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == low).collect();
    let mut owner = vec![usize::MAX; g.n()];
    fn augment(g: &Graph, u: usize, high: usize, seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &w in g.neighbors(u) {
            if g.degree(w) < high || seen[w] {
                continue;
            }
            seen[w] = true;
            if owner[w] == usize::MAX || augment(g, owner[w], high, seen, owner) {
                owner[w] = u;
                return true;
            }
        }
        false
    }
    for &u in &lows {
        let mut seen = vec![false; g.n()];
        if !augment(g, u, high, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut m: Vec<(usize, usize)> =
        (0..g.n()).filter(|&w| owner[w] != usize::MAX).map(|w| crate::graph::ordered(owner[w], w)).collect();
    m.sort_unstable();
    Some(m)
}

/// Searches all connected in-class graphs on at most `n_max` vertices for
/// the degree profile a smallest counterexample would need: minimum degree
/// 3 (resp. 4) with every degree-3 (resp. 4) vertex matched to a distinct
/// neighbor of degree at least 5 (resp. 6).
pub fn no_counterexample_profile(theorem: Theorem, n_max: usize) -> Result<ProfileOutcome> {
    let (filters, low, high) = match theorem {
        Theorem::Thm1 => {
            (Filters { c4_free: true, c5_free: true, connected: true, min_degree: 3, ..Filters::planar() }, 3, 5)
        }
        Theorem::Thm2 => {
            (Filters { connected: true, min_degree: 4, no_adjacent_3faces: true, ..Filters::planar() }, 4, 6)
        }
        Theorem::Thm3 => {
            return Err(Error::PreconditionViolated("no degree profile is defined for theorem 3".into()));
        }
    };
    let mut examined = 0;
    for n in 1..=n_max {
        for g in enumerate_graphs(n, &filters)? {
            examined += 1;
            if let Some(matching) = profile_matching(&g, low, high) {
                return Ok(ProfileOutcome::Witness { graph6: to_graph6(&g), matching });
            }
        }
    }
    Ok(ProfileOutcome::NoneFound { examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::planar::RotationSystem;

    fn embed(g: Graph) -> PlaneGraph {
        PlaneGraph::embed(&g).unwrap()
    }

    /// Square with each pendant triangle drawn outside.
    fn square_pendants() -> PlaneGraph {
        let g = named::square_with_pendant_triangles();
        let rot = vec![
            vec![1, 4, 7, 3],
            vec![2, 5, 4, 0],
            vec![3, 6, 5, 1],
            vec![0, 7, 6, 2],
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 0],
        ];
        PlaneGraph::with_rotation(g.clone(), RotationSystem::new(&g, rot).unwrap()).unwrap()
    }

    #[test]
    fn sixths_display() {
        assert_eq!(Sixths(-9).to_string(), "-3/2");
        assert_eq!(Sixths(2).to_string(), "1/3");
        assert_eq!(Sixths(12).to_string(), "2");
        assert_eq!(Sixths(0).to_string(), "0");
    }

    #[test]
    fn lemma_examples() {
        let c6 = embed(Graph::cycle(6));
        assert_eq!(degree_sum_no_c4_c5(&c6).unwrap().slack, Sixths::ZERO);
        let bowtie = embed(named::bowtie());
        assert_eq!(degree_sum_no_c4_c5(&bowtie).unwrap().slack, Sixths::ZERO);
        assert!(degree_sum_no_c4_c5(&embed(Graph::complete(3))).is_err());

        assert_eq!(degree_sum_no_adjacent_triangles(&square_pendants()).unwrap().slack, Sixths::int(3));
        assert_eq!(degree_sum_no_adjacent_triangles(&bowtie).unwrap().slack, Sixths::int(1));
        assert!(degree_sum_no_adjacent_triangles(&embed(Graph::complete(4))).is_err());

        assert_eq!(edge_bound_no_c4(&c6).unwrap().slack, Sixths::int(2));
        assert_eq!(edge_bound_no_c4(&bowtie).unwrap().slack, Sixths::ZERO);
        assert!(edge_bound_no_c4(&embed(Graph::complete(4))).is_err());
    }

    #[test]
    fn face_edge_examples() {
        let row = face_edge_inequality(&square_pendants(), FaceEdgeVariant::NoAdjacentTriangles).unwrap();
        assert_eq!((row.lhs, row.rhs, row.slack), (Sixths::int(13), Sixths::int(13), Sixths::ZERO));
        let row = face_edge_inequality(&embed(named::bowtie()), FaceEdgeVariant::NoAdjacentTriangles).unwrap();
        assert_eq!(row.slack, Sixths::ZERO);
        let row = face_edge_inequality(&embed(Graph::cycle(6)), FaceEdgeVariant::NoC4).unwrap();
        assert_eq!((row.lhs, row.rhs), (Sixths::ZERO, Sixths::int(6)));
    }

    #[test]
    fn small_graphs_need_the_extra_hypotheses() {
        // the raw inequalities fail here, which is why the checks refuse them
        let p3 = Graph::path(3);
        assert!(p3.degree_sum() as f64 > 3.0 * 3.0 - 6.0);
        assert!(degree_sum_no_c4_c5(&embed(p3)).is_err());
        assert!(degree_sum_no_adjacent_triangles(&embed(Graph::complete(2))).is_err());
        assert!(edge_bound_no_c4(&embed(Graph::complete(3))).is_err());
    }

    #[test]
    fn ledger_thm1_examples() {
        let c6 = Graph::cycle(6);
        let p = BackbonePair::new(c6.clone(), &[(0, 1), (3, 4)]).unwrap();
        let l = charge_ledger_thm1(&embed(c6), &p).unwrap();
        assert!(l.is_conserved());
        assert!(l.stages.last().unwrap().iter().all(|&c| c == Sixths::int(-1)));

        let bowtie = named::bowtie();
        let p = BackbonePair::plain(bowtie.clone());
        let pg = embed(bowtie);
        let l = charge_ledger_thm1(&pg, &p).unwrap();
        assert!(l.is_conserved());
        for f in three_faces(&pg) {
            assert_eq!(l.stages[0][l.index(Entity::Face(f))], Sixths(-9));
            assert_eq!(l.final_charge(Entity::Face(f)), Sixths::ZERO);
        }
    }

    #[test]
    fn ledger_thm2_examples() {
        let sq = square_pendants();
        let p = BackbonePair::plain(sq.graph().clone());
        let l = charge_ledger_thm2(&sq, &p).unwrap();
        assert!(l.is_conserved());
        let bad = sq.islands(4).bad_islands().collect::<Vec<_>>();
        assert_eq!(bad.len(), 1);
        assert_eq!(l.final_charge(Entity::Island(bad[0])), Sixths(2));

        let cube = named::cube();
        let p = BackbonePair::new(cube.clone(), &[(0, 1)]).unwrap();
        let l = charge_ledger_thm2(&embed(cube), &p).unwrap();
        assert!(l.is_conserved());
        assert_eq!(l.stages[0], vec![Sixths::int(-2); 8]);
        assert_eq!(l.entities.len(), 8);
    }

    #[test]
    fn profile_small() {
        assert_eq!(no_counterexample_profile(Theorem::Thm1, 4).unwrap(), ProfileOutcome::NoneFound { examined: 0 });
    }
}
