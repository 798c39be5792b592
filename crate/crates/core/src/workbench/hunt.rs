//! The counterexample hunt: generate in-class instances, compute exact
//! numbers and constructive certificates, compare with the target bound.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    enumerate_up_to, linear_forests, maximal_matchings, par_map, random_planar, report_line, sample_backbone, Filters,
    SampleKind,
};
use crate::audit::{
    degree_sum_no_adjacent_triangles, degree_sum_no_c4_c5, edge_bound_no_c4, face_edge_inequality, AuditRow,
    FaceEdgeVariant,
};
use crate::classes::{classify, ClassReport, Theorem};
use crate::coloring::{bbc_number, cbc_number_with_witness, solve_k, verify, CircularColoring};
use crate::constructive::color_theorem;
use crate::graph::{BackbonePair, Edge, Graph};
use crate::io::{from_graph6, to_graph6};
use crate::planar::PlaneGraph;
use crate::workbench::canonical_pair_code;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HuntTarget {
    /// CBC <= 5: planar, no 4- or 5-cycles, matching backbone.
    Thm1Bound,
    /// CBC <= 6: plane without adjacent 3-faces, matching backbone.
    Thm2Bound,
    /// CBC <= 7: planar, no 4-cycles, linear-forest backbone.
    Thm3Bound,
    /// CBC <= 7 for planar graphs with a spanning-tree backbone (open).
    Conj2TreeBound,
    /// CBC <= 6 for planar graphs without 4- and 5-cycles, any backbone
    /// (open).
    Conj3SteinbergBound,
}

impl HuntTarget {
    pub const ALL: [HuntTarget; 5] = [
        HuntTarget::Thm1Bound,
        HuntTarget::Thm2Bound,
        HuntTarget::Thm3Bound,
        HuntTarget::Conj2TreeBound,
        HuntTarget::Conj3SteinbergBound,
    ];

    pub fn bound(self) -> u32 {
        match self {
            HuntTarget::Thm1Bound => 5,
            HuntTarget::Thm2Bound => 6,
            HuntTarget::Thm3Bound | HuntTarget::Conj2TreeBound => 7,
            HuntTarget::Conj3SteinbergBound => 6,
        }
    }

    pub fn theorem(self) -> Option<Theorem> {
        match self {
            HuntTarget::Thm1Bound => Some(Theorem::Thm1),
            HuntTarget::Thm2Bound => Some(Theorem::Thm2),
            HuntTarget::Thm3Bound => Some(Theorem::Thm3),
            _ => None,
        }
    }

    pub fn in_class(self, p: &BackbonePair, report: &ClassReport) -> bool {
        match self.theorem() {
            Some(t) => report.contains(t),
            None if self == HuntTarget::Conj2TreeBound => report.planar && p.is_spanning_tree(),
            None => report.planar && report.c4_free && report.c5_free,
        }
    }

    /// Graph filters implied by the class (connectivity aside).
    pub fn filters(self) -> Filters {
        let planar = Filters::planar();
        match self {
            HuntTarget::Thm1Bound | HuntTarget::Conj3SteinbergBound => {
                Filters { c4_free: true, c5_free: true, ..planar }
            }
            HuntTarget::Thm2Bound => Filters { no_adjacent_3faces: true, ..planar },
            HuntTarget::Thm3Bound => Filters { c4_free: true, ..planar },
            HuntTarget::Conj2TreeBound => planar,
        }
    }

    pub fn default_backbones(self) -> BackboneSpec {
        match self {
            HuntTarget::Thm1Bound | HuntTarget::Thm2Bound => BackboneSpec::AllMaximalMatchings,
            HuntTarget::Thm3Bound => BackboneSpec::Sampled { kind: SampleKind::LinearForest, per_graph: 5 },
            HuntTarget::Conj2TreeBound => BackboneSpec::Sampled { kind: SampleKind::SpanningTree, per_graph: 3 },
            HuntTarget::Conj3SteinbergBound => BackboneSpec::Sampled { kind: SampleKind::Full, per_graph: 1 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum Generator {
    /// Every connected graph in the class with `n_min..=n_max` vertices.
    Exhaustive { n_min: usize, n_max: usize },
    /// `count` random connected graphs in the class.
    Random { count: usize, n_min: usize, n_max: usize },
    /// Caller-supplied graphs (e.g. from a graph6 file).
    Given {
        #[serde(skip)]
        graphs: Vec<Graph>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backbones", rename_all = "snake_case")]
pub enum BackboneSpec {
    AllMaximalMatchings,
    /// One linear forest per isomorphism class of pairs.
    AllLinearForests,
    /// Up to `per_graph` pairwise non-isomorphic sampled backbones.
    Sampled {
        kind: SampleKind,
        per_graph: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntConfig {
    pub target: HuntTarget,
    #[serde(flatten)]
    pub generator: Generator,
    #[serde(flatten)]
    pub backbones: BackboneSpec,
    pub seed: u64,
    /// `cbc_number` and `bbc_number` are computed up to this many vertices.
    pub exact_max_n: usize,
    pub max_instances: usize,
}

impl HuntConfig {
    pub fn new(target: HuntTarget, generator: Generator, seed: u64) -> Self {
        HuntConfig {
            target,
            generator,
            backbones: target.default_backbones(),
            seed,
            exact_max_n: 9,
            max_instances: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
}

/// One examined instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub id: String,
    pub graph6: String,
    pub backbone: Vec<Edge>,
    pub class: ClassReport,
    pub cbc: Option<u32>,
    /// An optimal coloring witnessing `cbc`.
    pub cbc_coloring: Option<Vec<u32>>,
    pub bbc: Option<u32>,
    pub certified_k: Option<u32>,
    pub certificate: Option<Vec<u32>>,
    pub used_fallback: bool,
    pub audit: Vec<AuditRow>,
    pub provenance: Provenance,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HuntSummary {
    pub instances: usize,
    pub violations: usize,
    pub max_cbc: Option<u32>,
    /// Ids of instances attaining the bound.
    pub tight: Vec<String>,
    pub fallbacks: usize,
}

struct Pending {
    id: String,
    pair: BackbonePair,
    provenance: Provenance,
}

fn mix(seed: u64, i: u64) -> u64 {
    // splitmix64 step
    let mut z = seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn graphs(cfg: &HuntConfig) -> Result<Vec<(Graph, Provenance)>> {
    let filters = Filters { connected: true, ..cfg.target.filters() };
    match &cfg.generator {
        Generator::Exhaustive { n_min, n_max } => Ok(enumerate_up_to(*n_max, &filters)?
            .into_iter()
            .filter(|g| g.n() >= *n_min)
            .map(|g| (g, Provenance { generator: "exhaustive".into(), seed: None }))
            .collect()),
        Generator::Random { count, n_min, n_max } => {
            let mut out = Vec::new();
            for i in 0..*count as u64 {
                let s = mix(cfg.seed, i);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let n = rng.gen_range(*n_min..=(*n_max).max(*n_min));
                let extra = if filters.c4_free { n / 3 + 1 } else { n + 1 };
                let mut m = n.saturating_sub(1) + rng.gen_range(0..=extra);
                loop {
                    match random_planar(n, m, &filters, s, 8) {
                        Ok(g) => {
                            out.push((
                                g,
                                Provenance { generator: format!("random_planar(n={n}, m={m})"), seed: Some(s) },
                            ));
                            break;
                        }
                        Err(_) if m + 1 > n => m -= 1,
                        Err(_) => break,
                    }
                }
            }
            Ok(out)
        }
        Generator::Given { graphs } => {
            Ok(graphs.iter().map(|g| (g.clone(), Provenance { generator: "input".into(), seed: None })).collect())
        }
    }
}

fn backbones(g: &Graph, spec: BackboneSpec, seed: u64) -> Result<Vec<(BackbonePair, Option<u64>)>> {
    match spec {
        BackboneSpec::AllMaximalMatchings => Ok(maximal_matchings(g)?
            .into_iter()
            .map(|m| (BackbonePair::new(g.clone(), &m).expect("matching of g"), None))
            .collect()),
        BackboneSpec::AllLinearForests => {
            let mut seen = HashSet::new();
            Ok(linear_forests(g)?
                .into_iter()
                .map(|f| BackbonePair::new(g.clone(), &f).expect("forest of g"))
                .filter(|p| seen.insert(canonical_pair_code(p)))
                .map(|p| (p, None))
                .collect())
        }
        BackboneSpec::Sampled { kind, per_graph } => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            // a bounded number of draws; small graphs may have fewer classes
            for i in 0..(per_graph as u64) * 8 {
                if out.len() == per_graph {
                    break;
                }
                let s = mix(seed, i);
                let p = sample_backbone(g, kind, s)?;
                if seen.insert(canonical_pair_code(&p)) {
                    out.push((p, Some(s)));
                }
            }
            Ok(out)
        }
    }
}

fn audits(pg: &PlaneGraph, class: &ClassReport) -> Vec<AuditRow> {
    let mut rows = Vec::new();
    if class.c4_free && class.c5_free {
        rows.extend(degree_sum_no_c4_c5(pg).ok());
    }
    if class.no_adjacent_3faces == Some(true) {
        rows.extend(degree_sum_no_adjacent_triangles(pg).ok());
        rows.extend(face_edge_inequality(pg, FaceEdgeVariant::NoAdjacentTriangles).ok());
    }
    if class.c4_free {
        rows.extend(edge_bound_no_c4(pg).ok());
        rows.extend(face_edge_inequality(pg, FaceEdgeVariant::NoC4).ok());
    }
    rows
}

fn evaluate(cfg: &HuntConfig, job: &Pending, class: ClassReport) -> InstanceRecord {
    let p = &job.pair;
    let bound = cfg.target.bound();
    let mut violations = Vec::new();
    let (mut cbc, mut cbc_coloring, mut bbc) = (None, None, None);
    if p.n() <= cfg.exact_max_n {
        match cbc_number_with_witness(p, 2) {
            Ok((k, c)) => {
                cbc = Some(k);
                cbc_coloring = c.as_total();
                if k > bound {
                    violations.push(format!("cbc = {k} exceeds {bound}"));
                }
            }
            Err(e) => violations.push(format!("cbc_number failed: {e}")),
        }
        bbc = bbc_number(p, 2).ok().map(|x| x.0);
    }
    let (mut certified_k, mut certificate, mut used_fallback) = (None, None, false);
    if let Some(t) = cfg.target.theorem() {
        match color_theorem(p, t, None) {
            Ok(cert) => {
                certified_k = Some(cert.k);
                certificate = cert.coloring.as_total();
                used_fallback = cert.used_fallback();
            }
            Err(e) => violations.push(format!("constructive colorer failed: {e}")),
        }
    }
    let audit = match PlaneGraph::embed(p.graph()) {
        Ok(pg) if p.graph().is_connected() => audits(&pg, &class),
        _ => Vec::new(),
    };
    for row in audit.iter().filter(|r| !r.holds()) {
        violations.push(format!("inequality {} fails: {} > {}", row.lemma, row.lhs, row.rhs));
    }
    InstanceRecord {
        id: job.id.clone(),
        graph6: to_graph6(p.graph()),
        backbone: p.backbone().to_vec(),
        class,
        cbc,
        cbc_coloring,
        bbc,
        certified_k,
        certificate,
        used_fallback,
        audit,
        provenance: job.provenance.clone(),
        violation: (!violations.is_empty()).then(|| violations.join("; ")),
    }
}

/// Runs the hunt. Records come back in instance order regardless of the
/// worker count.
pub fn hunt(cfg: &HuntConfig) -> Result<(Vec<InstanceRecord>, HuntSummary)> {
    let mut jobs = Vec::new();
    'outer: for (gi, (g, prov)) in graphs(cfg)?.into_iter().enumerate() {
        for (bi, (pair, bseed)) in
            backbones(&g, cfg.backbones, mix(cfg.seed ^ 0xb0b0, gi as u64))?.into_iter().enumerate()
        {
            if jobs.len() >= cfg.max_instances {
                break 'outer;
            }
            let provenance = Provenance { generator: prov.generator.clone(), seed: prov.seed.or(bseed) };
            jobs.push(Pending { id: format!("g{gi}-b{bi}"), pair, provenance });
        }
    }
    let records: Vec<Option<InstanceRecord>> = par_map(&jobs, |job| {
        let class = classify(&job.pair, None).ok()?;
        cfg.target.in_class(&job.pair, &class).then(|| evaluate(cfg, job, class))
    });
    let records: Vec<InstanceRecord> = records.into_iter().flatten().collect();
    let mut summary = HuntSummary { instances: records.len(), ..HuntSummary::default() };
    for r in &records {
        if r.violation.is_some() {
            summary.violations += 1;
        }
        if r.used_fallback {
            summary.fallbacks += 1;
        }
        summary.max_cbc = summary.max_cbc.max(r.cbc);
        if r.cbc == Some(cfg.target.bound()) {
            summary.tight.push(r.id.clone());
        }
    }
    Ok((records, summary))
}

/// The JSON-lines report: a header with the configuration, one line per
/// record, a summary line.
pub fn hunt_lines(cfg: &HuntConfig) -> Result<(Vec<String>, HuntSummary)> {
    let (records, summary) = hunt(cfg)?;
    let mut lines = vec![report_line("hunt", cfg)];
    lines.extend(records.iter().map(|r| report_line("instance", r)));
    lines.push(report_line("summary", &summary));
    Ok((lines, summary))
}

/// Re-checks a record from its serialized fields alone: recorded colorings
/// must verify, and a recorded bound violation must reproduce.
pub fn reverify(target: HuntTarget, r: &InstanceRecord) -> Result<bool> {
    let g = from_graph6(&r.graph6)?;
    let p = BackbonePair::new(g, &r.backbone)?;
    if let (Some(k), Some(c)) = (r.cbc, &r.cbc_coloring) {
        if !verify(&p, &CircularColoring::total(2, k, c.clone()))?.is_valid() {
            return Ok(false);
        }
        if k > 1 && solve_k(&p, 2, k - 1)?.is_some() {
            return Ok(false);
        }
    }
    if let (Some(k), Some(c)) = (r.certified_k, &r.certificate) {
        if !verify(&p, &CircularColoring::total(2, k, c.clone()))?.is_valid() {
            return Ok(false);
        }
    }
    if let Some(k) = r.cbc {
        if k > target.bound() && solve_k(&p, 2, target.bound())?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
