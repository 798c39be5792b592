//! Recursive colorers: find a reducible configuration, delete it, color the
//! rest, extend.
//!
//! The removal phase only deletes vertices; ids never change, a mask tracks
//! which vertices are still present. Extension runs over the removal log in
//! reverse, so each configuration is colored when exactly the vertices
//! removed after it are colored.

use std::fmt;

use serde::Serialize;

use crate::classes::{adjacent_3faces, classify, Theorem};
use crate::coloring::{adj_set, available_unchecked, solve_k, verify, CircularColoring, ColorSet};
use crate::graph::{BackbonePair, Edge};
use crate::io::to_graph6;
use crate::planar::{PlaneGraph, RotationSystem};
use crate::reduction::{extend_along_path, End, ExtendOutcome, ListAssignment};
use crate::{Error, Result};

const Q: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "config", rename_all = "snake_case")]
pub enum ReducibleConfig {
    /// `d_G(u) + 2 d_H(u) < k`: `u` always has a color left.
    LowTotalDegree { u: usize },
    /// `uw` in the matching with `u` of low degree and `w` not much higher.
    MatchedPair { u: usize, w: usize },
    /// Heavy subpath from a vertex of degree <= 4 to one of degree 3.
    HeavyPathToDeg3 { path: Vec<usize> },
    /// Heavy subpath from a vertex of degree <= 4 to a leaf of the forest.
    HeavyPathToLeaf { path: Vec<usize> },
    /// Heavy subpath spanning three consecutive degree-4 vertices; `middle`
    /// is an index into `path`.
    HeavyPathThreeDeg4 { path: Vec<usize>, middle: usize },
    /// What was left once the embedding lost the class property and no
    /// configuration applied; colored by exact search.
    ExactFallback { vertices: Vec<usize> },
}

impl ReducibleConfig {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            ReducibleConfig::LowTotalDegree { u } => vec![*u],
            ReducibleConfig::MatchedPair { u, w } => vec![*u, *w],
            ReducibleConfig::HeavyPathToDeg3 { path }
            | ReducibleConfig::HeavyPathToLeaf { path }
            | ReducibleConfig::HeavyPathThreeDeg4 { path, .. } => path.clone(),
            ReducibleConfig::ExactFallback { vertices } => vertices.clone(),
        }
    }
}

/// The instance left when no configuration exists although it is in class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofGapWitness {
    pub theorem: Theorem,
    /// Original ids of the remaining vertices; the graph below uses their
    /// positions in this list.
    pub vertices: Vec<usize>,
    pub graph6: String,
    pub backbone: Vec<Edge>,
    pub context: String,
}

impl fmt::Display for ProofGapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theorem {}: no reducible configuration in {} (backbone {:?}); {}",
            self.theorem.number(),
            self.graph6,
            self.backbone,
            self.context
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringCertificate {
    pub theorem: Theorem,
    pub k: u32,
    pub coloring: CircularColoring,
    pub log: Vec<ReducibleConfig>,
    /// Step at which the inherited embedding first had two adjacent 3-faces
    /// ([`Theorem::Thm2`] only).
    pub class_lost_at: Option<usize>,
}

impl ColoringCertificate {
    pub fn used_fallback(&self) -> bool {
        self.log.iter().any(|c| matches!(c, ReducibleConfig::ExactFallback { .. }))
    }
}

struct Work<'a> {
    p: &'a BackbonePair,
    alive: Vec<bool>,
}

impl<'a> Work<'a> {
    fn new(p: &'a BackbonePair) -> Self {
        Work { p, alive: vec![true; p.n()] }
    }

    fn deg(&self, v: usize) -> usize {
        self.p.graph().neighbors(v).iter().filter(|&&w| self.alive[w]).count()
    }

    fn bdeg(&self, v: usize) -> usize {
        self.bnbrs(v).count()
    }

    fn bnbrs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.p.backbone_neighbors(v).iter().copied().filter(|&w| self.alive[w])
    }

    fn remaining(&self) -> Vec<usize> {
        (0..self.p.n()).filter(|&v| self.alive[v]).collect()
    }

    fn witness(&self, theorem: Theorem, context: &str) -> ProofGapWitness {
        let keep = self.remaining();
        let (sub, _) = self.p.induced(&keep);
        ProofGapWitness {
            theorem,
            graph6: to_graph6(sub.graph()),
            backbone: sub.backbone().to_vec(),
            vertices: keep,
            context: context.to_string(),
        }
    }

    fn low_total_degree(&self, k: usize) -> Option<usize> {
        (0..self.p.n()).find(|&u| self.alive[u] && self.deg(u) + 2 * self.bdeg(u) < k)
    }

    fn matched_pair(&self, du: usize, dw_max: usize) -> Option<(usize, usize)> {
        (0..self.p.n()).filter(|&u| self.alive[u] && self.deg(u) == du).find_map(|u| {
            let w = self.bnbrs(u).next()?;
            (self.deg(w) <= dw_max).then_some((u, w))
        })
    }

    /// Paths of the remaining backbone with at least one edge, each listed
    /// from its smaller end.
    fn backbone_paths(&self) -> Vec<Vec<usize>> {
        let n = self.p.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !self.alive[s] || seen[s] || self.bdeg(s) != 1 {
                continue;
            }
            let mut path = vec![s];
            seen[s] = true;
            let mut prev = usize::MAX;
            let mut cur = s;
            while let Some(next) = self.bnbrs(cur).find(|&w| w != prev) {
                prev = cur;
                cur = next;
                seen[cur] = true;
                path.push(cur);
            }
            out.push(path);
        }
        out
    }

    fn heavy_subpaths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for path in self.backbone_paths() {
            let mut run = Vec::new();
            for v in path {
                if self.deg(v) <= 5 {
                    run.push(v);
                } else if !run.is_empty() {
                    out.push(std::mem::take(&mut run));
                }
            }
            if !run.is_empty() {
                out.push(run);
            }
        }
        out
    }

    /// Shortest heavy-path configuration; ties go to the earlier path and
    /// the earlier start.
    fn heavy_config(&self) -> Option<ReducibleConfig> {
        let mut best: Option<(usize, ReducibleConfig)> = None;
        let mut offer = |len: usize, cfg: ReducibleConfig| {
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                best = Some((len, cfg));
            }
        };
        for hp in self.heavy_subpaths() {
            let d: Vec<usize> = hp.iter().map(|&v| self.deg(v)).collect();
            let leaf: Vec<bool> = hp.iter().map(|&v| self.bdeg(v) == 1).collect();
            for i in 0..hp.len() {
                if d[i] > 4 {
                    continue;
                }
                for j in 0..hp.len() {
                    if i == j || !(d[j] == 3 || leaf[j]) {
                        continue;
                    }
                    let path: Vec<usize> =
                        if i < j { hp[i..=j].to_vec() } else { hp[j..=i].iter().rev().copied().collect() };
                    let len = path.len();
                    offer(
                        len,
                        if d[j] == 3 {
                            ReducibleConfig::HeavyPathToDeg3 { path }
                        } else {
                            ReducibleConfig::HeavyPathToLeaf { path }
                        },
                    );
                }
            }
            let fours: Vec<usize> = (0..hp.len()).filter(|&i| d[i] == 4).collect();
            for t in fours.windows(3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                if d[a..=c].iter().all(|&x| x >= 4) {
                    offer(c - a + 1, ReducibleConfig::HeavyPathThreeDeg4 { path: hp[a..=c].to_vec(), middle: b - a });
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn find(&self, theorem: Theorem) -> Option<ReducibleConfig> {
        let k = theorem.bound() as usize;
        if let Some(u) = self.low_total_degree(k) {
            return Some(ReducibleConfig::LowTotalDegree { u });
        }
        match theorem {
            Theorem::Thm1 => self.matched_pair(3, 4).map(|(u, w)| ReducibleConfig::MatchedPair { u, w }),
            Theorem::Thm2 => self.matched_pair(4, 5).map(|(u, w)| ReducibleConfig::MatchedPair { u, w }),
            Theorem::Thm3 => self.heavy_config(),
        }
    }
}

/// Maximal backbone subpaths whose vertices have degree at most 5. Backbone
/// components without edges are not paths of the backbone and are skipped.
pub fn heavy_subpaths(p: &BackbonePair) -> Result<Vec<Vec<usize>>> {
    if !p.is_linear_forest() {
        return Err(Error::BackboneNotLinearForest);
    }
    Ok(Work::new(p).heavy_subpaths())
}

/// A configuration the theorem's argument guarantees, or the instance as a
/// witness that none exists.
pub fn find_reducible(
    p: &BackbonePair,
    theorem: Theorem,
) -> std::result::Result<ReducibleConfig, Box<ProofGapWitness>> {
    let w = Work::new(p);
    w.find(theorem).ok_or_else(|| Box::new(w.witness(theorem, "no configuration")))
}

pub fn color_thm1(p: &BackbonePair) -> Result<ColoringCertificate> {
    color(p, Theorem::Thm1, None)
}

/// Uses `rotation` as the plane embedding if given.
pub fn color_thm2(p: &BackbonePair, rotation: Option<&RotationSystem>) -> Result<ColoringCertificate> {
    color(p, Theorem::Thm2, rotation)
}

pub fn color_thm3(p: &BackbonePair) -> Result<ColoringCertificate> {
    color(p, Theorem::Thm3, None)
}

pub fn color_theorem(
    p: &BackbonePair,
    theorem: Theorem,
    rotation: Option<&RotationSystem>,
) -> Result<ColoringCertificate> {
    color(p, theorem, rotation)
}

fn color(p: &BackbonePair, theorem: Theorem, rotation: Option<&RotationSystem>) -> Result<ColoringCertificate> {
    let report = classify(p, rotation)?;
    if !report.contains(theorem) {
        return Err(Error::NotInClass(theorem.number()));
    }
    let plane = match (theorem, rotation) {
        (Theorem::Thm2, Some(rs)) => Some(PlaneGraph::with_rotation(p.graph().clone(), rs.clone())?),
        (Theorem::Thm2, None) => Some(PlaneGraph::embed(p.graph())?),
        _ => None,
    };
    let k = theorem.bound();
    let mut work = Work::new(p);
    let mut log = Vec::new();
    let mut class_lost_at = None;
    while work.alive.iter().any(|&a| a) {
        if let (Some(pg), None) = (&plane, class_lost_at) {
            let sub = pg.induced(&work.remaining());
            if adjacent_3faces(sub.graph(), sub.faces()).is_some() {
                class_lost_at = Some(log.len());
            }
        }
        let cfg = match work.find(theorem) {
            Some(cfg) => cfg,
            None if class_lost_at.is_some() => ReducibleConfig::ExactFallback { vertices: work.remaining() },
            None => return Err(Error::ProofGap(Box::new(work.witness(theorem, "in class")))),
        };
        for v in cfg.vertices() {
            work.alive[v] = false;
        }
        log.push(cfg);
    }

    let mut colors: Vec<Option<u32>> = vec![None; p.n()];
    for cfg in log.iter().rev() {
        extend(p, k, theorem, cfg, &mut colors)?;
    }
    let coloring = CircularColoring { q: Q, k, colors };
    if !verify(p, &coloring)?.is_valid() {
        return Err(Error::ProofGap(Box::new(Work::new(p).witness(theorem, "extension produced an invalid coloring"))));
    }
    Ok(ColoringCertificate { theorem, k, coloring, log, class_lost_at })
}

fn gap(p: &BackbonePair, theorem: Theorem, context: String) -> Error {
    Error::ProofGap(Box::new(Work::new(p).witness(theorem, &context)))
}

fn extend(p: &BackbonePair, k: u32, theorem: Theorem, cfg: &ReducibleConfig, colors: &mut [Option<u32>]) -> Result<()> {
    let avail = |colors: &[Option<u32>], v: usize| available_unchecked(p, colors, v, Q, k);
    match cfg {
        ReducibleConfig::LowTotalDegree { u } => {
            let c = avail(colors, *u).min().ok_or_else(|| gap(p, theorem, format!("no color for {u}")))?;
            colors[*u] = Some(c);
        }
        ReducibleConfig::MatchedPair { u, w } => {
            // theorem 1 fixes w first, theorem 2 fixes u first
            let (first, second) = if theorem == Theorem::Thm1 { (*w, *u) } else { (*u, *w) };
            let a1 = avail(colors, first);
            let a2 = avail(colors, second);
            let pick = a1.iter().find_map(|c| a2.difference(adj_set(c, k)).min().map(|d| (c, d)));
            let (c, d) = pick.ok_or_else(|| gap(p, theorem, format!("matched pair {u}-{w} does not extend")))?;
            colors[first] = Some(c);
            colors[second] = Some(d);
        }
        ReducibleConfig::HeavyPathToDeg3 { path } | ReducibleConfig::HeavyPathToLeaf { path } => {
            extend_path(p, k, theorem, path, &vec![End::Front; path.len() - 1], colors)?;
        }
        ReducibleConfig::HeavyPathThreeDeg4 { path, middle } => {
            let schedule: Vec<End> = std::iter::repeat_n(End::Front, *middle)
                .chain(std::iter::repeat_n(End::Back, path.len() - 1 - middle))
                .collect();
            extend_path(p, k, theorem, path, &schedule, colors)?;
        }
        ReducibleConfig::ExactFallback { vertices } => {
            let (sub, _) = p.induced(vertices);
            let col =
                solve_k(&sub, Q, k)?.ok_or_else(|| gap(p, theorem, format!("remaining graph has no {k}-coloring")))?;
            for (i, &v) in vertices.iter().enumerate() {
                colors[v] = col.colors[i];
            }
        }
    }
    Ok(())
}

fn extend_path(
    p: &BackbonePair,
    k: u32,
    theorem: Theorem,
    path: &[usize],
    schedule: &[End],
    colors: &mut [Option<u32>],
) -> Result<()> {
    let (h, _) = p.graph().induced(path);
    let lists: Vec<ColorSet> = path.iter().map(|&v| available_unchecked(p, colors, v, Q, k)).collect();
    let lists = ListAssignment::new(k, lists)?;
    let order: Vec<usize> = (0..path.len()).collect();
    match extend_along_path(&h, &order, &lists, schedule)? {
        ExtendOutcome::Colored { colors: c, .. } => {
            for (i, &v) in path.iter().enumerate() {
                colors[v] = Some(c[i]);
            }
            Ok(())
        }
        ExtendOutcome::Fail { step, reason } => {
            Err(gap(p, theorem, format!("path {path:?} failed at step {step}: {reason}")))
        }
    }
}
