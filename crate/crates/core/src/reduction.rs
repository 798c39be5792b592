//! List colorings along a Hamiltonian path and the endpoint reduction rule
//! for 7 colors.
//!
//! A state is a graph `H` with a Hamiltonian path `P` and a list per vertex.
//! Reducing on an endpoint `v` deletes it and shrinks neighbor lists so that
//! every list coloring of the rest extends to `v`: the path successor loses
//! at most two colors (two only if they are within circular distance 2),
//! every other neighbor at most one.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{adj_set, solve_domains, ColorSet, Mode};
use crate::graph::{BackbonePair, Graph};
use crate::{Error, Result};

/// Colors of the reduction rule.
pub const K: u32 = 7;

/// Largest instance `list_cbc_solve` accepts.
pub const LIST_SOLVE_CAP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    pub k: u32,
    pub lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(k: u32, lists: Vec<ColorSet>) -> Result<Self> {
        if k == 0 || k > crate::coloring::MAX_COLORS {
            return Err(Error::UnsupportedColorCount(k));
        }
        let full = ColorSet::full(k);
        if let Some(c) = lists.iter().flat_map(|l| l.difference(full).iter()).next() {
            return Err(Error::ColorOutOfRange { color: c, k });
        }
        Ok(ListAssignment { k, lists })
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.lists[v]
    }
}

fn check_path(h: &Graph, path: &[usize]) -> Result<()> {
    let mut seen = vec![false; h.n()];
    let ok = path.len() == h.n()
        && path.iter().all(|&v| v < h.n() && !std::mem::replace(&mut seen[v], true))
        && path.windows(2).all(|w| h.has_edge(w[0], w[1]));
    if ok {
        Ok(())
    } else {
        Err(Error::NotHamiltonianPath)
    }
}

fn path_pair(h: &Graph, path: &[usize]) -> BackbonePair {
    let edges: Vec<_> = path.windows(2).map(|w| (w[0], w[1])).collect();
    BackbonePair::new(h.clone(), &edges).expect("path edges are edges of h")
}

/// A coloring of `h` from the lists, proper on `h` and with circular
/// distance at least `q` along `path`; `None` if none exists.
pub fn list_cbc_solve(h: &Graph, path: &[usize], lists: &ListAssignment, q: u32) -> Result<Option<Vec<u32>>> {
    check_path(h, path)?;
    if h.n() > LIST_SOLVE_CAP {
        return Err(Error::InstanceTooLarge { n: h.n(), cap: LIST_SOLVE_CAP });
    }
    crate::coloring::check_params(q, lists.k)?;
    let p = path_pair(h, path);
    Ok(solve_domains(&p, q, lists.k, Mode::Circular, &lists.lists, false))
}

/// Which end of the remaining path to reduce on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Front,
    Back,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ReductionCase {
    /// Degree 1, list `{c, c+1}`: both leave the successor.
    Consecutive,
    /// Degree 1, list `{c-1, c+1}`: `c` leaves the successor.
    Gap { c: u32 },
    /// Degree 1, the two colors are far apart.
    Unchanged,
    /// Some color `c` of the list has neither `c-1` nor `c+1` in the list.
    Isolated { c: u32 },
    /// No isolated color: rotate by `r` so the list holds 1 and 2 but not 6
    /// or 7.
    Rotated { r: u32 },
}

/// One reduction and what is needed to undo it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub vertex: usize,
    pub successor: usize,
    pub others: Vec<usize>,
    pub degree: usize,
    /// The endpoint list after trimming to `degree + 1` colors.
    pub list: ColorSet,
    pub case: ReductionCase,
    /// Colors removed from each neighbor's list (only actual removals).
    pub removed: Vec<(usize, ColorSet)>,
    pub preferred: Option<u32>,
}

impl ReductionRecord {
    /// Picks the endpoint color once its neighbors are colored.
    pub fn extend(&self, colors: &[Option<u32>]) -> Option<u32> {
        let mut forbidden = adj_set(colors[self.successor]?, K);
        for &x in &self.others {
            forbidden.insert(colors[x]?);
        }
        match self.preferred {
            Some(c) if !forbidden.contains(c) => Some(c),
            _ => self.list.difference(forbidden).min(),
        }
    }
}

/// Working state: vertex ids stay those of the original `h`.
#[derive(Clone, Debug)]
pub struct ReductionState {
    h: Graph,
    path: std::collections::VecDeque<usize>,
    lists: Vec<ColorSet>,
    alive: Vec<bool>,
}

impl ReductionState {
    pub fn new(h: Graph, path: &[usize], lists: &ListAssignment) -> Result<Self> {
        check_path(&h, path)?;
        if lists.lists.len() != h.n() {
            return Err(Error::ColoringLength { expected: h.n(), found: lists.lists.len() });
        }
        let n = h.n();
        Ok(ReductionState { h, path: path.iter().copied().collect(), lists: lists.lists.clone(), alive: vec![true; n] })
    }

    pub fn path(&self) -> Vec<usize> {
        self.path.iter().copied().collect()
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.h.neighbors(v).iter().filter(|&&w| self.alive[w]).count()
    }

    fn endpoint(&self, end: End) -> Option<(usize, usize)> {
        if self.path.len() < 2 {
            return None;
        }
        Some(match end {
            End::Front => (self.path[0], self.path[1]),
            End::Back => (self.path[self.path.len() - 1], self.path[self.path.len() - 2]),
        })
    }
}

fn rotate(c: u32, r: u32) -> u32 {
    (c - 1 + r) % K + 1
}

fn unrotate(c: u32, r: u32) -> u32 {
    (c - 1 + K - r % K) % K + 1
}

fn cw(c: u32, by: u32) -> u32 {
    rotate(c, by)
}

fn ccw(c: u32, by: u32) -> u32 {
    unrotate(c, by)
}

/// `|adj<c> ∪ adj<d>| <= 5`, i.e. circular distance at most 2.
pub fn pair_is_close(c: u32, d: u32) -> bool {
    adj_set(c, K).union(adj_set(d, K)).len() <= 5
}

/// Trims `list` to `d + 1` colors; for `d = 4` the two missing colors must
/// be close. Keeps the lexicographically first admissible subset.
fn trim(list: ColorSet, d: usize) -> Option<ColorSet> {
    if list.len() < d + 1 {
        return None;
    }
    if d < 4 {
        return Some(ColorSet::from_colors(list.iter().take(d + 1)));
    }
    let colors = list.to_vec();
    let mut best = None;
    let m = colors.len();
    // 5-subsets in lexicographic order
    let mut idx: Vec<usize> = (0..5).collect();
    loop {
        let keep = ColorSet::from_colors(idx.iter().map(|&i| colors[i]));
        let missing = ColorSet::full(K).difference(keep).to_vec();
        if pair_is_close(missing[0], missing[1]) {
            best = Some(keep);
            break;
        }
        let Some(i) = (0..5).rev().find(|&i| idx[i] < m - 5 + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..5 {
            idx[j] = idx[j - 1] + 1;
        }
    }
    best
}

fn choose_case(list: ColorSet, d: usize) -> Option<ReductionCase> {
    if d == 1 {
        let v = list.to_vec();
        let (a, b) = (v[0], v[1]);
        return Some(if cw(a, 1) == b || cw(b, 1) == a {
            ReductionCase::Consecutive
        } else if cw(a, 2) == b {
            ReductionCase::Gap { c: cw(a, 1) }
        } else if cw(b, 2) == a {
            ReductionCase::Gap { c: cw(b, 1) }
        } else {
            ReductionCase::Unchanged
        });
    }
    if let Some(c) = list.iter().find(|&c| !list.contains(cw(c, 1)) && !list.contains(ccw(c, 1))) {
        return Some(ReductionCase::Isolated { c });
    }
    (0..K)
        .find(|&r| {
            let rot = ColorSet::from_colors(list.iter().map(|c| rotate(c, r)));
            rot.contains(1) && rot.contains(2) && !rot.contains(6) && !rot.contains(7)
        })
        .map(|r| ReductionCase::Rotated { r })
}

/// Reduces on one end of the path. Requires `1 <= d(v) <= 4`,
/// `|L(v)| >= d(v) + 1`, and for `d(v) = 4` a trim whose two missing colors
/// are close.
pub fn reduce_endpoint(state: &mut ReductionState, end: End, k: u32) -> Result<ReductionRecord> {
    if k != K {
        return Err(Error::NotReducible(format!("the rule is stated for {K} colors, not {k}")));
    }
    let (v, succ) = state.endpoint(end).ok_or_else(|| Error::NotReducible("path has a single vertex".into()))?;
    let d = state.degree(v);
    if d > 4 {
        return Err(Error::NotReducible(format!("endpoint {v} has degree {d} > 4")));
    }
    let list = state.lists[v];
    if list.len() < d + 1 {
        return Err(Error::NotReducible(format!("endpoint {v} has {} colors for degree {d}", list.len())));
    }
    let list = trim(list, d).ok_or_else(|| {
        Error::NotReducible(format!("endpoint {v}: the two missing colors are not within distance 2"))
    })?;
    let case = choose_case(list, d).ok_or_else(|| Error::NotReducible(format!("endpoint {v}: no rotation found")))?;
    let others: Vec<usize> = state.h.neighbors(v).iter().copied().filter(|&w| state.alive[w] && w != succ).collect();
    let (from_succ, from_others, preferred) = match case {
        ReductionCase::Consecutive => (list, ColorSet::EMPTY, None),
        ReductionCase::Gap { c } => (ColorSet::single(c), ColorSet::EMPTY, None),
        ReductionCase::Unchanged => (ColorSet::EMPTY, ColorSet::EMPTY, None),
        ReductionCase::Isolated { c } => (ColorSet::from_colors([ccw(c, 1), cw(c, 1)]), ColorSet::single(c), Some(c)),
        ReductionCase::Rotated { r } => {
            let one = unrotate(1, r);
            (ColorSet::from_colors([one, unrotate(2, r)]), ColorSet::single(one), Some(one))
        }
    };
    let mut removed = Vec::new();
    for (w, cut) in std::iter::once((succ, from_succ)).chain(others.iter().map(|&w| (w, from_others))) {
        let gone = state.lists[w].intersection(cut);
        if !gone.is_empty() {
            state.lists[w] = state.lists[w].difference(gone);
            removed.push((w, gone));
        }
    }
    state.alive[v] = false;
    match end {
        End::Front => state.path.pop_front(),
        End::Back => state.path.pop_back(),
    };
    Ok(ReductionRecord { vertex: v, successor: succ, others, degree: d, list, case, removed, preferred })
}

/// Checks a recorded reduction against the rule, given the lists before it.
pub fn check_conformance(
    h: &Graph,
    before: &[ColorSet],
    after: &[ColorSet],
    rec: &ReductionRecord,
) -> std::result::Result<(), String> {
    for x in 0..h.n() {
        if x == rec.vertex {
            continue;
        }
        if !after[x].is_subset(before[x]) {
            return Err(format!("list of {x} grew"));
        }
        let lost = before[x].len() - after[x].len();
        let allowed = if x == rec.successor {
            2
        } else if rec.others.contains(&x) {
            1
        } else {
            0
        };
        if lost > allowed {
            return Err(format!("list of {x} lost {lost} colors, at most {allowed} allowed"));
        }
        if x == rec.successor && lost == 2 {
            let pair = before[x].difference(after[x]).to_vec();
            if !pair_is_close(pair[0], pair[1]) {
                return Err(format!("successor {x} lost the far pair {pair:?}"));
            }
        }
    }
    if !rec.list.is_subset(before[rec.vertex]) || rec.list.len() != rec.degree + 1 {
        return Err("endpoint list was not trimmed from its list".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExtendOutcome {
    Colored { colors: Vec<u32>, trace: Vec<ReductionRecord> },
    Fail { step: usize, reason: String },
}

/// Runs the scheduled reductions, colors the last vertex from its surviving
/// list, then undoes the reductions in reverse order.
pub fn extend_along_path(h: &Graph, path: &[usize], lists: &ListAssignment, schedule: &[End]) -> Result<ExtendOutcome> {
    let n = h.n();
    if n == 0 {
        return Ok(ExtendOutcome::Colored { colors: Vec::new(), trace: Vec::new() });
    }
    if schedule.len() != n - 1 {
        return Err(Error::PreconditionViolated(format!("schedule has {} steps for {n} vertices", schedule.len())));
    }
    let mut state = ReductionState::new(h.clone(), path, lists)?;
    let mut trace = Vec::with_capacity(n - 1);
    for (step, &end) in schedule.iter().enumerate() {
        match reduce_endpoint(&mut state, end, lists.k) {
            Ok(rec) => trace.push(rec),
            Err(Error::NotReducible(reason)) => return Ok(ExtendOutcome::Fail { step, reason }),
            Err(e) => return Err(e),
        }
    }
    let last = state.path[0];
    let mut colors = vec![None; n];
    match state.lists[last].min() {
        Some(c) => colors[last] = Some(c),
        None => {
            return Ok(ExtendOutcome::Fail { step: n - 1, reason: format!("last vertex {last} has an empty list") })
        }
    }
    for (step, rec) in trace.iter().enumerate().rev() {
        match rec.extend(&colors) {
            Some(c) => colors[rec.vertex] = Some(c),
            None => {
                return Ok(ExtendOutcome::Fail {
                    step,
                    reason: format!("no color left for {} on the way back", rec.vertex),
                })
            }
        }
    }
    Ok(ExtendOutcome::Colored { colors: colors.into_iter().map(Option::unwrap).collect(), trace })
}

/// A sampled list state in the regime where the reductions are guaranteed to
/// go through: endpoints of degree at most 3 with `d + 1` colors, inner
/// vertices of degree at most 5 with `d + 2` colors (all 7 at degree 5).
/// With `middle = Some(p)` the schedule reduces from both ends towards `p`,
/// which then gets `d + 3` colors.
#[derive(Clone, Debug, Serialize)]
pub struct SampledState {
    pub h: Graph,
    pub path: Vec<usize>,
    pub lists: ListAssignment,
    pub schedule: Vec<End>,
}

pub fn sample_state(seed: u64, max_n: usize) -> SampledState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let middle = (n >= 3 && rng.gen_bool(0.35)).then(|| rng.gen_range(1..n - 1));
    // positions along the path; chords between positions at distance >= 2
    let ends: Vec<usize> = match middle {
        Some(_) => vec![0, n - 1],
        None => vec![0],
    };
    let cap = |i: usize| {
        if ends.contains(&i) {
            3
        } else if Some(i) == middle {
            4
        } else {
            5
        }
    };
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut deg = vec![2usize; n];
    deg[0] = 1;
    deg[n - 1] = 1;
    if n == 2 {
        deg = vec![1, 1];
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);
    let density = rng.gen_range(0.0..0.9);
    for (i, j) in pairs {
        if rng.gen_bool(density) && deg[i] < cap(i) && deg[j] < cap(j) {
            edges.push((i, j));
            deg[i] += 1;
            deg[j] += 1;
        }
    }
    let mut lists = Vec::with_capacity(n);
    for (i, &d) in deg.iter().enumerate() {
        let want = if ends.contains(&i) {
            d + 1
        } else if Some(i) == middle {
            d + 3
        } else if d == 5 {
            7
        } else {
            d + 2
        };
        let size = rng.gen_range(want.min(7)..=7);
        let mut colors: Vec<u32> = (1..=K).collect();
        colors.shuffle(&mut rng);
        lists.push(ColorSet::from_colors(colors.into_iter().take(size)));
    }
    // random relabeling so path order and ids differ
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let h = Graph::new(n, &edges.iter().map(|&(a, b)| (label[a], label[b])).collect::<Vec<_>>()).unwrap();
    let mut relabeled = vec![ColorSet::EMPTY; n];
    for i in 0..n {
        relabeled[label[i]] = lists[i];
    }
    let schedule = match middle {
        Some(p) => std::iter::repeat_n(End::Front, p).chain(std::iter::repeat_n(End::Back, n - 1 - p)).collect(),
        None => vec![End::Front; n - 1],
    };
    SampledState { h, path: label, lists: ListAssignment::new(K, relabeled).unwrap(), schedule }
}
