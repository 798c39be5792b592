use super::{backbone_forbidden, check_params, CircularColoring, ColorSet, Mode};
use crate::graph::{BackbonePair, Graph};
use crate::{Error, Result};

/// Smallest-last order: repeatedly peel a vertex of minimum remaining
/// degree (lowest id on ties), then reverse.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        gone[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    p: &'a BackbonePair,
    dom: Vec<ColorSet>,
    colors: Vec<u32>,
    rank: Vec<usize>,
    comp: Vec<usize>,
    started: Vec<bool>,
    symmetry: bool,
    forbid: Vec<ColorSet>,
    trail: Vec<(usize, ColorSet)>,
}

impl Search<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == 0).min_by_key(|&v| (self.dom[v].len(), self.rank[v]))
    }

    fn go(&mut self) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        let mut choices = self.dom[v];
        let fresh = self.symmetry && !self.started[self.comp[v]];
        if fresh {
            // rotating every color of a component preserves validity
            choices = choices.intersection(ColorSet::single(1));
            self.started[self.comp[v]] = true;
        }
        for c in choices.iter() {
            self.colors[v] = c;
            let mark = self.trail.len();
            let mut ok = true;
            for &w in self.p.graph().neighbors(v) {
                if self.colors[w] != 0 {
                    continue;
                }
                let cut = if self.p.is_backbone_edge(v, w) { self.forbid[c as usize] } else { ColorSet::single(c) };
                let next = self.dom[w].difference(cut);
                if next != self.dom[w] {
                    self.trail.push((w, self.dom[w]));
                    self.dom[w] = next;
                    if next.is_empty() {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.go() {
                return true;
            }
            while self.trail.len() > mark {
                let (w, d) = self.trail.pop().unwrap();
                self.dom[w] = d;
            }
        }
        self.colors[v] = 0;
        if fresh {
            self.started[self.comp[v]] = false;
        }
        false
    }
}

/// Backtracking over per-vertex color domains: minimum remaining domain
/// first (ties by degeneracy rank), forward checking, colors ascending.
///
/// With `symmetry` set the first vertex colored in each component is fixed
/// to color 1; only sound in circular mode with full domains.
pub fn solve_domains(
    p: &BackbonePair,
    q: u32,
    k: u32,
    mode: Mode,
    domains: &[ColorSet],
    symmetry: bool,
) -> Option<Vec<u32>> {
    let n = p.n();
    assert_eq!(domains.len(), n);
    let g = p.graph();
    let mut rank = vec![0; n];
    for (i, v) in degeneracy_order(g).into_iter().enumerate() {
        rank[v] = i;
    }
    let mut comp = vec![0; n];
    let comps = g.components();
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp[v] = c;
        }
    }
    let full = ColorSet::full(k);
    let dom: Vec<ColorSet> = domains.iter().map(|d| d.intersection(full)).collect();
    if dom.iter().any(|d| d.is_empty()) {
        return None;
    }
    let mut s = Search {
        p,
        dom,
        colors: vec![0; n],
        rank,
        comp,
        started: vec![false; comps.len()],
        symmetry,
        forbid: (0..=k).map(|c| if c == 0 { ColorSet::EMPTY } else { backbone_forbidden(c, q, k, mode) }).collect(),
        trail: Vec::new(),
    };
    s.go().then_some(s.colors)
}

fn solve_mode(p: &BackbonePair, q: u32, k: u32, mode: Mode) -> Result<Option<CircularColoring>> {
    check_params(q, k)?;
    let domains = vec![ColorSet::full(k); p.n()];
    Ok(solve_domains(p, q, k, mode, &domains, mode == Mode::Circular).map(|c| CircularColoring::total(q, k, c)))
}

/// A circular `q`-backbone `k`-coloring, or `None` after exhausting the
/// search space.
pub fn solve_k(p: &BackbonePair, q: u32, k: u32) -> Result<Option<CircularColoring>> {
    solve_mode(p, q, k, Mode::Circular)
}

/// As [`solve_k`] for the linear variant.
pub fn solve_k_linear(p: &BackbonePair, q: u32, k: u32) -> Result<Option<CircularColoring>> {
    solve_mode(p, q, k, Mode::Linear)
}

/// An optimal proper coloring with colors `1..=χ`.
pub fn optimal_proper_coloring(g: &Graph) -> Vec<u32> {
    let p = BackbonePair::plain(g.clone());
    let start = if g.m() > 0 { 2 } else { 1 };
    for k in start..=g.n().max(1) as u32 {
        if let Some(c) = solve_k(&p, 1, k).expect("k <= n <= 63") {
            return c.as_total().unwrap();
        }
    }
    Vec::new()
}

pub fn chromatic_number(g: &Graph) -> u32 {
    optimal_proper_coloring(g).into_iter().max().unwrap_or(0)
}

fn number(p: &BackbonePair, q: u32, mode: Mode) -> Result<(u32, CircularColoring)> {
    if q == 0 {
        return Err(Error::InvalidDistance(q));
    }
    if p.n() == 0 {
        return Ok((0, CircularColoring::total(q, 0, Vec::new())));
    }
    let mut lb = chromatic_number(p.graph());
    if !p.backbone().is_empty() {
        lb = lb.max(match mode {
            Mode::Circular => 2 * q,
            Mode::Linear => q + 1,
        });
    }
    let cutoff = 2 * p.n() as u32 + 2;
    for k in lb..=cutoff {
        if let Some(c) = solve_mode(p, q, k, mode)? {
            return Ok((k, c));
        }
    }
    Err(Error::SearchCutOff(cutoff))
}

/// `CBC_q(G, H)` together with an optimal coloring.
pub fn cbc_number_with_witness(p: &BackbonePair, q: u32) -> Result<(u32, CircularColoring)> {
    number(p, q, Mode::Circular)
}

pub fn cbc_number(p: &BackbonePair, q: u32) -> Result<u32> {
    Ok(number(p, q, Mode::Circular)?.0)
}

/// `BBC_q(G, H)`: the linear variant.
pub fn bbc_number(p: &BackbonePair, q: u32) -> Result<(u32, CircularColoring)> {
    number(p, q, Mode::Linear)
}

/// Doubles an optimal coloring into odd colors `1, 3, .., 2χ-1`: any two
/// adjacent vertices then differ by at least 2, so this is a linear
/// 2-backbone coloring for every backbone.
pub fn odd_color_witness(g: &Graph) -> CircularColoring {
    let base = optimal_proper_coloring(g);
    let chi = base.iter().copied().max().unwrap_or(1);
    CircularColoring::total(2, 2 * chi - 1, base.into_iter().map(|c| 2 * c - 1).collect())
}
