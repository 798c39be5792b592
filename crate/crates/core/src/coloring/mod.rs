//! Backbone coloring semantics: validation, available colors, exact solving.

mod brute;
mod solver;

pub use brute::{brute_force, brute_force_capped, brute_force_domains, BRUTE_FORCE_CAP};
pub use solver::{
    bbc_number, cbc_number, cbc_number_with_witness, chromatic_number, odd_color_witness, optimal_proper_coloring,
    solve_domains, solve_k, solve_k_linear,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{BackbonePair, Edge};
use crate::{Error, Result};

pub const MAX_COLORS: u32 = 63;

/// A set of colors from `1..=63`, bit `c` standing for color `c`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1..k}`.
    pub fn full(k: u32) -> ColorSet {
        debug_assert!(k <= MAX_COLORS);
        ColorSet(((1u64 << k) - 1) << 1)
    }

    pub fn single(c: u32) -> ColorSet {
        ColorSet(1 << c)
    }

    pub fn from_colors(colors: impl IntoIterator<Item = u32>) -> ColorSet {
        ColorSet(colors.into_iter().fold(0, |acc, c| acc | 1 << c))
    }

    pub fn contains(self, c: u32) -> bool {
        c < 64 && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: u32) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: u32) {
        self.0 &= !(1 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ColorSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                c
            })
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        if let Some(&c) = v.iter().find(|&&c| c == 0 || c > MAX_COLORS) {
            return Err(serde::de::Error::custom(format!("color {c} out of range")));
        }
        Ok(ColorSet::from_colors(v))
    }
}

pub(crate) fn check_params(q: u32, k: u32) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidDistance(q));
    }
    if k == 0 || k > MAX_COLORS {
        return Err(Error::UnsupportedColorCount(k));
    }
    Ok(())
}

/// Colors within circular distance 1 of `c` in `[k]`: `|c-d| <= 1` or
/// `|c-d| >= k-1`.
pub fn adj_set(c: u32, k: u32) -> ColorSet {
    ColorSet::from_colors((1..=k).filter(|&d| {
        let diff = c.abs_diff(d);
        diff <= 1 || diff + 1 >= k
    }))
}

/// Whether backbone distances wrap around (`CBC`) or not (`BBC`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Circular,
    Linear,
}

/// Colors a backbone neighbor of a vertex colored `c` may not take.
pub fn backbone_forbidden(c: u32, q: u32, k: u32, mode: Mode) -> ColorSet {
    ColorSet::from_colors((1..=k).filter(|&d| {
        let diff = c.abs_diff(d);
        diff < q || (mode == Mode::Circular && diff + q > k)
    }))
}

/// A possibly partial assignment of colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularColoring {
    pub q: u32,
    pub k: u32,
    pub colors: Vec<Option<u32>>,
}

impl CircularColoring {
    pub fn empty(q: u32, k: u32, n: usize) -> Self {
        CircularColoring { q, k, colors: vec![None; n] }
    }

    pub fn total(q: u32, k: u32, colors: Vec<u32>) -> Self {
        CircularColoring { q, k, colors: colors.into_iter().map(Some).collect() }
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// The colors if every vertex is assigned.
    pub fn as_total(&self) -> Option<Vec<u32>> {
        self.colors.iter().copied().collect()
    }

    pub fn color(&self, v: usize) -> Option<u32> {
        self.colors[v]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationReason {
    Improper,
    BackboneTooClose,
    BackboneTooFar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Violation { edge: Edge, reason: ViolationReason },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks a total coloring; edges are examined in sorted order and the first
/// violation is reported.
pub fn verify(p: &BackbonePair, col: &CircularColoring) -> Result<Verdict> {
    verify_mode(p, col, Mode::Circular)
}

/// As [`verify`] for the linear variant (`|c(u)-c(v)| >= q` only).
pub fn verify_linear(p: &BackbonePair, col: &CircularColoring) -> Result<Verdict> {
    verify_mode(p, col, Mode::Linear)
}

pub fn verify_mode(p: &BackbonePair, col: &CircularColoring, mode: Mode) -> Result<Verdict> {
    if col.colors.len() != p.n() {
        return Err(Error::ColoringLength { expected: p.n(), found: col.colors.len() });
    }
    let mut colors = Vec::with_capacity(p.n());
    for (v, c) in col.colors.iter().enumerate() {
        let c = c.ok_or(Error::PartialColoring(v))?;
        if c == 0 || c > col.k {
            return Err(Error::ColorOutOfRange { color: c, k: col.k });
        }
        colors.push(c);
    }
    for &(u, v) in p.graph().edges() {
        let diff = colors[u].abs_diff(colors[v]);
        let reason = if diff == 0 {
            Some(ViolationReason::Improper)
        } else if !p.is_backbone_edge(u, v) {
            None
        } else if diff < col.q {
            Some(ViolationReason::BackboneTooClose)
        } else if mode == Mode::Circular && diff + col.q > col.k {
            Some(ViolationReason::BackboneTooFar)
        } else {
            None
        };
        if let Some(reason) = reason {
            return Ok(Verdict::Violation { edge: (u, v), reason });
        }
    }
    Ok(Verdict::Valid)
}

/// `A(u)`: colors left for uncolored `u` given the colored neighbors.
pub fn available(p: &BackbonePair, partial: &CircularColoring, u: usize) -> Result<ColorSet> {
    check_params(partial.q, partial.k)?;
    if partial.colors.len() != p.n() {
        return Err(Error::ColoringLength { expected: p.n(), found: partial.colors.len() });
    }
    if partial.colors[u].is_some() {
        return Err(Error::AlreadyColored(u));
    }
    Ok(available_unchecked(p, &partial.colors, u, partial.q, partial.k))
}

pub(crate) fn available_unchecked(p: &BackbonePair, colors: &[Option<u32>], u: usize, q: u32, k: u32) -> ColorSet {
    let mut out = ColorSet::full(k);
    for &w in p.graph().neighbors(u) {
        if let Some(c) = colors[w] {
            out = if p.is_backbone_edge(u, w) {
                out.difference(backbone_forbidden(c, q, k, Mode::Circular))
            } else {
                out.difference(ColorSet::single(c))
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn adj_examples() {
        assert_eq!(adj_set(3, 7).to_vec(), vec![2, 3, 4]);
        assert_eq!(adj_set(1, 7).to_vec(), vec![1, 2, 7]);
        assert_eq!(adj_set(1, 5).to_vec(), vec![1, 2, 5]);
        assert_eq!(adj_set(1, 2).to_vec(), vec![1, 2]);
        for k in 3..=12 {
            for c in 1..=k {
                assert_eq!(adj_set(c, k), backbone_forbidden(c, 2, k, Mode::Circular));
            }
        }
    }

    #[test]
    fn colorset_ops() {
        let s = ColorSet::from_colors([1, 4, 7]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.min(), Some(1));
        assert!(s.is_subset(ColorSet::full(7)));
        assert_eq!(ColorSet::full(7).difference(s).to_vec(), vec![2, 3, 5, 6]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,4,7]");
        let back: ColorSet = serde_json::from_str("[1,4,7]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<ColorSet>("[0]").is_err());
    }

    #[test]
    fn verify_examples() {
        let c5 = BackbonePair::full(Graph::cycle(5));
        let col = CircularColoring::total(2, 5, vec![1, 3, 5, 2, 4]);
        assert_eq!(verify(&c5, &col).unwrap(), Verdict::Valid);

        let k2 = BackbonePair::full(Graph::complete(2));
        let v = verify(&k2, &CircularColoring::total(2, 4, vec![1, 2])).unwrap();
        assert_eq!(v, Verdict::Violation { edge: (0, 1), reason: ViolationReason::BackboneTooClose });
        let v = verify(&k2, &CircularColoring::total(2, 5, vec![1, 5])).unwrap();
        assert_eq!(v, Verdict::Violation { edge: (0, 1), reason: ViolationReason::BackboneTooFar });
        assert!(verify_linear(&k2, &CircularColoring::total(2, 5, vec![1, 5])).unwrap().is_valid());

        let partial = CircularColoring { q: 2, k: 5, colors: vec![Some(1), None] };
        assert!(matches!(verify(&k2, &partial), Err(Error::PartialColoring(1))));
        let bad = CircularColoring::total(2, 3, vec![1, 4]);
        assert!(matches!(verify(&k2, &bad), Err(Error::ColorOutOfRange { color: 4, k: 3 })));
    }

    #[test]
    fn available_examples() {
        // star centre 0; backbone edge to 1, plain edges to 2 and 3
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = BackbonePair::new(g, &[(0, 1)]).unwrap();
        let mut col = CircularColoring::empty(2, 7, 4);
        col.colors[1] = Some(4);
        assert_eq!(available(&p, &col, 0).unwrap().to_vec(), vec![1, 2, 6, 7]);

        let mut col = CircularColoring::empty(2, 7, 4);
        col.colors[2] = Some(2);
        col.colors[3] = Some(5);
        assert_eq!(available(&p, &col, 0).unwrap().to_vec(), vec![1, 3, 4, 6, 7]);

        let mut col = CircularColoring::empty(2, 7, 4);
        col.colors[1] = Some(1);
        col.colors[2] = Some(4);
        assert_eq!(available(&p, &col, 0).unwrap().to_vec(), vec![3, 5, 6]);
        assert!(matches!(available(&p, &col, 1), Err(Error::AlreadyColored(1))));
    }
}
