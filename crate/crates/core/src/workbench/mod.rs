//! Instance generation, exhaustive enumeration and the hunting harness.

mod canonical;
mod enumerate;
mod hunt;
mod random;

pub use canonical::{canonical_code, canonical_form, canonical_labeling, canonical_pair_code, Code, CANON_MAX_N};
pub use enumerate::{enumerate_graphs, enumerate_levels, enumerate_up_to, ENUMERATION_MAX_N};
pub use hunt::{
    hunt, hunt_lines, reverify, BackboneSpec, Generator, HuntConfig, HuntSummary, HuntTarget, InstanceRecord,
    Provenance,
};
pub use random::{linear_forests, maximal_matchings, random_planar, sample_backbone, SampleKind};

use serde::Serialize;

use crate::classes::{adjacent_3faces, has_cycle_of_length};
use crate::graph::Graph;
use crate::planar::{is_planar, PlaneGraph};

/// Graph filters for generation. Planarity and the cycle conditions are
/// closed under taking subgraphs and are enforced while growing; the rest
/// only on finished graphs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    pub planar: bool,
    pub c4_free: bool,
    pub c5_free: bool,
    pub connected: bool,
    pub min_degree: usize,
    /// Evaluated on the computed embedding.
    pub no_adjacent_3faces: bool,
}

impl Filters {
    pub fn planar() -> Self {
        Filters { planar: true, ..Self::default() }
    }

    pub fn connected() -> Self {
        Filters { connected: true, ..Self::default() }
    }

    pub fn hereditary_ok(&self, g: &Graph) -> bool {
        (!self.c4_free || has_cycle_of_length(g, 4).is_none())
            && (!self.c5_free || has_cycle_of_length(g, 5).is_none())
            && (!self.planar || is_planar(g))
    }

    pub fn output_ok(&self, g: &Graph) -> bool {
        if self.connected && !g.is_connected() {
            return false;
        }
        if g.n() > 0 && g.min_degree() < self.min_degree {
            return false;
        }
        if self.no_adjacent_3faces {
            match PlaneGraph::embed(g) {
                Ok(pg) => adjacent_3faces(g, pg.faces()).is_none(),
                Err(_) => false,
            }
        } else {
            true
        }
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        self.hereditary_ok(g) && self.output_ok(g)
    }
}

/// Order-preserving map, parallel when the `parallel` feature is on. The
/// worker count comes from `CBC_LAB_THREADS` when set.
#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    use std::sync::OnceLock;
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        let threads = std::env::var("CBC_LAB_THREADS").ok()?.parse::<usize>().ok()?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok()
    });
    let run = || items.par_iter().map(&f).collect();
    match pool {
        Some(p) => p.install(run),
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// One report line: the body with `"schema": 1` and a `"record"` tag.
pub fn report_line<T: Serialize>(record: &str, body: &T) -> String {
    #[derive(Serialize)]
    struct Line<'a, T> {
        schema: u32,
        record: &'a str,
        #[serde(flatten)]
        body: &'a T,
    }
    serde_json::to_string(&Line { schema: 1, record, body }).expect("report bodies serialize")
}
