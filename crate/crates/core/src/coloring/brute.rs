use super::{check_params, CircularColoring, ColorSet, Mode};
use crate::graph::BackbonePair;
use crate::{Error, Result};

/// Default vertex cap for the exhaustive oracle.
pub const BRUTE_FORCE_CAP: usize = 8;

/// Exhaustive oracle: walks all `k^n` assignments in odometer order and
/// returns the first that satisfies the definition.
pub fn brute_force(p: &BackbonePair, q: u32, k: u32, mode: Mode) -> Result<Option<CircularColoring>> {
    brute_force_capped(p, q, k, mode, BRUTE_FORCE_CAP)
}

pub fn brute_force_capped(
    p: &BackbonePair,
    q: u32,
    k: u32,
    mode: Mode,
    cap: usize,
) -> Result<Option<CircularColoring>> {
    check_params(q, k)?;
    let domains = vec![ColorSet::full(k); p.n()];
    Ok(brute_force_domains(p, q, k, mode, &domains, cap)?.map(|c| CircularColoring::total(q, k, c)))
}

/// Oracle over arbitrary per-vertex domains.
pub fn brute_force_domains(
    p: &BackbonePair,
    q: u32,
    k: u32,
    mode: Mode,
    domains: &[ColorSet],
    cap: usize,
) -> Result<Option<Vec<u32>>> {
    let n = p.n();
    if n > cap {
        return Err(Error::InstanceTooLarge { n, cap });
    }
    let ok = |c: &[u32]| {
        c.iter().zip(domains).all(|(&x, d)| d.contains(x))
            && p.graph().edges().iter().all(|&(u, v)| {
                let (a, b) = (c[u] as i64, c[v] as i64);
                if a == b {
                    return false;
                }
                if !p.is_backbone_edge(u, v) {
                    return true;
                }
                let d = (a - b).abs();
                d >= q as i64 && (mode == Mode::Linear || d <= k as i64 - q as i64)
            })
    };
    let mut c = vec![1u32; n];
    loop {
        if ok(&c) {
            return Ok(Some(c));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            if c[i] < k {
                c[i] += 1;
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn oracle_examples() {
        let k3 = BackbonePair::plain(Graph::complete(3));
        assert!(brute_force(&k3, 2, 2, Mode::Circular).unwrap().is_none());
        assert!(brute_force(&k3, 2, 3, Mode::Circular).unwrap().is_some());
        let c5 = BackbonePair::full(Graph::cycle(5));
        assert!(brute_force(&c5, 2, 4, Mode::Circular).unwrap().is_none());
        assert!(brute_force(&c5, 2, 5, Mode::Circular).unwrap().is_some());
        let big = BackbonePair::plain(Graph::path(9));
        assert!(matches!(brute_force(&big, 2, 3, Mode::Circular), Err(Error::InstanceTooLarge { n: 9, cap: 8 })));
        assert!(brute_force(&BackbonePair::plain(Graph::empty(0)), 2, 3, Mode::Circular).unwrap().is_some());
    }
}
