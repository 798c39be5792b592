//! Text formats: graph6, backbone edge lists and rotation-system JSON.

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph};
use crate::planar::RotationSystem;
use crate::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6 (no header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        assert!(n <= 258_047, "graph6 short forms cover n <= 258047");
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

/// Decodes one graph6 line. A leading `>>graph6<<` header is accepted.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let s = line.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size prefix".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {needed} for n = {n}", body.len())));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges)
}

/// Reads every non-empty graph6 line of `text`.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(from_graph6).collect()
}

/// Parses a backbone file: one `u v` pair per line, `#` comments.
pub fn parse_backbone(text: &str) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("backbone line {}: {raw:?}", lineno + 1));
        if parts.len() != 2 {
            return Err(bad());
        }
        let u = parts[0].parse().map_err(|_| bad())?;
        let v = parts[1].parse().map_err(|_| bad())?;
        out.push((u, v));
    }
    Ok(out)
}

pub fn format_backbone(edges: &[Edge]) -> String {
    edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}

/// On-disk rotation system: `{"n": .., "rotations": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationFile {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
}

impl RotationFile {
    pub fn from_rotation(rs: &RotationSystem) -> Self {
        RotationFile { n: rs.n(), rotations: rs.rotations().to_vec() }
    }

    /// Validates against `g` and builds the rotation system.
    pub fn into_rotation(self, g: &Graph) -> Result<RotationSystem> {
        if self.n != g.n() || self.rotations.len() != g.n() {
            return Err(Error::InconsistentRotation(format!(
                "rotation file describes {} vertices ({} lists), graph has {}",
                self.n,
                self.rotations.len(),
                g.n()
            )));
        }
        RotationSystem::new(g, self.rotations)
    }
}

pub fn parse_rotation(text: &str, g: &Graph) -> Result<RotationSystem> {
    let file: RotationFile = serde_json::from_str(text)?;
    file.into_rotation(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // petgraph's reference small graph
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&named::petersen()).len(), 9);
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
        assert_eq!(from_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C\x01").is_err());
    }

    #[test]
    fn large_size_prefix() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn backbone_file_parsing() {
        let edges = parse_backbone("# matching\n0 1\n\n  3 4  \n").unwrap();
        assert_eq!(edges, vec![(0, 1), (3, 4)]);
        assert!(parse_backbone("0 1 2").is_err());
        assert!(parse_backbone("a b").is_err());
        assert_eq!(format_backbone(&edges), "0 1\n3 4\n");
    }

    #[test]
    fn rotation_json() {
        let g = Graph::cycle(4);
        let rs = parse_rotation(r#"{"n":4,"rotations":[[1,3],[2,0],[3,1],[0,2]]}"#, &g).unwrap();
        assert_eq!(rs.rotation(0), &[1, 3]);
        assert!(parse_rotation(r#"{"n":4,"rotations":[[1],[2,0],[3,1],[0,2]]}"#, &g).is_err());
        let back = serde_json::to_string(&RotationFile::from_rotation(&rs)).unwrap();
        assert_eq!(parse_rotation(&back, &g).unwrap(), rs);
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i % bits.len()] { edges.push((u, v)); }
                    i += 1;
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
