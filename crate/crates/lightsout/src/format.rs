//! Graph serialization: graph6 and a terse edge-list form.
//!
//! graph6 (McKay): a size prefix (`n + 63` for n <= 62, else `~` followed by
//! three bytes carrying an 18-bit big-endian size), then the upper triangle
//! of the adjacency matrix in column order — bit (i, j) for j = 1..n, i < j —
//! packed MSB-first into 6-bit groups, each offset by 63 into ASCII 63..126.
//!
//! Edge list: `n=6; 0-1,1-2` (vertex count, then `u-v` pairs; the edge part
//! may be empty).

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 18-bit size form covers everything up to our 64-vertex cap.
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse("empty graph6 string"));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(format!(
                "graph6 byte {b} outside printable range 63..126"
            )));
        }
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::parse("graph6 sizes beyond 18 bits are unsupported"));
        }
        if bytes.len() < 4 {
            return Err(Error::parse("truncated graph6 size prefix"));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_VERTICES,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        return Err(Error::parse(format!(
            "graph6 body has {} groups, expected {expect} for n={n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let bit = (body[idx / 6] - 63) >> (5 - idx % 6) & 1;
            if bit == 1 {
                g.set_edge(i, j);
            }
            idx += 1;
        }
    }
    // Padding bits past the triangle must be zero.
    for k in nbits..expect * 6 {
        if (body[k / 6] - 63) >> (5 - k % 6) & 1 != 0 {
            return Err(Error::parse("nonzero padding bits in graph6 body"));
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    if edges.is_empty() {
        return format!("n={};", g.n());
    }
    let parts: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={}; {}", g.n(), parts.join(","))
}

pub fn parse_edge_list(s: &str) -> Result<Graph> {
    let s = s.trim();
    let rest = s
        .strip_prefix("n=")
        .ok_or_else(|| Error::parse("edge list must start with \"n=\""))?;
    let (count, edges_part) = match rest.split_once(';') {
        Some((c, e)) => (c, e),
        None => (rest, ""),
    };
    let n: usize = count
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad vertex count {:?}", count.trim())))?;
    let mut edges = Vec::new();
    for tok in edges_part.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let (u, v) = tok
            .split_once('-')
            .ok_or_else(|| Error::parse(format!("bad edge token {tok:?}")))?;
        let u: usize = u
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad vertex {:?}", u.trim())))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad vertex {:?}", v.trim())))?;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

/// Accept either serialization: edge lists are recognized by their `n=` prefix.
pub fn parse_graph(s: &str) -> Result<Graph> {
    if s.trim().starts_with("n=") {
        parse_edge_list(s)
    } else {
        parse_graph6(s)
    }
}
