//! Orderly generation of graph isomorphism classes.
//!
//! Internal canonical convention: a labeled graph is canonical when its colex
//! (graph6-order) upper-triangle bitstring is the lexicographic maximum over
//! all relabelings — equivalently, its sorted edge-position sequence is
//! minimal. Removing the highest-position edge of a canonical graph leaves a
//! canonical graph, so the search tree "empty graph -> add one edge at a
//! position past the current last" visits every class exactly once, testing
//! canonicity of each candidate child.
//!
//! Enumeration by edge count goes through *cores* — graphs with no isolated
//! vertices and no isolated edges. Classes with repeated isolated-edge
//! components have factorially large automorphism groups that defeat the
//! canonicity test's twin pruning; stripping them off and reattaching j*K2
//! combinatorially keeps every canonicity call tractable and is a bijection
//! (strip isolated edges <-> append them).

use crate::canon::is_colex_max_canonical;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Full per-vertex-count enumeration cap: 274,668 classes at n = 9.
pub const MAX_ENUM_VERTICES: usize = 9;
/// Per-edge-count enumeration cap.
pub const MAX_ENUM_EDGES: usize = 12;

/// Colex position table: position -> (a, b) with a < b.
fn pair_table(v: usize) -> Vec<(usize, usize)> {
    let mut t = Vec::with_capacity(v * v.saturating_sub(1) / 2);
    for b in 1..v {
        for a in 0..b {
            t.push((a, b));
        }
    }
    t
}

/// Every isomorphism class on exactly `n` labeled slots (isolated vertices
/// included), one canonical representative each, all edge counts.
pub fn enumerate_by_vertices(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUM_VERTICES {
        return Err(Error::range(
            "enumeration vertex count",
            format!("n={n} exceeds {MAX_ENUM_VERTICES}"),
        ));
    }
    let pairs = pair_table(n);
    let mut rows = [0u64; 64];
    let mut out = Vec::new();
    fn rec(
        rows: &mut [u64; 64],
        n: usize,
        pairs: &[(usize, usize)],
        start: usize,
        out: &mut Vec<Graph>,
    ) {
        out.push(Graph::from_rows(n, rows));
        for p in start..pairs.len() {
            let (a, b) = pairs[p];
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
            if is_colex_max_canonical(rows, n) {
                rec(rows, n, pairs, p + 1, out);
            }
            rows[a] &= !(1u64 << b);
            rows[b] &= !(1u64 << a);
        }
    }
    rec(&mut rows, n, &pairs, 0, &mut out);
    Ok(out)
}

struct CoreDfs {
    v: usize,
    k: usize,
    pairs: Vec<(usize, usize)>,
    rows: [u64; 64],
    deg: [u8; 64],
    iso_v: usize,
    iso_e: usize,
    out: Vec<Graph>,
}

impl CoreDfs {
    fn add_edge(&mut self, a: usize, b: usize) {
        for x in [a, b] {
            match self.deg[x] {
                0 => self.iso_v -= 1,
                1 => {
                    let c = self.rows[x].trailing_zeros() as usize;
                    if self.deg[c] == 1 {
                        self.iso_e -= 1;
                    }
                }
                _ => {}
            }
        }
        if self.deg[a] == 0 && self.deg[b] == 0 {
            self.iso_e += 1;
        }
        self.deg[a] += 1;
        self.deg[b] += 1;
        self.rows[a] |= 1 << b;
        self.rows[b] |= 1 << a;
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.rows[a] &= !(1u64 << b);
        self.rows[b] &= !(1u64 << a);
        self.deg[a] -= 1;
        self.deg[b] -= 1;
        if self.deg[a] == 0 && self.deg[b] == 0 {
            self.iso_e -= 1;
        }
        for x in [a, b] {
            match self.deg[x] {
                0 => self.iso_v += 1,
                1 => {
                    let c = self.rows[x].trailing_zeros() as usize;
                    if self.deg[c] == 1 {
                        self.iso_e += 1;
                    }
                }
                _ => {}
            }
        }
    }

    #[cfg(debug_assertions)]
    fn check_counters(&self) {
        let g = Graph::from_rows(self.v, &self.rows);
        assert_eq!(self.iso_v, g.isolated_vertices().len());
        assert_eq!(self.iso_e, g.isolated_edges().len());
    }

    fn run(&mut self, start: usize, e: usize) {
        if e == self.k {
            // The deficiency prune guarantees iso_v == iso_e == 0 here.
            debug_assert!(self.iso_v == 0 && self.iso_e == 0);
            self.out.push(Graph::from_rows(self.v, &self.rows));
            return;
        }
        let need = self.k - e;
        let npos = self.pairs.len();
        for p in start..npos {
            if npos - p < need {
                break;
            }
            let (a, b) = self.pairs[p];
            self.add_edge(a, b);
            #[cfg(debug_assertions)]
            self.check_counters();
            // Each future edge repairs at most two deficiencies (an isolated
            // vertex or an isolated edge consumes one endpoint each).
            if self.iso_v + self.iso_e <= 2 * (need - 1)
                && is_colex_max_canonical(&self.rows, self.v)
            {
                self.run(p + 1, e + 1);
            }
            self.remove_edge(a, b);
        }
    }
}

/// Isomorphism classes with exactly `k` edges on exactly `v` vertices and no
/// isolated vertices or isolated edges.
pub fn enumerate_cores(k: usize, v: usize) -> Result<Vec<Graph>> {
    if k > MAX_ENUM_EDGES {
        return Err(Error::range(
            "enumeration edge count",
            format!("k={k} exceeds {MAX_ENUM_EDGES}"),
        ));
    }
    if k == 0 {
        return Ok(if v == 0 {
            vec![Graph::empty(0).unwrap()]
        } else {
            vec![]
        });
    }
    // No isolated edges => every component covers >= 3 vertices with >= 2
    // edges, so v <= 3k/2; and C(v,2) must fit k edges.
    if v < 3 || v > 3 * k / 2 || v * (v - 1) / 2 < k {
        return Ok(vec![]);
    }
    let mut dfs = CoreDfs {
        v,
        k,
        pairs: pair_table(v),
        rows: [0; 64],
        deg: [0; 64],
        iso_v: v,
        iso_e: 0,
        out: Vec::new(),
    };
    dfs.run(0, 0);
    Ok(dfs.out)
}

/// Isomorphism classes with exactly `k` edges and no isolated vertices, on
/// any vertex count up to min(2k, max_n): cores plus j disjoint extra edges.
pub fn enumerate_by_edges(k: usize, max_n: usize) -> Result<Vec<Graph>> {
    if k > MAX_ENUM_EDGES {
        return Err(Error::range(
            "enumeration edge count",
            format!("k={k} exceeds {MAX_ENUM_EDGES}"),
        ));
    }
    let mut out = Vec::new();
    for v in 0..=(2 * k).min(max_n) {
        for j in 0..=k.min(v / 2) {
            let (kc, vc) = (k - j, v - 2 * j);
            for core in enumerate_cores(kc, vc)? {
                out.push(core.add_isolated_edges(j)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use std::collections::HashSet;

    /// Unlabeled graph counts by vertex count.
    const GRAPHS_BY_N: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];
    /// Unlabeled graph counts by edge count (no isolated vertices).
    const GRAPHS_BY_E: [usize; 10] = [1, 1, 2, 5, 11, 26, 68, 177, 497, 1476];

    #[test]
    fn counts_by_vertices_small() {
        for (n, &want) in GRAPHS_BY_N.iter().enumerate().take(8) {
            assert_eq!(enumerate_by_vertices(n).unwrap().len(), want, "n={n}");
        }
        assert!(enumerate_by_vertices(10).is_err());
    }

    #[test]
    fn counts_by_vertices_n8() {
        assert_eq!(enumerate_by_vertices(8).unwrap().len(), GRAPHS_BY_N[8]);
    }

    #[test]
    fn counts_by_vertices_n9() {
        assert_eq!(enumerate_by_vertices(9).unwrap().len(), 274_668);
    }

    #[test]
    fn by_vertices_is_complete_and_duplicate_free() {
        // Compare against a third, brute-force machine: canonical_form dedup
        // over all labeled graphs.
        for n in 0..=5usize {
            let npairs = n * n.saturating_sub(1) / 2;
            let mut brute = HashSet::new();
            for bits in 0u32..(1 << npairs) {
                let mut edges = Vec::new();
                let mut t = 0;
                for v in 1..n {
                    for u in 0..v {
                        if (bits >> t) & 1 == 1 {
                            edges.push((u, v));
                        }
                        t += 1;
                    }
                }
                brute.insert(canonical_form(&Graph::from_edges(n, &edges).unwrap()).unwrap());
            }
            let mine: HashSet<_> = enumerate_by_vertices(n)
                .unwrap()
                .iter()
                .map(|g| canonical_form(g).unwrap())
                .collect();
            assert_eq!(mine.len(), enumerate_by_vertices(n).unwrap().len());
            assert_eq!(mine, brute, "n={n}");
        }
    }

    #[test]
    fn counts_by_edges_small() {
        for (k, &want) in GRAPHS_BY_E.iter().enumerate().take(8) {
            assert_eq!(enumerate_by_edges(k, 2 * k).unwrap().len(), want, "k={k}");
        }
    }

    #[test]
    fn counts_by_edges_medium() {
        assert_eq!(enumerate_by_edges(8, 16).unwrap().len(), GRAPHS_BY_E[8]);
        assert_eq!(enumerate_by_edges(9, 18).unwrap().len(), GRAPHS_BY_E[9]);
        assert!(enumerate_by_edges(13, 26).is_err());
    }

    #[test]
    fn by_edges_respects_max_n() {
        // k=2: classes P4? no — exactly 2 edges, no isolated vertices:
        // {P3 (3 vertices), 2K2 (4 vertices)}. max_n=3 keeps only P3.
        let all = enumerate_by_edges(2, 4).unwrap();
        assert_eq!(all.len(), 2);
        let trunc = enumerate_by_edges(2, 3).unwrap();
        assert_eq!(trunc.len(), 1);
        assert_eq!(trunc[0].n(), 3);
    }

    #[test]
    fn yielded_graphs_are_well_formed() {
        for k in 0..=5 {
            let mut seen = HashSet::new();
            for g in enumerate_by_edges(k, 2 * k).unwrap() {
                assert_eq!(g.edge_count(), k);
                assert!(g.isolated_vertices().is_empty(), "{g:?}");
                assert!(seen.insert(canonical_form(&g).unwrap()), "dup {g:?}");
            }
        }
        for g in enumerate_cores(4, 5).unwrap() {
            assert!(g.isolated_edges().is_empty());
            assert!(g.isolated_vertices().is_empty());
            assert_eq!(g.edge_count(), 4);
            assert_eq!(g.n(), 5);
        }
    }

    #[test]
    fn core_counts_match_edge_count_differences() {
        // Summing cores over vertex counts: |cores(k)| = byE(k) - byE(k-1),
        // since every k-edge no-isolated class is uniquely core + j*K2.
        for k in 1..=7usize {
            let total: usize = (0..=3 * k / 2)
                .map(|v| enumerate_cores(k, v).unwrap().len())
                .sum();
            assert_eq!(total, GRAPHS_BY_E[k] - GRAPHS_BY_E[k - 1], "k={k}");
        }
    }

    #[test]
    fn by_edges_cross_checked_against_by_vertices() {
        // Independent path: filter the full per-vertex-count catalogs.
        for k in 0..=4usize {
            for v in 0..=(2 * k).min(8) {
                let expect = enumerate_by_vertices(v.min(8))
                    .unwrap()
                    .iter()
                    .filter(|g| g.edge_count() == k && g.isolated_vertices().is_empty())
                    .count();
                let got = enumerate_by_edges(k, 2 * k)
                    .unwrap()
                    .iter()
                    .filter(|g| g.n() == v)
                    .count();
                assert_eq!(got, expect, "k={k} v={v}");
            }
        }
    }
}
