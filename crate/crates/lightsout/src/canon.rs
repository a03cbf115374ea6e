//! Canonical forms under graph isomorphism.
//!
//! Two conventions live here, on purpose:
//!
//! - [`canonical_form`] (public, n <= 12): the lexicographic MINIMUM of the
//!   row-major upper-triangle encoding over all vertex relabelings. This is
//!   the stable dedup key / equality test.
//! - [`is_colex_max_canonical`] (crate-internal): decides whether a labeled
//!   graph is the lexicographic MAXIMUM of the *column-order* (colex, i.e.
//!   graph6 bit order) encoding. Max-colex canonical graphs are closed under
//!   removing the last colex edge, which is exactly the augmentation-chain
//!   property the orderly enumerator in [`crate::enumerate`] relies on; the
//!   row-major minimum does not have that property.
//!
//! Both searches prune equivalent branches by skipping "twin" candidates:
//! u, v are twins when swapping them is an automorphism, i.e. their
//! closed/open neighborhoods away from {u, v} agree.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Row-major-min canonical encoding. Two graphs on the same vertex count are
/// isomorphic iff their `CanonicalForm`s are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    pub n: usize,
    /// Bits (i, j), i < j, in row-major order; the first pair is the most
    /// significant bit. C(12, 2) = 66 bits at the size cap.
    pub bits: u128,
}

impl CanonicalForm {
    /// Rebuild the canonically labeled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n;
        let total = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut pos = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.bits >> (total - 1 - pos)) & 1 == 1 {
                    edges.push((i, j));
                }
                pos += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }
}

pub const CANONICAL_FORM_MAX_N: usize = 12;

/// For each v, the set of u < v whose transposition with v is an automorphism.
fn twin_masks(rows: &[u64], n: usize) -> [u64; 64] {
    let mut mask = [0u64; 64];
    for v in 0..n {
        let rv = rows[v] | 1 << v;
        for (u, &row_u) in rows.iter().enumerate().take(v) {
            let x = (row_u | 1 << u) ^ rv;
            if x == 0 || x == (1 << u) | (1 << v) {
                mask[v] |= 1 << u;
            }
        }
    }
    mask
}

/// Lex-min row-major canonical form plus one minimizing labeling
/// (slot i of the labeling holds the original vertex placed at position i).
pub fn canonical_form_with_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > CANONICAL_FORM_MAX_N {
        return Err(Error::range(
            "canonical_form vertex count",
            format!("n={n} exceeds {CANONICAL_FORM_MAX_N}"),
        ));
    }
    if n <= 1 {
        return Ok((CanonicalForm { n, bits: 0 }, (0..n).collect()));
    }
    let mut s = MinSearch {
        g,
        n,
        twin: twin_masks(g.rows(), n),
        slots: [0; CANONICAL_FORM_MAX_N],
        used: 0,
        best: u128::MAX,
        best_perm: vec![0; n],
    };
    s.rec(0);
    let form = CanonicalForm { n, bits: s.best };
    let perm = s.best_perm.clone();
    debug_assert_eq!(encode_row_major(g, &perm), form.bits);
    Ok((form, perm))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_labeling(g).map(|(f, _)| f)
}

/// Row-major upper-triangle encoding of g under the labeling `perm`.
pub(crate) fn encode_row_major(g: &Graph, perm: &[usize]) -> u128 {
    let n = g.n();
    let mut enc = 0u128;
    for i in 0..n {
        for j in (i + 1)..n {
            enc = (enc << 1) | g.has_edge(perm[i], perm[j]) as u128;
        }
    }
    enc
}

struct MinSearch<'a> {
    g: &'a Graph,
    n: usize,
    twin: [u64; 64],
    slots: [usize; CANONICAL_FORM_MAX_N],
    used: u64,
    best: u128,
    best_perm: Vec<usize>,
}

impl MinSearch<'_> {
    /// Lower bound over all completions of the current partial labeling:
    /// placed-to-placed bits are exact; each placed row's undecided tail is
    /// taken as zeros-then-ones (its remaining-neighbor count is fixed);
    /// unplaced rows are taken as all-zero. Per-row lexicographic lower
    /// bounds concatenate into a whole-encoding lower bound because all row
    /// lengths are fixed.
    fn lower_bound(&self, t: usize) -> u128 {
        let n = self.n;
        let mut enc = 0u128;
        for i in 0..t {
            let vi = self.slots[i];
            for j in (i + 1)..t {
                enc = (enc << 1) | self.g.has_edge(vi, self.slots[j]) as u128;
            }
            if t < n {
                let remaining = (self.g.neighbors(vi) & !self.used).count_ones() as usize;
                enc <<= (n - t) - remaining;
                enc = (enc << remaining) | ((1u128 << remaining) - 1);
            }
        }
        for i in t..n {
            enc <<= n - 1 - i;
        }
        enc
    }

    fn rec(&mut self, t: usize) {
        let lb = self.lower_bound(t);
        if t == self.n {
            if lb < self.best {
                self.best = lb;
                self.best_perm.copy_from_slice(&self.slots[..self.n]);
            }
            return;
        }
        if lb > self.best {
            return;
        }
        // Candidates: unused vertices, one representative per twin group,
        // cheapest-looking first so the first leaf is already near-minimal.
        let mut cands: Vec<(u64, usize, usize)> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            if (self.used >> v) & 1 == 1 || self.twin[v] & !self.used != 0 {
                continue;
            }
            let mut key = 0u64;
            for s in 0..t {
                key = (key << 1) | self.g.has_edge(v, self.slots[s]) as u64;
            }
            cands.push((key, self.g.degree(v), v));
        }
        cands.sort_unstable();
        for (_, _, v) in cands {
            self.slots[t] = v;
            self.used |= 1 << v;
            self.rec(t + 1);
            self.used &= !(1u64 << v);
        }
    }
}

/// Is this labeled graph the colex-max representative of its class?
///
/// The reference encoding (slot-by-slot keys of the identity labeling) is
/// compared against every relabeling, abandoning branches as soon as their
/// key prefix drops below the reference and succeeding early when one
/// exceeds it. Twin skipping keeps highly symmetric graphs tractable.
pub(crate) fn is_colex_max_canonical(rows: &[u64], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    // ref_keys[t]: bits (j, t) for j < t, j=0 most significant.
    let mut ref_keys = [0u64; 64];
    for t in 0..n {
        let low = rows[t] & ((1u64 << t) - 1);
        ref_keys[t] = if t == 0 {
            0
        } else {
            low.reverse_bits() >> (64 - t)
        };
    }
    let twin = twin_masks(rows, n);
    let mut keys = [0u64; 64];
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    bigger_exists(rows, n, &ref_keys, &twin, &mut keys, full, 0).is_none()
}

/// Depth-first search over labelings whose key prefix ties the reference.
/// Returns Some(()) as soon as a strictly larger prefix appears.
fn bigger_exists(
    rows: &[u64],
    n: usize,
    ref_keys: &[u64; 64],
    twin: &[u64; 64],
    keys: &mut [u64; 64],
    unused: u64,
    t: usize,
) -> Option<()> {
    if t == n {
        return None;
    }
    let rk = ref_keys[t];
    let mut m = unused;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if twin[v] & unused != 0 {
            continue;
        }
        if keys[v] > rk {
            return Some(());
        }
    }
    let mut m = unused;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if twin[v] & unused != 0 || keys[v] != rk {
            continue;
        }
        let rest = unused & !(1u64 << v);
        let mut w = rest;
        while w != 0 {
            let u = w.trailing_zeros() as usize;
            w &= w - 1;
            keys[u] = (keys[u] << 1) | ((rows[u] >> v) & 1);
        }
        let found = bigger_exists(rows, n, ref_keys, twin, keys, rest, t + 1);
        let mut w = rest;
        while w != 0 {
            let u = w.trailing_zeros() as usize;
            w &= w - 1;
            keys[u] >>= 1;
        }
        if found.is_some() {
            return found;
        }
    }
    None
}
