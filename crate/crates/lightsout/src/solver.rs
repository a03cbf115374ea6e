//! The toggle game: pressing a vertex flips the lamps on its closed
//! neighborhood. Everything reduces to GF(2) linear algebra on the
//! neighborhood matrix N(G) = A(G) + I.

use crate::gf2::neighborhood_matrix;
use crate::graph::{low_mask, Graph, VertexSet};

/// Every lamp configuration can be switched off iff N(G) is invertible.
/// The 0-vertex graph is vacuously solvable.
pub fn is_universally_solvable(g: &Graph) -> bool {
    neighborhood_matrix(g).is_invertible()
}

/// A press set turning off the given lit set, if one exists (free variables
/// zeroed, so the answer is deterministic). Pressing x toggles N x, so we
/// need N x = lit.
pub fn solve_configuration(g: &Graph, lit: VertexSet) -> Option<VertexSet> {
    debug_assert_eq!(lit.bits & !low_mask(g.n()), 0);
    neighborhood_matrix(g).solve(lit.bits).map(VertexSet::new)
}

/// An odd dominating set: a vertex set S such that every closed neighborhood
/// meets S an odd number of times, i.e. a solution of N x = 1. When N is
/// invertible this is the unique press set for the all-on configuration.
pub fn odd_dominating_set(g: &Graph) -> Option<VertexSet> {
    solve_configuration(g, VertexSet::new(low_mask(g.n())))
}

/// Does G have an odd dominating set of even cardinality?
///
/// Solutions of N x = 1 form a coset x0 + ker N, and |x + y| = |x| + |y|
/// (mod 2) over GF(2), so an even solution exists iff the canonical solution
/// is even or some kernel basis vector has odd weight.
pub fn has_even_odd_dominating_set(g: &Graph) -> bool {
    let m = neighborhood_matrix(g);
    let Some(x0) = m.solve(low_mask(g.n())) else {
        return false;
    };
    if x0.count_ones() & 1 == 0 {
        return true;
    }
    m.kernel_basis().iter().any(|v| v.count_ones() & 1 == 1)
}

/// Universal solvability of the join of two graphs, decided from the parts:
/// the join is solvable iff both parts are solvable and at least one has an
/// even odd dominating set. Works for any part sizes (the join itself need
/// not be materializable within the 64-vertex cap).
pub fn join_solvable(g1: &Graph, g2: &Graph) -> bool {
    is_universally_solvable(g1)
        && is_universally_solvable(g2)
        && (has_even_odd_dominating_set(g1) || has_even_odd_dominating_set(g2))
}

/// Simulate pressing every vertex of `presses` on configuration `lit`.
pub fn apply_presses(g: &Graph, lit: VertexSet, presses: VertexSet) -> VertexSet {
    let mut state = lit.bits;
    for v in presses.iter() {
        if v >= g.n() {
            break;
        }
        state ^= g.neighbors(v) | (1 << v);
    }
    VertexSet::new(state)
}
