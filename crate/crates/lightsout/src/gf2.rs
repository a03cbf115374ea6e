//! Dense GF(2) linear algebra on bit-packed rows (dimension <= 64).
//!
//! Elimination pivots each row on its first (lowest) remaining set bit, which
//! makes pivot selection — and therefore the canonical solution returned by
//! [`Gf2Matrix::solve`] — deterministic.

use crate::error::{Error, Result};
use crate::graph::{low_mask, Graph};

#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    dim: usize,
    rows: Vec<u64>,
}

/// Closed-neighborhood matrix N(G) = A(G) + I over GF(2). Universal
/// solvability of the toggle game on G is exactly invertibility of N(G).
pub fn neighborhood_matrix(g: &Graph) -> Gf2Matrix {
    let rows = (0..g.n()).map(|v| g.neighbors(v) | (1 << v)).collect();
    Gf2Matrix { dim: g.n(), rows }
}

/// Result of one elimination pass; pivot rows are indexed by pivot column.
struct Elimination {
    pivot_rows: [u64; 64],
    /// Bit c holds the reduced right-hand side of the pivot row for column c.
    pivot_rhs: u64,
    pivot_mask: u64,
    rank: usize,
    consistent: bool,
}

impl Gf2Matrix {
    pub fn from_rows(dim: usize, rows: Vec<u64>) -> Result<Gf2Matrix> {
        if dim > 64 {
            return Err(Error::Dimension(format!("dimension {dim} exceeds 64")));
        }
        if rows.len() != dim {
            return Err(Error::Dimension(format!(
                "{} rows for dimension {dim}",
                rows.len()
            )));
        }
        if rows.iter().any(|&r| r & !low_mask(dim) != 0) {
            return Err(Error::Dimension(format!(
                "row has bits set beyond column {dim}"
            )));
        }
        Ok(Gf2Matrix { dim, rows })
    }

    pub fn identity(dim: usize) -> Gf2Matrix {
        Gf2Matrix {
            dim,
            rows: (0..dim).map(|i| 1 << i).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn mul_vec(&self, x: u64) -> u64 {
        let mut out = 0;
        for (i, &row) in self.rows.iter().enumerate() {
            out |= (((row & x).count_ones() & 1) as u64) << i;
        }
        out
    }

    /// Reduce all rows against an accumulating pivot table. `rhs` carries one
    /// right-hand-side bit per row (bit i for row i).
    fn eliminate(&self, rhs: u64) -> Elimination {
        let mut e = Elimination {
            pivot_rows: [0; 64],
            pivot_rhs: 0,
            pivot_mask: 0,
            rank: 0,
            consistent: true,
        };
        for (i, &row) in self.rows.iter().enumerate() {
            let mut x = row;
            let mut b = (rhs >> i) & 1;
            loop {
                if x == 0 {
                    if b == 1 {
                        e.consistent = false;
                    }
                    break;
                }
                let c = x.trailing_zeros() as usize;
                if e.pivot_rows[c] == 0 {
                    e.pivot_rows[c] = x;
                    e.pivot_rhs |= b << c;
                    e.pivot_mask |= 1 << c;
                    e.rank += 1;
                    break;
                }
                x ^= e.pivot_rows[c];
                b ^= (e.pivot_rhs >> c) & 1;
            }
        }
        e
    }

    /// Back-substitute with the non-pivot ("free") coordinates preset in `x`.
    /// Pivot rows have their pivot as the lowest set bit, so descending-column
    /// order sees every other coordinate already decided.
    fn back_substitute(e: &Elimination, seed: u64, rhs_on: bool) -> u64 {
        let mut x = seed;
        let mut cols = e.pivot_mask;
        while cols != 0 {
            let c = 63 - cols.leading_zeros() as usize;
            cols &= !(1u64 << c);
            let mut bit = (e.pivot_rows[c] & x).count_ones() & 1;
            if rhs_on {
                bit ^= ((e.pivot_rhs >> c) & 1) as u32;
            }
            x |= ((bit & 1) as u64) << c;
        }
        x
    }

    pub fn rank(&self) -> usize {
        self.eliminate(0).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    /// One solution of M x = b with every free variable zeroed, or None if
    /// the system is inconsistent.
    pub fn solve(&self, b: u64) -> Option<u64> {
        debug_assert_eq!(b & !low_mask(self.dim), 0);
        let e = self.eliminate(b);
        if !e.consistent {
            return None;
        }
        Some(Self::back_substitute(&e, 0, true))
    }

    /// A basis of the kernel, one vector per free column.
    pub(crate) fn kernel_basis(&self) -> Vec<u64> {
        let e = self.eliminate(0);
        let free = low_mask(self.dim) & !e.pivot_mask;
        let mut basis = Vec::with_capacity(free.count_ones() as usize);
        let mut f = free;
        while f != 0 {
            let c = f.trailing_zeros() as usize;
            f &= f - 1;
            basis.push(Self::back_substitute(&e, 1 << c, false));
        }
        basis
    }
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix(dim={})", self.dim)?;
        for &row in &self.rows {
            for c in 0..self.dim {
                write!(f, "{}", (row >> c) & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
