//! Numeric surface invariants of the quotient complex: Euler characteristic
//! both from the closed formula and from the actual cells, Chern numbers,
//! the Noether consistency identity `12 chi = c1^2 + c2`, and the
//! fake-quadric test `chi = 1, c1^2 = 8, c2 = 4`.

use crate::error::{Error, Result};
use crate::square_complex::{counts, OneVertexComplex};
use num_rational::Rational64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub n_vertices: i64,
    pub chi: Rational64,
    pub c1_sq: i64,
    pub c2: i64,
    pub fake_quadric: bool,
}

/// Invariants from the counting formulas alone, for `n` vertices over `F_q`.
pub fn invariants_from_counts(n: i64, q: u64) -> SurfaceInvariants {
    let q = q as i64;
    let chi = Rational64::new(n * (q - 1) * (q - 1), 4);
    let c1_sq = 2 * n * (q - 1) * (q - 1);
    let c2 = 12 * chi.to_integer() - c1_sq;
    SurfaceInvariants {
        n_vertices: n,
        chi,
        c1_sq,
        c2,
        fake_quadric: chi == Rational64::from_integer(1) && c1_sq == 8 && c2 == 4,
    }
}

/// Invariants of a built quotient complex; the cell count and the closed
/// formula must agree.
pub fn surface_invariants(cx: &OneVertexComplex, q: u64) -> Result<SurfaceInvariants> {
    let (v, e, s) = counts(cx);
    let from_cells = Rational64::from_integer(v as i64 - e as i64 + s as i64);
    let inv = invariants_from_counts(v as i64, q);
    if inv.chi != from_cells {
        return Err(Error::CountMismatch(format!(
            "formula gives chi = {}, cells give {}",
            inv.chi, from_cells
        )));
    }
    // Noether: 12 chi = c1^2 + c2 exactly
    debug_assert_eq!(
        Rational64::from_integer(inv.c1_sq + inv.c2),
        inv.chi * Rational64::from_integer(12)
    );
    Ok(inv)
}
