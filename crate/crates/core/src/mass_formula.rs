//! Counting one-vertex square complexes with VH-structure of partition size
//! `(2m, 2n)`, two independent ways: coefficient extraction from the
//! generating polynomial of all squares, evaluated in the nilpotent algebra
//! where every corner variable squares to zero, and a backtracking exact
//! cover over link corners.  The automorphism-weighted mass divides the
//! labeled count by `2^m m! 2^n n!`.
//!
//! Hand oracle for the base case (1,1), symbols `A = {a, a^-1}`,
//! `B = {b, b^-1}`: the candidate relations are `ab = ba`, `ab = b^-1 a`,
//! `ab = b a^-1` and `ab = b^-1 a^-1`.  The first three produce squares
//! whose four corners are pairwise distinct and cover all of `A x B`, so
//! each alone is a complete complex; the last one produces the degenerate
//! square `(a, b, a, b)` with repeated corners.  Hence the count is 3.

use crate::error::{Error, Result};
use num_rational::Ratio;
use std::collections::HashMap;

pub const DEFAULT_MASS_BOUND: usize = 6;

/// Symbol sets with fixed-point-free involutions; symbol `2k` pairs with
/// `2k + 1`.
#[derive(Debug, Clone)]
pub struct MassProblem {
    pub m: usize,
    pub n: usize,
    inv_a: Vec<usize>,
    inv_b: Vec<usize>,
}

/// A canonical nondegenerate square together with its 4-corner bitmask.
#[derive(Debug, Clone)]
struct SquareCover {
    mask: u64,
}

impl MassProblem {
    pub fn new(m: usize, n: usize) -> Result<MassProblem> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("m and n must be positive".into()));
        }
        let inv = |k: usize| (0..2 * k).map(|i| i ^ 1).collect();
        Ok(MassProblem { m, n, inv_a: inv(m), inv_b: inv(n) })
    }

    /// Custom involutions; rejected unless they are fixed-point-free.
    pub fn with_involutions(m: usize, n: usize, inv_a: Vec<usize>, inv_b: Vec<usize>) -> Result<MassProblem> {
        let fpf = |inv: &[usize], len: usize| {
            inv.len() == len
                && inv
                    .iter()
                    .enumerate()
                    .all(|(i, &j)| j < len && j != i && inv[j] == i)
        };
        if !fpf(&inv_a, 2 * m) || !fpf(&inv_b, 2 * n) {
            return Err(Error::InvalidParameter(
                "involutions must be fixed-point-free".into(),
            ));
        }
        Ok(MassProblem { m, n, inv_a, inv_b })
    }

    fn check_bound(&self, bound: usize) -> Result<()> {
        if self.m * self.n > bound {
            return Err(Error::BoundExceeded {
                what: "m*n",
                got: self.m * self.n,
                bound,
            });
        }
        Ok(())
    }

    fn corner_bit(&self, a: usize, b: usize) -> u64 {
        1u64 << (a * 2 * self.n + b)
    }

    /// All canonical nondegenerate squares as corner masks.
    fn squares(&self) -> Vec<SquareCover> {
        let na = 2 * self.m;
        let nb = 2 * self.n;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for v in 0..na {
            for h in 0..nb {
                for v2 in 0..na {
                    for h2 in 0..nb {
                        if v2 == v && h2 == h {
                            continue; // degenerate: repeated corners
                        }
                        let canon = self.canonical(v, h, v2, h2);
                        if !seen.insert(canon) {
                            continue;
                        }
                        // corners of (v, h, v2, h2):
                        // (v, inv h2), (inv v, h), (v2, inv h), (inv v2, h2)
                        let mask = self.corner_bit(v, self.inv_b[h2])
                            | self.corner_bit(self.inv_a[v], h)
                            | self.corner_bit(v2, self.inv_b[h])
                            | self.corner_bit(self.inv_a[v2], h2);
                        debug_assert_eq!(mask.count_ones(), 4);
                        out.push(SquareCover { mask });
                    }
                }
            }
        }
        out
    }

    /// Least of the four vertical-starting dihedral images.
    fn canonical(&self, v: usize, h: usize, v2: usize, h2: usize) -> (usize, usize, usize, usize) {
        let (ia, ib) = (&self.inv_a, &self.inv_b);
        let images = [
            (v, h, v2, h2),
            (v2, h2, v, h),
            (ia[v2], ib[h], ia[v], ib[h2]),
            (ia[v], ib[h2], ia[v2], ib[h]),
        ];
        *images.iter().min().unwrap()
    }
}

/// Labeled count by coefficient extraction: expand the sum over squares to
/// the `mn`-th power in the algebra with square-zero corner variables and
/// read off the coefficient of the full corner monomial, divided by `(mn)!`.
pub fn mass_labeled_formula(m: usize, n: usize, bound: usize) -> Result<u128> {
    let prob = MassProblem::new(m, n)?;
    prob.check_bound(bound)?;
    let squares = prob.squares();
    let steps = m * n;
    let full: u64 = if 4 * steps == 64 { u64::MAX } else { (1u64 << (4 * steps)) - 1 };
    let mut level: HashMap<u64, u128> = HashMap::new();
    level.insert(0, 1);
    for _ in 0..steps {
        let mut next: HashMap<u64, u128> = HashMap::new();
        for (&mask, &cnt) in &level {
            for sq in &squares {
                if mask & sq.mask == 0 {
                    *next.entry(mask | sq.mask).or_insert(0) += cnt;
                }
            }
        }
        level = next;
    }
    let coeff = level.get(&full).copied().unwrap_or(0);
    let fact: u128 = (1..=steps as u128).product();
    debug_assert_eq!(coeff % fact, 0);
    Ok(coeff / fact)
}

/// Labeled count by backtracking exact cover: repeatedly take the least
/// uncovered corner and branch over the squares covering it that avoid all
/// covered corners.
pub fn mass_enumerate(m: usize, n: usize, bound: usize) -> Result<u128> {
    let prob = MassProblem::new(m, n)?;
    prob.check_bound(bound)?;
    mass_enumerate_with(&prob)
}

fn mass_enumerate_with(prob: &MassProblem) -> Result<u128> {
    let squares = prob.squares();
    let cells = 4 * prob.m * prob.n;
    let mut by_corner: Vec<Vec<u64>> = vec![Vec::new(); cells];
    for sq in &squares {
        let mut bits = sq.mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            by_corner[b].push(sq.mask);
            bits &= bits - 1;
        }
    }
    let full: u64 = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
    fn go(covered: u64, full: u64, by_corner: &[Vec<u64>]) -> u128 {
        if covered == full {
            return 1;
        }
        let least = (!covered & full).trailing_zeros() as usize;
        let mut total = 0;
        for &mask in &by_corner[least] {
            if covered & mask == 0 {
                total += go(covered | mask, full, by_corner);
            }
        }
        total
    }
    Ok(go(0, full, &by_corner))
}

/// Exact cover count for a problem with custom involutions.
pub fn mass_enumerate_custom(prob: &MassProblem, bound: usize) -> Result<u128> {
    prob.check_bound(bound)?;
    mass_enumerate_with(prob)
}

/// The automorphism-weighted mass `labeled / (2^m m! 2^n n!)`.
pub fn mass_weighted(m: usize, n: usize, bound: usize) -> Result<Ratio<u128>> {
    let labeled = mass_labeled_formula(m, n, bound)?;
    let fact = |k: usize| -> u128 { (1..=k as u128).product() };
    let denom = (1u128 << (m + n)) * fact(m) * fact(n);
    Ok(Ratio::new(labeled, denom))
}

/// Does a set of squares (as corner masks over this problem's symbols) form
/// an exact cover?  Used to certify that externally built complexes occur
/// among the enumerated ones.
pub fn is_exact_cover(prob: &MassProblem, masks: &[u64]) -> bool {
    let cells = 4 * prob.m * prob.n;
    let full: u64 = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
    let mut covered = 0u64;
    for &m in masks {
        if covered & m != 0 {
            return false;
        }
        covered |= m;
    }
    covered == full
}

/// Corner mask of the square `(v, h, v2, h2)` over this problem's symbols.
pub fn square_mask(prob: &MassProblem, v: usize, h: usize, v2: usize, h2: usize) -> u64 {
    prob.corner_bit(v, prob.inv_b[h2])
        | prob.corner_bit(prob.inv_a[v], h)
        | prob.corner_bit(v2, prob.inv_b[h])
        | prob.corner_bit(prob.inv_a[v2], h2)
}
