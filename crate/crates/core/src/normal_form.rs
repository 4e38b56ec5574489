//! The word problem for the torsion-free lattice: rewrite any word over the
//! two generator families into the unique (vertical word)(horizontal word)
//! normal form using the relation solvers, and count spheres in the
//! bidegree lattice to certify simple transitivity at desk scale.
//!
//! Rewriting terminates because a swap strictly decreases the number of
//! B-before-A inversions at constant length, and a free cancellation
//! strictly decreases the length without creating inversions; the measure
//! (inversions, length) is lexicographically decreasing.

use crate::error::{Error, Result};
use crate::vh_core::VHData;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenClass {
    A,
    B,
}

/// One generator letter: a class and an index into the conic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub class: GenClass,
    pub idx: usize,
}

pub type Word = Vec<Letter>;

/// Normal form: a freely reduced A-word followed by a freely reduced B-word,
/// stored as generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    pub a_part: Vec<usize>,
    pub b_part: Vec<usize>,
}

impl NormalForm {
    pub fn identity() -> NormalForm {
        NormalForm::default()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.a_part.len(), self.b_part.len())
    }

    pub fn to_word(&self) -> Word {
        let mut w = Vec::with_capacity(self.a_part.len() + self.b_part.len());
        w.extend(self.a_part.iter().map(|&i| Letter { class: GenClass::A, idx: i }));
        w.extend(self.b_part.iter().map(|&j| Letter { class: GenClass::B, idx: j }));
        w
    }
}

fn inv_letter(data: &VHData, l: Letter) -> Letter {
    match l.class {
        GenClass::A => Letter { class: GenClass::A, idx: data.inv_a(l.idx) },
        GenClass::B => Letter { class: GenClass::B, idx: data.inv_b(l.idx) },
    }
}

/// Push one letter onto a normal form, maintaining the invariant.
pub fn push_letter(data: &VHData, nf: &mut NormalForm, l: Letter) {
    match l.class {
        GenClass::B => {
            if nf.b_part.last() == Some(&data.inv_b(l.idx)) {
                nf.b_part.pop();
            } else {
                nf.b_part.push(l.idx);
            }
        }
        GenClass::A => {
            // move the A-letter left through the whole B-part:
            // b_lambda a_mu -> a_xi b_eta at each step
            let mut carry = l.idx;
            for slot in nf.b_part.iter_mut().rev() {
                let (xi, eta) = data.solve_backward(*slot, carry);
                *slot = eta;
                carry = xi;
            }
            if nf.a_part.last() == Some(&data.inv_a(carry)) {
                nf.a_part.pop();
            } else {
                nf.a_part.push(carry);
            }
        }
    }
}

/// Rewrite a word to its normal form.
pub fn rewrite(data: &VHData, word: &[Letter]) -> NormalForm {
    let mut nf = NormalForm::identity();
    for &l in word {
        push_letter(data, &mut nf, l);
    }
    nf
}

/// Reduction strategies for the confluence check: scan for the first
/// applicable rule position from the given side and apply exactly one
/// rewrite, until none applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

/// One-rule-at-a-time reduction; the result is returned as a normal form
/// (the fully reduced word always has the A-before-B shape).
pub fn reduce_with_strategy(data: &VHData, word: &[Letter], strategy: Strategy) -> NormalForm {
    let mut w: VecDeque<Letter> = word.iter().copied().collect();
    loop {
        let len = w.len();
        let mut applied = false;
        let positions: Vec<usize> = match strategy {
            Strategy::LeftmostFirst => (0..len.saturating_sub(1)).collect(),
            Strategy::RightmostFirst => (0..len.saturating_sub(1)).rev().collect(),
        };
        for p in positions {
            let (x, y) = (w[p], w[p + 1]);
            if x.class == y.class {
                let cancels = match x.class {
                    GenClass::A => data.inv_a(x.idx) == y.idx,
                    GenClass::B => data.inv_b(x.idx) == y.idx,
                };
                if cancels {
                    w.remove(p + 1);
                    w.remove(p);
                    applied = true;
                    break;
                }
            } else if x.class == GenClass::B && y.class == GenClass::A {
                let (xi, eta) = data.solve_backward(x.idx, y.idx);
                w[p] = Letter { class: GenClass::A, idx: xi };
                w[p + 1] = Letter { class: GenClass::B, idx: eta };
                applied = true;
                break;
            }
        }
        if !applied {
            break;
        }
    }
    let a_part: Vec<usize> = w
        .iter()
        .take_while(|l| l.class == GenClass::A)
        .map(|l| l.idx)
        .collect();
    let b_part: Vec<usize> = w.iter().skip(a_part.len()).map(|l| l.idx).collect();
    debug_assert!(w.iter().skip(a_part.len()).all(|l| l.class == GenClass::B));
    NormalForm { a_part, b_part }
}

/// Group multiplication of normal forms.
pub fn multiply(data: &VHData, x: &NormalForm, y: &NormalForm) -> NormalForm {
    let mut nf = x.clone();
    for l in y.to_word() {
        push_letter(data, &mut nf, l);
    }
    nf
}

/// Group inverse: rewrite the reversed inverse word.
pub fn invert(data: &VHData, x: &NormalForm) -> NormalForm {
    let word: Word = x
        .to_word()
        .into_iter()
        .rev()
        .map(|l| inv_letter(data, l))
        .collect();
    rewrite(data, &word)
}

/// Default sphere radius bound per field size.
pub fn default_sphere_bound(q: u64) -> usize {
    if q == 3 {
        6
    } else {
        4
    }
}

/// Number of distinct normal forms in each bidegree `(k, l)` with
/// `k + l <= max_total`, by breadth-first search with hashing.
pub fn sphere_table(data: &VHData, max_total: usize) -> HashMap<(usize, usize), u64> {
    let n = data.degree();
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut frontier = vec![NormalForm::identity()];
    seen.insert(NormalForm::identity());
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    counts.insert((0, 0), 1);
    for _ in 0..max_total {
        let mut next = Vec::new();
        for nf in &frontier {
            for class in [GenClass::A, GenClass::B] {
                for idx in 0..n {
                    let mut cand = nf.clone();
                    push_letter(data, &mut cand, Letter { class, idx });
                    let (k, l) = cand.bidegree();
                    if k + l > max_total || seen.contains(&cand) {
                        continue;
                    }
                    seen.insert(cand.clone());
                    *counts.entry((k, l)).or_insert(0) += 1;
                    next.push(cand);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    counts
}

/// Count of normal forms of bidegree exactly `(k, l)`.
pub fn sphere_count(data: &VHData, k: usize, l: usize, bound: usize) -> Result<u64> {
    if k + l > bound {
        return Err(Error::BoundExceeded { what: "k+l", got: k + l, bound });
    }
    let table = sphere_table(data, k + l);
    Ok(table.get(&(k, l)).copied().unwrap_or(0))
}

/// Vertex count of the product of (q+1)-regular trees at bidegree `(k, l)`.
pub fn expected_sphere(q: u64, k: usize, l: usize) -> u64 {
    let one_tree = |m: usize| -> u64 {
        if m == 0 {
            1
        } else {
            (q + 1) * q.pow((m - 1) as u32)
        }
    };
    one_tree(k) * one_tree(l)
}
