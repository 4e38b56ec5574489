//! One-vertex square complexes with a vertical/horizontal edge typing:
//! assembly from relation data with 4-to-1 deduplication of equivalent
//! squares, links and the complete-bipartite test, cell counts, and a
//! bit-exact JSON serialization.
//!
//! A square is a 4-tuple of oriented edges, alternating V/H, considered up
//! to the dihedral action generated by rotation and the reversal
//! `(e1,e2,e3,e4) -> (e4^-1, e3^-1, e2^-1, e1^-1)`.  The stored canonical
//! representative is the lexicographically least tuple of the orbit in the
//! global edge order (vertical edges first, then horizontal, each in conic
//! order).

use crate::error::{Error, Result};
use crate::vh_core::VHData;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    V,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub inv: usize,
    pub class: EdgeClass,
}

/// Construction parameters recorded with a complex; zero when the complex
/// does not come from a conic construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexMeta {
    pub q: u64,
    pub tau: u64,
    pub c: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVertexComplex {
    pub meta: ComplexMeta,
    pub edges: Vec<Edge>,
    /// Canonical squares, sorted.
    pub squares: Vec<[usize; 4]>,
}

/// The link at the unique vertex: corner multiplicities on
/// (vertical oriented edge, horizontal oriented edge) pairs.
#[derive(Debug, Clone)]
pub struct Link {
    pub multiplicities: BTreeMap<(usize, usize), usize>,
    pub n_v: usize,
    pub n_h: usize,
}

fn canonical_square(inv: &[usize], sq: [usize; 4]) -> [usize; 4] {
    let rot = |s: [usize; 4]| [s[1], s[2], s[3], s[0]];
    let rev = |s: [usize; 4]| [inv[s[3]], inv[s[2]], inv[s[1]], inv[s[0]]];
    let mut best = sq;
    let mut cur = sq;
    for _ in 0..4 {
        cur = rot(cur);
        if cur < best {
            best = cur;
        }
    }
    let mut cur = rev(sq);
    for _ in 0..4 {
        if cur < best {
            best = cur;
        }
        cur = rot(cur);
    }
    best
}

impl OneVertexComplex {
    /// Assemble from raw relation squares.  In strict mode every canonical
    /// square must be produced exactly four times (once per equivalent
    /// relation form); a different multiplicity signals broken VH data.
    pub fn assemble(
        meta: ComplexMeta,
        edges: Vec<Edge>,
        raw_squares: Vec<[usize; 4]>,
        strict: bool,
    ) -> Result<OneVertexComplex> {
        let inv: Vec<usize> = edges.iter().map(|e| e.inv).collect();
        for (i, e) in edges.iter().enumerate() {
            if e.inv == i || edges[e.inv].inv != i {
                return Err(Error::InvolutionBroken(format!("edge {}", e.id)));
            }
            if edges[e.inv].class != e.class {
                return Err(Error::InvolutionBroken(format!(
                    "edge {} and its reverse differ in class",
                    e.id
                )));
            }
        }
        let mut counts: BTreeMap<[usize; 4], usize> = BTreeMap::new();
        for sq in raw_squares {
            for &e in &sq {
                if e >= edges.len() {
                    return Err(Error::SchemaViolation(format!("edge index {e} out of range")));
                }
            }
            *counts.entry(canonical_square(&inv, sq)).or_insert(0) += 1;
        }
        if strict {
            for (sq, n) in &counts {
                if *n != 4 {
                    return Err(Error::DedupMismatch(format!(
                        "square {:?} produced {} times, expected 4",
                        sq, n
                    )));
                }
            }
        }
        let squares: Vec<[usize; 4]> = counts.into_keys().collect();
        Ok(OneVertexComplex { meta, edges, squares })
    }

    pub fn n_vertices(&self) -> usize {
        1
    }

    pub fn n_unoriented_edges(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn n_squares(&self) -> usize {
        self.squares.len()
    }
}

/// Build the one-vertex complex of a VH structure: oriented vertical edges
/// are the A generators, horizontal the B generators, and there is one
/// square per class of solved relation `a_xi b_eta = b_lambda a_mu`.
pub fn build_sab(data: &VHData) -> Result<OneVertexComplex> {
    let n = data.degree();
    let ext = data.ext();
    let cfg = data.cfg();
    let mut edges = Vec::with_capacity(2 * n);
    for (i, xi) in data.a_set().iter().enumerate() {
        let (e0, e1) = ext.encode_pair(xi);
        edges.push(Edge {
            id: format!("a:({e0},{e1})"),
            inv: data.inv_a(i),
            class: EdgeClass::V,
        });
    }
    for (j, eta) in data.b_set().iter().enumerate() {
        let (e0, e1) = ext.encode_pair(eta);
        edges.push(Edge {
            id: format!("b:({e0},{e1})"),
            inv: n + data.inv_b(j),
            class: EdgeClass::H,
        });
    }
    let mut raw = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (l, m) = data.solve_forward(i, j);
            // relation a_i b_j = b_l a_m gives the square
            // (a_i, b_j, a_m^-1, b_l^-1)
            raw.push([i, n + j, data.inv_a(m), n + data.inv_b(l)]);
        }
    }
    let meta = ComplexMeta {
        q: cfg.q(),
        tau: cfg.field().to_int(cfg.tau()),
        c: cfg.field().to_int(cfg.c()),
    };
    OneVertexComplex::assemble(meta, edges, raw, true)
}

/// Corner pairs of a square: `(e_i, e_{i-1}^-1)` for i mod 4, normalized to
/// (vertical, horizontal).
fn corners(cx: &OneVertexComplex, sq: &[usize; 4]) -> [(usize, usize); 4] {
    let inv = |e: usize| cx.edges[e].inv;
    let mut out = [(0, 0); 4];
    for i in 0..4 {
        let e = sq[i];
        let f = inv(sq[(i + 3) % 4]);
        out[i] = match cx.edges[e].class {
            EdgeClass::V => (e, f),
            EdgeClass::H => (f, e),
        };
    }
    out
}

pub fn link_of(cx: &OneVertexComplex) -> Link {
    let mut multiplicities = BTreeMap::new();
    for sq in &cx.squares {
        for corner in corners(cx, sq) {
            *multiplicities.entry(corner).or_insert(0) += 1;
        }
    }
    let n_v = cx.edges.iter().filter(|e| e.class == EdgeClass::V).count();
    let n_h = cx.edges.len() - n_v;
    Link { multiplicities, n_v, n_h }
}

/// Complete bipartite: every (vertical, horizontal) oriented pair appears
/// as exactly one corner.
pub fn is_complete_bipartite(link: &Link) -> bool {
    link.multiplicities.len() == link.n_v * link.n_h
        && link.multiplicities.values().all(|&m| m == 1)
}

pub fn has_double_edge(link: &Link) -> bool {
    link.multiplicities.values().any(|&m| m >= 2)
}

/// `(V, unoriented E, S)`.
pub fn counts(cx: &OneVertexComplex) -> (usize, usize, usize) {
    (1, cx.n_unoriented_edges(), cx.n_squares())
}

pub fn euler_char(cx: &OneVertexComplex) -> num_rational::Rational64 {
    let (v, e, s) = counts(cx);
    num_rational::Rational64::from_integer(v as i64 - e as i64 + s as i64)
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    inv: String,
    class: EdgeClass,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComplexDoc {
    q: u64,
    tau: u64,
    c: u64,
    vertices: usize,
    edges: Vec<EdgeDoc>,
    squares: Vec<[String; 4]>,
}

pub fn export_json(cx: &OneVertexComplex) -> String {
    let doc = ComplexDoc {
        q: cx.meta.q,
        tau: cx.meta.tau,
        c: cx.meta.c,
        vertices: 1,
        edges: cx
            .edges
            .iter()
            .map(|e| EdgeDoc {
                id: e.id.clone(),
                inv: cx.edges[e.inv].id.clone(),
                class: e.class,
            })
            .collect(),
        squares: cx
            .squares
            .iter()
            .map(|sq| {
                let ids: Vec<String> = sq.iter().map(|&e| cx.edges[e].id.clone()).collect();
                [ids[0].clone(), ids[1].clone(), ids[2].clone(), ids[3].clone()]
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn import_json(text: &str) -> Result<OneVertexComplex> {
    let doc: ComplexDoc = serde_json::from_str(text)
        .map_err(|e| Error::SchemaViolation(e.to_string()))?;
    if doc.vertices != 1 {
        return Err(Error::SchemaViolation("vertices must be 1".into()));
    }
    let index: BTreeMap<&str, usize> = doc
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    if index.len() != doc.edges.len() {
        return Err(Error::SchemaViolation("duplicate edge id".into()));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let inv = *index
            .get(e.inv.as_str())
            .ok_or_else(|| Error::InvolutionBroken(format!("unknown reverse {}", e.inv)))?;
        edges.push(Edge { id: e.id.clone(), inv, class: e.class });
    }
    let mut raw = Vec::with_capacity(doc.squares.len());
    for sq in &doc.squares {
        let mut tuple = [0usize; 4];
        for (k, id) in sq.iter().enumerate() {
            tuple[k] = *index
                .get(id.as_str())
                .ok_or_else(|| Error::SchemaViolation(format!("unknown edge {id}")))?;
        }
        // squares alternate V/H starting vertical
        for k in 0..4 {
            let want = if k % 2 == 0 { EdgeClass::V } else { EdgeClass::H };
            if edges[tuple[k]].class != want {
                return Err(Error::SchemaViolation(format!(
                    "square {:?} does not alternate V/H",
                    sq
                )));
            }
        }
        raw.push(tuple);
    }
    let meta = ComplexMeta { q: doc.q, tau: doc.tau, c: doc.c };
    // one raw instance per stored square: lenient multiplicity
    OneVertexComplex::assemble(meta, edges, raw, false)
}

/// Two-generator toy complex with the single commuting square
/// `(a, b, a^-1, b^-1)`; its link is complete bipartite on 2x2.
pub fn toy_commuting_complex() -> OneVertexComplex {
    let edges = vec![
        Edge { id: "a:(0,0)".into(), inv: 1, class: EdgeClass::V },
        Edge { id: "a:(0,1)".into(), inv: 0, class: EdgeClass::V },
        Edge { id: "b:(0,0)".into(), inv: 3, class: EdgeClass::H },
        Edge { id: "b:(0,1)".into(), inv: 2, class: EdgeClass::H },
    ];
    let meta = ComplexMeta { q: 0, tau: 0, c: 0 };
    OneVertexComplex::assemble(meta, edges, vec![[0, 2, 1, 3]], false).unwrap()
}

/// The degenerate two-generator example: relations `ab = b^-1 a^-1` and
/// `a^-1 b = b^-1 a` produce squares whose link has double edges.
pub fn degenerate_fixture() -> OneVertexComplex {
    let edges = vec![
        Edge { id: "a:(0,0)".into(), inv: 1, class: EdgeClass::V },
        Edge { id: "a:(0,1)".into(), inv: 0, class: EdgeClass::V },
        Edge { id: "b:(0,0)".into(), inv: 3, class: EdgeClass::H },
        Edge { id: "b:(0,1)".into(), inv: 2, class: EdgeClass::H },
    ];
    let meta = ComplexMeta { q: 0, tau: 0, c: 0 };
    // all four oriented relation instances
    let raw = vec![
        [0, 2, 0, 2], // a b a b        from ab = b^-1 a^-1
        [0, 3, 0, 3], // a b' a b'      from a b^-1 = b a^-1
        [1, 2, 1, 2], // a' b a' b      from a^-1 b = b^-1 a
        [1, 3, 1, 3], // a' b' a' b'    from a^-1 b^-1 = b a
    ];
    OneVertexComplex::assemble(meta, edges, raw, false).unwrap()
}

/// Strict assembly of the degenerate fixture must fail the 4-to-1 check.
pub fn degenerate_fixture_strict_error() -> Error {
    let cx = degenerate_fixture();
    let raw = vec![[0, 2, 0, 2], [0, 3, 0, 3], [1, 2, 1, 2], [1, 3, 1, 3]];
    match OneVertexComplex::assemble(cx.meta, cx.edges, raw, true) {
        Err(e) => e,
        Ok(_) => unreachable!("degenerate squares cannot collapse 4-to-1"),
    }
}
