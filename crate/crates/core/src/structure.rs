//! Local permutation groups of the VH-structure and the classification
//! maps: which projective group the local actions generate, the explicit
//! generator dictionaries between lattices with related parameters, and the
//! commensurability decision over the parameter orbit.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GFElem, QuadExtElem};
use crate::quaternion::Config;
use crate::vh_core::VHData;
use std::collections::{HashMap, HashSet, VecDeque};

/// Permutation of `0..degree` by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    pub images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter("not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }
}

struct ChainLevel {
    base_point: usize,
    /// orbit point -> coset representative mapping base_point to it
    transversal: HashMap<usize, Perm>,
}

/// Permutation group with a stabilizer chain for order computation.
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    chain: Vec<ChainLevel>,
}

fn orbit_transversal(n: usize, gens: &[Perm], base: usize) -> HashMap<usize, Perm> {
    let mut transversal = HashMap::new();
    transversal.insert(base, Perm::identity(n));
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        let ux = transversal[&x].clone();
        for g in gens {
            let y = g.apply(x);
            if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(y) {
                e.insert(g.compose(&ux));
                queue.push_back(y);
            }
        }
    }
    transversal
}

impl PermGroup {
    /// Build a stabilizer chain by the Schreier method: at each level take
    /// the least moved point, compute its orbit with a transversal, and
    /// recurse on the Schreier generators of the stabilizer.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> PermGroup {
        let mut chain = Vec::new();
        let mut gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        dedup_perms(&mut gens);
        while let Some(base_point) = least_moved_point(&gens) {
            let transversal = orbit_transversal(degree, &gens, base_point);
            let mut schreier: Vec<Perm> = Vec::new();
            for (&y, uy) in &transversal {
                for g in &gens {
                    let target = g.apply(y);
                    let ut = &transversal[&target];
                    // u_target^{-1} * g * u_y stabilizes the base point
                    let s = ut.inverse().compose(&g.compose(uy));
                    if !s.is_identity() {
                        schreier.push(s);
                    }
                }
            }
            dedup_perms(&mut schreier);
            chain.push(ChainLevel { base_point, transversal });
            gens = schreier;
        }
        PermGroup { degree, generators, chain }
    }

    pub fn order(&self) -> u64 {
        self.chain
            .iter()
            .map(|lvl| lvl.transversal.len() as u64)
            .product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|lvl| lvl.base_point).collect()
    }

    pub fn is_transitive(&self) -> bool {
        match self.chain.first() {
            None => self.degree <= 1,
            Some(lvl) => lvl.transversal.len() == self.degree,
        }
    }

    /// Transitivity on ordered pairs of distinct points, by closure.
    pub fn is_2_transitive(&self) -> bool {
        if self.degree < 2 {
            return false;
        }
        let start = (0usize, 1usize);
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let next = (g.apply(x), g.apply(y));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len() == self.degree * (self.degree - 1)
    }
}

fn dedup_perms(gens: &mut Vec<Perm>) {
    let mut seen = HashSet::new();
    gens.retain(|g| seen.insert(g.images.clone()));
}

fn least_moved_point(gens: &[Perm]) -> Option<usize> {
    gens.iter()
        .flat_map(|g| g.images.iter().enumerate().filter(|&(i, &j)| i != j).map(|(i, _)| i))
        .min()
}

/// Brute-force group order by closure; cross-check for the chain.
pub fn brute_force_order(degree: usize, gens: &[Perm]) -> u64 {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(Perm::identity(degree).images);
    let mut queue: VecDeque<Perm> = VecDeque::from([Perm::identity(degree)]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let h = g.compose(&p);
            if seen.insert(h.images.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len() as u64
}

/// The two local permutation groups: the family of sigma maps indexed by
/// the opposite conic, acting on each generator set.
pub fn local_groups(data: &VHData) -> (PermGroup, PermGroup) {
    let n = data.degree();
    let p_a_gens: Vec<Perm> = data
        .sigma_a_table()
        .iter()
        .map(|row| Perm::new(row.clone()).expect("sigma is a bijection"))
        .collect();
    let p_b_gens: Vec<Perm> = data
        .sigma_b_table()
        .iter()
        .map(|row| Perm::new(row.clone()).expect("sigma is a bijection"))
        .collect();
    (
        PermGroup::from_generators(n, p_a_gens),
        PermGroup::from_generators(n, p_b_gens),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalType {
    Pgl,
    Psl,
}

impl LocalType {
    pub fn name(self) -> &'static str {
        match self {
            LocalType::Pgl => "PGL2",
            LocalType::Psl => "PSL2",
        }
    }
}

/// Expected order of the projective group on `q + 1` points.
pub fn expected_local_order(q: u64, t: LocalType) -> u64 {
    let full = (q + 1) * q * (q - 1);
    match t {
        LocalType::Pgl => full,
        LocalType::Psl => full / 2,
    }
}

/// Euler-criterion prediction: the first component acts as the full
/// projective group iff `1 - tau` is a non-square, the second iff `tau` is.
pub fn predict_local_groups(cfg: &Config) -> (LocalType, LocalType) {
    let f = cfg.field();
    let one_minus_tau = f.sub(&f.one(), cfg.tau());
    let pick = |x: &GFElem| {
        if f.is_square(x) {
            LocalType::Psl
        } else {
            LocalType::Pgl
        }
    };
    (pick(&one_minus_tau), pick(cfg.tau()))
}

/// Which generator family an image lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetClass {
    A,
    B,
}

/// A generator dictionary between two lattices, with the target data kept
/// for composition and verification.
pub struct GeneratorDictionary {
    pub source_tau: GFElem,
    pub target_tau: GFElem,
    /// image of the i-th A generator: target class and index
    pub a_images: Vec<(TargetClass, usize)>,
    /// image of the j-th B generator
    pub b_images: Vec<(TargetClass, usize)>,
    pub target: VHData,
}

impl GeneratorDictionary {
    /// Check that every source relation transports to a target relation.
    pub fn verify(&self, source: &VHData) -> Result<()> {
        let n = source.degree();
        let tgt = &self.target;
        for i in 0..n {
            for j in 0..n {
                let (l, m) = source.solve_forward(i, j);
                // image of a_i b_j = b_l a_m
                let (ci, xi) = self.a_images[i];
                let (cj, ej) = self.b_images[j];
                let (cl, el) = self.b_images[l];
                let (cm, xm) = self.a_images[m];
                // in the target the relation must read X Y = Y' X' with X
                // vertical iff ci = A
                let holds = match (ci, cj, cl, cm) {
                    (TargetClass::A, TargetClass::B, TargetClass::B, TargetClass::A) => {
                        tgt.solve_forward(xi, ej) == (el, xm)
                    }
                    (TargetClass::B, TargetClass::A, TargetClass::A, TargetClass::B) => {
                        // b_xi a_ej = a_el b_xm in the target; solve from the
                        // right instead
                        tgt.solve_backward(xi, ej) == (el, xm)
                    }
                    _ => false,
                };
                if !holds {
                    return Err(Error::TransportFailure(format!(
                        "relation ({i},{j}) -> ({l},{m})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The explicit swap isomorphism onto the lattice with parameter `1 - tau`:
/// multiply both conics by `zeta`, exchanging the two families.
pub fn iso_one_minus_tau(source: &VHData) -> Result<GeneratorDictionary> {
    let cfg = source.cfg();
    let f = cfg.field();
    let ext = cfg.ext();
    let target_tau = f.sub(&f.one(), cfg.tau());
    let target_cfg = Config::new(f.clone(), target_tau.clone())?;
    let target = VHData::build(target_cfg)?;
    let map = |w: &QuadExtElem| ext.mul(cfg.zeta(), w);
    let a_images: Vec<(TargetClass, usize)> = source
        .a_set()
        .iter()
        .map(|xi| {
            let im = map(xi);
            let idx = target.b_index(&im).ok_or_else(|| {
                Error::TransportFailure(format!("a-image {:?} not on target conic", im))
            })?;
            Ok((TargetClass::B, idx))
        })
        .collect::<Result<_>>()?;
    let b_images: Vec<(TargetClass, usize)> = source
        .b_set()
        .iter()
        .map(|eta| {
            let im = map(eta);
            let idx = target.a_index(&im).ok_or_else(|| {
                Error::TransportFailure(format!("b-image {:?} not on target conic", im))
            })?;
            Ok((TargetClass::A, idx))
        })
        .collect::<Result<_>>()?;
    let dict = GeneratorDictionary {
        source_tau: cfg.tau().clone(),
        target_tau,
        a_images,
        b_images,
        target,
    };
    dict.verify(source)?;
    Ok(dict)
}

/// The Frobenius isomorphism onto the lattice with parameter `tau^p`:
/// `w -> w^p / c^{(p-1)/2}` on both conics.
pub fn iso_frobenius(source: &VHData) -> Result<GeneratorDictionary> {
    let cfg = source.cfg();
    let f = cfg.field();
    let ext = cfg.ext();
    let p = f.p();
    let target_tau = f.pow(cfg.tau(), p);
    let target_cfg = Config::new(f.clone(), target_tau.clone())?;
    let target = VHData::build(target_cfg)?;
    let scale = f.inv(&f.pow(cfg.c(), (p - 1) / 2))?;
    let map = |w: &QuadExtElem| ext.scalar_mul(&scale, &ext.pow(w, p));
    let a_images: Vec<(TargetClass, usize)> = source
        .a_set()
        .iter()
        .map(|xi| {
            let im = map(xi);
            let idx = target.a_index(&im).ok_or_else(|| {
                Error::TransportFailure(format!("a-image {:?} not on target conic", im))
            })?;
            Ok((TargetClass::A, idx))
        })
        .collect::<Result<_>>()?;
    let b_images: Vec<(TargetClass, usize)> = source
        .b_set()
        .iter()
        .map(|eta| {
            let im = map(eta);
            let idx = target.b_index(&im).ok_or_else(|| {
                Error::TransportFailure(format!("b-image {:?} not on target conic", im))
            })?;
            Ok((TargetClass::B, idx))
        })
        .collect::<Result<_>>()?;
    let dict = GeneratorDictionary {
        source_tau: cfg.tau().clone(),
        target_tau,
        a_images,
        b_images,
        target,
    };
    dict.verify(source)?;
    Ok(dict)
}

/// Commensurability certificate: `tau' = tau^{p^k}` or `1 - tau^{p^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommCertificate {
    pub frobenius_power: usize,
    pub flip: bool,
}

/// Search the parameter orbit under Frobenius and the flip `tau -> 1-tau`.
pub fn commensurable(
    field: &FieldSpec,
    tau: &GFElem,
    tau_prime: &GFElem,
) -> Option<CommCertificate> {
    let p = field.p();
    let mut current = tau.clone();
    for k in 0..(2 * field.r()) {
        if &current == tau_prime {
            return Some(CommCertificate { frobenius_power: k, flip: false });
        }
        if &field.sub(&field.one(), &current) == tau_prime {
            return Some(CommCertificate { frobenius_power: k, flip: true });
        }
        current = field.pow(&current, p);
    }
    None
}

fn compose_dictionaries(
    source: &VHData,
    first: GeneratorDictionary,
    second: GeneratorDictionary,
) -> Result<GeneratorDictionary> {
    let push = |(cls, idx): (TargetClass, usize)| match cls {
        TargetClass::A => second.a_images[idx],
        TargetClass::B => second.b_images[idx],
    };
    let dict = GeneratorDictionary {
        source_tau: first.source_tau.clone(),
        target_tau: second.target_tau.clone(),
        a_images: first.a_images.iter().map(|&im| push(im)).collect(),
        b_images: first.b_images.iter().map(|&im| push(im)).collect(),
        target: second.target,
    };
    dict.verify(source)?;
    Ok(dict)
}

/// Compose the explicit isomorphisms along a commensurability certificate
/// into a verified generator dictionary from the `tau` lattice to the
/// `tau'` lattice.
pub fn certified_isomorphism(
    field: &FieldSpec,
    tau: &GFElem,
    tau_prime: &GFElem,
) -> Result<Option<GeneratorDictionary>> {
    let Some(cert) = commensurable(field, tau, tau_prime) else {
        return Ok(None);
    };
    let source = VHData::build(Config::new(field.clone(), tau.clone())?)?;
    let mut dict: Option<GeneratorDictionary> = None;
    let mut cursor = source.clone();
    for _ in 0..cert.frobenius_power {
        let step = iso_frobenius(&cursor)?;
        let next_cursor = VHData::build(step.target.cfg().clone())?;
        dict = Some(match dict {
            None => step,
            Some(prev) => compose_dictionaries(&source, prev, step)?,
        });
        cursor = next_cursor;
    }
    if cert.flip {
        let step = iso_one_minus_tau(&cursor)?;
        dict = Some(match dict {
            None => step,
            Some(prev) => compose_dictionaries(&source, prev, step)?,
        });
    }
    let dict = match dict {
        Some(d) => d,
        None => {
            // identity certificate
            let target = VHData::build(Config::new(field.clone(), tau.clone())?)?;
            GeneratorDictionary {
                source_tau: tau.clone(),
                target_tau: tau.clone(),
                a_images: (0..source.degree()).map(|i| (TargetClass::A, i)).collect(),
                b_images: (0..source.degree()).map(|j| (TargetClass::B, j)).collect(),
                target,
            }
        }
    };
    dict.verify(&source)?;
    Ok(Some(dict))
}
