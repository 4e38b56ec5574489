//! Exact arithmetic in `F_q` (q = p^r odd) and its quadratic extension
//! `F_{q^2} = F_q[Z]/(Z^2 - c)`.
//!
//! Elements of `F_q` are coefficient vectors in the power basis of a
//! canonical modulus: the lexicographically least monic irreducible of
//! degree r over `F_p`, coefficients compared low-degree-first.  The same
//! low-degree-first lexicographic order on coefficient vectors is the
//! canonical enumeration order used everywhere a "least" element is chosen,
//! so the choices of the non-square `c`, the generator `delta` and the conic
//! element `zeta` are reproducible.
//!
//! The quadratic extension carries the norm `N(w) = w * conj(w) = w^{1+q}`,
//! the Galois conjugation in the form `conj(w0 + w1 Z) = w0 - w1 Z` (the
//! q-power Frobenius), and the map `pe(w) = w / conj(w)` whose image is
//! exactly the kernel of the norm.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported field size for `make_field`.
pub const MAX_Q: u64 = 121;

/// Description of `F_q`, `q = p^r`, with arithmetic on [`GFElem`] values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    r: usize,
    q: u64,
    /// Monic modulus of degree `r`, coefficients low-to-high, length `r + 1`.
    /// For `r = 1` this is the degenerate `x`.
    modulus: Vec<u64>,
}

/// Element of `F_q`: `r` residues mod `p` in the power basis of the modulus.
///
/// The derived `Ord` (lexicographic on the coefficient vector, index 0 first)
/// is the canonical element order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GFElem {
    coeffs: Vec<u64>,
}

impl GFElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for GFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // printed via the integer encoding; needs no field context for p
        // because the encoding is resolved by FieldSpec::to_int in callers.
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose q as p^r with p prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            let mut r = 0;
            while m.is_multiple_of(p) {
                m /= p;
                r += 1;
            }
            return if m == 1 { Some((p, r)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

// dense division of monic-led polynomials over F_p; used only for the
// irreducibility sweep in make_field
#[allow(clippy::needless_range_loop)]
fn poly_divides_fp(p: u64, div: &[u64], f: &[u64]) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dd = div.len() - 1;
    let lead_inv = mod_inv(div[dd], p);
    while rem.len() > dd {
        let k = rem.len() - 1;
        let c = (rem[k] * lead_inv) % p;
        if c != 0 {
            for i in 0..=dd {
                let idx = k - dd + i;
                rem[idx] = (rem[idx] + p - (c * div[i]) % p) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_irreducible_fp(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    // a reducible monic polynomial has a monic divisor of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let mut div = vec![0u64; d + 1];
        div[d] = 1;
        loop {
            if poly_divides_fp(p, &div, f) {
                return false;
            }
            // odometer over the d low coefficients
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                div[i] += 1;
                if div[i] < p {
                    break;
                }
                div[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// Construct `F_{p^r}` with the canonical modulus.
pub fn make_field(p: u64, r: usize) -> Result<FieldSpec> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
    }
    let mut q: u64 = 1;
    for _ in 0..r {
        q = q.saturating_mul(p);
        if q > MAX_Q {
            return Err(Error::DegreeTooLarge { q, bound: MAX_Q });
        }
    }
    let modulus = if r == 1 {
        vec![0, 1]
    } else {
        // least monic irreducible of degree r, coefficients compared
        // low-degree-first
        let mut found = None;
        let mut low = vec![0u64; r];
        'sweep: loop {
            let mut f = low.clone();
            f.push(1);
            if is_irreducible_fp(p, &f) {
                found = Some(f);
                break;
            }
            // ascend in lexicographic order with index 0 most significant:
            // increment the highest index first
            let mut i = r;
            loop {
                if i == 0 {
                    break 'sweep;
                }
                i -= 1;
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
            }
        }
        found.expect("an irreducible polynomial of every degree exists")
    };
    Ok(FieldSpec { p, r, q, modulus })
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> GFElem {
        GFElem { coeffs: vec![0; self.r] }
    }

    pub fn one(&self) -> GFElem {
        self.from_int(1)
    }

    pub fn is_zero(&self, a: &GFElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Integer encoding `e = sum coeffs[i] * p^i` in `[0, q)`.
    pub fn to_int(&self, a: &GFElem) -> u64 {
        let mut e = 0;
        for &c in a.coeffs.iter().rev() {
            e = e * self.p + c;
        }
        e
    }

    pub fn from_int(&self, mut e: u64) -> GFElem {
        let mut coeffs = vec![0; self.r];
        for c in coeffs.iter_mut() {
            *c = e % self.p;
            e /= self.p;
        }
        GFElem { coeffs }
    }

    /// The m-th element in the canonical (lexicographic) order.
    pub fn nth(&self, mut m: u64) -> GFElem {
        let mut coeffs = vec![0; self.r];
        for i in (0..self.r).rev() {
            coeffs[i] = m % self.p;
            m /= self.p;
        }
        GFElem { coeffs }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<GFElem> {
        (0..self.q).map(|m| self.nth(m)).collect()
    }

    pub fn add(&self, a: &GFElem, b: &GFElem) -> GFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        GFElem { coeffs }
    }

    pub fn sub(&self, a: &GFElem, b: &GFElem) -> GFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        GFElem { coeffs }
    }

    pub fn neg(&self, a: &GFElem) -> GFElem {
        let coeffs = a.coeffs.iter().map(|x| (self.p - x) % self.p).collect();
        GFElem { coeffs }
    }

    pub fn mul(&self, a: &GFElem, b: &GFElem) -> GFElem {
        if self.r == 1 {
            return GFElem { coeffs: vec![a.coeffs[0] * b.coeffs[0] % self.p] };
        }
        let mut prod = vec![0u64; 2 * self.r - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus
        for k in (self.r..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for i in 0..self.r {
                    let idx = k - self.r + i;
                    prod[idx] = (prod[idx] + self.p - (c * self.modulus[i]) % self.p) % self.p;
                }
            }
        }
        prod.truncate(self.r);
        GFElem { coeffs: prod }
    }

    pub fn pow(&self, a: &GFElem, mut e: u64) -> GFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GFElem) -> Result<GFElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &GFElem, b: &GFElem) -> Result<GFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Euler criterion; zero counts as a square.
    pub fn is_square(&self, a: &GFElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        self.pow(a, (self.q - 1) / 2) == self.one()
    }
}

/// Least non-square `c` in the canonical enumeration order.
pub fn find_nonsquare(field: &FieldSpec) -> GFElem {
    let minus_one = field.neg(&field.one());
    for a in field.elements() {
        if field.is_zero(&a) {
            continue;
        }
        if field.pow(&a, (field.q - 1) / 2) == minus_one {
            return a;
        }
    }
    unreachable!("odd q always has a non-square")
}

/// The quadratic extension `F_{q^2} = F_q[Z]/(Z^2 - c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    base: FieldSpec,
    c: GFElem,
}

/// `w = w0 + w1 Z` with `Z^2 = c`.  Derived `Ord` is the canonical order
/// (low Z-degree coordinate most significant).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadExtElem {
    pub w0: GFElem,
    pub w1: GFElem,
}

impl QuadExt {
    /// `c` must be a non-square of the base field.
    pub fn new(base: FieldSpec, c: GFElem) -> Result<Self> {
        if base.is_square(&c) {
            return Err(Error::InvalidParameter(format!(
                "c = {} is a square in F_{}",
                base.to_int(&c),
                base.q()
            )));
        }
        Ok(QuadExt { base, c })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }
    pub fn c(&self) -> &GFElem {
        &self.c
    }
    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn zero(&self) -> QuadExtElem {
        QuadExtElem { w0: self.base.zero(), w1: self.base.zero() }
    }
    pub fn one(&self) -> QuadExtElem {
        QuadExtElem { w0: self.base.one(), w1: self.base.zero() }
    }
    pub fn z(&self) -> QuadExtElem {
        QuadExtElem { w0: self.base.zero(), w1: self.base.one() }
    }
    pub fn from_base(&self, a: GFElem) -> QuadExtElem {
        QuadExtElem { w0: a, w1: self.base.zero() }
    }
    pub fn make(&self, w0: GFElem, w1: GFElem) -> QuadExtElem {
        QuadExtElem { w0, w1 }
    }

    pub fn is_zero(&self, w: &QuadExtElem) -> bool {
        self.base.is_zero(&w.w0) && self.base.is_zero(&w.w1)
    }
    pub fn in_base(&self, w: &QuadExtElem) -> bool {
        self.base.is_zero(&w.w1)
    }

    pub fn add(&self, a: &QuadExtElem, b: &QuadExtElem) -> QuadExtElem {
        QuadExtElem {
            w0: self.base.add(&a.w0, &b.w0),
            w1: self.base.add(&a.w1, &b.w1),
        }
    }
    pub fn sub(&self, a: &QuadExtElem, b: &QuadExtElem) -> QuadExtElem {
        QuadExtElem {
            w0: self.base.sub(&a.w0, &b.w0),
            w1: self.base.sub(&a.w1, &b.w1),
        }
    }
    pub fn neg(&self, a: &QuadExtElem) -> QuadExtElem {
        QuadExtElem { w0: self.base.neg(&a.w0), w1: self.base.neg(&a.w1) }
    }

    pub fn mul(&self, a: &QuadExtElem, b: &QuadExtElem) -> QuadExtElem {
        let f = &self.base;
        let w0 = f.add(&f.mul(&a.w0, &b.w0), &f.mul(&self.c, &f.mul(&a.w1, &b.w1)));
        let w1 = f.add(&f.mul(&a.w0, &b.w1), &f.mul(&a.w1, &b.w0));
        QuadExtElem { w0, w1 }
    }

    pub fn scalar_mul(&self, s: &GFElem, a: &QuadExtElem) -> QuadExtElem {
        QuadExtElem {
            w0: self.base.mul(s, &a.w0),
            w1: self.base.mul(s, &a.w1),
        }
    }

    pub fn pow(&self, a: &QuadExtElem, mut e: u64) -> QuadExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Galois conjugation `w0 + w1 Z -> w0 - w1 Z`; equals the q-power
    /// Frobenius.
    pub fn conj(&self, a: &QuadExtElem) -> QuadExtElem {
        QuadExtElem { w0: a.w0.clone(), w1: self.base.neg(&a.w1) }
    }

    /// `N(w) = w * conj(w) = w0^2 - c w1^2`, valued in the base field.
    pub fn norm(&self, a: &QuadExtElem) -> GFElem {
        let f = &self.base;
        f.sub(&f.mul(&a.w0, &a.w0), &f.mul(&self.c, &f.mul(&a.w1, &a.w1)))
    }

    pub fn inv(&self, a: &QuadExtElem) -> Result<QuadExtElem> {
        let n = self.norm(a);
        if self.base.is_zero(&n) {
            return Err(Error::ZeroInput);
        }
        let ninv = self.base.inv(&n)?;
        Ok(self.scalar_mul(&ninv, &self.conj(a)))
    }

    pub fn div(&self, a: &QuadExtElem, b: &QuadExtElem) -> Result<QuadExtElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `pe(w) = w / conj(w)`; norm-one valued, constant on `F_q^*`-classes.
    pub fn pe(&self, a: &QuadExtElem) -> Result<QuadExtElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInput);
        }
        self.div(a, &self.conj(a))
    }

    /// All `q^2` elements in canonical order.
    pub fn elements(&self) -> Vec<QuadExtElem> {
        let base_elems = self.base.elements();
        let mut out = Vec::with_capacity((self.q() * self.q()) as usize);
        for w0 in &base_elems {
            for w1 in &base_elems {
                out.push(QuadExtElem { w0: w0.clone(), w1: w1.clone() });
            }
        }
        out
    }

    /// All `w` with `norm(w) = u`, in canonical order.  Always `q + 1` points.
    pub fn conic_points(&self, u: &GFElem) -> Result<Vec<QuadExtElem>> {
        if self.base.is_zero(u) {
            return Err(Error::ZeroNorm);
        }
        Ok(self
            .elements()
            .into_iter()
            .filter(|w| &self.norm(w) == u)
            .collect())
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: &QuadExtElem) -> u64 {
        let n = self.q() * self.q() - 1;
        let mut ord = n;
        for l in prime_factors(n) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        ord
    }

    /// Normalize modulo `F_q^*`: scale so the first nonzero coordinate is 1.
    pub fn class_rep(&self, a: &QuadExtElem) -> QuadExtElem {
        let lead = if self.base.is_zero(&a.w0) { &a.w1 } else { &a.w0 };
        if self.base.is_zero(lead) {
            return a.clone();
        }
        let s = self.base.inv(lead).expect("nonzero");
        self.scalar_mul(&s, a)
    }

    /// Integer pair encoding of an element.
    pub fn encode_pair(&self, a: &QuadExtElem) -> (u64, u64) {
        (self.base.to_int(&a.w0), self.base.to_int(&a.w1))
    }

    /// Single-integer encoding `e0 + e1 * q`.
    pub fn encode(&self, a: &QuadExtElem) -> u64 {
        let (e0, e1) = self.encode_pair(a);
        e0 + e1 * self.q()
    }

    pub fn decode(&self, e: u64) -> QuadExtElem {
        QuadExtElem {
            w0: self.base.from_int(e % self.q()),
            w1: self.base.from_int(e / self.q()),
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least element of multiplicative order `q^2 - 1` in canonical order.
pub fn find_generator(ext: &QuadExt) -> QuadExtElem {
    let n = ext.q() * ext.q() - 1;
    for w in ext.elements() {
        if ext.is_zero(&w) {
            continue;
        }
        if ext.order(&w) == n {
            return w;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f3() -> FieldSpec {
        make_field(3, 1).unwrap()
    }

    fn ext3() -> QuadExt {
        let f = f3();
        let c = find_nonsquare(&f);
        QuadExt::new(f, c).unwrap()
    }

    fn w(ext: &QuadExt, e0: u64, e1: u64) -> QuadExtElem {
        ext.make(ext.base().from_int(e0), ext.base().from_int(e1))
    }

    #[test]
    fn field_construction() {
        let f = f3();
        assert_eq!(f.q(), 3);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // least irreducible over F_3 of degree 2 is x^2 + 1
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 1), Err(Error::EvenCharacteristic));
        assert_eq!(make_field(9, 1), Err(Error::NotPrime(9)));
        assert!(matches!(make_field(3, 7), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn least_nonsquares() {
        assert_eq!(f3().to_int(&find_nonsquare(&f3())), 2);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.to_int(&find_nonsquare(&f5)), 2);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.to_int(&find_nonsquare(&f7)), 3);
        // Euler criterion holds for the choice in F_9 as well
        let f9 = make_field(3, 2).unwrap();
        let c = find_nonsquare(&f9);
        assert_eq!(f9.pow(&c, 4), f9.neg(&f9.one()));
    }

    #[test]
    fn norm_and_conj_examples() {
        let ext = ext3();
        assert_eq!(ext.norm(&ext.one()), ext.base().one());
        // q=3, c=2: N(Z) = -Z^2 = -2 = 1
        assert_eq!(ext.base().to_int(&ext.norm(&ext.z())), 1);
        // N(1+Z) = 1 - 2 = 2
        assert_eq!(ext.base().to_int(&ext.norm(&w(&ext, 1, 1))), 2);
        assert_eq!(ext.conj(&ext.one()), ext.one());
        assert_eq!(ext.conj(&ext.z()), ext.neg(&ext.z()));
        assert_eq!(ext.conj(&w(&ext, 1, 1)), w(&ext, 1, 2));
    }

    #[test]
    fn conj_is_frobenius_and_involutive() {
        for (p, r) in [(3, 1), (5, 1), (3, 2)] {
            let f = make_field(p, r).unwrap();
            let c = find_nonsquare(&f);
            let ext = QuadExt::new(f, c).unwrap();
            let q = ext.q();
            for a in ext.elements() {
                assert_eq!(ext.conj(&a), ext.pow(&a, q));
                assert_eq!(ext.conj(&ext.conj(&a)), a);
            }
        }
    }

    #[test]
    fn conj_is_field_automorphism() {
        let f = make_field(3, 2).unwrap();
        let c = find_nonsquare(&f);
        let ext = QuadExt::new(f, c).unwrap();
        let elems = ext.elements();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = &elems[rng.random_range(0..elems.len())];
            let b = &elems[rng.random_range(0..elems.len())];
            assert_eq!(ext.conj(&ext.mul(a, b)), ext.mul(&ext.conj(a), &ext.conj(b)));
            assert_eq!(ext.conj(&ext.add(a, b)), ext.add(&ext.conj(a), &ext.conj(b)));
        }
    }

    #[test]
    fn pe_examples() {
        let ext = ext3();
        // w in F_q^*: pe(w) = 1
        assert_eq!(ext.pe(&ext.from_base(ext.base().from_int(2))).unwrap(), ext.one());
        // pe(Z) = Z / (-Z) = -1 = 2
        assert_eq!(ext.pe(&ext.z()).unwrap(), w(&ext, 2, 0));
        // pe(1+2Z) = 2Z
        assert_eq!(ext.pe(&w(&ext, 1, 2)).unwrap(), w(&ext, 0, 2));
        assert_eq!(ext.pe(&ext.zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn hilbert_90() {
        // image of pe = kernel of norm, exactly, and every norm fibre has
        // q + 1 points
        for (p, r) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = make_field(p, r).unwrap();
            let c = find_nonsquare(&f);
            let ext = QuadExt::new(f, c).unwrap();
            let one = ext.base().one();
            let mut image: Vec<QuadExtElem> = ext
                .elements()
                .iter()
                .filter(|a| !ext.is_zero(a))
                .map(|a| ext.pe(a).unwrap())
                .collect();
            image.sort();
            image.dedup();
            let kernel = ext.conic_points(&one).unwrap();
            assert_eq!(image, kernel);
            for u in ext.base().elements() {
                if ext.base().is_zero(&u) {
                    continue;
                }
                let fibre = ext.conic_points(&u).unwrap();
                assert_eq!(fibre.len() as u64, ext.q() + 1);
                for w in &fibre {
                    assert_eq!(ext.norm(&ext.pe(w).unwrap()), one);
                }
            }
        }
    }

    #[test]
    fn conic_examples() {
        let ext = ext3();
        let t1 = ext.conic_points(&ext.base().from_int(1)).unwrap();
        let expect1: Vec<_> = vec![w(&ext, 0, 1), w(&ext, 0, 2), w(&ext, 1, 0), w(&ext, 2, 0)];
        assert_eq!(t1, expect1); // {1, 2, Z, 2Z} in canonical order
        let t2 = ext.conic_points(&ext.base().from_int(2)).unwrap();
        let expect2: Vec<_> = vec![w(&ext, 1, 1), w(&ext, 1, 2), w(&ext, 2, 1), w(&ext, 2, 2)];
        assert_eq!(t2, expect2);
        assert_eq!(ext.conic_points(&ext.base().zero()), Err(Error::ZeroNorm));
    }

    #[test]
    fn generator_examples() {
        let ext = ext3();
        let d = find_generator(&ext);
        assert_eq!(d, w(&ext, 1, 1)); // 1 + Z has order 8
        assert_eq!(ext.order(&d), 8);
        assert_eq!(ext.pow(&d, 2), w(&ext, 0, 2));
        assert_eq!(ext.pow(&d, 4), w(&ext, 2, 0));
        assert_eq!(ext.pow(&d, 8), ext.one());

        let f5 = make_field(5, 1).unwrap();
        let c5 = find_nonsquare(&f5);
        let ext5 = QuadExt::new(f5, c5).unwrap();
        let d5 = find_generator(&ext5);
        assert_eq!(ext5.pow(&d5, 24), ext5.one());
        assert_ne!(ext5.pow(&d5, 12), ext5.one());
        assert_ne!(ext5.pow(&d5, 8), ext5.one());
    }

    #[test]
    fn pe_constant_on_classes() {
        let ext = ext3();
        let a = w(&ext, 1, 2);
        for s in 1..3u64 {
            let scaled = ext.scalar_mul(&ext.base().from_int(s), &a);
            assert_eq!(ext.pe(&scaled).unwrap(), ext.pe(&a).unwrap());
        }
    }

    #[test]
    fn encodings_roundtrip() {
        let f9 = make_field(3, 2).unwrap();
        let c = find_nonsquare(&f9);
        let ext = QuadExt::new(f9, c).unwrap();
        for e in 0..81 {
            assert_eq!(ext.encode(&ext.decode(e)), e);
        }
        for m in 0..9 {
            let a = ext.base().nth(m);
            assert_eq!(ext.base().from_int(ext.base().to_int(&a)), a);
        }
    }
}
