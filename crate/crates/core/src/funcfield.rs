//! Exact univariate polynomial and rational-function arithmetic over `F_q`
//! in the named variables `t`, `z`, `y`, together with 2x2 matrices over
//! them and valuations at `F_q`-rational places (finite points and infinity).
//!
//! Rational functions are kept in canonical reduced form: coprime numerator
//! and denominator with monic denominator, so structural equality is
//! semantic equality.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GFElem};
use std::fmt;

/// Variable tag for polynomials and rational functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Z,
    Y,
}

impl Var {
    pub fn letter(self) -> char {
        match self {
            Var::T => 't',
            Var::Z => 'z',
            Var::Y => 'y',
        }
    }
}

/// Dense polynomial; `coeffs[i]` multiplies `var^i`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub var: Var,
    pub coeffs: Vec<GFElem>,
}

impl Poly {
    pub fn zero(var: Var) -> Poly {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, var: Var, a: GFElem) -> Poly {
        Poly::from_coeffs(field, var, vec![a])
    }

    pub fn one(field: &FieldSpec, var: Var) -> Poly {
        Poly::constant(field, var, field.one())
    }

    /// The monomial `var`.
    pub fn gen(field: &FieldSpec, var: Var) -> Poly {
        Poly::from_coeffs(field, var, vec![field.zero(), field.one()])
    }

    pub fn from_coeffs(field: &FieldSpec, var: Var, mut coeffs: Vec<GFElem>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GFElem> {
        self.coeffs.last()
    }

    pub fn add(&self, field: &FieldSpec, other: &Poly) -> Poly {
        debug_assert_eq!(self.var, other.var);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            coeffs.push(field.add(&a, &b));
        }
        Poly::from_coeffs(field, self.var, coeffs)
    }

    pub fn neg(&self, field: &FieldSpec) -> Poly {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: &FieldSpec, other: &Poly) -> Poly {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &FieldSpec, other: &Poly) -> Poly {
        debug_assert_eq!(self.var, other.var);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.var);
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(field, self.var, coeffs)
    }

    pub fn scalar_mul(&self, field: &FieldSpec, s: &GFElem) -> Poly {
        Poly::from_coeffs(
            field,
            self.var,
            self.coeffs.iter().map(|c| field.mul(s, c)).collect(),
        )
    }

    /// Euclidean division; the divisor need not be monic.
    pub fn divrem(&self, field: &FieldSpec, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = field.inv(div.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = field.mul(&rem[k], &lead_inv);
            if !field.is_zero(&c) {
                quo[k - dd] = c.clone();
                for i in 0..=dd {
                    let sub = field.mul(&c, &div.coeffs[i]);
                    rem[k - dd + i] = field.sub(&rem[k - dd + i], &sub);
                }
            }
            rem.pop();
            while rem.len() > dd && rem.last().is_some_and(|c| field.is_zero(c)) {
                rem.pop();
            }
        }
        (
            Poly::from_coeffs(field, self.var, quo),
            Poly::from_coeffs(field, self.var, rem),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(field, &b);
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    pub fn make_monic(&self, field: &FieldSpec) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scalar_mul(field, &field.inv(l).unwrap()),
        }
    }

    pub fn eval(&self, field: &FieldSpec, at: &GFElem) -> GFElem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, at), c);
        }
        acc
    }

    /// Multiplicity of the root `a`; None (infinite) for the zero polynomial.
    pub fn ord_at_point(&self, field: &FieldSpec, a: &GFElem) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let linear = Poly::from_coeffs(field, self.var, vec![field.neg(a), field.one()]);
        let mut p = self.clone();
        let mut m = 0;
        while field.is_zero(&p.eval(field, a)) {
            let (q, r) = p.divrem(field, &linear);
            debug_assert!(r.is_zero());
            p = q;
            m += 1;
        }
        Some(m)
    }

    pub fn display<'a>(&'a self, field: &'a FieldSpec) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, field }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    field: &'a FieldSpec,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let v = self.poly.var.letter();
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let e = self.field.to_int(c);
            match i {
                0 => write!(f, "{e}")?,
                1 if e == 1 => write!(f, "{v}")?,
                1 => write!(f, "{e}{v}")?,
                _ if e == 1 => write!(f, "{v}^{i}")?,
                _ => write!(f, "{e}{v}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction of polynomials: coprime, monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(field: &FieldSpec, num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        debug_assert_eq!(num.var, den.var);
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one(field, den.var) });
        }
        let g = num.gcd(field, &den);
        let (num, r1) = num.divrem(field, &g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(field, &g);
        debug_assert!(r2.is_zero());
        let lead_inv = field.inv(den.leading().unwrap()).unwrap();
        Ok(RatFunc {
            num: num.scalar_mul(field, &lead_inv),
            den: den.scalar_mul(field, &lead_inv),
        })
    }

    pub fn from_poly(field: &FieldSpec, p: Poly) -> RatFunc {
        let var = p.var;
        RatFunc { num: p, den: Poly::one(field, var) }
    }

    pub fn zero(field: &FieldSpec, var: Var) -> RatFunc {
        RatFunc::from_poly(field, Poly::zero(var))
    }

    pub fn one(field: &FieldSpec, var: Var) -> RatFunc {
        RatFunc::from_poly(field, Poly::one(field, var))
    }

    pub fn constant(field: &FieldSpec, var: Var, a: GFElem) -> RatFunc {
        RatFunc::from_poly(field, Poly::constant(field, var, a))
    }

    /// The coordinate function `var`.
    pub fn gen(field: &FieldSpec, var: Var) -> RatFunc {
        RatFunc::from_poly(field, Poly::gen(field, var))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn var(&self) -> Var {
        self.num.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant in F_q? Returns the value if so.
    pub fn as_constant(&self, field: &FieldSpec) -> Option<GFElem> {
        if self.den.degree() == Some(0) && self.num.degree().is_none_or(|d| d == 0) {
            let c = self.num.coeffs.first().cloned().unwrap_or_else(|| field.zero());
            // den is monic of degree 0, hence 1
            Some(c)
        } else {
            None
        }
    }

    pub fn add(&self, field: &FieldSpec, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(field, &other.den)
            .add(field, &other.num.mul(field, &self.den));
        let den = self.den.mul(field, &other.den);
        RatFunc::new(field, num, den).unwrap()
    }

    pub fn neg(&self, field: &FieldSpec) -> RatFunc {
        RatFunc { num: self.num.neg(field), den: self.den.clone() }
    }

    pub fn sub(&self, field: &FieldSpec, other: &RatFunc) -> RatFunc {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &FieldSpec, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(field, &other.num);
        let den = self.den.mul(field, &other.den);
        RatFunc::new(field, num, den).unwrap()
    }

    pub fn scalar_mul(&self, field: &FieldSpec, s: &GFElem) -> RatFunc {
        RatFunc::new(field, self.num.scalar_mul(field, s), self.den.clone()).unwrap()
    }

    pub fn inv(&self, field: &FieldSpec) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        RatFunc::new(field, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, field: &FieldSpec, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(field, &other.inv(field)?))
    }

    pub fn pow(&self, field: &FieldSpec, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv(field)? } else { self.clone() };
        let mut acc = RatFunc::one(field, self.var());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(field, &base);
        }
        Ok(acc)
    }

    /// Evaluate at a non-pole; None when the denominator vanishes there.
    pub fn eval(&self, field: &FieldSpec, at: &GFElem) -> Option<GFElem> {
        let d = self.den.eval(field, at);
        if field.is_zero(&d) {
            return None;
        }
        Some(field.div(&self.num.eval(field, at), &d).unwrap())
    }

    pub fn display<'a>(&'a self, field: &'a FieldSpec) -> RatFuncDisplay<'a> {
        RatFuncDisplay { rf: self, field }
    }
}

pub struct RatFuncDisplay<'a> {
    rf: &'a RatFunc,
    field: &'a FieldSpec,
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.den.degree() == Some(0) {
            write!(f, "{}", self.rf.num.display(self.field))
        } else {
            write!(
                f,
                "({})/({})",
                self.rf.num.display(self.field),
                self.rf.den.display(self.field)
            )
        }
    }
}

/// An `F_q`-rational place of the function field: a finite point or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(GFElem),
    Infinity,
}

/// Order of vanishing at the place; None is the +infinity sentinel (f = 0).
pub fn ord_at(field: &FieldSpec, f: &RatFunc, place: &Place) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    match place {
        Place::Finite(a) => {
            let on = f.num().ord_at_point(field, a).unwrap();
            let od = f.den().ord_at_point(field, a).unwrap();
            Some(on - od)
        }
        Place::Infinity => {
            let dn = f.num().degree().unwrap() as i64;
            let dd = f.den().degree().unwrap() as i64;
            Some(dd - dn)
        }
    }
}

/// Compose `f` (in one variable) with `expr` (in another): `f(expr)`.
pub fn substitute(field: &FieldSpec, f: &RatFunc, expr: &RatFunc) -> Result<RatFunc> {
    let num = poly_compose(field, f.num(), expr);
    let den = poly_compose(field, f.den(), expr);
    if den.is_zero() {
        return Err(Error::DegenerateComposition);
    }
    den.inv(field).map(|d| num.mul(field, &d))
}

fn poly_compose(field: &FieldSpec, p: &Poly, expr: &RatFunc) -> RatFunc {
    let var = expr.var();
    let mut acc = RatFunc::zero(field, var);
    for c in p.coeffs.iter().rev() {
        acc = acc
            .mul(field, expr)
            .add(field, &RatFunc::constant(field, var, c.clone()));
    }
    acc
}

/// 2x2 matrix of rational functions in one shared variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub e: [[RatFunc; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[RatFunc; 2]; 2]) -> Mat2 {
        Mat2 { e }
    }

    pub fn identity(field: &FieldSpec, var: Var) -> Mat2 {
        let o = RatFunc::one(field, var);
        let z = RatFunc::zero(field, var);
        Mat2 { e: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn zero(field: &FieldSpec, var: Var) -> Mat2 {
        let z = RatFunc::zero(field, var);
        Mat2 { e: [[z.clone(), z.clone()], [z.clone(), z]] }
    }

    pub fn add(&self, field: &FieldSpec, other: &Mat2) -> Mat2 {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].add(field, &other.e[i][j]);
            }
        }
        out
    }

    pub fn scale(&self, field: &FieldSpec, s: &RatFunc) -> Mat2 {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].mul(field, s);
            }
        }
        out
    }
}

pub fn mul2(field: &FieldSpec, m: &Mat2, n: &Mat2) -> Mat2 {
    let var = m.e[0][0].var();
    let mut out = Mat2::zero(field, var);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = RatFunc::zero(field, var);
            for k in 0..2 {
                acc = acc.add(field, &m.e[i][k].mul(field, &n.e[k][j]));
            }
            out.e[i][j] = acc;
        }
    }
    out
}

pub fn det2(field: &FieldSpec, m: &Mat2) -> RatFunc {
    m.e[0][0]
        .mul(field, &m.e[1][1])
        .sub(field, &m.e[0][1].mul(field, &m.e[1][0]))
}

/// Is `M = f * N` for some nonzero `f` in `F_q(v)`?  Returns the witness.
pub fn scalar_eq(field: &FieldSpec, m: &Mat2, n: &Mat2) -> Option<RatFunc> {
    let mut witness: Option<RatFunc> = None;
    for i in 0..2 {
        for j in 0..2 {
            match (m.e[i][j].is_zero(), n.e[i][j].is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                (false, false) => {
                    if witness.is_none() {
                        witness = Some(m.e[i][j].div(field, &n.e[i][j]).unwrap());
                    }
                }
            }
        }
    }
    let f = witness?;
    for i in 0..2 {
        for j in 0..2 {
            if m.e[i][j] != n.e[i][j].mul(field, &f) {
                return None;
            }
        }
    }
    Some(f)
}
