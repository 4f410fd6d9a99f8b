//! Dense univariate polynomials over a finite field.
//!
//! The same type houses elements of `A = F_q[θ]`, of `O_L = F_{q^r}[θ]` and
//! polynomials in the deformation variable `z`; only the rendering variable
//! differs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Embedding, FFElem, Field};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FFElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

fn trim(v: &mut Vec<FFElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FFElem>) -> Poly {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FFElem::ONE)
    }

    pub fn constant(field: &Field, c: FFElem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c · θ^deg`.
    pub fn monomial(field: &Field, c: FFElem, deg: usize) -> Poly {
        let mut v = vec![FFElem::ZERO; deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    /// The variable `θ`.
    pub fn var(field: &Field) -> Poly {
        Poly::monomial(field, FFElem::ONE, 1)
    }

    /// Polynomial from integer coefficients (lowest degree first) in the prime field.
    pub fn from_ints(field: &Field, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FFElem> {
        self.coeffs
    }

    /// Coefficient of `θ^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).copied().unwrap_or(FFElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FFElem::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> FFElem {
        self.coeffs.last().copied().unwrap_or(FFElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FFElem::ONE
    }

    pub fn same_field(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn assert_field(&self, other: &Poly) {
        assert!(self.same_field(other), "polynomials over different fields");
    }

    pub fn scale(&self, c: FFElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    /// Multiply by `θ^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FFElem::ZERO; n];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// Keep only the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        let mut v: Vec<FFElem> = self.coeffs.iter().take(n).copied().collect();
        trim(&mut v);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: FFElem) -> FFElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FFElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.from_int(i as i64))).collect();
        Poly::new(f, v)
    }

    /// The `q`-power map `a ↦ a^q = Σ c_i^q θ^{qi}`.
    pub fn tau(&self, base_q: u64) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let q = base_q as usize;
        let mut v = vec![FFElem::ZERO; (self.coeffs.len() - 1) * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q] = f.frobenius(c, base_q, 1);
        }
        Poly { field: f.clone(), coeffs: v }
    }

    /// Apply the `q`-power Frobenius to the coefficients only.
    pub fn frobenius_coeffs(&self, base_q: u64, e: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, base_q, e)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        if !self.same_field(b) {
            return Err(Error::FieldMismatch);
        }
        let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
        let f = &self.field;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![FFElem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv_lead);
            q[top - db] = t;
            let nt = f.neg(t);
            for (i, &bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    let idx = top - db + i;
                    r[idx] = f.add(r[idx], f.mul(nt, bc));
                }
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, b: &Poly) -> Poly {
        self.divmod(b).expect("nonzero modulus over the same field").1
    }

    /// Exact division; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.assert_field(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).unwrap();
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(c) => (r0.scale(c), s0.scale(c), t0.scale(c)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Map coefficients through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<Poly> {
        if *emb.source != *self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::new(&emb.target, self.coeffs.iter().map(|&c| emb.apply(c)).collect()))
    }

    /// Pull coefficients back through an embedding; fails unless every
    /// coefficient lies in the image.
    pub fn restrict(&self, emb: &Embedding) -> Result<Poly> {
        if *emb.target != *self.field {
            return Err(Error::FieldMismatch);
        }
        let v = self.coeffs.iter().map(|&c| emb.preimage(c).ok_or(Error::NotBaseField)).collect::<Result<_>>()?;
        Ok(Poly::new(&emb.source, v))
    }

    /// Lift into `target` via the canonical embedding (identity when the fields agree).
    pub fn lift_to(&self, target: &Field) -> Result<Poly> {
        if *self.field == **target {
            return Ok(self.clone());
        }
        let emb = target.embedding_from(&self.field)?;
        self.embed(&emb)
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        render_terms(&self.field, &self.coeffs, var)
    }
}

pub(crate) fn render_terms(field: &Field, coeffs: &[FFElem], var: &str) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&field.render(c));
        } else if c == FFElem::ONE {
            out.push_str(&mono);
        } else if field.render_is_compound(c) {
            out.push_str(&format!("({})*{mono}", field.render(c)));
        } else {
            out.push_str(&format!("{}*{mono}", field.render(c)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (i, &c) in short.coeffs.iter().enumerate() {
            v[i] = f.add(v[i], c);
        }
        Poly::new(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![FFElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
    /// Evaluate the first argument at the constant term of the second.
    Eval,
    /// First argument raised to `exponent` modulo the second.
    PowMod { exponent: u128 },
}

/// Result of [`poly_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Single(Poly),
    Pair(Poly, Poly),
}

/// Checked dispatch over the basic polynomial operations.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyResult> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyResult::Single(a + b),
        PolyOp::Mul => PolyResult::Single(a * b),
        PolyOp::DivMod => {
            let (q, r) = a.divmod(b)?;
            PolyResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyResult::Single(a.gcd(b)),
        PolyOp::Eval => PolyResult::Single(Poly::constant(a.field(), a.eval(b.coeff(0)))),
        PolyOp::PowMod { exponent } => {
            if b.is_zero() {
                return Err(Error::DivisionByZeroPoly);
            }
            PolyResult::Single(a.pow_mod(exponent, b))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    #[test]
    fn square_in_char_two() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let a = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(&a * &a, Poly::from_ints(&f2, &[1, 0, 1]));
    }

    #[test]
    fn long_division_over_f3() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = Poly::from_ints(&f3, &[0, 0, 0, 1]);
        let b = Poly::from_ints(&f3, &[1, 0, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&f3, &[0, 1]));
        assert_eq!(r, Poly::from_ints(&f3, &[0, 2]));
    }

    #[test]
    fn gcd_is_monic_and_trivial_for_coprime() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = Poly::from_ints(&f3, &[1, 0, 1]);
        let b = Poly::from_ints(&f3, &[1, 1]);
        assert!(a.gcd(&b).is_one());
        let c = Poly::from_ints(&f3, &[2, 2]);
        assert_eq!((&a * &c).gcd(&(&b * &c)), Poly::from_ints(&f3, &[1, 1]));
    }

    #[test]
    fn errors() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f2 = FieldDescriptor::prime(2).unwrap();
        let a = Poly::from_ints(&f3, &[1, 1]);
        assert_eq!(a.divmod(&Poly::zero(&f3)).unwrap_err(), Error::DivisionByZeroPoly);
        assert_eq!(poly_arith(&a, &Poly::one(&f2), PolyOp::Add).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn tau_is_qth_power() {
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let u = f9.generator();
        let a = Poly::new(&f9, vec![u, FFElem::ONE, u]);
        assert_eq!(a.tau(3), a.pow(3));
    }

    #[test]
    fn rendering() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        assert_eq!(Poly::from_ints(&f3, &[1, 2, 1]).to_string(), "t^2+2*t+1");
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let u = f9.generator();
        let p = Poly::new(&f9, vec![u, f9.add(u, FFElem::ONE)]);
        assert_eq!(p.to_string(), "(u+1)*t+u");
    }
}
