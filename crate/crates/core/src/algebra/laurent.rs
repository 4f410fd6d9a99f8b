//! Truncated Laurent series in `1/θ`: elements of `K_∞ = F_q((1/θ))`.

use std::fmt;

use super::field::{FFElem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `Σ_{i=order}^{prec-1} c_i θ^{-i} + O(θ^{-prec})`.
///
/// The leading coefficient `c_order` is nonzero unless the element is zero to
/// precision, which is stored with no coefficients and `order == prec`.
#[derive(Clone)]
pub struct LaurentSeries {
    field: Field,
    order: i64,
    prec: i64,
    coeffs: Vec<FFElem>,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.prec == other.prec && self.coeffs == other.coeffs && *self.field == *other.field
    }
}
impl Eq for LaurentSeries {}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Coefficients of `1/a` as a power series: `a = Σ a_j θ^j` of degree `d`
/// gives `1/a = θ^{-d} Σ_{j<len} b_j θ^{-j}`.
pub(crate) fn reciprocal_coeffs(a: &Poly, len: usize) -> Vec<FFElem> {
    let f = a.field();
    let d = a.degree().expect("nonzero");
    let lead_inv = f.inv(a.leading()).expect("nonzero leading coefficient");
    // rev[i] = coefficient of θ^{d-i}
    let rev: Vec<FFElem> = (0..=d).map(|i| f.mul(a.coeff(d - i), lead_inv)).collect();
    let mut b = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = if j == 0 { FFElem::ONE } else { FFElem::ZERO };
        for i in 1..=j.min(d) {
            if !rev[i].is_zero() {
                acc = f.sub(acc, f.mul(rev[i], b[j - i]));
            }
        }
        b.push(acc);
    }
    if lead_inv != FFElem::ONE {
        for c in &mut b {
            *c = f.mul(*c, lead_inv);
        }
    }
    b
}

impl LaurentSeries {
    /// Build from raw data and normalize the leading coefficient.
    pub fn new(field: &Field, order: i64, prec: i64, coeffs: Vec<FFElem>) -> LaurentSeries {
        let mut coeffs = coeffs;
        coeffs.resize((prec - order).max(0) as usize, FFElem::ZERO);
        let mut s = LaurentSeries { field: field.clone(), order, prec, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.order += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.order = self.prec;
            }
        }
    }

    pub fn zero(field: &Field, prec: i64) -> LaurentSeries {
        LaurentSeries { field: field.clone(), order: prec, prec, coeffs: Vec::new() }
    }

    pub fn one(field: &Field, prec: i64) -> LaurentSeries {
        Self::from_poly(&Poly::one(field), prec)
    }

    /// `θ^{-e}` to precision `prec`.
    pub fn theta_power(field: &Field, e: i64, prec: i64) -> LaurentSeries {
        LaurentSeries::new(field, e, prec, vec![FFElem::ONE])
    }

    /// A polynomial in `θ` viewed in `K_∞` to precision `prec`.
    pub fn from_poly(a: &Poly, prec: i64) -> LaurentSeries {
        let f = a.field();
        let Some(d) = a.degree() else {
            return Self::zero(f, prec);
        };
        let order = -(d as i64);
        if prec <= order {
            return Self::zero(f, prec);
        }
        let v = (0..(prec - order)).map(|i| {
            let j = d as i64 - i;
            if j >= 0 {
                a.coeff(j as usize)
            } else {
                FFElem::ZERO
            }
        });
        LaurentSeries::new(f, order, prec, v.collect())
    }

    /// `1/a` for a nonzero polynomial, to absolute precision `prec`.
    pub fn inv_poly(a: &Poly, prec: i64) -> Result<LaurentSeries> {
        let d = a.degree().ok_or(Error::InvertZero)? as i64;
        let len = (prec - d).max(0) as usize;
        Ok(LaurentSeries::new(a.field(), d, prec, reciprocal_coeffs(a, len)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficients `c_order, ..., c_{prec-1}`.
    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    /// Coefficient of `θ^{-i}`; `None` outside the known range.
    pub fn coeff(&self, i: i64) -> Option<FFElem> {
        if i >= self.prec {
            None
        } else if i < self.order {
            Some(FFElem::ZERO)
        } else {
            Some(self.coeffs[(i - self.order) as usize])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `v_∞` of a nonzero element (`v_∞(θ) = -1`).
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.order)
    }

    /// Sign: the leading coefficient.
    pub fn sgn(&self) -> Option<FFElem> {
        self.coeffs.first().copied()
    }

    /// Reduce the precision; asking for more precision than is known fails.
    pub fn truncate(&self, prec: i64) -> Result<LaurentSeries> {
        if prec > self.prec {
            return Err(Error::PrecisionExhausted(format!(
                "cannot raise precision from {} to {prec}",
                self.prec
            )));
        }
        let keep = (prec - self.order).max(0) as usize;
        Ok(LaurentSeries::new(&self.field, self.order.min(prec), prec, self.coeffs.iter().take(keep).copied().collect()))
    }

    fn check(&self, other: &LaurentSeries) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check(other)?;
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let order = self.order.min(other.order).min(prec);
        let mut v = vec![FFElem::ZERO; (prec - order) as usize];
        for s in [self, other] {
            for (i, &c) in s.coeffs.iter().enumerate() {
                let e = s.order + i as i64;
                if e >= prec {
                    break;
                }
                let slot = &mut v[(e - order) as usize];
                *slot = f.add(*slot, c);
            }
        }
        Ok(LaurentSeries::new(f, order, prec, v))
    }

    pub fn neg(&self) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FFElem) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries::new(f, self.order, self.prec, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check(other)?;
        let f = &self.field;
        let prec = (self.prec + other.order).min(other.prec + self.order);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, prec));
        }
        let order = self.order + other.order;
        let len = (prec - order) as usize;
        let mut v = vec![FFElem::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Ok(LaurentSeries::new(f, order, prec, v))
    }

    /// Multiply by an exact polynomial: order and precision both drop by `deg a`.
    pub fn mul_poly(&self, a: &Poly) -> Result<LaurentSeries> {
        if **a.field() != *self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let Some(d) = a.degree() else {
            return Ok(Self::zero(f, self.prec));
        };
        let prec = self.prec - d as i64;
        if self.is_zero() {
            return Ok(Self::zero(f, prec));
        }
        let order = self.order - d as i64;
        let len = self.coeffs.len();
        let mut v = vec![FFElem::ZERO; len];
        // coefficient of θ^{d-j} in a contributes to exponent shift j
        for j in 0..=d.min(len - 1) {
            let c = a.coeff(d - j);
            if c.is_zero() {
                continue;
            }
            for (i, &x) in self.coeffs.iter().enumerate().take(len - j) {
                v[i + j] = f.add(v[i + j], f.mul(c, x));
            }
        }
        Ok(LaurentSeries::new(f, order, prec, v))
    }

    /// Multiplicative inverse; the result has order `-order` and precision `prec - 2·order`.
    pub fn inv(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::InvertZero);
        }
        let f = &self.field;
        let len = self.coeffs.len();
        let lead_inv = f.inv(self.coeffs[0]).unwrap();
        let mut b: Vec<FFElem> = Vec::with_capacity(len);
        for j in 0..len {
            let mut acc = if j == 0 { FFElem::ONE } else { FFElem::ZERO };
            for i in 1..=j {
                let a = self.coeffs[i];
                if !a.is_zero() {
                    acc = f.sub(acc, f.mul(f.mul(a, lead_inv), b[j - i]));
                }
            }
            b.push(acc);
        }
        let b = b.into_iter().map(|c| f.mul(c, lead_inv)).collect();
        Ok(LaurentSeries::new(f, -self.order, self.prec - 2 * self.order, b))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.mul(&other.inv()?)
    }

    /// `Σ c_i θ^{-i} ↦ Σ c_i^q θ^{-qi}`.
    pub fn frobenius(&self, base_q: u64) -> LaurentSeries {
        let f = &self.field;
        let q = base_q as i64;
        let prec = self.prec * q;
        if self.is_zero() {
            return Self::zero(f, prec);
        }
        let order = self.order * q;
        let mut v = vec![FFElem::ZERO; (prec - order) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q as usize] = f.frobenius(c, base_q, 1);
        }
        LaurentSeries { field: f.clone(), order, prec, coeffs: v }
    }

    /// Frobenius followed by truncation to `prec` (avoids materializing the full power).
    pub fn frobenius_truncated(&self, base_q: u64, prec: i64) -> LaurentSeries {
        let f = &self.field;
        let q = base_q as i64;
        let full_prec = self.prec * q;
        let prec = prec.min(full_prec);
        if self.is_zero() || self.order * q >= prec {
            return Self::zero(f, prec);
        }
        let order = self.order * q;
        let mut v = vec![FFElem::ZERO; (prec - order) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let slot = i as i64 * q;
            if slot >= prec - order {
                break;
            }
            v[slot as usize] = f.frobenius(c, base_q, 1);
        }
        LaurentSeries { field: f.clone(), order, prec, coeffs: v }
    }

    /// True when `self - other` vanishes to precision `prec` (which must be known on both sides).
    pub fn agrees_with(&self, other: &LaurentSeries, prec: i64) -> Result<bool> {
        let d = self.sub(other)?;
        if d.prec < prec {
            return Err(Error::PrecisionExhausted(format!("difference known only to {}", d.prec)));
        }
        Ok(d.order >= prec)
    }

    /// Split into the polynomial part (exponents `θ^j`, `j ≥ 0`) and the rest.
    pub fn polynomial_part(&self) -> Result<(Poly, LaurentSeries)> {
        if self.prec < 1 {
            return Err(Error::PrecisionExhausted("polynomial part not fully known".into()));
        }
        let f = &self.field;
        let mut poly = Vec::new();
        if self.order <= 0 {
            let top = -self.order;
            poly = vec![FFElem::ZERO; top as usize + 1];
            for e in self.order..=0 {
                poly[(-e) as usize] = self.coeff(e).unwrap();
            }
        }
        let rest: Vec<FFElem> = (1..self.prec).map(|e| self.coeff(e).unwrap()).collect();
        Ok((Poly::new(f, poly), LaurentSeries::new(f, 1, self.prec, rest)))
    }

    /// Text form such as `t^2+t+1+t^-1+O(t^-5)`.
    pub fn render(&self) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = -(self.order + i as i64);
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            let cs = f.render(c);
            terms.push(if e == 0 {
                cs
            } else if c == FFElem::ONE {
                mono
            } else if f.render_is_compound(c) {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        terms.push(format!("O(t^{})", -self.prec));
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    fn f2() -> Field {
        FieldDescriptor::prime(2).unwrap()
    }

    #[test]
    fn inverse_of_theta_is_exact() {
        let f = f2();
        let t = LaurentSeries::from_poly(&Poly::var(&f), 10);
        let inv = t.inv().unwrap();
        assert_eq!(inv.order(), 1);
        assert_eq!(inv.coeffs()[0], FFElem::ONE);
        assert!(inv.coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn geometric_series() {
        // 1/(θ+1) = θ^-1 + θ^-2 + θ^-3 + O(θ^-4)
        let f = f2();
        let a = LaurentSeries::from_poly(&Poly::from_ints(&f, &[1, 1]), 2);
        let inv = a.inv().unwrap();
        assert_eq!(inv.prec(), 4);
        assert_eq!(inv.order(), 1);
        assert_eq!(inv.coeffs(), &[FFElem::ONE; 3]);
        assert_eq!(LaurentSeries::inv_poly(&Poly::from_ints(&f, &[1, 1]), 4).unwrap(), inv);
    }

    #[test]
    fn mul_precision_rule() {
        let f = f2();
        let a = LaurentSeries::theta_power(&f, 1, 8);
        let b = LaurentSeries::from_poly(&Poly::var(&f), 5);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.prec(), 5 + 1);
        assert_eq!(c.order(), 0);
        assert_eq!(c.sgn(), Some(FFElem::ONE));
    }

    #[test]
    fn zero_carries_precision() {
        let f = f2();
        let a = LaurentSeries::one(&f, 6);
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.prec(), 6);
        assert_eq!(z.inv().unwrap_err(), Error::InvertZero);
        assert!(matches!(a.truncate(7), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn frobenius_spreads_exponents() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = LaurentSeries::new(&f3, 1, 3, vec![FFElem::ONE, f3.from_int(2)]);
        let b = a.frobenius(3);
        assert_eq!(b.order(), 3);
        assert_eq!(b.prec(), 9);
        let cube = a.mul(&a).unwrap().mul(&a).unwrap();
        assert_eq!(b.truncate(cube.prec()).unwrap(), cube);
    }

    #[test]
    fn polynomial_part_split() {
        let f = f2();
        let a = LaurentSeries::inv_poly(&Poly::from_ints(&f, &[1, 1]), 6).unwrap();
        let b = a.mul_poly(&Poly::from_ints(&f, &[0, 0, 1, 1])).unwrap();
        let (p, rest) = b.polynomial_part().unwrap();
        assert_eq!(p, Poly::from_ints(&f, &[0, 0, 1]));
        assert!(rest.is_zero());
    }
}
