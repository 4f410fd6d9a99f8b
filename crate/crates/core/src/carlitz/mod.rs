//! The Carlitz module `C_θ = θ + τ`, its deformation `C̃_θ = θ + zτ`, the
//! factorials `D_i`, `L_i`, and the exponential and logarithm series.

mod padic;
mod period;
mod series;

use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Carrier, Field, Poly, TatePoly};
use crate::error::{Error, Result};

pub use padic::{exp_padic, iwasawa_log, log_padic, padic_goss_coeffs};
pub use period::{carlitz_period, CarlitzPeriod};
pub use series::{exp_inf, exp_z, log_inf, log_z};

/// The coefficients `[a,i]` of `C_a = Σ [a,i] τ^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GossCoeffs {
    pub a: Poly,
    pub q: u64,
    pub coeffs: Vec<Poly>,
}

impl GossCoeffs {
    pub fn get(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(self.a.field()))
    }
}

/// Restrict `a` to `base` (the identity when the fields agree).
pub(crate) fn to_base(a: &Poly, base: &Field) -> Result<Poly> {
    if **a.field() == **base {
        return Ok(a.clone());
    }
    let emb = a.field().embedding_from(base).map_err(|_| Error::NotBaseField)?;
    a.restrict(&emb)
}

/// `θ^{q^i} - θ`.
fn theta_qi_minus_theta(base: &Field, qi: u64) -> Poly {
    let f = base;
    &Poly::monomial(f, crate::algebra::FFElem::ONE, qi as usize) - &Poly::var(f)
}

/// Goss coefficients of `a ∈ A = F_q[θ]`, where `F_q` is `base`.
///
/// Uses `[a,0] = a` and `[a,i](θ^{q^i} - θ) = [a,i-1]^q - [a,i-1]`.
pub fn goss_coeffs(a: &Poly, base: &Field) -> Result<GossCoeffs> {
    let a = to_base(a, base)?;
    let q = base.size() as u64;
    let mut coeffs = vec![a.clone()];
    let n = a.degree().unwrap_or(0);
    let mut qi = 1u64;
    for _ in 1..=n {
        qi *= q;
        let prev = coeffs.last().unwrap();
        let num = &prev.tau(q) - prev;
        let c = num.div_exact(&theta_qi_minus_theta(base, qi)).expect("Goss recursion is exact");
        coeffs.push(c);
    }
    Ok(GossCoeffs { a, q, coeffs })
}

/// Memo table of `D_i` and `L_i` over one base field.
pub struct FactorialSeq {
    base: Field,
    q: u64,
    d: Mutex<Vec<Poly>>,
    l: Mutex<Vec<Poly>>,
}

impl FactorialSeq {
    pub fn new(base: &Field) -> FactorialSeq {
        let one = Poly::one(base);
        FactorialSeq { base: base.clone(), q: base.size() as u64, d: Mutex::new(vec![one.clone()]), l: Mutex::new(vec![one]) }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `D_i = ∏_{k<i} (θ^{q^i} - θ^{q^k}) = (θ^{q^i} - θ) D_{i-1}^q`.
    pub fn d(&self, i: usize) -> Poly {
        let mut t = self.d.lock().unwrap();
        while t.len() <= i {
            let j = t.len() as u32;
            let next = &theta_qi_minus_theta(&self.base, self.q.pow(j)) * &t[j as usize - 1].tau(self.q);
            t.push(next);
        }
        t[i].clone()
    }

    /// `L_i = (θ - θ^q) ··· (θ - θ^{q^i})`.
    pub fn l(&self, i: usize) -> Poly {
        let mut t = self.l.lock().unwrap();
        while t.len() <= i {
            let j = t.len() as u32;
            let next = &(-&theta_qi_minus_theta(&self.base, self.q.pow(j))) * &t[j as usize - 1];
            t.push(next);
        }
        t[i].clone()
    }

    /// `v_∞(D_i) = -i q^i`.
    pub fn v_inf_d(&self, i: u32) -> i64 {
        -(i as i64) * self.q.pow(i) as i64
    }

    /// `v_∞(L_i) = -(q + q^2 + ... + q^i)`.
    pub fn v_inf_l(&self, i: u32) -> i64 {
        -(1..=i).map(|j| self.q.pow(j) as i64).sum::<i64>()
    }
}

/// `v_P(L_i) = ⌊i/d⌋` for a prime of degree `d`.
pub fn v_p_l(i: u64, d: u64) -> i64 {
    (i / d) as i64
}

/// `v_P(D_i) = (q^i - q^{i - d⌊i/d⌋}) / (q^d - 1)` for a prime of degree `d`.
pub fn v_p_d(q: u64, i: u32, d: u32) -> i64 {
    let r = i - d * (i / d);
    ((q.pow(i) - q.pow(r)) / (q.pow(d) - 1)) as i64
}

/// Shared factorial tables, one per base field.
pub fn factorials(base: &Field) -> Arc<FactorialSeq> {
    static REG: OnceLock<Mutex<Vec<Arc<FactorialSeq>>>> = OnceLock::new();
    let mut reg = REG.get_or_init(|| Mutex::new(Vec::new())).lock().unwrap();
    if let Some(f) = reg.iter().find(|f| *f.base == **base) {
        return f.clone();
    }
    let f = Arc::new(FactorialSeq::new(base));
    reg.push(f.clone());
    f
}

/// `C_a(x) = Σ [a,i] τ^i(x)` in any carrier.
pub fn carlitz_action<C: Carrier>(g: &GossCoeffs, x: &C) -> Result<C> {
    let mut acc = x.zero_like();
    let mut t = x.clone();
    for (i, c) in g.coeffs.iter().enumerate() {
        if i > 0 {
            t = t.frobenius(g.q);
        }
        if !c.is_zero() {
            acc = acc.add(&t.mul_poly(c)?)?;
        }
    }
    Ok(acc)
}

/// `C_a(x)` for `a` over the base field `F_q` it is written in.
pub fn carlitz_action_poly<C: Carrier>(a: &Poly, x: &C) -> Result<C> {
    carlitz_action(&goss_coeffs(a, a.field())?, x)
}

/// `C̃_a(x) = Σ [a,i] z^i τ^i(x)`; the result must fit below the z-truncation.
pub fn deformed_action<C: Carrier>(g: &GossCoeffs, x: &TatePoly<C>) -> Result<TatePoly<C>> {
    let deg = g.coeffs.len().saturating_sub(1);
    if let Some(m) = x.zdeg() {
        if m + deg > x.zmax() {
            return Err(Error::ZDegreeOverflow { needed: m + deg, bound: x.zmax() });
        }
    }
    let mut acc = x.zero_like();
    let mut t = x.clone();
    for (i, c) in g.coeffs.iter().enumerate() {
        if i > 0 {
            t = t.frobenius(g.q);
        }
        if !c.is_zero() {
            acc = acc.add(&t.mul_poly(c)?.shift_z(i)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_monics, is_irreducible, FieldDescriptor};

    #[test]
    fn goss_examples() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let t = Poly::var(&f3);
        let g = goss_coeffs(&t, &f3).unwrap();
        assert_eq!(g.coeffs, vec![t.clone(), Poly::one(&f3)]);
        let a = Poly::from_ints(&f3, &[1, 0, 1]);
        let g = goss_coeffs(&a, &f3).unwrap();
        assert_eq!(g.coeffs[1], Poly::from_ints(&f3, &[0, 1, 0, 1]));
        assert!(g.coeffs[1].rem(&a).is_zero());
        let f2 = FieldDescriptor::prime(2).unwrap();
        let g = goss_coeffs(&Poly::from_ints(&f2, &[0, 0, 1]), &f2).unwrap();
        assert_eq!(g.coeffs[1], Poly::from_ints(&f2, &[0, 1, 1]));
    }

    #[test]
    fn goss_rejects_extension_coefficients() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let a = Poly::new(&f9, vec![f9.generator(), crate::FFElem::ONE]);
        assert_eq!(goss_coeffs(&a, &f3).unwrap_err(), Error::NotBaseField);
        let b = Poly::from_ints(&f3, &[1, 1]).lift_to(&f9).unwrap();
        assert_eq!(goss_coeffs(&b, &f3).unwrap().coeffs[0], Poly::from_ints(&f3, &[1, 1]));
    }

    #[test]
    fn action_examples() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let one = Poly::one(&f3);
        assert_eq!(carlitz_action_poly(&Poly::var(&f3), &one).unwrap(), Poly::from_ints(&f3, &[1, 1]));
        let f2 = FieldDescriptor::prime(2).unwrap();
        let a = Poly::from_ints(&f2, &[0, 1, 1]);
        assert!(carlitz_action_poly(&a, &Poly::one(&f2)).unwrap().is_zero());
    }

    #[test]
    fn deformed_examples() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let one = TatePoly::constant(Poly::one(&f2), 4);
        let g = goss_coeffs(&Poly::from_ints(&f2, &[0, 0, 1]), &f2).unwrap();
        let r = deformed_action(&g, &one).unwrap();
        assert_eq!(crate::algebra::tate::render_poly_in_z(&r), "t^2+(t^2+t)*z+z^2");
        let small = TatePoly::new(Poly::zero(&f2), 2, vec![Poly::zero(&f2), Poly::one(&f2)]).unwrap();
        assert!(matches!(deformed_action(&g, &small), Err(Error::ZDegreeOverflow { .. })));
    }

    #[test]
    fn prime_goss_coefficients_vanish_mod_p() {
        for p in [2u64, 3] {
            let f = FieldDescriptor::prime(p).unwrap();
            for d in 1..=4 {
                for pr in enumerate_monics(&f, d, None).filter(is_irreducible) {
                    let g = goss_coeffs(&pr, &f).unwrap();
                    assert_eq!(g.coeffs[0], pr);
                    assert!(g.coeffs[d].is_one());
                    for i in 1..d {
                        assert!(g.coeffs[i].rem(&pr).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn factorial_valuations() {
        for p in [2u64, 3] {
            let f = FieldDescriptor::prime(p).unwrap();
            let fs = factorials(&f);
            for i in 0..=6u32 {
                assert_eq!(fs.d(i as usize).deg(), -fs.v_inf_d(i));
                assert_eq!(fs.l(i as usize).deg(), -fs.v_inf_l(i));
            }
            let top = if p == 2 { 10 } else { 6 };
            for d in 1..=3usize {
                for pr in enumerate_monics(&f, d, None).filter(is_irreducible) {
                    for i in 0..=top {
                        let count = |mut x: Poly| {
                            let mut v = 0;
                            while let Some(y) = x.div_exact(&pr) {
                                x = y;
                                v += 1;
                            }
                            v
                        };
                        assert_eq!(count(fs.l(i)), v_p_l(i as u64, d as u64));
                        assert_eq!(count(fs.d(i)), v_p_d(p, i as u32, d as u32), "q={p} P={pr} i={i}");
                    }
                }
            }
        }
    }
}
