//! `exp_C`, `Log_C` on `K_∞` and their deformations on `𝕋(K_∞)`.

use super::factorials;
use crate::algebra::{Carrier, LaurentSeries, Poly, TatePoly};
use crate::error::{Error, Result};

/// `y / a` for an exact polynomial `a`, to absolute precision `prec` (or less if `y` is less precise).
fn div_by_poly(y: &LaurentSeries, a: &Poly, prec: i64) -> Result<LaurentSeries> {
    if y.is_zero() {
        let d = a.deg();
        return Ok(LaurentSeries::zero(y.field(), (y.prec() + d).min(prec)));
    }
    let inv = LaurentSeries::inv_poly(a, prec - y.order())?;
    let out = y.mul(&inv)?;
    let p = out.prec().min(prec);
    out.truncate(p)
}

/// Smallest `i ≥ start` with `term(i) ≥ prec`, where `term` is eventually increasing.
fn tail_index(start: u32, prec: i64, term: impl Fn(u32) -> f64) -> u32 {
    let mut i = start;
    while term(i) < prec as f64 {
        i += 1;
    }
    // the first omitted term lies below the target precision
    assert!(term(i) >= prec as f64);
    i
}

/// `exp_C(x) = Σ x^{q^i}/D_i` to precision `prec`.
///
/// Terms have valuation `q^i (v + i)`; summation stops at the first index
/// past which every term vanishes modulo `θ^{-prec}`.
pub fn exp_inf(x: &LaurentSeries, prec: i64) -> Result<LaurentSeries> {
    let base = x.field().clone();
    let fs = factorials(&base);
    let q = fs.q();
    let prec = prec.min(x.prec());
    if x.is_zero() {
        return Ok(LaurentSeries::zero(&base, prec));
    }
    let v = x.order();
    let start = (1 - v).max(1) as u32;
    let stop = tail_index(start, prec, |i| (q as f64).powi(i as i32) * (v + i as i64) as f64);
    let mut acc = x.truncate(prec)?;
    let mut t = x.clone();
    for i in 1..stop {
        let dd = fs.d(i as usize);
        t = t.frobenius(q);
        acc = acc.add(&div_by_poly(&t, &dd, prec)?)?;
    }
    Ok(acc)
}

/// `Log_C(x) = Σ x^{q^i}/L_i` on `v_∞(x) > -q/(q-1)`, to precision `prec`.
///
/// Terms have valuation `q^i (v + q/(q-1)) - q/(q-1)`.
pub fn log_inf(x: &LaurentSeries, prec: i64) -> Result<LaurentSeries> {
    let base = x.field().clone();
    let fs = factorials(&base);
    let q = fs.q();
    let prec = prec.min(x.prec());
    if x.is_zero() {
        return Ok(LaurentSeries::zero(&base, prec));
    }
    let v = x.order();
    let qq = q as f64 / (q as f64 - 1.0);
    if (v as f64) <= -qq {
        return Err(Error::OutsideDomain(format!("v_inf(x) = {v} is not above -q/(q-1)")));
    }
    let stop = tail_index(1, prec, |i| (q as f64).powi(i as i32) * (v as f64 + qq) - qq);
    let mut acc = x.truncate(prec)?;
    let mut t = x.clone();
    for i in 1..stop {
        let l = fs.l(i as usize);
        t = t.frobenius(q);
        acc = acc.add(&div_by_poly(&t, &l, prec)?)?;
    }
    Ok(acc)
}

fn deformed_sum(
    x: &TatePoly<LaurentSeries>,
    prec: i64,
    denom: impl Fn(usize) -> Poly,
) -> Result<TatePoly<LaurentSeries>> {
    let zmax = x.zmax();
    let base = x.zero_coeff().field().clone();
    let q = base.size() as u64;
    let zero = LaurentSeries::zero(&base, prec);
    let mut acc = TatePoly::zero(zero.clone(), zmax);
    let mut t = x.clone();
    for i in 0..=zmax {
        if i > 0 {
            t = t.frobenius(q);
        }
        let den = denom(i);
        let term = t.map(|c| if c.is_zero() { Ok(zero.clone()) } else { div_by_poly(c, &den, prec) })?;
        acc = acc.add(&term.shift_z_truncated(i))?;
    }
    Ok(acc)
}

/// `exp_C̃(x) = Σ z^i/D_i τ^i(x)`; exact in `z` up to the truncation of `x`.
pub fn exp_z(x: &TatePoly<LaurentSeries>, prec: i64) -> Result<TatePoly<LaurentSeries>> {
    let fs = factorials(x.zero_coeff().field());
    deformed_sum(x, prec, |i| fs.d(i))
}

/// `Log_C̃(x) = Σ z^i/L_i τ^i(x)`; exact in `z` up to the truncation of `x`.
pub fn log_z(x: &TatePoly<LaurentSeries>, prec: i64) -> Result<TatePoly<LaurentSeries>> {
    let fs = factorials(x.zero_coeff().field());
    deformed_sum(x, prec, |i| fs.l(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldDescriptor;

    #[test]
    fn log_of_one_over_f2() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let one = LaurentSeries::one(&f2, 7);
        let l = log_inf(&one, 7).unwrap();
        // 1 + 1/(θ²+θ) + 1/((θ²+θ)(θ⁴+θ)) + O(θ^-7)
        let fs = factorials(&f2);
        let mut expect = one.clone();
        for i in 1..=2 {
            expect = expect.add(&LaurentSeries::inv_poly(&fs.l(i), 7).unwrap()).unwrap();
        }
        assert_eq!(l, expect);
        assert_eq!(l.coeff(2), Some(crate::FFElem::ONE));
        assert_eq!(l.coeff(1), Some(crate::FFElem::ZERO));
    }

    #[test]
    fn exp_log_round_trip() {
        for p in [2u64, 3, 5] {
            let f = FieldDescriptor::prime(p).unwrap();
            let one = LaurentSeries::one(&f, 20);
            let l = log_inf(&one, 20).unwrap();
            assert_eq!(exp_inf(&l, 20).unwrap(), one);
            assert!(exp_inf(&LaurentSeries::zero(&f, 5), 5).unwrap().is_zero());
        }
    }

    #[test]
    fn log_domain() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let t2 = LaurentSeries::from_poly(&Poly::from_ints(&f2, &[0, 0, 1]), 5);
        assert!(matches!(log_inf(&t2, 5), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn deformed_log_coefficients_are_inverse_l() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let one = TatePoly::constant(LaurentSeries::one(&f3, 30), 4);
        let l = log_z(&one, 30).unwrap();
        let fs = factorials(&f3);
        for m in 0..=4 {
            assert_eq!(l.coeff(m), LaurentSeries::inv_poly(&fs.l(m), 30).unwrap());
        }
        let back = exp_z(&l, 30).unwrap();
        assert_eq!(back.coeff(0), LaurentSeries::one(&f3, 30));
        for m in 1..=4 {
            assert!(back.coeff(m).is_zero());
        }
    }
}
