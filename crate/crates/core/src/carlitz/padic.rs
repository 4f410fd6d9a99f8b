//! The Carlitz maps on `K_P` and on `O_L ⊗ A_P`, and the Iwasawa logarithm.

use super::{carlitz_action, factorials, goss_coeffs, v_p_d, v_p_l};
use crate::algebra::{PAdicElem, Poly};
use crate::error::{Error, Result};

/// `[a,i]` for `a ∈ A_P` known modulo `P^N`, from any polynomial representative.
///
/// Entry `i` is correct modulo `P^{N-i}`.
pub fn padic_goss_coeffs(a: &PAdicElem, i_max: usize) -> Result<Vec<PAdicElem>> {
    let ctx = a.context();
    let n = a.abs_prec();
    if n <= i_max as i64 {
        return Err(Error::PrecisionExhausted(format!("[a,{i_max}] needs more than P^{n}")));
    }
    let base = ctx.prime().field();
    let rep = super::to_base(&a.to_poly()?, base)?;
    let g = goss_coeffs(&rep, base)?;
    (0..=i_max).map(|i| PAdicElem::from_poly(ctx, &g.get(i), n - i as i64)).collect()
}

fn check_integral_positive(x: &PAdicElem) -> Result<i64> {
    match x.valuation() {
        Some(v) if v < 1 => Err(Error::OutsideDomain(format!("v_P(x) = {v}, need at least 1"))),
        Some(v) => Ok(v),
        None => Ok(x.abs_prec()),
    }
}

/// `Σ x^{q^i} / den(i)` with `v_P(den(i)) = dval(i)`, stopping once
/// `q^i v - dval(i)` reaches the target precision.
fn padic_series(
    x: &PAdicElem,
    den: impl Fn(usize) -> Poly,
    dval: impl Fn(u32) -> i64,
) -> Result<PAdicElem> {
    let v = check_integral_positive(x)?;
    let ctx = x.context();
    let q = ctx.prime().field().size() as u64;
    let target = x.abs_prec();
    if x.is_zero() {
        return Ok(x.clone());
    }
    let mut acc = x.clone();
    let mut t = x.clone();
    let mut i = 1u32;
    loop {
        let term_val = (q as i64).saturating_pow(i).saturating_mul(v).saturating_sub(dval(i));
        if term_val >= target {
            break;
        }
        t = t.frobenius_truncated(q, target + dval(i));
        let d = PAdicElem::from_poly(ctx, &den(i as usize), target + 2 * (i as i64) + 2)?;
        let term = t.div(&d)?;
        acc = acc.add(&term.truncate(term.abs_prec().min(target))?)?;
        i += 1;
    }
    acc.truncate(acc.abs_prec().min(target))
}

/// `Log_C(x) = Σ x^{q^i}/L_i` for `v_P(x) ≥ 1`; term valuations are `q^i v - ⌊i/d⌋`.
pub fn log_padic(x: &PAdicElem) -> Result<PAdicElem> {
    let ctx = x.context();
    let fs = factorials(ctx.prime().field());
    let d = ctx.degree() as u64;
    padic_series(x, |i| fs.l(i), |i| v_p_l(i as u64, d))
}

/// `exp_C(x) = Σ x^{q^i}/D_i` for `v_P(x) ≥ 1`; term valuations are `q^i v - v_P(D_i)`.
pub fn exp_padic(x: &PAdicElem) -> Result<PAdicElem> {
    let ctx = x.context();
    let fs = factorials(ctx.prime().field());
    let q = fs.q();
    let d = ctx.degree() as u32;
    padic_series(x, |i| fs.d(i), |i| v_p_d(q, i, d))
}

/// The Iwasawa logarithm `(P^f - 1)^{-1} Log_C(C_{P^f - 1}(x))` on integral `x`,
/// where `f` is the residual degree of the unramified carrier.
pub fn iwasawa_log(x: &PAdicElem, f: u32) -> Result<PAdicElem> {
    if let Some(v) = x.valuation() {
        if v < 0 {
            return Err(Error::OutsideDomain(format!("v_P(x) = {v} is negative")));
        }
    }
    let ctx = x.context();
    let base = ctx.prime().field();
    let a = &ctx.prime().pow(f as u64) - &Poly::one(base);
    let y = carlitz_action(&goss_coeffs(&a, base)?, x)?;
    let y = y.truncate(y.abs_prec().min(x.abs_prec()))?;
    let l = log_padic(&y)?;
    let inv = PAdicElem::from_poly(ctx, &a, x.abs_prec())?.inv()?;
    let out = l.mul(&inv)?;
    out.truncate(out.abs_prec().min(x.abs_prec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldDescriptor, PAdicContext};

    #[test]
    fn log_theta_mod_theta_cubed() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let t = Poly::var(&f3);
        let ctx = PAdicContext::new(&t, &f3).unwrap();
        let x = PAdicElem::from_poly(&ctx, &t, 3).unwrap();
        let l = log_padic(&x).unwrap();
        // θ³/(θ - θ³) = θ²(1 - θ²)^{-1}, so the θ² digit is +1
        assert_eq!(l.to_poly().unwrap(), Poly::from_ints(&f3, &[0, 1, 1]));
        assert_eq!(l.abs_prec(), 3);
        assert_eq!(exp_padic(&l).unwrap(), x);
    }

    #[test]
    fn iwasawa_examples() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let t = Poly::var(&f3);
        let ctx = PAdicContext::new(&t, &f3).unwrap();
        let one = PAdicElem::one(&ctx, 2);
        let l = iwasawa_log(&one, 1).unwrap();
        assert_eq!(l.to_poly().unwrap(), Poly::from_ints(&f3, &[0, 2]));

        let f2 = FieldDescriptor::prime(2).unwrap();
        for p in [vec![0, 1], vec![1, 1], vec![1, 1, 1]] {
            let ctx = PAdicContext::new(&Poly::from_ints(&f2, &p), &f2).unwrap();
            assert!(iwasawa_log(&PAdicElem::one(&ctx, 12), 1).unwrap().is_zero());
        }
    }

    #[test]
    fn goss_coefficients_lose_one_digit_per_index() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let p = Poly::from_ints(&f3, &[1, 1]);
        let ctx = PAdicContext::new(&p, &f3).unwrap();
        let a = Poly::from_ints(&f3, &[2, 0, 1, 1]);
        let n = 5;
        let x = PAdicElem::from_poly(&ctx, &a, n).unwrap();
        let y = PAdicElem::from_poly(&ctx, &(&a + &p.pow(n as u64)), n + 4).unwrap();
        let gx = padic_goss_coeffs(&x, 3).unwrap();
        let gy = padic_goss_coeffs(&y.truncate(n).unwrap(), 3).unwrap();
        let exact = goss_coeffs(&(&a + &p.pow(n as u64)), &f3).unwrap();
        for i in 0..=3 {
            assert_eq!(gx[i].abs_prec(), n - i as i64);
            let e = PAdicElem::from_poly(&ctx, &exact.get(i), n - i as i64).unwrap();
            assert!(gx[i].sub(&e).unwrap().is_zero());
            assert_eq!(gx[i], gy[i]);
        }
        assert!(matches!(padic_goss_coeffs(&x, 5), Err(Error::PrecisionExhausted(_))));
    }
}
