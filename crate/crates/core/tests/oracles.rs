//! Independent brute-force oracles for zeta values over `A = F_q[θ]`.

use carlitz_core::algebra::enumerate_monics;
use carlitz_core::rings::RingDescriptor;
use carlitz_core::zeta::{zeta_inf, zeta_poly, zeta_poly_p};
use carlitz_core::{FFElem, Field, Poly};

/// Coefficients of `1/a` in `θ^{-1}`, from `θ^{-deg a}` through `θ^{-(prec-1)}`, by long division.
fn inverse_digits(f: &Field, a: &Poly, prec: usize) -> Vec<FFElem> {
    let d = a.degree().unwrap();
    let lead = f.inv(a.leading()).unwrap();
    // 1/a = θ^{-d} · 1/(lc + c_{d-1}θ^{-1} + ...)
    let rev: Vec<FFElem> = (0..=d).map(|i| a.coeff(d - i)).collect();
    let mut out = vec![FFElem::ZERO; prec];
    let mut rem = vec![FFElem::ZERO; prec + d + 1];
    rem[0] = FFElem::ONE;
    for k in 0..prec.saturating_sub(d) {
        let c = f.mul(rem[k], lead);
        out[k + d] = c;
        for (i, &r) in rev.iter().enumerate() {
            rem[k + i] = f.sub(rem[k + i], f.mul(c, r));
        }
    }
    out
}

fn brute_zeta_one(q: u64, prec: usize) -> Vec<FFElem> {
    let ring = RingDescriptor::a(q).unwrap();
    let f = ring.base();
    let mut acc = vec![FFElem::ZERO; prec];
    for d in 0..prec {
        for a in enumerate_monics(f, d, None) {
            for (x, y) in acc.iter_mut().zip(inverse_digits(f, &a, prec)) {
                *x = f.add(*x, y);
            }
        }
    }
    acc
}

#[test]
fn zeta_one_matches_long_division() {
    for (q, prec) in [(2u64, 12usize), (3, 7)] {
        let ring = RingDescriptor::a(q).unwrap();
        let z = zeta_inf(&ring, 1, prec as i64).unwrap();
        let v = z.inf().unwrap();
        let want = brute_zeta_one(q, prec);
        for (i, w) in want.iter().enumerate() {
            assert_eq!(v.coeff(i as i64).unwrap_or(FFElem::ZERO), *w, "q = {q}, θ^-{i}");
        }
    }
}

/// `U_d(n) = Σ_{a monic, deg a = d, P ∤ a} a^{-n}` for `n ≤ 0`.
fn brute_u(f: &Field, n: i64, d: usize, p: Option<&Poly>) -> Poly {
    let mut acc = Poly::zero(f);
    for a in enumerate_monics(f, d, None) {
        if p.is_some_and(|p| a.rem(p).is_zero()) {
            continue;
        }
        acc = &acc + &a.pow((-n) as u64);
    }
    acc
}

#[test]
fn zeta_poly_matches_brute_force() {
    for q in [2u64, 3] {
        let ring = RingDescriptor::a(q).unwrap();
        let f = ring.base().clone();
        let t = Poly::var(&f);
        for n in -6..=0 {
            let z = zeta_poly(&ring, n).unwrap();
            let zp = zeta_poly_p(&ring, n, &t).unwrap();
            for d in 0..8 {
                assert_eq!(z.poly().unwrap().coeff(d), brute_u(&f, n, d, None), "q = {q}, n = {n}, d = {d}");
                assert_eq!(zp.poly().unwrap().coeff(d), brute_u(&f, n, d, Some(&t)), "q = {q}, n = {n}, d = {d}");
            }
        }
    }
}

#[test]
fn small_zeta_polynomials() {
    let a2 = RingDescriptor::a(2).unwrap();
    let render = |n| carlitz_core::algebra::tate::render_poly_in_z(zeta_poly(&a2, n).unwrap().poly().unwrap());
    assert_eq!(render(-1), "1+z");
    assert_eq!(render(0), "1");
    assert_eq!(render(-3), "1+(t^2+t+1)*z+(t^2+t)*z^2");
}
