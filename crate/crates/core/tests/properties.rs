use carlitz_core::algebra::{enumerate_monics, is_irreducible, FieldDescriptor};
use carlitz_core::carlitz::{
    carlitz_action_poly, exp_inf, exp_padic, factorials, goss_coeffs, log_inf, log_padic, v_p_d, carlitz_action,
};
use carlitz_core::modstruct::{action_matrix, snf_polyring};
use carlitz_core::rings::{ideal_norm, RingDescriptor};
use carlitz_core::{FFElem, Field, LaurentSeries, PAdicContext, PAdicElem, Poly};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed};

const CASES: u32 = 1000;

fn config() -> Config {
    Config {
        cases: CASES,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn field(idx: usize) -> Field {
    let (p, k) = [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 3)][idx];
    FieldDescriptor::canonical(p, k).unwrap()
}

fn poly(f: &Field, raw: &[u32]) -> Poly {
    Poly::new(f, raw.iter().map(|c| FFElem::from_index(c % f.size())).collect())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 0..=max_len)
}

/// `v_P(a)` by repeated division.
fn v_p(a: &Poly, p: &Poly) -> i64 {
    let mut a = a.clone();
    let mut v = 0;
    while let Some(b) = a.div_exact(p) {
        a = b;
        v += 1;
    }
    v
}

fn primes(f: &Field, max_deg: usize) -> Vec<Poly> {
    (1..=max_deg).flat_map(|d| enumerate_monics(f, d, None).filter(is_irreducible).collect::<Vec<_>>()).collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_is_a_field(fi in 0usize..6, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = field(fi);
        let e = |x: u32| FFElem::from_index(x % f.size());
        let (a, b, c) = (e(a), e(b), e(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FFElem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElem::ONE);
        }
        prop_assert_eq!(f.pow(a, f.size() as u64), a);
    }

    #[test]
    fn poly_ring_and_division(fi in 0usize..6, a in coeffs(7), b in coeffs(5), c in coeffs(4)) {
        let f = field(fi);
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !b.is_zero() {
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert!(r.deg() < b.deg());
        }
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
    }

    #[test]
    fn frobenius_is_a_ring_map(fi in 0usize..6, a in coeffs(6), b in coeffs(6)) {
        let f = field(fi);
        let q = f.characteristic() as u64;
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assert_eq!((&a * &b).tau(q), &a.tau(q) * &b.tau(q));
        prop_assert_eq!((&a + &b).tau(q), &a.tau(q) + &b.tau(q));
        prop_assert_eq!(a.tau(q), a.pow(q));
    }

    #[test]
    fn carlitz_action_is_a_module_structure(fi in 0usize..2, a in coeffs(3), b in coeffs(3), x in coeffs(3), y in coeffs(3)) {
        let f = field(fi);
        let (a, b, x, y) = (poly(&f, &a), poly(&f, &b), poly(&f, &x), poly(&f, &y));
        let act = |c: &Poly, v: &Poly| carlitz_action_poly(c, v).unwrap();
        prop_assert_eq!(act(&a, &(&x + &y)), &act(&a, &x) + &act(&a, &y));
        prop_assert_eq!(act(&(&a + &b), &x), &act(&a, &x) + &act(&b, &x));
        prop_assert_eq!(act(&(&a * &b), &x), act(&a, &act(&b, &x)));
        let t = Poly::var(&f);
        let q = f.size() as u64;
        prop_assert_eq!(act(&t, &x), &(&t * &x) + &x.pow(q));
        prop_assert_eq!(carlitz_action(&goss_coeffs(&a, &f).unwrap(), &x).unwrap(), act(&a, &x));
    }

    #[test]
    fn exp_log_inverse_at_infinity(fi in 0usize..3, order in 1i64..4, raw in prop::collection::vec(0u32..1000, 1..12)) {
        let f = field(fi);
        let prec = 24;
        let mut c: Vec<FFElem> = raw.iter().map(|v| FFElem::from_index(v % f.size())).collect();
        if c[0].is_zero() {
            c[0] = FFElem::ONE;
        }
        let x = LaurentSeries::new(&f, order, prec, c);
        let back = exp_inf(&log_inf(&x, prec).unwrap(), prec).unwrap();
        prop_assert!(back.agrees_with(&x, prec).unwrap());
        prop_assert_eq!(log_inf(&x, prec).unwrap().valuation(), x.valuation());
        let back = log_inf(&exp_inf(&x, prec).unwrap(), prec).unwrap();
        prop_assert!(back.agrees_with(&x, prec).unwrap());
    }

    #[test]
    fn padic_exp_log_inverse_and_isometric(pi in 0usize..6, val in 1i64..3, raw in coeffs(6)) {
        let f = field(1);
        let p = &primes(&f, 2)[pi % 6];
        let ctx = PAdicContext::new(p, &f).unwrap();
        let abs = 10;
        let mut u = poly(&f, &raw);
        if u.rem(p).is_zero() {
            u = &u + &Poly::one(&f);
        }
        let x = PAdicElem::new(&ctx, val, abs - val, u);
        let lx = log_padic(&x).unwrap();
        prop_assert_eq!(lx.valuation(), Some(val));
        let ex = exp_padic(&x).unwrap();
        prop_assert_eq!(ex.valuation(), Some(val));
        let back = exp_padic(&lx).unwrap();
        let m = back.abs_prec().min(x.abs_prec());
        prop_assert!(back.sub(&x).unwrap().val_or_prec() >= m);
        let back = log_padic(&ex).unwrap();
        let m = back.abs_prec().min(x.abs_prec());
        prop_assert!(back.sub(&x).unwrap().val_or_prec() >= m);
    }

    #[test]
    fn padic_units_invert(pi in 0usize..6, raw in coeffs(8)) {
        let f = field(1);
        let p = &primes(&f, 2)[pi % 6];
        let ctx = PAdicContext::new(p, &f).unwrap();
        let mut u = poly(&f, &raw);
        if u.rem(p).is_zero() {
            u = &u + &Poly::one(&f);
        }
        let x = PAdicElem::from_poly(&ctx, &u, 9).unwrap();
        let prod = x.mul(&x.inv().unwrap()).unwrap();
        prop_assert!(prod.sub(&PAdicElem::one(&ctx, 9)).unwrap().val_or_prec() >= 9);
    }

    #[test]
    fn factorial_valuations_match_product_formula(qi in 0usize..2, i in 1u32..5, pi in 0usize..4) {
        let f = field(qi);
        let q = f.size() as u64;
        let ps = primes(&f, 3);
        let p = &ps[pi % ps.len()];
        let d = p.degree().unwrap() as u32;
        let t = Poly::var(&f);
        // D_i = ∏_{k<i} (θ^{q^{i-k}} - θ)^{q^k}
        let oracle: i64 = (0..i).map(|k| q.pow(k) as i64 * v_p(&(&t.pow(q.pow(i - k)) - &t), p)).sum();
        prop_assert_eq!(v_p_d(q, i, d), oracle);
        prop_assert_eq!(v_p(&factorials(&f).d(i as usize), p), oracle);
    }

    #[test]
    fn norm_is_multiplicative(ri in 0usize..2, a in coeffs(3), b in coeffs(3)) {
        let ring = [RingDescriptor::new(2, 2).unwrap(), RingDescriptor::new(3, 2).unwrap()][ri].clone();
        let l = ring.field_l();
        let mut a = poly(l, &a);
        let mut b = poly(l, &b);
        if a.is_zero() { a = Poly::one(l); }
        if b.is_zero() { b = Poly::var(l); }
        let n = |g: &Poly| ideal_norm(&ring.ideal(&g.monic()).unwrap()).unwrap();
        prop_assert_eq!(n(&(&a * &b)), &n(&a) * &n(&b));
        prop_assert_eq!(n(&a).degree(), a.degree().map(|d| d * ring.r() as usize));
    }

    #[test]
    fn snf_fitting_invariant_under_unimodular_mixing(
        qi in 0usize..2,
        pi in 0usize..8,
        deformed in any::<bool>(),
        ops in prop::collection::vec((0usize..4, 0usize..4, 0u32..1000, 0usize..3, 0u32..9, any::<bool>()), 1..6),
    ) {
        let f = field(qi);
        let ps = primes(&f, 3);
        let p = &ps[pi % ps.len()];
        let ring = RingDescriptor::a(f.size() as u64).unwrap();
        let m = action_matrix(&ring.ideal(p).unwrap(), deformed).unwrap().characteristic_matrix();
        let want = snf_polyring(&m).unwrap().fitting();
        let n = m.len();
        let mut mixed = m.clone();
        for (i, j, c, k, zc, rows) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            // add c·z^e·x^k times line j to line i
            let c = Poly::monomial(&f, FFElem::from_index(c % f.size()), (zc % 3) as usize);
            if rows {
                let src = mixed[j].clone();
                for (dst, s) in mixed[i].iter_mut().zip(&src) {
                    *dst = dst.add(&s.mul_term(&c, k));
                }
            } else {
                for row in mixed.iter_mut() {
                    let s = row[j].mul_term(&c, k);
                    row[i] = row[i].add(&s);
                }
            }
        }
        prop_assert_eq!(snf_polyring(&mixed).unwrap().fitting(), want);
    }
}
