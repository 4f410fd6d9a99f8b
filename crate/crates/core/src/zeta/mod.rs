//! Power sums over ideals, the polynomials `Z(n;z)` for `n ≤ 0`, and the
//! ∞-adic and P-adic zeta values with certified truncation.

mod kernel;

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::parse::{laurent_json, padic_json};
use crate::algebra::tate::render_poly_in_z;
use crate::algebra::{monic_count, monic_from_index, Carrier, FFElem, LaurentSeries, PAdicContext, PAdicElem, Poly, TatePoly};
use crate::error::{Error, Result};
use crate::rings::{norm_of_poly, primes_above, RingDescriptor};

pub(crate) use kernel::DenseMod;
use kernel::{add_into, series_mul};

/// Ideals per parallel work unit; fixed so the reduction tree never depends on the pool size.
const CHUNK: u64 = 2048;

/// Sum of the base-`q` digits of `m`.
pub fn ell_q(q: u64, mut m: u64) -> u64 {
    let mut s = 0;
    while m > 0 {
        s += m % q;
        m /= q;
    }
    s
}

/// Bound on `deg_z Z(n;z)` for `n ≤ 0`: `r(2g+1+ℓ_q(-n)) - 1`.
pub fn zeta_poly_bound(ring: &RingDescriptor, n: i64) -> usize {
    assert!(n <= 0);
    let r = ring.r() as u64;
    (r * (2 * ring.genus() as u64 + 1 + ell_q(ring.q(), (-n) as u64)) - 1) as usize
}

/// `Σ_{𝔓 | P} deg n(𝔓)`, which is `r deg P` for constant-field extensions.
pub fn euler_degree(ring: &RingDescriptor, p: &Poly) -> usize {
    ring.r() as usize * p.degree().unwrap_or(0)
}

/// Bound on `deg_z Z_P(n;z)` for `n ≤ 0`.
pub fn euler_bound(ring: &RingDescriptor, n: i64, p: &Poly) -> usize {
    zeta_poly_bound(ring, n) + euler_degree(ring, p)
}

/// `D(s) = r(2g+1+(s+1+deg P)(q-1)) + Σ deg n(𝔓)`: from this degree on, `v_P(U_{P,d}(n)) ≥ q^{s+1}`.
pub fn tail_cutoff(ring: &RingDescriptor, p: &Poly, s: u32) -> usize {
    let r = ring.r() as u64;
    let dp = p.degree().unwrap_or(0) as u64;
    let inner = 2 * ring.genus() as u64 + 1 + (s as u64 + 1 + dp) * (ring.q() - 1);
    (r * inner) as usize + euler_degree(ring, p)
}

/// Certified P-adic precision `q^{s+1}`; the bound needs `n < q^{s+1}`.
pub fn tail_precision(ring: &RingDescriptor, n: i64, s: u32) -> Result<i64> {
    let prec = ring.q().checked_pow(s + 1).ok_or_else(|| Error::InvalidArgument(format!("s = {s} is too large")))? as i64;
    if n < 1 || n >= prec {
        return Err(Error::InvalidArgument(format!("the tail bound needs 1 <= n < q^(s+1), got n = {n}, s = {s}")));
    }
    Ok(prec)
}

/// How a power sum is accumulated.
#[derive(Clone, Debug)]
pub enum SumMode {
    /// Exact polynomial for `n ≤ 0`, optionally over ideals prime to `P`.
    Exact { coprime_to: Option<Poly> },
    /// In `K_∞` to absolute precision `prec`.
    Inf { prec: i64 },
    /// In `A_P` modulo `P^prec`, over ideals prime to `P`.
    PAdic { ctx: Arc<PAdicContext>, prec: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PowerSum {
    Exact(Poly),
    Inf(LaurentSeries),
    PAdic(PAdicElem),
}

impl PowerSum {
    pub fn is_zero(&self) -> bool {
        match self {
            PowerSum::Exact(p) => p.is_zero(),
            PowerSum::Inf(x) => x.is_zero(),
            PowerSum::PAdic(x) => x.is_zero(),
        }
    }
}

/// Deterministic map-reduce over the ideals of norm degree `m`: `visit` folds
/// the norms of one chunk into a fresh accumulator, chunks are combined in index order.
fn reduce_norms<T, V, C>(ring: &RingDescriptor, m: usize, init: impl Fn() -> T + Sync, visit: V, combine: C) -> Result<T>
where
    T: Send,
    V: Fn(&mut T, &Poly) -> Result<()> + Sync,
    C: Fn(&mut T, T),
{
    let r = ring.r() as usize;
    if !m.is_multiple_of(r) {
        return Ok(init());
    }
    let field = ring.field_l().clone();
    let deg = m / r;
    let total = monic_count(&field, deg);
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Result<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let g = monic_from_index(&field, deg, idx);
                if r == 1 {
                    visit(&mut acc, &g)?;
                } else {
                    visit(&mut acc, &norm_of_poly(ring, &g)?)?;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut out = init();
    for p in parts {
        combine(&mut out, p?);
    }
    Ok(out)
}

/// `U_d(n) = Σ n(I)^{-n}` over the ideals with `deg n(I) = d` (prime to `P` in the P-adic modes).
pub fn power_sum(ring: &RingDescriptor, n: i64, d: usize, mode: &SumMode) -> Result<PowerSum> {
    let base = ring.base().clone();
    let f = &base;
    match mode {
        SumMode::Exact { coprime_to } => {
            if n > 0 {
                return Err(Error::InvalidArgument("exact power sums need n <= 0".into()));
            }
            let e = (-n) as u64;
            let v = reduce_norms(
                ring,
                d,
                Vec::new,
                |acc, a| {
                    if coprime_to.as_ref().is_some_and(|p| p.divides(a)) {
                        return Ok(());
                    }
                    add_into(f, acc, a.pow(e).coeffs());
                    Ok(())
                },
                |acc, x| add_into(f, acc, &x),
            )?;
            Ok(PowerSum::Exact(Poly::new(f, v)))
        }
        SumMode::Inf { prec } => {
            if n < 1 {
                return Err(Error::InvalidArgument("∞-adic power sums need n >= 1".into()));
            }
            let order = n * d as i64;
            let len = (prec - order).max(0) as usize;
            let v = reduce_norms(
                ring,
                d,
                || vec![FFElem::ZERO; len],
                |acc, a| {
                    if len == 0 {
                        return Ok(());
                    }
                    let inv = crate::algebra::laurent::reciprocal_coeffs(a, len);
                    let mut p = inv.clone();
                    for _ in 1..n {
                        p = series_mul(f, &p, &inv, len);
                    }
                    add_into(f, acc, &p);
                    Ok(())
                },
                |acc, x| add_into(f, acc, &x),
            )?;
            Ok(PowerSum::Inf(LaurentSeries::new(f, order, *prec, v)))
        }
        SumMode::PAdic { ctx, prec } => {
            let p = ctx.prime().clone();
            let m = DenseMod::new(&ctx.prime().pow(*prec as u64));
            let v = reduce_norms(
                ring,
                d,
                Vec::new,
                |acc, a| {
                    let t = if n >= 1 {
                        // modulo P^N the non-units are exactly the multiples of P
                        let Some(inv) = m.inv(a.coeffs()) else { return Ok(()) };
                        if n == 1 {
                            inv
                        } else {
                            m.pow(&inv, n as u64)
                        }
                    } else if p.divides(a) {
                        return Ok(());
                    } else {
                        m.pow(a.coeffs(), (-n) as u64)
                    };
                    add_into(f, acc, &t);
                    Ok(())
                },
                |acc, x| add_into(f, acc, &x),
            )?;
            Ok(PowerSum::PAdic(PAdicElem::new(ctx, 0, *prec, Poly::new(f, v))))
        }
    }
}

/// Which zeta value a [`ZetaValue`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    PolyInZ,
    InfAdic,
    PAdic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZetaPayload {
    PolyInZ(TatePoly<Poly>),
    Inf(LaurentSeries),
    PAdic(PAdicElem),
}

/// A zeta value with its truncation certificate: every ideal of norm degree
/// `≥ cutoff_d` contributes below the precision of the payload.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaValue {
    pub ring: RingDescriptor,
    pub n: i64,
    pub payload: ZetaPayload,
    pub prime: Option<Poly>,
    pub s: Option<u32>,
    pub cutoff_d: usize,
    pub bound: String,
}

impl ZetaValue {
    pub fn flavor(&self) -> Flavor {
        match self.payload {
            ZetaPayload::PolyInZ(_) => Flavor::PolyInZ,
            ZetaPayload::Inf(_) => Flavor::InfAdic,
            ZetaPayload::PAdic(_) => Flavor::PAdic,
        }
    }

    pub fn padic(&self) -> Option<&PAdicElem> {
        match &self.payload {
            ZetaPayload::PAdic(x) => Some(x),
            _ => None,
        }
    }

    pub fn inf(&self) -> Option<&LaurentSeries> {
        match &self.payload {
            ZetaPayload::Inf(x) => Some(x),
            _ => None,
        }
    }

    pub fn poly(&self) -> Option<&TatePoly<Poly>> {
        match &self.payload {
            ZetaPayload::PolyInZ(x) => Some(x),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match &self.payload {
            ZetaPayload::PolyInZ(t) => json!({
                "flavor": "poly_in_z",
                "poly_in_z": render_poly_in_z(t),
                "degree": t.zdeg(),
            }),
            ZetaPayload::Inf(x) => json!({"flavor": "inf_adic", "value": laurent_json(x)}),
            ZetaPayload::PAdic(x) => json!({"flavor": "p_adic", "value": padic_json(x)}),
        };
        let o = v.as_object_mut().unwrap();
        o.insert("ring".into(), json!(self.ring.to_string()));
        o.insert("n".into(), json!(self.n));
        if let Some(p) = &self.prime {
            o.insert("P".into(), json!(p.to_string()));
        }
        if let Some(s) = self.s {
            o.insert("s".into(), json!(s));
        }
        o.insert("cutoff_D".into(), json!(self.cutoff_d));
        o.insert("bound".into(), json!(self.bound));
        v
    }
}

/// `Z(n;z) ∈ A[z]` for `n ≤ 0`, checking that the two degrees past the bound vanish.
pub fn zeta_poly(ring: &RingDescriptor, n: i64) -> Result<ZetaValue> {
    zeta_poly_impl(ring, n, None)
}

/// `Z_P(n;z)` for `n ≤ 0` by direct summation over ideals prime to `P`, with the same overshoot check.
pub fn zeta_poly_p(ring: &RingDescriptor, n: i64, p: &Poly) -> Result<ZetaValue> {
    zeta_poly_impl(ring, n, Some(p))
}

fn zeta_poly_impl(ring: &RingDescriptor, n: i64, p: Option<&Poly>) -> Result<ZetaValue> {
    if n > 0 {
        return Err(Error::InvalidArgument(format!("Z(n;z) is a polynomial only for n <= 0, got {n}")));
    }
    let p = p.map(|p| crate::carlitz::to_base(p, ring.base())).transpose()?;
    let bound = match &p {
        Some(p) => euler_bound(ring, n, p),
        None => zeta_poly_bound(ring, n),
    };
    let mode = SumMode::Exact { coprime_to: p.clone() };
    let mut coeffs = Vec::new();
    for d in 0..=bound + 2 {
        let PowerSum::Exact(u) = power_sum(ring, n, d, &mode)? else { unreachable!() };
        if d > bound {
            if !u.is_zero() {
                return Err(Error::DegreeBoundViolated(format!("U_{d}({n}) = {u} but deg_z is at most {bound}")));
            }
        } else {
            coeffs.push(u);
        }
    }
    let zero = Poly::zero(ring.base());
    Ok(ZetaValue {
        ring: ring.clone(),
        n,
        payload: ZetaPayload::PolyInZ(TatePoly::new(zero, bound, coeffs)?),
        prime: p,
        s: None,
        cutoff_d: bound + 1,
        bound: format!("deg_z <= {bound}; U_d = 0 checked for d = {}..{}", bound + 1, bound + 2),
    })
}

/// `ζ(n)` for `n ≥ 1` to precision `θ^{-prec}`; `v_∞(U_d(n)) ≥ n d` bounds the tail.
pub fn zeta_inf(ring: &RingDescriptor, n: i64, prec: i64) -> Result<ZetaValue> {
    if n < 1 || prec < 1 {
        return Err(Error::InvalidArgument(format!("zeta_inf needs n >= 1 and prec >= 1, got n = {n}, prec = {prec}")));
    }
    let cutoff = ((prec + n - 1) / n) as usize;
    let mut acc = LaurentSeries::zero(ring.base(), prec);
    for d in 0..cutoff {
        let PowerSum::Inf(u) = power_sum(ring, n, d, &SumMode::Inf { prec })? else { unreachable!() };
        acc = acc.add(&u)?;
    }
    Ok(ZetaValue {
        ring: ring.clone(),
        n,
        payload: ZetaPayload::Inf(acc),
        prime: None,
        s: None,
        cutoff_d: cutoff,
        bound: format!("v_inf(U_d({n})) >= {n}d"),
    })
}

/// `Z_P(n;z) = ∏_{𝔓|P} (1 - n(𝔓)^{-n} z^{deg n(𝔓)}) Z(n;z)` for `n ≤ 0`.
pub fn euler_transfer(ring: &RingDescriptor, n: i64, p: &Poly, seed: u64) -> Result<TatePoly<Poly>> {
    if n > 0 {
        return Err(Error::InvalidArgument(format!("the Euler transfer is exact only for n <= 0, got {n}")));
    }
    let p = crate::carlitz::to_base(p, ring.base())?;
    let bound = euler_bound(ring, n, &p);
    let z = zeta_poly(ring, n)?;
    let base = ring.base();
    let zero = Poly::zero(base);
    let src = z.poly().unwrap();
    let mut acc = TatePoly::new(zero.clone(), bound, src.coeffs().to_vec())?;
    for pr in primes_above(ring, &p, seed)? {
        let e = pr.norm.degree().unwrap();
        let mut c = vec![zero.clone(); e + 1];
        c[0] = Poly::one(base);
        c[e] = -&pr.norm.pow((-n) as u64);
        acc = acc.mul(&TatePoly::new(zero.clone(), bound, c)?)?;
    }
    if acc.zdeg().is_some_and(|d| d > bound) {
        return Err(Error::DegreeBoundViolated(format!("deg_z Z_P({n};z) exceeds {bound}")));
    }
    Ok(acc)
}

/// `ζ_P(n)`: exact through the Euler transfer for `n ≤ 0`, otherwise
/// `Σ_{d < D(s)} U_{P,d}(n)` modulo `P^{q^{s+1}}`.
pub fn zeta_padic(ring: &RingDescriptor, n: i64, p: &Poly, s: u32, seed: u64) -> Result<ZetaValue> {
    let p = crate::carlitz::to_base(p, ring.base())?;
    if !p.is_monic() || !crate::algebra::is_irreducible(&p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let ctx = PAdicContext::new(&p, ring.base())?;
    let q = ring.q();
    if n <= 0 {
        let t = euler_transfer(ring, n, &p, seed)?;
        let prec = q.pow(s + 1) as i64;
        let v = PAdicElem::from_poly(&ctx, &t.eval_one()?, prec)?;
        return Ok(ZetaValue {
            ring: ring.clone(),
            n,
            payload: ZetaPayload::PAdic(v),
            prime: Some(p.clone()),
            s: Some(s),
            cutoff_d: t.zmax() + 1,
            bound: "exact: Euler transfer of Z(n;z)".into(),
        });
    }
    let prec = tail_precision(ring, n, s)?;
    let cutoff = tail_cutoff(ring, &p, s);
    let mode = SumMode::PAdic { ctx: ctx.clone(), prec };
    let mut acc = PAdicElem::zero(&ctx, prec);
    for d in 0..cutoff {
        let PowerSum::PAdic(u) = power_sum(ring, n, d, &mode)? else { unreachable!() };
        acc = acc.add(&u)?;
    }
    Ok(ZetaValue {
        ring: ring.clone(),
        n,
        payload: ZetaPayload::PAdic(acc),
        prime: Some(p),
        s: Some(s),
        cutoff_d: cutoff,
        bound: format!("v_P(U_(P,d)({n})) >= {prec} for d >= {cutoff}"),
    })
}

/// One row of the tail-bound check: the P-adic valuation of `U_{P,d}(n)`
/// measured modulo `P^measured_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailMeasurement {
    pub d: usize,
    pub valuation: i64,
    pub measured_to: i64,
    pub required: i64,
}

impl TailMeasurement {
    pub fn holds(&self) -> bool {
        self.valuation >= self.required
    }
}

/// Measure `v_P(U_{P,d}(n))` for `d = D(s) .. D(s)+extra` one digit past the bound.
pub fn measure_tail(ring: &RingDescriptor, n: i64, p: &Poly, s: u32, extra: usize) -> Result<Vec<TailMeasurement>> {
    let p = crate::carlitz::to_base(p, ring.base())?;
    let ctx = PAdicContext::new(&p, ring.base())?;
    let required = tail_precision(ring, n, s)?;
    let cutoff = tail_cutoff(ring, &p, s);
    let measured_to = required + 1;
    let mode = SumMode::PAdic { ctx, prec: measured_to };
    (cutoff..=cutoff + extra)
        .map(|d| {
            let PowerSum::PAdic(u) = power_sum(ring, n, d, &mode)? else { unreachable!() };
            Ok(TailMeasurement { d, valuation: u.val_or_prec(), measured_to, required })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::factorials;

    fn a(q: u64) -> RingDescriptor {
        RingDescriptor::a(q).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        let r3 = a(3);
        let PowerSum::Inf(u) = power_sum(&r3, 1, 1, &SumMode::Inf { prec: 12 }).unwrap() else { panic!() };
        let l1 = factorials(r3.base()).l(1);
        assert_eq!(u, LaurentSeries::inv_poly(&l1, 12).unwrap());
        let exact = SumMode::Exact { coprime_to: None };
        assert_eq!(power_sum(&r3, 0, 0, &exact).unwrap(), PowerSum::Exact(Poly::one(r3.base())));
        assert!(power_sum(&r3, 0, 2, &exact).unwrap().is_zero());
        let r2 = a(2);
        assert_eq!(power_sum(&r2, -1, 1, &exact).unwrap(), PowerSum::Exact(Poly::one(r2.base())));
    }

    #[test]
    fn poly_examples() {
        assert_eq!(zeta_poly(&a(2), -1).unwrap().to_json()["poly_in_z"], "1+z");
        assert_eq!(zeta_poly(&a(3), -1).unwrap().to_json()["poly_in_z"], "1");
        assert_eq!(zeta_poly(&a(3), 0).unwrap().to_json()["poly_in_z"], "1");
        let r2 = a(2);
        let t = Poly::var(r2.base());
        let e = euler_transfer(&r2, -1, &t, 0).unwrap();
        assert_eq!(render_poly_in_z(&e), "1+(t+1)*z+t*z^2");
        let direct = zeta_poly_p(&r2, -1, &t).unwrap();
        assert_eq!(direct.poly().unwrap().eval_one().unwrap(), e.eval_one().unwrap());
    }

    #[test]
    fn cutoffs() {
        let r3 = a(3);
        let t = Poly::var(r3.base());
        assert_eq!(tail_cutoff(&r3, &t, 1), 8);
        assert_eq!(tail_cutoff(&r3, &Poly::from_ints(r3.base(), &[1, 0, 1]), 1), 11);
        assert_eq!(tail_cutoff(&a(2), &Poly::from_ints(a(2).base(), &[1, 1, 1]), 4), 10);
        assert_eq!(ell_q(3, 6), 2);
        assert!(tail_precision(&r3, 9, 1).is_err());
    }

    #[test]
    fn padic_residue() {
        let r3 = a(3);
        let t = Poly::var(r3.base());
        let z = zeta_padic(&r3, 1, &t, 1, 0).unwrap();
        assert_eq!(z.cutoff_d, 8);
        assert_eq!(z.padic().unwrap().residue().unwrap(), Poly::one(r3.base()));
        let z0 = zeta_padic(&r3, 0, &t, 1, 0).unwrap();
        assert!(z0.padic().unwrap().is_zero());
    }

    #[test]
    fn inf_constant_term() {
        let z = zeta_inf(&a(3), 2, 6).unwrap();
        let v = z.inf().unwrap();
        assert_eq!(v.valuation(), Some(0));
        assert_eq!(v.coeff(0), Some(FFElem::ONE));
    }
}
