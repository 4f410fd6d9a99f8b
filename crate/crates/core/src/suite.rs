//! The verification suites behind `verify all`, grouped by acceptance criterion.

use serde_json::{json, Value};

use crate::algebra::parse::parse_poly;
use crate::algebra::{enumerate_monics, is_irreducible, LaurentSeries, Poly, TatePoly};
use crate::carlitz::{exp_z, log_z};
use crate::error::Result;
use crate::formulas::{
    check_theorem4, deformed_unit, leopoldt_defect, stark_beta, verify_deformed_k, verify_padic_k, verify_period_q2,
    verify_taelman_k, UnitBasis, VerificationReport,
};
use crate::modstruct::fitting_ideal;
use crate::rings::{ideal_norm, RingDescriptor};
use crate::zeta::{euler_bound, euler_transfer, measure_tail, zeta_padic, zeta_poly, zeta_poly_bound, zeta_poly_p};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Quick => "quick",
            Level::Full => "full",
        }
    }
}

/// The reports backing one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub reports: Vec<VerificationReport>,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.id,
            "title": self.title,
            "pass": self.pass(),
            "reports": self.reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn report(identity: &str, params: Value, pass: bool, precision: &str, left: String, right: String) -> VerificationReport {
    VerificationReport {
        identity: identity.into(),
        params: params.as_object().cloned().unwrap_or_default(),
        pass,
        residual_unit: None,
        precision: precision.into(),
        left,
        right,
    }
}

fn poly(ring: &RingDescriptor, s: &str) -> Poly {
    parse_poly(ring.base(), s).expect("literal")
}

fn a(q: u64) -> RingDescriptor {
    RingDescriptor::a(q).expect("supported q")
}

fn f4() -> RingDescriptor {
    RingDescriptor::new(2, 2).expect("F_4[t]")
}

fn f9() -> RingDescriptor {
    RingDescriptor::new(3, 2).expect("F_9[t]")
}

/// Monic irreducibles over `F_q` of degree `1..=max`.
fn primes_up_to(ring: &RingDescriptor, max: usize) -> Vec<Poly> {
    (1..=max).flat_map(|d| enumerate_monics(ring.base(), d, None).filter(is_irreducible).collect::<Vec<_>>()).collect()
}

pub fn criterion1(_level: Level) -> Result<CriterionResult> {
    Ok(CriterionResult {
        id: 1,
        title: "zeta_A(1) = Log_C(1) by ideal summation",
        reports: vec![verify_taelman_k(2, 16)?, verify_taelman_k(3, 10)?],
    })
}

pub fn criterion2(_level: Level) -> Result<CriterionResult> {
    Ok(CriterionResult {
        id: 2,
        title: "sum over monics of degree m of 1/a = 1/L_m",
        reports: vec![verify_deformed_k(2, 5, 16)?, verify_deformed_k(3, 5, 16)?],
    })
}

pub fn criterion3(_level: Level) -> Result<CriterionResult> {
    let r = a(3);
    let reports = ["t", "t+1", "t^2+1"].iter().map(|p| verify_padic_k(3, &poly(&r, p), 1)).collect::<Result<_>>()?;
    Ok(CriterionResult { id: 3, title: "zeta_(P,A)(1) = (1 - 1/P) Log_C(1), q = 3", reports })
}

fn vanishing(ring: &RingDescriptor, n: i64, p: &Poly, s: u32, identity: &str) -> Result<VerificationReport> {
    let z = zeta_padic(ring, n, p, s, 0)?;
    let v = z.padic().unwrap();
    let need = ring.q().pow(s + 1) as i64;
    Ok(report(
        identity,
        json!({"ring": ring.to_string(), "n": n, "P": p.to_string(), "s": s, "cutoff_D": z.cutoff_d}),
        v.is_zero() && v.abs_prec() >= need,
        &format!("P^{need}"),
        v.render(),
        "0".into(),
    ))
}

pub fn criterion4(_level: Level) -> Result<CriterionResult> {
    let r = a(2);
    let reports =
        ["t", "t+1", "t^2+t+1"].iter().map(|p| vanishing(&r, 1, &poly(&r, p), 4, "padic_vanishing")).collect::<Result<_>>()?;
    Ok(CriterionResult { id: 4, title: "zeta_(P,A)(1) vanishes for q = 2", reports })
}

pub fn criterion5(level: Level) -> Result<CriterionResult> {
    let mut reports = Vec::new();
    for ring in [a(2), a(3), f4()] {
        let q = ring.q() as i64;
        for n in [-(q - 1), -2 * (q - 1)] {
            let z = zeta_poly(&ring, n)?;
            let v = z.poly().unwrap().eval_one()?;
            reports.push(report(
                "trivial_zero",
                json!({"ring": ring.to_string(), "n": n}),
                v.is_zero(),
                "exact",
                v.to_string(),
                "0".into(),
            ));
        }
    }
    let extra: &[&str] = if level == Level::Full { &["t", "t+1", "t^2+t+2"] } else { &["t"] };
    for q in [2u64, 3] {
        let r = a(q);
        for p in extra {
            let p = poly(&r, p);
            if p.degree().is_some_and(|d| d <= 2) && is_irreducible(&p) {
                reports.push(vanishing(&r, q as i64 - 1, &p, 2, "padic_trivial_zero")?);
            }
        }
    }
    Ok(CriterionResult { id: 5, title: "trivial zeros", reports })
}

pub fn criterion6(_level: Level) -> Result<CriterionResult> {
    let mut reports = Vec::new();
    for ring in [a(2), a(3), f4()] {
        let euler_primes = [poly(&ring, "t"), poly(&ring, "t^2+t+1").clone()];
        for n in (-6..=0).rev() {
            // zeta_poly itself fails if U_d(n) is nonzero in the two degrees past the bound
            let z = zeta_poly(&ring, n)?;
            let bound = zeta_poly_bound(&ring, n);
            let deg = z.poly().unwrap().zdeg();
            let mut ok = deg.is_none_or(|d| d <= bound);
            let mut notes = vec![format!("deg {deg:?} <= {bound}")];
            for p in euler_primes.iter().filter(|p| is_irreducible(p)) {
                let e = euler_transfer(&ring, n, p, 0)?;
                let direct = zeta_poly_p(&ring, n, p)?;
                let eb = euler_bound(&ring, n, p);
                let d = direct.poly().unwrap();
                ok &= e.zdeg().is_none_or(|d| d <= eb) && (0..=eb).all(|i| d.coeff(i) == e.coeff(i));
                notes.push(format!("P={p}: deg {:?} <= {eb}", e.zdeg()));
            }
            reports.push(report(
                "degree_bound",
                json!({"ring": ring.to_string(), "n": n}),
                ok,
                "exact",
                notes.join("; "),
                crate::algebra::tate::render_poly_in_z(z.poly().unwrap()),
            ));
        }
    }
    Ok(CriterionResult { id: 6, title: "degree bounds for Z(n;z) and Z_P(n;z)", reports })
}

pub fn criterion7(level: Level) -> Result<CriterionResult> {
    let mut reports = Vec::new();
    for q in [2u64, 3] {
        let r = a(q);
        let primes: Vec<Poly> = if level == Level::Full {
            primes_up_to(&r, 2)
        } else {
            vec![poly(&r, "t"), if q == 2 { poly(&r, "t^2+t+1") } else { poly(&r, "t^2+1") }]
        };
        for p in &primes {
            for s in [0u32, 1] {
                let rows = measure_tail(&r, 1, p, s, 2)?;
                let ok = rows.iter().all(|m| m.holds());
                reports.push(report(
                    "tail_bound",
                    json!({"q": q, "P": p.to_string(), "s": s, "n": 1}),
                    ok,
                    &format!("P^{}", rows[0].measured_to),
                    rows.iter().map(|m| format!("v(U_{})>={}", m.d, m.valuation)).collect::<Vec<_>>().join(", "),
                    format!(">= {}", rows[0].required),
                ));
            }
        }
    }
    Ok(CriterionResult { id: 7, title: "tail bound v_P(U_(P,d)(1)) >= q^(s+1)", reports })
}

pub fn criterion8(_level: Level) -> Result<CriterionResult> {
    let mut reports = Vec::new();
    for ring in [a(2), a(3), f4(), f9()] {
        let r = ring.r() as usize;
        let mut count = 0;
        let mut ok = true;
        let mut bad = Vec::new();
        for g in 1..=4 / r {
            for gen in enumerate_monics(ring.field_l(), g, None).filter(is_irreducible) {
                let prime = ring.ideal(&gen)?;
                let plain = fitting_ideal(&prime, false)?;
                let deformed = fitting_ideal(&prime, true)?;
                let at_one = deformed.fitting.eval_z(crate::algebra::FFElem::ONE);
                let agree = plain.matches() && deformed.matches() && Some(at_one) == plain.fitting.to_x_poly();
                if !agree {
                    bad.push(gen.to_string());
                }
                ok &= agree && ideal_norm(&prime)?.degree() == Some(r * g);
                count += 1;
            }
        }
        reports.push(report(
            "fitting",
            json!({"ring": ring.to_string(), "max_norm_degree": 4, "primes": count}),
            ok,
            "exact",
            if bad.is_empty() { "n(P)-1 and n(P)-z^deg for every prime".into() } else { bad.join(", ") },
            "single invariant factor".into(),
        ));
    }
    Ok(CriterionResult { id: 8, title: "Fitting ideals n(P)-1 and n(P)-z^deg", reports })
}

pub fn criterion9(_level: Level) -> Result<CriterionResult> {
    Ok(CriterionResult { id: 9, title: "q = 2 period identity", reports: vec![verify_period_q2(2, 12)?] })
}

/// `exp_C̃(b Log_C̃(1))` evaluated numerically and rounded to `A[z]`.
fn numeric_unit(ring: &RingDescriptor, b: &Poly, prec: i64, zmax: usize) -> Result<Option<TatePoly<Poly>>> {
    let base = ring.base();
    let one = TatePoly::constant(LaurentSeries::one(base, prec), zmax);
    let l = log_z(&one, prec)?;
    let bl = l.map(|c| c.mul_poly(b))?;
    let e = exp_z(&bl, prec - b.deg())?;
    let mut out = Vec::new();
    for c in e.coeffs() {
        let (p, rest) = c.polynomial_part()?;
        if !rest.is_zero() {
            return Ok(None);
        }
        out.push(p);
    }
    Ok(Some(TatePoly::new(Poly::zero(base), zmax, out)?))
}

pub fn criterion10(level: Level) -> Result<CriterionResult> {
    let (prec, zmax) = (20, 6);
    let qs: &[u64] = if level == Level::Full { &[2, 3] } else { &[3] };
    let mut reports = Vec::new();
    for &q in qs {
        let ring = a(q);
        for b in ["1", "t", "t^2+1"] {
            let b = poly(&ring, b);
            let exact = deformed_unit(&b, zmax)?;
            let numeric = numeric_unit(&ring, &b, prec, zmax)?;
            let beta = stark_beta(&ring, std::slice::from_ref(&exact), prec, zmax)?;
            let ok = numeric.as_ref() == Some(&exact) && beta.beta.zdeg() == Some(0) && beta.beta.coeff(0) == b;
            reports.push(report(
                "stark_beta",
                json!({"q": q, "b": b.to_string(), "prec": prec, "zmax": zmax}),
                ok,
                &format!("t^-{prec}"),
                beta.render(),
                b.to_string(),
            ));
        }
    }
    Ok(CriterionResult { id: 10, title: "beta extraction", reports })
}

/// Checks outside the numbered criteria: class formulas with their negative control, and Leopoldt.
pub fn class_formula_checks(level: Level) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let r3 = a(3);
    let one = Poly::one(r3.base());
    let basis = UnitBasis::auto(&r3)?;
    for p in ["t", "t+1", "t^2+1"] {
        out.push(check_theorem4(&r3, &basis, &one, &poly(&r3, p), 1, 0)?);
    }
    let r9 = f9();
    let good = UnitBasis::supplied(&r9, vec![parse_poly(r9.field_l(), "1")?, parse_poly(r9.field_l(), "u")?])?;
    let bad = UnitBasis::supplied(&r9, vec![parse_poly(r9.field_l(), "t")?, parse_poly(r9.field_l(), "u")?])?;
    let f9_primes: &[&str] = if level == Level::Full { &["t", "t+1"] } else { &["t"] };
    for p in f9_primes {
        let p = poly(&r9, p);
        out.push(check_theorem4(&r9, &good, &Poly::one(r9.base()), &p, 0, 0)?);
        let neg = check_theorem4(&r9, &bad, &Poly::one(r9.base()), &p, 0, 0)?;
        let mut ctl = neg.clone();
        ctl.identity = "theorem4_negative_control".into();
        ctl.pass = !neg.pass;
        out.push(ctl);
    }
    for (q, n) in [(3u64, 8i64), (2, 8)] {
        let r = a(q);
        let t = poly(&r, "t");
        let rep = leopoldt_defect(&UnitBasis::auto(&r)?, &t, n, 0)?;
        out.push(report(
            "leopoldt",
            json!({"q": q, "P": "t", "N": n}),
            rep.certified_zero,
            &format!("P^{n}"),
            format!("rank_A={} certified rank >= {}", rep.rank_a, rep.rank_lower_bound),
            format!("defect <= {}", rep.defect_upper_bound),
        ));
    }
    Ok(out)
}

/// Criteria 1 to 10 in order.
pub fn run_criteria(level: Level) -> Result<Vec<CriterionResult>> {
    let fns: [fn(Level) -> Result<CriterionResult>; 10] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8, criterion9,
        criterion10,
    ];
    fns.iter().map(|f| f(level)).collect()
}
