//! Invariant factors and Fitting ideals of `C(O_L/𝔓)` over `A` and of its
//! z-deformation over `F_q(z)[θ]`, by Smith normal form.

use std::fmt;

use crate::algebra::{FFElem, Field, Poly};
use crate::error::{Error, Result};
use crate::rings::{ideal_norm, residue_field, IdealHandle};

/// A polynomial in `x` whose coefficients are polynomials in `z` over `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Poly>) -> BiPoly {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), coeffs: Vec::new() }
    }

    /// A polynomial in `z` alone.
    pub fn constant(c: Poly) -> BiPoly {
        let f = c.field().clone();
        BiPoly::new(&f, vec![c])
    }

    /// A polynomial in `x` with constant coefficients.
    pub fn from_x_poly(p: &Poly) -> BiPoly {
        let f = p.field();
        BiPoly::new(f, p.coeffs().iter().map(|&c| Poly::constant(f, c)).collect())
    }

    pub fn x(field: &Field) -> BiPoly {
        BiPoly::new(field, vec![Poly::zero(field), Poly::one(field)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`; `None` for zero.
    pub fn xdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree in `z` of the whole polynomial.
    pub fn zdeg(&self) -> i64 {
        self.coeffs.iter().map(Poly::deg).max().unwrap_or(-1)
    }

    /// Leading coefficient in `x`.
    pub fn lc(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Poly::zero(&self.field);
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        BiPoly::new(&self.field, c)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut c = vec![Poly::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BiPoly::new(&self.field, c)
    }

    /// `c(z) · x^k · self`.
    pub fn mul_term(&self, c: &Poly, k: usize) -> BiPoly {
        let mut v = vec![Poly::zero(&self.field); k];
        v.extend(self.coeffs.iter().map(|a| a * c));
        BiPoly::new(&self.field, v)
    }

    /// Monic gcd of the `z`-coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Poly {
        self.coeffs.iter().fold(Poly::zero(&self.field), |g, c| g.gcd(c))
    }

    pub fn div_z_exact(&self, c: &Poly) -> Option<BiPoly> {
        let v: Option<Vec<Poly>> = self.coeffs.iter().map(|a| a.div_exact(c)).collect();
        v.map(|v| BiPoly::new(&self.field, v))
    }

    pub fn scale(&self, c: FFElem) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Specialize `z ↦ c`, giving a polynomial in `x`.
    pub fn eval_z(&self, c: FFElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a.eval(c)).collect())
    }

    /// The polynomial in `x` when no coefficient involves `z`.
    pub fn to_x_poly(&self) -> Option<Poly> {
        (self.zdeg() <= 0).then(|| self.eval_z(FFElem::ZERO))
    }

    /// Pseudo-remainder by `p` over `F_q(z)[x]`: multiples of `lc(p)` are units there.
    pub fn pseudo_rem(&self, p: &BiPoly) -> BiPoly {
        let dp = p.xdeg().expect("nonzero divisor");
        let c = p.lc();
        let mut e = self.clone();
        while let Some(de) = e.xdeg() {
            if de < dp {
                break;
            }
            e = e.mul_term(&c, 0).sub(&p.mul_term(&e.lc(), de - dp));
        }
        e
    }

    /// Primitive in `z`, with the leading `z`-coefficient of the leading `x`-coefficient equal to 1.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        let p = self.div_z_exact(&g).expect("content divides");
        let lead = p.lc().leading();
        p.scale(self.field.inv(lead).unwrap())
    }

    /// Render with `x ↦ var`: descending in `var`, coefficients ascending in `z`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let cz = render_z_ascending(&self.field, c);
            let xk = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                cz
            } else if c.is_one() {
                xk
            } else if c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1 && !self.field.render_is_compound(c.leading()) {
                format!("{cz}*{xk}")
            } else {
                format!("({cz})*{xk}")
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

/// A polynomial in `z`, lowest degree first: `1+z^2`.
fn render_z_ascending(f: &Field, c: &Poly) -> String {
    let mut out = Vec::new();
    for (i, &a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{i}"),
        };
        out.push(if i == 0 {
            f.render(a)
        } else if a == FFElem::ONE {
            mono
        } else if f.render_is_compound(a) {
            format!("({})*{mono}", f.render(a))
        } else {
            format!("{}*{mono}", f.render(a))
        });
    }
    if out.is_empty() {
        "0".into()
    } else {
        out.join("+")
    }
}

/// Diagonal form from [`snf_polyring`]: all `m` diagonal entries, divisibility-ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFactors {
    pub factors: Vec<BiPoly>,
}

impl InvariantFactors {
    /// The factors of positive `x`-degree.
    pub fn nontrivial(&self) -> Vec<BiPoly> {
        self.factors.iter().filter(|f| f.xdeg() != Some(0)).cloned().collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.nontrivial().len() <= 1
    }

    /// Generator of the Fitting ideal: the product of the invariant factors.
    pub fn fitting(&self) -> BiPoly {
        let f = self.factors[0].field().clone();
        let one = BiPoly::constant(Poly::one(&f));
        self.factors.iter().fold(one, |acc, x| acc.mul(x)).normalized()
    }
}

fn row_normalize(row: &mut [BiPoly]) {
    let f = row[0].field().clone();
    let g = row.iter().fold(Poly::zero(&f), |g, e| g.gcd(&e.content()));
    if g.deg() > 0 {
        for e in row.iter_mut() {
            *e = e.div_z_exact(&g).expect("content divides");
        }
    }
}

/// Smith normal form over `F_q(z)[x]` by fraction-free elimination in `F_q[z][x]`.
///
/// Row and column operations only ever scale by nonzero elements of `F_q[z]`,
/// which are units over `F_q(z)`; contents are divided out after every step.
/// The pivot is the entry of lowest `x`-degree, ties broken by lowest `z`-degree then position.
pub fn snf_polyring(m: &[Vec<BiPoly>]) -> Result<InvariantFactors> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("snf_polyring needs a nonempty square matrix".into()));
    }
    let field = m[0][0].field().clone();
    let mut a: Vec<Vec<BiPoly>> = m.to_vec();
    for k in 0..n {
        loop {
            let mut best: Option<(usize, i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.xdeg() {
                        let key = (d, e.lc().deg(), i, j);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, _, pi, pj)) = best else { break };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k].clone();
            let dp = p.xdeg().unwrap();
            let c = p.lc();
            let mut dirty = false;
            // clear column k below the pivot
            for i in k + 1..n {
                while let Some(de) = a[i][k].xdeg() {
                    if de < dp {
                        dirty = true;
                        break;
                    }
                    let t = a[i][k].lc();
                    let pivot_row = a[k].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x = x.mul_term(&c, 0).sub(&y.mul_term(&t, de - dp));
                    }
                    row_normalize(&mut a[i]);
                }
            }
            // clear row k right of the pivot
            for j in k + 1..n {
                while let Some(de) = a[k][j].xdeg() {
                    if de < dp {
                        dirty = true;
                        break;
                    }
                    let t = a[k][j].lc();
                    for row in a.iter_mut() {
                        let y = row[k].clone();
                        row[j] = row[j].mul_term(&c, 0).sub(&y.mul_term(&t, de - dp));
                    }
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide everything left, else fold an offending row in
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[i][j].is_zero() && !a[i][j].pseudo_rem(&p).is_zero()));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[k].iter_mut().zip(&src) {
                        *x = x.add(y);
                    }
                }
                None => break,
            }
        }
    }
    let factors = (0..n)
        .map(|k| {
            let d = &a[k][k];
            if d.xdeg() == Some(0) {
                BiPoly::constant(Poly::one(&field))
            } else {
                d.normalized()
            }
        })
        .collect();
    Ok(InvariantFactors { factors })
}

/// `C_θ` (or `C̃_θ`) on `O_L/𝔓` in the monomial basis of the residue field over `F_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionMatrix {
    pub dim: usize,
    /// Multiplication by `θ̄`, column `j` the image of `u^j`.
    pub base: Vec<Vec<FFElem>>,
    /// The `q`-power Frobenius.
    pub frob: Vec<Vec<FFElem>>,
    pub deformed: bool,
    pub field: Field,
}

impl ActionMatrix {
    /// Entry `(i, j)` of `base + frob` (or `base + z·frob`) as a polynomial in `z`.
    pub fn entry(&self, i: usize, j: usize) -> Poly {
        let f = &self.field;
        if self.deformed {
            Poly::new(f, vec![self.base[i][j], self.frob[i][j]])
        } else {
            Poly::constant(f, f.add(self.base[i][j], self.frob[i][j]))
        }
    }

    /// `x·I - M` over `F_q[z][x]`.
    pub fn characteristic_matrix(&self) -> Vec<Vec<BiPoly>> {
        let x = BiPoly::x(&self.field);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let e = BiPoly::constant(self.entry(i, j));
                        if i == j {
                            x.sub(&e)
                        } else {
                            e.neg()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// The matrices of `x ↦ θ̄x` and `x ↦ x^q` on `O_L/𝔓`.
pub fn action_matrix(prime: &IdealHandle, deformed: bool) -> Result<ActionMatrix> {
    let rf = residue_field(prime)?;
    let q = prime.ring.q();
    let basis = rf.basis();
    let m = basis.len();
    let mut base = vec![vec![FFElem::ZERO; m]; m];
    let mut frob = vec![vec![FFElem::ZERO; m]; m];
    for (j, &b) in basis.iter().enumerate() {
        let tb = rf.coords(rf.field.mul(rf.theta_bar, b));
        let fb = rf.coords(rf.field.pow(b, q));
        for i in 0..m {
            base[i][j] = tb[i];
            frob[i][j] = fb[i];
        }
    }
    Ok(ActionMatrix { dim: m, base, frob, deformed, field: prime.ring.base().clone() })
}

/// Invariant factors of `C(O_L/𝔓)` as an `A`-module.
pub fn invariant_factors_a(m: &ActionMatrix) -> Result<InvariantFactors> {
    if m.deformed {
        return Err(Error::InvalidArgument("expected the undeformed action".into()));
    }
    snf_polyring(&m.characteristic_matrix())
}

/// Invariant factors of `C̃(O_L/𝔓)` over `F_q(z)[θ]`; cyclicity is required.
pub fn invariant_factors_deformed(m: &ActionMatrix) -> Result<InvariantFactors> {
    if !m.deformed {
        return Err(Error::InvalidArgument("expected the deformed action".into()));
    }
    let f = snf_polyring(&m.characteristic_matrix())?;
    if !f.is_cyclic() {
        return Err(Error::NonCyclicUnexpected(format!("{:?}", f.nontrivial())));
    }
    Ok(f)
}

/// Fitting ideal of `C(O_L/𝔓)` (or its deformation) with the expected
/// generator `n(𝔓) - 1` (or `n(𝔓) - z^{deg n(𝔓)}`).
#[derive(Clone, Debug, PartialEq)]
pub struct FittingReport {
    pub prime: IdealHandle,
    pub norm: Poly,
    pub deformed: bool,
    pub factors: InvariantFactors,
    pub fitting: BiPoly,
    pub expected: BiPoly,
}

impl FittingReport {
    pub fn matches(&self) -> bool {
        self.factors.is_cyclic() && self.fitting == self.expected
    }

    pub fn render(&self) -> String {
        self.fitting.render("t")
    }
}

pub fn fitting_ideal(prime: &IdealHandle, deformed: bool) -> Result<FittingReport> {
    let m = action_matrix(prime, deformed)?;
    let factors = if deformed { invariant_factors_deformed(&m)? } else { invariant_factors_a(&m)? };
    let fitting = factors.fitting();
    let norm = ideal_norm(prime)?;
    let f = prime.ring.base();
    let mut expected = BiPoly::from_x_poly(&norm);
    let deg = norm.degree().unwrap();
    let shift = if deformed { Poly::monomial(f, FFElem::ONE, deg) } else { Poly::one(f) };
    expected = expected.sub(&BiPoly::constant(shift));
    Ok(FittingReport { prime: prime.clone(), norm, deformed, factors, fitting, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::FieldDescriptor;
    use crate::rings::RingDescriptor;

    fn xp(f: &Field, cs: &[i64]) -> BiPoly {
        BiPoly::from_x_poly(&Poly::from_ints(f, cs))
    }

    #[test]
    fn snf_examples() {
        let f = FieldDescriptor::prime(3).unwrap();
        let one = xp(&f, &[1]);
        let zero = BiPoly::zero(&f);
        let id = snf_polyring(&[vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]).unwrap();
        assert!(id.factors.iter().all(|x| *x == one));
        let x = xp(&f, &[0, 1]);
        let x2 = xp(&f, &[0, 0, 1]);
        let d = snf_polyring(&[vec![x.clone(), zero.clone()], vec![zero.clone(), x2.clone()]]).unwrap();
        assert_eq!(d.factors, vec![x.clone(), x2.clone()]);
        let j = snf_polyring(&[vec![x.clone(), one.clone()], vec![zero.clone(), x.clone()]]).unwrap();
        assert_eq!(j.factors, vec![one.clone(), x2.clone()]);
        // diag(x, x+1) is cyclic: invariant factors 1, x(x+1)
        let c = snf_polyring(&[vec![x.clone(), zero.clone()], vec![zero, xp(&f, &[1, 1])]]).unwrap();
        assert_eq!(c.factors, vec![one, xp(&f, &[0, 1, 1])]);
    }

    #[test]
    fn action_examples() {
        let a2 = RingDescriptor::a(2).unwrap();
        let p = a2.ideal(&parse_poly(a2.base(), "t^2+t+1").unwrap()).unwrap();
        let m = action_matrix(&p, false).unwrap();
        let f = a2.base();
        let col = |j: usize| (m.entry(0, j), m.entry(1, j));
        assert_eq!(col(0), (Poly::one(f), Poly::one(f)));
        assert_eq!(col(1), (Poly::zero(f), Poly::zero(f)));
        let md = action_matrix(&p, true).unwrap();
        assert_eq!((md.entry(0, 0), md.entry(1, 0)), (Poly::var(f), Poly::one(f)));
        assert_eq!((md.entry(0, 1), md.entry(1, 1)), (Poly::from_ints(f, &[1, 1]), Poly::from_ints(f, &[1, 1])));
        let r = fitting_ideal(&p, false).unwrap();
        assert!(r.matches());
        assert_eq!(r.render(), "t^2+t");
        let r = fitting_ideal(&p, true).unwrap();
        assert!(r.matches());
        assert_eq!(r.render(), "t^2+t+1+z^2");
    }

    #[test]
    fn small_cases() {
        let a3 = RingDescriptor::a(3).unwrap();
        let t = a3.ideal(&Poly::var(a3.base())).unwrap();
        let m = action_matrix(&t, false).unwrap();
        assert_eq!(m.base, vec![vec![FFElem::ZERO]]);
        assert_eq!(m.frob, vec![vec![FFElem::ONE]]);
        assert_eq!(fitting_ideal(&t, false).unwrap().render(), "t+2");
        assert_eq!(fitting_ideal(&t, true).unwrap().render(), "t+2*z");
        let r = RingDescriptor::new(3, 2).unwrap();
        let t = r.ideal(&Poly::var(r.field_l())).unwrap();
        let rep = fitting_ideal(&t, false).unwrap();
        assert!(rep.matches());
        assert_eq!(rep.render(), "t^2+2");
    }
}
