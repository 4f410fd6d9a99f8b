//! Truncated elements of `K_P` (and of `O_L ⊗ A_P` for constant-field
//! extensions), stored as `P^v · unit + O(P^{v+N})` with the unit reduced
//! modulo `P^N`.

use std::fmt;
use std::sync::{Arc, Mutex};

use super::field::{FFElem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// The prime `P` together with the coefficient field the elements live over.
pub struct PAdicContext {
    prime: Poly,
    lifted: Poly,
    powers: Mutex<Vec<Poly>>,
}

impl fmt::Debug for PAdicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAdicContext({} over {:?})", self.prime, self.lifted.field())
    }
}

impl PAdicContext {
    /// `prime` must be monic irreducible over its field; `coeffs` is the field
    /// of the carrier (the same field, or a constant extension of it).
    pub fn new(prime: &Poly, coeffs: &Field) -> Result<Arc<PAdicContext>> {
        if !prime.is_monic() || !super::factor::is_irreducible(prime) {
            return Err(Error::NotIrreducible(prime.to_string()));
        }
        let lifted = prime.lift_to(coeffs)?;
        Ok(Arc::new(PAdicContext { prime: prime.clone(), lifted: lifted.clone(), powers: Mutex::new(vec![Poly::one(coeffs), lifted]) }))
    }

    /// `P` over the base field.
    pub fn prime(&self) -> &Poly {
        &self.prime
    }

    /// `P` over the coefficient field.
    pub fn lifted(&self) -> &Poly {
        &self.lifted
    }

    pub fn field(&self) -> &Field {
        self.lifted.field()
    }

    pub fn degree(&self) -> usize {
        self.prime.degree().unwrap()
    }

    /// `P^k` over the coefficient field (memoized).
    pub fn power(&self, k: usize) -> Poly {
        let mut cache = self.powers.lock().unwrap();
        while cache.len() <= k {
            let next = &cache[cache.len() - 1] * &self.lifted;
            cache.push(next);
        }
        cache[k].clone()
    }

    fn same(&self, other: &PAdicContext) -> bool {
        self.prime == other.prime && *self.field() == *other.field()
    }
}

/// `P^val · unit + O(P^{val+prec})`.
///
/// Zero to precision is stored with `prec == 0`, a zero unit and `val` equal
/// to the absolute precision.
#[derive(Clone)]
pub struct PAdicElem {
    ctx: Arc<PAdicContext>,
    val: i64,
    prec: i64,
    unit: Poly,
}

impl PartialEq for PAdicElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.val == other.val && self.prec == other.prec && self.unit == other.unit
    }
}
impl Eq for PAdicElem {}

impl fmt::Debug for PAdicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O(P^{})", self.val)
        } else {
            write!(f, "P^{}*({}) + O(P^{})", self.val, self.unit, self.abs_prec())
        }
    }
}

impl PAdicElem {
    /// Build from a valuation, relative precision and unit representative,
    /// pulling out any further powers of `P` from the unit.
    pub fn new(ctx: &Arc<PAdicContext>, val: i64, prec: i64, unit: Poly) -> PAdicElem {
        let mut e = PAdicElem { ctx: ctx.clone(), val, prec: prec.max(0), unit };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.prec <= 0 {
            self.set_zero(self.val + self.prec.max(0));
            return;
        }
        self.unit = self.unit.rem(&self.ctx.power(self.prec as usize));
        while !self.unit.is_zero() {
            let (q, r) = self.unit.divmod(&self.ctx.lifted).expect("nonzero prime");
            if !r.is_zero() {
                return;
            }
            self.unit = q;
            self.val += 1;
            self.prec -= 1;
            if self.prec == 0 {
                break;
            }
        }
        self.set_zero(self.val + self.prec);
    }

    fn set_zero(&mut self, abs: i64) {
        self.val = abs;
        self.prec = 0;
        self.unit = Poly::zero(self.ctx.field());
    }

    pub fn zero(ctx: &Arc<PAdicContext>, abs_prec: i64) -> PAdicElem {
        PAdicElem { ctx: ctx.clone(), val: abs_prec, prec: 0, unit: Poly::zero(ctx.field()) }
    }

    pub fn one(ctx: &Arc<PAdicContext>, abs_prec: i64) -> PAdicElem {
        Self::new(ctx, 0, abs_prec, Poly::one(ctx.field()))
    }

    /// Embed a polynomial of the carrier, known to absolute precision `abs_prec`.
    pub fn from_poly(ctx: &Arc<PAdicContext>, f: &Poly, abs_prec: i64) -> Result<PAdicElem> {
        let f = f.lift_to(ctx.field()).map_err(|_| Error::PrimeMismatch)?;
        Ok(Self::new(ctx, 0, abs_prec, f))
    }

    pub fn context(&self) -> &Arc<PAdicContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// `v_P`, `None` for zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// The valuation, or the absolute precision for zero.
    pub fn val_or_prec(&self) -> i64 {
        self.val
    }

    /// Relative precision.
    pub fn rel_prec(&self) -> i64 {
        self.prec
    }

    /// Absolute precision: the element is known modulo `P^{abs_prec}`.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.prec
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    fn check(&self, other: &PAdicElem) -> Result<()> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::PrimeMismatch);
        }
        Ok(())
    }

    /// Polynomial representative modulo `P^{abs_prec}` of an integral element.
    pub fn to_poly(&self) -> Result<Poly> {
        if self.val < 0 && !self.is_zero() {
            return Err(Error::OutsideDomain("element is not integral".into()));
        }
        if self.is_zero() {
            return Ok(Poly::zero(self.ctx.field()));
        }
        Ok(&self.unit * &self.ctx.power(self.val as usize))
    }

    /// Lower the absolute precision (never raise it).
    pub fn truncate(&self, abs_prec: i64) -> Result<PAdicElem> {
        if abs_prec > self.abs_prec() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot raise precision from {} to {abs_prec}",
                self.abs_prec()
            )));
        }
        if self.is_zero() || abs_prec <= self.val {
            return Ok(Self::zero(&self.ctx, abs_prec));
        }
        Ok(Self::new(&self.ctx, self.val, abs_prec - self.val, self.unit.clone()))
    }

    pub fn add(&self, other: &PAdicElem) -> Result<PAdicElem> {
        self.check(other)?;
        let abs = self.abs_prec().min(other.abs_prec());
        let v = self.val.min(other.val);
        if v >= abs {
            return Ok(Self::zero(&self.ctx, abs));
        }
        let mut acc = Poly::zero(self.ctx.field());
        for x in [self, other] {
            if !x.is_zero() && x.val < abs {
                acc = &acc + &(&x.unit * &self.ctx.power((x.val - v) as usize));
            }
        }
        Ok(Self::new(&self.ctx, v, abs - v, acc))
    }

    pub fn neg(&self) -> PAdicElem {
        PAdicElem { unit: -&self.unit, ..self.clone() }
    }

    pub fn sub(&self, other: &PAdicElem) -> Result<PAdicElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdicElem) -> Result<PAdicElem> {
        self.check(other)?;
        let abs = (self.abs_prec() + other.val).min(other.abs_prec() + self.val);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx, abs));
        }
        let v = self.val + other.val;
        let n = self.prec.min(other.prec);
        let unit = (&self.unit * &other.unit).rem(&self.ctx.power(n as usize));
        Ok(Self::new(&self.ctx, v, n, unit))
    }

    /// Multiply by an exact polynomial of the carrier.
    pub fn mul_poly(&self, f: &Poly) -> Result<PAdicElem> {
        // deg f bounds v_P(f), so this precision never limits the product
        let g = Self::from_poly(&self.ctx, f, self.prec + f.deg().max(0) + 1)?;
        self.mul(&g)
    }

    /// `P^{-v} u^{-1}`, with the unit inverted modulo `P^N` by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<PAdicElem> {
        if self.is_zero() {
            return Err(Error::InvertZero);
        }
        let m = self.ctx.power(self.prec as usize);
        let u = self
            .unit
            .inv_mod(&m)
            .ok_or_else(|| Error::NotInvertible(format!("{} is not a unit modulo {}", self.unit, self.ctx.lifted)))?;
        Ok(Self::new(&self.ctx, -self.val, self.prec, u))
    }

    pub fn div(&self, other: &PAdicElem) -> Result<PAdicElem> {
        self.mul(&other.inv()?)
    }

    /// `x ↦ x^q`; the relative precision is multiplied by `q` since `(a + b)^q = a^q + b^q`.
    pub fn frobenius(&self, base_q: u64) -> PAdicElem {
        let q = base_q as i64;
        if self.is_zero() {
            return Self::zero(&self.ctx, self.val * q);
        }
        let prec = self.prec * q;
        let unit = self.unit.tau(base_q).rem(&self.ctx.power(prec as usize));
        Self::new(&self.ctx, self.val * q, prec, unit)
    }

    /// Frobenius with the result's absolute precision capped at `abs_prec`.
    pub fn frobenius_truncated(&self, base_q: u64, abs_prec: i64) -> PAdicElem {
        let q = base_q as i64;
        if self.is_zero() || self.val * q >= abs_prec {
            return Self::zero(&self.ctx, (self.val * q).min(abs_prec));
        }
        let prec = (self.prec * q).min(abs_prec - self.val * q);
        let m = self.ctx.power(prec as usize);
        let unit = self.unit.rem(&m).pow_mod(base_q as u128, &m);
        Self::new(&self.ctx, self.val * q, prec, unit)
    }

    /// Residue modulo `P` of an integral element, as a polynomial of degree `< deg P`.
    pub fn residue(&self) -> Result<Poly> {
        if self.is_zero() {
            if self.val >= 1 {
                return Ok(Poly::zero(self.ctx.field()));
            }
            return Err(Error::PrecisionExhausted("residue not known".into()));
        }
        match self.val {
            v if v < 0 => Err(Error::OutsideDomain("element is not integral".into())),
            0 => Ok(self.unit.rem(&self.ctx.lifted)),
            _ => Ok(Poly::zero(self.ctx.field())),
        }
    }

    /// Scale by a constant of the coefficient field.
    pub fn scale(&self, c: FFElem) -> PAdicElem {
        Self::new(&self.ctx, self.val, self.prec, self.unit.scale(c))
    }

    /// Text form `P^v*(unit)+O(P^N)` with `t` for `θ`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return format!("O(P^{})", self.val);
        }
        format!("P^{}*({})+O(P^{})", self.val, self.unit, self.abs_prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    #[test]
    fn embed_pulls_out_prime() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let t = Poly::var(&f3);
        let ctx = PAdicContext::new(&t, &f3).unwrap();
        let x = PAdicElem::from_poly(&ctx, &t, 3).unwrap();
        assert_eq!(x.valuation(), Some(1));
        assert!(x.unit().is_one());
    }

    #[test]
    fn inverse_mod_theta_squared() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let ctx = PAdicContext::new(&Poly::var(&f3), &f3).unwrap();
        let x = PAdicElem::from_poly(&ctx, &Poly::from_ints(&f3, &[-1, 1]), 2).unwrap();
        let y = x.inv().unwrap();
        assert_eq!(y.valuation(), Some(0));
        assert_eq!(y.unit(), &Poly::from_ints(&f3, &[2, 2]));
    }

    #[test]
    fn prime_times_inverse_prime() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);
        let ctx = PAdicContext::new(&p, &f2).unwrap();
        let a = PAdicElem::new(&ctx, 1, 4, Poly::one(&f2));
        let b = PAdicElem::new(&ctx, -1, 4, Poly::one(&f2));
        let c = a.mul(&b).unwrap();
        assert_eq!(c, PAdicElem::one(&ctx, 4));
    }

    #[test]
    fn cancellation_keeps_absolute_precision() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let ctx = PAdicContext::new(&Poly::var(&f3), &f3).unwrap();
        let a = PAdicElem::from_poly(&ctx, &Poly::from_ints(&f3, &[1, 1, 1]), 5).unwrap();
        let b = PAdicElem::from_poly(&ctx, &Poly::from_ints(&f3, &[1, 1]), 4).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.abs_prec(), 4);
        let z = b.sub(&b).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 4);
        assert_eq!(z.inv().unwrap_err(), Error::InvertZero);
    }

    #[test]
    fn split_prime_non_units() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let p = Poly::from_ints(&f3, &[1, 0, 1]);
        let ctx = PAdicContext::new(&p, &f9).unwrap();
        let x = Poly::new(&f9, vec![f9.generator(), FFElem::ONE]);
        let e = PAdicElem::from_poly(&ctx, &x, 3).unwrap();
        assert!(matches!(e.inv(), Err(Error::NotInvertible(_))));
        let prod = e.mul(&PAdicElem::from_poly(&ctx, &Poly::new(&f9, vec![f9.neg(f9.generator()), FFElem::ONE]), 3).unwrap()).unwrap();
        assert_eq!(prod.valuation(), Some(1));
    }

    #[test]
    fn frobenius_matches_power() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let ctx = PAdicContext::new(&Poly::from_ints(&f3, &[1, 1]), &f3).unwrap();
        let a = PAdicElem::from_poly(&ctx, &Poly::from_ints(&f3, &[2, 0, 1]), 4).unwrap();
        let cube = a.mul(&a).unwrap().mul(&a).unwrap();
        assert_eq!(a.frobenius(3).truncate(cube.abs_prec()).unwrap(), cube);
    }
}
