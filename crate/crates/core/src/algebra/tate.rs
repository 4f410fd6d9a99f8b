//! Polynomials in `z` truncated at a fixed degree, with coefficients in a carrier
//! (Laurent series, P-adic elements or exact polynomials).

use super::carrier::Carrier;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `Σ_{m ≤ zmax} c_m z^m`; coefficients past `zmax` are discarded by products.
#[derive(Clone, Debug, PartialEq)]
pub struct TatePoly<C> {
    zmax: usize,
    zero: C,
    coeffs: Vec<C>,
}

impl<C: Carrier> TatePoly<C> {
    /// `coeffs[m]` is the coefficient of `z^m`; `zero` fixes the parent of missing entries.
    pub fn new(zero: C, zmax: usize, coeffs: Vec<C>) -> Result<TatePoly<C>> {
        let mut t = TatePoly { zmax, zero, coeffs };
        if let Some(m) = t.zdeg() {
            if m > zmax {
                return Err(Error::ZDegreeOverflow { needed: m, bound: zmax });
            }
        }
        t.coeffs.truncate(zmax + 1);
        t.trim();
        Ok(t)
    }

    pub fn constant(c: C, zmax: usize) -> TatePoly<C> {
        TatePoly { zmax, zero: c.zero_like(), coeffs: vec![c] }
    }

    pub fn zero(zero: C, zmax: usize) -> TatePoly<C> {
        TatePoly { zmax, zero, coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zmax(&self) -> usize {
        self.zmax
    }

    /// Coefficient of `z^m`.
    pub fn coeff(&self, m: usize) -> C {
        self.coeffs.get(m).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Highest power of `z` with a nonzero coefficient.
    pub fn zdeg(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    /// Multiply by `z^k`, failing if a nonzero coefficient would be pushed past `zmax`.
    pub fn shift_z(&self, k: usize) -> Result<TatePoly<C>> {
        if let Some(m) = self.zdeg() {
            if m + k > self.zmax {
                return Err(Error::ZDegreeOverflow { needed: m + k, bound: self.zmax });
            }
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        TatePoly::new(self.zero.clone(), self.zmax, v)
    }

    /// Multiply by `z^k`, dropping what falls past `zmax`.
    pub fn shift_z_truncated(&self, k: usize) -> TatePoly<C> {
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        v.truncate(self.zmax + 1);
        let mut t = TatePoly { zmax: self.zmax, zero: self.zero.clone(), coeffs: v };
        t.trim();
        t
    }

    /// Specialize at `z = 1`.
    pub fn eval_one(&self) -> Result<C> {
        let mut acc = self.zero.clone();
        for c in &self.coeffs {
            acc = acc.add(c)?;
        }
        Ok(acc)
    }

    /// Apply a map to every coefficient.
    pub fn map<F: FnMut(&C) -> Result<C>>(&self, mut f: F) -> Result<TatePoly<C>> {
        let v = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        TatePoly::new(f(&self.zero)?, self.zmax, v)
    }
}

impl<C: Carrier> Carrier for TatePoly<C> {
    fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|m| self.coeff(m).add(&other.coeff(m))).collect::<Result<Vec<_>>>()?;
        let zero = self.zero.add(&other.zero)?;
        TatePoly::new(zero, self.zmax.min(other.zmax), v)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let zmax = self.zmax.min(other.zmax);
        let zero = self.zero.mul(&other.zero)?;
        let mut v: Vec<C> = vec![zero.clone(); (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(zmax + 1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > zmax {
                    break;
                }
                v[i + j] = v[i + j].add(&a.mul(b)?)?;
            }
        }
        TatePoly::new(zero, zmax, v)
    }

    fn zero_like(&self) -> Self {
        TatePoly { zmax: self.zmax, zero: self.zero.clone(), coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `τ` fixes `z`, so it acts coefficientwise.
    fn frobenius(&self, q: u64) -> Self {
        let mut t = TatePoly {
            zmax: self.zmax,
            zero: self.zero.frobenius(q),
            coeffs: self.coeffs.iter().map(|c| c.frobenius(q)).collect(),
        };
        t.trim();
        t
    }

    fn mul_poly(&self, a: &Poly) -> Result<Self> {
        self.map(|c| c.mul_poly(a))
    }

    fn neg(&self) -> Self {
        TatePoly { zmax: self.zmax, zero: self.zero.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
}

/// Render an exact `A[z]` element with `z` ascending, e.g. `1+(t+1)*z+t*z^2`.
pub fn render_poly_in_z(t: &TatePoly<Poly>) -> String {
    let mut terms = Vec::new();
    for (m, c) in t.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let zm = match m {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{m}"),
        };
        let cs = c.to_string();
        let compound = c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 || cs.contains('+');
        terms.push(if m == 0 {
            cs
        } else if c.is_one() {
            zm
        } else if compound {
            format!("({cs})*{zm}")
        } else {
            format!("{cs}*{zm}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    #[test]
    fn product_truncates_at_zmax() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let one = Poly::one(&f2);
        let zero = Poly::zero(&f2);
        let a = TatePoly::new(zero.clone(), 2, vec![one.clone(), one.clone()]).unwrap();
        let b = a.mul(&a).unwrap().mul(&a).unwrap();
        // (1+z)^3 = 1 + z + z^2 + z^3 in char 2, truncated at z^2
        assert_eq!(b.coeffs().len(), 3);
        assert!(b.coeffs().iter().all(|c| c.is_one()));
        assert!(matches!(a.shift_z(2), Err(Error::ZDegreeOverflow { needed: 3, bound: 2 })));
        assert_eq!(render_poly_in_z(&a), "1+z");
    }
}
