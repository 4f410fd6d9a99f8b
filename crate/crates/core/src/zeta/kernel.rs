//! Allocation-light dense arithmetic used in the inner loops of the power sums.

use crate::algebra::{FFElem, Field, Poly};

fn trim(v: &mut Vec<FFElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `acc += c · x^shift · b`.
fn axpy(f: &Field, acc: &mut Vec<FFElem>, c: FFElem, shift: usize, b: &[FFElem]) {
    if c.is_zero() {
        return;
    }
    if acc.len() < b.len() + shift {
        acc.resize(b.len() + shift, FFElem::ZERO);
    }
    for (i, &bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            acc[i + shift] = f.add(acc[i + shift], f.mul(c, bi));
        }
    }
}

/// Arithmetic in `F[θ]/(m)` for a fixed monic `m`, on coefficient vectors.
pub(crate) struct DenseMod {
    f: Field,
    m: Vec<FFElem>,
}

impl DenseMod {
    pub fn new(m: &Poly) -> DenseMod {
        assert!(m.is_monic());
        DenseMod { f: m.field().clone(), m: m.coeffs().to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    /// Reduce in place; the result has length exactly `deg m`.
    pub fn reduce(&self, a: &mut Vec<FFElem>) {
        let d = self.degree();
        let f = &self.f;
        while a.len() > d {
            let top = a.pop().unwrap();
            if !top.is_zero() {
                let k = a.len() - d;
                let c = f.neg(top);
                for i in 0..d {
                    if !self.m[i].is_zero() {
                        a[k + i] = f.add(a[k + i], f.mul(c, self.m[i]));
                    }
                }
            }
        }
        a.resize(d, FFElem::ZERO);
    }

    pub fn mul(&self, a: &[FFElem], b: &[FFElem]) -> Vec<FFElem> {
        let mut out = vec![FFElem::ZERO; (a.len() + b.len()).saturating_sub(1)];
        for (i, &ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                for (j, &bj) in b.iter().enumerate() {
                    if !bj.is_zero() {
                        out[i + j] = self.f.add(out[i + j], self.f.mul(ai, bj));
                    }
                }
            }
        }
        self.reduce(&mut out);
        out
    }

    pub fn pow(&self, a: &[FFElem], mut e: u64) -> Vec<FFElem> {
        let mut base = a.to_vec();
        self.reduce(&mut base);
        let mut out = vec![FFElem::ONE];
        self.reduce(&mut out);
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    /// Inverse by the extended Euclidean algorithm, tracking one cofactor only.
    pub fn inv(&self, a: &[FFElem]) -> Option<Vec<FFElem>> {
        let f = &self.f;
        let mut r1 = a.to_vec();
        self.reduce(&mut r1);
        trim(&mut r1);
        let mut r0 = self.m.clone();
        let mut s0: Vec<FFElem> = Vec::new();
        let mut s1: Vec<FFElem> = vec![FFElem::ONE];
        while !r1.is_empty() {
            // r0 <- r0 mod r1, s0 <- s0 - quot * s1
            let lead_inv = f.inv(*r1.last().unwrap()).unwrap();
            while r0.len() >= r1.len() {
                let shift = r0.len() - r1.len();
                let c = f.neg(f.mul(*r0.last().unwrap(), lead_inv));
                axpy(f, &mut r0, c, shift, &r1);
                axpy(f, &mut s0, c, shift, &s1);
                trim(&mut r0);
            }
            trim(&mut s0);
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut s0, &mut s1);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = f.inv(r0[0]).unwrap();
        let mut out: Vec<FFElem> = s0.iter().map(|&x| f.mul(x, c)).collect();
        self.reduce(&mut out);
        Some(out)
    }
}

/// `acc += x` coefficientwise.
pub(crate) fn add_into(f: &Field, acc: &mut Vec<FFElem>, x: &[FFElem]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), FFElem::ZERO);
    }
    for (a, &b) in acc.iter_mut().zip(x) {
        *a = f.add(*a, b);
    }
}

/// Product of two truncated power series in `θ^{-1}`, keeping `len` coefficients.
pub(crate) fn series_mul(f: &Field, a: &[FFElem], b: &[FFElem], len: usize) -> Vec<FFElem> {
    let mut out = vec![FFElem::ZERO; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] = f.add(out[i + j], f.mul(ai, bj));
            }
        }
    }
    out
}
