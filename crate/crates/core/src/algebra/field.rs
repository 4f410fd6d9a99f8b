//! Finite fields `F_{p^k}` with an explicit modulus over the prime field.
//!
//! Elements are packed into a single integer: the coordinate vector
//! `(c_0, ..., c_{k-1})` with respect to powers of the generator `u` is stored
//! as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. This makes the integer order on
//! elements the lexicographic order with the constant coordinate varying
//! fastest, which is the order used by every enumeration in the crate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Upper bound on the size of fields with precomputed log tables.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of a finite field, meaningful only together with its [`Field`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    /// The packed index of the element.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn from_index(i: u32) -> FFElem {
        FFElem(i)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of `F_{p^k} = F_p[u]/(m(u))` together with its arithmetic tables.
pub struct FieldDescriptor {
    p: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    embeddings: Mutex<Vec<Arc<Embedding>>>,
}

/// Shared handle to a field.
pub type Field = Arc<FieldDescriptor>;

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FieldDescriptor {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply two coordinate vectors modulo a monic modulus over `F_p`.
fn slow_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|x| x as u32).collect()
}

fn digits(p: u32, k: u32, mut idx: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn pack(p: u32, ds: &[u32]) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn registry() -> &'static Mutex<HashMap<(u32, Vec<u32>), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u32, Vec<u32>), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_moduli() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldDescriptor {
    /// Build (or fetch from the process-wide cache) the field `F_{p^k}`.
    ///
    /// Without a modulus the canonical one is used: the first monic
    /// irreducible polynomial of degree `k` in index order.
    pub fn make(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let size = (p as u128).pow(k);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(Error::InvalidArgument(format!("field of size {size} is too large")));
        }
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p32) {
                    return Err(Error::InvalidArgument(
                        "modulus must be monic of degree k with coefficients in [0,p)".into(),
                    ));
                }
                let m = m.to_vec();
                if k > 1 && !modulus_is_irreducible(p32, &m)? {
                    return Err(Error::ReducibleModulus(render_modulus(&m)));
                }
                m
            }
            None => canonical_modulus(p32, k)?,
        };
        let key = (p32, modulus.clone());
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p32, k, modulus)?);
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(key).or_insert(field).clone())
    }

    /// The canonical field `F_{p^k}`.
    pub fn canonical(p: u64, k: u32) -> Result<Field> {
        Self::make(p, k, None)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Self::make(p, 1, None)
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Result<FieldDescriptor> {
        let size = p.pow(k);
        let order = size - 1;
        let mut log = vec![0u32; size as usize];
        let mut exp = vec![0u32; 2 * order.max(1) as usize];
        // smallest primitive element in index order
        let mut found = false;
        for g in 1..size {
            let gd = digits(p, k, g);
            let mut cur = digits(p, k, 1);
            let mut seen = vec![false; size as usize];
            let mut ok = true;
            for e in 0..order {
                let idx = pack(p, &cur);
                if seen[idx as usize] {
                    ok = false;
                    break;
                }
                seen[idx as usize] = true;
                exp[e as usize] = idx;
                log[idx as usize] = e;
                cur = slow_mul(p, &modulus, &cur, &gd);
            }
            if ok && pack(p, &cur) == 1 {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::ReducibleModulus(render_modulus(&modulus)));
        }
        for e in order..2 * order {
            exp[e as usize] = exp[(e - order) as usize];
        }
        let neg: Vec<u32> = (0..size)
            .map(|i| pack(p, &digits(p, k, i).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();
        let add = if k > 1 && p != 2 && size <= 512 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                let da = digits(p, k, a);
                for b in 0..size {
                    let db = digits(p, k, b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * size + b) as usize] = pack(p, &s);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(FieldDescriptor { p, k, size, modulus, exp, log, neg, add, embeddings: Mutex::new(Vec::new()) })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Modulus coefficients over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        render_modulus(&self.modulus)
    }

    /// Iterate over all elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.size).map(FFElem)
    }

    /// The generator `u` of the field over `F_p`.
    pub fn generator(&self) -> FFElem {
        if self.k == 1 {
            // the identity modulus `u` makes the generator the root 0
            FFElem(0)
        } else {
            FFElem(self.p)
        }
    }

    /// Embed an integer residue of the prime field.
    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from coordinates with respect to `1, u, u^2, ...` (reduced modulo `p`).
    pub fn from_coords(&self, coords: &[i64]) -> FFElem {
        let mut acc = FFElem::ZERO;
        let mut upow = FFElem::ONE;
        let u = self.generator();
        for &c in coords {
            acc = self.add(acc, self.mul(self.from_int(c), upow));
            upow = self.mul(upow, u);
        }
        acc
    }

    /// Coordinates of an element with respect to `1, u, ..., u^{k-1}`.
    pub fn coords(&self, x: FFElem) -> Vec<u32> {
        digits(self.p, self.k, x.0)
    }

    #[inline]
    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.k == 1 {
            let s = a.0 + b.0;
            FFElem(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FFElem(a.0 ^ b.0)
        } else if let Some(t) = &self.add {
            FFElem(t[(a.0 * self.size + b.0) as usize])
        } else {
            let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
            for _ in 0..self.k {
                out += ((x % self.p + y % self.p) % self.p) * scale;
                x /= self.p;
                y /= self.p;
                scale *= self.p;
            }
            FFElem(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FFElem) -> FFElem {
        FFElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.0 == 0 || b.0 == 0 {
            return FFElem::ZERO;
        }
        if self.k == 1 {
            return FFElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        FFElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        if order == 1 {
            return Some(a);
        }
        let l = self.log[a.0 as usize];
        Some(FFElem(self.exp[((order - l) % order) as usize]))
    }

    /// `a^e` for a non-negative exponent (`0^0 = 1`).
    pub fn pow(&self, a: FFElem, e: u64) -> FFElem {
        if e == 0 {
            return FFElem::ONE;
        }
        if a.0 == 0 {
            return FFElem::ZERO;
        }
        let order = (self.size - 1) as u64;
        if order == 1 {
            return a;
        }
        let l = self.log[a.0 as usize] as u64;
        FFElem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `x^{q^e}` where `q` is the size of the base field the Frobenius is taken over.
    pub fn frobenius(&self, x: FFElem, base_q: u64, e: u32) -> FFElem {
        if x.0 == 0 || self.size == 2 {
            return x;
        }
        let order = (self.size - 1) as u64;
        let mut exponent = 1u64;
        let b = base_q % order;
        for _ in 0..e {
            exponent = (exponent * b) % order;
        }
        if exponent == 0 {
            exponent = order;
        }
        self.pow(x, exponent)
    }

    /// Render an element as a polynomial in `u` with integer coefficients.
    pub fn render(&self, x: FFElem) -> String {
        let ds = self.coords(x);
        let mut terms = Vec::new();
        for (i, &c) in ds.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// True when the rendering of `x` needs parentheses as a coefficient.
    pub fn render_is_compound(&self, x: FFElem) -> bool {
        self.coords(x).iter().filter(|&&c| c != 0).count() > 1
    }

    /// The embedding of `small` into this field (cached).
    ///
    /// The image of the generator of `small` is the smallest root (in index
    /// order) of its modulus, which makes the embedding deterministic.
    pub fn embedding_from(self: &Arc<Self>, small: &Field) -> Result<Arc<Embedding>> {
        if small.p != self.p || !self.k.is_multiple_of(small.k) {
            return Err(Error::FieldMismatch);
        }
        {
            let cache = self.embeddings.lock().unwrap();
            if let Some(e) = cache.iter().find(|e| *e.source == **small) {
                return Ok(e.clone());
            }
        }
        let root = if small.k == 1 {
            FFElem::ZERO
        } else {
            self.elements()
                .find(|&r| {
                    let mut acc = FFElem::ZERO;
                    for &c in small.modulus.iter().rev() {
                        acc = self.add(self.mul(acc, r), self.from_int(c as i64));
                    }
                    acc.is_zero()
                })
                .ok_or(Error::FieldMismatch)?
        };
        let mut forward = Vec::with_capacity(small.size as usize);
        let mut back = vec![u32::MAX; self.size as usize];
        for x in small.elements() {
            let ds = small.coords(x);
            let mut acc = FFElem::ZERO;
            for &d in ds.iter().rev() {
                acc = self.add(self.mul(acc, root), self.from_int(d as i64));
            }
            back[acc.0 as usize] = x.0;
            forward.push(acc);
        }
        let emb = Arc::new(Embedding { source: small.clone(), target: self.clone(), forward, back });
        self.embeddings.lock().unwrap().push(emb.clone());
        Ok(emb)
    }
}

/// A field embedding `source -> target`.
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    forward: Vec<FFElem>,
    back: Vec<u32>,
}

impl Embedding {
    #[inline]
    pub fn apply(&self, x: FFElem) -> FFElem {
        self.forward[x.0 as usize]
    }

    /// Preimage of `y`, if it lies in the image.
    #[inline]
    pub fn preimage(&self, y: FFElem) -> Option<FFElem> {
        match self.back[y.0 as usize] {
            u32::MAX => None,
            i => Some(FFElem(i)),
        }
    }
}

pub(crate) fn render_modulus(m: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "u".into(),
            _ => format!("u^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn modulus_is_irreducible(p: u32, m: &[u32]) -> Result<bool> {
    use crate::algebra::poly::Poly;
    let fp = FieldDescriptor::prime(p as u64)?;
    let poly = Poly::new(&fp, m.iter().map(|&c| FFElem(c)).collect());
    Ok(crate::algebra::factor::is_irreducible(&poly))
}

fn canonical_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    if let Some(m) = canonical_moduli().lock().unwrap().get(&(p, k)) {
        return Ok(m.clone());
    }
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut m = digits(p, k, idx as u32);
        m.push(1);
        if modulus_is_irreducible(p, &m)? {
            canonical_moduli().lock().unwrap().insert((p, k), m.clone());
            return Ok(m);
        }
    }
    Err(Error::InvalidArgument(format!("no irreducible polynomial of degree {k} over F_{p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FieldDescriptor::make(2, 1, None).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(FFElem::ONE, FFElem::ONE), FFElem::ZERO);
    }

    #[test]
    fn canonical_f9_is_u2_plus_1() {
        // u^2, u^2+1 in index order: u^2 is reducible, u^2+1 has no root mod 3
        let f = FieldDescriptor::make(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let explicit = FieldDescriptor::make(3, 2, Some(&[1, 0, 1])).unwrap();
        assert!(Arc::ptr_eq(&f, &explicit));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldDescriptor::make(4, 1, None).unwrap_err(), Error::NonPrimeCharacteristic(4));
        // u^2+2 = (u+1)(u+2) over F_3
        assert!(matches!(FieldDescriptor::make(3, 2, Some(&[2, 0, 1])), Err(Error::ReducibleModulus(_))));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = FieldDescriptor::canonical(2, 2).unwrap();
        let u = f4.generator();
        // u^2 = u + 1
        assert_eq!(f4.frobenius(u, 2, 1), f4.add(u, FFElem::ONE));
        assert_eq!(f4.frobenius(FFElem::ONE, 2, 5), FFElem::ONE);
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let v = f9.generator();
        assert_eq!(f9.frobenius(v, 3, 2), v);
        assert_ne!(f9.frobenius(v, 3, 1), v);
    }

    #[test]
    fn frobenius_fixes_base_field_and_is_automorphism() {
        let f = FieldDescriptor::canonical(3, 4).unwrap();
        let f3 = FieldDescriptor::prime(3).unwrap();
        let emb = f.embedding_from(&f3).unwrap();
        for c in f3.elements() {
            let x = emb.apply(c);
            assert_eq!(f.frobenius(x, 3, 1), x);
        }
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                let fa = f.frobenius(a, 3, 1);
                let fb = f.frobenius(b, 3, 1);
                assert_eq!(f.frobenius(f.mul(a, b), 3, 1), f.mul(fa, fb));
                assert_eq!(f.frobenius(f.add(a, b), 3, 1), f.add(fa, fb));
            }
        }
    }

    #[test]
    fn inverse_and_pow() {
        let f = FieldDescriptor::canonical(2, 4).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElem::ONE);
            assert_eq!(f.pow(a, 15), FFElem::ONE);
        }
        assert_eq!(f.inv(FFElem::ZERO), None);
    }

    #[test]
    fn embedding_is_ring_map() {
        let f4 = FieldDescriptor::canonical(2, 2).unwrap();
        let f16 = FieldDescriptor::canonical(2, 4).unwrap();
        let e = f16.embedding_from(&f4).unwrap();
        for a in f4.elements() {
            assert_eq!(e.preimage(e.apply(a)), Some(a));
            for b in f4.elements() {
                assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
            }
        }
    }
}
