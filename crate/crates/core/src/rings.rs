//! Supported rings of integers: `A = F_q[θ]` and the constant-field extensions
//! `O_L = F_{q^r}[θ]`, with their ideals, norms, primes and residue fields.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    enumerate_monics, factorize, is_irreducible, Carrier, FFElem, Field, FieldDescriptor, Poly,
};
use crate::error::{Error, Result};

/// `O_L = F_{q^r}[θ]` over `A = F_q[θ]`; genus 0, one place at infinity.
#[derive(Clone)]
pub struct RingDescriptor {
    q: u64,
    r: u32,
    base: Field,
    field_l: Field,
}

impl fmt::Debug for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "A(q={})", self.q)
        } else {
            write!(f, "Fq^r[t](q={},r={})", self.q, self.r)
        }
    }
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.r == other.r && *self.base == *other.base
    }
}

/// Split a prime power `q = p^k`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    Ok((p, k))
}

impl RingDescriptor {
    /// `F_{q^r}[θ]` with canonical moduli for `F_q` and `F_{q^r}`.
    pub fn new(q: u64, r: u32) -> Result<RingDescriptor> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let (p, k) = prime_power(q)?;
        let base = FieldDescriptor::canonical(p, k)?;
        let field_l = FieldDescriptor::canonical(p, k * r)?;
        Ok(RingDescriptor { q, r, base, field_l })
    }

    /// `A = F_q[θ]`.
    pub fn a(q: u64) -> Result<RingDescriptor> {
        Self::new(q, 1)
    }

    /// Parse `A`, `A(q=3)`, `Fq^r[t](q=3,r=2)` or `Fq^r[t](r=2)`; `default_q` fills a missing `q`.
    pub fn parse(text: &str, default_q: Option<u64>) -> Result<RingDescriptor> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(Error::Parse(format!("unbalanced ring specification {text}"))),
            None => (s.as_str(), ""),
        };
        let mut q = None;
        let mut r = None;
        for kv in args.split(',').filter(|a| !a.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("bad ring argument {kv}")))?;
            let v: u64 = v.parse().map_err(|_| Error::Parse(format!("bad ring argument {kv}")))?;
            match k {
                "q" => q = Some(v),
                "r" => r = Some(v as u32),
                _ => return Err(Error::Parse(format!("unknown ring argument {k}"))),
            }
        }
        let q = match (q, default_q) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidArgument(format!("ring says q={a} but q={b} was given")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::InvalidArgument("q is not specified".into())),
        };
        match head {
            "A" if r.is_none_or(|r| r == 1) => Self::new(q, 1),
            "Fq^r[t]" | "Fq^r[θ]" => Self::new(q, r.ok_or_else(|| Error::Parse("missing r".into()))?),
            _ => Err(Error::Parse(format!("unknown ring {text}"))),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `[L:K]`.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn degree_over_k(&self) -> u32 {
        self.r
    }

    pub fn genus(&self) -> u32 {
        0
    }

    /// `F_q`.
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `F_{q^r}`.
    pub fn field_l(&self) -> &Field {
        &self.field_l
    }

    /// `π̃ ∉ L_∞`: the value group of `L_∞` is `Z` while `v_∞(π̃) = -q/(q-1)`.
    pub fn is_real(&self) -> bool {
        self.q > 2
    }

    pub fn ideal(&self, gen: &Poly) -> Result<IdealHandle> {
        IdealHandle::new(self, gen)
    }

    /// The `F_q`-basis `1, u, ..., u^{r-1}` of `F_{q^r}`, `u` its canonical generator.
    pub fn l_basis(&self) -> Vec<FFElem> {
        let f = &self.field_l;
        let u = f.generator();
        let mut out = vec![FFElem::ONE];
        for _ in 1..self.r {
            out.push(f.mul(*out.last().unwrap(), u));
        }
        out
    }

    /// Coordinates over `F_q` in [`RingDescriptor::l_basis`], indexed by element index.
    pub fn l_coords(&self) -> Result<Vec<Vec<FFElem>>> {
        let f = &self.field_l;
        if self.r == 1 {
            return Ok(f.elements().map(|x| vec![x]).collect());
        }
        let emb = f.embedding_from(&self.base)?;
        let basis = self.l_basis();
        let q = self.q;
        let mut table = vec![Vec::new(); f.size() as usize];
        for idx in 0..q.pow(self.r) {
            let mut rest = idx;
            let mut x = FFElem::ZERO;
            let mut cs = Vec::with_capacity(basis.len());
            for b in &basis {
                let c = FFElem::from_index((rest % q) as u32);
                rest /= q;
                x = f.add(x, f.mul(emb.apply(c), *b));
                cs.push(c);
            }
            table[x.index() as usize] = cs;
        }
        Ok(table)
    }

    /// Split a polynomial over `F_{q^r}` as `Σ_j u^j c_j` with `c_j` over `F_q`.
    pub fn split_coords(&self, a: &Poly) -> Result<Vec<Poly>> {
        let a = a.lift_to(&self.field_l)?;
        let table = self.l_coords()?;
        let r = self.r as usize;
        let mut parts = vec![Vec::with_capacity(a.coeffs().len()); r];
        for c in a.coeffs() {
            for (j, x) in table[c.index() as usize].iter().enumerate() {
                parts[j].push(*x);
            }
        }
        Ok(parts.into_iter().map(|v| Poly::new(&self.base, v)).collect())
    }
}

/// A nonzero ideal of `O_L`, given by its monic generator.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealHandle {
    pub ring: RingDescriptor,
    pub gen: Poly,
}

impl IdealHandle {
    pub fn new(ring: &RingDescriptor, gen: &Poly) -> Result<IdealHandle> {
        if gen.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let g = gen.lift_to(ring.field_l())?.monic();
        Ok(IdealHandle { ring: ring.clone(), gen: g })
    }
}

/// `n(I) = ∏_{j<r} σ^j(g)` with `σ` the `q`-power map on coefficients, as an element of `A`.
pub fn ideal_norm(i: &IdealHandle) -> Result<Poly> {
    norm_of_poly(&i.ring, &i.gen)
}

pub(crate) fn norm_of_poly(ring: &RingDescriptor, g: &Poly) -> Result<Poly> {
    if g.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut acc = g.clone();
    for j in 1..ring.r {
        acc = &acc * &g.frobenius_coeffs(ring.q, j);
    }
    crate::carlitz::to_base(&acc.monic(), ring.base())
}

/// Ideals whose norm has degree `m`: monic generators of degree `m/r` when `r | m`.
pub fn ideals_of_norm_degree(ring: &RingDescriptor, m: usize) -> Box<dyn Iterator<Item = IdealHandle> + '_> {
    if !m.is_multiple_of(ring.r as usize) {
        return Box::new(std::iter::empty());
    }
    Box::new(
        enumerate_monics(ring.field_l(), m / ring.r as usize, None)
            .map(move |g| IdealHandle { ring: ring.clone(), gen: g }),
    )
}

/// A prime of `O_L` above `P`, with `n(𝔓) = P^f`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeAbove {
    pub ideal: IdealHandle,
    pub f: u32,
    pub norm: Poly,
}

/// Factor `P O_L`; for constant-field extensions there are `gcd(r, d)` primes, all with the same `f`.
pub fn primes_above(ring: &RingDescriptor, p: &Poly, seed: u64) -> Result<Vec<PrimeAbove>> {
    let p = crate::carlitz::to_base(p, ring.base())?;
    if !p.is_monic() || !is_irreducible(&p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let d = p.degree().unwrap();
    let fac = factorize(&p.lift_to(ring.field_l())?, seed)?;
    let mut out = Vec::new();
    let mut prod = Poly::one(ring.base());
    for (g, e) in fac.factors {
        debug_assert_eq!(e, 1);
        let ideal = IdealHandle { ring: ring.clone(), gen: g };
        let norm = ideal_norm(&ideal)?;
        let f = (norm.degree().unwrap() / d) as u32;
        prod = &prod * &norm;
        out.push(PrimeAbove { ideal, f, norm });
    }
    assert_eq!(prod, p.pow(ring.r as u64), "norms of the primes above P multiply to P^r");
    Ok(out)
}

/// `O_L/𝔓` as an explicit finite field, with the reduction map.
pub struct ResidueField {
    pub field: Field,
    pub ring: RingDescriptor,
    pub theta_bar: FFElem,
    from_l: Vec<FFElem>,
    from_base: Vec<FFElem>,
    to_base: HashMap<FFElem, FFElem>,
    basis_dim: usize,
    coords: Vec<Vec<FFElem>>,
}

impl fmt::Debug for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueField({:?}, theta_bar={})", self.field, self.field.render(self.theta_bar))
    }
}

/// Build the residue field of a prime ideal.
pub fn residue_field(prime: &IdealHandle) -> Result<Arc<ResidueField>> {
    let ring = &prime.ring;
    let g = &prime.gen;
    if !is_irreducible(g) {
        return Err(Error::NotIrreducible(g.to_string()));
    }
    let fl = ring.field_l();
    let big = FieldDescriptor::canonical(fl.characteristic() as u64, fl.degree() * g.degree().unwrap() as u32)?;
    let emb_l = big.embedding_from(fl)?;
    let from_l: Vec<FFElem> = fl.elements().map(|x| emb_l.apply(x)).collect();
    let emb_base = fl.embedding_from(ring.base())?;
    let from_base: Vec<FFElem> = ring.base().elements().map(|x| from_l[emb_base.apply(x).index() as usize]).collect();
    let to_base = from_base.iter().enumerate().map(|(i, &y)| (y, FFElem::from_index(i as u32))).collect();
    let gb: Vec<FFElem> = g.coeffs().iter().map(|c| from_l[c.index() as usize]).collect();
    let theta_bar = big
        .elements()
        .find(|&x| gb.iter().rev().fold(FFElem::ZERO, |acc, &c| big.add(big.mul(acc, x), c)).is_zero())
        .ok_or_else(|| Error::NotIrreducible(g.to_string()))?;
    let basis_dim = (big.degree() / ring.base().degree()) as usize;
    let mut rf = ResidueField { field: big, ring: ring.clone(), theta_bar, from_l, from_base, to_base, basis_dim, coords: Vec::new() };
    rf.coords = rf.coordinate_table();
    Ok(Arc::new(rf))
}

impl ResidueField {
    /// Reduce a polynomial over `F_q` or `F_{q^r}` modulo `𝔓`.
    pub fn reduce(&self, a: &Poly) -> Result<FFElem> {
        let f = &self.field;
        let map: &[FFElem] = if **a.field() == **self.ring.field_l() {
            &self.from_l
        } else if **a.field() == **self.ring.base() {
            &self.from_base
        } else {
            return Err(Error::FieldMismatch);
        };
        Ok(a.coeffs().iter().rev().fold(FFElem::ZERO, |acc, c| f.add(f.mul(acc, self.theta_bar), map[c.index() as usize])))
    }

    /// Image of `c ∈ F_q`.
    pub fn embed_base(&self, c: FFElem) -> FFElem {
        self.from_base[c.index() as usize]
    }

    /// `dim_{F_q} O_L/𝔓`.
    pub fn dim(&self) -> usize {
        self.basis_dim
    }

    /// The `F_q`-basis `1, u, ..., u^{m-1}` in the canonical generator `u`.
    pub fn basis(&self) -> Vec<FFElem> {
        let u = self.field.generator();
        let mut out = vec![FFElem::ONE];
        for _ in 1..self.basis_dim {
            out.push(self.field.mul(*out.last().unwrap(), u));
        }
        out
    }

    fn coordinate_table(&self) -> Vec<Vec<FFElem>> {
        let f = &self.field;
        let basis = self.basis();
        let q = self.ring.base().size() as u64;
        let mut table = vec![Vec::new(); f.size() as usize];
        let total = q.pow(self.basis_dim as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut cs = Vec::with_capacity(self.basis_dim);
            let mut x = FFElem::ZERO;
            for b in &basis {
                let c = FFElem::from_index((rest % q) as u32);
                rest /= q;
                x = f.add(x, f.mul(self.embed_base(c), *b));
                cs.push(c);
            }
            table[x.index() as usize] = cs;
        }
        table
    }

    /// Coordinates over `F_q` with respect to [`ResidueField::basis`].
    pub fn coords(&self, x: FFElem) -> Vec<FFElem> {
        self.coords[x.index() as usize].clone()
    }

    /// Preimage in `F_q` of an element of the image of `F_q`.
    pub fn base_preimage(&self, y: FFElem) -> Option<FFElem> {
        self.to_base.get(&y).copied()
    }
}

/// An element of a residue field, as a carrier of the Carlitz action.
#[derive(Clone, Debug)]
pub struct ResidueElem {
    pub rf: Arc<ResidueField>,
    pub x: FFElem,
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.rf, &other.rf) && self.x == other.x
    }
}

impl Carrier for ResidueElem {
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(ResidueElem { rf: self.rf.clone(), x: self.rf.field.add(self.x, other.x) })
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(ResidueElem { rf: self.rf.clone(), x: self.rf.field.mul(self.x, other.x) })
    }
    fn zero_like(&self) -> Self {
        ResidueElem { rf: self.rf.clone(), x: FFElem::ZERO }
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero()
    }
    fn frobenius(&self, q: u64) -> Self {
        ResidueElem { rf: self.rf.clone(), x: self.rf.field.pow(self.x, q) }
    }
    fn mul_poly(&self, a: &Poly) -> Result<Self> {
        Ok(ResidueElem { rf: self.rf.clone(), x: self.rf.field.mul(self.rf.reduce(a)?, self.x) })
    }
    fn neg(&self) -> Self {
        ResidueElem { rf: self.rf.clone(), x: self.rf.field.neg(self.x) }
    }
}
