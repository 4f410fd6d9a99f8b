//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and randomized equal-degree splitting (Cantor–Zassenhaus).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FFElem;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Factorization `f = lead · ∏ g_i^{e_i}` with monic irreducible `g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: FFElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factors back together (including the leading coefficient).
    pub fn product(&self, f: &Poly) -> Poly {
        let mut acc = Poly::constant(f.field(), self.lead);
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e as u64);
        }
        acc
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `θ^{Q^e} mod f` for the coefficient field size `Q`.
fn frob_power_of_x(f: &Poly, e: usize) -> Poly {
    let q = f.field().size() as u128;
    let mut h = Poly::var(f.field()).rem(f);
    for _ in 0..e {
        h = h.pow_mod(q, f);
    }
    h
}

/// Rabin's irreducibility test over the coefficient field.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::var(f.field());
    if frob_power_of_x(&f, n) != x.rem(&f) {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = frob_power_of_x(&f, n / r);
        (&h - &x).gcd(&f).is_one()
    })
}

fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let e = (field.size() / field.characteristic()) as u64;
    let v = f.coeffs().iter().step_by(p).map(|&c| field.pow(c, e)).collect();
    Poly::new(field, v)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree, pairwise coprime, and `f = ∏ g^m`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().characteristic();
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let q = f.field().size() as u128;
    let x = Poly::var(f.field());
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn random_poly(f: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    let field = f.field();
    let n = f.degree().unwrap();
    let v = (0..n).map(|_| FFElem::from_index(rng.gen_range(0..field.size()))).collect();
    Poly::new(field, v)
}

/// Split a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.size() as u128;
    loop {
        let a = random_poly(f, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // trace map to F_2
            let bits = field.degree() as usize * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..bits {
                t = t.mul_mod(&t, f);
                acc = &acc + &t;
            }
            acc
        } else {
            // a^{(Q^d-1)/2} = (a^{1+Q+...+Q^{d-1}})^{(Q-1)/2}
            let mut norm = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.pow_mod(q, f);
                norm = norm.mul_mod(&t, f);
            }
            &norm.pow_mod((q - 1) / 2, f) - &Poly::one(field)
        };
        let g = b.gcd(f);
        if g.degree().unwrap_or(0) > 0 && g.degree() != f.degree() {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

fn canonical_key(p: &Poly) -> (usize, Vec<u32>) {
    (p.degree().unwrap_or(0), p.coeffs().iter().rev().map(|c| c.index()).collect())
}

/// Complete factorization; the output order is canonical and independent of the seed.
pub fn factorize(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = f.leading();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition(&monic) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, m));
            }
        }
    }
    factors.sort_by_key(|a| canonical_key(&a.0));
    // merge repeated factors
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { lead, factors: merged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldDescriptor;

    #[test]
    fn splits_over_f2() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let f = Poly::from_ints(&f2, &[0, 1, 1]);
        let fac = factorize(&f, 0).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_ints(&f2, &[0, 1]), 1), (Poly::from_ints(&f2, &[1, 1]), 1)]);
    }

    #[test]
    fn theta2_plus_1_over_f3_and_f9() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f = Poly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(factorize(&f, 0).unwrap().factors, vec![(f.clone(), 1)]);
        let f9 = FieldDescriptor::canonical(3, 2).unwrap();
        let g = f.lift_to(&f9).unwrap();
        let fac = factorize(&g, 0).unwrap();
        let u = f9.generator();
        let plus = Poly::new(&f9, vec![u, FFElem::ONE]);
        let minus = Poly::new(&f9, vec![f9.neg(u), FFElem::ONE]);
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.contains(&(plus, 1)));
        assert!(fac.factors.contains(&(minus, 1)));
    }

    #[test]
    fn repeated_factors_and_zero() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let a = Poly::from_ints(&f5, &[1, 1]);
        let b = Poly::from_ints(&f5, &[2, 0, 1]);
        let f = (&a.pow(5) * &b.pow(2)).scale(f5.from_int(3));
        let fac = factorize(&f, 7).unwrap();
        assert_eq!(fac.product(&f), f);
        assert!(fac.factors.contains(&(a, 5)));
        assert_eq!(factorize(&Poly::zero(&f5), 0).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 4 over F_2 is 3, over F_3 is 18
        for (p, expect) in [(2u64, 3usize), (3, 18)] {
            let f = FieldDescriptor::prime(p).unwrap();
            let n = crate::algebra::enumerate::enumerate_monics(&f, 4, None)
                .filter(is_irreducible)
                .count();
            assert_eq!(n, expect);
        }
    }
}
