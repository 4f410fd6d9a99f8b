use super::field::{FFElem, Field};
use super::poly::Poly;

/// Number of monic polynomials of degree `d`, if it fits in a `u64`.
pub fn monic_count(field: &Field, d: usize) -> u64 {
    (field.size() as u64).checked_pow(d as u32).expect("enumeration too large")
}

/// The monic polynomial of degree `d` with position `idx` in the enumeration
/// order (constant coefficient varying fastest).
pub fn monic_from_index(field: &Field, d: usize, mut idx: u64) -> Poly {
    let q = field.size() as u64;
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push(FFElem::from_index((idx % q) as u32));
        idx /= q;
    }
    v.push(FFElem::ONE);
    Poly::new(field, v)
}

/// Deterministic stream of the monic polynomials of degree `d`.
pub struct Monics {
    field: Field,
    degree: usize,
    next: u64,
    end: u64,
    skip: Option<Poly>,
}

impl Iterator for Monics {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        while self.next < self.end {
            let p = monic_from_index(&self.field, self.degree, self.next);
            self.next += 1;
            match &self.skip {
                Some(s) if s.divides(&p) => continue,
                _ => return Some(p),
            }
        }
        None
    }
}

/// Every monic polynomial of degree `d` exactly once, optionally dropping the
/// multiples of `skip_multiples_of`.
pub fn enumerate_monics(field: &Field, d: usize, skip_multiples_of: Option<&Poly>) -> Monics {
    Monics {
        field: field.clone(),
        degree: d,
        next: 0,
        end: monic_count(field, d),
        skip: skip_multiples_of.cloned(),
    }
}
