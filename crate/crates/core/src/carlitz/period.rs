use crate::algebra::{FFElem, Field, LaurentSeries};
use crate::error::Result;

/// The Carlitz period `π̃ = (-θ)^{1/(q-1)} θ ∏_{i≥1} (1 - θ^{1-q^i})^{-1}`.
///
/// Only the unit part lies in `K_∞` when `q > 2`; `full` is present for `q = 2`,
/// where the root factor is `θ` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct CarlitzPeriod {
    pub q: u64,
    pub unit_part: LaurentSeries,
    pub full: Option<LaurentSeries>,
    /// Symbolic form of the factor left out of `unit_part`.
    pub root_factor: String,
}

/// `π̃` to precision `prec` (the unit part to `prec`, the full value for `q = 2` to `prec - 2`).
pub fn carlitz_period(base: &Field, prec: i64) -> Result<CarlitzPeriod> {
    let q = base.size() as u64;
    let mut unit = LaurentSeries::one(base, prec);
    let mut qi = q;
    // factor i is 1 + O(θ^{-(q^i - 1)}) and can be dropped once q^i - 1 ≥ prec
    while (qi as i64) - 1 < prec {
        let e = qi as i64 - 1;
        // (1 - θ^{-e})^{-1} = Σ_k θ^{-ke}
        let len = prec.max(0) as usize;
        let mut v = vec![FFElem::ZERO; len];
        let mut k = 0usize;
        while k < len {
            v[k] = FFElem::ONE;
            k += e as usize;
        }
        unit = unit.mul(&LaurentSeries::new(base, 0, prec, v))?;
        qi *= q;
    }
    let full = if q == 2 { Some(LaurentSeries::theta_power(base, -2, prec - 2).mul(&unit)?) } else { None };
    let root_factor = if q == 2 { "t^2".to_string() } else { format!("(-t)^(1/{})*t", q - 1) };
    Ok(CarlitzPeriod { q, unit_part: unit, full, root_factor })
}
