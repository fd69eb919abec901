//! Null polynomials: membership in N and N' over the base ring, the
//! criterion for vanishing identically on R[a_1..a_k], same-function
//! testing, canonical monic null polynomials, degree reduction of
//! representatives, and bounded enumeration of N_n / N'_n.
//!
//! Base-ring membership is decided by exhaustive evaluation — the rings are
//! small and evaluation is the definition.

use crate::error::Result;
use crate::exhaust::{self, EnumLimits};
use crate::poly::{induce_base, DualPoly, Poly};
use crate::ring::{FiniteRing, Ring};

/// f in N: the induced function on R is identically zero.
pub fn in_n(ring: &FiniteRing, f: &Poly) -> bool {
    ring.elements().all(|a| f.eval(ring, a) == 0)
}

/// f in N': both f and f' induce the zero function on R.
pub fn in_n_prime(ring: &FiniteRing, f: &Poly) -> bool {
    in_n(ring, f) && in_n(ring, &f.derivative(ring))
}

/// Criterion for a decomposed polynomial to vanish identically on the dual
/// ring: the constant part lies in N' and every alpha-part in N.
pub fn is_null_on_dual(ring: &FiniteRing, f: &DualPoly) -> bool {
    in_n_prime(ring, &f.f0) && f.parts.iter().all(|fi| in_n(ring, fi))
}

/// Whether f and g induce the same function on R[a_1..a_k]: f - g must be
/// null there.
pub fn same_function(ring: &FiniteRing, f: &DualPoly, g: &DualPoly) -> Result<bool> {
    Ok(is_null_on_dual(ring, &f.sub(ring, g)?))
}

/// prod_{r in R} (x - r): monic of degree |R|, null on R.
pub fn canonical_monic_null_base(ring: &FiniteRing) -> Poly {
    let mut prod = Poly::constant(ring.one());
    for r in ring.elements() {
        prod = prod.mul(ring, &Poly::from_coeffs(vec![ring.neg(r), ring.one()]));
    }
    prod
}

/// prod_{r in R} (x - r)^2: monic of degree 2|R|, null on R[a_1..a_k].
pub fn canonical_monic_null_dual(ring: &FiniteRing) -> Poly {
    let base = canonical_monic_null_base(ring);
    base.mul(ring, &base)
}

/// Division by a monic divisor: f = q * m + r with deg r < deg m.
pub fn divrem_monic<R: Ring>(ring: &R, f: &Poly, monic: &Poly) -> (Poly, Poly) {
    let md = monic.degree().expect("divisor must be nonzero");
    debug_assert_eq!(monic.coeff(md), ring.one(), "divisor must be monic");
    let mut rem = f.normalized();
    let mut quot = vec![ring.zero(); rem.coeffs.len().saturating_sub(md)];
    while let Some(d) = rem.degree() {
        if d < md {
            break;
        }
        let lead = rem.coeff(d);
        quot[d - md] = lead;
        for j in 0..=md {
            let t = ring.sub(rem.coeff(d - md + j), ring.mul(lead, monic.coeff(j)));
            rem.coeffs[d - md + j] = t;
        }
    }
    (Poly::from_coeffs(quot), rem.normalized())
}

/// Reduce a representative to the degree bounds deg f_0 < 2|R|,
/// deg f_i < |R| without changing the induced function on the dual ring.
pub fn reduce_representative(ring: &FiniteRing, f: &DualPoly) -> DualPoly {
    let h_dual = canonical_monic_null_dual(ring);
    let h_base = canonical_monic_null_base(ring);
    let f0 = divrem_monic(ring, &f.f0, &h_dual).1;
    let parts = f
        .parts
        .iter()
        .map(|fi| divrem_monic(ring, fi, &h_base).1)
        .collect();
    DualPoly { f0, parts }
}

/// Explicit members of N_n (or N'_n when `primed`): null polynomials of
/// degree < n, by exhaustive filtering of the coefficient space.
#[derive(Debug, Clone)]
pub struct BoundedNullSet {
    pub degree_bound: u32,
    pub primed: bool,
    pub members: Vec<Poly>,
}

pub fn enumerate_bounded_null(
    ring: &FiniteRing,
    degree_bound: u32,
    primed: bool,
    limits: &EnumLimits,
) -> Result<BoundedNullSet> {
    let order = ring.order();
    let total = limits.check_space(order, degree_bound)?;
    let members = exhaust::par_filter_map(total, limits.workers, |idx| {
        let mut coeffs = vec![0usize; degree_bound as usize];
        exhaust::digits_into(idx, order, &mut coeffs);
        let f = Poly::from_coeffs(coeffs);
        let keep = if primed {
            in_n_prime(ring, &f)
        } else {
            in_n(ring, &f)
        };
        keep.then_some(f)
    });
    Ok(BoundedNullSet {
        degree_bound,
        primed,
        members,
    })
}

/// Distinct derivative tables arising from null polynomials of degree < n.
/// Feeds the stabilizer machinery.
pub fn derivative_tables_of_bounded_null(
    ring: &FiniteRing,
    degree_bound: u32,
    limits: &EnumLimits,
) -> Result<Vec<crate::poly::FunctionTable>> {
    let set = enumerate_bounded_null(ring, degree_bound, false, limits)?;
    let mut tables: Vec<_> = set
        .members
        .iter()
        .map(|h| induce_base(ring, &h.derivative(ring)).values)
        .collect();
    tables.sort_unstable();
    tables.dedup();
    Ok(tables
        .into_iter()
        .map(|values| crate::poly::FunctionTable { values })
        .collect())
}
