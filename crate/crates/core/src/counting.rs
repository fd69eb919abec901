//! Counting: |F(R[a..])|, |P(R[a..])|, stabilizer orders, the index
//! identities, and the reports tying formula values to enumeration oracles.
//!
//! Enumerations sweep equivalence-class representatives bounded by the
//! canonical monic null polynomials (constant part below degree 2|R|, the
//! alpha-parts below |R|) and dedupe value tables. The linear fast path
//! exploits that f -> ([f],[f']) is linear in the coefficients: the index is
//! the order of the row span of the monomial tables, echelonized over the
//! field or over the chain ring Z_{p^n} with annihilator tracking.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::dual::DualRing;
use crate::error::{Error, Result};
use crate::exhaust::{self, EnumLimits};
use crate::linalg;
use crate::null;
use crate::poly::{induce_base, induce_base_on_dual, DualPoly, Poly};
use crate::ring::{FiniteRing, Ring, RingSpec};

fn pow_u(base: &BigUint, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

fn bits_for(order: usize) -> u32 {
    (usize::BITS - (order - 1).leading_zeros()).max(1)
}

fn pack_table(values: &[usize], bits: u32) -> u128 {
    debug_assert!(bits as usize * values.len() <= 128);
    let mut key = 0u128;
    for (i, &v) in values.iter().enumerate() {
        key |= (v as u128) << (i as u32 * bits);
    }
    key
}

// ---------------------------------------------------------------------------
// Index enumeration: distinct function tables and pair tables
// ---------------------------------------------------------------------------

/// [R[x]:N] by enumeration: distinct value tables over representatives of
/// degree < |R|.
pub fn index_n_enum(ring: &FiniteRing, limits: &EnumLimits) -> Result<BigUint> {
    Ok(BigUint::from(function_table_keys(ring, limits)?.len() as u64))
}

/// [R[x]:N'] by enumeration: distinct ([f],[f']) pairs over representatives
/// of degree < 2|R|.
pub fn index_nprime_enum(ring: &FiniteRing, limits: &EnumLimits) -> Result<BigUint> {
    Ok(BigUint::from(pair_table_keys(ring, limits)?.len() as u64))
}

fn check_pack_width(entries: usize, bits: u32) -> Result<()> {
    if bits as usize * entries > 128 {
        return Err(Error::UnsupportedVariant(
            "value table too wide for packed enumeration".into(),
        ));
    }
    Ok(())
}

fn function_table_keys(ring: &FiniteRing, limits: &EnumLimits) -> Result<Vec<u128>> {
    let b = ring.order();
    let total = limits.check_space(b, b as u32)?;
    let bits = bits_for(b);
    check_pack_width(b, bits)?;
    Ok(exhaust::par_distinct_keys(total, limits.workers, |idx| {
        let mut coeffs = vec![0usize; b];
        exhaust::digits_into(idx, b, &mut coeffs);
        let f = Poly::from_coeffs(coeffs);
        let values: Vec<usize> = ring.elements().map(|a| f.eval(ring, a)).collect();
        Some(pack_table(&values, bits))
    }))
}

/// Packed ([f],[f']) keys over the degree < 2|R| representative space,
/// optionally restricted to pairs with bijective [f] and unit-valued [f'].
fn pair_table_keys_filtered(
    ring: &FiniteRing,
    limits: &EnumLimits,
    only_b: bool,
) -> Result<Vec<u128>> {
    let b = ring.order();
    let total = limits.check_space(b, 2 * b as u32)?;
    let bits = bits_for(b);
    check_pack_width(2 * b, bits)?;
    Ok(exhaust::par_distinct_keys(total, limits.workers, |idx| {
        let mut coeffs = vec![0usize; 2 * b];
        exhaust::digits_into(idx, b, &mut coeffs);
        let f = Poly::from_coeffs(coeffs);
        let df = f.derivative(ring);
        let mut values = Vec::with_capacity(2 * b);
        values.extend(ring.elements().map(|a| f.eval(ring, a)));
        values.extend(ring.elements().map(|a| df.eval(ring, a)));
        if only_b {
            let table = crate::poly::FunctionTable {
                values: values[..b].to_vec(),
            };
            if !table.is_bijective() || values[b..].iter().any(|&d| !ring.is_unit(d)) {
                return None;
            }
        }
        Some(pack_table(&values, bits))
    }))
}

fn pair_table_keys(ring: &FiniteRing, limits: &EnumLimits) -> Result<Vec<u128>> {
    pair_table_keys_filtered(ring, limits, false)
}

/// B: the number of pairs (H, G) = ([g],[g']) with H bijective and G
/// unit-valued, by enumeration.
pub fn b_count_enum(ring: &FiniteRing, limits: &EnumLimits) -> Result<BigUint> {
    Ok(BigUint::from(
        pair_table_keys_filtered(ring, limits, true)?.len() as u64,
    ))
}

/// |P(R)| by exhaustive table search over degree < |R| representatives.
pub fn perm_count_base_enum(ring: &FiniteRing, limits: &EnumLimits) -> Result<BigUint> {
    let b = ring.order();
    let total = limits.check_space(b, b as u32)?;
    let bits = bits_for(b);
    check_pack_width(b, bits)?;
    let keys = exhaust::par_distinct_keys(total, limits.workers, |idx| {
        let mut coeffs = vec![0usize; b];
        exhaust::digits_into(idx, b, &mut coeffs);
        let f = Poly::from_coeffs(coeffs);
        let table = induce_base(ring, &f);
        table.is_bijective().then(|| pack_table(&table.values, bits))
    });
    Ok(BigUint::from(keys.len() as u64))
}

// ---------------------------------------------------------------------------
// Linear fast path for the indices
// ---------------------------------------------------------------------------

/// [R[x]:N] (or [R[x]:N'] when `primed`) as the order of the additive span
/// of the monomial (pair) tables.
pub fn index_via_linear(ring: &FiniteRing, primed: bool) -> Result<BigUint> {
    match ring.spec() {
        RingSpec::ZModPrimePower { p, n } => {
            let rows = monomial_rows_zpn(ring, primed);
            Ok(linalg::span_order_chain(rows, *p, *n))
        }
        RingSpec::GaloisField { .. } => {
            let b = ring.order();
            let degree_bound = if primed { 2 * b } else { b };
            let rows: Vec<Vec<usize>> = (0..degree_bound)
                .map(|j| monomial_pair_row(ring, j, primed))
                .collect();
            Ok(linalg::span_order_field(rows, ring))
        }
        RingSpec::DirectSum { .. } => {
            // Value tables split componentwise, so the indices multiply.
            let mut acc = BigUint::one();
            for part in ring.summands() {
                acc *= index_via_linear(part, primed)?;
            }
            Ok(acc)
        }
    }
}

fn monomial_rows_zpn(ring: &FiniteRing, primed: bool) -> Vec<Vec<u64>> {
    let m = ring.order() as u64;
    let degree_bound = if primed { 2 * m } else { m };
    (0..degree_bound)
        .map(|j| {
            monomial_pair_row(ring, j as usize, primed)
                .into_iter()
                .map(|v| v as u64)
                .collect()
        })
        .collect()
}

/// Value table of x^j, concatenated with the table of (x^j)' when `primed`.
fn monomial_pair_row(ring: &FiniteRing, j: usize, primed: bool) -> Vec<usize> {
    let b = ring.order();
    let mut monomial = vec![0usize; j + 1];
    monomial[j] = ring.one();
    let f = Poly::from_coeffs(monomial);
    let mut row: Vec<usize> = ring.elements().map(|a| f.eval(ring, a)).collect();
    if primed {
        let df = f.derivative(ring);
        row.extend(ring.elements().map(|a| df.eval(ring, a)));
        debug_assert_eq!(row.len(), 2 * b);
    }
    row
}

// ---------------------------------------------------------------------------
// Stabilizer of R inside P(R[a_1..a_k])
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabMethod {
    Enumeration,
    FieldFormula,
    IndexFormula,
}

impl std::str::FromStr for StabMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumeration" | "enum" => Ok(StabMethod::Enumeration),
            "field_formula" | "field" => Ok(StabMethod::FieldFormula),
            "index_formula" | "index" => Ok(StabMethod::IndexFormula),
            other => Err(Error::MethodMismatch(format!("unknown stab method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabResult {
    pub order: BigUint,
    pub method: StabMethod,
    /// Size of {[h'] : h accepted} when the enumeration ran.
    pub derivative_image_size: Option<usize>,
}

/// Order of the pointwise stabilizer of R inside P(R[a_1..a_k]).
pub fn stab_order(
    ring: &FiniteRing,
    k: u32,
    method: StabMethod,
    limits: &EnumLimits,
) -> Result<StabResult> {
    if k < 1 {
        return Err(Error::MethodMismatch(
            "the stabilizer needs at least one dual variable".into(),
        ));
    }
    match method {
        StabMethod::FieldFormula => {
            if !ring.is_field() {
                return Err(Error::FieldRequired);
            }
            let q = ring.order() as u64;
            Ok(StabResult {
                order: pow_u(&BigUint::from(q - 1), q),
                method,
                derivative_image_size: None,
            })
        }
        StabMethod::IndexFormula => {
            for summand in ring.summands() {
                if summand.is_field() {
                    return Err(Error::FieldSummand {
                        summand: summand.spec_string(),
                    });
                }
            }
            Ok(StabResult {
                order: null_index_ratio(ring, limits)?,
                method,
                derivative_image_size: None,
            })
        }
        StabMethod::Enumeration => stab_enumeration(ring, k, limits),
    }
}

/// [N:N'] as |N_n| / |N'_n| with n = 2|R|, by literal bounded enumeration
/// when the coefficient space fits the budget, else by kernel sizes of the
/// linear table maps.
pub fn null_index_ratio(ring: &FiniteRing, limits: &EnumLimits) -> Result<BigUint> {
    let b = ring.order();
    let n = 2 * b as u32;
    if limits.check_space(b, n).is_ok() {
        let n_set = null::enumerate_bounded_null(ring, n, false, limits)?;
        let np_set = null::enumerate_bounded_null(ring, n, true, limits)?;
        let num = n_set.members.len() as u64;
        let den = np_set.members.len() as u64;
        assert_eq!(num % den, 0, "|N_n| must be a multiple of |N'_n|");
        return Ok(BigUint::from(num / den));
    }
    // |N_n| = |R|^n / span(tables), |N'_n| = |R|^n / span(pair tables), so
    // the ratio is span(pair) / span(plain).
    let plain = index_via_linear(ring, false)?;
    let pair = index_via_linear(ring, true)?;
    let (q, r) = num_integer_div_rem(&pair, &plain);
    assert!(r == BigUint::ZERO, "pair span must be a multiple of the plain span");
    Ok(q)
}

fn num_integer_div_rem(a: &BigUint, b: &BigUint) -> (BigUint, BigUint) {
    (a / b, a % b)
}

fn stab_enumeration(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Result<StabResult> {
    let dr = DualRing::new(ring.clone(), k)?;
    let b = ring.order();
    let n = 2 * b as u32;
    let reps: Vec<Poly> = if limits.check_space(b, n).is_ok() {
        null::enumerate_bounded_null(ring, n, false, limits)?.members
    } else if let RingSpec::ZModPrimePower { p, n: exp } = ring.spec() {
        null_derivative_class_reps_zpn(ring, *p, *exp, n)
    } else {
        limits.check_space(b, n)?;
        unreachable!()
    };

    let x = Poly::x(ring);
    let mut tables: Vec<Vec<u32>> = Vec::new();
    let mut dimage: Vec<Vec<usize>> = Vec::new();
    for h in &reps {
        debug_assert!(null::in_n(ring, h));
        let f = x.add(ring, h);
        let table = induce_base_on_dual(&dr, &f);
        let accepted = table.is_bijective();
        debug_assert_eq!(
            accepted,
            crate::perm::dual_criterion_holds(ring, &DualPoly::from_base(f.clone(), k)),
            "criterion and exhaustive bijectivity must agree"
        );
        if !accepted {
            continue;
        }
        // Stabilizer members fix the embedded base ring pointwise.
        debug_assert!((0..b).all(|a| table.values[a] == a));
        tables.push(table.values.iter().map(|&v| v as u32).collect());
        dimage.push(induce_base(ring, &h.derivative(ring)).values);
    }
    tables.sort_unstable();
    tables.dedup();
    dimage.sort_unstable();
    dimage.dedup();
    Ok(StabResult {
        order: BigUint::from(tables.len() as u64),
        method: StabMethod::Enumeration,
        derivative_image_size: Some(dimage.len()),
    })
}

/// One null polynomial of degree < `degree_bound` per distinct derivative
/// table, for chain rings whose raw coefficient space exceeds any budget.
///
/// The kernel of the coefficients-to-table map is computed exactly; the
/// derivative-table image of that kernel is then closed under addition with
/// representatives tracked.
fn null_derivative_class_reps_zpn(
    ring: &FiniteRing,
    p: u64,
    exp: u32,
    degree_bound: u32,
) -> Vec<Poly> {
    let m = ring.order() as u64;
    let rows: Vec<Vec<u64>> = (0..degree_bound as usize)
        .map(|j| {
            monomial_pair_row(ring, j, false)
                .into_iter()
                .map(|v| v as u64)
                .collect()
        })
        .collect();
    let kernel = linalg::kernel_basis_chain(&rows, p, exp);
    let gens: Vec<(Vec<usize>, Poly)> = kernel
        .into_iter()
        .map(|coeffs| {
            let h = Poly::from_coeffs(coeffs.into_iter().map(|c| c as usize).collect());
            debug_assert!(null::in_n(ring, &h));
            let dtable = induce_base(ring, &h.derivative(ring)).values;
            (dtable, h)
        })
        .collect();
    // Breadth-first closure of the derivative-table group, keyed by table.
    let zero_table = vec![0usize; m as usize];
    let mut reps: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
    reps.insert(zero_table.clone(), Poly::zero());
    let mut frontier = vec![zero_table];
    while let Some(t) = frontier.pop() {
        let rep = reps[&t].clone();
        for (dt, h) in &gens {
            let sum: Vec<usize> = t
                .iter()
                .zip(dt)
                .map(|(&a, &b)| ring.add(a, b))
                .collect();
            if !reps.contains_key(&sum) {
                reps.insert(sum.clone(), rep.add(ring, h));
                frontier.push(sum);
            }
        }
    }
    reps.into_values().collect()
}

/// Stabilizer orders agree across k = 1..=k_max.
pub fn stab_independence_check(
    ring: &FiniteRing,
    k_max: u32,
    limits: &EnumLimits,
) -> Result<bool> {
    let first = stab_order(ring, 1, StabMethod::Enumeration, limits)?;
    for k in 2..=k_max {
        let other = stab_order(ring, k, StabMethod::Enumeration, limits)?;
        if other.order != first.order {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Counting formulas and enumerations
// ---------------------------------------------------------------------------

/// |F(R[a_1..a_k])| by formula: q^{(k+2)q} over a field, else
/// [R[x]:N'] [R[x]:N]^k through the linear fast path. k = 0 degenerates to
/// the base-ring function count.
pub fn count_functions_formula(ring: &FiniteRing, k: u32) -> Result<BigUint> {
    if ring.is_field() {
        let q = ring.order() as u64;
        let exponent = if k == 0 { q } else { (k as u64 + 2) * q };
        return Ok(pow_u(&BigUint::from(q), exponent));
    }
    let n = index_via_linear(ring, false)?;
    if k == 0 {
        return Ok(n);
    }
    Ok(index_via_linear(ring, true)? * pow_u(&n, k as u64))
}

/// |F(R[a_1..a_k])| by class enumeration: distinct pair tables of the
/// constant part times distinct function tables per alpha-part.
pub fn count_functions_enum(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Result<BigUint> {
    let n = index_n_enum(ring, limits)?;
    if k == 0 {
        return Ok(n);
    }
    Ok(index_nprime_enum(ring, limits)? * pow_u(&n, k as u64))
}

/// |P(R[a_1..a_k])| by formula: q!(q-1)^q q^{kq} over a field, else the
/// assembly |F(R)|^k |P(R)| |Stab| with |P(R)| by exhaustive search and the
/// stabilizer by the index formula.
pub fn count_perms_formula(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Result<BigUint> {
    if ring.is_field() {
        let q = ring.order() as u64;
        if k == 0 {
            return Ok(factorial(q));
        }
        return Ok(factorial(q) * pow_u(&BigUint::from(q - 1), q) * pow_u(&BigUint::from(q), k as u64 * q));
    }
    if k == 0 {
        return Err(Error::MethodMismatch(
            "no closed form for base-ring permutation counts; use enumeration".into(),
        ));
    }
    let stab = stab_order(ring, k, StabMethod::IndexFormula, limits)?;
    let p_r = perm_count_base_enum(ring, limits)?;
    let n = index_via_linear(ring, false)?;
    Ok(pow_u(&n, k as u64) * p_r * stab.order)
}

/// |P(R[a_1..a_k])| by enumeration: B (bijective, unit-derivative pairs)
/// times the function count per alpha-part.
pub fn count_perms_enum(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Result<BigUint> {
    if k == 0 {
        return perm_count_base_enum(ring, limits);
    }
    let b = b_count_enum(ring, limits)?;
    let n = index_n_enum(ring, limits)?;
    Ok(b * pow_u(&n, k as u64))
}

// ---------------------------------------------------------------------------
// Fully naive census over the dual ring
// ---------------------------------------------------------------------------

/// Counts from a single sweep that materializes the complete value table on
/// R[a_1..a_k] of every representative polynomial and dedupes: all induced
/// functions, the bijective ones, and the bijective ones fixing R pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCensus {
    pub functions: BigUint,
    pub perms: BigUint,
    pub stab: BigUint,
}

pub fn naive_dual_census(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Result<DualCensus> {
    let dr = DualRing::new(ring.clone(), k)?;
    let b = ring.order();
    let d1 = 2 * b;
    let d2 = b;
    let digit_count = (d1 + k as usize * d2) as u32;
    let total = limits.check_space(b, digit_count)?;
    let dorder = dr.order();
    let bits = bits_for(dorder);
    check_pack_width(dorder, bits)?;

    // Cache constant-part value/derivative tables and alpha-part tables.
    let s0 = (b as u64).pow(d1 as u32);
    let s1 = (b as u64).pow(d2 as u32);
    let f0_tables: Vec<(Vec<usize>, Vec<usize>)> = (0..s0)
        .map(|i0| {
            let mut coeffs = vec![0usize; d1];
            exhaust::digits_into(i0, b, &mut coeffs);
            let f0 = Poly::from_coeffs(coeffs);
            let df0 = f0.derivative(ring);
            (
                ring.elements().map(|a| f0.eval(ring, a)).collect(),
                ring.elements().map(|a| df0.eval(ring, a)).collect(),
            )
        })
        .collect();
    let part_tables: Vec<Vec<usize>> = (0..s1)
        .map(|i| {
            let mut coeffs = vec![0usize; d2];
            exhaust::digits_into(i, b, &mut coeffs);
            let fi = Poly::from_coeffs(coeffs);
            ring.elements().map(|a| fi.eval(ring, a)).collect()
        })
        .collect();
    let points: Vec<crate::dual::DualElement> = dr.elements().map(|x| dr.decode(x)).collect();

    let workers = limits.workers.max(1);
    let chunk = total.div_ceil(workers as u64);
    let parts_total = s1.pow(k);
    let kus = k as usize;

    let mut all: Vec<HashSet<u128>> = Vec::with_capacity(workers);
    let mut perms: Vec<HashSet<u128>> = Vec::with_capacity(workers);
    let mut stab: Vec<HashSet<u128>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let f0_tables = &f0_tables;
                let part_tables = &part_tables;
                let points = &points;
                let dr = &dr;
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                scope.spawn(move || {
                    let mut all = HashSet::new();
                    let mut perms = HashSet::new();
                    let mut stab = HashSet::new();
                    let mut part_idx = vec![0usize; kus];
                    let mut table = vec![0usize; dorder];
                    for idx in lo..hi {
                        let i0 = (idx / parts_total) as usize;
                        let mut rest = idx % parts_total;
                        for slot in part_idx.iter_mut() {
                            *slot = (rest % s1) as usize;
                            rest /= s1;
                        }
                        let (vals, dvals) = &f0_tables[i0];
                        let mut seen: u128 = 0;
                        let mut bijective = true;
                        for (x, pt) in points.iter().enumerate() {
                            let a0 = pt.a0;
                            let d = dvals[a0];
                            let mut out = 0usize;
                            for (j, &aj) in pt.parts.iter().enumerate().rev() {
                                let coord = ring
                                    .add(ring.mul(aj, d), part_tables[part_idx[j]][a0]);
                                out = out * b + coord;
                            }
                            let v = out * b + vals[a0];
                            table[x] = v;
                            let mask = 1u128 << v;
                            if seen & mask != 0 {
                                bijective = false;
                            }
                            seen |= mask;
                        }
                        let key = pack_table(&table, bits);
                        all.insert(key);
                        if bijective {
                            perms.insert(key);
                            if (0..b).all(|a| table[a] == a) {
                                stab.insert(key);
                            }
                        }
                        // Spot-check the assembled table against the
                        // generic evaluation path on a sparse sample.
                        if cfg!(debug_assertions) && idx % 65_537 == 0 {
                            let mut coeffs = vec![0usize; d1];
                            exhaust::digits_into(i0 as u64, b, &mut coeffs);
                            let f = DualPoly {
                                f0: Poly::from_coeffs(coeffs),
                                parts: part_idx
                                    .iter()
                                    .map(|&i| {
                                        let mut c = vec![0usize; d2];
                                        exhaust::digits_into(i as u64, b, &mut c);
                                        Poly::from_coeffs(c)
                                    })
                                    .collect(),
                            };
                            assert_eq!(
                                table,
                                crate::poly::induce_dual(dr, &f).values,
                                "assembled table must match the evaluation path"
                            );
                        }
                    }
                    (all, perms, stab)
                })
            })
            .collect();
        for h in handles {
            let (a, p, s) = h.join().expect("census worker panicked");
            all.push(a);
            perms.push(p);
            stab.push(s);
        }
    });
    let merge = |sets: Vec<HashSet<u128>>| {
        let mut out: HashSet<u128> = HashSet::new();
        for s in sets {
            out.extend(s);
        }
        BigUint::from(out.len() as u64)
    };
    Ok(DualCensus {
        functions: merge(all),
        perms: merge(perms),
        stab: merge(stab),
    })
}

/// Distinct value tables on the dual ring induced by permutation
/// polynomials with base-ring coefficients (representatives of degree
/// < 2|R|): the subgroup P_R(R[a..]).
pub fn p_r_dual_tables(dr: &DualRing, limits: &EnumLimits) -> Result<Vec<Vec<usize>>> {
    let ring = dr.base();
    let b = ring.order();
    let total = limits.check_space(b, 2 * b as u32)?;
    let mut tables = exhaust::par_filter_map(total, limits.workers, |idx| {
        let mut coeffs = vec![0usize; 2 * b];
        exhaust::digits_into(idx, b, &mut coeffs);
        let f = Poly::from_coeffs(coeffs);
        let table = induce_base_on_dual(dr, &f);
        table.is_bijective().then_some(table.values)
    });
    tables.sort_unstable();
    tables.dedup();
    Ok(tables)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Functions,
    Perms,
    Stab,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Functions => "functions",
            Quantity::Perms => "perms",
            Quantity::Stab => "stab",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "functions" => Ok(Quantity::Functions),
            "perms" => Ok(Quantity::Perms),
            "stab" => Ok(Quantity::Stab),
            other => Err(Error::MethodMismatch(format!("unknown quantity {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMethod {
    Formula,
    Enumeration,
    Both,
}

impl std::str::FromStr for ReportMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(ReportMethod::Formula),
            "enum" | "enumeration" => Ok(ReportMethod::Enumeration),
            "both" => Ok(ReportMethod::Both),
            other => Err(Error::MethodMismatch(format!("unknown method {other:?}"))),
        }
    }
}

/// Formula value against oracle value for one quantity on one ring.
/// Counts are decimal strings; they exceed 64 bits for larger sweeps.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CountReport {
    pub ring: String,
    pub k: u32,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(rename = "enum", skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<String>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn run_formula(ring: &FiniteRing, k: u32, quantity: Quantity, limits: &EnumLimits) -> Result<BigUint> {
    match quantity {
        Quantity::Functions => count_functions_formula(ring, k),
        Quantity::Perms => count_perms_formula(ring, k, limits),
        Quantity::Stab => {
            let method = if ring.is_field() {
                StabMethod::FieldFormula
            } else {
                StabMethod::IndexFormula
            };
            Ok(stab_order(ring, k, method, limits)?.order)
        }
    }
}

fn run_enumeration(ring: &FiniteRing, k: u32, quantity: Quantity, limits: &EnumLimits) -> Result<BigUint> {
    match quantity {
        Quantity::Functions => count_functions_enum(ring, k, limits),
        Quantity::Perms => count_perms_enum(ring, k, limits),
        Quantity::Stab => Ok(stab_order(ring, k, StabMethod::Enumeration, limits)?.order),
    }
}

/// Produce a [`CountReport`] for one (ring, k, quantity) cell. With
/// `ReportMethod::Both`, a budget overflow on one side is recorded as
/// skipped rather than failing the whole report.
pub fn count_report(
    ring: &FiniteRing,
    k: u32,
    quantity: Quantity,
    method: ReportMethod,
    limits: &EnumLimits,
) -> Result<CountReport> {
    let start = Instant::now();
    let mut report = CountReport {
        ring: ring.spec_string(),
        k,
        quantity: quantity.name().to_string(),
        formula: None,
        enumeration: None,
        matches: None,
        seconds: 0.0,
        note: None,
        error: None,
    };
    let mut first_err: Option<Error> = None;
    if matches!(method, ReportMethod::Formula | ReportMethod::Both) {
        match run_formula(ring, k, quantity, limits) {
            Ok(v) => report.formula = Some(v.to_string()),
            Err(e) => first_err = Some(e),
        }
    }
    if matches!(method, ReportMethod::Enumeration | ReportMethod::Both) {
        match run_enumeration(ring, k, quantity, limits) {
            Ok(v) => report.enumeration = Some(v.to_string()),
            Err(e) => {
                if first_err.is_none() && matches!(method, ReportMethod::Enumeration) {
                    first_err = Some(e.clone());
                }
                report.error = Some(e.code().to_string());
            }
        }
    }
    if report.formula.is_none() && report.enumeration.is_none() {
        return Err(first_err.unwrap_or(Error::MethodMismatch("no value computed".into())));
    }
    if let Some(err) = first_err {
        report.error = Some(err.code().to_string());
    }
    if let (Some(f), Some(e)) = (&report.formula, &report.enumeration) {
        report.matches = Some(f == e);
    }
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// One report per identity tying the counting theorems together on a single
/// ring instance. Mismatches are reported, not thrown.
pub fn verify_identities(ring: &FiniteRing, k: u32, limits: &EnumLimits) -> Vec<CountReport> {
    let spec = ring.spec_string();
    let mut rows: Vec<CountReport> = Vec::new();
    let push = |quantity: &str,
                    lhs: Result<BigUint>,
                    rhs: Result<BigUint>,
                    expect_equal: bool,
                    note: Option<String>,
                    seconds: f64,
                    rows: &mut Vec<CountReport>| {
        let mut row = CountReport {
            ring: spec.clone(),
            k,
            quantity: quantity.to_string(),
            formula: None,
            enumeration: None,
            matches: None,
            seconds,
            note,
            error: None,
        };
        match (&lhs, &rhs) {
            (Ok(a), Ok(b)) => {
                row.formula = Some(a.to_string());
                row.enumeration = Some(b.to_string());
                row.matches = Some((a == b) == expect_equal);
            }
            _ => {
                let err = lhs.err().or(rhs.err()).unwrap();
                row.error = Some(err.code().to_string());
            }
        }
        rows.push(row);
    };

    // (a) [R[x]:N'] = [R[x]:N] [N:N'].
    let t = Instant::now();
    let lhs = index_nprime_enum(ring, limits).or_else(|_| index_via_linear(ring, true));
    let rhs = (|| {
        let n = index_n_enum(ring, limits).or_else(|_| index_via_linear(ring, false))?;
        Ok(n * null_index_ratio(ring, limits)?)
    })();
    push(
        "index_identity",
        lhs,
        rhs,
        true,
        None,
        t.elapsed().as_secs_f64(),
        &mut rows,
    );

    // (b), (c) formula vs enumeration for functions and permutations.
    for quantity in [Quantity::Functions, Quantity::Perms] {
        if let Ok(mut report) = count_report(ring, k, quantity, ReportMethod::Both, limits) {
            report.quantity = quantity.name().to_string();
            rows.push(report);
        }
    }

    if ring.is_field() {
        let q = ring.order() as u64;
        // (d) on fields: [N:N'] = q^q while |Stab| = (q-1)^q; the two differ.
        let t = Instant::now();
        push(
            "field_null_index",
            null_index_ratio(ring, limits),
            Ok(pow_u(&BigUint::from(q), q)),
            true,
            None,
            t.elapsed().as_secs_f64(),
            &mut rows,
        );
        let t = Instant::now();
        push(
            "field_stab",
            stab_order(ring, k, StabMethod::Enumeration, limits).map(|s| s.order),
            Ok(pow_u(&BigUint::from(q - 1), q)),
            true,
            None,
            t.elapsed().as_secs_f64(),
            &mut rows,
        );
        let t = Instant::now();
        push(
            "field_index_stab_distinct",
            null_index_ratio(ring, limits),
            stab_order(ring, k, StabMethod::Enumeration, limits).map(|s| s.order),
            false,
            Some(format!(
                "over a field the null-ideal index q^q and the stabilizer order (q-1)^q diverge; match means the values differ as expected (q = {q})"
            )),
            t.elapsed().as_secs_f64(),
            &mut rows,
        );
    } else if ring.summands().iter().all(|s| !s.is_field()) {
        // The index identity for the stabilizer holds off fields.
        let t = Instant::now();
        push(
            "stab_index_identity",
            stab_order(ring, k, StabMethod::Enumeration, limits).map(|s| s.order),
            stab_order(ring, k, StabMethod::IndexFormula, limits).map(|s| s.order),
            true,
            None,
            t.elapsed().as_secs_f64(),
            &mut rows,
        );
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::parse(text).unwrap()
    }

    fn limits() -> EnumLimits {
        EnumLimits::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn indices_by_enumeration() {
        let l = limits();
        assert_eq!(index_n_enum(&ring("F_2"), &l).unwrap(), big(4));
        assert_eq!(index_nprime_enum(&ring("F_2"), &l).unwrap(), big(16));
        assert_eq!(index_n_enum(&ring("F_3"), &l).unwrap(), big(27));
        assert_eq!(index_nprime_enum(&ring("F_3"), &l).unwrap(), big(729));
        assert_eq!(index_n_enum(&ring("Z/4"), &l).unwrap(), big(64));
        assert_eq!(index_nprime_enum(&ring("Z/4"), &l).unwrap(), big(256));
    }

    #[test]
    fn linear_path_matches_enumeration() {
        let l = limits();
        for text in ["F_2", "F_3", "Z/4", "F_4:x^2+x+1"] {
            let r = ring(text);
            assert_eq!(
                index_via_linear(&r, false).unwrap(),
                index_n_enum(&r, &l).unwrap(),
                "{text} plain"
            );
            assert_eq!(
                index_via_linear(&r, true).unwrap(),
                index_nprime_enum(&r, &l).unwrap(),
                "{text} primed"
            );
        }
        // Direct sums multiply componentwise; check against the local parts.
        let s = ring("Z/4 (+) Z/9");
        let z4 = ring("Z/4");
        let z9 = ring("Z/9");
        assert_eq!(
            index_via_linear(&s, false).unwrap(),
            index_via_linear(&z4, false).unwrap() * index_via_linear(&z9, false).unwrap()
        );
    }

    #[test]
    fn function_counts() {
        let l = limits();
        assert_eq!(count_functions_formula(&ring("F_2"), 1).unwrap(), big(64));
        assert_eq!(count_functions_enum(&ring("F_2"), 1, &l).unwrap(), big(64));
        assert_eq!(count_functions_formula(&ring("F_2"), 2).unwrap(), big(256));
        assert_eq!(count_functions_enum(&ring("F_2"), 2, &l).unwrap(), big(256));
        assert_eq!(
            count_functions_formula(&ring("F_3"), 1).unwrap(),
            big(19683)
        );
        assert_eq!(
            count_functions_enum(&ring("F_3"), 1, &l).unwrap(),
            big(19683)
        );
        assert_eq!(
            count_functions_formula(&ring("F_4:x^2+x+1"), 1).unwrap(),
            pow_u(&big(4), 12)
        );
        assert_eq!(count_functions_formula(&ring("Z/4"), 1).unwrap(), big(16384));
        assert_eq!(count_functions_enum(&ring("Z/4"), 1, &l).unwrap(), big(16384));
        assert_eq!(
            count_functions_formula(&ring("Z/4"), 2).unwrap(),
            big(4 * 64 * 64 * 64)
        );
        assert_eq!(
            count_functions_enum(&ring("Z/4"), 2, &l).unwrap(),
            big(1048576)
        );
    }

    #[test]
    fn perm_counts() {
        let l = limits();
        assert_eq!(count_perms_formula(&ring("F_2"), 1, &l).unwrap(), big(8));
        assert_eq!(count_perms_enum(&ring("F_2"), 1, &l).unwrap(), big(8));
        assert_eq!(count_perms_formula(&ring("F_2"), 2, &l).unwrap(), big(32));
        assert_eq!(count_perms_enum(&ring("F_2"), 2, &l).unwrap(), big(32));
        assert_eq!(count_perms_formula(&ring("F_3"), 1, &l).unwrap(), big(1296));
        assert_eq!(count_perms_enum(&ring("F_3"), 1, &l).unwrap(), big(1296));
        assert_eq!(
            count_perms_formula(&ring("F_4:x^2+x+1"), 1, &l).unwrap(),
            big(497664)
        );
        assert_eq!(count_perms_formula(&ring("Z/4"), 1, &l).unwrap(), big(2048));
        assert_eq!(count_perms_enum(&ring("Z/4"), 1, &l).unwrap(), big(2048));
    }

    #[test]
    fn base_counts_at_k_zero() {
        let l = limits();
        assert_eq!(count_functions_enum(&ring("Z/4"), 0, &l).unwrap(), big(64));
        assert_eq!(count_perms_enum(&ring("Z/4"), 0, &l).unwrap(), big(8));
        assert_eq!(count_functions_formula(&ring("F_3"), 0).unwrap(), big(27));
        assert_eq!(count_perms_formula(&ring("F_3"), 0, &l).unwrap(), big(6));
    }

    #[test]
    fn b_count_and_coset_identity() {
        let l = limits();
        for (text, expect_b) in [("F_2", 2u64), ("F_3", 48), ("Z/4", 32)] {
            let r = ring(text);
            let b = b_count_enum(&r, &l).unwrap();
            assert_eq!(b, big(expect_b), "{text}");
            let p = perm_count_base_enum(&r, &l).unwrap();
            let stab = stab_order(&r, 1, StabMethod::Enumeration, &l).unwrap();
            assert_eq!(b, p * stab.order, "{text}: B = |P(R)| |Stab|");
        }
    }

    #[test]
    fn stabilizer_orders() {
        let l = limits();
        let f2 = stab_order(&ring("F_2"), 1, StabMethod::Enumeration, &l).unwrap();
        assert_eq!(f2.order, big(1));
        assert_eq!(f2.derivative_image_size, Some(1));
        let f3 = stab_order(&ring("F_3"), 1, StabMethod::Enumeration, &l).unwrap();
        assert_eq!(f3.order, big(8));
        assert_eq!(
            stab_order(&ring("F_3"), 1, StabMethod::FieldFormula, &l)
                .unwrap()
                .order,
            big(8)
        );
        let z4 = stab_order(&ring("Z/4"), 1, StabMethod::Enumeration, &l).unwrap();
        assert_eq!(z4.order, big(4));
        assert_eq!(
            stab_order(&ring("Z/4"), 1, StabMethod::IndexFormula, &l)
                .unwrap()
                .order,
            big(4)
        );
        // Method preconditions.
        assert!(stab_order(&ring("Z/4"), 1, StabMethod::FieldFormula, &l).is_err());
        assert!(stab_order(&ring("F_2"), 1, StabMethod::IndexFormula, &l).is_err());
    }

    #[test]
    fn stab_enumeration_via_kernel_span_matches_index_formula() {
        // Z/9 cannot be swept raw (9^18 candidates); the kernel-span route
        // must agree with the index formula.
        let l = limits();
        let z9 = ring("Z/9");
        let enum_result = stab_order(&z9, 1, StabMethod::Enumeration, &l).unwrap();
        let index_result = stab_order(&z9, 1, StabMethod::IndexFormula, &l).unwrap();
        assert_eq!(enum_result.order, index_result.order);
        assert_eq!(
            enum_result.derivative_image_size,
            Some(usize::try_from(u64::try_from(&enum_result.order).unwrap()).unwrap())
        );

        // Same agreement on Z/4 where the raw sweep is also available.
        let z4 = ring("Z/4");
        assert_eq!(
            stab_order(&z4, 1, StabMethod::Enumeration, &l).unwrap().order,
            stab_order(&z4, 1, StabMethod::IndexFormula, &l).unwrap().order
        );
    }

    #[test]
    fn stab_independence() {
        let l = limits();
        assert!(stab_independence_check(&ring("F_2"), 3, &l).unwrap());
        assert!(stab_independence_check(&ring("F_3"), 2, &l).unwrap());
        assert!(stab_independence_check(&ring("Z/4"), 2, &l).unwrap());
    }

    #[test]
    fn census_small_rings() {
        let l = limits();
        let census = naive_dual_census(&ring("F_2"), 1, &l).unwrap();
        assert_eq!(census.functions, big(64));
        assert_eq!(census.perms, big(8));
        assert_eq!(census.stab, big(1));

        let census = naive_dual_census(&ring("F_2"), 2, &l).unwrap();
        assert_eq!(census.functions, big(256));
        assert_eq!(census.perms, big(32));
        assert_eq!(census.stab, big(1));

        let census = naive_dual_census(&ring("F_3"), 1, &l).unwrap();
        assert_eq!(census.functions, big(19683));
        assert_eq!(census.perms, big(1296));
        assert_eq!(census.stab, big(8));
    }

    #[test]
    fn census_budget_guard() {
        let l = limits();
        // Z/4 with k = 2 needs 4^16 candidates, beyond the default budget.
        assert!(matches!(
            naive_dual_census(&ring("Z/4"), 2, &l),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn reports_and_identities() {
        let l = limits();
        let report = count_report(
            &ring("F_2"),
            1,
            Quantity::Perms,
            ReportMethod::Both,
            &l,
        )
        .unwrap();
        assert_eq!(report.formula.as_deref(), Some("8"));
        assert_eq!(report.enumeration.as_deref(), Some("8"));
        assert_eq!(report.matches, Some(true));

        // Budget-blocked enumeration is recorded, not fatal, under Both.
        let z9 = ring("Z/9");
        let report =
            count_report(&z9, 1, Quantity::Functions, ReportMethod::Both, &l).unwrap();
        assert!(report.formula.is_some());
        assert!(report.enumeration.is_none());
        assert_eq!(report.error.as_deref(), Some("budget_exceeded"));

        for text in ["F_2", "F_3", "Z/4"] {
            let rows = verify_identities(&ring(text), 1, &l);
            for row in &rows {
                assert_eq!(row.matches, Some(true), "{text}: {row:?}");
            }
        }
        // On Z/9 raw sweeps exceed the budget, so the functions and perms
        // rows carry formula values only; every row with both sides present
        // must match, and the index identity always resolves via the linear
        // and kernel-span paths.
        let rows = verify_identities(&ring("Z/9"), 1, &l);
        for row in &rows {
            if let Some(m) = row.matches {
                assert!(m, "Z/9: {row:?}");
            } else {
                assert_eq!(row.error.as_deref(), Some("budget_exceeded"), "{row:?}");
            }
        }
        assert!(rows
            .iter()
            .any(|r| r.quantity == "index_identity" && r.matches == Some(true)));
        assert!(rows
            .iter()
            .any(|r| r.quantity == "stab_index_identity" && r.matches == Some(true)));
    }

    #[test]
    fn enumeration_deterministic_across_workers() {
        let mut l = limits();
        let z4 = ring("Z/4");
        l.workers = 1;
        let one = (
            count_functions_enum(&z4, 1, &l).unwrap(),
            count_perms_enum(&z4, 1, &l).unwrap(),
            stab_order(&z4, 1, StabMethod::Enumeration, &l).unwrap().order,
        );
        l.workers = 4;
        let four = (
            count_functions_enum(&z4, 1, &l).unwrap(),
            count_perms_enum(&z4, 1, &l).unwrap(),
            stab_order(&z4, 1, StabMethod::Enumeration, &l).unwrap().order,
        );
        assert_eq!(one, four);
    }
}
