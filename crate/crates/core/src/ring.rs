//! Finite commutative rings with identity: Z_{p^n}, GF(p^e) and finite
//! direct sums of these.
//!
//! Elements are canonical dense indices `0..order`, so value tables are flat
//! arrays and hashable keys. The index encodings are fixed:
//!
//! * `Z_{p^n}`: the residue itself, `0..p^n`.
//! * `GF(p^e)`: base-`p` digit vector of the representative polynomial,
//!   `index = c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
//! * direct sums: mixed-radix tuple, first summand least significant.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Ring operations on canonically indexed elements.
///
/// Implemented by [`FiniteRing`] and by [`crate::dual::DualRing`]; generic
/// code (polynomial evaluation, ideal machinery, suitability) works against
/// this trait.
pub trait Ring {
    fn order(&self) -> usize;
    fn one(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn is_unit(&self, a: usize) -> bool;
    /// Multiplicative inverse, `None` for non-units.
    fn inverse(&self, a: usize) -> Option<usize>;

    fn zero(&self) -> usize {
        0
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Canonical image of an integer (the unique homomorphism Z -> R).
    fn from_int(&self, z: i64) -> usize {
        let mut acc = self.zero();
        let n = z.unsigned_abs();
        for bit in (0..u64::BITS - n.leading_zeros()).rev() {
            acc = self.add(acc, acc);
            if n >> bit & 1 == 1 {
                acc = self.add(acc, self.one());
            }
        }
        if z < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// Declarative description of a supported ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    ZModPrimePower {
        p: u64,
        n: u32,
    },
    GaloisField {
        p: u64,
        e: u32,
        /// Monic irreducible modulus over Z_p, little-endian, length `e + 1`.
        modulus: Vec<u64>,
    },
    DirectSum {
        summands: Vec<RingSpec>,
    },
}

impl RingSpec {
    /// Canonical spec string: `Z/4`, `F_9:x^2+1`, `Z/4 (+) Z/9`.
    pub fn spec_string(&self) -> String {
        match self {
            RingSpec::ZModPrimePower { p, n } => format!("Z/{}", p.pow(*n)),
            RingSpec::GaloisField { p, e, modulus } => {
                let q = p.pow(*e);
                if *e == 1 {
                    format!("F_{q}")
                } else {
                    format!("F_{}:{}", q, format_zp_poly(modulus))
                }
            }
            RingSpec::DirectSum { summands } => summands
                .iter()
                .map(RingSpec::spec_string)
                .collect::<Vec<_>>()
                .join(" (+) "),
        }
    }

    fn is_direct_sum(&self) -> bool {
        matches!(self, RingSpec::DirectSum { .. })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

fn format_zp_poly(coeffs: &[u64]) -> String {
    let mut out = String::new();
    for (j, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (c, j) {
            (c, 0) => out.push_str(&c.to_string()),
            (1, 1) => out.push('x'),
            (c, 1) => out.push_str(&format!("{c}x")),
            (1, j) => out.push_str(&format!("x^{j}")),
            (c, j) => out.push_str(&format!("{c}x^{j}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone)]
enum Kind {
    Zpn { m: u64, p: u64 },
    Gf { p: u64, e: u32, modulus: Vec<u64> },
    Sum { parts: Vec<FiniteRing> },
}

/// A realized finite commutative ring with exact, total arithmetic on
/// canonical element indices. Immutable after construction and freely
/// shareable across threads.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    order: usize,
    kind: Kind,
    /// Materialized add/mul tables for non-trivial encodings (small orders).
    tables: Option<OpTables>,
}

#[derive(Debug, Clone)]
struct OpTables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for FiniteRing {}

const TABLE_LIMIT: usize = 1024;

impl FiniteRing {
    /// Build a ring from its spec, validating all invariants.
    pub fn new(spec: RingSpec) -> Result<FiniteRing> {
        let kind = Self::build_kind(&spec, false)?;
        let order = Self::kind_order(&kind);
        let mut ring = FiniteRing {
            spec,
            order,
            kind,
            tables: None,
        };
        if order <= TABLE_LIMIT && !matches!(ring.kind, Kind::Zpn { .. }) {
            let mut add = vec![0u32; order * order];
            let mut mul = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    add[a * order + b] = ring.add_slow(a, b) as u32;
                    mul[a * order + b] = ring.mul_slow(a, b) as u32;
                }
            }
            ring.tables = Some(OpTables { add, mul });
        }
        Ok(ring)
    }

    /// Parse and build in one step (no dual-variable suffix allowed).
    pub fn parse(text: &str) -> Result<FiniteRing> {
        let (spec, k) = parse_ring_spec(text)?;
        if k != 0 {
            return Err(Error::Parse {
                offset: text.len(),
                message: "dual-variable suffix not allowed here".into(),
            });
        }
        FiniteRing::new(spec)
    }

    fn build_kind(spec: &RingSpec, nested: bool) -> Result<Kind> {
        match spec {
            RingSpec::ZModPrimePower { p, n } => {
                check_prime(*p)?;
                if *n < 1 {
                    return Err(Error::UnsupportedVariant("exponent must be >= 1".into()));
                }
                let m = p
                    .checked_pow(*n)
                    .filter(|&m| m <= TABLE_LIMIT as u64 * TABLE_LIMIT as u64)
                    .ok_or_else(|| Error::UnsupportedVariant("ring order too large".into()))?;
                Ok(Kind::Zpn { m, p: *p })
            }
            RingSpec::GaloisField { p, e, modulus } => {
                check_prime(*p)?;
                if *e < 1 {
                    return Err(Error::UnsupportedVariant(
                        "extension degree must be >= 1".into(),
                    ));
                }
                let e_us = *e as usize;
                if modulus.len() != e_us + 1
                    || modulus[e_us] != 1
                    || modulus.iter().any(|&c| c >= *p)
                {
                    return Err(Error::BadModulusDegree {
                        expected: e_us,
                        got: modulus.len().saturating_sub(1),
                    });
                }
                if let Some(factor) = find_monic_factor(modulus, *p) {
                    return Err(Error::ReducibleModulus {
                        p: *p,
                        factor: format_zp_poly(&factor),
                    });
                }
                Ok(Kind::Gf {
                    p: *p,
                    e: *e,
                    modulus: modulus.clone(),
                })
            }
            RingSpec::DirectSum { summands } => {
                if nested {
                    return Err(Error::NestedDirectSum);
                }
                if summands.len() < 2 {
                    return Err(Error::EmptyDirectSum);
                }
                let mut parts = Vec::with_capacity(summands.len());
                for s in summands {
                    if s.is_direct_sum() {
                        return Err(Error::NestedDirectSum);
                    }
                    let kind = Self::build_kind(s, true)?;
                    let order = Self::kind_order(&kind);
                    parts.push(FiniteRing {
                        spec: s.clone(),
                        order,
                        kind,
                        tables: None,
                    });
                }
                Ok(Kind::Sum { parts })
            }
        }
    }

    fn kind_order(kind: &Kind) -> usize {
        match kind {
            Kind::Zpn { m, .. } => *m as usize,
            Kind::Gf { p, e, .. } => p.pow(*e) as usize,
            Kind::Sum { parts } => parts.iter().map(|r| r.order).product(),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn spec_string(&self) -> String {
        self.spec.spec_string()
    }

    pub fn is_field(&self) -> bool {
        match &self.kind {
            Kind::Zpn { p, m } => *m == *p,
            Kind::Gf { .. } => true,
            Kind::Sum { .. } => false,
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self.kind, Kind::Sum { .. })
    }

    /// Local summands (the ring itself if local).
    pub fn summands(&self) -> Vec<&FiniteRing> {
        match &self.kind {
            Kind::Sum { parts } => parts.iter().collect(),
            _ => vec![self],
        }
    }

    /// Decompose a direct-sum index into component indices.
    pub fn sum_decode(&self, idx: usize) -> Vec<usize> {
        match &self.kind {
            Kind::Sum { parts } => {
                let mut rest = idx;
                parts
                    .iter()
                    .map(|r| {
                        let c = rest % r.order;
                        rest /= r.order;
                        c
                    })
                    .collect()
            }
            _ => vec![idx],
        }
    }

    /// Inverse of [`sum_decode`].
    pub fn sum_encode(&self, comps: &[usize]) -> usize {
        match &self.kind {
            Kind::Sum { parts } => {
                debug_assert_eq!(comps.len(), parts.len());
                let mut idx = 0;
                for (r, &c) in parts.iter().zip(comps).rev() {
                    idx = idx * r.order + c;
                }
                idx
            }
            _ => comps[0],
        }
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zpn { m, .. } => ((a as u64 + b as u64) % m) as usize,
            Kind::Gf { p, e, .. } => {
                let (p, e) = (*p as usize, *e as usize);
                let mut out = 0;
                let mut mult = 1;
                let (mut x, mut y) = (a, b);
                for _ in 0..e {
                    out += (x % p + y % p) % p * mult;
                    x /= p;
                    y /= p;
                    mult *= p;
                }
                out
            }
            Kind::Sum { parts } => {
                let xs = self.sum_decode(a);
                let ys = self.sum_decode(b);
                let comps: Vec<usize> = parts
                    .iter()
                    .zip(xs.iter().zip(&ys))
                    .map(|(r, (&x, &y))| r.add(x, y))
                    .collect();
                self.sum_encode(&comps)
            }
        }
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zpn { m, .. } => ((a as u64 * b as u64) % m) as usize,
            Kind::Gf { p, e, modulus } => {
                let (pu, eu) = (*p, *e as usize);
                let xd = gf_digits(a, pu, eu);
                let yd = gf_digits(b, pu, eu);
                // Schoolbook product then reduction by the monic modulus.
                let mut prod = vec![0u64; 2 * eu - 1];
                for (i, &x) in xd.iter().enumerate() {
                    for (j, &y) in yd.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                for i in (eu..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (j, &mc) in modulus.iter().enumerate().take(eu) {
                        let t = &mut prod[i - eu + j];
                        *t = (*t + (pu - mc % pu) % pu * c) % pu;
                    }
                }
                gf_index(&prod[..eu], pu)
            }
            Kind::Sum { parts } => {
                let xs = self.sum_decode(a);
                let ys = self.sum_decode(b);
                let comps: Vec<usize> = parts
                    .iter()
                    .zip(xs.iter().zip(&ys))
                    .map(|(r, (&x, &y))| r.mul(x, y))
                    .collect();
                self.sum_encode(&comps)
            }
        }
    }

    /// Structure of the (unique) maximal ideal for local rings.
    pub fn local_structure(&self) -> Result<LocalStructure> {
        match &self.kind {
            Kind::Zpn { m, p } => {
                let maximal_ideal: Vec<usize> =
                    (0..*m).step_by(*p as usize).map(|x| x as usize).collect();
                let residue_field = FiniteRing::new(RingSpec::ZModPrimePower { p: *p, n: 1 })?;
                let residue_map = (0..*m as usize).map(|a| a % *p as usize).collect();
                let nilpotency = (*m as f64).log(*p as f64).round() as u32;
                Ok(LocalStructure {
                    maximal_ideal,
                    nilpotency,
                    residue_field,
                    residue_map,
                })
            }
            Kind::Gf { .. } => Ok(LocalStructure {
                maximal_ideal: vec![0],
                nilpotency: 1,
                residue_field: self.clone(),
                residue_map: (0..self.order).collect(),
            }),
            Kind::Sum { .. } => Err(Error::NotLocal),
        }
    }
}

impl Ring for FiniteRing {
    fn order(&self) -> usize {
        self.order
    }

    fn one(&self) -> usize {
        match &self.kind {
            Kind::Zpn { .. } | Kind::Gf { .. } => 1,
            Kind::Sum { parts } => {
                let comps: Vec<usize> = parts.iter().map(|r| r.one()).collect();
                self.sum_encode(&comps)
            }
        }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        if let Kind::Zpn { m, .. } = &self.kind {
            return ((a as u64 + b as u64) % m) as usize;
        }
        match &self.tables {
            Some(t) => t.add[a * self.order + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    fn neg(&self, a: usize) -> usize {
        debug_assert!(a < self.order);
        match &self.kind {
            Kind::Zpn { m, .. } => ((*m - a as u64) % *m) as usize,
            Kind::Gf { p, e, .. } => {
                let digits = gf_digits(a, *p, *e as usize);
                let neg: Vec<u64> = digits.iter().map(|&d| (*p - d) % *p).collect();
                gf_index(&neg, *p)
            }
            Kind::Sum { parts } => {
                let comps: Vec<usize> = parts
                    .iter()
                    .zip(self.sum_decode(a))
                    .map(|(r, x)| r.neg(x))
                    .collect();
                self.sum_encode(&comps)
            }
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        if let Kind::Zpn { m, .. } = &self.kind {
            return ((a as u64 * b as u64) % m) as usize;
        }
        match &self.tables {
            Some(t) => t.mul[a * self.order + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    fn is_unit(&self, a: usize) -> bool {
        debug_assert!(a < self.order);
        match &self.kind {
            Kind::Zpn { p, .. } => a as u64 % p != 0,
            Kind::Gf { .. } => a != 0,
            Kind::Sum { parts } => parts
                .iter()
                .zip(self.sum_decode(a))
                .all(|(r, x)| r.is_unit(x)),
        }
    }

    fn inverse(&self, a: usize) -> Option<usize> {
        if !self.is_unit(a) {
            return None;
        }
        let inv = match &self.kind {
            Kind::Zpn { m, .. } => mod_inverse(a as u64, *m) as usize,
            Kind::Gf { p, e, .. } => {
                // a^(q-2) = a^{-1} in a field of q elements.
                let q = p.pow(*e);
                let mut acc = self.one();
                for bit in (0..64 - (q - 2).leading_zeros()).rev() {
                    acc = self.mul(acc, acc);
                    if (q - 2) >> bit & 1 == 1 {
                        acc = self.mul(acc, a);
                    }
                }
                acc
            }
            Kind::Sum { parts } => {
                let mut comps = Vec::with_capacity(parts.len());
                for (r, x) in parts.iter().zip(self.sum_decode(a)) {
                    comps.push(r.inverse(x)?);
                }
                self.sum_encode(&comps)
            }
        };
        debug_assert_eq!(self.mul(a, inv), self.one());
        Some(inv)
    }

    fn from_int(&self, z: i64) -> usize {
        match &self.kind {
            Kind::Zpn { m, .. } => z.rem_euclid(*m as i64) as usize,
            Kind::Gf { p, .. } => z.rem_euclid(*p as i64) as usize,
            Kind::Sum { parts } => {
                let comps: Vec<usize> = parts.iter().map(|r| r.from_int(z)).collect();
                self.sum_encode(&comps)
            }
        }
    }
}

/// Maximal ideal, nilpotency and residue-field data of a local ring.
#[derive(Debug, Clone)]
pub struct LocalStructure {
    /// Elements of the maximal ideal, ascending indices.
    pub maximal_ideal: Vec<usize>,
    /// Least L with M^L = (0).
    pub nilpotency: u32,
    pub residue_field: FiniteRing,
    /// Index-to-index surjection onto the residue field.
    pub residue_map: Vec<usize>,
}

fn gf_digits(idx: usize, p: u64, e: usize) -> Vec<u64> {
    let mut digits = vec![0u64; e];
    let mut rest = idx as u64;
    for d in digits.iter_mut() {
        *d = rest % p;
        rest /= p;
    }
    digits
}

fn gf_index(digits: &[u64], p: u64) -> usize {
    let mut idx = 0u64;
    for &d in digits.iter().rev() {
        idx = idx * p + d;
    }
    idx as usize
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

/// Extended Euclid inverse of `a` modulo `m` (caller checks gcd = 1).
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Search for a monic factor of degree 1..=deg/2 over Z_p; `None` means
/// irreducible.
fn find_monic_factor(modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut rest = idx;
            for c in g.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            g[d] = 1;
            if zp_poly_rem_is_zero(modulus, &g, p) {
                return Some(g);
            }
        }
    }
    None
}

/// Whether monic `g` divides `f` over Z_p.
fn zp_poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for (j, &gc) in g.iter().enumerate() {
                let t = &mut rem[shift + j];
                *t = (*t + (p - gc % p) % p * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

// ---------------------------------------------------------------------------
// Ideal machinery and suitability (generic, used for dual rings too)
// ---------------------------------------------------------------------------

/// Additive subgroup generated by `gens`, as a sorted element list.
pub fn additive_span<R: Ring>(ring: &R, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; ring.order()];
    seen[ring.zero()] = true;
    let mut frontier = vec![ring.zero()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ring.add(x, g);
            if !seen[y] {
                seen[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..ring.order()).filter(|&x| seen[x]).collect()
}

/// Non-units of the ring, ascending indices.
pub fn nonunits<R: Ring>(ring: &R) -> Vec<usize> {
    ring.elements().filter(|&a| !ring.is_unit(a)).collect()
}

/// Whether `set` (sorted) is an ideal: an additive subgroup absorbing ring
/// multiplication.
pub fn is_ideal<R: Ring>(ring: &R, set: &[usize]) -> bool {
    let mut member = vec![false; ring.order()];
    for &x in set {
        member[x] = true;
    }
    if !member[ring.zero()] {
        return false;
    }
    for &x in set {
        for &y in set {
            if !member[ring.add(x, y)] {
                return false;
            }
        }
        for r in ring.elements() {
            if !member[ring.mul(r, x)] {
                return false;
            }
        }
    }
    true
}

/// Maximal ideal of a finite local ring, detected from the definition: the
/// ring is local iff its non-units form an ideal.
pub fn maximal_ideal_by_definition<R: Ring>(ring: &R) -> Result<Vec<usize>> {
    let m = nonunits(ring);
    if is_ideal(ring, &m) {
        Ok(m)
    } else {
        Err(Error::NotLocal)
    }
}

/// Powers M^1, M^2, ..., M^L of an ideal, computed as additive spans of
/// literal set products, ending with the zero ideal.
pub fn ideal_powers<R: Ring>(ring: &R, ideal: &[usize]) -> Vec<Vec<usize>> {
    let mut powers = vec![ideal.to_vec()];
    loop {
        let prev = powers.last().unwrap();
        if prev.len() == 1 && prev[0] == ring.zero() {
            break;
        }
        let mut products = Vec::new();
        for &x in prev {
            for &m in ideal {
                products.push(ring.mul(x, m));
            }
        }
        products.sort_unstable();
        products.dedup();
        let next = additive_span(ring, &products);
        powers.push(next);
    }
    powers
}

/// Brute-force suitability check: for all a, b and every l,
/// ab in M^l forces a in M^i, b in M^j with i + j >= min(L, l).
pub fn is_suitable<R: Ring>(ring: &R) -> Result<bool> {
    let m = maximal_ideal_by_definition(ring)?;
    let powers = ideal_powers(ring, &m);
    let nilpotency = powers.len();
    // maxpow[x] = largest l <= L with x in M^l (0 if x is a unit).
    let mut maxpow = vec![0usize; ring.order()];
    for (i, power) in powers.iter().enumerate() {
        for &x in power {
            maxpow[x] = i + 1;
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            let prod_pow = maxpow[ring.mul(a, b)].min(nilpotency);
            if maxpow[a] + maxpow[b] < prod_pow {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Spec grammar and element literals
// ---------------------------------------------------------------------------

/// Parse a ring spec string, optionally suffixed with `[k]` for k dual
/// variables: `Z/4`, `F_9:x^2+1`, `Z/4 (+) Z/9`, `Z/4[2]`.
pub fn parse_ring_spec(text: &str) -> Result<(RingSpec, u32)> {
    let trimmed = text.trim_end();
    let (body, k) = match trimmed.strip_suffix(']') {
        Some(head) => {
            let open = head.rfind('[').ok_or_else(|| Error::Parse {
                offset: trimmed.len() - 1,
                message: "unmatched ']'".into(),
            })?;
            let k: u32 = head[open + 1..].trim().parse().map_err(|_| Error::Parse {
                offset: open + 1,
                message: "expected a variable count inside [..]".into(),
            })?;
            (&head[..open], k)
        }
        None => (trimmed, 0),
    };
    let parts: Vec<&str> = body.split("(+)").collect();
    if parts.len() == 1 {
        return Ok((parse_local_spec(parts[0].trim(), 0)?, k));
    }
    let mut offset = 0;
    let mut summands = Vec::new();
    for part in &parts {
        summands.push(parse_local_spec(part.trim(), offset)?);
        offset += part.len() + 3;
    }
    Ok((RingSpec::DirectSum { summands }, k))
}

fn parse_local_spec(text: &str, offset: usize) -> Result<RingSpec> {
    if let Some(rest) = text.strip_prefix("Z/") {
        let m: u64 = rest.trim().parse().map_err(|_| Error::Parse {
            offset: offset + 2,
            message: format!("expected an integer after Z/, got {rest:?}"),
        })?;
        let (p, n) = factor_prime_power(m).ok_or_else(|| Error::Parse {
            offset: offset + 2,
            message: format!("{m} is not a prime power"),
        })?;
        return Ok(RingSpec::ZModPrimePower { p, n });
    }
    if let Some(rest) = text.strip_prefix("F_") {
        let (q_text, mod_text) = match rest.find(':') {
            Some(pos) => (&rest[..pos], Some(&rest[pos + 1..])),
            None => (rest, None),
        };
        let q: u64 = q_text.trim().parse().map_err(|_| Error::Parse {
            offset: offset + 2,
            message: format!("expected a field order after F_, got {q_text:?}"),
        })?;
        let (p, e) = factor_prime_power(q).ok_or_else(|| Error::Parse {
            offset: offset + 2,
            message: format!("{q} is not a prime power"),
        })?;
        let modulus = match mod_text {
            Some(t) => {
                let terms = crate::poly::parse_integer_terms(t).map_err(|mut err| {
                    if let Error::Parse { offset: o, .. } = &mut err {
                        *o += offset + 2 + q_text.len() + 1;
                    }
                    err
                })?;
                let mut coeffs = vec![0u64; e as usize + 1];
                for (c, exp) in terms {
                    if exp > e as usize {
                        return Err(Error::BadModulusDegree {
                            expected: e as usize,
                            got: exp,
                        });
                    }
                    let cur = coeffs[exp] as i64 + c;
                    coeffs[exp] = cur.rem_euclid(p as i64) as u64;
                }
                coeffs
            }
            None if e == 1 => vec![0, 1],
            None => {
                return Err(Error::Parse {
                    offset: offset + text.len(),
                    message: format!(
                        "extension field F_{q} requires an explicit modulus, e.g. F_{q}:x^{e}+..."
                    ),
                });
            }
        };
        return Ok(RingSpec::GaloisField { p, e, modulus });
    }
    Err(Error::Parse {
        offset,
        message: format!("expected Z/m or F_q, got {text:?}"),
    })
}

fn factor_prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut n = 0;
            let mut rest = m;
            while rest % p == 0 {
                rest /= p;
                n += 1;
            }
            return if rest == 1 { Some((p, n)) } else { None };
        }
        p += 1;
    }
    Some((m, 1))
}

/// Format an element index as a literal: plain residue for Z_{p^n} and prime
/// fields, `#index` for extension fields, `(a,b)` tuples for direct sums.
pub fn format_element(ring: &FiniteRing, idx: usize) -> String {
    match &ring.kind {
        Kind::Zpn { .. } => idx.to_string(),
        Kind::Gf { e, .. } => {
            if *e == 1 {
                idx.to_string()
            } else {
                format!("#{idx}")
            }
        }
        Kind::Sum { parts } => {
            let comps = ring.sum_decode(idx);
            let inner: Vec<String> = parts
                .iter()
                .zip(comps)
                .map(|(r, c)| format_element(r, c))
                .collect();
            format!("({})", inner.join(","))
        }
    }
}

/// Parse an element literal (see [`format_element`]; integers go through the
/// canonical map Z -> R).
pub fn parse_element(ring: &FiniteRing, text: &str) -> Result<usize> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('#') {
        let idx: usize = rest.parse().map_err(|_| Error::Parse {
            offset: 1,
            message: format!("expected an index after '#', got {rest:?}"),
        })?;
        if idx >= ring.order {
            return Err(Error::ElementOutOfRange {
                index: idx,
                order: ring.order,
            });
        }
        return Ok(idx);
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let Kind::Sum { parts } = &ring.kind else {
            return Err(Error::Parse {
                offset: 0,
                message: "tuple literals only apply to direct sums".into(),
            });
        };
        let pieces: Vec<&str> = inner.split(',').collect();
        if pieces.len() != parts.len() {
            return Err(Error::Parse {
                offset: 0,
                message: format!("expected {} components, got {}", parts.len(), pieces.len()),
            });
        }
        let mut comps = Vec::with_capacity(parts.len());
        for (r, piece) in parts.iter().zip(pieces) {
            comps.push(parse_element(r, piece)?);
        }
        return Ok(ring.sum_encode(&comps));
    }
    let z: i64 = t.parse().map_err(|_| Error::Parse {
        offset: 0,
        message: format!("expected an element literal, got {t:?}"),
    })?;
    Ok(ring.from_int(z))
}
