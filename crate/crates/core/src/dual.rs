//! The ring R[a_1,...,a_k] of dual numbers of k variables over a finite
//! commutative ring R, where every product a_i * a_j vanishes.
//!
//! Elements are encoded as mixed-radix indices over base-ring indices, with
//! the constant coordinate least significant: for |R| = 2 and k = 1 the
//! enumeration order is 0, 1, a1, 1+a1.

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, LocalStructure, Ring};

/// Largest k supported by the index encoding; arithmetic on
/// [`DualElement`] coordinates works for any k via the `*_elems` functions.
pub const MAX_K: u32 = 4;

const ORDER_LIMIT: u128 = 1 << 24;

/// R[a_1,...,a_k] with indexed elements. Immutable and shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualRing {
    base: FiniteRing,
    k: u32,
    order: usize,
}

/// An element a_0 + sum a_i * alpha_i, by base-ring coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualElement {
    pub a0: usize,
    pub parts: Vec<usize>,
}

impl DualRing {
    pub fn new(base: FiniteRing, k: u32) -> Result<DualRing> {
        if k < 1 || k > MAX_K {
            return Err(Error::KOutOfRange { k, max: MAX_K });
        }
        let order = (base.order() as u128).pow(k + 1);
        if order > ORDER_LIMIT {
            return Err(Error::BudgetExceeded {
                candidates: order,
                budget: ORDER_LIMIT as u64,
            });
        }
        Ok(DualRing {
            base,
            k,
            order: order as usize,
        })
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn spec_string(&self) -> String {
        format!("{}[{}]", self.base.spec_string(), self.k)
    }

    /// Index of the element with the given coordinates.
    pub fn encode(&self, a0: usize, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.k as usize);
        let b = self.base.order();
        let mut idx = 0;
        for &p in parts.iter().rev() {
            debug_assert!(p < b);
            idx = idx * b + p;
        }
        idx * b + a0
    }

    /// Coordinates of an element index.
    pub fn decode(&self, x: usize) -> DualElement {
        debug_assert!(x < self.order);
        let b = self.base.order();
        let a0 = x % b;
        let mut rest = x / b;
        let parts = (0..self.k)
            .map(|_| {
                let c = rest % b;
                rest /= b;
                c
            })
            .collect();
        DualElement { a0, parts }
    }

    /// Constant coordinate of an element, without full decoding.
    pub fn constant_part(&self, x: usize) -> usize {
        x % self.base.order()
    }

    /// The canonical embedding of the base ring.
    pub fn embed(&self, a: usize) -> usize {
        debug_assert!(a < self.base.order());
        a
    }

    /// Local structure per the dual construction: local iff the base is,
    /// with maximal ideal lifted from the base and nilpotency one higher.
    pub fn local_structure(&self) -> Result<LocalStructure> {
        let base_ls = self.base.local_structure()?;
        let mut in_m = vec![false; self.base.order()];
        for &x in &base_ls.maximal_ideal {
            in_m[x] = true;
        }
        let maximal_ideal: Vec<usize> = (0..self.order)
            .filter(|&x| in_m[self.constant_part(x)])
            .collect();
        let residue_map = (0..self.order)
            .map(|x| base_ls.residue_map[self.constant_part(x)])
            .collect();
        Ok(LocalStructure {
            maximal_ideal,
            nilpotency: base_ls.nilpotency + 1,
            residue_field: base_ls.residue_field,
            residue_map,
        })
    }
}

impl Ring for DualRing {
    fn order(&self) -> usize {
        self.order
    }

    fn one(&self) -> usize {
        self.base.one()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (xa, xb) = (self.decode(a), self.decode(b));
        self.encode(
            self.base.add(xa.a0, xb.a0),
            &xa.parts
                .iter()
                .zip(&xb.parts)
                .map(|(&x, &y)| self.base.add(x, y))
                .collect::<Vec<_>>(),
        )
    }

    fn neg(&self, a: usize) -> usize {
        let xa = self.decode(a);
        self.encode(
            self.base.neg(xa.a0),
            &xa.parts.iter().map(|&x| self.base.neg(x)).collect::<Vec<_>>(),
        )
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (xa, xb) = (self.decode(a), self.decode(b));
        let prod = mul_elems(&self.base, &xa, &xb).expect("same ring");
        self.encode(prod.a0, &prod.parts)
    }

    fn is_unit(&self, a: usize) -> bool {
        self.base.is_unit(self.constant_part(a))
    }

    fn inverse(&self, a: usize) -> Option<usize> {
        let inv = inverse_elem(&self.base, &self.decode(a)).ok()?;
        Some(self.encode(inv.a0, &inv.parts))
    }

    fn from_int(&self, z: i64) -> usize {
        self.base.from_int(z)
    }
}

// ---------------------------------------------------------------------------
// Coordinate-level arithmetic (valid for any k)
// ---------------------------------------------------------------------------

pub fn add_elems(base: &FiniteRing, x: &DualElement, y: &DualElement) -> Result<DualElement> {
    if x.parts.len() != y.parts.len() {
        return Err(Error::RingMismatch);
    }
    Ok(DualElement {
        a0: base.add(x.a0, y.a0),
        parts: x
            .parts
            .iter()
            .zip(&y.parts)
            .map(|(&a, &b)| base.add(a, b))
            .collect(),
    })
}

/// Product (a_0 b_0, a_0 b_i + b_0 a_i): the cross terms in alpha_i alpha_j
/// vanish.
pub fn mul_elems(base: &FiniteRing, x: &DualElement, y: &DualElement) -> Result<DualElement> {
    if x.parts.len() != y.parts.len() {
        return Err(Error::RingMismatch);
    }
    Ok(DualElement {
        a0: base.mul(x.a0, y.a0),
        parts: x
            .parts
            .iter()
            .zip(&y.parts)
            .map(|(&a, &b)| base.add(base.mul(x.a0, b), base.mul(y.a0, a)))
            .collect(),
    })
}

/// Closed-form inverse a_0^{-1} - sum a_0^{-2} a_i alpha_i; defined exactly
/// when the constant coordinate is a unit.
pub fn inverse_elem(base: &FiniteRing, x: &DualElement) -> Result<DualElement> {
    let inv0 = base.inverse(x.a0).ok_or(Error::NotAUnit)?;
    let inv0_sq = base.mul(inv0, inv0);
    Ok(DualElement {
        a0: inv0,
        parts: x
            .parts
            .iter()
            .map(|&a| base.neg(base.mul(inv0_sq, a)))
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Text format: `1+2*a1+3*a2`
// ---------------------------------------------------------------------------

pub fn format_dual_element(dr: &DualRing, x: usize) -> String {
    let el = dr.decode(x);
    let mut out = String::new();
    if el.a0 != 0 {
        out.push_str(&crate::ring::format_element(dr.base(), el.a0));
    }
    for (i, &c) in el.parts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if c == dr.base().one() {
            out.push_str(&format!("a{}", i + 1));
        } else {
            out.push_str(&format!(
                "{}*a{}",
                crate::ring::format_element(dr.base(), c),
                i + 1
            ));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_dual_element(dr: &DualRing, text: &str) -> Result<usize> {
    let base = dr.base();
    let mut a0 = 0;
    let mut parts = vec![0usize; dr.k() as usize];
    for (offset, term, negate) in split_terms(text)? {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse {
                offset,
                message: "empty term".into(),
            });
        }
        let (coeff_text, var) = match term.find('a') {
            // Tuple literals contain no 'a'; a '#' index literal neither.
            Some(pos) => {
                let head = term[..pos].trim().trim_end_matches('*').trim();
                let idx: usize = term[pos + 1..].trim().parse().map_err(|_| Error::Parse {
                    offset: offset + pos + 1,
                    message: "expected a variable number after 'a'".into(),
                })?;
                if idx < 1 || idx > dr.k() as usize {
                    return Err(Error::Parse {
                        offset: offset + pos,
                        message: format!("variable a{idx} outside a1..a{}", dr.k()),
                    });
                }
                (head, Some(idx - 1))
            }
            None => (term, None),
        };
        let mut c = if coeff_text.is_empty() {
            base.one()
        } else {
            crate::ring::parse_element(base, coeff_text)?
        };
        if negate {
            c = base.neg(c);
        }
        match var {
            Some(i) => parts[i] = base.add(parts[i], c),
            None => a0 = base.add(a0, c),
        }
    }
    Ok(dr.encode(a0, &parts))
}

/// Split a sum into (offset, term, negated) triples, ignoring signs inside
/// parentheses.
pub(crate) fn split_terms(text: &str) -> Result<Vec<(usize, String, bool)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut negate = false;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or(Error::Parse {
                    offset: i,
                    message: "unmatched ')'".into(),
                })?
            }
            '+' | '-' if depth == 0 && i > start => {
                out.push((start, text[start..i].to_string(), negate));
                negate = ch == '-';
                start = i + 1;
            }
            '-' if depth == 0 && i == start => {
                negate = true;
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            offset: text.len(),
            message: "unmatched '('".into(),
        });
    }
    out.push((start, text[start..].to_string(), negate));
    Ok(out)
}
