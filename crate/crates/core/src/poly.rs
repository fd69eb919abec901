//! Dense univariate polynomials over a ring, formal derivatives, the fast
//! dual-evaluation formulas, and induced-function tables.
//!
//! A `Poly` is a bare coefficient vector (ascending degree); the ring it
//! lives over is passed to each operation, matching the context-object style
//! of the rest of the crate. Coefficients may carry trailing zeros; the
//! degree is the highest nonzero index and the zero polynomial has degree
//! `None`.

use serde::{Deserialize, Serialize};

use crate::dual::DualRing;
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Ring};

/// Coefficient vector `c_0..c_d` over a base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub coeffs: Vec<usize>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<usize>) -> Poly {
        Poly { coeffs }
    }

    pub fn constant(c: usize) -> Poly {
        Poly { coeffs: vec![c] }
    }

    /// The monomial x.
    pub fn x<R: Ring>(ring: &R) -> Poly {
        Poly {
            coeffs: vec![ring.zero(), ring.one()],
        }
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Copy with trailing zero coefficients stripped.
    pub fn normalized(&self) -> Poly {
        let len = self.degree().map_or(0, |d| d + 1);
        Poly {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn coeff(&self, j: usize) -> usize {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn add<R: Ring>(&self, ring: &R, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly {
            coeffs: (0..len)
                .map(|j| ring.add(self.coeff(j), other.coeff(j)))
                .collect(),
        }
    }

    pub fn sub<R: Ring>(&self, ring: &R, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly {
            coeffs: (0..len)
                .map(|j| ring.sub(self.coeff(j), other.coeff(j)))
                .collect(),
        }
    }

    pub fn mul<R: Ring>(&self, ring: &R, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ring.add(coeffs[i + j], ring.mul(a, b));
            }
        }
        Poly { coeffs }
    }

    pub fn scale<R: Ring>(&self, ring: &R, c: usize) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&a| ring.mul(c, a)).collect(),
        }
    }

    /// Formal derivative; integer multiples reduce through the ring.
    pub fn derivative<R: Ring>(&self, ring: &R) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| ring.mul(ring.from_int(j as i64), c))
                .collect(),
        }
    }

    /// Horner evaluation. Works over any ring, including a [`DualRing`] with
    /// dual-element coefficient indices (the naive evaluation oracle).
    pub fn eval<R: Ring>(&self, ring: &R, x: usize) -> usize {
        let mut acc = ring.zero();
        for &c in self.coeffs.iter().rev() {
            acc = ring.add(ring.mul(acc, x), c);
        }
        acc
    }
}

/// Decomposition f = f_0 + sum f_i alpha_i of a polynomial over R[a_1..a_k]
/// into polynomials over R.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualPoly {
    pub f0: Poly,
    pub parts: Vec<Poly>,
}

impl DualPoly {
    pub fn from_base(f0: Poly, k: u32) -> DualPoly {
        DualPoly {
            f0,
            parts: vec![Poly::zero(); k as usize],
        }
    }

    pub fn k(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn sub(&self, ring: &FiniteRing, other: &DualPoly) -> Result<DualPoly> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::RingMismatch);
        }
        Ok(DualPoly {
            f0: self.f0.sub(ring, &other.f0),
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.sub(ring, b))
                .collect(),
        })
    }
}

/// Collect the coordinate polynomials of a polynomial whose coefficients are
/// dual-element indices.
pub fn decompose(dr: &DualRing, dual_coeffs: &[usize]) -> DualPoly {
    let k = dr.k() as usize;
    let mut f0 = Vec::with_capacity(dual_coeffs.len());
    let mut parts = vec![Vec::with_capacity(dual_coeffs.len()); k];
    for &c in dual_coeffs {
        let el = dr.decode(c);
        f0.push(el.a0);
        for (i, &p) in el.parts.iter().enumerate() {
            parts[i].push(p);
        }
    }
    DualPoly {
        f0: Poly::from_coeffs(f0),
        parts: parts.into_iter().map(Poly::from_coeffs).collect(),
    }
}

/// Inverse of [`decompose`]: coefficient vector over the dual ring.
pub fn reassemble(dr: &DualRing, f: &DualPoly) -> Vec<usize> {
    let len = std::iter::once(&f.f0)
        .chain(&f.parts)
        .map(|p| p.coeffs.len())
        .max()
        .unwrap_or(0);
    let mut parts_buf = vec![0usize; dr.k() as usize];
    (0..len)
        .map(|j| {
            for (slot, p) in parts_buf.iter_mut().zip(&f.parts) {
                *slot = p.coeff(j);
            }
            dr.encode(f.f0.coeff(j), &parts_buf)
        })
        .collect()
}

/// Evaluate f in R[x] at a dual point by the Taylor form
/// f(a_0) + sum a_i f'(a_0) alpha_i.
pub fn eval_dual_fast(dr: &DualRing, f: &Poly, x: usize) -> usize {
    let df = f.derivative(dr.base());
    eval_dual_fast_with_derivative(dr, f, &df, x)
}

pub fn eval_dual_fast_with_derivative(dr: &DualRing, f: &Poly, df: &Poly, x: usize) -> usize {
    let base = dr.base();
    let el = dr.decode(x);
    let v = f.eval(base, el.a0);
    let d = df.eval(base, el.a0);
    let parts: Vec<usize> = el.parts.iter().map(|&a| base.mul(a, d)).collect();
    dr.encode(v, &parts)
}

/// Evaluate a decomposed polynomial at a dual point by
/// f_0(a_0) + sum (a_i f_0'(a_0) + f_i(a_0)) alpha_i.
pub fn eval_dualpoly(dr: &DualRing, f: &DualPoly, x: usize) -> usize {
    let df0 = f.f0.derivative(dr.base());
    eval_dualpoly_with_derivative(dr, f, &df0, x)
}

pub fn eval_dualpoly_with_derivative(
    dr: &DualRing,
    f: &DualPoly,
    df0: &Poly,
    x: usize,
) -> usize {
    debug_assert_eq!(f.parts.len(), dr.k() as usize);
    let base = dr.base();
    let el = dr.decode(x);
    let v = f.f0.eval(base, el.a0);
    let d = df0.eval(base, el.a0);
    let parts: Vec<usize> = el
        .parts
        .iter()
        .zip(&f.parts)
        .map(|(&a, fi)| base.add(base.mul(a, d), fi.eval(base, el.a0)))
        .collect();
    dr.encode(v, &parts)
}

/// The induced function [f] as a dense value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionTable {
    pub values: Vec<usize>,
}

impl FunctionTable {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        for &v in &self.values {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// First pair (x, y), x < y, with equal values, if any.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut first = vec![usize::MAX; self.values.len()];
        for (x, &v) in self.values.iter().enumerate() {
            if v < first.len() && first[v] != usize::MAX {
                return Some((first[v], x));
            }
            if v < first.len() {
                first[v] = x;
            }
        }
        None
    }
}

/// Value table of f over the base ring.
pub fn induce_base(ring: &FiniteRing, f: &Poly) -> FunctionTable {
    FunctionTable {
        values: ring.elements().map(|a| f.eval(ring, a)).collect(),
    }
}

/// Value table of a decomposed polynomial over the dual ring, through the
/// fast evaluation path.
pub fn induce_dual(dr: &DualRing, f: &DualPoly) -> FunctionTable {
    let df0 = f.f0.derivative(dr.base());
    FunctionTable {
        values: dr
            .elements()
            .map(|x| eval_dualpoly_with_derivative(dr, f, &df0, x))
            .collect(),
    }
}

/// Value table over the dual ring of a polynomial with base coefficients.
pub fn induce_base_on_dual(dr: &DualRing, f: &Poly) -> FunctionTable {
    let df = f.derivative(dr.base());
    FunctionTable {
        values: dr
            .elements()
            .map(|x| eval_dual_fast_with_derivative(dr, f, &df, x))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Text grammar: `c*x^e` terms joined by + and -
// ---------------------------------------------------------------------------

/// Parse a polynomial with integer coefficients into (coefficient, exponent)
/// terms. Shared by the ring-spec modulus grammar.
pub fn parse_integer_terms(text: &str) -> Result<Vec<(i64, usize)>> {
    let mut out = Vec::new();
    for (offset, term, negate) in crate::dual::split_terms(text)? {
        let (c, e) = parse_term(&term, offset, |lit, off| {
            lit.trim().parse::<i64>().map_err(|_| Error::Parse {
                offset: off,
                message: format!("expected an integer coefficient, got {lit:?}"),
            })
        })?;
        out.push((if negate { -c } else { c }, e));
    }
    Ok(out)
}

/// Parse one `c*x^e` / `cx^e` / `x^e` / `c` term. `parse_coeff` maps the
/// coefficient literal; a bare variable gets the literal "1".
fn parse_term<T, F>(term: &str, offset: usize, parse_coeff: F) -> Result<(T, usize)>
where
    F: Fn(&str, usize) -> Result<T>,
{
    let t = term.trim_end();
    let lead = t.len() - t.trim_start().len();
    let t = t.trim_start();
    let offset = offset + lead;
    if t.is_empty() {
        return Err(Error::Parse {
            offset,
            message: "empty term".into(),
        });
    }
    // Locate the variable: the first 'x' outside parentheses.
    let mut depth = 0;
    let mut xpos = None;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                xpos = Some(i);
                break;
            }
            _ => {}
        }
    }
    match xpos {
        None => Ok((parse_coeff(t, offset)?, 0)),
        Some(pos) => {
            let head = t[..pos].trim_end();
            let head = head.strip_suffix('*').unwrap_or(head).trim();
            let coeff = if head.is_empty() {
                parse_coeff("1", offset)?
            } else {
                parse_coeff(head, offset)?
            };
            let rest = &t[pos + 1..];
            let exp = match rest.trim() {
                "" => 1,
                _ => {
                    let caret = rest.find('^').ok_or(Error::Parse {
                        offset: offset + pos + 1,
                        message: format!("unexpected {rest:?} after x"),
                    })?;
                    if rest[..caret].trim() != "" {
                        return Err(Error::Parse {
                            offset: offset + pos + 1,
                            message: format!("unexpected {:?} after x", &rest[..caret]),
                        });
                    }
                    let exp_text = rest[caret + 1..].trim();
                    exp_text.parse::<usize>().map_err(|_| Error::Parse {
                        offset: offset + pos + 1 + caret + 1,
                        message: format!("expected an exponent, got {exp_text:?}"),
                    })?
                }
            };
            Ok((coeff, exp))
        }
    }
}

struct CoeffLit(usize);

/// Parse polynomial text over a specific ring. Coefficient literals follow
/// [`crate::ring::parse_element`]; a bare `x^e` has coefficient one.
pub fn parse_poly(ring: &FiniteRing, text: &str) -> Result<Poly> {
    let mut coeffs: Vec<usize> = Vec::new();
    for (offset, term, negate) in crate::dual::split_terms(text)? {
        let (CoeffLit(mut c), e) = parse_term(&term, offset, |lit, off| {
            if lit == "1" {
                return Ok(CoeffLit(ring.one()));
            }
            crate::ring::parse_element(ring, lit)
                .map(CoeffLit)
                .map_err(|err| match err {
                    Error::Parse { offset: o, message } => Error::Parse {
                        offset: off + o,
                        message,
                    },
                    other => other,
                })
        })?;
        if negate {
            c = ring.neg(c);
        }
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = ring.add(coeffs[e], c);
    }
    Ok(Poly { coeffs })
}

/// Canonical text form: descending exponents, nonzero terms only.
pub fn format_poly(ring: &FiniteRing, f: &Poly) -> String {
    let mut out = String::new();
    for (j, &c) in f.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let lit = crate::ring::format_element(ring, c);
        match j {
            0 => out.push_str(&lit),
            _ => {
                if c != ring.one() {
                    out.push_str(&lit);
                    if !lit.chars().all(|ch| ch.is_ascii_digit()) {
                        out.push('*');
                    }
                }
                out.push('x');
                if j > 1 {
                    out.push_str(&format!("^{j}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

/// JSON form {"ring": "Z/4", "coeffs": ["1","3","1"]} (ascending degree).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    pub coeffs: Vec<String>,
}

/// JSON form {"ring": "Z/4[1]", "f0": [...], "parts": [[...]]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualPolyJson {
    pub ring: String,
    pub f0: Vec<String>,
    pub parts: Vec<Vec<String>>,
}

pub fn poly_to_json(ring: &FiniteRing, f: &Poly) -> PolyJson {
    PolyJson {
        ring: ring.spec_string(),
        coeffs: f
            .normalized()
            .coeffs
            .iter()
            .map(|&c| crate::ring::format_element(ring, c))
            .collect(),
    }
}

pub fn poly_from_json(json: &PolyJson) -> Result<(FiniteRing, Poly)> {
    let ring = FiniteRing::parse(&json.ring)?;
    let coeffs = json
        .coeffs
        .iter()
        .map(|lit| crate::ring::parse_element(&ring, lit))
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, Poly { coeffs }))
}

pub fn dualpoly_to_json(dr: &DualRing, f: &DualPoly) -> DualPolyJson {
    let fmt = |p: &Poly| {
        p.normalized()
            .coeffs
            .iter()
            .map(|&c| crate::ring::format_element(dr.base(), c))
            .collect()
    };
    DualPolyJson {
        ring: dr.spec_string(),
        f0: fmt(&f.f0),
        parts: f.parts.iter().map(fmt).collect(),
    }
}

pub fn dualpoly_from_json(json: &DualPolyJson) -> Result<(DualRing, DualPoly)> {
    let (spec, k) = crate::ring::parse_ring_spec(&json.ring)?;
    if k == 0 || json.parts.len() != k as usize {
        return Err(Error::RingMismatch);
    }
    let base = FiniteRing::new(spec)?;
    let parse = |lits: &Vec<String>| {
        lits.iter()
            .map(|lit| crate::ring::parse_element(&base, lit))
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_coeffs)
    };
    let f0 = parse(&json.f0)?;
    let parts = json.parts.iter().map(parse).collect::<Result<Vec<_>>>()?;
    let dr = DualRing::new(base, k)?;
    Ok((dr, DualPoly { f0, parts }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::parse(text).unwrap()
    }

    fn dual(text: &str, k: u32) -> DualRing {
        DualRing::new(ring(text), k).unwrap()
    }

    fn p(ring: &FiniteRing, text: &str) -> Poly {
        parse_poly(ring, text).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let f2 = ring("F_2");
        assert!(p(&f2, "x^2").derivative(&f2).is_zero());
        let z4 = ring("Z/4");
        assert_eq!(
            p(&z4, "2x^3+2x").derivative(&z4).normalized(),
            p(&z4, "2x^2+2").normalized()
        );
        assert!(p(&z4, "3").derivative(&z4).is_zero());
    }

    #[test]
    fn derivative_is_linear_and_leibniz() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for text in ["Z/4", "F_4:x^2+x+1", "Z/9"] {
            let r = ring(text);
            for _ in 0..500 {
                let len = rng.random_range(1..8);
                let f = Poly::from_coeffs((0..len).map(|_| rng.random_range(0..r.order())).collect());
                let len = rng.random_range(1..8);
                let g = Poly::from_coeffs((0..len).map(|_| rng.random_range(0..r.order())).collect());
                let sum_rule = f.add(&r, &g).derivative(&r).normalized();
                assert_eq!(
                    sum_rule,
                    f.derivative(&r).add(&r, &g.derivative(&r)).normalized()
                );
                let prod_rule = f.mul(&r, &g).derivative(&r).normalized();
                let expect = f
                    .derivative(&r)
                    .mul(&r, &g)
                    .add(&r, &f.mul(&r, &g.derivative(&r)))
                    .normalized();
                assert_eq!(prod_rule, expect);
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f2 = ring("F_2");
        assert_eq!(p(&f2, "x^2+x").eval(&f2, 1), 0);
        let z4 = ring("Z/4");
        assert_eq!(p(&z4, "2x^2+2x").eval(&z4, 3), 0);
        // prod_{r in Z_4} (x - r) vanishes at 2.
        let mut prod = Poly::constant(z4.one());
        for r0 in z4.elements() {
            let factor = Poly::from_coeffs(vec![z4.neg(r0), z4.one()]);
            prod = prod.mul(&z4, &factor);
        }
        assert_eq!(prod.eval(&z4, 2), 0);
    }

    #[test]
    fn fast_dual_eval_examples() {
        let z4a = dual("Z/4", 1);
        let f = p(z4a.base(), "x^2");
        let x = z4a.encode(1, &[1]);
        assert_eq!(eval_dual_fast(&z4a, &f, x), z4a.encode(1, &[2]));

        let f3a = dual("F_3", 1);
        let f = p(f3a.base(), "x^3");
        let alpha = f3a.encode(0, &[1]);
        assert_eq!(eval_dual_fast(&f3a, &f, alpha), 0);
    }

    #[test]
    fn fast_dual_eval_matches_horner_exhaustively() {
        // Every base polynomial of degree < 2|R| at every point; the oracle
        // is plain Horner inside the dual ring.
        for (base, k) in [("F_2", 1u32), ("F_2", 2)] {
            let dr = dual(base, k);
            let b = dr.base().order();
            let dim = 2 * b;
            for idx in 0..b.pow(dim as u32) {
                let mut c = Vec::with_capacity(dim);
                let mut rest = idx;
                for _ in 0..dim {
                    c.push(rest % b);
                    rest /= b;
                }
                let f = Poly::from_coeffs(c);
                let embedded = Poly::from_coeffs(f.coeffs.iter().map(|&x| dr.embed(x)).collect());
                for x in dr.elements() {
                    assert_eq!(eval_dual_fast(&dr, &f, x), embedded.eval(&dr, x));
                }
            }
        }
    }

    #[test]
    fn dualpoly_eval_and_random_agreement() {
        let f2a = dual("F_2", 1);
        let f = DualPoly {
            f0: Poly::x(f2a.base()),
            parts: vec![Poly::constant(1)],
        };
        // f_0 = x, f_1 = 1 at 0 gives alpha.
        assert_eq!(eval_dualpoly(&f2a, &f, 0), f2a.encode(0, &[1]));

        // At base points, f(a) = f_0(a) + sum f_i(a) alpha_i.
        let z4a = dual("Z/4", 1);
        let g = DualPoly {
            f0: p(z4a.base(), "x^2+3x"),
            parts: vec![p(z4a.base(), "2x+1")],
        };
        for a in z4a.base().elements() {
            let want = z4a.encode(
                g.f0.eval(z4a.base(), a),
                &[g.parts[0].eval(z4a.base(), a)],
            );
            assert_eq!(eval_dualpoly(&z4a, &g, z4a.embed(a)), want);
        }

        // Random agreement with Horner over the dual ring.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let len = rng.random_range(1..9);
            let f = DualPoly {
                f0: Poly::from_coeffs((0..len).map(|_| rng.random_range(0..4)).collect()),
                parts: vec![Poly::from_coeffs(
                    (0..len).map(|_| rng.random_range(0..4)).collect(),
                )],
            };
            let dual_coeffs = reassemble(&z4a, &f);
            let horner = Poly::from_coeffs(dual_coeffs);
            for x in z4a.elements() {
                assert_eq!(eval_dualpoly(&z4a, &f, x), horner.eval(&z4a, x));
            }
        }
    }

    #[test]
    fn decompose_examples_and_round_trip() {
        let z4a = dual("Z/4", 1);
        // f = (1+a)x + a.
        let coeffs = vec![z4a.encode(0, &[1]), z4a.encode(1, &[1])];
        let d = decompose(&z4a, &coeffs);
        assert_eq!(d.f0.normalized(), Poly::x(z4a.base()));
        assert_eq!(d.parts[0].normalized(), p(z4a.base(), "x+1").normalized());
        assert_eq!(reassemble(&z4a, &d), coeffs);

        // Base-only coefficients decompose with zero parts.
        let base_coeffs = vec![z4a.embed(3), z4a.embed(2)];
        let d = decompose(&z4a, &base_coeffs);
        assert!(d.parts[0].is_zero());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f2aa = dual("F_2", 2);
        for _ in 0..50 {
            let len = rng.random_range(1..10);
            let coeffs: Vec<usize> = (0..len)
                .map(|_| rng.random_range(0..f2aa.order()))
                .collect();
            assert_eq!(reassemble(&f2aa, &decompose(&f2aa, &coeffs)), coeffs);
        }
    }

    #[test]
    fn induced_tables() {
        let f2 = ring("F_2");
        assert_eq!(induce_base(&f2, &p(&f2, "x^2")).values, vec![0, 1]);
        let f4 = ring("F_4:x^2+x+1");
        assert!(induce_base(&f4, &p(&f4, "x^4-x")).is_zero());
        let z4 = ring("Z/4");
        assert!(induce_base(&z4, &Poly::x(&z4)).is_identity());
    }

    #[test]
    fn parse_and_format() {
        let z4 = ring("Z/4");
        assert_eq!(p(&z4, "x^2+3x+1").coeffs, vec![1, 3, 1]);
        let f9 = ring("F_9:x^2+1");
        let f = p(&f9, "x^9-x");
        // -1 over F_9 is the index-2 element (digits (2,0)).
        assert_eq!(f.coeff(1), 2);
        assert_eq!(f.coeff(9), 1);

        match parse_poly(&z4, "x^^2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for text in ["Z/4", "F_4:x^2+x+1", "Z/4 (+) Z/9"] {
            let r = ring(text);
            for _ in 0..50 {
                let len = rng.random_range(0..6);
                let f = Poly::from_coeffs((0..len).map(|_| rng.random_range(0..r.order())).collect());
                let s = format_poly(&r, &f);
                assert_eq!(p(&r, &s).normalized(), f.normalized(), "{s}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let z4a = dual("Z/4", 1);
        let f = DualPoly {
            f0: p(z4a.base(), "x^2+3x"),
            parts: vec![p(z4a.base(), "2x")],
        };
        let json = dualpoly_to_json(&z4a, &f);
        let s = serde_json::to_string(&json).unwrap();
        let back: DualPolyJson = serde_json::from_str(&s).unwrap();
        let (dr2, f2) = dualpoly_from_json(&back).unwrap();
        assert_eq!(dr2, z4a);
        assert_eq!(f2.f0.normalized(), f.f0.normalized());
        assert_eq!(f2.parts[0].normalized(), f.parts[0].normalized());

        let pj = poly_to_json(z4a.base(), &p(z4a.base(), "2x^2+1"));
        let (r2, g) = poly_from_json(&pj).unwrap();
        assert_eq!(r2.spec_string(), "Z/4");
        assert_eq!(g.coeffs, vec![1, 0, 2]);
    }
}
