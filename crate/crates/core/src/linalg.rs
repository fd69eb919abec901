//! Exact linear algebra for the index fast paths: row-span orders over
//! chain rings Z_{p^n} (echelonization with annihilator tracking) and over
//! finite fields (plain elimination), plus left-kernel generators over
//! chain rings.

use num_bigint::BigUint;
use num_traits::One;

use crate::ring::{FiniteRing, Ring};

fn valuation(mut e: u64, p: u64) -> u32 {
    debug_assert!(e != 0);
    let mut v = 0;
    while e % p == 0 {
        e /= p;
        v += 1;
    }
    v
}

/// Order of the additive group generated by `rows` inside (Z_{p^n})^cols.
///
/// Every pivot of valuation s contributes a factor p^{n-s}; rows scaled by
/// the pivot annihilator re-enter the worklist so that deeper columns are
/// accounted for.
pub fn span_order_chain(rows: Vec<Vec<u64>>, p: u64, n: u32) -> BigUint {
    chain_eliminate(rows, p, n, None)
}

/// Generators (as coefficient vectors over Z_{p^n}) of the left kernel
/// { c : sum_i c_i rows_i = 0 }.
pub fn kernel_basis_chain(rows: &[Vec<u64>], p: u64, n: u32) -> Vec<Vec<u64>> {
    let mut kernel = Vec::new();
    chain_eliminate(rows.to_vec(), p, n, Some(&mut kernel));
    kernel
}

fn chain_eliminate(
    rows: Vec<Vec<u64>>,
    p: u64,
    n: u32,
    mut kernel_out: Option<&mut Vec<Vec<u64>>>,
) -> BigUint {
    let m = p.pow(n);
    let ncols = rows.first().map_or(0, Vec::len);
    let nrows = rows.len();
    let track = kernel_out.is_some();
    // Augmented rows [v | u] with the invariant v = u * original_matrix.
    let mut work: Vec<(Vec<u64>, Vec<u64>)> = rows
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut u = Vec::new();
            if track {
                u = vec![0; nrows];
                u[i] = 1;
            }
            (v, u)
        })
        .collect();
    let mut order = BigUint::one();
    let mut done: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();

    for col in 0..ncols {
        // Pivot: minimal p-valuation at this column.
        let mut best: Option<(usize, u32)> = None;
        for (i, (v, _)) in work.iter().enumerate() {
            if v[col] == 0 {
                continue;
            }
            let s = valuation(v[col], p);
            if best.map_or(true, |(_, bs)| s < bs) {
                best = Some((i, s));
            }
        }
        let Some((idx, s)) = best else {
            continue;
        };
        let mut pivot = work.swap_remove(idx);
        // Normalize the pivot entry to exactly p^s.
        let unit = pivot.0[col] / p.pow(s);
        let unit_inv = mod_inverse(unit % m, m);
        scale_row(&mut pivot, unit_inv, m);
        debug_assert_eq!(pivot.0[col], p.pow(s));
        // Eliminate the column everywhere else; entries are multiples of p^s.
        for row in work.iter_mut() {
            let e = row.0[col];
            if e != 0 {
                let q = e / p.pow(s);
                sub_scaled(row, &pivot, q, m);
                debug_assert_eq!(row.0[col], 0);
            }
        }
        if s > 0 {
            // The annihilator multiple still spans deeper columns.
            let mut ann = pivot.clone();
            scale_row(&mut ann, p.pow(n - s), m);
            debug_assert_eq!(ann.0[col], 0);
            if ann.0.iter().any(|&e| e != 0) || track {
                work.push(ann);
            }
        }
        order *= BigUint::from(p.pow(n - s));
        done.push(pivot);
        work.retain(|(v, u)| {
            if v.iter().all(|&e| e == 0) {
                if let Some(out) = kernel_out.as_deref_mut() {
                    if u.iter().any(|&e| e != 0) {
                        out.push(u.clone());
                    }
                }
                false
            } else {
                true
            }
        });
    }
    if let Some(out) = kernel_out {
        for (v, u) in work {
            debug_assert!(v.iter().all(|&e| e == 0));
            if u.iter().any(|&e| e != 0) {
                out.push(u);
            }
        }
    }
    order
}

fn scale_row(row: &mut (Vec<u64>, Vec<u64>), c: u64, m: u64) {
    for e in row.0.iter_mut().chain(row.1.iter_mut()) {
        *e = *e * c % m;
    }
}

fn sub_scaled(row: &mut (Vec<u64>, Vec<u64>), pivot: &(Vec<u64>, Vec<u64>), q: u64, m: u64) {
    let q = q % m;
    for (e, &pe) in row.0.iter_mut().zip(&pivot.0) {
        *e = (*e + (m - pe % m) % m * q) % m;
    }
    for (e, &pe) in row.1.iter_mut().zip(&pivot.1) {
        *e = (*e + (m - pe % m) % m * q) % m;
    }
}

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

/// Order (q^rank) of the row span over a finite field; entries are
/// element indices of `field`.
pub fn span_order_field(mut rows: Vec<Vec<usize>>, field: &FiniteRing) -> BigUint {
    debug_assert!(field.is_field());
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0u32;
    let mut top = 0usize;
    for col in 0..ncols {
        let Some(pivot_idx) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, pivot_idx);
        let inv = field.inverse(rows[top][col]).expect("nonzero field element");
        for e in rows[top].iter_mut() {
            *e = field.mul(*e, inv);
        }
        let pivot = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (e, &pe) in row.iter_mut().zip(&pivot) {
                *e = field.sub(*e, field.mul(factor, pe));
            }
        }
        rank += 1;
        top += 1;
    }
    BigUint::from(field.order() as u64).pow(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute-force span: all Z_m-combinations of the rows.
    fn brute_span(rows: &[Vec<u64>], m: u64) -> HashSet<Vec<u64>> {
        let mut span = HashSet::new();
        let total = (m as usize).pow(rows.len() as u32);
        let ncols = rows.first().map_or(0, Vec::len);
        for idx in 0..total {
            let mut c = idx;
            let mut v = vec![0u64; ncols];
            for row in rows {
                let t = (c % m as usize) as u64;
                c /= m as usize;
                for (e, &re) in v.iter_mut().zip(row) {
                    *e = (*e + t * re) % m;
                }
            }
            span.insert(v);
        }
        span
    }

    #[test]
    fn chain_span_order_matches_brute_force() {
        let cases: Vec<(Vec<Vec<u64>>, u64, u32)> = vec![
            (vec![vec![2, 0], vec![0, 2]], 2, 2),
            (vec![vec![1, 2, 3], vec![2, 0, 2]], 2, 2),
            (vec![vec![3, 6], vec![6, 3], vec![1, 1]], 3, 2),
            (vec![vec![2, 4], vec![4, 2]], 2, 3),
            (vec![vec![0, 0]], 2, 2),
            (vec![vec![6, 3, 0], vec![3, 0, 3], vec![0, 3, 6]], 3, 2),
        ];
        for (rows, p, n) in cases {
            let m = p.pow(n);
            let brute = brute_span(&rows, m).len();
            let fast = span_order_chain(rows.clone(), p, n);
            assert_eq!(fast, BigUint::from(brute as u64), "rows {rows:?} mod {m}");
        }
    }

    #[test]
    fn chain_kernel_generates_exact_kernel() {
        let cases: Vec<(Vec<Vec<u64>>, u64, u32)> = vec![
            (vec![vec![2, 0], vec![0, 2], vec![1, 1]], 2, 2),
            (vec![vec![3, 6], vec![6, 3], vec![1, 1]], 3, 2),
            (vec![vec![2, 4], vec![4, 2]], 2, 3),
            (vec![vec![1, 2], vec![2, 4], vec![3, 6]], 3, 2),
        ];
        for (rows, p, n) in cases {
            let m = p.pow(n);
            let nrows = rows.len();
            // Brute-force kernel.
            let mut brute = HashSet::new();
            for idx in 0..(m as usize).pow(nrows as u32) {
                let mut c = idx;
                let coeffs: Vec<u64> = (0..nrows)
                    .map(|_| {
                        let t = (c % m as usize) as u64;
                        c /= m as usize;
                        t
                    })
                    .collect();
                let ncols = rows[0].len();
                let mut v = vec![0u64; ncols];
                for (t, row) in coeffs.iter().zip(&rows) {
                    for (e, &re) in v.iter_mut().zip(row) {
                        *e = (*e + t * re) % m;
                    }
                }
                if v.iter().all(|&e| e == 0) {
                    brute.insert(coeffs);
                }
            }
            let gens = kernel_basis_chain(&rows, p, n);
            for g in &gens {
                assert!(brute.contains(g), "generator {g:?} not in kernel");
            }
            let spanned = brute_span(&gens, m);
            assert_eq!(spanned.len(), brute.len(), "kernel span mismatch {rows:?}");
        }
    }

    /// Brute-force field span: all F_q-combinations of the rows.
    fn brute_span_field(rows: &[Vec<usize>], field: &FiniteRing) -> HashSet<Vec<usize>> {
        let q = field.order();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut span = HashSet::new();
        for idx in 0..q.pow(rows.len() as u32) {
            let mut c = idx;
            let mut v = vec![0usize; ncols];
            for row in rows {
                let t = c % q;
                c /= q;
                for (e, &re) in v.iter_mut().zip(row) {
                    *e = field.add(*e, field.mul(t, re));
                }
            }
            span.insert(v);
        }
        span
    }

    #[test]
    fn field_span_order() {
        let f3 = FiniteRing::parse("F_3").unwrap();
        let f4 = FiniteRing::parse("F_4:x^2+x+1").unwrap();
        let cases: Vec<(Vec<Vec<usize>>, &FiniteRing)> = vec![
            (vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]], &f3),
            (vec![vec![1, 2, 0], vec![2, 1, 0]], &f3),
            (vec![vec![0, 0, 0]], &f3),
            (vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 1, 1]], &f3),
            (vec![vec![2, 3], vec![3, 2]], &f4),
            (vec![vec![2, 3], vec![1, 2], vec![3, 1]], &f4),
        ];
        for (rows, field) in cases {
            let brute = brute_span_field(&rows, field).len();
            assert_eq!(
                span_order_field(rows.clone(), field),
                BigUint::from(brute as u64),
                "rows {rows:?}"
            );
        }
    }
}
