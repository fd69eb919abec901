//! Acceptance suite: every criterion is exact, runs as its own test and
//! prints one PASS line (visible with `cargo test --test acceptance --
//! --nocapture`). The exhaustive oracles here evaluate with plain Horner
//! inside the dual ring and dedupe complete value tables; the library's
//! criterion and formula paths must agree with them everywhere.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualfun::counting::{self, StabMethod};
use dualfun::dual::DualRing;
use dualfun::exhaust::EnumLimits;
use dualfun::null;
use dualfun::perm;
use dualfun::poly::{self, reassemble, DualPoly, FunctionTable, Poly};
use dualfun::ring::{FiniteRing, Ring};

fn ring(text: &str) -> FiniteRing {
    FiniteRing::parse(text).unwrap()
}

fn dual(text: &str, k: u32) -> DualRing {
    DualRing::new(ring(text), k).unwrap()
}

fn limits() -> EnumLimits {
    EnumLimits {
        workers: 4,
        ..Default::default()
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pass(criterion: u32, what: &str) {
    println!("acceptance {criterion}: PASS - {what}");
}

/// Value table of a decomposed polynomial by naive Horner inside the dual
/// ring: the evaluation oracle, independent of the fast formula path.
fn horner_table(dr: &DualRing, f: &DualPoly) -> Vec<usize> {
    let poly = Poly::from_coeffs(reassemble(dr, f));
    dr.elements().map(|x| poly.eval(dr, x)).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, order: usize, max_len: usize) -> Poly {
    let len = rng.random_range(1..=max_len);
    Poly::from_coeffs((0..len).map(|_| rng.random_range(0..order)).collect())
}

fn random_dualpoly(rng: &mut ChaCha8Rng, order: usize, k: u32, max_len: usize) -> DualPoly {
    let f0 = random_poly(rng, order, max_len);
    let parts = (0..k).map(|_| random_poly(rng, order, max_len)).collect();
    DualPoly { f0, parts }
}

#[test]
fn criterion_01_field_permutation_counts() {
    let l = limits();
    for (text, k, expected) in [("F_2", 1u32, 8u64), ("F_2", 2, 32), ("F_3", 1, 1296)] {
        let r = ring(text);
        let formula = counting::count_perms_formula(&r, k, &l).unwrap();
        let enumerated = counting::count_perms_enum(&r, k, &l).unwrap();
        assert_eq!(formula, big(expected), "{text} k={k} formula");
        assert_eq!(enumerated, big(expected), "{text} k={k} enumeration");
    }
    pass(1, "field permutation counts: enumeration = formula = 8, 32, 1296");
}

#[test]
fn criterion_02_field_function_counts() {
    let l = limits();
    for (text, k, expected) in [("F_2", 1u32, 64u64), ("F_2", 2, 256), ("F_3", 1, 19683)] {
        let r = ring(text);
        let formula = counting::count_functions_formula(&r, k).unwrap();
        let enumerated = counting::count_functions_enum(&r, k, &l).unwrap();
        assert_eq!(formula, big(expected), "{text} k={k} formula");
        assert_eq!(enumerated, big(expected), "{text} k={k} enumeration");
    }
    pass(2, "field function counts: enumeration = formula = 64, 256, 19683");
}

#[test]
fn criterion_03_stabilizer_orders_and_k_independence() {
    let l = limits();
    for (text, expected) in [("F_2", 1u64), ("F_3", 8), ("F_4:x^2+x+1", 81)] {
        let r = ring(text);
        let result = counting::stab_order(&r, 1, StabMethod::Enumeration, &l).unwrap();
        assert_eq!(result.order, big(expected), "{text} enumeration");
        // The derivative-image formulation gives the same order.
        assert_eq!(result.derivative_image_size, Some(expected as usize), "{text} image");
        let field = counting::stab_order(&r, 1, StabMethod::FieldFormula, &l).unwrap();
        assert_eq!(field.order, big(expected), "{text} field formula");
    }
    for text in ["F_2", "F_3"] {
        assert!(
            counting::stab_independence_check(&ring(text), 2, &l).unwrap(),
            "{text} stabilizer order must not depend on k"
        );
    }
    pass(3, "stabilizer orders 1, 8, 81 with k-independence on F_2, F_3");
}

#[test]
fn criterion_04_nonfield_assembly_on_z4() {
    let l = limits();
    let z4 = ring("Z/4");

    // Brute-force base quantities.
    let f_base = counting::index_n_enum(&z4, &l).unwrap();
    let p_base = counting::perm_count_base_enum(&z4, &l).unwrap();
    assert_eq!(f_base, big(64));
    assert_eq!(p_base, big(8));

    // Brute-force dual-ring quantities: every representative's full value
    // table on Z_4[a1], deduplicated.
    let census = counting::naive_dual_census(&z4, 1, &l).unwrap();
    let stab = census.stab.clone();
    assert_eq!(stab, big(4));

    // |P(Z_4[a])| = |F(Z_4)| |P(Z_4)| |Stab|.
    assert_eq!(census.perms, big(64 * 8 * 4));
    assert_eq!(census.perms, f_base.clone() * p_base * stab);

    // |F(Z_4[a])| = [N:N'] |F(Z_4)|^2 with the ratio from the literal
    // bounded null sets.
    let ratio = counting::null_index_ratio(&z4, &l).unwrap();
    assert_eq!(ratio, big(4));
    assert_eq!(census.functions, big(16384));
    assert_eq!(census.functions, ratio * f_base.clone() * f_base);

    pass(4, "Z_4 assembly: 2048 = 64*8*4 and 16384 = 4*64^2 against the census");
}

#[test]
fn criterion_05_index_identity() {
    let l = limits();
    // Enumeration-backed identity where the sweeps are feasible.
    for text in ["F_2", "F_3", "Z/4"] {
        let r = ring(text);
        let n = counting::index_n_enum(&r, &l).unwrap();
        let nprime = counting::index_nprime_enum(&r, &l).unwrap();
        let ratio = counting::null_index_ratio(&r, &l).unwrap();
        assert_eq!(nprime, n.clone() * ratio, "{text} identity by enumeration");
        // The linear fast path agrees with enumeration.
        assert_eq!(counting::index_via_linear(&r, false).unwrap(), n, "{text}");
        assert_eq!(
            counting::index_via_linear(&r, true).unwrap(),
            nprime,
            "{text}"
        );
    }
    // Z/9 through the fast path alone (the sweep space is 9^9 and 9^18).
    let z9 = ring("Z/9");
    let n = counting::index_via_linear(&z9, false).unwrap();
    let nprime = counting::index_via_linear(&z9, true).unwrap();
    let ratio = counting::null_index_ratio(&z9, &l).unwrap();
    assert_eq!(nprime, n * ratio, "Z/9 identity via linear path");
    pass(5, "[R[x]:N'] = [R[x]:N][N:N'] on F_2, F_3, Z_4, Z_9");
}

#[test]
fn criterion_06_criterion_oracle_equivalences() {
    // Exhaustive over all reduced classes of F_2[a1].
    let f2a = dual("F_2", 1);
    let f2 = f2a.base().clone();
    let mut checked = 0u64;
    for f0_idx in 0..16u64 {
        for f1_idx in 0..4u64 {
            let f = DualPoly {
                f0: Poly::from_coeffs(
                    (0..4).map(|i| (f0_idx >> i & 1) as usize).collect(),
                ),
                parts: vec![Poly::from_coeffs(
                    (0..2).map(|i| (f1_idx >> i & 1) as usize).collect(),
                )],
            };
            let table = horner_table(&f2a, &f);
            let null_oracle = table.iter().all(|&v| v == 0);
            assert_eq!(null::is_null_on_dual(&f2, &f), null_oracle);
            let perm_oracle = FunctionTable {
                values: table.clone(),
            }
            .is_bijective();
            assert_eq!(
                perm::is_perm_on_dual(&f2a, &f).unwrap().is_permutation,
                perm_oracle
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 64);

    // 10^4 random cases per larger instance; zero mismatches allowed.
    let mut rng = ChaCha8Rng::seed_from_u64(60001);
    for (text, k) in [("Z/4", 1u32), ("F_3", 1), ("Z/4", 2)] {
        let dr = dual(text, k);
        let base = dr.base().clone();
        let b = base.order();
        for _ in 0..10_000 {
            let f = random_dualpoly(&mut rng, b, k, 2 * b);
            let table = horner_table(&dr, &f);
            let null_oracle = table.iter().all(|&v| v == 0);
            assert_eq!(null::is_null_on_dual(&base, &f), null_oracle, "{text} null");
            let perm_oracle = FunctionTable {
                values: table.clone(),
            }
            .is_bijective();
            assert_eq!(
                perm::is_perm_on_dual(&dr, &f).unwrap().is_permutation,
                perm_oracle,
                "{text} perm"
            );
        }
    }
    pass(6, "null and permutation criteria match exhaustive oracles, zero mismatches");
}

#[test]
fn criterion_07_field_index_vs_stabilizer_contrast() {
    let l = limits();
    for (text, q) in [("F_2", 2u64), ("F_3", 3)] {
        let r = ring(text);
        let ratio = counting::null_index_ratio(&r, &l).unwrap();
        let mut qq = BigUint::from(1u32);
        for _ in 0..q {
            qq *= BigUint::from(q);
        }
        assert_eq!(ratio, qq, "{text}: [N:N'] = q^q");
        let stab = counting::stab_order(&r, 1, StabMethod::Enumeration, &l).unwrap();
        let mut q1q = BigUint::from(1u32);
        for _ in 0..q {
            q1q *= BigUint::from(q - 1);
        }
        assert_eq!(stab.order, q1q, "{text}: |Stab| = (q-1)^q");
        if q == 3 {
            assert_ne!(ratio, stab.order, "F_3: the index identity fails on fields");
        }
    }
    pass(7, "[N:N'] = q^q vs |Stab| = (q-1)^q, distinct at q = 3");
}

#[test]
fn criterion_08_all_pairs_realized_over_f2() {
    let f2 = ring("F_2");
    let mut realized = 0;
    for f_bits in 0..4usize {
        for g_bits in 0..4usize {
            let f_table = FunctionTable {
                values: vec![f_bits & 1, f_bits >> 1 & 1],
            };
            let g_table = FunctionTable {
                values: vec![g_bits & 1, g_bits >> 1 & 1],
            };
            let f = perm::construct_pair_field(&f2, &f_table, &g_table).unwrap();
            assert!(f.degree().map_or(true, |d| d < 4), "degree bound");
            assert_eq!(poly::induce_base(&f2, &f), f_table);
            assert_eq!(poly::induce_base(&f2, &f.derivative(&f2)), g_table);
            realized += 1;
        }
    }
    assert_eq!(realized, 16);
    pass(8, "all 16 (F, G) pairs over F_2 realized with deg f < 4");
}

#[test]
fn criterion_09_fast_evaluation_equals_dual_horner() {
    // Exhaustive on F_2[a1] and F_2[a1,a2]: every base polynomial of degree
    // < 2|R| at every point, plus every reduced decomposed polynomial.
    for k in [1u32, 2] {
        let dr = dual("F_2", k);
        for idx in 0..16u64 {
            let f = Poly::from_coeffs((0..4).map(|i| (idx >> i & 1) as usize).collect());
            let embedded = Poly::from_coeffs(f.coeffs.clone());
            for x in dr.elements() {
                assert_eq!(
                    poly::eval_dual_fast(&dr, &f, x),
                    embedded.eval(&dr, x),
                    "base poly {idx} at {x} on k={k}"
                );
            }
        }
        let part_space = 4u64.pow(k);
        for f0_idx in 0..16u64 {
            for rest in 0..part_space {
                let parts = (0..k)
                    .map(|j| {
                        let bits = rest >> (2 * j) & 3;
                        Poly::from_coeffs(vec![(bits & 1) as usize, (bits >> 1) as usize])
                    })
                    .collect();
                let f = DualPoly {
                    f0: Poly::from_coeffs(
                        (0..4).map(|i| (f0_idx >> i & 1) as usize).collect(),
                    ),
                    parts,
                };
                let oracle = horner_table(&dr, &f);
                let fast = poly::induce_dual(&dr, &f);
                assert_eq!(fast.values, oracle);
            }
        }
    }

    // 10^5 random cases over Z_4[a1].
    let z4a = dual("Z/4", 1);
    let mut rng = ChaCha8Rng::seed_from_u64(90001);
    for _ in 0..100_000 {
        let len = rng.random_range(1..=8);
        let f = Poly::from_coeffs((0..len).map(|_| rng.random_range(0..4)).collect());
        let x = rng.random_range(0..z4a.order());
        let fast = poly::eval_dual_fast(&z4a, &f, x);
        let slow = Poly::from_coeffs(f.coeffs.clone()).eval(&z4a, x);
        assert_eq!(fast, slow);
    }
    pass(9, "Taylor-form evaluation equals dual-ring Horner, zero mismatches");
}

#[test]
fn criterion_10_determinism_across_worker_counts() {
    let snapshot = |workers: usize| -> String {
        let l = EnumLimits {
            workers,
            ..Default::default()
        };
        let z4 = ring("Z/4");
        let f3 = ring("F_3");
        let census = counting::naive_dual_census(&f3, 1, &l).unwrap();
        let stab = counting::stab_order(&z4, 1, StabMethod::Enumeration, &l).unwrap();
        let nulls = null::enumerate_bounded_null(&z4, 4, false, &l).unwrap();
        let p_r = counting::p_r_dual_tables(&DualRing::new(z4.clone(), 1).unwrap(), &l).unwrap();
        format!(
            "{}|{}|{}|{}|{}|{:?}|{:?}|{:?}",
            counting::count_functions_enum(&z4, 1, &l).unwrap(),
            counting::count_perms_enum(&z4, 1, &l).unwrap(),
            census.functions,
            census.perms,
            stab.order,
            stab.derivative_image_size,
            nulls
                .members
                .iter()
                .map(|f| poly::format_poly(&z4, f))
                .collect::<Vec<_>>(),
            p_r,
        )
    };
    let one = snapshot(1);
    let four = snapshot(4);
    assert_eq!(one.as_bytes(), four.as_bytes(), "byte-identical reports");
    pass(10, "1-worker and 4-worker enumeration reports byte-identical");
}
