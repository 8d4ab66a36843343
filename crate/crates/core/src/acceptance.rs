//! The acceptance suite: one function per acceptance criterion, each
//! returning a detail string on success or a diagnosis on failure. The
//! `verify` CLI subcommand and the `acceptance` integration test both run
//! these and print one line per criterion.
//!
//! Everything here is deterministic: random inputs come from ChaCha12 with
//! fixed seeds.

use crate::block::{
    canonical_column_form, macdonald_generator, plotkin_check, simplex_generator, SimplexOrder,
    DEFAULT_ENUM_BUDGET,
};
use crate::channel::ChannelSpec;
use crate::conv::{
    optimality_oracle_tiny, ConvolutionalCode, DEFAULT_DISTANCE_BUDGET, DEFAULT_ORACLE_BUDGET,
};
use crate::correlation::{
    fast_rm_table, kronecker_factorization_identity, log_q, macdonald_distance_table,
    naive_rm_table, score_init, stacked_agreement_table, subcode_prefix_table,
    subcode_suffix_table, OpCounter,
};
use crate::fast_viterbi::{complexity_report, fast_viterbi_decode};
use crate::field::FieldSpec;
use crate::frame::Frame;
use crate::matrix::{weight, FqMatrix};
use crate::viterbi::{ml_decode_exhaustive, viterbi_decode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

type CheckResult = std::result::Result<String, String>;
type Criterion = (usize, &'static str, fn() -> CheckResult);

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        (1, "worked decoder example, bit-exact", criterion_1),
        (2, "worked transform example, bit-exact", criterion_2),
        (
            3,
            "construction 1 column distances on the grid",
            criterion_3,
        ),
        (
            4,
            "constructions 2 and 3 column distances on the grid",
            criterion_4,
        ),
        (
            5,
            "transform equivalence and factorization identity",
            criterion_5,
        ),
        (6, "hard addition-count bounds", criterion_6),
        (7, "decoder metric equivalence", criterion_7),
        (8, "error-correction guarantee", criterion_8),
        (9, "tiny-scale optimality and uniqueness", criterion_9),
        (
            10,
            "block-code invariants and ratio inequalities",
            criterion_10,
        ),
        (11, "empirical speedup grows with delta", criterion_11),
    ]
}

/// Runs every criterion, optionally printing one pass/fail line each.
pub fn run_all(print: bool) -> Vec<CriterionOutcome> {
    let mut outcomes = Vec::new();
    for (id, label, check) in criteria() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if print {
            let status = if passed { "PASS" } else { "FAIL" };
            println!("{status}  criterion {id:2}  {label}: {detail}");
        }
        outcomes.push(CriterionOutcome {
            id,
            label,
            passed,
            detail,
        });
    }
    outcomes
}

fn gf(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::for_size(q).unwrap())
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn worked_example_code(field: &Arc<FieldSpec>) -> ConvolutionalCode {
    let g0 = FqMatrix::from_rows(field.clone(), vec![vec![1, 1]]).unwrap();
    let g1 = FqMatrix::from_rows(field.clone(), vec![vec![0, 1]]).unwrap();
    let g2 = FqMatrix::from_rows(field.clone(), vec![vec![1, 1]]).unwrap();
    ConvolutionalCode::from_parts(field, vec![g0, g1, g2]).unwrap()
}

fn criterion_1() -> CheckResult {
    let f = gf(2);
    let code = worked_example_code(&f);
    let rx = Frame::new(5, 2, vec![1, 1, 0, 1, 0, 0, 1, 1, 1, 1]).map_err(|e| e.to_string())?;
    let expected_codeword = vec![1, 1, 0, 1, 0, 0, 0, 1, 1, 1];
    for (name, result) in [
        (
            "viterbi",
            viterbi_decode(&code, &rx).map_err(|e| e.to_string())?,
        ),
        (
            "ml",
            ml_decode_exhaustive(&code, &rx, 1 << 20).map_err(|e| e.to_string())?,
        ),
    ] {
        ensure(
            result.message == vec![1, 0, 1],
            format!("{name}: message {:?}", result.message),
        )?;
        ensure(
            result.metric == 1,
            format!("{name}: metric {}", result.metric),
        )?;
        ensure(
            result.codeword.symbols == expected_codeword,
            format!("{name}: codeword {:?}", result.codeword.symbols),
        )?;
    }
    Ok("both decoders return u = 1 + z^2 at metric 1".into())
}

const W_52: [u8; 12] = [1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 0];

fn criterion_2() -> CheckResult {
    let f = gf(3);
    // S(3,3) in block-X order, exactly as displayed.
    let s33 = simplex_generator(&f, 3, SimplexOrder::BlockX { k: 2, delta: 1 })
        .map_err(|e| e.to_string())?;
    let s33_expected = FqMatrix::from_rows(
        f.clone(),
        vec![
            vec![1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0],
            vec![0, 1, 2, 1, 0, 1, 2, 1, 0, 1, 2, 1, 0],
            vec![0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 1],
        ],
    )
    .unwrap();
    ensure(
        s33.generator == s33_expected,
        "S(3,3) block-X order mismatch",
    )?;
    let s33_rec = simplex_generator(&f, 3, SimplexOrder::Recursive).map_err(|e| e.to_string())?;
    ensure(
        crate::block::column_multiset_equal(&s33.generator, &s33_rec.generator),
        "S(3,3) column multisets differ between orders",
    )?;

    // R = C_{3,1}(3).
    let r = macdonald_generator(&f, 3, 2).map_err(|e| e.to_string())?;
    let r_expected = FqMatrix::from_rows(
        f.clone(),
        vec![
            vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0],
            vec![0, 1, 2, 0, 1, 2, 0, 1, 2, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 1, 2],
        ],
    )
    .unwrap();
    ensure(r.generator == r_expected, "MacDonald staircase R mismatch")?;

    // B^(2) and B^(1): all codewords of R'(3,m) in coefficient order.
    let b2_expected: [[u8; 9]; 9] = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 2, 0, 1, 2, 0, 1, 2],
        [0, 2, 1, 0, 2, 1, 0, 2, 1],
        [0, 0, 0, 1, 1, 1, 2, 2, 2],
        [0, 1, 2, 1, 2, 0, 2, 0, 1],
        [0, 2, 1, 1, 0, 2, 2, 1, 0],
        [0, 0, 0, 2, 2, 2, 1, 1, 1],
        [0, 1, 2, 2, 0, 1, 1, 2, 0],
        [0, 2, 1, 2, 1, 0, 1, 0, 2],
    ];
    let rp2 = crate::block::rm_prime_generator(&f, 2).generator;
    let mut b2_ok = true;
    rp2.for_each_span_word(|i, w| b2_ok &= w == b2_expected[i]);
    ensure(b2_ok, "B^(2) rows mismatch")?;
    let b1_expected: [[u8; 3]; 3] = [[0, 0, 0], [0, 1, 2], [0, 2, 1]];
    let rp1 = crate::block::rm_prime_generator(&f, 1).generator;
    let mut b1_ok = true;
    rp1.for_each_span_word(|i, w| b1_ok &= w == b1_expected[i]);
    ensure(b1_ok, "B^(1) rows mismatch")?;

    // Score vectors for w = (w1 | w2).
    let s_w1 = score_init(&f, &W_52[..9]);
    let mut s_w1_expected = vec![0u64; 27];
    for i in 0..8 {
        s_w1_expected[i * 3 + 1] = 1;
    }
    s_w1_expected[8 * 3] = 1;
    ensure(s_w1 == s_w1_expected, "S_w1 mismatch")?;
    let s_w2 = score_init(&f, &W_52[9..]);
    ensure(s_w2 == vec![0, 1, 0, 1, 0, 0, 1, 0, 0], "S_w2 mismatch")?;

    // The two transformed tables.
    let mut ops = OpCounter::new();
    let t2 = fast_rm_table(&f, 2, &W_52[..9], &mut ops).map_err(|e| e.to_string())?;
    let t2_expected: [[u64; 3]; 9] = [
        [1, 8, 0],
        [3, 4, 2],
        [2, 3, 4],
        [3, 4, 2],
        [2, 3, 4],
        [4, 2, 3],
        [2, 3, 4],
        [4, 2, 3],
        [3, 4, 2],
    ];
    for (i, row) in t2_expected.iter().enumerate() {
        ensure(
            t2.row(i) == row,
            format!("B_z^(2) star S_w1 row {i} mismatch"),
        )?;
    }
    let t1 = fast_rm_table(&f, 1, &W_52[9..], &mut ops).map_err(|e| e.to_string())?;
    let t1_expected: [[u64; 3]; 3] = [[2, 1, 0], [0, 2, 1], [0, 2, 1]];
    for (i, row) in t1_expected.iter().enumerate() {
        ensure(
            t1.row(i) == row,
            format!("B_z^(1) star S_w2 row {i} mismatch"),
        )?;
    }

    // N(2 alpha^(1) + alpha^(3), w) = 2, coefficients (2, 0, 1) -> index 11.
    let mut ops = OpCounter::new();
    let table = macdonald_distance_table(&f, 3, 2, &W_52, &mut ops).map_err(|e| e.to_string())?;
    ensure(table[11] == 2, format!("N(v,w) = {} != 2", table[11]))?;

    Ok("S(3,3), R, B matrices, score vectors, and both tables reproduced".into())
}

fn grid() -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for q in [2u64, 3] {
        for k in [1usize, 2] {
            for delta in [1usize, 2, 3] {
                out.push((q, k, delta));
            }
        }
    }
    out
}

fn check_distances_against_formula(
    code: &ConvolutionalCode,
    label: &str,
) -> std::result::Result<(), String> {
    for j in 0..=code.mu() + 2 {
        let oracle = code
            .column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
            .map_err(|e| format!("{label} j={j}: {e}"))?;
        let formula = code
            .column_distance_closed_form(j)
            .map_err(|e| e.to_string())?;
        ensure(
            oracle == formula,
            format!("{label} j={j}: oracle {oracle} != formula {formula}"),
        )?;
    }
    Ok(())
}

fn criterion_3() -> CheckResult {
    let mut checked = 0;
    for (q, k, delta) in grid() {
        let f = gf(q);
        let code = ConvolutionalCode::construct_1(&f, k, delta).map_err(|e| e.to_string())?;
        check_distances_against_formula(&code, &format!("C1({q},{k},{delta})"))?;
        checked += 1;
    }
    Ok(format!(
        "{checked} parameter sets, exhaustive oracle equals the closed form"
    ))
}

fn criterion_4() -> CheckResult {
    let mut checked = 0;
    for (q, k, delta) in grid() {
        let f = gf(q);
        let c2 = ConvolutionalCode::construct_2(&f, k, delta).map_err(|e| e.to_string())?;
        check_distances_against_formula(&c2, &format!("C2({q},{k},{delta})"))?;
        let c3 = ConvolutionalCode::construct_3(&f, k, delta).map_err(|e| e.to_string())?;
        check_distances_against_formula(&c3, &format!("C3({q},{k},{delta})"))?;
        checked += 2;
    }
    // The exceptional case delta = k - 1 mod k: (2,2,1) gives (2,4,4,..).
    let f = gf(2);
    let c2 = ConvolutionalCode::construct_2(&f, 2, 1).map_err(|e| e.to_string())?;
    let profile: Vec<u64> = (0..4)
        .map(|j| c2.column_distance_closed_form(j).unwrap())
        .collect();
    ensure(
        profile == vec![2, 4, 4, 4],
        format!("C2(2,2,1) profile {profile:?}"),
    )?;
    Ok(format!(
        "{checked} parameter sets including the exceptional case"
    ))
}

fn criterion_5() -> CheckResult {
    let mut words = 0;
    for q in [2u64, 3, 4, 5] {
        let f = gf(q);
        let mut rng = ChaCha12Rng::seed_from_u64(500 + q);
        for m in 0..=3usize {
            let n = (q as usize).pow(m as u32);
            for _ in 0..100 {
                let w: Vec<u8> = (0..n).map(|_| rng.random_range(0..q as u8)).collect();
                let mut ops = OpCounter::new();
                let fast = fast_rm_table(&f, m, &w, &mut ops).map_err(|e| e.to_string())?;
                let naive = naive_rm_table(&f, m, &w).map_err(|e| e.to_string())?;
                ensure(fast == naive, format!("fast != naive at q={q}, m={m}"))?;
                words += 1;
            }
        }
    }
    for q in [2u64, 3, 4] {
        let f = gf(q);
        for m in 1..=3usize {
            ensure(
                kronecker_factorization_identity(&f, m),
                format!("factorization identity fails at q={q}, m={m}"),
            )?;
        }
    }
    Ok(format!(
        "{words} random words match; symbolic identity holds for q <= 4, m <= 3"
    ))
}

fn criterion_6() -> CheckResult {
    let mut calls = 0;
    // Reed-Muller transform bound q(q-1) n log_q(n).
    for q in [2u64, 3, 4, 5] {
        let f = gf(q);
        let mut rng = ChaCha12Rng::seed_from_u64(600 + q);
        for m in 1..=3usize {
            let n = (q as usize).pow(m as u32);
            let w: Vec<u8> = (0..n).map(|_| rng.random_range(0..q as u8)).collect();
            let mut ops = OpCounter::new();
            fast_rm_table(&f, m, &w, &mut ops).map_err(|e| e.to_string())?;
            let bound = (q * (q - 1)) as f64 * n as f64 * m as f64;
            ensure(
                ops.additions as f64 <= bound,
                format!("rm table at q={q} m={m}: {} > {bound}", ops.additions),
            )?;
            calls += 1;
        }
    }
    // Staircase / prefix / suffix tables: q^2 n log_q(n).
    for (q, k, delta) in [(2u64, 1, 2), (2, 2, 1), (3, 2, 1), (3, 1, 2), (2, 2, 3)] {
        let f = gf(q);
        for code in [
            ConvolutionalCode::construct_1(&f, k, delta).map_err(|e| e.to_string())?,
            ConvolutionalCode::construct_2(&f, k, delta).map_err(|e| e.to_string())?,
            ConvolutionalCode::construct_3(&f, k, delta).map_err(|e| e.to_string())?,
        ] {
            let n = code.n();
            let bound = (q * q) as f64 * n as f64 * log_q(q as usize, n);
            let mut rng = ChaCha12Rng::seed_from_u64(660 + q + delta as u64);
            let w: Vec<u8> = (0..n).map(|_| rng.random_range(0..q as u8)).collect();
            let mut ops = OpCounter::new();
            stacked_agreement_table(&code, &w, &mut ops).map_err(|e| e.to_string())?;
            ensure(
                ops.additions as f64 <= bound + 1e-9,
                "stacked table over bound",
            )?;
            for j in 0..code.mu() {
                let mut ops = OpCounter::new();
                subcode_prefix_table(&code, j, &w, &mut ops).map_err(|e| e.to_string())?;
                ensure(
                    ops.additions as f64 <= bound + 1e-9,
                    "prefix table over bound",
                )?;
            }
            for j in 1..=code.mu() {
                let mut ops = OpCounter::new();
                subcode_suffix_table(&code, j, &w, &mut ops).map_err(|e| e.to_string())?;
                ensure(
                    ops.additions as f64 <= bound + 1e-9,
                    "suffix table over bound",
                )?;
            }
            // Whole decodes: 2 q^2 n log_q(n) N.
            for big_n in [2 * code.mu() + 1, 2 * code.mu() + 5] {
                let symbols: Vec<u8> = (0..big_n * n)
                    .map(|_| rng.random_range(0..q as u8))
                    .collect();
                let rx = Frame::new(big_n, n, symbols).map_err(|e| e.to_string())?;
                let result = fast_viterbi_decode(&code, &rx).map_err(|e| e.to_string())?;
                let decode_bound = 2.0 * bound * big_n as f64;
                ensure(
                    result.ops.additions as f64 <= decode_bound + 1e-6,
                    format!(
                        "decode at ({q},{k},{delta}) N={big_n}: {} > {decode_bound}",
                        result.ops.additions
                    ),
                )?;
                calls += 1;
            }
            calls += 1 + 2 * code.mu();
        }
    }
    Ok(format!(
        "{calls} instrumented calls all within their bounds"
    ))
}

fn criterion_7() -> CheckResult {
    const ML_CAP: u64 = 8192;
    let mut frames_checked = 0;
    let mut ml_checked = 0;
    for (q, k, delta) in [(2u64, 1, 2), (2, 2, 1), (3, 2, 1), (3, 1, 2)] {
        let f = gf(q);
        for code in [
            ConvolutionalCode::construct_1(&f, k, delta).map_err(|e| e.to_string())?,
            ConvolutionalCode::construct_2(&f, k, delta).map_err(|e| e.to_string())?,
            ConvolutionalCode::construct_3(&f, k, delta).map_err(|e| e.to_string())?,
        ] {
            let mut rng = ChaCha12Rng::seed_from_u64(
                700 + q * 100 + k as u64 * 10 + delta as u64 + code.construction().tag() as u64,
            );
            for &big_n in &[5usize, 9] {
                for &eps in &[0.05f64, 0.2] {
                    let channel = ChannelSpec::new(eps, rng.random()).map_err(|e| e.to_string())?;
                    for trial in 0..125u64 {
                        let blocks = big_n - code.mu();
                        let message: Vec<u8> = (0..blocks * code.k())
                            .map(|_| rng.random_range(0..q as u8))
                            .collect();
                        let tx = code.encode(&message, big_n).map_err(|e| e.to_string())?;
                        let (rx, _) = channel
                            .transmit(code.field(), &tx, trial)
                            .map_err(|e| e.to_string())?;
                        let fast = fast_viterbi_decode(&code, &rx).map_err(|e| e.to_string())?;
                        let classical = viterbi_decode(&code, &rx).map_err(|e| e.to_string())?;
                        ensure(
                            fast.metric == classical.metric,
                            format!(
                                "metric mismatch at ({q},{k},{delta}) tag {} N={big_n}",
                                code.construction().tag()
                            ),
                        )?;
                        let ml_space = (q as u128).pow((code.k() * blocks) as u32);
                        if ml_space <= ML_CAP as u128 {
                            let ml = ml_decode_exhaustive(&code, &rx, ML_CAP)
                                .map_err(|e| e.to_string())?;
                            ensure(
                                ml.metric == fast.metric,
                                format!("ML metric mismatch at ({q},{k},{delta}) N={big_n}"),
                            )?;
                            ml_checked += 1;
                        }
                        frames_checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{frames_checked} frames metric-equal ({ml_checked} also against ML)"
    ))
}

fn criterion_8() -> CheckResult {
    let f = gf(2);
    let code = ConvolutionalCode::construct_1(&f, 1, 2).map_err(|e| e.to_string())?;
    let free = code
        .free_distance(8, DEFAULT_DISTANCE_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(
        free.value == 8 && free.exact,
        format!("free distance {:?}", free),
    )?;
    let mut rng = ChaCha12Rng::seed_from_u64(800);
    for trial in 0..1000 {
        let big_n = 5 + (trial % 4); // lengths 5..8
        let message: Vec<u8> = (0..big_n - 2).map(|_| rng.random_range(0..2)).collect();
        let tx = code.encode(&message, big_n).map_err(|e| e.to_string())?;
        let mut rx = tx.clone();
        let errors = rng.random_range(0..=3usize);
        let mut positions: Vec<usize> = (0..rx.symbols.len()).collect();
        for e in 0..errors {
            let pick = rng.random_range(e..positions.len());
            positions.swap(e, pick);
            rx.symbols[positions[e]] ^= 1;
        }
        for (name, result) in [
            (
                "fast",
                fast_viterbi_decode(&code, &rx).map_err(|e| e.to_string())?,
            ),
            (
                "viterbi",
                viterbi_decode(&code, &rx).map_err(|e| e.to_string())?,
            ),
        ] {
            ensure(
                result.codeword.symbols == tx.symbols,
                format!("{name} failed to correct {errors} errors at trial {trial}"),
            )?;
        }
    }
    Ok("1000 trials with up to 3 errors all recovered exactly".into())
}

fn criterion_9() -> CheckResult {
    let f = gf(2);
    let search =
        optimality_oracle_tiny(&f, 1, 1, 3, DEFAULT_ORACLE_BUDGET).map_err(|e| e.to_string())?;
    ensure(
        search.best_profile == vec![2, 3, 3, 3],
        format!("best profile {:?}", search.best_profile),
    )?;
    let c1 = ConvolutionalCode::construct_1(&f, 1, 1).map_err(|e| e.to_string())?;
    let canon = canonical_column_form(&c1.stacked_matrix()).map_err(|e| e.to_string())?;
    for w in &search.witnesses {
        let wc = canonical_column_form(&w.stacked_matrix()).map_err(|e| e.to_string())?;
        ensure(
            wc == canon,
            "witness does not canonicalize to the construction",
        )?;
    }
    for (j, &d) in search.best_profile.iter().enumerate() {
        let formula = c1
            .column_distance_closed_form(j)
            .map_err(|e| e.to_string())?;
        ensure(
            formula == d,
            format!("formula {formula} != searched {d} at j={j}"),
        )?;
    }
    Ok(format!(
        "profile (2,3,3,3) maximal; all {} witnesses are monomially equivalent to it",
        search.witnesses.len()
    ))
}

fn criterion_10() -> CheckResult {
    // One-weight simplex codes.
    for q in [2u64, 3, 4] {
        let f = gf(q);
        for m in 1..=4usize {
            let s = simplex_generator(&f, m, SimplexOrder::Recursive).map_err(|e| e.to_string())?;
            let expected = q.pow(m as u32 - 1);
            let mut ok = true;
            s.generator.for_each_span_word(|i, w| {
                if i != 0 {
                    ok &= weight(w) == expected;
                }
            });
            ensure(ok, format!("S({q},{m}) is not one-weight"))?;
            let p = plotkin_check(&s.generator, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
            ensure(p.tight, format!("Plotkin not tight for S({q},{m})"))?;
        }
    }
    // MacDonald weight dichotomy: nonzero spans of only the first k rows
    // (indices below q^k) carry the high weight, all else the low one.
    for q in [2u64, 3] {
        let f = gf(q);
        for m in 2..=4usize {
            for k in 1..m {
                let c = macdonald_generator(&f, m, k).map_err(|e| e.to_string())?;
                let qk = (q as usize).pow(k as u32);
                let high = q.pow(m as u32 - 1);
                let low = high - q.pow((m - k - 1) as u32);
                let mut ok = true;
                c.generator.for_each_span_word(|i, w| {
                    if i != 0 {
                        let expected = if i < qk { high } else { low };
                        ok &= weight(w) == expected;
                    }
                });
                ensure(
                    ok,
                    format!("weight dichotomy fails for C at q={q} m={m} k={k}"),
                )?;
            }
        }
    }
    // Ratio inequalities d_{j,1}/n_1 > d_{j,3}/n_3 > d_{j,2}/n_2 for
    // j <= floor(delta/k). The first comparison needs k >= 2: for k = 1
    // constructions 1 and 2 coincide and the ratios are equal.
    for q in [2u64, 3] {
        let f = gf(q);
        for delta in [1usize, 2, 3] {
            let k = 2;
            let c1 = ConvolutionalCode::construct_1(&f, k, delta).map_err(|e| e.to_string())?;
            let c2 = ConvolutionalCode::construct_2(&f, k, delta).map_err(|e| e.to_string())?;
            let c3 = ConvolutionalCode::construct_3(&f, k, delta).map_err(|e| e.to_string())?;
            for j in 0..=delta / k {
                let d1 = c1.column_distance_closed_form(j).unwrap() as u128;
                let d2 = c2.column_distance_closed_form(j).unwrap() as u128;
                let d3 = c3.column_distance_closed_form(j).unwrap() as u128;
                let (n1, n2, n3) = (c1.n() as u128, c2.n() as u128, c3.n() as u128);
                ensure(
                    d1 * n3 > d3 * n1 && d3 * n2 > d2 * n3,
                    format!("ratio chain fails at q={q} delta={delta} j={j}"),
                )?;
            }
        }
    }
    Ok("one-weight, dichotomy, Plotkin tightness, and ratio chain all hold".into())
}

fn criterion_11() -> CheckResult {
    let f = gf(2);
    let mut prev = 1.0f64;
    let mut ratios = Vec::new();
    for delta in [2usize, 3, 4] {
        let code = ConvolutionalCode::construct_1(&f, 1, delta).map_err(|e| e.to_string())?;
        let report =
            complexity_report(&code, 20, 3, 0.1, 1100 + delta as u64).map_err(|e| e.to_string())?;
        let ratio = report.addition_ratio();
        ensure(
            ratio > prev,
            format!("ratio {ratio:.3} at delta={delta} does not exceed {prev:.3}"),
        )?;
        ratios.push(format!("delta={delta}: {ratio:.2}"));
        prev = ratio;
    }
    Ok(format!(
        "classical/fast addition ratios grow: {}",
        ratios.join(", ")
    ))
}
