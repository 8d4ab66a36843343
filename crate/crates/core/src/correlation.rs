//! Score-vector transforms: agreement counts between a received word and all
//! codewords of first-order Reed-Muller, MacDonald, and related staircase
//! codes, computed through the Kronecker factorization of the codeword
//! matrix with exact addition counting.
//!
//! A received word w of length n over GF(q) becomes a list of n one-hot
//! score vectors S_w. Acting on S_w with the monomial matrix B_z (rows
//! indexed by the codewords of R'(q,m), entries z^{b_ij}) yields, in row i
//! and column l, the agreement count N(b_i + E_l, w) where E_l is the
//! constant word phi^{-1}(l)(1,..,1). B_z equals H^{tensor m} for the q x q
//! matrix H with H_ij = z^{phi^{-1}(i) phi^{-1}(j)}, and the whole action
//! factors into m identical sparse stages,
//! `H^{tensor m} = ((H tensor I tensor .. tensor I) P)^m`,
//! with P the generalized perfect out shuffle on q^m positions. Each stage
//! costs q(q-1) integer additions per position; the shuffle is realized by
//! stride addressing and costs none.
//!
//! Only additions performed on score counts are counted, matching how the
//! complexity statements account: (q-1) vector additions of length q per
//! output vector inside a stage, plus one addition per table entry when
//! copies or blocks are summed.

use crate::block::rm_prime_generator;
use crate::conv::{Construction, ConvolutionalCode};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Counts of integer additions and comparisons consumed by an operation.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub additions: u64,
    pub comparisons: u64,
}

impl OpCounter {
    pub fn new() -> OpCounter {
        OpCounter::default()
    }

    pub fn absorb(&mut self, other: OpCounter) {
        self.additions += other.additions;
        self.comparisons += other.comparisons;
    }

    pub fn since(&self, earlier: OpCounter) -> OpCounter {
        OpCounter {
            additions: self.additions - earlier.additions,
            comparisons: self.comparisons - earlier.comparisons,
        }
    }
}

/// Agreement counts for all q^m codewords of R'(q,m): entry (i, l) is
/// N(b_i + E_l, w) for the i-th codeword b_i in lexicographic coefficient
/// order. Column 0 reads off plain agreements with b_i because phi(0) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    pub q: usize,
    pub rows: usize,
    data: Vec<u64>,
}

impl ScoreTable {
    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.q + col]
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.q..(row + 1) * self.q]
    }
}

/// One-hot score vectors for a received word, flattened row-major
/// (position i occupies entries [i*q, (i+1)*q)).
pub fn score_init(field: &FieldSpec, w: &[u8]) -> Vec<u64> {
    let q = field.q;
    let mut s = vec![0u64; w.len() * q];
    for (i, &sym) in w.iter().enumerate() {
        debug_assert!((sym as usize) < q);
        s[i * q + sym as usize] = 1;
    }
    s
}

/// The group action z^c on a single score vector: out_j = s_{phi(phi^{-1}(j)+c)}.
pub fn star_scalar(field: &FieldSpec, c: u8, s: &[u64]) -> Vec<u64> {
    let q = field.q;
    debug_assert_eq!(s.len(), q);
    (0..q).map(|j| s[field.add(j as u8, c) as usize]).collect()
}

/// The generalized perfect out shuffle on sigma*tau positions, returned as a
/// source map: new position j holds the element from old position
/// (j mod sigma) * tau + j / sigma.
pub fn shuffle_permutation(sigma: usize, tau: usize) -> Vec<usize> {
    (0..sigma * tau)
        .map(|j| (j % sigma) * tau + j / sigma)
        .collect()
}

fn qpow(q: usize, e: usize) -> usize {
    q.checked_pow(e as u32).expect("q^e overflow")
}

/// log base q of n, as the real number used in the complexity bounds.
pub fn log_q(q: usize, n: usize) -> f64 {
    (n as f64).ln() / (q as f64).ln()
}

/// Fast computation of B_z star S_w for R'(q,m), by m identical stages of
/// the factorized transform. Counts exactly q(q-1) n additions per stage.
pub fn fast_rm_table(
    field: &FieldSpec,
    m: usize,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<ScoreTable> {
    let q = field.q;
    let n = qpow(q, m);
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "word length {} != q^m = {}",
            w.len(),
            n
        )));
    }
    let before = counter.additions;
    let mut cur = score_init(field, w);
    let mut next = vec![0u64; n * q];
    let big_q = if m == 0 { 0 } else { n / q };
    for _stage in 0..m {
        // Stage operator (H tensor I..I) P fused: the shuffle is stride
        // addressing, so output vector a_hi*Q + g is the star-sum of the q
        // consecutive input vectors g*q .. g*q + q - 1.
        for g in 0..big_q {
            let in_base = g * q * q;
            for a_hi in 0..q {
                let out_off = (a_hi * big_q + g) * q;
                next[out_off..out_off + q].copy_from_slice(&cur[in_base..in_base + q]);
                for h in 1..q {
                    let shift = field.mul(a_hi as u8, h as u8);
                    let vec_off = in_base + h * q;
                    for (jj, slot) in next[out_off..out_off + q].iter_mut().enumerate() {
                        *slot += cur[vec_off + field.add(jj as u8, shift) as usize];
                    }
                }
            }
        }
        counter.additions += (n * (q - 1) * q) as u64;
        std::mem::swap(&mut cur, &mut next);
    }
    let bound = (q * (q - 1) * n * m) as u64;
    assert!(
        counter.additions - before <= bound,
        "fast transform exceeded its addition bound"
    );
    Ok(ScoreTable {
        q,
        rows: n,
        data: cur,
    })
}

/// Direct evaluation of B_z star S_w, codeword by codeword. Oracle for
/// `fast_rm_table`.
pub fn naive_rm_table(field: &Arc<FieldSpec>, m: usize, w: &[u8]) -> Result<ScoreTable> {
    let q = field.q;
    let n = qpow(q, m);
    if w.len() != n {
        return Err(Error::DimensionMismatch("word length".into()));
    }
    let gen = rm_prime_generator(field, m).generator;
    let mut data = vec![0u64; n * q];
    gen.for_each_span_word(|i, b| {
        for l in 0..q {
            let count = b
                .iter()
                .zip(w)
                .filter(|&(&bv, &wv)| field.add(bv, l as u8) == wv)
                .count() as u64;
            data[i * q + l] = count;
        }
    });
    Ok(ScoreTable { q, rows: n, data })
}

fn staircase_blocks(code: &ConvolutionalCode) -> Result<usize> {
    Ok(match code.construction() {
        Construction::C1 => code.k(),
        Construction::C2 => 1,
        Construction::C3 => code.delta() + code.k(),
        Construction::Custom => return Err(Error::NotFastDecodable),
    })
}

/// Agreements of w with all codewords of the code generated by the first
/// `cut` rows of the staircase(q, m, n_blocks) matrix. Index i of the output
/// carries the coefficient vector with digit r (base q, little-endian)
/// multiplying staircase row r. For cut = m this is the full stacked code.
fn staircase_window_table(
    field: &FieldSpec,
    m: usize,
    n_blocks: usize,
    cut: usize,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<Vec<u64>> {
    let q = field.q;
    let expected: usize = (1..=n_blocks).map(|i| qpow(q, m - i)).sum();
    if w.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "word length {} != staircase width {}",
            w.len(),
            expected
        )));
    }
    let present = n_blocks.min(cut);
    let copies = qpow(q, m - cut);
    let mut tables: Vec<ScoreTable> = Vec::with_capacity(present);
    let mut offset = 0;
    for i in 1..=present {
        let seg_len = qpow(q, cut - i);
        let mut sum: Option<ScoreTable> = None;
        for c in 0..copies {
            let seg = &w[offset + c * seg_len..offset + (c + 1) * seg_len];
            let t = fast_rm_table(field, cut - i, seg, counter)?;
            match &mut sum {
                None => sum = Some(t),
                Some(acc) => {
                    for (a, b) in acc.data.iter_mut().zip(&t.data) {
                        *a += b;
                    }
                    counter.additions += t.data.len() as u64;
                }
            }
        }
        tables.push(sum.expect("at least one copy"));
        offset += qpow(q, m - i);
    }
    // Blocks beyond the cut are all-zero inside the window; they contribute
    // the number of zero symbols in their column range to every codeword.
    let tail_base: u64 = w[offset..].iter().filter(|&&s| s == 0).count() as u64;
    let has_tail = n_blocks > cut;

    let size = qpow(q, cut);
    let mut out = vec![0u64; size];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut acc = 0u64;
        for (b, t) in tables.iter().enumerate() {
            let i = b + 1;
            let row = idx / qpow(q, i);
            let col = (idx / qpow(q, i - 1)) % q;
            acc += t.entry(row, col);
        }
        if has_tail {
            acc += tail_base;
        }
        *slot = acc;
    }
    let terms = present as u64 + has_tail as u64;
    counter.additions += terms.saturating_sub(1) * size as u64;
    Ok(out)
}

/// Agreements of w with all q^m codewords of the MacDonald code
/// C_{m,m-k}(q) in staircase order, indexed by the little-endian
/// phi-encoding of the coefficient vector. Costs at most
/// q^2 n log_q(n) counted additions. k = m is allowed and yields the
/// recursive-order simplex code.
pub fn macdonald_distance_table(
    field: &FieldSpec,
    m: usize,
    k: usize,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<Vec<u64>> {
    if k < 1 || k > m {
        return Err(Error::InvalidParameter("need 1 <= k <= m".into()));
    }
    let before = counter.additions;
    let out = staircase_window_table(field, m, k, m, w, counter)?;
    assert_table_bound(field.q, w.len(), counter.additions - before);
    Ok(out)
}

/// Agreements of w with all codewords of the stacked block code
/// (G_0; ..; G~_mu) of a tagged construction, indexed by the branch index
/// (u + q^k * state).
pub fn stacked_agreement_table(
    code: &ConvolutionalCode,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<Vec<u64>> {
    let m = code.delta() + code.k();
    let before = counter.additions;
    let out = staircase_window_table(code.field(), m, staircase_blocks(code)?, m, w, counter)?;
    assert_table_bound(code.q(), w.len(), counter.additions - before);
    Ok(out)
}

/// Agreements of w with all codewords of the prefix code generated by
/// (G_0; ..; G_j), for 0 <= j <= mu-1; the table index encodes the
/// coefficient vector of the first (j+1)k stacked rows.
pub fn subcode_prefix_table(
    code: &ConvolutionalCode,
    j: usize,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<Vec<u64>> {
    if j + 1 > code.mu() {
        return Err(Error::InvalidParameter(format!(
            "prefix window j={j} out of range"
        )));
    }
    let m = code.delta() + code.k();
    let cut = (j + 1) * code.k();
    let before = counter.additions;
    let out = staircase_window_table(code.field(), m, staircase_blocks(code)?, cut, w, counter)?;
    assert_table_bound(code.q(), w.len(), counter.additions - before);
    Ok(out)
}

/// Agreements of w with all codewords of the suffix code generated by
/// (G_j; ..; G~_mu), for 1 <= j <= mu. The table has q^{delta-(j-1)k}
/// entries indexed by the coefficient vector of stacked rows jk..delta+k.
///
/// Each staircase block that loses its all-one row to the window turns into
/// strided copies of R'(q, m-jk); those are transformed per copy and only
/// column 0 of each table is kept (the plain agreement with the codeword,
/// valid because phi(0) = 0). Blocks fully inside the window form a smaller
/// staircase handled whole.
pub fn subcode_suffix_table(
    code: &ConvolutionalCode,
    j: usize,
    w: &[u8],
    counter: &mut OpCounter,
) -> Result<Vec<u64>> {
    if j < 1 || j > code.mu() {
        return Err(Error::InvalidParameter(format!(
            "suffix window j={j} out of range"
        )));
    }
    let field = code.field().clone();
    let q = code.q();
    let m = code.delta() + code.k();
    let n_blocks = staircase_blocks(code)?;
    let jk = j * code.k();
    let mp = m - jk;
    let expected: usize = (1..=n_blocks).map(|i| qpow(q, m - i)).sum();
    if w.len() != expected {
        return Err(Error::DimensionMismatch("word length".into()));
    }
    let before = counter.additions;
    let size = qpow(q, mp);
    let mut acc = vec![0u64; size];
    let mut first_term = true;
    let mut offset = 0;
    for i in 1..=n_blocks.min(jk) {
        let rep = qpow(q, jk - i);
        let mut copy = vec![0u8; size];
        for r in 0..rep {
            for (g, slot) in copy.iter_mut().enumerate() {
                *slot = w[offset + g * rep + r];
            }
            let t = fast_rm_table(&field, mp, &copy, counter)?;
            if first_term {
                for (a, row) in acc.iter_mut().zip(0..size) {
                    *a = t.entry(row, 0);
                }
                first_term = false;
            } else {
                for (a, row) in acc.iter_mut().zip(0..size) {
                    *a += t.entry(row, 0);
                }
                counter.additions += size as u64;
            }
        }
        offset += qpow(q, m - i);
    }
    if n_blocks > jk {
        let sub = staircase_window_table(&field, mp, n_blocks - jk, mp, &w[offset..], counter)?;
        if first_term {
            acc = sub;
        } else {
            for (a, b) in acc.iter_mut().zip(&sub) {
                *a += b;
            }
            counter.additions += size as u64;
        }
    }
    assert_table_bound(q, w.len(), counter.additions - before);
    Ok(acc)
}

fn assert_table_bound(q: usize, n: usize, additions: u64) {
    let bound = q as f64 * q as f64 * n as f64 * log_q(q, n);
    assert!(
        additions as f64 <= bound + 1e-9,
        "table construction used {additions} additions, bound {bound}"
    );
}

/// Checks the symbolic identity H^{tensor m} = ((H tensor I .. I) P)^m over
/// the group ring, materializing both sides entrywise.
#[allow(clippy::needless_range_loop)] // (i, j) index arithmetic mirrors the matrix algebra
pub fn kronecker_factorization_identity(field: &FieldSpec, m: usize) -> bool {
    type Elem = BTreeMap<u8, i64>;
    let q = field.q;
    let n = qpow(q, m);
    let big_q = n / q;

    let monomial = |e: u8| -> Elem { BTreeMap::from([(e, 1)]) };
    let mul = |a: &Elem, b: &Elem| -> Elem {
        let mut out = Elem::new();
        for (&ea, &ca) in a {
            for (&eb, &cb) in b {
                *out.entry(field.add(ea, eb)).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };
    let mat_mul = |a: &Vec<Vec<Elem>>, b: &Vec<Vec<Elem>>| -> Vec<Vec<Elem>> {
        let mut out = vec![vec![Elem::new(); n]; n];
        for i in 0..n {
            for s in 0..n {
                if a[i][s].is_empty() {
                    continue;
                }
                for j in 0..n {
                    if b[s][j].is_empty() {
                        continue;
                    }
                    let prod = mul(&a[i][s], &b[s][j]);
                    let slot = &mut out[i][j];
                    for (e, c) in prod {
                        *slot.entry(e).or_insert(0) += c;
                    }
                    slot.retain(|_, c| *c != 0);
                }
            }
        }
        out
    };

    // K = H tensor I_{q^{m-1}}, with H_{ij} = z^{phi^{-1}(i) phi^{-1}(j)}.
    let mut k_mat = vec![vec![Elem::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i % big_q == j % big_q {
                k_mat[i][j] = monomial(field.mul((i / big_q) as u8, (j / big_q) as u8));
            }
        }
    }
    // P as a matrix: (P x)_s = x_{src(s)}, so P[s][src(s)] = z^0.
    let src = shuffle_permutation(big_q, q);
    let mut p_mat = vec![vec![Elem::new(); n]; n];
    for (s, &t) in src.iter().enumerate() {
        p_mat[s][t] = monomial(0);
    }

    let stage = mat_mul(&k_mat, &p_mat);
    let mut acc = stage.clone();
    for _ in 1..m {
        acc = mat_mul(&acc, &stage);
    }

    for i in 0..n {
        for j in 0..n {
            let mut exp = 0u8;
            let (mut a, mut b) = (i, j);
            for _ in 0..m {
                exp = field.add(exp, field.mul((a % q) as u8, (b % q) as u8));
                a /= q;
                b /= q;
            }
            if acc[i][j] != monomial(exp) {
                return false;
            }
        }
    }
    true
}

/// Hamming distances to all codewords recovered from an agreement table:
/// d = |w| - N.
pub fn distances_from_agreements(word_len: usize, agreements: &[u64]) -> Vec<u64> {
    agreements.iter().map(|&a| word_len as u64 - a).collect()
}
