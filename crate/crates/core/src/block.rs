//! Structured block-code generator matrices and exhaustive oracles.
//!
//! Builds simplex S(q,m), first-order Reed-Muller R(q,m) and its variant
//! R'(q,m) without the all-one row, and MacDonald C_{m,m-k}(q) generators,
//! plus brute-force minimum distance, the Plotkin sum check, and a canonical
//! form under monomial column equivalence.
//!
//! Two column orders matter throughout the crate. The *staircase* order
//! nests R(q,m-1), R(q,m-2), .. as diagonal blocks, each block carrying its
//! all-one row first and its evaluation columns in lexicographic phi-order;
//! with k blocks this is the MacDonald generator, with m blocks it is the
//! simplex generator in recursive order. The *block-X* order groups simplex
//! columns as [S(q,k) .. S(q,k); X_1 .. X_{q^delta}] and is kept as
//! first-class data because the convolutional construction is stated in it.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{weight, FqMatrix};
use std::collections::HashMap;
use std::sync::Arc;

/// Default cap on the number of enumerated codewords for the oracles.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Simplex,
    Rm,
    RmPrime,
    MacDonald,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnOrderTag {
    /// Nested staircase of Reed-Muller blocks.
    Staircase,
    /// [S(q,k) copies; X blocks; trailing S(q,delta)] grouping.
    BlockX,
    /// Plain lexicographic evaluation order.
    Lexicographic,
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexOrder {
    Recursive,
    BlockX { k: usize, delta: usize },
}

/// Placement of the all-one row in a Reed-Muller generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AllOneRow {
    First,
    Last,
}

#[derive(Debug, Clone)]
pub struct BlockCodeSpec {
    pub kind: BlockKind,
    pub m: usize,
    /// MacDonald parameter k; 0 when not applicable.
    pub mac_k: usize,
    pub generator: FqMatrix,
    pub order: ColumnOrderTag,
}

fn qpow(q: usize, e: usize) -> usize {
    q.checked_pow(e as u32).expect("q^e overflow")
}

/// Number of columns of S(q,m): (q^m - 1) / (q - 1).
pub fn simplex_length(q: usize, m: usize) -> usize {
    (qpow(q, m) - 1) / (q - 1)
}

/// Number of columns of C_{m,m-k}(q): (q^m - q^{m-k}) / (q - 1).
pub fn macdonald_length(q: usize, m: usize, k: usize) -> usize {
    (qpow(q, m) - qpow(q, m - k)) / (q - 1)
}

/// The m x (q^{m-1} + .. + q^{m-blocks}) staircase of Reed-Muller blocks.
/// Block i (1-indexed) spans rows i-1..m, its first row all-one, its columns
/// in lexicographic phi-order with the row right below the all-one row as
/// the fastest-varying digit. With blocks = k this is C_{m,m-k}(q); with
/// blocks = m it is S(q,m) in recursive order.
pub fn staircase_matrix(field: &Arc<FieldSpec>, m: usize, blocks: usize) -> FqMatrix {
    assert!(blocks >= 1 && blocks <= m);
    let q = field.q;
    let cols: usize = (1..=blocks).map(|i| qpow(q, m - i)).sum();
    let mut g = FqMatrix::zero(field.clone(), m, cols);
    let mut offset = 0;
    for i in 1..=blocks {
        let width = qpow(q, m - i);
        for c in 0..width {
            g.set(i - 1, offset + c, 1);
            let mut digits = c;
            for l in 0..(m - i) {
                g.set(i + l, offset + c, (digits % q) as u8);
                digits /= q;
            }
        }
        offset += width;
    }
    g
}

/// Generator of R'(q,m): rows g_0..g_{m-1}, columns all of GF(q)^m in
/// lexicographic phi-order with g_0 the fastest-varying digit.
pub fn rm_prime_generator(field: &Arc<FieldSpec>, m: usize) -> BlockCodeSpec {
    let q = field.q;
    let n = qpow(q, m);
    let mut g = FqMatrix::zero(field.clone(), m, n);
    for c in 0..n {
        let mut digits = c;
        for l in 0..m {
            g.set(l, c, (digits % q) as u8);
            digits /= q;
        }
    }
    BlockCodeSpec {
        kind: BlockKind::RmPrime,
        m,
        mac_k: 0,
        generator: g,
        order: ColumnOrderTag::Lexicographic,
    }
}

/// Generator of R(q,m) with the all-one row placed first or last.
pub fn rm_generator(field: &Arc<FieldSpec>, m: usize, all_one: AllOneRow) -> BlockCodeSpec {
    let prime = rm_prime_generator(field, m);
    let n = prime.generator.cols();
    let ones = FqMatrix::from_rows(field.clone(), vec![vec![1u8; n]]).unwrap();
    let generator = match all_one {
        AllOneRow::First => ones.vstack(&prime.generator).unwrap(),
        AllOneRow::Last => prime.generator.vstack(&ones).unwrap(),
    };
    BlockCodeSpec {
        kind: BlockKind::Rm,
        m,
        mac_k: 0,
        generator,
        order: ColumnOrderTag::Lexicographic,
    }
}

/// Generator of the simplex code S(q,m) in the requested column order.
pub fn simplex_generator(
    field: &Arc<FieldSpec>,
    m: usize,
    order: SimplexOrder,
) -> Result<BlockCodeSpec> {
    if m < 1 {
        return Err(Error::InvalidParameter("simplex needs m >= 1".into()));
    }
    let generator = match order {
        SimplexOrder::Recursive => staircase_matrix(field, m, m),
        SimplexOrder::BlockX { k, delta } => {
            if k + delta != m || k < 1 {
                return Err(Error::InvalidParameter(format!(
                    "block-X split {k}+{delta} != {m}"
                )));
            }
            simplex_block_x(field, k, delta)?
        }
    };
    let order_tag = match order {
        SimplexOrder::Recursive => ColumnOrderTag::Staircase,
        SimplexOrder::BlockX { .. } => ColumnOrderTag::BlockX,
    };
    Ok(BlockCodeSpec {
        kind: BlockKind::Simplex,
        m,
        mac_k: 0,
        generator,
        order: order_tag,
    })
}

/// [S(q,k) .. S(q,k), 0; X_1 .. X_{q^delta}, S(q,delta)] with the X_i
/// enumerating GF(q)^delta in phi-index order.
fn simplex_block_x(field: &Arc<FieldSpec>, k: usize, delta: usize) -> Result<FqMatrix> {
    let q = field.q;
    let m = k + delta;
    let top = staircase_matrix(field, k, k); // S(q,k), recursive order
    let sk_len = top.cols();
    let mut g = FqMatrix::zero(field.clone(), m, simplex_length(q, m));
    let copies = qpow(q, delta);
    for x in 0..copies {
        let offset = x * sk_len;
        for c in 0..sk_len {
            for r in 0..k {
                g.set(r, offset + c, top.get(r, c));
            }
            let mut digits = x;
            for l in 0..delta {
                g.set(k + l, offset + c, (digits % q) as u8);
                digits /= q;
            }
        }
    }
    if delta >= 1 {
        let tail = staircase_matrix(field, delta, delta); // S(q,delta)
        let offset = copies * sk_len;
        for c in 0..tail.cols() {
            for r in 0..delta {
                g.set(k + r, offset + c, tail.get(r, c));
            }
        }
    }
    Ok(g)
}

/// Generator of the MacDonald code C_{m,m-k}(q) in staircase form.
pub fn macdonald_generator(field: &Arc<FieldSpec>, m: usize, k: usize) -> Result<BlockCodeSpec> {
    if k < 1 || k > m - 1 {
        return Err(Error::InvalidParameter(format!(
            "MacDonald needs 1 <= k <= m-1, got k={k}, m={m}"
        )));
    }
    Ok(BlockCodeSpec {
        kind: BlockKind::MacDonald,
        m,
        mac_k: k,
        generator: staircase_matrix(field, m, k),
        order: ColumnOrderTag::Staircase,
    })
}

fn check_budget(q: usize, rows: usize, budget: u64) -> Result<()> {
    let needed = (q as u128).checked_pow(rows as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    Ok(())
}

/// Exact minimum nonzero weight of the row span of `g`, by full enumeration.
pub fn min_distance_exhaustive(g: &FqMatrix, budget: u64) -> Result<u64> {
    check_budget(g.field().q, g.rows(), budget)?;
    let mut min = u64::MAX;
    g.for_each_span_word(|i, w| {
        if i != 0 {
            min = min.min(weight(w));
        }
    });
    if min == u64::MAX {
        return Err(Error::InvalidParameter("zero-dimensional code".into()));
    }
    Ok(min)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotkinCheck {
    /// Sum of weights over the full row span (q^rows words).
    pub total_weight: u64,
    /// Bound n * |C| * (1 - 1/q) as an exact fraction num/den.
    pub bound_num: u64,
    pub bound_den: u64,
    pub tight: bool,
}

/// Compares sum_{c} wt(c) over the row span against n * |C| * (1 - 1/q).
pub fn plotkin_check(g: &FqMatrix, budget: u64) -> Result<PlotkinCheck> {
    check_budget(g.field().q, g.rows(), budget)?;
    let q = g.field().q as u64;
    let mut total = 0u64;
    let mut count = 0u64;
    g.for_each_span_word(|_, w| {
        total += weight(w);
        count += 1;
    });
    let bound_num = g.cols() as u64 * count * (q - 1);
    let bound_den = q;
    Ok(PlotkinCheck {
        total_weight: total,
        bound_num,
        bound_den,
        tight: total * bound_den == bound_num,
    })
}

/// Normal form under monomial column equivalence: scale each column so its
/// first nonzero entry is 1, then sort columns lexicographically by
/// phi-indices. Two generators with the same row space content are related
/// by a monomial right factor iff their canonical forms coincide.
pub fn canonical_column_form(g: &FqMatrix) -> Result<FqMatrix> {
    let field = g.field().clone();
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(g.cols());
    for c in 0..g.cols() {
        let col = g.column(c);
        let Some(first) = col.iter().position(|&x| x != 0) else {
            return Err(Error::ZeroColumn(c));
        };
        let inv = field.inv(col[first])?;
        cols.push(col.iter().map(|&x| field.mul(x, inv)).collect());
    }
    cols.sort_unstable();
    let rows = g.rows();
    let out_rows: Vec<Vec<u8>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    FqMatrix::from_rows(field, out_rows)
}

/// True iff the two matrices have the same multiset of columns.
pub fn column_multiset_equal(a: &FqMatrix, b: &FqMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let mut ca: Vec<Vec<u8>> = (0..a.cols()).map(|c| a.column(c)).collect();
    let mut cb: Vec<Vec<u8>> = (0..b.cols()).map(|c| b.column(c)).collect();
    ca.sort_unstable();
    cb.sort_unstable();
    ca == cb
}

/// A permutation `perm` with from.permute_columns(&perm) == to, when the two
/// matrices have identical column multisets.
pub fn conversion_permutation(from: &FqMatrix, to: &FqMatrix) -> Option<Vec<usize>> {
    if from.rows() != to.rows() || from.cols() != to.cols() {
        return None;
    }
    let mut pool: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for c in (0..from.cols()).rev() {
        pool.entry(from.column(c)).or_default().push(c);
    }
    let mut perm = Vec::with_capacity(to.cols());
    for c in 0..to.cols() {
        let src = pool.get_mut(&to.column(c))?.pop()?;
        perm.push(src);
    }
    Some(perm)
}
