//! Dense matrices over GF(q), stored as row-major phi-indices.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use std::fmt;
use std::sync::Arc;

/// Dense matrix over GF(q). Entries are phi-indices in {0, .., q-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn zero(field: Arc<FieldSpec>, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: Arc<FieldSpec>, rows: Vec<Vec<u8>>) -> Result<FqMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let q = field.q as u8;
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            if r.iter().any(|&x| x >= q) {
                return Err(Error::InvalidParameter("entry out of field range".into()));
            }
        }
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(FqMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!((v as usize) < self.field.q);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Extracts the sub-matrix formed by a contiguous row range.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> FqMatrix {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        FqMatrix {
            field: self.field.clone(),
            rows: range.len(),
            cols: self.cols,
            data,
        }
    }

    /// Row vector times matrix: u * G.
    pub fn row_vec_mul(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} matrix rows",
                u.len(),
                self.rows
            )));
        }
        let mut out = vec![0u8; self.cols];
        for (r, &coeff) in u.iter().enumerate() {
            if coeff != 0 {
                add_scaled_row(&self.field, &mut out, coeff, self.row(r));
            }
        }
        Ok(out)
    }

    pub fn mat_mul(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = FqMatrix::zero(self.field.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.extend_from_slice(rhs.row(r));
            rows.push(row);
        }
        FqMatrix::from_rows(self.field.clone(), rows)
    }

    pub fn vstack(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Result column j is `self` column `perm[j]`; perm must be a bijection.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<FqMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut seen = vec![false; self.cols];
        for &p in perm {
            if p >= self.cols || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut out = FqMatrix::zero(self.field.clone(), self.rows, self.cols);
        for r in 0..self.rows {
            for (j, &src) in perm.iter().enumerate() {
                out.set(r, j, self.get(r, src));
            }
        }
        Ok(out)
    }

    pub fn scale_column(&self, c: usize, factor: u8) -> Result<FqMatrix> {
        if factor == 0 {
            return Err(Error::ZeroScale);
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            out.set(r, c, self.field.mul(self.get(r, c), factor));
        }
        Ok(out)
    }

    /// Row rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for c in 0..m.cols {
                let (a, b) = (m.get(rank, c), m.get(pivot, c));
                m.set(rank, c, b);
                m.set(pivot, c, a);
            }
            let inv = f.inv(m.get(rank, col)).expect("pivot nonzero");
            for c in 0..m.cols {
                m.set(rank, c, f.mul(m.get(rank, c), inv));
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in 0..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Visits every word u * G of the row span, for all q^rows coefficient
    /// vectors u. The word with index i gets coefficient phi^{-1}(digit_r(i))
    /// on row r, digits base q little-endian, and indices are visited in
    /// increasing order. Rows need not be independent.
    pub fn for_each_span_word<F: FnMut(usize, &[u8])>(&self, mut f: F) {
        let q = self.field.q;
        let n = self.cols;
        // scaled[r][c] = phi^{-1}(c) * row_r
        let scaled: Vec<Vec<Vec<u8>>> = (0..self.rows)
            .map(|r| {
                (0..q as u8)
                    .map(|c| {
                        let mut v = vec![0u8; n];
                        add_scaled_row(&self.field, &mut v, c, self.row(r));
                        v
                    })
                    .collect()
            })
            .collect();
        let mut partials = vec![vec![0u8; n]; self.rows + 1];
        span_rec(&self.field, &scaled, &mut partials, self.rows, 0, &mut f);
    }

    /// All q^rows span words in index order. Prefer `for_each_span_word`
    /// when the span is large.
    pub fn span_words(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        self.for_each_span_word(|_, w| out.push(w.to_vec()));
        out
    }
}

fn span_rec<F: FnMut(usize, &[u8])>(
    field: &FieldSpec,
    scaled: &[Vec<Vec<u8>>],
    partials: &mut [Vec<u8>],
    level: usize,
    index: usize,
    f: &mut F,
) {
    if level == 0 {
        let w = std::mem::take(&mut partials[0]);
        f(index, &w);
        partials[0] = w;
        return;
    }
    let q = field.q;
    let stride = q.pow(level as u32 - 1);
    for d in 0..q {
        let (head, tail) = partials.split_at_mut(level);
        head[level - 1].copy_from_slice(&tail[0]);
        for (x, y) in head[level - 1].iter_mut().zip(&scaled[level - 1][d]) {
            *x = field.add(*x, *y);
        }
        span_rec(field, scaled, partials, level - 1, index + d * stride, f);
    }
}

/// dest += coeff * row, entrywise over GF(q).
pub fn add_scaled_row(field: &FieldSpec, dest: &mut [u8], coeff: u8, row: &[u8]) {
    debug_assert_eq!(dest.len(), row.len());
    if coeff == 0 {
        return;
    }
    for (d, &r) in dest.iter_mut().zip(row) {
        *d = field.add(*d, field.mul(coeff, r));
    }
}

/// Hamming weight of a word.
pub fn weight(v: &[u8]) -> u64 {
    v.iter().filter(|&&x| x != 0).count() as u64
}

/// Hamming distance between two equal-length words.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("hamming distance length".into()));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u64)
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FqMatrix {}x{} over GF({})",
            self.rows, self.cols, self.field.q
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::for_size(q).unwrap())
    }

    #[test]
    fn weight_and_distance() {
        assert_eq!(weight(&[1, 1, 0, 2]), 3);
        assert_eq!(hamming_distance(&[1, 1], &[1, 0]).unwrap(), 1);
    }

    #[test]
    fn row_vector_times_matrix_gf2() {
        let f = gf(2);
        let g = FqMatrix::from_rows(f, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(g.row_vec_mul(&[1, 1]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn span_enumeration_order_and_count() {
        let f = gf(3);
        let g = FqMatrix::from_rows(f, vec![vec![0, 1, 2], vec![0, 0, 1]]).unwrap();
        let words = g.span_words();
        assert_eq!(words.len(), 9);
        assert_eq!(words[0], vec![0, 0, 0]);
        assert_eq!(words[1], vec![0, 1, 2]); // digit 0 scales row 0
        assert_eq!(words[3], vec![0, 0, 1]); // digit 1 scales row 1
        assert_eq!(words[4], vec![0, 1, 0]); // row0 + row1, index 1 + 3
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let f = gf(2);
        let g = FqMatrix::from_rows(f.clone(), vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]])
            .unwrap();
        assert_eq!(g.rank(), 2);
        let id = FqMatrix::from_rows(f, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.rank(), 2);
    }

    #[test]
    fn column_permutation_and_scaling() {
        let f = gf(3);
        let g = FqMatrix::from_rows(f, vec![vec![0, 1, 2]]).unwrap();
        let p = g.permute_columns(&[2, 0, 1]).unwrap();
        assert_eq!(p.row(0), &[2, 0, 1]);
        let s = g.scale_column(2, 2).unwrap();
        assert_eq!(s.row(0), &[0, 1, 1]);
        assert!(g.scale_column(0, 0).is_err());
        assert!(g.permute_columns(&[0, 0, 1]).is_err());
    }

    fn sorted_span_weights(g: &FqMatrix) -> Vec<u64> {
        let mut ws: Vec<u64> = g.span_words().iter().map(|w| weight(w)).collect();
        ws.sort_unstable();
        ws
    }

    proptest! {
        /// Right-multiplication by a monomial matrix preserves the multiset
        /// of row-span weights.
        #[test]
        fn monomial_action_preserves_weight_multiset(
            qidx in 0usize..3,
            entries in proptest::collection::vec(0u8..5, 12),
            perm_seed in 0u64..1000,
            scale_seed in 0u64..1000,
        ) {
            let q = [2u64, 3, 4][qidx];
            let f = gf(q);
            let rows: Vec<Vec<u8>> = entries
                .chunks(4)
                .map(|ch| ch.iter().map(|&x| x % q as u8).collect())
                .collect();
            let g = FqMatrix::from_rows(f.clone(), rows).unwrap();
            // Deterministic permutation + scaling derived from the seeds.
            let mut perm: Vec<usize> = (0..4).collect();
            let mut s = perm_seed;
            for i in (1..4usize).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let mut m = g.permute_columns(&perm).unwrap();
            let mut t = scale_seed;
            for c in 0..4 {
                t = t.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let factor = 1 + (t % (q - 1)) as u8;
                m = m.scale_column(c, factor).unwrap();
            }
            prop_assert_eq!(sorted_span_weights(&g), sorted_span_weights(&m));
        }
    }
}
