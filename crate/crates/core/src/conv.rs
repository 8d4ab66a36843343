//! Convolutional codes: representation, the three structured constructions,
//! encoding with termination, and exhaustive distance oracles.
//!
//! A code is carried by its coefficient matrices G_0..G_mu (all k x n) with
//! generic row degrees: mu = ceil(delta/k) and exactly k*mu - delta rows of
//! G_mu are zero. The stacked matrix (G_0; ..; G~_mu) built from the nonzero
//! rows of G_mu is the block code that drives both the distance theory and
//! the fast decoder:
//!
//!   construction 1: stacked = MacDonald C_{delta+k,delta}(q), staircase order
//!   construction 2: stacked = R(q, delta+k-1), all-one row first
//!   construction 3: stacked = S(q, delta+k), recursive order
//!
//! The placement of the G~_mu rows inside G_mu is a free choice for
//! constructions 1 and 3; they go on top here, while construction 2 fixes
//! increasing row degrees (zero rows first). Column distances do not depend
//! on the placement, which `tests::tilde_placement_does_not_change_distances`
//! checks at desk scale.

use crate::block::{rm_generator, staircase_matrix, AllOneRow};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::frame::Frame;
use crate::matrix::{add_scaled_row, weight, FqMatrix};
use std::sync::Arc;

/// Default cap on q^{k(j+1)} for the column-distance oracle.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 24;
/// Default cap on code length n for the constructions.
pub const DEFAULT_MAX_LENGTH: usize = 1 << 16;
/// Default cap on the number of candidate stacks in the tiny optimality oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    C1,
    C2,
    C3,
    Custom,
}

impl Construction {
    pub fn tag(&self) -> u8 {
        match self {
            Construction::C1 => 1,
            Construction::C2 => 2,
            Construction::C3 => 3,
            Construction::Custom => 0,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Construction> {
        Ok(match tag {
            0 => Construction::Custom,
            1 => Construction::C1,
            2 => Construction::C2,
            3 => Construction::C3,
            _ => return Err(Error::Parse(format!("unknown construction tag {tag}"))),
        })
    }
}

/// Where the nonzero rows of G_mu sit inside G_mu.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildePlacement {
    Top,
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionalCode {
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    delta: usize,
    mu: usize,
    coeffs: Vec<FqMatrix>,
    tilde_rows: Vec<usize>,
    construction: Construction,
}

#[derive(Debug, Clone)]
pub struct SlidingMatrix {
    pub j: usize,
    pub matrix: FqMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeDistance {
    pub value: u64,
    /// False when the value comes from the stabilization heuristic for
    /// custom codes rather than a construction formula.
    pub exact: bool,
}

/// Result of the tiny-scale exhaustive optimality search.
#[derive(Debug, Clone)]
pub struct OptimalitySearch {
    pub best_profile: Vec<u64>,
    pub witnesses: Vec<ConvolutionalCode>,
}

fn qpow(q: usize, e: usize) -> usize {
    q.checked_pow(e as u32).expect("q^e overflow")
}

impl ConvolutionalCode {
    /// Construction 1: stacked coefficients equal the MacDonald staircase
    /// C_{delta+k,delta}(q); n = q^delta (q^k - 1)/(q - 1).
    pub fn construct_1(
        field: &Arc<FieldSpec>,
        k: usize,
        delta: usize,
    ) -> Result<ConvolutionalCode> {
        check_params(k, delta)?;
        let m = delta + k;
        let stacked = staircase_matrix(field, m, k);
        check_length(stacked.cols())?;
        Self::from_stacked(
            field,
            &stacked,
            k,
            delta,
            TildePlacement::Top,
            Construction::C1,
        )
    }

    /// Construction 2: stacked coefficients equal R(q, delta+k-1) with the
    /// all-one row first; n = q^{delta+k-1}. Row degrees increase, so the
    /// G~_mu rows are the last rows of G_mu.
    pub fn construct_2(
        field: &Arc<FieldSpec>,
        k: usize,
        delta: usize,
    ) -> Result<ConvolutionalCode> {
        check_params(k, delta)?;
        let m = delta + k;
        let stacked = rm_generator(field, m - 1, AllOneRow::First).generator;
        check_length(stacked.cols())?;
        Self::from_stacked(
            field,
            &stacked,
            k,
            delta,
            TildePlacement::Bottom,
            Construction::C2,
        )
    }

    /// Construction 3: stacked coefficients equal S(q, delta+k) in recursive
    /// order; n = (q^{delta+k} - 1)/(q - 1).
    pub fn construct_3(
        field: &Arc<FieldSpec>,
        k: usize,
        delta: usize,
    ) -> Result<ConvolutionalCode> {
        check_params(k, delta)?;
        let m = delta + k;
        let stacked = staircase_matrix(field, m, m);
        check_length(stacked.cols())?;
        Self::from_stacked(
            field,
            &stacked,
            k,
            delta,
            TildePlacement::Top,
            Construction::C3,
        )
    }

    /// Builds a code from a (delta+k) x n stacked matrix (G_0; ..; G~_mu).
    pub fn from_stacked(
        field: &Arc<FieldSpec>,
        stacked: &FqMatrix,
        k: usize,
        delta: usize,
        placement: TildePlacement,
        construction: Construction,
    ) -> Result<ConvolutionalCode> {
        if stacked.rows() != delta + k {
            return Err(Error::DimensionMismatch(format!(
                "stacked matrix has {} rows, expected {}",
                stacked.rows(),
                delta + k
            )));
        }
        let n = stacked.cols();
        let mu = delta.div_ceil(k);
        let tilde_count = delta + k - mu * k;
        let mut coeffs: Vec<FqMatrix> = (0..mu)
            .map(|i| stacked.row_block(i * k..(i + 1) * k))
            .collect();
        let tilde = stacked.row_block(mu * k..delta + k);
        let mut g_mu = FqMatrix::zero(field.clone(), k, n);
        let first_row = match placement {
            TildePlacement::Top => 0,
            TildePlacement::Bottom => k - tilde_count,
        };
        let tilde_rows: Vec<usize> = (first_row..first_row + tilde_count).collect();
        for (t, &r) in tilde_rows.iter().enumerate() {
            for c in 0..n {
                g_mu.set(r, c, tilde.get(t, c));
            }
        }
        coeffs.push(g_mu);
        let code = ConvolutionalCode {
            field: field.clone(),
            n,
            k,
            delta,
            mu,
            coeffs,
            tilde_rows,
            construction,
        };
        if code.coeffs[0].rank() != k {
            return Err(Error::InvalidParameter(
                "G_0 is not full row rank (not delay-free)".into(),
            ));
        }
        Ok(code)
    }

    /// Builds a custom code from coefficient matrices G_0..G_mu. The degree
    /// is derived from the generic-row-degree shape: delta = k*mu minus the
    /// number of zero rows of G_mu.
    pub fn from_parts(field: &Arc<FieldSpec>, coeffs: Vec<FqMatrix>) -> Result<ConvolutionalCode> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter("need at least G_0 and G_1".into()));
        }
        let k = coeffs[0].rows();
        let n = coeffs[0].cols();
        if coeffs.iter().any(|g| g.rows() != k || g.cols() != n) {
            return Err(Error::DimensionMismatch(
                "coefficient matrices disagree in shape".into(),
            ));
        }
        let mu = coeffs.len() - 1;
        let g_mu = &coeffs[mu];
        let tilde_rows: Vec<usize> = (0..k)
            .filter(|&r| g_mu.row(r).iter().any(|&x| x != 0))
            .collect();
        if tilde_rows.is_empty() {
            return Err(Error::InvalidParameter("G_mu is zero; reduce mu".into()));
        }
        let delta = k * mu - (k - tilde_rows.len());
        if coeffs[0].rank() != k {
            return Err(Error::InvalidParameter(
                "G_0 is not full row rank (not delay-free)".into(),
            ));
        }
        Ok(ConvolutionalCode {
            field: field.clone(),
            n,
            k,
            delta,
            mu,
            coeffs,
            tilde_rows,
            construction: Construction::Custom,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn q(&self) -> usize {
        self.field.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn delta(&self) -> usize {
        self.delta
    }
    pub fn mu(&self) -> usize {
        self.mu
    }
    pub fn coeff(&self, i: usize) -> &FqMatrix {
        &self.coeffs[i]
    }
    pub fn coeffs(&self) -> &[FqMatrix] {
        &self.coeffs
    }
    pub fn tilde_rows(&self) -> &[usize] {
        &self.tilde_rows
    }
    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// The (delta+k) x n stacked matrix (G_0; ..; G_{mu-1}; G~_mu).
    pub fn stacked_matrix(&self) -> FqMatrix {
        let mut stacked = self.coeffs[0].clone();
        for i in 1..self.mu {
            stacked = stacked.vstack(&self.coeffs[i]).unwrap();
        }
        let g_mu = &self.coeffs[self.mu];
        let tilde_rows_mat: Vec<Vec<u8>> = self
            .tilde_rows
            .iter()
            .map(|&r| g_mu.row(r).to_vec())
            .collect();
        let tilde = FqMatrix::from_rows(self.field.clone(), tilde_rows_mat).unwrap();
        stacked.vstack(&tilde).unwrap()
    }

    /// Number of trellis states q^delta.
    pub fn state_count(&self) -> usize {
        qpow(self.q(), self.delta)
    }

    /// Number of input blocks q^k.
    pub fn input_count(&self) -> usize {
        qpow(self.q(), self.k)
    }

    /// Index of the stacked-code coefficient vector (u_{t-1} | state), encoded
    /// little-endian in the stacked row order. Branch metrics for the trellis
    /// at input u from state s index agreement tables with exactly this value.
    #[inline]
    pub fn branch_index(&self, s: usize, u: usize) -> usize {
        u + self.input_count() * s
    }

    /// Trellis successor state: shift the input block in and truncate the
    /// oldest block to its G~_mu components.
    pub fn next_state(&self, s: usize, u: usize) -> usize {
        let q = self.q();
        let m = self.delta + self.k;
        let mut digits = vec![0usize; m];
        let mut x = self.branch_index(s, u);
        for d in digits.iter_mut() {
            *d = x % q;
            x /= q;
        }
        let keep = (self.mu - 1) * self.k;
        let mut out = 0;
        let mut place = 1;
        for &d in &digits[..keep] {
            out += d * place;
            place *= q;
        }
        for &r in &self.tilde_rows {
            out += digits[keep + r] * place;
            place *= q;
        }
        out
    }

    /// Encodes message blocks u_0..u_{N-1-mu} (flat, k symbols each) into a
    /// terminated frame of N blocks: v_t = sum_i u_{t-i} G_i with u_s = 0
    /// outside the message range.
    pub fn encode(&self, message: &[u8], big_n: usize) -> Result<Frame> {
        if big_n < 2 * self.mu + 1 {
            return Err(Error::InvalidParameter(format!(
                "frame length {big_n} < 2*mu+1 = {}",
                2 * self.mu + 1
            )));
        }
        let blocks = big_n - self.mu;
        if message.len() != blocks * self.k {
            return Err(Error::DimensionMismatch(format!(
                "message has {} symbols, expected {}",
                message.len(),
                blocks * self.k
            )));
        }
        if message.iter().any(|&s| s as usize >= self.q()) {
            return Err(Error::InvalidParameter(
                "message symbol out of field range".into(),
            ));
        }
        let mut frame = Frame::zero(big_n, self.n);
        for t in 0..big_n {
            let mut v = vec![0u8; self.n];
            for i in 0..=self.mu.min(t) {
                let s = t - i;
                if s >= blocks {
                    continue;
                }
                let u = &message[s * self.k..(s + 1) * self.k];
                for (r, &coeff) in u.iter().enumerate() {
                    add_scaled_row(&self.field, &mut v, coeff, self.coeffs[i].row(r));
                }
            }
            frame.block_mut(t).copy_from_slice(&v);
        }
        Ok(frame)
    }

    /// The truncated sliding generator matrix G_j^c, block upper-triangular
    /// of shape (j+1)k x (j+1)n with G_{c-r} at block (r, c).
    pub fn sliding_matrix(&self, j: usize) -> SlidingMatrix {
        let kk = (j + 1) * self.k;
        let nn = (j + 1) * self.n;
        let mut m = FqMatrix::zero(self.field.clone(), kk, nn);
        for br in 0..=j {
            for bc in br..=j {
                let i = bc - br;
                if i > self.mu {
                    continue;
                }
                for r in 0..self.k {
                    for c in 0..self.n {
                        m.set(br * self.k + r, bc * self.n + c, self.coeffs[i].get(r, c));
                    }
                }
            }
        }
        SlidingMatrix { j, matrix: m }
    }

    /// Exact j-th column distance by enumerating all (u_0, .., u_j) with
    /// u_0 != 0. Scaling invariance of the weight lets the search fix the
    /// first nonzero entry of u_0 to 1, a (q-1)-fold reduction.
    pub fn column_distance_exhaustive(&self, j: usize, budget: u64) -> Result<u64> {
        let q = self.q();
        let needed = (q as u128)
            .checked_pow((self.k * (j + 1)) as u32)
            .unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                budget: budget as u128,
            });
        }
        let qk = self.input_count();
        let mut best = u64::MAX;
        let mut inputs: Vec<usize> = vec![0; j + 1];
        for u0 in 1..qk {
            if !first_nonzero_digit_is_one(q, u0) {
                continue;
            }
            inputs[0] = u0;
            let mut v0 = vec![0u8; self.n];
            self.add_block_contribution(&mut v0, u0, 0);
            self.distance_search(j, 1, weight(&v0), &mut inputs, &mut best);
        }
        Ok(best)
    }

    fn distance_search(
        &self,
        j: usize,
        depth: usize,
        acc: u64,
        inputs: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if acc >= *best {
            return;
        }
        if depth > j {
            *best = acc;
            return;
        }
        let qk = self.input_count();
        // Contribution of already-fixed inputs to v_depth.
        let mut base = vec![0u8; self.n];
        for i in 1..=self.mu.min(depth) {
            let u = inputs[depth - i];
            self.add_block_contribution(&mut base, u, i);
        }
        for u in 0..qk {
            inputs[depth] = u;
            let mut v = base.clone();
            self.add_block_contribution(&mut v, u, 0);
            self.distance_search(j, depth + 1, acc + weight(&v), inputs, best);
        }
    }

    fn add_block_contribution(&self, v: &mut [u8], u_enc: usize, i: usize) {
        let q = self.q();
        let mut x = u_enc;
        for r in 0..self.k {
            let d = (x % q) as u8;
            x /= q;
            add_scaled_row(&self.field, v, d, self.coeffs[i].row(r));
        }
    }

    /// The column-distance value from the construction's theorem.
    pub fn column_distance_closed_form(&self, j: usize) -> Result<u64> {
        let q = self.q() as u64;
        let (k, d) = (self.k as u32, self.delta as u32);
        let floor = (d / k) as usize;
        let jeff = j.min(floor) as u64;
        Ok(match self.construction {
            Construction::C1 => q.pow(d + k - 1) + jeff * (q.pow(d + k - 1) - q.pow(d - 1)),
            Construction::C2 => {
                if self.k == 1 {
                    // Coincides with construction 1.
                    q.pow(d + k - 1) + jeff * (q.pow(d + k - 1) - q.pow(d - 1))
                } else {
                    let per_block = q.pow(d + k - 2) * (q - 1); // n (q-1)/q
                    if self.delta % self.k == self.k - 1 {
                        if j < self.mu {
                            (j as u64 + 1) * per_block
                        } else {
                            self.n as u64 + floor as u64 * per_block
                        }
                    } else {
                        (jeff + 1) * per_block
                    }
                }
            }
            Construction::C3 => (jeff + 1) * q.pow(d + k - 1),
            Construction::Custom => return Err(Error::NoClosedForm),
        })
    }

    /// Free distance. Exact via the construction theorems; for custom codes
    /// the column distances are iterated until they stay constant for
    /// k*mu consecutive steps (or the horizon runs out), which is a
    /// heuristic limit, flagged as such.
    pub fn free_distance(&self, horizon: usize, budget: u64) -> Result<FreeDistance> {
        if self.construction != Construction::Custom {
            let j_stable = self.delta / self.k + self.mu; // past every case split
            return Ok(FreeDistance {
                value: self.column_distance_closed_form(j_stable)?,
                exact: true,
            });
        }
        let need = self.k * self.mu;
        let mut last = self.column_distance_exhaustive(0, budget)?;
        let mut run = 0usize;
        for j in 1..=horizon {
            let d = self.column_distance_exhaustive(j, budget)?;
            if d == last {
                run += 1;
                if run >= need {
                    return Ok(FreeDistance {
                        value: d,
                        exact: false,
                    });
                }
            } else {
                last = d;
                run = 0;
            }
        }
        Ok(FreeDistance {
            value: last,
            exact: false,
        })
    }

    /// Checks d_j^c <= (n-k)(j+1) + 1 for all j <= j_max, with exhaustive
    /// column distances.
    pub fn singleton_bound_check(&self, j_max: usize, budget: u64) -> Result<bool> {
        for j in 0..=j_max {
            let d = self.column_distance_exhaustive(j, budget)?;
            if d > (self.n as u64 - self.k as u64) * (j as u64 + 1) + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Structural non-catastrophicity certificate: the stacked matrix must
    /// contain, among its columns, e_1 and (for each r in 2..=k) the column
    /// with ones exactly in rows 1 and r. Those columns select the submatrix
    /// [all-one row over I_{k-1}; 0] whose presence keeps G(z) full rank for
    /// every evaluation point. Returns false when the certificate is absent,
    /// which does not by itself prove the code catastrophic.
    pub fn noncatastrophic_certificate(&self) -> bool {
        let stacked = self.stacked_matrix();
        let m = stacked.rows();
        let has_column =
            |target: &[u8]| -> bool { (0..stacked.cols()).any(|c| stacked.column(c) == target) };
        let mut e1 = vec![0u8; m];
        e1[0] = 1;
        if !has_column(&e1) {
            return false;
        }
        for r in 1..self.k {
            let mut col = vec![0u8; m];
            col[0] = 1;
            col[r] = 1;
            if !has_column(&col) {
                return false;
            }
        }
        true
    }
}

fn check_params(k: usize, delta: usize) -> Result<()> {
    if k < 1 || delta < 1 {
        return Err(Error::InvalidParameter("need k >= 1 and delta >= 1".into()));
    }
    Ok(())
}

fn check_length(n: usize) -> Result<()> {
    if n > DEFAULT_MAX_LENGTH {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: DEFAULT_MAX_LENGTH as u128,
        });
    }
    Ok(())
}

fn first_nonzero_digit_is_one(q: usize, mut u: usize) -> bool {
    while u > 0 {
        let d = u % q;
        if d != 0 {
            return d == 1;
        }
        u /= q;
    }
    false
}

/// Exhaustively searches every stacked matrix (G_0; ..; G~_mu) over GF(q)
/// with G_0 of full row rank and all G~_mu rows nonzero, at the length of
/// construction 1, and returns the lexicographically maximal column-distance
/// profile (d_0, .., d_{j_max}) together with every code attaining it.
/// Intended for tiny parameters only.
pub fn optimality_oracle_tiny(
    field: &Arc<FieldSpec>,
    k: usize,
    delta: usize,
    j_max: usize,
    budget: u64,
) -> Result<OptimalitySearch> {
    check_params(k, delta)?;
    let q = field.q;
    let n = qpow(q, delta) * (qpow(q, k) - 1) / (q - 1);
    let rows = delta + k;
    let cells = rows * n;
    let candidates = (q as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if candidates > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: candidates,
            budget: budget as u128,
        });
    }
    let mu = delta.div_ceil(k);
    let tilde_count = delta + k - mu * k;
    let mut best_profile: Vec<u64> = Vec::new();
    let mut witnesses: Vec<ConvolutionalCode> = Vec::new();
    let mut counter = vec![0u8; cells];
    'outer: loop {
        let stacked_rows: Vec<Vec<u8>> = (0..rows)
            .map(|r| counter[r * n..(r + 1) * n].to_vec())
            .collect();
        let stacked = FqMatrix::from_rows(field.clone(), stacked_rows)?;
        let valid = tilde_count > 0
            && stacked.row_block(0..k).rank() == k
            && (mu * k..rows).all(|r| stacked.row(r).iter().any(|&x| x != 0));
        if valid {
            let code = ConvolutionalCode::from_stacked(
                field,
                &stacked,
                k,
                delta,
                TildePlacement::Top,
                Construction::Custom,
            )?;
            let mut profile = Vec::with_capacity(j_max + 1);
            for j in 0..=j_max {
                profile.push(code.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)?);
            }
            if profile > best_profile {
                best_profile = profile;
                witnesses = vec![code];
            } else if profile == best_profile {
                witnesses.push(code);
            }
        }
        // Odometer step over all q^cells matrices.
        let mut pos = 0;
        loop {
            if pos == cells {
                break 'outer;
            }
            counter[pos] += 1;
            if (counter[pos] as usize) < q {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
    Ok(OptimalitySearch {
        best_profile,
        witnesses,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::block::{canonical_column_form, column_multiset_equal, macdonald_generator};

    fn gf(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::for_size(q).unwrap())
    }

    /// The worked decoder example: G(z) = (1+z^2, 1+z+z^2) over GF(2).
    pub(crate) fn example_code(field: &Arc<FieldSpec>) -> ConvolutionalCode {
        let g0 = FqMatrix::from_rows(field.clone(), vec![vec![1, 1]]).unwrap();
        let g1 = FqMatrix::from_rows(field.clone(), vec![vec![0, 1]]).unwrap();
        let g2 = FqMatrix::from_rows(field.clone(), vec![vec![1, 1]]).unwrap();
        ConvolutionalCode::from_parts(field, vec![g0, g1, g2]).unwrap()
    }

    #[test]
    fn construct_1_3_2_1_matches_the_macdonald_staircase() {
        let f = gf(3);
        let c = ConvolutionalCode::construct_1(&f, 2, 1).unwrap();
        assert_eq!((c.n(), c.mu()), (12, 1));
        let mac = macdonald_generator(&f, 3, 2).unwrap();
        assert_eq!(c.stacked_matrix(), mac.generator);
        // One zero row in G_1; the tilde row sits on top.
        assert_eq!(c.tilde_rows(), &[0]);
        assert_eq!(weight(c.coeff(1).row(1)), 0);
    }

    #[test]
    fn construct_1_2_1_2_shape() {
        let f = gf(2);
        let c = ConvolutionalCode::construct_1(&f, 1, 2).unwrap();
        assert_eq!((c.n(), c.mu()), (4, 2));
        assert_eq!(c.coeff(0).row(0), &[1, 1, 1, 1]);
    }

    #[test]
    fn construct_2_k1_coincides_with_construct_1() {
        for q in [2u64, 3] {
            let f = gf(q);
            for delta in 1..=3usize {
                let c1 = ConvolutionalCode::construct_1(&f, 1, delta).unwrap();
                let c2 = ConvolutionalCode::construct_2(&f, 1, delta).unwrap();
                assert_eq!(c1.stacked_matrix(), c2.stacked_matrix());
            }
        }
    }

    #[test]
    fn encode_reproduces_the_worked_example() {
        let f = gf(2);
        let code = example_code(&f);
        // u(z) = 1 + z^2, N = 5.
        let frame = code.encode(&[1, 0, 1], 5).unwrap();
        assert_eq!(frame.symbols, vec![1, 1, 0, 1, 0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn encode_zero_message_gives_zero_frame() {
        let f = gf(3);
        let code = ConvolutionalCode::construct_1(&f, 2, 1).unwrap();
        let frame = code.encode(&[0; 4 * 2], 5).unwrap();
        assert!(frame.symbols.iter().all(|&s| s == 0));
    }

    #[test]
    fn encode_single_block_matches_generator_rows() {
        let f = gf(3);
        let code = ConvolutionalCode::construct_1(&f, 2, 1).unwrap();
        let frame = code.encode(&[1, 0, 0, 0], 3).unwrap();
        assert_eq!(frame.block(0), code.coeff(0).row(0));
        assert_eq!(frame.block(1), code.coeff(1).row(0));
        assert!(frame.block(2).iter().all(|&s| s == 0));
    }

    #[test]
    fn sliding_matrix_of_the_worked_example() {
        let f = gf(2);
        let code = example_code(&f);
        assert_eq!(code.sliding_matrix(0).matrix, code.coeff(0).clone());
        let s = code.sliding_matrix(2).matrix;
        assert_eq!(s.row(0), &[1, 1, 0, 1, 1, 1]);
        assert_eq!(s.row(1), &[0, 0, 1, 1, 0, 1]);
        assert_eq!(s.row(2), &[0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn column_distances_construct_1_examples() {
        let f2 = gf(2);
        let c = ConvolutionalCode::construct_1(&f2, 1, 2).unwrap();
        let ds: Vec<u64> = (0..4)
            .map(|j| {
                c.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap()
            })
            .collect();
        assert_eq!(ds, vec![4, 6, 8, 8]);
        for (j, &d) in ds.iter().enumerate() {
            assert_eq!(c.column_distance_closed_form(j).unwrap(), d);
        }
        assert_eq!(
            c.free_distance(8, DEFAULT_DISTANCE_BUDGET).unwrap().value,
            8
        );

        let f3 = gf(3);
        let c = ConvolutionalCode::construct_1(&f3, 2, 1).unwrap();
        for j in 0..4 {
            assert_eq!(
                c.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap(),
                9
            );
        }
        assert_eq!(
            c.free_distance(8, DEFAULT_DISTANCE_BUDGET).unwrap().value,
            9
        );
    }

    #[test]
    fn column_distances_construct_2_examples() {
        let f2 = gf(2);
        let c = ConvolutionalCode::construct_2(&f2, 2, 1).unwrap();
        let ds: Vec<u64> = (0..4)
            .map(|j| {
                c.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap()
            })
            .collect();
        assert_eq!(ds, vec![2, 4, 4, 4]);
        for (j, &d) in ds.iter().enumerate() {
            assert_eq!(c.column_distance_closed_form(j).unwrap(), d);
        }

        let f3 = gf(3);
        let c = ConvolutionalCode::construct_2(&f3, 2, 2).unwrap();
        assert_eq!(c.n(), 27);
        assert_eq!(c.column_distance_closed_form(0).unwrap(), 18);
        assert_eq!(c.column_distance_closed_form(1).unwrap(), 36);
        assert_eq!(
            c.free_distance(8, DEFAULT_DISTANCE_BUDGET).unwrap().value,
            36
        );
    }

    #[test]
    fn column_distances_construct_3_examples() {
        let f2 = gf(2);
        let c = ConvolutionalCode::construct_3(&f2, 1, 1).unwrap();
        assert_eq!(c.n(), 3);
        let ds: Vec<u64> = (0..3)
            .map(|j| {
                c.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap()
            })
            .collect();
        assert_eq!(ds, vec![2, 4, 4]);
        assert_eq!(
            c.free_distance(8, DEFAULT_DISTANCE_BUDGET).unwrap().value,
            4
        );

        let f3 = gf(3);
        let c = ConvolutionalCode::construct_3(&f3, 1, 1).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.column_distance_closed_form(0).unwrap(), 3);
        assert_eq!(c.column_distance_closed_form(1).unwrap(), 6);
    }

    #[test]
    fn worked_example_code_has_d0_2() {
        let f = gf(2);
        let code = example_code(&f);
        assert_eq!((code.k(), code.delta(), code.mu()), (1, 2, 2));
        assert_eq!(
            code.column_distance_exhaustive(0, DEFAULT_DISTANCE_BUDGET)
                .unwrap(),
            2
        );
        assert!(code.column_distance_closed_form(0).is_err());
    }

    #[test]
    fn heuristic_free_distance_agrees_with_formulas() {
        // Strip the construction tag and recover the free distance by
        // stabilization; it must match each theorem value.
        for (q, k, delta) in [(2u64, 1, 2), (2, 2, 1), (3, 1, 1), (3, 2, 1)] {
            let f = gf(q);
            for code in [
                ConvolutionalCode::construct_1(&f, k, delta).unwrap(),
                ConvolutionalCode::construct_2(&f, k, delta).unwrap(),
                ConvolutionalCode::construct_3(&f, k, delta).unwrap(),
            ] {
                let exact = code.free_distance(12, DEFAULT_DISTANCE_BUDGET).unwrap();
                assert!(exact.exact);
                let untagged = ConvolutionalCode::from_stacked(
                    &f,
                    &code.stacked_matrix(),
                    k,
                    delta,
                    TildePlacement::Top,
                    Construction::Custom,
                )
                .unwrap();
                let heuristic = untagged.free_distance(12, DEFAULT_DISTANCE_BUDGET).unwrap();
                assert!(!heuristic.exact);
                assert_eq!(heuristic.value, exact.value, "({q},{k},{delta})");
            }
        }
    }

    #[test]
    fn custom_free_distance_is_heuristic() {
        // The worked example code has column distances (2,3,3,4,4,5,5,..),
        // stabilizing at the free distance 5.
        let f = gf(2);
        let code = example_code(&f);
        let fd = code.free_distance(12, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(
            fd,
            FreeDistance {
                value: 5,
                exact: false
            }
        );
        let profile: Vec<u64> = (0..6)
            .map(|j| {
                code.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap()
            })
            .collect();
        assert_eq!(profile, vec![2, 3, 3, 4, 4, 5]);
    }

    #[test]
    fn column_distances_are_monotone() {
        for (q, k, delta) in [(2u64, 1, 2), (2, 2, 1), (3, 2, 1), (3, 1, 2)] {
            let f = gf(q);
            for code in [
                ConvolutionalCode::construct_1(&f, k, delta).unwrap(),
                ConvolutionalCode::construct_2(&f, k, delta).unwrap(),
                ConvolutionalCode::construct_3(&f, k, delta).unwrap(),
            ] {
                let mut prev = 0;
                for j in 0..=code.mu() + 2 {
                    let d = code
                        .column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                        .unwrap();
                    assert!(d >= prev);
                    prev = d;
                }
                assert!(
                    prev <= code
                        .free_distance(8, DEFAULT_DISTANCE_BUDGET)
                        .unwrap()
                        .value
                );
            }
        }
    }

    #[test]
    fn singleton_bound_holds() {
        let f = gf(2);
        let c = ConvolutionalCode::construct_1(&f, 1, 2).unwrap();
        assert!(c.singleton_bound_check(3, DEFAULT_DISTANCE_BUDGET).unwrap());
        // d_0 = 2 < n - k + 1 = 3 for construction 3 at (2,1,1).
        let c3 = ConvolutionalCode::construct_3(&f, 1, 1).unwrap();
        assert_eq!(
            c3.column_distance_exhaustive(0, DEFAULT_DISTANCE_BUDGET)
                .unwrap(),
            2
        );
        assert!(c3
            .singleton_bound_check(2, DEFAULT_DISTANCE_BUDGET)
            .unwrap());
    }

    #[test]
    fn noncatastrophic_certificate_examples() {
        for (q, k, delta) in [(2u64, 1, 1), (2, 1, 2), (2, 2, 1), (3, 2, 1), (3, 1, 2)] {
            let f = gf(q);
            assert!(ConvolutionalCode::construct_1(&f, k, delta)
                .unwrap()
                .noncatastrophic_certificate());
            assert!(ConvolutionalCode::construct_2(&f, k, delta)
                .unwrap()
                .noncatastrophic_certificate());
            assert!(ConvolutionalCode::construct_3(&f, k, delta)
                .unwrap()
                .noncatastrophic_certificate());
        }
        // (1+z)(1, 1) over GF(2) is catastrophic; its only column is (1;1).
        let f = gf(2);
        let g0 = FqMatrix::from_rows(f.clone(), vec![vec![1, 1]]).unwrap();
        let g1 = FqMatrix::from_rows(f.clone(), vec![vec![1, 1]]).unwrap();
        let bad = ConvolutionalCode::from_parts(&f, vec![g0, g1]).unwrap();
        assert!(!bad.noncatastrophic_certificate());
    }

    #[test]
    fn tilde_placement_does_not_change_distances() {
        for (q, k, delta) in [(2u64, 2, 1), (3, 2, 1), (2, 2, 3)] {
            let f = gf(q);
            let top = ConvolutionalCode::construct_1(&f, k, delta).unwrap();
            let bottom = ConvolutionalCode::from_stacked(
                &f,
                &top.stacked_matrix(),
                k,
                delta,
                TildePlacement::Bottom,
                Construction::Custom,
            )
            .unwrap();
            for j in 0..=top.mu() + 2 {
                assert_eq!(
                    top.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                        .unwrap(),
                    bottom
                        .column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn monomial_column_action_preserves_column_distances() {
        let f = gf(3);
        let code = ConvolutionalCode::construct_1(&f, 2, 1).unwrap();
        let stacked = code.stacked_matrix();
        let n = stacked.cols();
        // A fixed permutation + scaling.
        let perm: Vec<usize> = (0..n).map(|j| (j * 5 + 3) % n).collect();
        let mut twisted = stacked.permute_columns(&perm).unwrap();
        for c in 0..n {
            twisted = twisted.scale_column(c, 1 + (c % 2) as u8).unwrap();
        }
        let twisted_code = ConvolutionalCode::from_stacked(
            &f,
            &twisted,
            2,
            1,
            TildePlacement::Top,
            Construction::Custom,
        )
        .unwrap();
        for j in 0..4 {
            assert_eq!(
                code.column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap(),
                twisted_code
                    .column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                    .unwrap()
            );
        }
    }

    #[test]
    fn cross_construction_inequalities() {
        // d_{j,l} >= d_{j,1} for l in {2,3} against construction 1 at the
        // next smaller covered length: construction 2 at (q,k,delta) vs
        // construction 1 at (q,k-1,delta); construction 3 at equal params.
        for q in [2u64, 3] {
            let f = gf(q);
            for k in 2..=2usize {
                for delta in 1..=3usize {
                    let c2 = ConvolutionalCode::construct_2(&f, k, delta).unwrap();
                    let c1_small = ConvolutionalCode::construct_1(&f, k - 1, delta).unwrap();
                    let c3 = ConvolutionalCode::construct_3(&f, k, delta).unwrap();
                    let c1 = ConvolutionalCode::construct_1(&f, k, delta).unwrap();
                    for j in 0..=c2.mu() + 2 {
                        assert!(
                            c2.column_distance_closed_form(j).unwrap()
                                >= c1_small.column_distance_closed_form(j).unwrap()
                        );
                        assert!(
                            c3.column_distance_closed_form(j).unwrap()
                                >= c1.column_distance_closed_form(j).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_inequalities_on_the_desk_grid() {
        // d_{j,1}/n_1 > d_{j,3}/n_3 > d_{j,2}/n_2 for j <= floor(delta/k),
        // matched parameters, k >= 2 (for k = 1 constructions 1 and 2 are
        // the same code and the first ratio is an equality).
        for q in [2u64, 3] {
            let f = gf(q);
            for delta in 1..=3usize {
                let k = 2;
                let c1 = ConvolutionalCode::construct_1(&f, k, delta).unwrap();
                let c2 = ConvolutionalCode::construct_2(&f, k, delta).unwrap();
                let c3 = ConvolutionalCode::construct_3(&f, k, delta).unwrap();
                for j in 0..=delta / k {
                    let d1 = c1.column_distance_closed_form(j).unwrap() as u128;
                    let d2 = c2.column_distance_closed_form(j).unwrap() as u128;
                    let d3 = c3.column_distance_closed_form(j).unwrap() as u128;
                    let (n1, n2, n3) = (c1.n() as u128, c2.n() as u128, c3.n() as u128);
                    assert!(d1 * n3 > d3 * n1, "q={q} delta={delta} j={j}");
                    assert!(d3 * n2 > d2 * n3, "q={q} delta={delta} j={j}");
                }
            }
        }
    }

    #[test]
    fn tiny_optimality_oracle_2_1_1() {
        let f = gf(2);
        let search = optimality_oracle_tiny(&f, 1, 1, 3, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(search.best_profile, vec![2, 3, 3, 3]);
        let c1 = ConvolutionalCode::construct_1(&f, 1, 1).unwrap();
        let canon = canonical_column_form(&c1.stacked_matrix()).unwrap();
        assert_eq!(search.witnesses.len(), 2);
        for w in &search.witnesses {
            assert_eq!(canonical_column_form(&w.stacked_matrix()).unwrap(), canon);
        }
        // The closed form agrees with the searched optimum.
        for (j, &d) in search.best_profile.iter().enumerate() {
            assert_eq!(c1.column_distance_closed_form(j).unwrap(), d);
        }
    }

    #[test]
    fn tiny_optimality_oracle_3_1_1() {
        // Same search over GF(3): best profile (3,5,5) and every witness is
        // a monomial right twist of construction 1.
        let f = gf(3);
        let search = optimality_oracle_tiny(&f, 1, 1, 2, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(search.best_profile, vec![3, 5, 5]);
        let c1 = ConvolutionalCode::construct_1(&f, 1, 1).unwrap();
        let canon = canonical_column_form(&c1.stacked_matrix()).unwrap();
        assert!(!search.witnesses.is_empty());
        for w in &search.witnesses {
            assert_eq!(canonical_column_form(&w.stacked_matrix()).unwrap(), canon);
        }
    }

    #[test]
    fn oracle_budget_enforced() {
        let f = gf(2);
        assert!(matches!(
            optimality_oracle_tiny(&f, 1, 2, 2, 64),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn block_x_order_is_column_equivalent_to_staircase() {
        use crate::block::{simplex_generator, SimplexOrder};
        let f = gf(3);
        let c1 = ConvolutionalCode::construct_1(&f, 2, 1).unwrap();
        // Drop the trailing S(q,delta) part of the block-X simplex to get
        // the block-X MacDonald generator.
        let bx = simplex_generator(&f, 3, SimplexOrder::BlockX { k: 2, delta: 1 }).unwrap();
        let keep: Vec<usize> = (0..c1.n()).collect();
        let mut rows = Vec::new();
        for r in 0..3 {
            rows.push(
                keep.iter()
                    .map(|&c| bx.generator.get(r, c))
                    .collect::<Vec<u8>>(),
            );
        }
        let bx_mac = FqMatrix::from_rows(f.clone(), rows).unwrap();
        assert!(column_multiset_equal(&bx_mac, &c1.stacked_matrix()));
    }

    #[test]
    fn next_state_shift_register() {
        let f = gf(2);
        let code = example_code(&f); // k=1, delta=2, tilde_rows=[0]
                                     // state (u_{t-1}, u_{t-2}) encoded little-endian.
        assert_eq!(code.next_state(0b00, 1), 0b01);
        assert_eq!(code.next_state(0b01, 0), 0b10);
        assert_eq!(code.next_state(0b11, 1), 0b11);
    }
}
