//! Classical Viterbi decoding on the state trellis, with termination, plus
//! the exhaustive maximum-likelihood oracle.
//!
//! States at time t are the phi-encodings of (u_{t-1}, .., u~_{t-mu}), the
//! last mu input blocks with the oldest truncated to the components that
//! multiply nonzero rows of G_mu. The branch from state s under input u
//! emits the stacked-code codeword with coefficient index u + q^k s, so the
//! branch metric is a plain Hamming distance against the received block.
//!
//! Tie-breaking is deterministic everywhere: among equal-metric arrivals the
//! survivor has the smallest input encoding, then the smallest predecessor
//! state. The ML oracle breaks metric ties toward the lexicographically
//! smallest message. Metrics agree between the two on every input; the
//! decoded frames can differ only under exact ties.

use crate::conv::ConvolutionalCode;
use crate::correlation::OpCounter;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::matrix::hamming_distance;

/// Default cap on q^{k(N-mu)} for the ML oracle.
pub const DEFAULT_ML_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct DecodeResult {
    /// Decoded message, (N - mu) blocks of k symbols, flat.
    pub message: Vec<u8>,
    /// Re-encoded codeword frame (termination included).
    pub codeword: Frame,
    /// Hamming distance between the codeword and the received frame.
    pub metric: u64,
    /// Additions and comparisons consumed by the decode.
    pub ops: OpCounter,
}

/// Survivor bookkeeping for one decode: per-state best metrics and the
/// traceback links (predecessor state, input) recorded at each step.
pub(crate) struct SurvivorTrellis {
    pub metrics: Vec<u64>,
    pub links: Vec<Vec<(u32, u32)>>,
    pub survivor_counts: Vec<usize>,
    next_table: Vec<u32>,
    states: usize,
    inputs: usize,
}

const INACTIVE: u64 = u64::MAX;

impl SurvivorTrellis {
    pub fn new(code: &ConvolutionalCode) -> SurvivorTrellis {
        let states = code.state_count();
        let inputs = code.input_count();
        let mut next_table = vec![0u32; states * inputs];
        for s in 0..states {
            for u in 0..inputs {
                next_table[s * inputs + u] = code.next_state(s, u) as u32;
            }
        }
        let mut metrics = vec![INACTIVE; states];
        metrics[0] = 0;
        SurvivorTrellis {
            metrics,
            links: Vec::new(),
            survivor_counts: vec![1],
            next_table,
            states,
            inputs,
        }
    }

    /// Advances one time step. `input_count` is q^k before termination and 1
    /// (the zero block) during it. `branch_metric(s, u)` evaluates the
    /// distance of the branch output to the received block.
    pub fn step(
        &mut self,
        input_count: usize,
        mut branch_metric: impl FnMut(usize, usize, &mut OpCounter) -> u64,
        ops: &mut OpCounter,
    ) {
        let mut best: Vec<(u64, u32, u32)> = vec![(INACTIVE, u32::MAX, u32::MAX); self.states];
        for s in 0..self.states {
            if self.metrics[s] == INACTIVE {
                continue;
            }
            for u in 0..input_count {
                let bm = branch_metric(s, u, ops);
                let total = self.metrics[s] + bm;
                ops.additions += 1;
                let ns = self.next_table[s * self.inputs + u] as usize;
                let cand = (total, u as u32, s as u32);
                ops.comparisons += 1;
                if cand < best[ns] {
                    best[ns] = cand;
                }
            }
        }
        let mut link = vec![(u32::MAX, u32::MAX); self.states];
        let mut active = 0;
        for s in 0..self.states {
            let (metric, u, pred) = best[s];
            self.metrics[s] = metric;
            if metric != INACTIVE {
                link[s] = (pred, u);
                active += 1;
            }
        }
        self.links.push(link);
        self.survivor_counts.push(active);
    }

    /// Walks the traceback from the terminal all-zero state and returns the
    /// message (first N - mu input blocks) and final metric.
    pub fn extract(&self, code: &ConvolutionalCode, big_n: usize) -> (Vec<u8>, u64) {
        debug_assert_eq!(self.links.len(), big_n);
        let metric = self.metrics[0];
        let mut inputs_enc = vec![0usize; big_n];
        let mut state = 0usize;
        for t in (0..big_n).rev() {
            let (pred, u) = self.links[t][state];
            inputs_enc[t] = u as usize;
            state = pred as usize;
        }
        let blocks = big_n - code.mu();
        let q = code.q();
        let mut message = Vec::with_capacity(blocks * code.k());
        for &enc in inputs_enc.iter().take(blocks) {
            let mut x = enc;
            for _ in 0..code.k() {
                message.push((x % q) as u8);
                x /= q;
            }
        }
        debug_assert!(inputs_enc[blocks..].iter().all(|&u| u == 0));
        (message, metric)
    }
}

/// Active-state count the phase schedule predicts after step t: q^{tk}
/// before the memory fills, q^delta in steady state, collapsing by q^k per
/// step during termination down to a single state at t = N.
#[cfg(debug_assertions)]
pub(crate) fn expected_survivor_count(code: &ConvolutionalCode, big_n: usize, t: usize) -> u64 {
    let q = code.q() as u64;
    let (k, delta, mu) = (code.k(), code.delta(), code.mu());
    if t == big_n {
        1
    } else if t <= big_n - mu {
        q.pow(((t * k).min(delta)) as u32)
    } else {
        q.pow((delta - (t - (big_n - mu)) * k) as u32)
    }
}

#[cfg(debug_assertions)]
pub(crate) fn debug_check_schedule(code: &ConvolutionalCode, big_n: usize, counts: &[usize]) {
    for (t, &count) in counts.iter().enumerate() {
        debug_assert_eq!(
            count as u64,
            expected_survivor_count(code, big_n, t),
            "survivor count off schedule at t={t}"
        );
    }
}

fn validate_frame(code: &ConvolutionalCode, rx: &Frame) -> Result<()> {
    if rx.n != code.n() {
        return Err(Error::MalformedFrame(format!(
            "block length {} != code length {}",
            rx.n,
            code.n()
        )));
    }
    if rx.big_n < 2 * code.mu() + 1 {
        return Err(Error::MalformedFrame(format!(
            "frame length {} < 2*mu+1 = {}",
            rx.big_n,
            2 * code.mu() + 1
        )));
    }
    rx.validate(code.field())
}

/// Hard-decision Viterbi decoding of a terminated frame.
pub fn viterbi_decode(code: &ConvolutionalCode, rx: &Frame) -> Result<DecodeResult> {
    viterbi_decode_traced(code, rx).map(|(r, _)| r)
}

/// As `viterbi_decode`, also returning per-step operation counts.
pub fn viterbi_decode_traced(
    code: &ConvolutionalCode,
    rx: &Frame,
) -> Result<(DecodeResult, Vec<OpCounter>)> {
    let (result, trace, _) = viterbi_decode_full(code, rx)?;
    Ok((result, trace))
}

/// Full decode returning the per-step ops and the survivor-count schedule
/// (index t = 0..=N).
pub(crate) fn viterbi_decode_full(
    code: &ConvolutionalCode,
    rx: &Frame,
) -> Result<(DecodeResult, Vec<OpCounter>, Vec<usize>)> {
    validate_frame(code, rx)?;
    let n = code.n();
    // Branch outputs for every coefficient index, from the stacked matrix.
    let stacked = code.stacked_matrix();
    let mut words: Vec<Vec<u8>> = Vec::with_capacity(code.state_count() * code.input_count());
    stacked.for_each_span_word(|_, w| words.push(w.to_vec()));

    let mut trellis = SurvivorTrellis::new(code);
    let mut ops = OpCounter::new();
    let mut trace = Vec::with_capacity(rx.big_n);
    for t in 1..=rx.big_n {
        let before = ops;
        let block = rx.block(t - 1);
        let input_count = if t <= rx.big_n - code.mu() {
            code.input_count()
        } else {
            1
        };
        trellis.step(
            input_count,
            |s, u, ops| {
                let idx = code.branch_index(s, u);
                ops.additions += n as u64;
                hamming_distance(&words[idx], block).expect("equal lengths")
            },
            &mut ops,
        );
        trace.push(ops.since(before));
    }
    let (message, metric) = trellis.extract(code, rx.big_n);
    let codeword = code.encode(&message, rx.big_n)?;
    debug_assert_eq!(
        metric,
        hamming_distance(&codeword.symbols, &rx.symbols).unwrap()
    );
    #[cfg(debug_assertions)]
    debug_check_schedule(code, rx.big_n, &trellis.survivor_counts);
    let counts = trellis.survivor_counts.clone();
    Ok((
        DecodeResult {
            message,
            codeword,
            metric,
            ops,
        },
        trace,
        counts,
    ))
}

/// Exhaustive maximum-likelihood decoding: the terminated codeword at
/// minimum Hamming distance from the received frame, ties broken toward the
/// lexicographically smallest message. Depth-first search over message
/// blocks with partial-metric pruning; the budget caps q^{k(N-mu)}.
pub fn ml_decode_exhaustive(
    code: &ConvolutionalCode,
    rx: &Frame,
    budget: u64,
) -> Result<DecodeResult> {
    validate_frame(code, rx)?;
    let blocks = rx.big_n - code.mu();
    let needed = (code.q() as u128)
        .checked_pow((code.k() * blocks) as u32)
        .unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    let stacked = code.stacked_matrix();
    let mut words: Vec<Vec<u8>> = Vec::with_capacity(code.state_count() * code.input_count());
    stacked.for_each_span_word(|_, w| words.push(w.to_vec()));

    let mut ops = OpCounter::new();
    let mut best_metric = u64::MAX;
    let mut best_message: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = vec![0; blocks];
    ml_search(
        code,
        rx,
        &words,
        0,
        0,
        0,
        blocks,
        &mut current,
        &mut best_metric,
        &mut best_message,
        &mut ops,
    );
    let q = code.q();
    let mut message = Vec::with_capacity(blocks * code.k());
    for &enc in &best_message {
        let mut x = enc;
        for _ in 0..code.k() {
            message.push((x % q) as u8);
            x /= q;
        }
    }
    let codeword = code.encode(&message, rx.big_n)?;
    let metric = hamming_distance(&codeword.symbols, &rx.symbols)?;
    debug_assert_eq!(metric, best_metric);
    Ok(DecodeResult {
        message,
        codeword,
        metric,
        ops,
    })
}

#[allow(clippy::too_many_arguments)]
fn ml_search(
    code: &ConvolutionalCode,
    rx: &Frame,
    words: &[Vec<u8>],
    t: usize,
    state: usize,
    acc: u64,
    blocks: usize,
    current: &mut Vec<usize>,
    best_metric: &mut u64,
    best_message: &mut Vec<usize>,
    ops: &mut OpCounter,
) {
    ops.comparisons += 1;
    if acc >= *best_metric {
        return; // any completion is >= best; equal-metric later messages lose ties
    }
    if t == rx.big_n {
        *best_metric = acc;
        *best_message = current[..blocks].to_vec();
        return;
    }
    let inputs = if t < blocks { code.input_count() } else { 1 };
    let block = rx.block(t);
    for u in 0..inputs {
        if t < blocks {
            current[t] = u;
        }
        let idx = code.branch_index(state, u);
        let bm = hamming_distance(&words[idx], block).expect("equal lengths");
        ops.additions += (rx.n + 1) as u64;
        let ns = code.next_state(state, u);
        ml_search(
            code,
            rx,
            words,
            t + 1,
            ns,
            acc + bm,
            blocks,
            current,
            best_metric,
            best_message,
            ops,
        );
    }
}
