//! Frames: length-N sequences of length-n symbol blocks.

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// A received or transmitted sequence of `big_n` blocks of `n` symbols each,
/// stored flat as phi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub big_n: usize,
    pub n: usize,
    pub symbols: Vec<u8>,
}

impl Frame {
    pub fn new(big_n: usize, n: usize, symbols: Vec<u8>) -> Result<Frame> {
        if symbols.len() != big_n * n {
            return Err(Error::MalformedFrame(format!(
                "{} symbols for shape {}x{}",
                symbols.len(),
                big_n,
                n
            )));
        }
        Ok(Frame { big_n, n, symbols })
    }

    pub fn zero(big_n: usize, n: usize) -> Frame {
        Frame {
            big_n,
            n,
            symbols: vec![0; big_n * n],
        }
    }

    /// The t-th block, 0-indexed.
    pub fn block(&self, t: usize) -> &[u8] {
        &self.symbols[t * self.n..(t + 1) * self.n]
    }

    pub fn block_mut(&mut self, t: usize) -> &mut [u8] {
        &mut self.symbols[t * self.n..(t + 1) * self.n]
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        if self.symbols.iter().any(|&s| s as usize >= field.q) {
            return Err(Error::MalformedFrame("symbol out of field range".into()));
        }
        Ok(())
    }
}
