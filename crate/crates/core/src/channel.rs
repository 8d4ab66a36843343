//! q-ary symmetric channel simulation.
//!
//! Each symbol is independently hit with probability epsilon; a hit adds a
//! uniformly random nonzero field element. Randomness comes from ChaCha12
//! seeded with the 64-bit seed, so runs reproduce exactly; independent
//! streams (per trial, per frame) use ChaCha's stream counter.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::frame::Frame;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Per-symbol error probability in [0, 1].
    pub epsilon: f64,
    /// Base RNG seed.
    pub seed: u64,
}

impl ChannelSpec {
    pub fn new(epsilon: f64, seed: u64) -> Result<ChannelSpec> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {epsilon} outside [0,1]"
            )));
        }
        Ok(ChannelSpec { epsilon, seed })
    }

    /// Transmits a frame over the channel. `stream` selects an independent
    /// substream of the generator; pass the trial or frame index.
    pub fn transmit(
        &self,
        field: &FieldSpec,
        frame: &Frame,
        stream: u64,
    ) -> Result<(Frame, usize)> {
        frame.validate(field)?;
        let q = field.q as u8;
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        let mut out = frame.clone();
        let mut errors = 0;
        for sym in out.symbols.iter_mut() {
            if rng.random::<f64>() < self.epsilon {
                let offset = rng.random_range(1..q);
                *sym = field.add(*sym, offset);
                errors += 1;
            }
        }
        Ok((out, errors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_epsilon_is_the_identity() {
        let f = FieldSpec::for_size(3).unwrap();
        let frame = Frame::new(2, 3, vec![0, 1, 2, 2, 1, 0]).unwrap();
        let ch = ChannelSpec::new(0.0, 1).unwrap();
        let (out, errors) = ch.transmit(&f, &frame, 0).unwrap();
        assert_eq!(out, frame);
        assert_eq!(errors, 0);
    }

    #[test]
    fn epsilon_one_over_gf2_complements() {
        let f = FieldSpec::for_size(2).unwrap();
        let frame = Frame::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        let ch = ChannelSpec::new(1.0, 7).unwrap();
        let (out, errors) = ch.transmit(&f, &frame, 0).unwrap();
        assert_eq!(out.symbols, vec![1, 0, 0, 1]);
        assert_eq!(errors, 4);
    }

    #[test]
    fn deterministic_given_seed_and_stream() {
        let f = FieldSpec::for_size(5).unwrap();
        let frame = Frame::new(4, 5, vec![1; 20]).unwrap();
        let ch = ChannelSpec::new(0.4, 1234).unwrap();
        let a = ch.transmit(&f, &frame, 3).unwrap();
        let b = ch.transmit(&f, &frame, 3).unwrap();
        assert_eq!(a, b);
        let c = ch.transmit(&f, &frame, 4).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn empirical_rate_concentrates() {
        // 10^6 symbols at epsilon = 0.1: expect within 3 sigma.
        let f = FieldSpec::for_size(3).unwrap();
        let total = 1_000_000usize;
        let frame = Frame::new(1, total, vec![0; total]).unwrap();
        let eps = 0.1;
        let ch = ChannelSpec::new(eps, 2024).unwrap();
        let (_, errors) = ch.transmit(&f, &frame, 0).unwrap();
        let mean = eps * total as f64;
        let sigma = (total as f64 * eps * (1.0 - eps)).sqrt();
        assert!(
            (errors as f64 - mean).abs() <= 3.0 * sigma,
            "errors = {errors}"
        );
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(ChannelSpec::new(-0.1, 0).is_err());
        assert!(ChannelSpec::new(1.5, 0).is_err());
    }
}
