//! Convolutional codes with optimal column distances over GF(q).
//!
//! Builds the column-distance-optimal convolutional codes whose stacked
//! coefficient matrices are MacDonald, first-order Reed-Muller, or simplex
//! generators, verifies their distance profiles with exhaustive oracles,
//! and decodes them with the classical Viterbi algorithm and a
//! reduced-complexity variant whose branch metrics come from a fast
//! Kronecker-factorized correlation transform.
//!
//! Module map:
//! - [`field`]: GF(q) arithmetic via lookup tables and a fixed bijection to
//!   {0, .., q-1}
//! - [`matrix`]: dense matrices over GF(q) and row-span enumeration
//! - [`block`]: simplex / Reed-Muller / MacDonald generators and block-code
//!   oracles
//! - [`conv`]: convolutional codes, the three constructions, and the
//!   column-distance oracles
//! - [`viterbi`]: classical hard-decision Viterbi on the survivor trellis
//!   and the exhaustive ML oracle
//! - [`correlation`]: score-vector transforms and agreement tables with
//!   addition counting
//! - [`fast_viterbi`]: the improved Viterbi algorithm and the complexity
//!   comparison
//! - [`channel`], [`fileio`], [`acceptance`]: workbench plumbing

pub mod acceptance;
pub mod block;
pub mod channel;
pub mod conv;
pub mod correlation;
pub mod error;
pub mod fast_viterbi;
pub mod field;
pub mod fileio;
pub mod frame;
pub mod matrix;
pub mod viterbi;

pub use channel::ChannelSpec;
pub use conv::{Construction, ConvolutionalCode};
pub use correlation::OpCounter;
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use frame::Frame;
pub use matrix::FqMatrix;
pub use viterbi::DecodeResult;
