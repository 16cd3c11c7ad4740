//! Hide byte streams inside grammatically structured natural-language text.
//!
//! The core codec reads the payload a few bits at a time and spends each
//! group on a word chosen from the dictionary of whatever word type the
//! active sentence pattern demands next. The result looks like ordinary
//! (if meaningless) prose, round-trips exactly, and keeps the byte-level
//! statistics of the output close to plain text instead of ciphertext.
//!
//! What lives where:
//!
//! - [`bitio`] — MSB-first bit cursor over byte buffers, plus the length
//!   framing that makes decoding self-delimiting.
//! - [`lexicon`] — typed word dictionaries with stable index ↔ word maps.
//! - [`grammar`] — sentence patterns and the round-robin type scheduler.
//! - [`codec`] — the grammatical codec and the three baselines
//!   (word substitution, sentence substitution, Base64).
//! - [`hmm`] — hidden Markov models with forward and Viterbi solvers.
//! - [`recognizer`] — the observer-side check: does a sentence look like
//!   it belongs to the modeled language?
//! - [`stats`] — the six-metric randomness battery (entropy, optimum
//!   compression, chi-square, mean, Monte Carlo pi, serial correlation).
//! - [`cli`] — argument parsing and command dispatch for the `stegotext`
//!   binary.
//!
//! Start with the runnable examples (`cargo run --example hide_and_reveal`)
//! or the README for the command-line tour.

pub mod bitio;
pub mod cli;
pub mod codec;
pub mod grammar;
pub mod hmm;
pub mod lexicon;
pub mod recognizer;
pub mod stats;

mod error;

pub use error::{Error, Result};
