//! Observer-side sentence check: map words to type-label observations,
//! run Viterbi against a language model, and compare the per-word log
//! probability with an acceptance threshold.

use crate::hmm::HmmModel;
use crate::lexicon::{Lexicon, TERMINATOR};
use crate::{Error, Result};

/// Reserved observation label for words found in no dictionary.
pub const UNKNOWN_OBSERVATION: &str = "unknown";

/// Default acceptance threshold, log10 probability per word.
pub const DEFAULT_THRESHOLD: f64 = -1.5;

#[derive(Debug, Clone, PartialEq)]
pub struct RecognitionVerdict {
    /// log10(best path probability) / word count; -inf for empty input.
    pub log10_probability_per_word: f64,
    pub accepted: bool,
    pub best_path: Vec<String>,
}

/// Map each word to its type label: first type in lexicon declaration
/// order for words listed under several types, [`UNKNOWN_OBSERVATION`]
/// for out-of-vocabulary words.
pub fn words_to_observations<S: AsRef<str>>(words: &[S], lexicon: &Lexicon) -> Vec<String> {
    words
        .iter()
        .map(|w| {
            lexicon
                .type_of_word(w.as_ref())
                .unwrap_or(UNKNOWN_OBSERVATION)
                .to_string()
        })
        .collect()
}

/// The model must be able to observe every lexicon type label plus
/// [`UNKNOWN_OBSERVATION`].
pub fn check_model_alphabet(lexicon: &Lexicon, model: &HmmModel) -> Result<()> {
    for dict in lexicon.dictionaries() {
        if !model.has_observation(dict.type_name()) {
            return Err(Error::ModelAlphabetMismatch(dict.type_name().to_string()));
        }
    }
    if !model.has_observation(UNKNOWN_OBSERVATION) {
        return Err(Error::ModelAlphabetMismatch(UNKNOWN_OBSERVATION.to_string()));
    }
    Ok(())
}

/// Score one sentence. The verdict accepts iff the per-word log10 path
/// probability reaches `threshold`; an empty word list is rejected with
/// score negative infinity.
pub fn score_sentence<S: AsRef<str>>(
    words: &[S],
    lexicon: &Lexicon,
    model: &HmmModel,
    threshold: f64,
) -> Result<RecognitionVerdict> {
    check_model_alphabet(lexicon, model)?;
    if words.is_empty() {
        return Ok(RecognitionVerdict {
            log10_probability_per_word: f64::NEG_INFINITY,
            accepted: false,
            best_path: Vec::new(),
        });
    }
    let obs = words_to_observations(words, lexicon);
    let path = model.viterbi_log10(&obs)?;
    let score = path.probability / words.len() as f64;
    Ok(RecognitionVerdict {
        log10_probability_per_word: score,
        accepted: score >= threshold,
        best_path: path.states,
    })
}

/// Split text into sentences on the terminator character and each
/// sentence into words; sentences with no words are dropped.
pub fn split_sentences(text: &str) -> Vec<Vec<&str>> {
    text.split(TERMINATOR)
        .filter_map(|chunk| {
            let words: Vec<&str> = chunk.split_whitespace().collect();
            if words.is_empty() {
                None
            } else {
                Some(words)
            }
        })
        .collect()
}
