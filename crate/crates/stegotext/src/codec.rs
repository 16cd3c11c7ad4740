//! The four encoders/decoders: grammatical substitution (the core scheme),
//! plus the word-substitution, sentence-substitution, and Base64 baselines.
//!
//! All codecs default to framed mode: the payload is prefixed with a 32-bit
//! big-endian length header so decoding is self-delimiting regardless of
//! the zero padding the final bit group picks up. Raw mode skips framing
//! and padding bookkeeping entirely; it reproduces fixed-width textbook
//! fixtures and is only lossless when the payload bit length is an exact
//! multiple of the consumed group sizes. Raw mode also emits no sentence
//! terminators, matching the punctuation-free fixture strings.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use base64::engine::general_purpose::STANDARD as BASE64_STANDARD;
use base64::Engine;

use crate::bitio::{frame_payload, unframe_payload, BitCursor};
use crate::grammar::{Grammar, GrammarSchedule};
use crate::lexicon::{bits_per_index, Lexicon, TypeDictionary, TERMINATOR};
use crate::{Error, Result};

/// Space-separated stego words with "." terminators after pattern-final
/// words. Dereferences to the inner text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoText {
    text: String,
}

impl StegoText {
    pub fn new(text: impl Into<String>) -> Self {
        Self { text: text.into() }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

impl fmt::Display for StegoText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl std::ops::Deref for StegoText {
    type Target = str;

    fn deref(&self) -> &str {
        &self.text
    }
}

impl From<String> for StegoText {
    fn from(text: String) -> Self {
        Self::new(text)
    }
}

/// Split stego text into words, dropping terminator characters. Decoding
/// never validates terminator placement; punctuation is cosmetic.
pub fn tokenize(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace()
        .map(|t| t.trim_matches(TERMINATOR))
        .filter(|t| !t.is_empty())
}

fn check_pairing(lexicon: &Lexicon, grammar: &Grammar) -> Result<()> {
    for label in grammar.type_labels() {
        if lexicon.get(label).is_none() {
            return Err(Error::GrammarLexiconMismatch(label.to_string()));
        }
    }
    Ok(())
}

fn encode_cursor(
    cursor: &mut BitCursor,
    lexicon: &Lexicon,
    grammar: &Grammar,
    terminators: bool,
) -> Result<StegoText> {
    check_pairing(lexicon, grammar)?;
    let mut schedule = GrammarSchedule::new(grammar);
    let mut out = String::new();
    while cursor.bits_remaining() > 0 {
        let (type_name, pattern_final) = schedule.next_type();
        let dict = lexicon.get(type_name).expect("pairing checked");
        let (p, _) = cursor.read_bits(dict.bits())?;
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(dict.index_to_word(p)?);
        if terminators && pattern_final {
            out.push(TERMINATOR);
        }
    }
    Ok(StegoText::new(out))
}

fn decode_tokens(text: &str, lexicon: &Lexicon, grammar: &Grammar) -> Result<BitCursor> {
    check_pairing(lexicon, grammar)?;
    let mut schedule = GrammarSchedule::new(grammar);
    let mut cursor = BitCursor::new();
    for (i, token) in tokenize(text).enumerate() {
        let (type_name, _) = schedule.next_type();
        let dict = lexicon.get(type_name).expect("pairing checked");
        let p = dict.word_to_index(token).map_err(|e| match e {
            Error::UnknownWord {
                word,
                expected_type,
                ..
            } => Error::UnknownWord {
                word,
                expected_type,
                position: i + 1,
            },
            other => other,
        })?;
        cursor.write_bits(p, dict.bits())?;
    }
    Ok(cursor)
}

/// Encode a framed payload: each grammar slot consumes the dictionary's
/// bit-group and emits the selected word.
pub fn grammatical_encode(
    payload: &[u8],
    lexicon: &Lexicon,
    grammar: &Grammar,
) -> Result<StegoText> {
    let mut cursor = BitCursor::from_bytes(frame_payload(payload)?);
    encode_cursor(&mut cursor, lexicon, grammar, true)
}

/// Raw-mode encode: no length frame, no terminators. Lossless only when
/// the payload bit length divides evenly into the consumed groups.
pub fn grammatical_encode_raw(
    payload: &[u8],
    lexicon: &Lexicon,
    grammar: &Grammar,
) -> Result<StegoText> {
    let mut cursor = BitCursor::from_bytes(payload.to_vec());
    encode_cursor(&mut cursor, lexicon, grammar, false)
}

/// Decode framed stego text back to the exact original payload.
pub fn grammatical_decode(text: &str, lexicon: &Lexicon, grammar: &Grammar) -> Result<Vec<u8>> {
    let cursor = decode_tokens(text, lexicon, grammar)?;
    unframe_payload(cursor.as_bytes())
}

/// Raw-mode decode: returns every recovered bit, zero-padded to whole
/// bytes.
pub fn grammatical_decode_raw(
    text: &str,
    lexicon: &Lexicon,
    grammar: &Grammar,
) -> Result<Vec<u8>> {
    Ok(decode_tokens(text, lexicon, grammar)?.into_bytes())
}

fn word_encode_cursor(cursor: &mut BitCursor, dict: &TypeDictionary) -> Result<StegoText> {
    let mut out = String::new();
    while cursor.bits_remaining() > 0 {
        let (p, _) = cursor.read_bits(dict.bits())?;
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(dict.index_to_word(p)?);
    }
    Ok(StegoText::new(out))
}

fn word_decode_tokens(text: &str, dict: &TypeDictionary) -> Result<BitCursor> {
    let mut cursor = BitCursor::new();
    for (i, token) in tokenize(text).enumerate() {
        let p = dict.word_to_index(token).map_err(|e| match e {
            Error::UnknownWord {
                word,
                expected_type,
                ..
            } => Error::UnknownWord {
                word,
                expected_type,
                position: i + 1,
            },
            other => other,
        })?;
        cursor.write_bits(p, dict.bits())?;
    }
    Ok(cursor)
}

/// Word-substitution baseline: a single dictionary, no grammar, no
/// terminators. Framed.
pub fn word_substitution_encode(payload: &[u8], dict: &TypeDictionary) -> Result<StegoText> {
    let mut cursor = BitCursor::from_bytes(frame_payload(payload)?);
    word_encode_cursor(&mut cursor, dict)
}

pub fn word_substitution_encode_raw(payload: &[u8], dict: &TypeDictionary) -> Result<StegoText> {
    let mut cursor = BitCursor::from_bytes(payload.to_vec());
    word_encode_cursor(&mut cursor, dict)
}

pub fn word_substitution_decode(text: &str, dict: &TypeDictionary) -> Result<Vec<u8>> {
    unframe_payload(word_decode_tokens(text, dict)?.as_bytes())
}

pub fn word_substitution_decode_raw(text: &str, dict: &TypeDictionary) -> Result<Vec<u8>> {
    Ok(word_decode_tokens(text, dict)?.into_bytes())
}

/// An ordered table of unique sentences; position selects the sentence
/// for each bit group of width `floor(log2 m)`.
#[derive(Debug, Clone)]
pub struct SentenceTable {
    sentences: Vec<String>,
    positions: HashMap<String, u32>,
    bits: u32,
}

impl SentenceTable {
    pub fn new<S: AsRef<str>>(sentences: &[S]) -> Result<Self> {
        if sentences.len() < 2 {
            return Err(Error::DictionaryTooSmall {
                type_name: "sentence-table".to_string(),
                size: sentences.len(),
            });
        }
        let bits = bits_per_index(sentences.len())?;
        let mut owned = Vec::with_capacity(sentences.len());
        let mut positions = HashMap::with_capacity(sentences.len());
        for (i, s) in sentences.iter().enumerate() {
            let s = s.as_ref().trim();
            if s.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "sentence {i} is empty"
                )));
            }
            if s.contains('\n') {
                return Err(Error::InvalidArgument(format!(
                    "sentence {i} contains a newline"
                )));
            }
            if positions.insert(s.to_string(), i as u32).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate sentence at index {i}: `{s}`"
                )));
            }
            owned.push(s.to_string());
        }
        Ok(Self {
            sentences: owned,
            positions,
            bits,
        })
    }

    /// One sentence per line; the line number (from 0) is the index.
    /// There is no comment syntax: a line starting with `#` is a sentence.
    pub fn from_str_named(text: &str, path: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        Self::new(&lines).map_err(|e| Error::Parse {
            path: path.to_string(),
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_str_named(&text, &path.display().to_string())
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least 2 sentences
    }

    /// Bit-group width n = floor(log2 m).
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn sentences(&self) -> &[String] {
        &self.sentences
    }

    fn sentence_at(&self, p: u32) -> Result<&str> {
        self.sentences
            .get(p as usize)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::IndexOutOfRange {
                type_name: "sentence-table".to_string(),
                index: p,
                limit: 1 << self.bits,
            })
    }

    /// Index of a sentence, masked to the low n bits (positions at or
    /// above 2^n decode to their masked value, mirroring word lookup).
    fn index_of(&self, sentence: &str, line: usize) -> Result<u32> {
        let p = self
            .positions
            .get(sentence.trim())
            .ok_or_else(|| Error::UnknownSentence {
                sentence: sentence.trim().to_string(),
                position: line,
            })?;
        Ok(p & ((1u32 << self.bits) - 1))
    }
}

fn sentence_encode_cursor(cursor: &mut BitCursor, table: &SentenceTable) -> Result<String> {
    let mut out = String::new();
    while cursor.bits_remaining() > 0 {
        let (p, _) = cursor.read_bits(table.bits())?;
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(table.sentence_at(p)?);
    }
    Ok(out)
}

fn sentence_decode_lines(text: &str, table: &SentenceTable) -> Result<BitCursor> {
    let mut cursor = BitCursor::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let p = table.index_of(line, i + 1)?;
        cursor.write_bits(p, table.bits())?;
    }
    Ok(cursor)
}

/// Sentence-substitution baseline: each n-bit group selects a whole
/// sentence, one per line. Framed.
pub fn sentence_substitution_encode(payload: &[u8], table: &SentenceTable) -> Result<String> {
    let mut cursor = BitCursor::from_bytes(frame_payload(payload)?);
    sentence_encode_cursor(&mut cursor, table)
}

pub fn sentence_substitution_encode_raw(payload: &[u8], table: &SentenceTable) -> Result<String> {
    let mut cursor = BitCursor::from_bytes(payload.to_vec());
    sentence_encode_cursor(&mut cursor, table)
}

pub fn sentence_substitution_decode(text: &str, table: &SentenceTable) -> Result<Vec<u8>> {
    unframe_payload(sentence_decode_lines(text, table)?.as_bytes())
}

pub fn sentence_substitution_decode_raw(text: &str, table: &SentenceTable) -> Result<Vec<u8>> {
    Ok(sentence_decode_lines(text, table)?.into_bytes())
}

/// Standard Base64 with padding.
pub fn base64_encode(payload: &[u8]) -> String {
    BASE64_STANDARD.encode(payload)
}

/// Strict inverse of [`base64_encode`]; leading/trailing whitespace is
/// tolerated so file-shaped input (trailing newline) decodes cleanly.
pub fn base64_decode(text: &str) -> Result<Vec<u8>> {
    Ok(BASE64_STANDARD.decode(text.trim())?)
}
