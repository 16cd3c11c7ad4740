//! Typed word dictionaries with bijective index ↔ word mapping.
//!
//! A [`TypeDictionary`] holds the words of one grammatical type in a fixed
//! order; word order is index order, so loading a dictionary file and
//! serializing it back must preserve it. A dictionary of `m` words carries
//! `n = floor(log2 m)` payload bits per word: the encoder only ever emits
//! indices below `2^n`, and decoding masks positions down to `n` bits so
//! words parked above the power-of-two boundary still decode.
//!
//! All words are NFC-normalized at load and lookup.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

use crate::{Error, Result};

/// Sentence terminator; never allowed inside a word.
pub const TERMINATOR: char = '.';

fn nfc(s: &str) -> String {
    if is_nfc_quick(s.chars()) == IsNormalized::Yes {
        s.to_string()
    } else {
        s.nfc().collect()
    }
}

/// `floor(log2 m)` — payload bits per index for an `m`-entry table.
pub fn bits_per_index(m: usize) -> Result<u32> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 entries to carry bits, got {m}"
        )));
    }
    Ok(usize::BITS - 1 - m.leading_zeros())
}

/// The words of one grammatical type, in index order.
#[derive(Debug, Clone)]
pub struct TypeDictionary {
    type_name: String,
    words: Vec<String>,
    positions: HashMap<String, u32>,
    bits: u32,
}

impl TypeDictionary {
    /// Build a dictionary from words in index order. Words are
    /// NFC-normalized; duplicates, whitespace, embedded terminators, and
    /// word counts below 2 are rejected.
    pub fn new<S: AsRef<str>>(type_name: &str, words: &[S]) -> Result<Self> {
        if words.len() < 2 {
            return Err(Error::DictionaryTooSmall {
                type_name: type_name.to_string(),
                size: words.len(),
            });
        }
        let mut normalized = Vec::with_capacity(words.len());
        let mut positions = HashMap::with_capacity(words.len());
        for (i, word) in words.iter().enumerate() {
            let word = nfc(word.as_ref());
            if word.is_empty()
                || word.chars().any(|c| c.is_whitespace())
                || word.contains(TERMINATOR)
            {
                return Err(Error::InvalidArgument(format!(
                    "word `{word}` in dictionary `{type_name}` is empty or contains whitespace or `{TERMINATOR}`"
                )));
            }
            if positions.insert(word.clone(), i as u32).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate word `{word}` in dictionary `{type_name}`"
                )));
            }
            normalized.push(word);
        }
        let bits = bits_per_index(normalized.len())?;
        Ok(Self {
            type_name: type_name.to_string(),
            words: normalized,
            positions,
            bits,
        })
    }

    pub fn type_name(&self) -> &str {
        &self.type_name
    }

    /// Number of words `m`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Payload bits per word, `n = floor(log2 m)`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Word for group value `p`; requires `p < 2^n`.
    pub fn index_to_word(&self, p: u32) -> Result<&str> {
        let limit = 1u32 << self.bits;
        if p >= limit {
            return Err(Error::IndexOutOfRange {
                type_name: self.type_name.clone(),
                index: p,
                limit,
            });
        }
        Ok(&self.words[p as usize])
    }

    /// Position of `word` in this dictionary, if present (NFC lookup).
    /// The raw position may be `>= 2^n`; see [`TypeDictionary::word_to_index`].
    pub fn position_of(&self, word: &str) -> Option<u32> {
        if is_nfc_quick(word.chars()) == IsNormalized::Yes {
            self.positions.get(word).copied()
        } else {
            let normalized: String = word.nfc().collect();
            self.positions.get(&normalized).copied()
        }
    }

    /// Group value for `word`: its position masked to the low `n` bits.
    pub fn word_to_index(&self, word: &str) -> Result<u32> {
        match self.position_of(word) {
            Some(pos) => Ok(pos & ((1u32 << self.bits) - 1)),
            None => Err(Error::UnknownWord {
                word: word.to_string(),
                expected_type: self.type_name.clone(),
                position: 0,
            }),
        }
    }

    /// Mean word length in chars, for capacity estimates.
    pub fn mean_word_chars(&self) -> f64 {
        let total: usize = self.words.iter().map(|w| w.chars().count()).sum();
        total as f64 / self.words.len() as f64
    }

    /// Mean word length in UTF-8 bytes, for capacity estimates.
    pub fn mean_word_bytes(&self) -> f64 {
        let total: usize = self.words.iter().map(|w| w.len()).sum();
        total as f64 / self.words.len() as f64
    }
}

/// A set of named type dictionaries. Declaration order is significant:
/// a word listed under several types resolves to the first-declared one
/// during recognition.
#[derive(Debug, Clone)]
pub struct Lexicon {
    dicts: Vec<TypeDictionary>,
    by_name: HashMap<String, usize>,
}

impl Lexicon {
    pub fn new(dicts: Vec<TypeDictionary>) -> Result<Self> {
        if dicts.is_empty() {
            return Err(Error::InvalidArgument(
                "a lexicon needs at least one type dictionary".to_string(),
            ));
        }
        let mut by_name = HashMap::with_capacity(dicts.len());
        for (i, dict) in dicts.iter().enumerate() {
            if by_name.insert(dict.type_name().to_string(), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate type dictionary `{}`",
                    dict.type_name()
                )));
            }
        }
        Ok(Self { dicts, by_name })
    }

    /// Parse the dictionary file format: `[typename]` opens a section,
    /// following non-empty non-`#` lines are one word each.
    pub fn from_str_named(text: &str, path: &str) -> Result<Self> {
        let mut sections: Vec<(String, Vec<String>, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = nfc(name.trim());
                if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
                    return Err(Error::Parse {
                        path: path.to_string(),
                        line: lineno,
                        message: format!("invalid type name `{name}`"),
                    });
                }
                if sections.iter().any(|(n, _, _)| *n == name) {
                    return Err(Error::Parse {
                        path: path.to_string(),
                        line: lineno,
                        message: format!("duplicate section `{name}`"),
                    });
                }
                sections.push((name, Vec::new(), lineno));
                continue;
            }
            match sections.last_mut() {
                Some((_, words, _)) => words.push(line.to_string()),
                None => {
                    return Err(Error::Parse {
                        path: path.to_string(),
                        line: lineno,
                        message: format!("word `{line}` appears before any [type] section"),
                    });
                }
            }
        }
        if sections.is_empty() {
            return Err(Error::Parse {
                path: path.to_string(),
                line: 0,
                message: "no [type] sections found".to_string(),
            });
        }
        let mut dicts = Vec::with_capacity(sections.len());
        for (name, words, lineno) in sections {
            let dict = TypeDictionary::new(&name, &words).map_err(|e| Error::Parse {
                path: path.to_string(),
                line: lineno,
                message: e.to_string(),
            })?;
            dicts.push(dict);
        }
        Self::new(dicts)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_str_named(&text, &path.display().to_string())
    }

    /// Serialize back to the dictionary file format, preserving word order.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for dict in &self.dicts {
            let _ = writeln!(out, "[{}]", dict.type_name());
            for word in dict.words() {
                let _ = writeln!(out, "{word}");
            }
        }
        out
    }

    pub fn get(&self, type_name: &str) -> Option<&TypeDictionary> {
        self.by_name.get(type_name).map(|&i| &self.dicts[i])
    }

    /// Dictionaries in declaration order.
    pub fn dictionaries(&self) -> &[TypeDictionary] {
        &self.dicts
    }

    /// First-declared type that contains `word`, if any.
    pub fn type_of_word(&self, word: &str) -> Option<&str> {
        self.dicts
            .iter()
            .find(|d| d.position_of(word).is_some())
            .map(|d| d.type_name())
    }
}

/// Redundant-data percentage of a word that carries `n` payload bits:
/// `100 * (length - n) / length` with `length = avg_word_letters *
/// bytes_per_letter * 8` bits. A word shorter than its payload is an
/// error, not a clamp.
pub fn redundancy_percentage(
    avg_word_letters: f64,
    bytes_per_letter: u32,
    n: u32,
) -> Result<f64> {
    if avg_word_letters.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || bytes_per_letter == 0
        || n == 0
    {
        return Err(Error::InvalidArgument(
            "average word length, bytes per letter, and bit count must be positive".to_string(),
        ));
    }
    let length_bits = avg_word_letters * bytes_per_letter as f64 * 8.0;
    if length_bits < n as f64 {
        return Err(Error::WordShorterThanPayload {
            length_bits,
            n,
        });
    }
    Ok(100.0 * (length_bits - n as f64) / length_bits)
}
