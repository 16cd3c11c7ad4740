//! Sentence patterns and the deterministic word-type scheduler.
//!
//! A grammar is an ordered list of patterns; each pattern is an ordered
//! list of word-type labels. A [`GrammarSchedule`] walks the patterns
//! round-robin, one type per call, flagging the last slot of each pattern
//! so the encoder knows where to put the sentence terminator. Pattern
//! choice never consumes payload bits, so the decoder can replay the
//! identical type stream from the same grammar.

use std::path::Path;

use crate::{Error, Result};

/// One ordered word-type sequence, e.g. `verb noun noun adverb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    types: Vec<String>,
}

impl Pattern {
    pub fn new<S: AsRef<str>>(types: &[S]) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::InvalidArgument(
                "a pattern needs at least one word type".to_string(),
            ));
        }
        Ok(Self {
            types: types.iter().map(|t| t.as_ref().to_string()).collect(),
        })
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// An ordered, immutable pattern list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    patterns: Vec<Pattern>,
}

impl Grammar {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidArgument(
                "a grammar needs at least one pattern".to_string(),
            ));
        }
        Ok(Self { patterns })
    }

    /// Parse the grammar file format: `pattern: type1 type2 ...` per line,
    /// `#` comments, blank lines ignored. Line order is round-robin order.
    pub fn from_str_named(text: &str, path: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let rest = line.strip_prefix("pattern:").ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: lineno,
                message: format!("expected `pattern: type1 type2 ...`, got `{line}`"),
            })?;
            let types: Vec<&str> = rest.split_whitespace().collect();
            let pattern = Pattern::new(&types).map_err(|e| Error::Parse {
                path: path.to_string(),
                line: lineno,
                message: e.to_string(),
            })?;
            patterns.push(pattern);
        }
        if patterns.is_empty() {
            return Err(Error::Parse {
                path: path.to_string(),
                line: 0,
                message: "no patterns found".to_string(),
            });
        }
        Self::new(patterns)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_str_named(&text, &path.display().to_string())
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Total type slots across all patterns — the period of the type stream.
    pub fn cycle_len(&self) -> usize {
        self.patterns.iter().map(Pattern::len).sum()
    }

    /// Every distinct type label used by any pattern.
    pub fn type_labels(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for p in &self.patterns {
            for t in p.types() {
                if !seen.contains(&t.as_str()) {
                    seen.push(t.as_str());
                }
            }
        }
        seen
    }
}

/// Cursor over a [`Grammar`] that yields the next required word type.
#[derive(Debug, Clone)]
pub struct GrammarSchedule<'g> {
    grammar: &'g Grammar,
    pattern: usize,
    slot: usize,
}

impl<'g> GrammarSchedule<'g> {
    pub fn new(grammar: &'g Grammar) -> Self {
        Self {
            grammar,
            pattern: 0,
            slot: 0,
        }
    }

    /// The type at the cursor, advancing it. The flag is true when the
    /// returned type is the last slot of its pattern — the encoder emits
    /// the sentence terminator after that word.
    pub fn next_type(&mut self) -> (&'g str, bool) {
        let pattern = &self.grammar.patterns()[self.pattern];
        let label = pattern.types()[self.slot].as_str();
        let boundary = self.slot + 1 == pattern.len();
        if boundary {
            self.slot = 0;
            self.pattern = (self.pattern + 1) % self.grammar.patterns().len();
        } else {
            self.slot += 1;
        }
        (label, boundary)
    }

    /// Move the cursor back to the first slot of the first pattern.
    pub fn reset(&mut self) {
        self.pattern = 0;
        self.slot = 0;
    }
}
