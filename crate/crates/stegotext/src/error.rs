use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Error, Debug)]
pub enum Error {
    #[error("bit count {0} is outside the supported range 1..=32")]
    InvalidBitCount(u32),

    #[error("payload of {0} bytes does not fit a 32-bit length header")]
    PayloadTooLarge(usize),

    #[error("malformed frame: {0}")]
    MalformedFrame(String),

    #[error("dictionary `{type_name}` has {size} words; at least 2 are required")]
    DictionaryTooSmall { type_name: String, size: usize },

    #[error("index {index} is out of range for dictionary `{type_name}` (limit {limit})")]
    IndexOutOfRange {
        type_name: String,
        index: u32,
        limit: u32,
    },

    #[error("unknown word `{word}` at token {position} (expected type `{expected_type}`)")]
    UnknownWord {
        word: String,
        expected_type: String,
        position: usize,
    },

    #[error("unknown sentence at line {position}: `{sentence}`")]
    UnknownSentence { sentence: String, position: usize },

    #[error("grammar requires type `{0}` which the lexicon does not define")]
    GrammarLexiconMismatch(String),

    #[error("observation `{0}` is not in the model alphabet")]
    InvalidObservation(String),

    #[error("observation sequence is empty")]
    EmptyObservations,

    #[error("exhaustive enumeration would visit {0} paths (limit {limit})", limit = crate::hmm::ORACLE_PATH_LIMIT)]
    OracleTooLarge(u64),

    #[error("model alphabet is missing label `{0}` required for recognition")]
    ModelAlphabetMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("input is empty")]
    EmptyInput,

    #[error("need at least {needed} bytes, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("entropy {0} is outside 0..=8 bits/byte")]
    EntropyOutOfRange(f64),

    #[error("word length {length_bits} bits is shorter than the {n} payload bits it must carry")]
    WordShorterThanPayload { length_bits: f64, n: u32 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid base64: {0}")]
    Base64(#[from] base64::DecodeError),
}

pub type Result<T> = std::result::Result<T, Error>;
