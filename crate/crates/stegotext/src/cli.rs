//! Command-line front end: argument definitions, file plumbing, and the
//! mapping from error families to exit codes.
//!
//! Exit codes: 0 success; 1 a recognize run rejected at least one
//! sentence; 2 usage or configuration errors; 3 file load/parse errors;
//! 4 unknown word or sentence during decode; 5 malformed payload frame;
//! 6 insufficient or invalid input data.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::codec::{
    base64_decode, base64_encode, grammatical_decode, grammatical_decode_raw, grammatical_encode,
    grammatical_encode_raw, sentence_substitution_decode, sentence_substitution_decode_raw,
    sentence_substitution_encode, sentence_substitution_encode_raw, word_substitution_decode,
    word_substitution_decode_raw, word_substitution_encode, word_substitution_encode_raw,
    SentenceTable,
};
use crate::grammar::Grammar;
use crate::hmm::HmmModel;
use crate::lexicon::{bits_per_index, redundancy_percentage, Lexicon, TypeDictionary};
use crate::recognizer::{score_sentence, split_sentences, DEFAULT_THRESHOLD};
use crate::stats::analyze;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "stegotext",
    version,
    about = "Hide encrypted byte streams inside grammatically structured text"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode payload bytes as grammatical stego text
    Encode(CodecArgs),
    /// Decode grammatical stego text back to the original payload
    Decode(CodecArgs),
    /// Run a baseline codec: base64, word substitution, or sentence substitution
    Baseline(BaselineArgs),
    /// Print the six-metric randomness report for a byte stream
    Analyze(AnalyzeArgs),
    /// Print forward probability and the best hidden-state path for observations
    Viterbi(ViterbiArgs),
    /// Score each sentence of a text against a language model
    Recognize(RecognizeArgs),
    /// Print bits-per-word/sentence and redundancy for a lexicon and grammar
    Capacity(CapacityArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file, or - for standard input
    #[arg(long = "in", value_name = "PATH|-", default_value = "-")]
    pub input: String,
    /// Output file, or - for standard output
    #[arg(long = "out", value_name = "PATH|-", default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Type-dictionary file
    #[arg(long, env = "STEGOTEXT_LEXICON", value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Grammar pattern file
    #[arg(long, env = "STEGOTEXT_GRAMMAR", value_name = "PATH")]
    pub grammar: PathBuf,
    /// Skip length framing and terminators (fixed-width fixtures; not
    /// self-delimiting)
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineKind {
    Base64,
    Word,
    Sentence,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Which baseline codec to run
    #[arg(long, value_enum, value_name = "KIND")]
    pub kind: BaselineKind,
    /// Decode instead of encode
    #[arg(long)]
    pub decode: bool,
    /// Type-dictionary file (word kind)
    #[arg(long, env = "STEGOTEXT_LEXICON", value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// Dictionary type to use for the word kind (default: first declared)
    #[arg(long = "type", value_name = "NAME")]
    pub type_name: Option<String>,
    /// Sentence table file (sentence kind)
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,
    /// Skip length framing (word and sentence kinds)
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Emit the report as a JSON object instead of a table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ViterbiArgs {
    /// Hidden Markov model file
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    /// Observation labels, in order
    #[arg(value_name = "OBSERVATION", num_args = 1..)]
    pub observations: Vec<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    /// Input text file, or - for standard input
    #[arg(long = "in", value_name = "PATH|-", default_value = "-")]
    pub input: String,
    /// Type-dictionary file mapping words to observation labels
    #[arg(long, env = "STEGOTEXT_LEXICON", value_name = "PATH")]
    pub lexicon: PathBuf,
    /// Language model file
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    /// Acceptance threshold, log10 probability per word
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, allow_negative_numbers = true)]
    pub threshold: f64,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    /// Type-dictionary file (with --grammar)
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// Grammar pattern file (with --lexicon)
    #[arg(long, value_name = "PATH")]
    pub grammar: Option<PathBuf>,
    /// Dictionary size m, for the arithmetic path (with --avg-letters)
    #[arg(long, value_name = "M", conflicts_with_all = ["lexicon", "grammar"])]
    pub dict_size: Option<usize>,
    /// Average word length in letters
    #[arg(long, value_name = "LETTERS", requires = "dict_size")]
    pub avg_letters: Option<f64>,
    /// Storage bytes per letter
    #[arg(long, value_name = "BYTES", default_value_t = 1)]
    pub bytes_per_letter: u32,
}

/// Parse arguments, run, print errors, and map them to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Dispatch a parsed invocation. `Ok` carries the exit code for outcomes
/// that are not errors (recognize returns 1 when a sentence is rejected).
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Baseline(args) => cmd_baseline(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Viterbi(args) => cmd_viterbi(args),
        Command::Recognize(args) => cmd_recognize(args),
        Command::Capacity(args) => cmd_capacity(args),
    }
}

/// Exit code family for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::UnknownWord { .. } | Error::UnknownSentence { .. } => 4,
        Error::MalformedFrame(_) => 5,
        Error::EmptyInput
        | Error::InsufficientData { .. }
        | Error::EntropyOutOfRange(_)
        | Error::Base64(_) => 6,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidModel(_)
        | Error::DictionaryTooSmall { .. }
        | Error::GrammarLexiconMismatch(_)
        | Error::ModelAlphabetMismatch(_) => 3,
        _ => 2,
    }
}

fn read_input(spec: &str) -> Result<Vec<u8>> {
    if spec == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read(spec)?)
    }
}

fn read_input_text(spec: &str) -> Result<String> {
    String::from_utf8(read_input(spec)?).map_err(|_| Error::Parse {
        path: spec.to_string(),
        line: 0,
        message: "input is not valid UTF-8".to_string(),
    })
}

fn write_output(spec: &str, bytes: &[u8]) -> Result<()> {
    if spec == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
        Ok(())
    } else {
        Ok(std::fs::write(spec, bytes)?)
    }
}

/// Text outputs always end with exactly one newline.
fn write_text(spec: &str, text: &str) -> Result<()> {
    let mut owned = text.trim_end_matches('\n').to_string();
    owned.push('\n');
    write_output(spec, owned.as_bytes())
}

fn cmd_encode(args: CodecArgs) -> Result<u8> {
    let lexicon = Lexicon::load(&args.lexicon)?;
    let grammar = Grammar::load(&args.grammar)?;
    let payload = read_input(&args.io.input)?;
    let text = if args.raw {
        grammatical_encode_raw(&payload, &lexicon, &grammar)?
    } else {
        grammatical_encode(&payload, &lexicon, &grammar)?
    };
    write_text(&args.io.output, text.as_str())?;
    Ok(0)
}

fn cmd_decode(args: CodecArgs) -> Result<u8> {
    let lexicon = Lexicon::load(&args.lexicon)?;
    let grammar = Grammar::load(&args.grammar)?;
    let text = read_input_text(&args.io.input)?;
    let payload = if args.raw {
        grammatical_decode_raw(&text, &lexicon, &grammar)?
    } else {
        grammatical_decode(&text, &lexicon, &grammar)?
    };
    write_output(&args.io.output, &payload)?;
    Ok(0)
}

fn word_dict(args: &BaselineArgs) -> Result<(Lexicon, String)> {
    let path = args.lexicon.as_ref().ok_or_else(|| {
        Error::InvalidArgument("--lexicon is required for --kind word".to_string())
    })?;
    let lexicon = Lexicon::load(path)?;
    let type_name = match &args.type_name {
        Some(name) => {
            if lexicon.get(name).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "type `{name}` is not in the lexicon"
                )));
            }
            name.clone()
        }
        None => lexicon.dictionaries()[0].type_name().to_string(),
    };
    Ok((lexicon, type_name))
}

fn cmd_baseline(args: BaselineArgs) -> Result<u8> {
    match args.kind {
        BaselineKind::Base64 => {
            if args.decode {
                let text = read_input_text(&args.io.input)?;
                write_output(&args.io.output, &base64_decode(&text)?)?;
            } else {
                let payload = read_input(&args.io.input)?;
                write_text(&args.io.output, &base64_encode(&payload))?;
            }
        }
        BaselineKind::Word => {
            let (lexicon, type_name) = word_dict(&args)?;
            let dict: &TypeDictionary = lexicon.get(&type_name).expect("checked");
            if args.decode {
                let text = read_input_text(&args.io.input)?;
                let payload = if args.raw {
                    word_substitution_decode_raw(&text, dict)?
                } else {
                    word_substitution_decode(&text, dict)?
                };
                write_output(&args.io.output, &payload)?;
            } else {
                let payload = read_input(&args.io.input)?;
                let text = if args.raw {
                    word_substitution_encode_raw(&payload, dict)?
                } else {
                    word_substitution_encode(&payload, dict)?
                };
                write_text(&args.io.output, text.as_str())?;
            }
        }
        BaselineKind::Sentence => {
            let path = args.table.as_ref().ok_or_else(|| {
                Error::InvalidArgument("--table is required for --kind sentence".to_string())
            })?;
            let table = SentenceTable::load(path)?;
            if args.decode {
                let text = read_input_text(&args.io.input)?;
                let payload = if args.raw {
                    sentence_substitution_decode_raw(&text, &table)?
                } else {
                    sentence_substitution_decode(&text, &table)?
                };
                write_output(&args.io.output, &payload)?;
            } else {
                let payload = read_input(&args.io.input)?;
                let text = if args.raw {
                    sentence_substitution_encode_raw(&payload, &table)?
                } else {
                    sentence_substitution_encode(&payload, &table)?
                };
                write_text(&args.io.output, &text)?;
            }
        }
    }
    Ok(0)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8> {
    let data = read_input(&args.io.input)?;
    let report = analyze(&data)?;
    let rendered = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        report.to_table()
    };
    write_text(&args.io.output, &rendered)?;
    Ok(0)
}

fn cmd_viterbi(args: ViterbiArgs) -> Result<u8> {
    let model = HmmModel::load(&args.model)?;
    let forward = model.forward_probability(&args.observations)?;
    let path = model.viterbi(&args.observations)?;
    if args.json {
        let value = serde_json::json!({
            "forward_probability": forward,
            "best_path": path.states,
            "path_probability": path.probability,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
    } else {
        println!("forward probability: {forward:.6}");
        println!("best path: {}", path.states.join(" "));
        println!("path probability: {:.6}", path.probability);
    }
    Ok(0)
}

fn cmd_recognize(args: RecognizeArgs) -> Result<u8> {
    let lexicon = Lexicon::load(&args.lexicon)?;
    let model = HmmModel::load(&args.model)?;
    let text = read_input_text(&args.input)?;
    let sentences = split_sentences(&text);
    let mut rejected = 0usize;
    let mut entries = Vec::with_capacity(sentences.len());
    for (i, words) in sentences.iter().enumerate() {
        let verdict = score_sentence(words, &lexicon, &model, args.threshold)?;
        if !verdict.accepted {
            rejected += 1;
        }
        entries.push((i + 1, words.len(), verdict));
    }
    if args.json {
        let value = serde_json::json!({
            "threshold": args.threshold,
            "sentences": entries.iter().map(|(index, word_count, v)| {
                serde_json::json!({
                    "index": index,
                    "accepted": v.accepted,
                    "log10_probability_per_word": v.log10_probability_per_word,
                    "word_count": word_count,
                })
            }).collect::<Vec<_>>(),
            "all_accepted": rejected == 0,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
    } else {
        for (index, word_count, verdict) in &entries {
            let label = if verdict.accepted { "accept" } else { "reject" };
            println!(
                "sentence {index}: {label} ({:.4} log10/word, {word_count} words)",
                verdict.log10_probability_per_word
            );
        }
        println!(
            "{} sentences, {} rejected, threshold {}",
            entries.len(),
            rejected,
            args.threshold
        );
    }
    Ok(if rejected > 0 { 1 } else { 0 })
}

fn cmd_capacity(args: CapacityArgs) -> Result<u8> {
    if let Some(m) = args.dict_size {
        let avg_letters = args.avg_letters.ok_or_else(|| {
            Error::InvalidArgument("--avg-letters is required with --dict-size".to_string())
        })?;
        let n = bits_per_index(m)?;
        let r = redundancy_percentage(avg_letters, args.bytes_per_letter, n)?;
        println!("dictionary size: {m} words");
        println!("bits per word: {n}");
        println!(
            "word length: {avg_letters} letters x {} bytes/letter",
            args.bytes_per_letter
        );
        println!("redundancy: {r:.4}%");
        return Ok(0);
    }

    let (lex_path, grammar_path) = match (&args.lexicon, &args.grammar) {
        (Some(l), Some(g)) => (l, g),
        _ => {
            return Err(Error::InvalidArgument(
                "provide --lexicon with --grammar, or --dict-size with --avg-letters".to_string(),
            ))
        }
    };
    let lexicon = Lexicon::load(lex_path)?;
    let grammar = Grammar::load(grammar_path)?;
    for label in grammar.type_labels() {
        if lexicon.get(label).is_none() {
            return Err(Error::GrammarLexiconMismatch(label.to_string()));
        }
    }
    for label in grammar.type_labels() {
        let dict = lexicon.get(label).expect("checked");
        println!(
            "type {label}: {} words, {} bits/word, mean word length {:.2} letters ({:.2} bytes)",
            dict.len(),
            dict.bits(),
            dict.mean_word_chars(),
            dict.mean_word_bytes()
        );
    }
    let mut cycle_bits = 0u64;
    let mut cycle_bytes = 0f64;
    for (i, pattern) in grammar.patterns().iter().enumerate() {
        let mut bits = 0u64;
        let mut bytes = 0f64;
        for label in pattern.types() {
            let dict = lexicon.get(label).expect("checked");
            bits += u64::from(dict.bits());
            bytes += dict.mean_word_bytes();
        }
        // separators: a space after every word, terminator after the last
        bytes += pattern.len() as f64 + 1.0;
        println!(
            "pattern {}: {} -> {bits} bits/sentence",
            i + 1,
            pattern.types().join(" ")
        );
        cycle_bits += bits;
        cycle_bytes += bytes;
    }
    let redundancy = 100.0 * (cycle_bytes * 8.0 - cycle_bits as f64) / (cycle_bytes * 8.0);
    println!(
        "cycle: {cycle_bits} payload bits in about {cycle_bytes:.1} text bytes, redundancy {redundancy:.2}%"
    );
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_cover_the_error_families() {
        assert_eq!(
            exit_code(&Error::UnknownWord {
                word: "w".into(),
                expected_type: "t".into(),
                position: 1
            }),
            4
        );
        assert_eq!(exit_code(&Error::MalformedFrame("short".into())), 5);
        assert_eq!(exit_code(&Error::EmptyInput), 6);
        assert_eq!(
            exit_code(&Error::Parse {
                path: "f".into(),
                line: 1,
                message: "m".into()
            }),
            3
        );
        assert_eq!(exit_code(&Error::InvalidArgument("bad".into())), 2);
    }
}
