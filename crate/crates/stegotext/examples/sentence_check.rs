//! Screen text the way an automated observer would: split it into
//! sentences, map words to grammatical types, and accept only
//! sentences whose best hidden-state path is probable enough.
//! Run with: cargo run --example sentence_check

use std::path::Path;

use stegotext::codec::grammatical_encode;
use stegotext::grammar::Grammar;
use stegotext::hmm::HmmModel;
use stegotext::lexicon::Lexicon;
use stegotext::recognizer::{score_sentence, split_sentences, DEFAULT_THRESHOLD};

fn main() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let lexicon = Lexicon::load(base.join("sample.dict")).unwrap();
    let grammar = Grammar::load(base.join("sample.grammar")).unwrap();
    let model = HmmModel::load(base.join("sample.hmm")).unwrap();

    // stego output follows the grammar, so every sentence should pass
    let stego = grammatical_encode(b"innocuous traffic", &lexicon, &grammar).unwrap();
    println!("threshold: {DEFAULT_THRESHOLD} log10 probability per word\n");
    println!("stego text under the sample grammar:");
    report(stego.as_str(), &lexicon, &model);

    // word salad maps to the unknown observation and scores far below
    // the threshold
    println!("\nrandom word salad:");
    report("xylophone quantum breakfast warp. zzz qqq vvv.", &lexicon, &model);
}

fn report(text: &str, lexicon: &Lexicon, model: &HmmModel) {
    for words in split_sentences(text) {
        let verdict = score_sentence(&words, lexicon, model, DEFAULT_THRESHOLD).unwrap();
        println!(
            "  {} ({:.3} log10/word)  {}...",
            if verdict.accepted { "accept" } else { "REJECT" },
            verdict.log10_probability_per_word,
            words
                .iter()
                .take(4)
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
}
