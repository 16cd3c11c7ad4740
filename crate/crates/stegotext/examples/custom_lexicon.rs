//! Build a lexicon and grammar in code instead of loading files, round
//! trip a payload through them, and show the on-disk format.
//! Run with: cargo run --example custom_lexicon

use stegotext::codec::{grammatical_decode, grammatical_encode};
use stegotext::grammar::{Grammar, Pattern};
use stegotext::lexicon::{Lexicon, TypeDictionary};

fn main() {
    // four words per type = 2 payload bits per word; any size of at
    // least 2 works, and sizes off a power of two simply leave the top
    // words unused by the encoder
    let lexicon = Lexicon::new(vec![
        TypeDictionary::new("noun", &["otters", "crows", "foxes", "bees"]).unwrap(),
        TypeDictionary::new("verb", &["gather", "wander", "rest", "sing"]).unwrap(),
        TypeDictionary::new("adverb", &["quietly", "daily", "nearby", "early"]).unwrap(),
    ])
    .unwrap();

    // sentence shapes cycle round-robin during encoding
    let grammar = Grammar::new(vec![
        Pattern::new(&["noun", "verb", "adverb"]).unwrap(),
        Pattern::new(&["noun", "verb"]).unwrap(),
    ])
    .unwrap();

    // the framed payload leads with a 32-bit length whose zero bytes
    // select each dictionary's first word, hence the repetitive opening
    let secret = b"7pm";
    let stego = grammatical_encode(secret, &lexicon, &grammar).unwrap();
    println!("stego text:\n{stego}\n");

    let recovered = grammatical_decode(stego.as_str(), &lexicon, &grammar).unwrap();
    assert_eq!(recovered, secret);
    println!("recovered: {}", String::from_utf8(recovered).unwrap());

    // the same lexicon as it would live on disk; Lexicon::load reads
    // this format back
    println!("\nlexicon file format:\n{}", lexicon.to_file_string());
    let reparsed = Lexicon::from_str_named(&lexicon.to_file_string(), "inline").unwrap();
    assert_eq!(
        grammatical_decode(stego.as_str(), &reparsed, &grammar).unwrap(),
        secret
    );
}
