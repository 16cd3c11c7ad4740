//! Compare the three baseline text codecs on one payload: Base64,
//! word substitution, and sentence substitution.
//! Run with: cargo run --example baseline_codecs

use std::path::Path;

use stegotext::codec::{
    base64_decode, base64_encode, sentence_substitution_decode, sentence_substitution_encode,
    word_substitution_decode, word_substitution_encode, SentenceTable,
};
use stegotext::lexicon::Lexicon;

fn main() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let payload = b"cargo manifest";
    println!("payload: {} bytes\n", payload.len());

    // Base64 is compact but obviously machine-generated to any observer
    let b64 = base64_encode(payload);
    println!("base64 ({} bytes): {b64}", b64.len());
    assert_eq!(base64_decode(&b64).unwrap(), payload);

    // word substitution maps each bit-group to a dictionary word; the
    // output is wordlike but has no sentence structure
    let lexicon = Lexicon::load(base.join("sample.dict")).unwrap();
    let dict = lexicon.get("noun").expect("sample lexicon has nouns");
    let words = word_substitution_encode(payload, dict).unwrap();
    println!(
        "\nword substitution ({} bytes, {} bits/word):\n{words}",
        words.as_str().len(),
        dict.bits()
    );
    assert_eq!(word_substitution_decode(words.as_str(), dict).unwrap(), payload);

    // sentence substitution maps each bit-group to a whole sentence:
    // the most natural-looking output and the most redundant
    let table = SentenceTable::load(base.join("sentences.table")).unwrap();
    let text = sentence_substitution_encode(payload, &table).unwrap();
    println!(
        "\nsentence substitution ({} bytes, {} bits/sentence):\n{text}",
        text.len(),
        table.bits()
    );
    assert_eq!(sentence_substitution_decode(&text, &table).unwrap(), payload);
}
