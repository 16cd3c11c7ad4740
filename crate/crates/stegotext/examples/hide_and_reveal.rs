//! Hide a secret payload inside grammatically structured text, then
//! recover it. Run with: cargo run --example hide_and_reveal

use std::path::Path;

use stegotext::codec::{grammatical_decode, grammatical_encode};
use stegotext::grammar::Grammar;
use stegotext::lexicon::Lexicon;

fn main() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let lexicon = Lexicon::load(base.join("sample.dict")).expect("lexicon loads");
    let grammar = Grammar::load(base.join("sample.grammar")).expect("grammar loads");

    // in a real deployment this would be ciphertext; any bytes work
    let secret = b"meet at the north gate at dawn";
    println!("payload: {} bytes", secret.len());

    // each word carries floor(log2 m) payload bits for its type's
    // m-word dictionary; the grammar decides which type comes next
    let stego = grammatical_encode(secret, &lexicon, &grammar).expect("payload encodes");
    println!("\nstego text:\n{stego}\n");

    let recovered = grammatical_decode(stego.as_str(), &lexicon, &grammar).expect("stego decodes");
    assert_eq!(recovered, secret);
    println!("recovered: {}", String::from_utf8(recovered).unwrap());

    // tampering is detected: any word outside the expected dictionary
    // aborts the decode with its token position
    let tampered = stego.as_str().replacen(' ', " suspicious ", 1);
    match grammatical_decode(&tampered, &lexicon, &grammar) {
        Err(err) => println!("\ntampered copy rejected: {err}"),
        Ok(_) => unreachable!("tampered text must not decode"),
    }
}
