//! How much of the stego text is overhead? Bits per word grow with the
//! log of the dictionary size, while the words themselves keep their
//! natural length, so bigger dictionaries waste less space.
//! Run with: cargo run --example capacity_table

use stegotext::lexicon::{bits_per_index, redundancy_percentage};

fn main() {
    println!("dictionary size -> payload bits per word, overhead for");
    println!("4.2-letter words at 2 bytes per letter:\n");
    println!("{:>10}  {:>4}  {:>10}", "words", "bits", "overhead");
    for m in [2usize, 16, 256, 1024, 8192, 81011, 131072] {
        let n = bits_per_index(m).unwrap();
        let r = redundancy_percentage(4.2, 2, n).unwrap();
        println!("{m:>10}  {n:>4}  {r:>9.2}%");
    }

    // single-byte letters halve the word cost at the same bit yield
    let n = bits_per_index(131072).unwrap();
    let r = redundancy_percentage(5.0, 1, n).unwrap();
    println!("\n131072 five-letter words at 1 byte/letter: {n} bits, {r:.2}% overhead");

    // a word shorter than its own payload share cannot be overhead at
    // all; the computation refuses rather than reporting negative waste
    match redundancy_percentage(1.0, 1, 16) {
        Err(err) => println!("\n1-letter words carrying 16 bits: {err}"),
        Ok(_) => unreachable!(),
    }
}
