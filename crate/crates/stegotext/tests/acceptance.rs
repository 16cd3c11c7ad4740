//! End-to-end acceptance gate. Each check prints one PASS line; run
//! `cargo test --test acceptance -- --nocapture` to see them all.
//!
//! Coverage: golden two-word encoding, weather-model golden numbers,
//! capacity arithmetic, sentence packing, compression truncation,
//! statistical separation of stego output from ciphertext, codec
//! round-trip property suites, exhaustive-oracle agreement, recognizer
//! self-consistency, and a file-based CLI round trip.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use stegotext::codec::{
    base64_decode, base64_encode, grammatical_decode, grammatical_decode_raw, grammatical_encode,
    grammatical_encode_raw, sentence_substitution_decode, sentence_substitution_decode_raw,
    sentence_substitution_encode, sentence_substitution_encode_raw, word_substitution_decode,
    word_substitution_decode_raw, word_substitution_encode, word_substitution_encode_raw,
    SentenceTable,
};
use stegotext::grammar::{Grammar, Pattern};
use stegotext::hmm::{enumerate_paths_oracle, HmmModel};
use stegotext::lexicon::{bits_per_index, redundancy_percentage, Lexicon, TypeDictionary};
use stegotext::recognizer::{score_sentence, split_sentences, DEFAULT_THRESHOLD};
use stegotext::stats;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn data_arg(name: &str) -> String {
    data(name).to_str().expect("fixture path is UTF-8").to_string()
}

fn pass(number: u32, message: &str) {
    println!("acceptance {number:02} PASS: {message}");
}

/// Wall time of the fastest of five runs, after one warm-up call.
/// Sub-millisecond budgets need the warm-up: the first call pays for
/// lazy allocator and page-cache work that is not the algorithm's.
fn best_time<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut out = f();
    let mut best = Duration::MAX;
    for _ in 0..5 {
        let clock = Instant::now();
        out = f();
        best = best.min(clock.elapsed());
    }
    (out, best)
}

fn run_ok(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_stegotext"))
        .args(args)
        .output()
        .expect("binary spawns");
    assert!(
        out.status.success(),
        "stegotext {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

#[test]
fn check_01_two_word_dictionary_golden_sequence() {
    let lexicon = Lexicon::load(data("colors.dict")).unwrap();
    let grammar = Grammar::new(vec![Pattern::new(&["color"]).unwrap()]).unwrap();
    const GOLDEN: &str = "aswad abyad aswad aswad abyad aswad aswad abyad";

    let ((stego, back), took) = best_time(|| {
        let stego = grammatical_encode_raw(&[0xB6], &lexicon, &grammar).unwrap();
        let back = grammatical_decode_raw(stego.as_str(), &lexicon, &grammar).unwrap();
        (stego, back)
    });
    assert_eq!(stego.as_str(), GOLDEN);
    assert_eq!(back, [0xB6]);

    // a single-type lexicon reduces the grammatical codec to the
    // word-substitution baseline; both must emit the same sequence
    let dict = lexicon.get("color").unwrap();
    let words = word_substitution_encode_raw(&[0xB6], dict).unwrap();
    assert_eq!(words.as_str(), GOLDEN);
    assert_eq!(word_substitution_decode_raw(GOLDEN, dict).unwrap(), [0xB6]);

    assert!(took < Duration::from_millis(1), "round trip took {took:?}");
    pass(1, &format!("0xB6 -> \"{GOLDEN}\" -> 0xB6, bit-exact in {took:?}"));
}

#[test]
fn check_02_weather_model_golden_numbers() {
    let model = HmmModel::load(data("weather.hmm")).unwrap();
    let obs = ["Hike", "Shop", "Clean"];

    let ((forward, path), took) = best_time(|| {
        let forward = model.forward_probability(&obs).unwrap();
        let path = model.viterbi(&obs).unwrap();
        (forward, path)
    });
    assert!(
        (forward - 0.033612).abs() <= 1e-6,
        "forward probability {forward}"
    );
    assert_eq!(path.states, ["Sunny", "Rainy", "Rainy", "Rainy"]);

    // independent confirmation by exhaustive path enumeration
    let oracle = enumerate_paths_oracle(&model, &obs).unwrap();
    assert!((oracle.total_probability - forward).abs() <= 1e-12);
    assert_eq!(oracle.best_path[..], path.states[..obs.len()]);
    assert!((oracle.best_probability - path.probability).abs() <= 1e-12);

    assert!(took < Duration::from_millis(1), "DP pass took {took:?}");
    pass(
        2,
        &format!(
            "forward {forward:.6}, best path {}, oracle agrees, in {took:?}",
            path.states.join(" ")
        ),
    );
}

#[test]
fn check_03_capacity_reports_published_redundancy() {
    let n1 = bits_per_index(81011).unwrap();
    let r1 = redundancy_percentage(4.2, 2, n1).unwrap();
    assert_eq!(n1, 16);
    assert!((r1 - 76.19).abs() <= 0.05, "redundancy {r1}");

    let n2 = bits_per_index(131072).unwrap();
    let r2 = redundancy_percentage(5.0, 1, n2).unwrap();
    assert_eq!(n2, 17);
    assert!((r2 - 57.5).abs() <= 0.05, "redundancy {r2}");

    // the CLI arithmetic path reports the same numbers
    fn reported_redundancy(stdout: &str) -> f64 {
        stdout
            .lines()
            .find_map(|line| line.strip_prefix("redundancy: "))
            .and_then(|rest| rest.trim().trim_end_matches('%').parse().ok())
            .unwrap_or_else(|| panic!("no redundancy line in {stdout:?}"))
    }
    let first = run_ok(&[
        "capacity",
        "--dict-size",
        "81011",
        "--avg-letters",
        "4.2",
        "--bytes-per-letter",
        "2",
    ]);
    assert!(first.contains("bits per word: 16"), "stdout: {first}");
    assert!((reported_redundancy(&first) - 76.19).abs() <= 0.05);

    let second = run_ok(&["capacity", "--dict-size", "131072", "--avg-letters", "5"]);
    assert!(second.contains("bits per word: 17"), "stdout: {second}");
    assert!((reported_redundancy(&second) - 57.5).abs() <= 0.05);

    pass(
        3,
        &format!("81011 words -> 16 bits, {r1:.2}% overhead; 131072 -> 17 bits, {r2:.2}%"),
    );
}

#[test]
fn check_04_kilosentence_table_packs_64_bits_into_7_sentences() {
    let table = SentenceTable::load(data("sentences.table")).unwrap();
    assert_eq!(table.len(), 1024);
    assert_eq!(table.bits(), 10);

    let payload = [0x5Au8; 8]; // 64 bits
    let text = sentence_substitution_encode_raw(&payload, &table).unwrap();
    let count = text.lines().filter(|line| !line.trim().is_empty()).count();
    assert_eq!(count, 7, "expected 7 sentences, got {count}:\n{text}");

    // raw mode zero-fills the last group: 7 sentences carry 70 bits, so
    // the decode returns the 8 payload bytes plus one padding byte
    let back = sentence_substitution_decode_raw(&text, &table).unwrap();
    assert_eq!(&back[..payload.len()], &payload);
    assert!(back[payload.len()..].iter().all(|&b| b == 0));
    pass(4, "64 bits -> exactly 7 sentences with a 1024-entry table");
}

#[test]
fn check_05_compression_percentage_truncates() {
    assert_eq!(stats::optimum_compression_pct(4.916529).unwrap(), 38);
    assert_eq!(stats::optimum_compression_pct(7.995169).unwrap(), 0);
    assert_eq!(stats::optimum_compression_pct(4.412139).unwrap(), 44);
    pass(
        5,
        "entropy 4.916529 -> 38%, 7.995169 -> 0%, 4.412139 -> 44% (truncated)",
    );
}

#[test]
fn check_06_stego_output_scores_like_plain_text_not_ciphertext() {
    let clock = Instant::now();

    // fixed-seed CSPRNG stream as the ciphertext proxy, so the check is
    // deterministic while the bytes still look like cipher output
    let mut rng = ChaCha20Rng::seed_from_u64(0x0617_2026);
    let mut random = vec![0u8; 32 * 1024];
    rng.fill_bytes(&mut random);

    let plain = std::fs::read(data("plain_sample.txt")).unwrap();
    assert!(plain.len() >= 20 * 1024, "plain fixture is {}", plain.len());

    let lexicon = Lexicon::load(data("sample.dict")).unwrap();
    let grammar = Grammar::load(data("sample.grammar")).unwrap();
    for dict in lexicon.dictionaries() {
        assert!(
            dict.len() >= 1000,
            "type {} has only {} words",
            dict.type_name(),
            dict.len()
        );
    }
    let stego = grammatical_encode(&random, &lexicon, &grammar).unwrap();

    let a = stats::analyze(&plain).unwrap(); // natural language
    let b = stats::analyze(&random).unwrap(); // ciphertext proxy
    let c = stats::analyze(stego.as_str().as_bytes()).unwrap(); // stego output

    assert!(b.entropy_bits_per_byte > 7.9, "random entropy {}", b.entropy_bits_per_byte);
    assert!(a.entropy_bits_per_byte < 6.5, "plain entropy {}", a.entropy_bits_per_byte);
    assert!(c.entropy_bits_per_byte < 6.5, "stego entropy {}", c.entropy_bits_per_byte);
    assert!(b.chi_square < 400.0, "random chi-square {}", b.chi_square);
    assert!(a.chi_square > 10_000.0, "plain chi-square {}", a.chi_square);
    assert!(c.chi_square > 10_000.0, "stego chi-square {}", c.chi_square);
    let scc_b = b.serial_correlation.expect("defined for varied bytes");
    let scc_c = c.serial_correlation.expect("defined for varied bytes");
    assert!(scc_b.abs() < 0.02, "random serial correlation {scc_b}");
    assert!(scc_c.abs() > 0.03, "stego serial correlation {scc_c}");

    let took = clock.elapsed();
    assert!(took < Duration::from_secs(10), "took {took:?}");
    pass(
        6,
        &format!(
            "entropy plain {:.2} / random {:.2} / stego {:.2}; chi-square {:.0} / {:.0} / {:.0}; stego sides with plain text, in {took:?}",
            a.entropy_bits_per_byte,
            b.entropy_bits_per_byte,
            c.entropy_bits_per_byte,
            a.chi_square,
            b.chi_square,
            c.chi_square
        ),
    );
}

#[test]
fn check_07_round_trip_property_suite() {
    let clock = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    const TYPE_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];
    const WORD_PREFIXES: [&str; 3] = ["a", "b", "c"];

    let mut payload_bytes = 0usize;
    for case in 0..1000u32 {
        let len = rng.random_range(0..=65536usize);
        payload_bytes += len;
        let mut payload = vec![0u8; len];
        rng.fill_bytes(&mut payload);

        // fresh random lexicon: 1-3 types, 2..=4096 words each, word
        // prefixes keep the types disjoint
        let type_count = rng.random_range(1..=TYPE_NAMES.len());
        let mut dicts = Vec::with_capacity(type_count);
        for t in 0..type_count {
            let m = rng.random_range(2..=4096usize);
            let words: Vec<String> = (0..m)
                .map(|i| format!("{}{i:x}", WORD_PREFIXES[t]))
                .collect();
            dicts.push(TypeDictionary::new(TYPE_NAMES[t], &words).unwrap());
        }
        let lexicon = Lexicon::new(dicts).unwrap();

        // fresh random grammar: 1..=4 patterns of 1..=4 slots drawn from
        // the declared types
        let patterns: Vec<Pattern> = (0..rng.random_range(1..=4usize))
            .map(|_| {
                let slots: Vec<&str> = (0..rng.random_range(1..=4usize))
                    .map(|_| TYPE_NAMES[rng.random_range(0..type_count)])
                    .collect();
                Pattern::new(&slots).unwrap()
            })
            .collect();
        let grammar = Grammar::new(patterns).unwrap();

        let stego = grammatical_encode(&payload, &lexicon, &grammar).unwrap();
        assert_eq!(
            grammatical_decode(stego.as_str(), &lexicon, &grammar).unwrap(),
            payload,
            "grammatical codec, case {case}"
        );

        let dict = lexicon.get(TYPE_NAMES[0]).unwrap();
        let words = word_substitution_encode(&payload, dict).unwrap();
        assert_eq!(
            word_substitution_decode(words.as_str(), dict).unwrap(),
            payload,
            "word codec, case {case}"
        );

        let entries: Vec<String> = (0..rng.random_range(2..=4096usize))
            .map(|i| format!("table entry {i}"))
            .collect();
        let table = SentenceTable::new(&entries).unwrap();
        let sentences = sentence_substitution_encode(&payload, &table).unwrap();
        assert_eq!(
            sentence_substitution_decode(&sentences, &table).unwrap(),
            payload,
            "sentence codec, case {case}"
        );

        assert_eq!(
            base64_decode(&base64_encode(&payload)).unwrap(),
            payload,
            "base64, case {case}"
        );
    }

    // canonical Base64 vectors
    for (plain, encoded) in [
        ("", ""),
        ("f", "Zg=="),
        ("fo", "Zm8="),
        ("foo", "Zm9v"),
        ("foob", "Zm9vYg=="),
        ("fooba", "Zm9vYmE="),
        ("foobar", "Zm9vYmFy"),
    ] {
        assert_eq!(base64_encode(plain.as_bytes()), encoded);
        assert_eq!(base64_decode(encoded).unwrap(), plain.as_bytes());
    }

    let took = clock.elapsed();
    assert!(took < Duration::from_secs(60), "took {took:?}");
    pass(
        7,
        &format!(
            "1000 payloads ({:.1} MiB) round-tripped through every codec in {took:?}",
            payload_bytes as f64 / (1024.0 * 1024.0)
        ),
    );
}

#[test]
fn check_08_dynamic_programs_match_exhaustive_oracle() {
    fn random_row(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / sum).collect()
    }

    let mut rng = ChaCha20Rng::seed_from_u64(8);
    for case in 0..200u32 {
        let s = rng.random_range(2..=4usize);
        let o = rng.random_range(2..=4usize);
        let states: Vec<String> = (0..s).map(|i| format!("s{i}")).collect();
        let observations: Vec<String> = (0..o).map(|i| format!("o{i}")).collect();
        let start = random_row(&mut rng, s);
        let trans: Vec<Vec<f64>> = (0..s).map(|_| random_row(&mut rng, s)).collect();
        let emit: Vec<Vec<f64>> = (0..s).map(|_| random_row(&mut rng, o)).collect();
        let model = HmmModel::new(states, observations, start, trans, emit).unwrap();

        let len = rng.random_range(1..=6usize);
        let obs: Vec<String> = (0..len)
            .map(|_| format!("o{}", rng.random_range(0..o)))
            .collect();

        let forward = model.forward_probability(&obs).unwrap();
        let path = model.viterbi(&obs).unwrap();
        let oracle = enumerate_paths_oracle(&model, &obs).unwrap();
        assert!(
            (forward - oracle.total_probability).abs() <= 1e-12,
            "forward mismatch, case {case}: {forward} vs {}",
            oracle.total_probability
        );
        assert_eq!(path.states[..len], oracle.best_path[..], "path mismatch, case {case}");
        assert!(
            (path.probability - oracle.best_probability).abs() <= 1e-12,
            "path probability mismatch, case {case}"
        );
    }
    pass(
        8,
        "forward and Viterbi agree with exhaustive enumeration on 200 random models",
    );
}

#[test]
fn check_09_every_stego_sentence_passes_the_recognizer() {
    let lexicon = Lexicon::load(data("sample.dict")).unwrap();
    let grammar = Grammar::load(data("sample.grammar")).unwrap();
    let model = HmmModel::load(data("sample.hmm")).unwrap();

    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let mut lengths = vec![0usize, 1, 2, 3, 4, 5, 8, 13, 21, 64, 255, 1024, 4096];
    lengths.extend((0..27).map(|_| rng.random_range(0..2048usize)));

    let mut sentences_checked = 0usize;
    let mut spawn_samples: Vec<String> = Vec::new();
    for (i, len) in lengths.iter().enumerate() {
        let mut payload = vec![0u8; *len];
        rng.fill_bytes(&mut payload);
        let stego = grammatical_encode(&payload, &lexicon, &grammar).unwrap();
        for words in split_sentences(stego.as_str()) {
            let verdict = score_sentence(&words, &lexicon, &model, DEFAULT_THRESHOLD).unwrap();
            assert!(
                verdict.accepted,
                "rejected sentence ({:.4} log10/word): {}",
                verdict.log10_probability_per_word,
                words.join(" ")
            );
            sentences_checked += 1;
        }
        if i % 8 == 0 {
            spawn_samples.push(stego.into_string());
        }
    }

    // the CLI front end must agree: exit code 0, nothing rejected
    let dir = tempfile::tempdir().unwrap();
    for (i, text) in spawn_samples.iter().enumerate() {
        let path = dir.path().join(format!("stego-{i}.txt"));
        std::fs::write(&path, text).unwrap();
        let stdout = run_ok(&[
            "recognize",
            "--in",
            path.to_str().unwrap(),
            "--lexicon",
            &data_arg("sample.dict"),
            "--model",
            &data_arg("sample.hmm"),
        ]);
        assert!(stdout.contains(" 0 rejected"), "stdout: {stdout}");
    }

    pass(
        9,
        &format!(
            "{sentences_checked} stego sentences from {} payloads all accepted at threshold {DEFAULT_THRESHOLD}",
            lengths.len()
        ),
    );
}

#[test]
fn check_10_reference_payload_round_trips_through_cli_files() {
    const HEX: &str = "7A B2 E8 03 91 10 2A 20 4C F7 04 B9 27 2C B5 F2 26 EF \
                       18 EC AB 4B D3 40 0A 10 61 DC 13 6A A1 11 DE 2C 19 \
                       FF 26 17 27 F4 87 23 3A A3 C0 28 B3 1B D8 83 BF A1 E8 \
                       74 25 69 05 92 3E F5 23 E3 1E E9";
    let payload: Vec<u8> = HEX
        .split_whitespace()
        .map(|b| u8::from_str_radix(b, 16).unwrap())
        .collect();
    assert_eq!(payload.len(), 64);

    let dir = tempfile::tempdir().unwrap();
    let payload_path = dir.path().join("payload.bin");
    let stego_path = dir.path().join("stego.txt");
    let back_path = dir.path().join("roundtrip.bin");
    std::fs::write(&payload_path, &payload).unwrap();

    run_ok(&[
        "encode",
        "--lexicon",
        &data_arg("sample.dict"),
        "--grammar",
        &data_arg("sample.grammar"),
        "--in",
        payload_path.to_str().unwrap(),
        "--out",
        stego_path.to_str().unwrap(),
    ]);
    run_ok(&[
        "decode",
        "--lexicon",
        &data_arg("sample.dict"),
        "--grammar",
        &data_arg("sample.grammar"),
        "--in",
        stego_path.to_str().unwrap(),
        "--out",
        back_path.to_str().unwrap(),
    ]);

    assert_eq!(std::fs::read(&back_path).unwrap(), payload);
    pass(
        10,
        "64-byte reference payload went file -> stego text -> file bit-exactly",
    );
}
