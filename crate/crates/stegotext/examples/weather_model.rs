//! Score an observation sequence against a hidden Markov model three
//! ways: the forward algorithm (total probability), the Viterbi
//! algorithm (best hidden-state path), and exhaustive enumeration as a
//! cross-check. Run with: cargo run --example weather_model

use std::path::Path;

use stegotext::hmm::{enumerate_paths_oracle, HmmModel};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/weather.hmm");
    let model = HmmModel::load(path).expect("model loads");
    println!("states: {}", model.states().join(", "));
    println!("observations: {}", model.observations().join(", "));

    let obs = ["Hike", "Shop", "Clean"];
    println!("\nobserved activities: {}", obs.join(", "));

    // probability of seeing this sequence at all, summed over every
    // possible weather history
    let forward = model.forward_probability(&obs).unwrap();
    println!("forward probability: {forward:.6}");

    // single most likely weather history; the extra trailing state is
    // the most likely next step after the last observation
    let path = model.viterbi(&obs).unwrap();
    println!(
        "most likely weather: {} (probability {:.6})",
        path.states.join(" -> "),
        path.probability
    );

    // brute force over all |states|^|obs| paths agrees with both
    let oracle = enumerate_paths_oracle(&model, &obs).unwrap();
    assert!((oracle.total_probability - forward).abs() < 1e-12);
    assert_eq!(oracle.best_path[..], path.states[..obs.len()]);
    println!(
        "exhaustive check: {} paths confirm both dynamic programs",
        3usize.pow(obs.len() as u32)
    );

    // log-space variants survive sequences where the plain probability
    // underflows to zero
    let long: Vec<&str> = std::iter::repeat_n(&obs, 300).flatten().copied().collect();
    let log10 = model.forward_log10(&long).unwrap();
    println!(
        "\n{} observations: forward = 10^{log10:.1} (too small for a plain f64)",
        long.len()
    );
}
