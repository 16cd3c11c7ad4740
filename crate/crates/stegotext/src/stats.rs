//! Six-metric randomness battery over byte streams: Shannon entropy,
//! optimum compression, chi-square, arithmetic mean, Monte Carlo π, and
//! circular serial correlation. Ciphertext scores near-uniform on every
//! metric; natural-language text does not, which is the distinction the
//! stego codecs exist to exploit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// All six metrics for one byte stream. `serial_correlation` is `None`
/// when the stream is constant (zero variance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub entropy_bits_per_byte: f64,
    pub optimum_compression_pct: u32,
    pub chi_square: f64,
    pub arithmetic_mean: f64,
    pub monte_carlo_pi: f64,
    pub monte_carlo_error_pct: f64,
    pub serial_correlation: Option<f64>,
    pub byte_count: u64,
}

impl StatReport {
    /// Human-readable table with one row per metric.
    pub fn to_table(&self) -> String {
        let scc = match self.serial_correlation {
            Some(v) => format!("{v:.6}"),
            None => "undefined (all values equal)".to_string(),
        };
        format!(
            "Entropy                         {:.6} bits per byte\n\
             Optimum Compression             {}%\n\
             Chi Square Distribution         {:.2}\n\
             Arithmetic Mean                 {:.4}\n\
             Monte Carlo Value For Pi        {:.5} (error {:.2}%)\n\
             Serial Correlation Coefficient  {}\n\
             Byte Count                      {}\n",
            self.entropy_bits_per_byte,
            self.optimum_compression_pct,
            self.chi_square,
            self.arithmetic_mean,
            self.monte_carlo_pi,
            self.monte_carlo_error_pct,
            scc,
            self.byte_count,
        )
    }
}

fn counts(data: &[u8]) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &b in data {
        counts[b as usize] += 1;
    }
    counts
}

/// Shannon entropy in bits per byte over the 256 byte-value frequencies.
pub fn entropy(data: &[u8]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = data.len() as f64;
    let mut h = 0.0;
    for &count in counts(data).iter() {
        if count > 0 {
            let f = count as f64 / len;
            h -= f * f.log2();
        }
    }
    Ok(h)
}

/// `trunc(100 * (8 - entropy) / 8)` — the whole-percent size reduction an
/// ideal coder would reach. Truncated toward zero, not rounded.
pub fn optimum_compression_pct(entropy: f64) -> Result<u32> {
    if !entropy.is_finite() || !(-1e-9..=8.0 + 1e-9).contains(&entropy) {
        return Err(Error::EntropyOutOfRange(entropy));
    }
    let e = entropy.clamp(0.0, 8.0);
    Ok((100.0 * (8.0 - e) / 8.0) as u32)
}

/// Chi-square statistic of the byte-value histogram against the uniform
/// expectation `len / 256`.
pub fn chi_square(data: &[u8]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    let expected = data.len() as f64 / 256.0;
    let sum = counts(data)
        .iter()
        .map(|&obs| {
            let d = obs as f64 - expected;
            d * d / expected
        })
        .sum();
    Ok(sum)
}

/// Mean byte value.
pub fn arithmetic_mean(data: &[u8]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: u64 = data.iter().map(|&b| u64::from(b)).sum();
    Ok(sum as f64 / data.len() as f64)
}

const MC_COORD_MAX: u64 = (1 << 24) - 1;
const MC_RADIUS_SQ: u64 = MC_COORD_MAX * MC_COORD_MAX;

/// Monte Carlo π: each non-overlapping 6-byte group is a point with
/// 24-bit big-endian coordinates; a point counts as inside when
/// `x² + y² <= (2²⁴ - 1)²`. Returns `(estimate, error_pct)`; the trailing
/// partial group is ignored.
pub fn monte_carlo_pi(data: &[u8]) -> Result<(f64, f64)> {
    if data.len() < 6 {
        return Err(Error::InsufficientData {
            needed: 6,
            got: data.len(),
        });
    }
    let mut inside = 0u64;
    let mut groups = 0u64;
    for chunk in data.chunks_exact(6) {
        let x = u64::from(chunk[0]) << 16 | u64::from(chunk[1]) << 8 | u64::from(chunk[2]);
        let y = u64::from(chunk[3]) << 16 | u64::from(chunk[4]) << 8 | u64::from(chunk[5]);
        if x * x + y * y <= MC_RADIUS_SQ {
            inside += 1;
        }
        groups += 1;
    }
    let estimate = 4.0 * inside as f64 / groups as f64;
    let error_pct = 100.0 * (estimate - PI).abs() / PI;
    Ok((estimate, error_pct))
}

/// Serial correlation of each byte with its circular successor (the last
/// byte pairs with the first). `None` when the denominator is zero.
pub fn serial_correlation(data: &[u8]) -> Result<Option<f64>> {
    if data.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: data.len(),
        });
    }
    let n = data.len();
    let mut sum = 0u64;
    let mut sum_sq = 0u64;
    let mut sum_prod = 0u64;
    for i in 0..n {
        let u = u64::from(data[i]);
        let v = u64::from(data[(i + 1) % n]);
        sum += u;
        sum_sq += u * u;
        sum_prod += u * v;
    }
    let nf = n as f64;
    let sumf = sum as f64;
    let numerator = nf * sum_prod as f64 - sumf * sumf;
    let denominator = nf * sum_sq as f64 - sumf * sumf;
    if denominator == 0.0 {
        Ok(None)
    } else {
        Ok(Some(numerator / denominator))
    }
}

/// Compute all six metrics. Needs at least 6 bytes (one Monte Carlo
/// group).
pub fn analyze(data: &[u8]) -> Result<StatReport> {
    if data.len() < 6 {
        return Err(Error::InsufficientData {
            needed: 6,
            got: data.len(),
        });
    }
    let entropy_bits_per_byte = entropy(data)?;
    let (monte_carlo_pi, monte_carlo_error_pct) = monte_carlo_pi(data)?;
    Ok(StatReport {
        entropy_bits_per_byte,
        optimum_compression_pct: optimum_compression_pct(entropy_bits_per_byte)?,
        chi_square: chi_square(data)?,
        arithmetic_mean: arithmetic_mean(data)?,
        monte_carlo_pi,
        monte_carlo_error_pct,
        serial_correlation: serial_correlation(data)?,
        byte_count: data.len() as u64,
    })
}
