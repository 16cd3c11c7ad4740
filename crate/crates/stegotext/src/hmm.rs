//! Hidden Markov models with forward probability and Viterbi decoding.
//!
//! Probabilities are linear-space f64 by default, which keeps short-example
//! values exactly comparable against hand computation; `*_log10` variants
//! run the same dynamic programs in log space for observation sequences
//! long enough to underflow (rule of thumb: more than ~100 observations).
//!
//! The Viterbi path convention here has `|obs| + 1` states: the first
//! `|obs|` are the usual maximum-joint path, and the appended final state
//! is the most likely next state after the last emission. Drop the last
//! element to recover the conventional path. Ties are broken toward the
//! earliest state in the model's declared state order.

use std::collections::HashMap;
use std::path::Path;

use crate::{Error, Result};

/// Guard for [`enumerate_paths_oracle`]: maximum number of state paths.
pub const ORACLE_PATH_LIMIT: u64 = 1_000_000;

/// Sum tolerance for start/transition/emission rows.
const SUM_TOLERANCE: f64 = 1e-9;

/// A validated hidden Markov model: immutable after construction.
#[derive(Debug, Clone)]
pub struct HmmModel {
    states: Vec<String>,
    observations: Vec<String>,
    start: Vec<f64>,
    trans: Vec<Vec<f64>>,
    emit: Vec<Vec<f64>>,
    obs_index: HashMap<String, usize>,
}

/// Result of [`HmmModel::viterbi`]: the `|obs| + 1`-state path and the
/// joint probability of its first `|obs|` states.
#[derive(Debug, Clone, PartialEq)]
pub struct ViterbiPath {
    pub states: Vec<String>,
    pub probability: f64,
}

/// Result of [`enumerate_paths_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub total_probability: f64,
    pub best_path: Vec<String>,
    pub best_probability: f64,
}

impl HmmModel {
    /// Validate and build a model. Rows are indexed like the argument
    /// order: `trans[from][to]`, `emit[state][observation]`.
    pub fn new(
        states: Vec<String>,
        observations: Vec<String>,
        start: Vec<f64>,
        trans: Vec<Vec<f64>>,
        emit: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidModel("no states".to_string()));
        }
        if observations.is_empty() {
            return Err(Error::InvalidModel("no observations".to_string()));
        }
        let s = states.len();
        let o = observations.len();
        let mut seen = HashMap::new();
        for (i, name) in states.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("duplicate state `{name}`")));
            }
        }
        let mut obs_index = HashMap::new();
        for (i, name) in observations.iter().enumerate() {
            if obs_index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!(
                    "duplicate observation `{name}`"
                )));
            }
        }
        if start.len() != s || trans.len() != s || emit.len() != s {
            return Err(Error::InvalidModel(
                "probability tables do not match the state count".to_string(),
            ));
        }
        check_row("start", &start)?;
        for (i, row) in trans.iter().enumerate() {
            if row.len() != s {
                return Err(Error::InvalidModel(format!(
                    "transition row for `{}` has {} entries, expected {s}",
                    states[i],
                    row.len()
                )));
            }
            check_row(&format!("transitions from `{}`", states[i]), row)?;
        }
        for (i, row) in emit.iter().enumerate() {
            if row.len() != o {
                return Err(Error::InvalidModel(format!(
                    "emission row for `{}` has {} entries, expected {o}",
                    states[i],
                    row.len()
                )));
            }
            check_row(&format!("emissions from `{}`", states[i]), row)?;
        }
        Ok(Self {
            states,
            observations,
            start,
            trans,
            emit,
            obs_index,
        })
    }

    /// Parse the model file format: `states:` and `observations:` headers,
    /// then `start: s p`, `trans: s s' p`, and `emit: s o p` entries.
    /// Missing entries default to probability 0.
    pub fn from_str_named(text: &str, path: &str) -> Result<Self> {
        let mut states: Vec<String> = Vec::new();
        let mut observations: Vec<String> = Vec::new();
        let mut start: Vec<f64> = Vec::new();
        let mut trans: Vec<Vec<f64>> = Vec::new();
        let mut emit: Vec<Vec<f64>> = Vec::new();
        let mut state_index: HashMap<String, usize> = HashMap::new();
        let mut obs_index: HashMap<String, usize> = HashMap::new();

        let parse_err = |line: usize, message: String| Error::Parse {
            path: path.to_string(),
            line,
            message,
        };

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(lineno, format!("expected `key: ...`, got `{line}`")))?;
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "states" => {
                    if !states.is_empty() {
                        return Err(parse_err(lineno, "duplicate `states:` line".to_string()));
                    }
                    states = fields.iter().map(|s| s.to_string()).collect();
                    for (i, s) in states.iter().enumerate() {
                        if state_index.insert(s.clone(), i).is_some() {
                            return Err(parse_err(lineno, format!("duplicate state `{s}`")));
                        }
                    }
                    start = vec![0.0; states.len()];
                    trans = vec![vec![0.0; states.len()]; states.len()];
                    emit = vec![vec![0.0; observations.len()]; states.len()];
                }
                "observations" => {
                    if !observations.is_empty() {
                        return Err(parse_err(
                            lineno,
                            "duplicate `observations:` line".to_string(),
                        ));
                    }
                    observations = fields.iter().map(|s| s.to_string()).collect();
                    for (i, o) in observations.iter().enumerate() {
                        if obs_index.insert(o.clone(), i).is_some() {
                            return Err(parse_err(lineno, format!("duplicate observation `{o}`")));
                        }
                    }
                    emit = vec![vec![0.0; observations.len()]; states.len()];
                }
                "start" => {
                    let [s, p] = fields[..] else {
                        return Err(parse_err(lineno, "expected `start: state p`".to_string()));
                    };
                    let i = *state_index
                        .get(s)
                        .ok_or_else(|| parse_err(lineno, format!("unknown state `{s}`")))?;
                    start[i] = parse_prob(p).map_err(|m| parse_err(lineno, m))?;
                }
                "trans" => {
                    let [from, to, p] = fields[..] else {
                        return Err(parse_err(
                            lineno,
                            "expected `trans: from to p`".to_string(),
                        ));
                    };
                    let i = *state_index
                        .get(from)
                        .ok_or_else(|| parse_err(lineno, format!("unknown state `{from}`")))?;
                    let j = *state_index
                        .get(to)
                        .ok_or_else(|| parse_err(lineno, format!("unknown state `{to}`")))?;
                    trans[i][j] = parse_prob(p).map_err(|m| parse_err(lineno, m))?;
                }
                "emit" => {
                    let [s, o, p] = fields[..] else {
                        return Err(parse_err(
                            lineno,
                            "expected `emit: state observation p`".to_string(),
                        ));
                    };
                    let i = *state_index
                        .get(s)
                        .ok_or_else(|| parse_err(lineno, format!("unknown state `{s}`")))?;
                    let j = *obs_index
                        .get(o)
                        .ok_or_else(|| parse_err(lineno, format!("unknown observation `{o}`")))?;
                    emit[i][j] = parse_prob(p).map_err(|m| parse_err(lineno, m))?;
                }
                other => {
                    return Err(parse_err(lineno, format!("unknown key `{other}`")));
                }
            }
        }
        Self::new(states, observations, start, trans, emit).map_err(|e| Error::Parse {
            path: path.to_string(),
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_str_named(&text, &path.display().to_string())
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn observations(&self) -> &[String] {
        &self.observations
    }

    pub fn has_observation(&self, label: &str) -> bool {
        self.obs_index.contains_key(label)
    }

    fn obs_indices<S: AsRef<str>>(&self, obs: &[S]) -> Result<Vec<usize>> {
        if obs.is_empty() {
            return Err(Error::EmptyObservations);
        }
        obs.iter()
            .map(|o| {
                self.obs_index
                    .get(o.as_ref())
                    .copied()
                    .ok_or_else(|| Error::InvalidObservation(o.as_ref().to_string()))
            })
            .collect()
    }

    /// `P(obs | model)` summed over all state paths, by the forward
    /// dynamic program.
    pub fn forward_probability<S: AsRef<str>>(&self, obs: &[S]) -> Result<f64> {
        let obs = self.obs_indices(obs)?;
        let s = self.states.len();
        let mut alpha: Vec<f64> = (0..s)
            .map(|j| self.start[j] * self.emit[j][obs[0]])
            .collect();
        let mut next = vec![0.0; s];
        for &o in &obs[1..] {
            for (j, slot) in next.iter_mut().enumerate() {
                let sum: f64 = alpha
                    .iter()
                    .zip(&self.trans)
                    .map(|(a, row)| a * row[j])
                    .sum();
                *slot = sum * self.emit[j][o];
            }
            std::mem::swap(&mut alpha, &mut next);
        }
        Ok(alpha.iter().sum())
    }

    /// `log10 P(obs | model)` via the forward recursion in log space
    /// (log-sum-exp per step); use for sequences long enough to underflow.
    pub fn forward_log10<S: AsRef<str>>(&self, obs: &[S]) -> Result<f64> {
        let obs = self.obs_indices(obs)?;
        let s = self.states.len();
        let log = |p: f64| if p > 0.0 { p.log10() } else { f64::NEG_INFINITY };
        let mut alpha: Vec<f64> = (0..s)
            .map(|j| log(self.start[j]) + log(self.emit[j][obs[0]]))
            .collect();
        let mut next = vec![0.0; s];
        for &o in &obs[1..] {
            for (j, slot) in next.iter_mut().enumerate() {
                let terms: Vec<f64> = (0..s)
                    .map(|i| alpha[i] + log(self.trans[i][j]))
                    .collect();
                *slot = log_sum_exp10(&terms) + log(self.emit[j][o]);
            }
            std::mem::swap(&mut alpha, &mut next);
        }
        Ok(log_sum_exp10(&alpha))
    }

    /// Maximum-joint-probability state path for `obs`, with the final
    /// extra state appended (see module docs).
    pub fn viterbi<S: AsRef<str>>(&self, obs: &[S]) -> Result<ViterbiPath> {
        let obs = self.obs_indices(obs)?;
        let (indices, probability) = self.viterbi_indices(&obs, false);
        Ok(ViterbiPath {
            states: indices.iter().map(|&i| self.states[i].clone()).collect(),
            probability,
        })
    }

    /// Log-space Viterbi: same path convention, probability reported as
    /// `log10` of the path's joint probability.
    pub fn viterbi_log10<S: AsRef<str>>(&self, obs: &[S]) -> Result<ViterbiPath> {
        let obs = self.obs_indices(obs)?;
        let (indices, log_prob) = self.viterbi_indices(&obs, true);
        Ok(ViterbiPath {
            states: indices.iter().map(|&i| self.states[i].clone()).collect(),
            probability: log_prob,
        })
    }

    fn viterbi_indices(&self, obs: &[usize], log_space: bool) -> (Vec<usize>, f64) {
        let s = self.states.len();
        let t_len = obs.len();
        let log = |p: f64| if p > 0.0 { p.log10() } else { f64::NEG_INFINITY };
        let value = |p: f64| if log_space { log(p) } else { p };
        let combine = |a: f64, b: f64| if log_space { a + b } else { a * b };

        let mut best: Vec<f64> = (0..s)
            .map(|j| combine(value(self.start[j]), value(self.emit[j][obs[0]])))
            .collect();
        let mut backptr = vec![vec![0usize; s]; t_len];
        let mut next = vec![0.0; s];
        for (t, &o) in obs.iter().enumerate().skip(1) {
            for j in 0..s {
                let mut arg = 0usize;
                let mut top = combine(best[0], value(self.trans[0][j]));
                for (i, &b) in best.iter().enumerate().skip(1) {
                    let cand = combine(b, value(self.trans[i][j]));
                    if cand > top {
                        top = cand;
                        arg = i;
                    }
                }
                backptr[t][j] = arg;
                next[j] = combine(top, value(self.emit[j][o]));
            }
            std::mem::swap(&mut best, &mut next);
        }

        let mut last = 0usize;
        for j in 1..s {
            if best[j] > best[last] {
                last = j;
            }
        }
        let probability = best[last];

        let mut path = vec![0usize; t_len + 1];
        path[t_len - 1] = last;
        for t in (1..t_len).rev() {
            path[t - 1] = backptr[t][path[t]];
        }
        // the state most likely to follow the final emission
        let mut follow = 0usize;
        for j in 1..s {
            if self.trans[last][j] > self.trans[last][follow] {
                follow = j;
            }
        }
        path[t_len] = follow;
        (path, probability)
    }
}

fn check_row(what: &str, row: &[f64]) -> Result<()> {
    for &p in row {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidModel(format!(
                "{what}: probability {p} outside [0, 1]"
            )));
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidModel(format!(
            "{what}: probabilities sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

fn parse_prob(token: &str) -> std::result::Result<f64, String> {
    token
        .parse::<f64>()
        .map_err(|_| format!("invalid probability `{token}`"))
}

fn log_sum_exp10(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| 10f64.powf(t - m)).sum();
    m + sum.log10()
}

/// Exhaustively enumerate all `|states|^|obs|` state sequences: the total
/// joint probability and the best sequence under the same tie-break as
/// [`HmmModel::viterbi`]. Testing oracle — refuses instances above
/// [`ORACLE_PATH_LIMIT`].
pub fn enumerate_paths_oracle<S: AsRef<str>>(
    model: &HmmModel,
    obs: &[S],
) -> Result<OracleOutcome> {
    let obs = model.obs_indices(obs)?;
    let s = model.states.len() as u64;
    let count = match s.checked_pow(obs.len() as u32) {
        Some(c) if c <= ORACLE_PATH_LIMIT => c,
        Some(c) => return Err(Error::OracleTooLarge(c)),
        None => return Err(Error::OracleTooLarge(u64::MAX)),
    };

    let mut total = 0.0f64;
    let mut best_prob = f64::NEG_INFINITY;
    let mut best_path: Vec<usize> = Vec::new();
    let mut path = vec![0usize; obs.len()];
    // colexicographic enumeration: the first-visited maximum matches the
    // dynamic program's earliest-state tie-break
    for k in 0..count {
        let mut rem = k;
        for slot in path.iter_mut() {
            *slot = (rem % s) as usize;
            rem /= s;
        }
        let mut joint = model.start[path[0]] * model.emit[path[0]][obs[0]];
        for t in 1..obs.len() {
            joint *= model.trans[path[t - 1]][path[t]] * model.emit[path[t]][obs[t]];
        }
        total += joint;
        if joint > best_prob {
            best_prob = joint;
            best_path = path.clone();
        }
    }
    Ok(OracleOutcome {
        total_probability: total,
        best_path: best_path
            .iter()
            .map(|&i| model.states[i].clone())
            .collect(),
        best_probability: best_prob,
    })
}
