//! Exact dynamic programming for the final-time dependent correlated random
//! walk.
//!
//! `w_L(x)` is the probability of sitting at `x` with the last move to the
//! left. The initial pair is read as the distribution of a fictitious
//! previous move, so the transition matrix already acts on step one.

use std::collections::BTreeMap;

use crate::coin::{make_coin, Coin, FamilySpec};
use crate::error::{Result, WalkError};
use crate::quantum_walk::{lattice_index, ReturnProbability};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalState {
    time: u64,
    // (w_L, w_R) at x = -time + 2j
    weights: Vec<[f64; 2]>,
}

impl ClassicalState {
    pub fn initial(init: [f64; 2]) -> Result<Self> {
        if init.iter().any(|&w| w < 0.0) || (init[0] + init[1] - 1.0).abs() > 1e-12 {
            return Err(WalkError::domain(format!(
                "initial distribution {init:?} must be nonnegative and sum to 1"
            )));
        }
        Ok(ClassicalState { time: 0, weights: vec![init] })
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn weights(&self, position: i64) -> [f64; 2] {
        lattice_index(self.time, position)
            .and_then(|j| self.weights.get(j).copied())
            .unwrap_or([0.0, 0.0])
    }

    pub fn probability_at(&self, position: i64) -> f64 {
        let [l, r] = self.weights(position);
        l + r
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, [f64; 2])> + '_ {
        let k = self.time as i64;
        self.weights.iter().enumerate().map(move |(j, w)| (-k + 2 * j as i64, *w))
    }

    pub fn distribution(&self) -> BTreeMap<i64, f64> {
        self.iter().map(|(x, [l, r])| (x, l + r)).collect()
    }

    pub fn total_probability(&self) -> f64 {
        self.weights.iter().map(|[l, r]| l + r).sum()
    }

    fn step(&mut self, (a, b, c, d): (f64, f64, f64, f64)) {
        let mut next = vec![[0.0, 0.0]; self.weights.len() + 1];
        for (j, &[l, r]) in self.weights.iter().enumerate() {
            next[j][0] += a * l + b * r;
            next[j + 1][1] += c * l + d * r;
        }
        self.weights = next;
        self.time += 1;
    }
}

pub const SYMMETRIC_START: [f64; 2] = [0.5, 0.5];

pub fn evolve_classical(coin: &Coin, init: [f64; 2], steps: u64) -> Result<ClassicalState> {
    let entries = coin.probabilities()?;
    let mut state = ClassicalState::initial(init)?;
    for _ in 0..steps {
        state.step(entries);
    }
    Ok(state)
}

/// Probability of being at the origin after each of `0..=max_steps` steps.
pub fn classical_return_probabilities_along(
    coin: &Coin,
    init: [f64; 2],
    max_steps: u64,
) -> Result<Vec<f64>> {
    let entries = coin.probabilities()?;
    let mut state = ClassicalState::initial(init)?;
    let mut out = Vec::with_capacity(max_steps as usize + 1);
    out.push(state.probability_at(0));
    for _ in 0..max_steps {
        state.step(entries);
        out.push(state.probability_at(0));
    }
    Ok(out)
}

/// `p_n(0)` for a classical family started from `(1/2, 1/2)`.
pub fn return_probability_classical(spec: &FamilySpec) -> Result<f64> {
    Ok(return_statistics_classical(spec)?.at_origin)
}

pub fn return_statistics_classical(spec: &FamilySpec) -> Result<ReturnProbability> {
    if spec.family().is_quantum() {
        return Err(WalkError::domain(format!("{} is not a classical family", spec.family())));
    }
    let coin = make_coin(spec)?;
    let n = spec.final_time();
    if n % 2 == 1 {
        return Ok(ReturnProbability { at_origin: 0.0, away: 1.0 });
    }
    let state = evolve_classical(&coin, SYMMETRIC_START, n)?;
    let away = state.iter().filter(|&(x, _)| x != 0).map(|(_, [l, r])| l + r).sum();
    Ok(ReturnProbability { at_origin: state.probability_at(0), away })
}
