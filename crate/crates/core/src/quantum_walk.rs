//! Exact evolution of the final-time dependent quantum walk.
//!
//! Every step uses the same coin, split into `P` (move left) and `Q` (move
//! right). A state at time `k` lives on `{-k, -k+2, ..., k}`, stored densely
//! by lattice index `j` with position `x = -k + 2j`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coin::{make_coin, split, Coin, CoinKind, FamilySpec, Mat2};
use crate::error::{Result, WalkError};

/// Largest step count [`path_sum_bruteforce`] will enumerate.
pub const MAX_BRUTEFORCE_STEPS: u64 = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialQubit {
    left: Complex64,
    right: Complex64,
}

impl InitialQubit {
    pub fn new(left: Complex64, right: Complex64) -> Result<Self> {
        let norm = left.norm_sqr() + right.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(WalkError::domain(format!("initial qubit has norm^2 {norm}, expected 1")));
        }
        Ok(InitialQubit { left, right })
    }

    pub fn left(&self) -> Complex64 {
        self.left
    }

    pub fn right(&self) -> Complex64 {
        self.right
    }
}

impl Default for InitialQubit {
    /// `(1/sqrt 2, i/sqrt 2)`, which makes the distribution symmetric for
    /// real coins.
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        InitialQubit { left: Complex64::new(h, 0.0), right: Complex64::new(0.0, h) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    time: u64,
    // (left, right) chirality amplitudes at x = -time + 2j
    amplitudes: Vec<[Complex64; 2]>,
}

impl QuantumState {
    pub fn initial(init: InitialQubit) -> Self {
        QuantumState { time: 0, amplitudes: vec![[init.left, init.right]] }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Amplitude pair at `position`, zero off the support.
    pub fn amplitude(&self, position: i64) -> [Complex64; 2] {
        lattice_index(self.time, position)
            .and_then(|j| self.amplitudes.get(j).copied())
            .unwrap_or([ZERO, ZERO])
    }

    pub fn probability_at(&self, position: i64) -> f64 {
        let [l, r] = self.amplitude(position);
        l.norm_sqr() + r.norm_sqr()
    }

    /// `(position, [psi_L, psi_R])` over the support, in increasing position.
    pub fn iter(&self) -> impl Iterator<Item = (i64, [Complex64; 2])> + '_ {
        let k = self.time as i64;
        self.amplitudes.iter().enumerate().map(move |(j, amp)| (-k + 2 * j as i64, *amp))
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|[l, r]| l.norm_sqr() + r.norm_sqr()).sum()
    }

    /// Advances one step with the left/right parts of a unitary coin.
    fn step(&mut self, p: &Mat2, q: &Mat2) {
        let (a, b) = (p[0][0], p[0][1]);
        let (c, d) = (q[1][0], q[1][1]);
        let mut next = vec![[ZERO, ZERO]; self.amplitudes.len() + 1];
        for (j, &[l, r]) in self.amplitudes.iter().enumerate() {
            next[j][0] += a * l + b * r;
            next[j + 1][1] += c * l + d * r;
        }
        self.amplitudes = next;
        self.time += 1;
    }
}

pub(crate) fn lattice_index(time: u64, position: i64) -> Option<usize> {
    let k = time as i64;
    let offset = position + k;
    if position.abs() > k || offset % 2 != 0 {
        None
    } else {
        Some((offset / 2) as usize)
    }
}

/// Runs `steps` steps of the walk driven by `coin` from `init` at the origin.
pub fn evolve(coin: &Coin, init: InitialQubit, steps: u64) -> Result<QuantumState> {
    coin.expect_kind(CoinKind::Unitary)?;
    let (p, q) = split(coin);
    let mut state = QuantumState::initial(init);
    for _ in 0..steps {
        state.step(&p, &q);
    }
    Ok(state)
}

/// Position distribution `x -> |psi_L(x)|^2 + |psi_R(x)|^2` over the support.
pub fn distribution(state: &QuantumState) -> BTreeMap<i64, f64> {
    state.iter().map(|(x, [l, r])| (x, l.norm_sqr() + r.norm_sqr())).collect()
}

/// Probability of being at the origin after each of `0..=max_steps` steps of
/// a fixed coin (zero at odd steps).
pub fn return_probabilities_along(
    coin: &Coin,
    init: InitialQubit,
    max_steps: u64,
) -> Result<Vec<f64>> {
    coin.expect_kind(CoinKind::Unitary)?;
    let (p, q) = split(coin);
    let mut state = QuantumState::initial(init);
    let mut out = Vec::with_capacity(max_steps as usize + 1);
    out.push(state.probability_at(0));
    for _ in 0..max_steps {
        state.step(&p, &q);
        out.push(state.probability_at(0));
    }
    Ok(out)
}

/// Return probability at the origin together with its complement, the latter
/// summed directly over `x != 0` so it stays accurate when `p` is close to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnProbability {
    pub at_origin: f64,
    pub away: f64,
}

/// `p_n(0)` for a quantum family: the coin is built from the final time `n`
/// and used for all `n` steps, starting from the default qubit.
pub fn return_probability_exact(spec: &FamilySpec) -> Result<f64> {
    Ok(return_statistics_exact(spec)?.at_origin)
}

pub fn return_statistics_exact(spec: &FamilySpec) -> Result<ReturnProbability> {
    if !spec.family().is_quantum() {
        return Err(WalkError::domain(format!("{} is not a quantum family", spec.family())));
    }
    let coin = make_coin(spec)?;
    let n = spec.final_time();
    if n % 2 == 1 {
        return Ok(ReturnProbability { at_origin: 0.0, away: 1.0 });
    }
    let state = evolve(&coin, InitialQubit::default(), n)?;
    let at_origin = state.probability_at(0);
    let away = state
        .iter()
        .filter(|&(x, _)| x != 0)
        .map(|(_, [l, r])| l.norm_sqr() + r.norm_sqr())
        .sum();
    Ok(ReturnProbability { at_origin, away })
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// `|| Xi_k(l, m) init ||^2` by summing the matrix product of every word of
/// `l` left and `m` right moves, where `x = m - l` and `k = l + m`.
pub fn path_sum_bruteforce(coin: &Coin, init: InitialQubit, steps: u64, position: i64) -> Result<f64> {
    if steps > MAX_BRUTEFORCE_STEPS {
        return Err(WalkError::Size { steps, max: MAX_BRUTEFORCE_STEPS });
    }
    if (position + steps as i64).rem_euclid(2) != 0 {
        return Err(WalkError::Parity(format!(
            "position {position} unreachable in {steps} steps"
        )));
    }
    if position.unsigned_abs() > steps {
        return Ok(0.0);
    }
    let lefts = ((steps as i64 - position) / 2) as u32;
    let (p, q) = split(coin);
    let identity = [[Complex64::new(1.0, 0.0), ZERO], [ZERO, Complex64::new(1.0, 0.0)]];

    let mut xi = [[ZERO; 2]; 2];
    for word in 0u32..(1u32 << steps) {
        if word.count_ones() != lefts {
            continue;
        }
        // bit i set: step i + 1 moves left; later steps multiply on the left
        let mut product = identity;
        for i in 0..steps {
            let factor = if word >> i & 1 == 1 { &p } else { &q };
            product = mat_mul(factor, &product);
        }
        for (row, prow) in xi.iter_mut().zip(product.iter()) {
            for (e, pe) in row.iter_mut().zip(prow.iter()) {
                *e += pe;
            }
        }
    }
    let out_l = xi[0][0] * init.left + xi[0][1] * init.right;
    let out_r = xi[1][0] * init.left + xi[1][1] * init.right;
    Ok(out_l.norm_sqr() + out_r.norm_sqr())
}
