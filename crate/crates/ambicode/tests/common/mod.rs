//! Shared fixtures: random generators and a brute-force entropy oracle
//! kept deliberately independent of the production code path.

#![allow(dead_code)]

use ambicode::code::{Alphabet, DeterministicCode, Prior};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn and_gate() -> DeterministicCode {
    DeterministicCode::new(
        Alphabet::new(["00", "01", "10", "11"]).unwrap(),
        Alphabet::new(["0", "1"]).unwrap(),
        vec![0, 0, 0, 1],
    )
    .unwrap()
}

pub fn random_code(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DeterministicCode {
    let assignment = (0..n).map(|_| rng.gen_range(0..m)).collect();
    DeterministicCode::new(
        Alphabet::numbered_referents(n).unwrap(),
        Alphabet::numbered_signals(m).unwrap(),
        assignment,
    )
    .unwrap()
}

/// Random prior with every mass at least `floor / n`, so support questions
/// never hinge on astronomically small probabilities.
pub fn random_full_support_prior(rng: &mut ChaCha8Rng, n: usize) -> Prior {
    let mut weights: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.01).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    fix_sum(&mut weights);
    Prior::new(weights).unwrap()
}

/// Random prior that zeroes each entry with probability 1/4 (keeping at
/// least one alive), exercising the zero-mass conventions.
pub fn random_sparse_prior(rng: &mut ChaCha8Rng, n: usize) -> Prior {
    let mut weights: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen::<f64>() < 0.25 {
                0.0
            } else {
                rng.gen::<f64>() + 0.01
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0.0) {
        weights[rng.gen_range(0..n)] = 1.0;
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    fix_sum(&mut weights);
    Prior::new(weights).unwrap()
}

/// Nudges the largest entry so the vector sums to 1 within strict
/// validation tolerance.
fn fix_sum(weights: &mut [f64]) {
    let total: f64 = weights.iter().sum();
    let largest = weights
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    weights[largest] += 1.0 - total;
}

/// Entropies of a joint table computed the slow, literal way: plain
/// uncompensated sums, different iteration orders, and the definitional
/// formulas rather than the identities the production code uses.
pub struct OracleEntropies {
    pub h_row: f64,
    pub h_col: f64,
    pub h_joint: f64,
    pub h_row_given_col: f64,
    pub h_col_given_row: f64,
    pub mutual_information: f64,
}

pub fn oracle_entropies(table: &[Vec<f64>]) -> OracleEntropies {
    let rows = table.len();
    let cols = table[0].len();

    let mut row_marginal = vec![0.0; rows];
    let mut col_marginal = vec![0.0; cols];
    // Column-major accumulation, unlike the production row-major path.
    for k in 0..cols {
        for i in 0..rows {
            row_marginal[i] += table[i][k];
            col_marginal[k] += table[i][k];
        }
    }

    let plogp = |p: f64| if p > 0.0 { p * p.log2() } else { 0.0 };

    // Marginal entropies summed in reverse index order.
    let h_row = -row_marginal.iter().rev().map(|&p| plogp(p)).sum::<f64>();
    let h_col = -col_marginal.iter().rev().map(|&p| plogp(p)).sum::<f64>();

    let mut h_joint = 0.0;
    for k in 0..cols {
        for i in 0..rows {
            h_joint -= plogp(table[i][k]);
        }
    }

    // Literal nested conditional-entropy sums.
    let mut h_row_given_col = 0.0;
    for k in 0..cols {
        let q = col_marginal[k];
        if q > 0.0 {
            let mut inner = 0.0;
            for i in 0..rows {
                let conditional = table[i][k] / q;
                inner -= plogp(conditional);
            }
            h_row_given_col += q * inner;
        }
    }
    let mut h_col_given_row = 0.0;
    for i in 0..rows {
        let p = row_marginal[i];
        if p > 0.0 {
            let mut inner = 0.0;
            for k in 0..cols {
                let conditional = table[i][k] / p;
                inner -= plogp(conditional);
            }
            h_col_given_row += p * inner;
        }
    }

    // Mutual information straight from the definition.
    let mut mutual_information = 0.0;
    for i in 0..rows {
        for k in 0..cols {
            let p = table[i][k];
            if p > 0.0 {
                mutual_information += p * (p / (row_marginal[i] * col_marginal[k])).log2();
            }
        }
    }

    OracleEntropies {
        h_row,
        h_col,
        h_joint,
        h_row_given_col,
        h_col_given_row,
        mutual_information,
    }
}
