use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use shuffle_lab::model::{exact_prob, simulate};
use shuffle_lab::numeric::to_f64;
use shuffle_lab::perm::all_permutations;
use shuffle_lab::{Permutation, ShuffleSpec};

pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Observations that fell on a permutation of probability zero.
    pub impossible: u64,
}

/// Pearson test of observed counts against exact probabilities. Cells with
/// expected count below 5 are pooled into one cell; zero-probability cells
/// are excluded and any hit on them is reported separately.
pub fn chi_square(observed: &[u64], probs: &[f64], total: u64) -> ChiSquare {
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut pool_e, mut pool_o, mut impossible) = (0.0, 0.0, 0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * total as f64;
        if p == 0.0 {
            impossible += o;
        } else if e < 5.0 {
            pool_e += e;
            pool_o += o as f64;
        } else {
            cells.push((o as f64, e));
        }
    }
    if pool_e > 0.0 {
        cells.push((pool_o, pool_e));
    }
    let statistic: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = cells.len().saturating_sub(1);
    let p_value = if impossible > 0 {
        0.0
    } else if df == 0 {
        1.0
    } else {
        ChiSquared::new(df as f64).unwrap().sf(statistic)
    };
    ChiSquare {
        statistic,
        df,
        p_value,
        impossible,
    }
}

/// Chi-square of `samples` seeded shuffles against the exact law.
pub fn sampler_chi_square(
    spec: &ShuffleSpec,
    samples: u64,
    seed: u64,
    sampler: impl Fn(&ShuffleSpec, &mut ChaCha8Rng) -> Permutation,
) -> ChiSquare {
    let perms: Vec<Permutation> = all_permutations(spec.n).collect();
    let probs: Vec<f64> = perms
        .iter()
        .map(|p| {
            let x = exact_prob(p, spec).unwrap();
            if x.is_zero() { 0.0 } else { to_f64(&x) }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; perms.len()];
    for _ in 0..samples {
        counts[sampler(spec, &mut rng).lex_rank()] += 1;
    }
    chi_square(&counts, &probs, samples)
}

pub fn default_sampler(spec: &ShuffleSpec, rng: &mut ChaCha8Rng) -> Permutation {
    simulate(spec, rng).unwrap().1
}
