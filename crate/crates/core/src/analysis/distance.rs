//! Distances from a shuffle distribution to the uniform distribution on
//! `S_n`, computed class by class from the statistic count tables.
//!
//! Riffle models use the same tables: their class of `π` is the shelf
//! class of `π⁻¹` and inversion preserves class sizes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::model::{exact_distribution, ExactDist, Model, ShuffleSpec};
use crate::numeric::{factorial, round_half_even, to_f64};

/// Shelf counts of the standard 52-card total variation table.
pub const TABLE_M_VALUES: [u64; 12] = [10, 15, 20, 25, 30, 35, 50, 100, 150, 200, 250, 300];

fn uniform(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

fn tv_of(dist: &ExactDist) -> BigRational {
    let u = uniform(dist.spec.n);
    let sum: BigRational = dist
        .classes
        .iter()
        .map(|c| BigRational::from_integer(c.count.clone()) * (&c.prob - &u).abs())
        .sum();
    sum / BigRational::from_integer(BigInt::from(2))
}

/// `½ Σ_k |class k| · |x(k) - 1/n!|`.
pub fn tv_distance(spec: &ShuffleSpec) -> BigRational {
    tv_of(&exact_distribution(spec))
}

/// `n!·x(k)` for the classes that exist.
fn scaled_probs<'a>(dist: &'a ExactDist, ks: impl IntoIterator<Item = usize> + 'a) -> impl Iterator<Item = BigRational> + 'a {
    let nf = BigRational::from_integer(factorial(dist.spec.n));
    ks.into_iter()
        .filter_map(move |k| dist.class(k).map(|c| &c.prob * &nf))
}

fn extremes(dist: &ExactDist) -> Vec<usize> {
    let kmax = dist.statistic.max_value(dist.spec.n);
    if kmax == 0 { vec![0] } else { vec![0, kmax] }
}

fn sep_over(dist: &ExactDist, ks: Vec<usize>) -> BigRational {
    scaled_probs(dist, ks)
        .map(|s| BigRational::one() - s)
        .max()
        .unwrap_or_else(BigRational::zero)
}

fn linf_over(dist: &ExactDist, ks: Vec<usize>) -> BigRational {
    scaled_probs(dist, ks)
        .map(|s| (BigRational::one() - s).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `max_π (1 - n!·P(π))`, read from the `k = 0` and `k = k_max` classes,
/// where the extremes of a monotone class probability sit.
pub fn sep_distance(spec: &ShuffleSpec) -> BigRational {
    let dist = exact_distribution(spec);
    sep_over(&dist, extremes(&dist))
}

/// `max_π |1 - n!·P(π)|` from the extreme classes.
pub fn linf_distance(spec: &ShuffleSpec) -> BigRational {
    let dist = exact_distribution(spec);
    linf_over(&dist, extremes(&dist))
}

/// [`sep_distance`] maximized over every class.
pub fn sep_distance_full(spec: &ShuffleSpec) -> BigRational {
    let dist = exact_distribution(spec);
    sep_over(&dist, (0..dist.classes.len()).collect())
}

/// [`linf_distance`] maximized over every class.
pub fn linf_distance_full(spec: &ShuffleSpec) -> BigRational {
    let dist = exact_distribution(spec);
    linf_over(&dist, (0..dist.classes.len()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TvCell {
    pub model: Model,
    pub n: usize,
    pub m: u64,
    #[serde(serialize_with = "ser_rational")]
    pub tv: BigRational,
}

impl TvCell {
    pub fn rounded(&self, decimals: usize) -> String {
        round_half_even(&self.tv, decimals)
    }
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Total variation for every `(model, m)` pair, row-major in `models`.
pub fn tv_table(n: usize, ms: &[u64], models: &[Model]) -> Result<Vec<TvCell>> {
    let mut out = Vec::with_capacity(ms.len() * models.len());
    for &model in models {
        for &m in ms {
            let spec = ShuffleSpec::new(n, m, model)?;
            out.push(TvCell {
                model,
                n,
                m,
                tv: tv_distance(&spec),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub n: usize,
    pub c: f64,
    pub m: u64,
    pub tv: f64,
    pub sep: f64,
    pub linf: f64,
    /// `e^{1/(12c²)} - 1`.
    pub linf_limit: f64,
    /// `1 - e^{-1/(24c²)}`.
    pub sep_limit: f64,
    /// `tv <= sep <= linf`, checked exactly.
    pub ordered: bool,
}

/// Exact lazy-shelf distances at `m = round(c·n^{3/2})`, next to the
/// limiting values for `n → ∞`.
pub fn asymptotic_compare(n: usize, c: f64) -> Result<AsymptoticReport> {
    let m = (c * (n as f64).powf(1.5)).round().max(1.0) as u64;
    let spec = ShuffleSpec::new(n, m, Model::ShelfLazy)?;
    let dist = exact_distribution(&spec);
    let tv = tv_of(&dist);
    let sep = sep_over(&dist, extremes(&dist));
    let linf = linf_over(&dist, extremes(&dist));
    Ok(AsymptoticReport {
        n,
        c,
        m,
        tv: to_f64(&tv),
        sep: to_f64(&sep),
        linf: to_f64(&linf),
        linf_limit: (1.0 / (12.0 * c * c)).exp() - 1.0,
        sep_limit: 1.0 - (-1.0 / (24.0 * c * c)).exp(),
        ordered: tv <= sep && sep <= linf,
    })
}
