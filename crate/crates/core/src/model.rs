//! The six shuffle models: samplers, exact permutation probabilities, the
//! compact exact distribution, and repeated-shuffle convolution.
//!
//! A shelf shuffle in mode `M` produces deck order `π` with probability
//! `Ω_π(m) / base^n`; the matching riffle shuffle produces `π` with the
//! shelf probability of `π⁻¹`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::count_table;
use crate::error::{Error, Result};
use crate::numeric::{pow, to_f64};
use crate::orderpoly::{chain_count, combined_parameter, EXHAUSTIVE_CAP};
use crate::perm::{all_permutations, Permutation, Statistic};
use crate::ppartition::{
    sorting_permutation, BarredInt, Mode, PPartition, RiffleVariant, ShuffleOutcome, WeakComposition,
};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    ShelfLazy,
    ShelfStandard,
    ShelfStrict,
    RiffleUpdown,
    RiffleDownup,
    RiffleClassic,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::ShelfLazy,
        Model::ShelfStandard,
        Model::ShelfStrict,
        Model::RiffleUpdown,
        Model::RiffleDownup,
        Model::RiffleClassic,
    ];

    pub const SHELF: [Model; 3] = [Model::ShelfLazy, Model::ShelfStandard, Model::ShelfStrict];

    pub fn mode(self) -> Mode {
        match self {
            Model::ShelfLazy | Model::RiffleUpdown => Mode::All,
            Model::ShelfStandard | Model::RiffleDownup => Mode::Nonzero,
            Model::ShelfStrict | Model::RiffleClassic => Mode::Positive,
        }
    }

    pub fn statistic(self) -> Statistic {
        self.mode().statistic()
    }

    pub fn riffle_variant(self) -> Option<RiffleVariant> {
        match self {
            Model::RiffleUpdown => Some(RiffleVariant::UpDown),
            Model::RiffleDownup => Some(RiffleVariant::DownUp),
            Model::RiffleClassic => Some(RiffleVariant::Classic),
            _ => None,
        }
    }

    pub fn is_riffle(self) -> bool {
        self.riffle_variant().is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::ShelfLazy => "shelf-lazy",
            Model::ShelfStandard => "shelf-standard",
            Model::ShelfStrict => "shelf-strict",
            Model::RiffleUpdown => "riffle-updown",
            Model::RiffleDownup => "riffle-downup",
            Model::RiffleClassic => "riffle-classic",
        }
    }

    /// Row label used in distance tables.
    pub fn label(self) -> &'static str {
        match self {
            Model::ShelfLazy => "Lazy",
            Model::ShelfStandard => "Standard",
            Model::ShelfStrict => "Strict",
            Model::RiffleUpdown => "Up-down",
            Model::RiffleDownup => "Down-up",
            Model::RiffleClassic => "Riffle",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown model {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShuffleSpec {
    pub n: usize,
    pub m: u64,
    pub model: Model,
}

impl ShuffleSpec {
    pub fn new(n: usize, m: u64, model: Model) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and m >= 1, got n={n}, m={m}"
            )));
        }
        Ok(Self { n, m, model })
    }

    /// Number of equally likely outcomes: `base^n`.
    pub fn outcome_count(&self) -> BigInt {
        pow(self.model.mode().base(self.m), self.n)
    }
}

impl fmt::Display for ShuffleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} m={}", self.model, self.n, self.m)
    }
}

fn uniform_value<R: Rng + ?Sized>(alphabet: &[BarredInt], rng: &mut R) -> BarredInt {
    alphabet[rng.random_range(0..alphabet.len())]
}

/// Placement sequence of a shelf shuffle, one uniformly random value per
/// card from the mode's alphabet.
pub fn sample_placements<R: Rng + ?Sized>(spec: &ShuffleSpec, rng: &mut R) -> Result<PPartition> {
    if spec.model.is_riffle() {
        return Err(Error::UnsupportedModel(spec.model.to_string()));
    }
    let alphabet = spec.model.mode().alphabet(spec.m);
    Ok(PPartition::new(
        (0..spec.n).map(|_| uniform_value(&alphabet, rng)).collect(),
    ))
}

/// One shelf shuffle. Every placement sequence is equally likely.
pub fn simulate_shelf<R: Rng + ?Sized>(spec: &ShuffleSpec, rng: &mut R) -> Result<(ShuffleOutcome, Permutation)> {
    let f = sample_placements(spec, rng)?;
    let outcome = crate::ppartition::shelf_outcome_from_ppartition(&f, spec.m, spec.model.mode())?;
    let deck = sorting_permutation(&f);
    Ok((outcome, deck))
}

fn riffle_variant(spec: &ShuffleSpec) -> Result<RiffleVariant> {
    spec.model
        .riffle_variant()
        .ok_or_else(|| Error::UnsupportedModel(spec.model.to_string()))
}

/// Multinomial cut: every card independently picks one of the piles.
fn sample_cut<R: Rng + ?Sized>(n: usize, piles: usize, rng: &mut R) -> WeakComposition {
    let mut parts = vec![0; piles];
    for _ in 0..n {
        parts[rng.random_range(0..piles)] += 1;
    }
    WeakComposition::new(parts)
}

/// One riffle shuffle: multinomial cut, reversal of the barred piles, and
/// interleaving by repeatedly dropping the bottom card of a pile chosen
/// with probability proportional to its current size.
pub fn simulate_riffle<R: Rng + ?Sized>(spec: &ShuffleSpec, rng: &mut R) -> Result<(ShuffleOutcome, Permutation)> {
    let variant = riffle_variant(spec)?;
    let composition = sample_cut(spec.n, variant.mode().base(spec.m) as usize, rng);
    let mut piles = variant.piles(&composition);
    let mut remaining = spec.n;
    let mut bottom_up = Vec::with_capacity(spec.n);
    while remaining > 0 {
        let mut r = rng.random_range(0..remaining);
        let pile = piles
            .iter_mut()
            .find(|p| {
                if r < p.len() {
                    true
                } else {
                    r -= p.len();
                    false
                }
            })
            .expect("r < remaining");
        bottom_up.push(pile.pop().expect("chosen pile is nonempty"));
        remaining -= 1;
    }
    bottom_up.reverse();
    let deck = Permutation::from_images_unchecked(bottom_up);
    Ok((
        ShuffleOutcome {
            composition,
            permutation: deck.clone(),
        },
        deck,
    ))
}

/// Riffle shuffle that interleaves by a uniformly random arrangement of
/// the pile labels. Same law as [`simulate_riffle`].
pub fn simulate_riffle_uniform<R: Rng + ?Sized>(
    spec: &ShuffleSpec,
    rng: &mut R,
) -> Result<(ShuffleOutcome, Permutation)> {
    let variant = riffle_variant(spec)?;
    let composition = sample_cut(spec.n, variant.mode().base(spec.m) as usize, rng);
    let piles = variant.piles(&composition);
    let mut labels: Vec<usize> = composition
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i, a))
        .collect();
    labels.shuffle(rng);
    let mut next = vec![0; piles.len()];
    let deck: Vec<usize> = labels
        .into_iter()
        .map(|i| {
            next[i] += 1;
            piles[i][next[i] - 1]
        })
        .collect();
    let deck = Permutation::from_images_unchecked(deck);
    Ok((
        ShuffleOutcome {
            composition,
            permutation: deck.clone(),
        },
        deck,
    ))
}

pub fn simulate<R: Rng + ?Sized>(spec: &ShuffleSpec, rng: &mut R) -> Result<(ShuffleOutcome, Permutation)> {
    if spec.model.is_riffle() {
        simulate_riffle(spec, rng)
    } else {
        simulate_shelf(spec, rng)
    }
}

/// Owns a generator and yields independent shuffles of one spec.
pub struct Shuffler<R> {
    spec: ShuffleSpec,
    rng: R,
}

impl<R: Rng> Shuffler<R> {
    pub fn new(spec: ShuffleSpec, rng: R) -> Self {
        Self { spec, rng }
    }

    pub fn spec(&self) -> &ShuffleSpec {
        &self.spec
    }
}

impl<R: Rng> Iterator for Shuffler<R> {
    type Item = (ShuffleOutcome, Permutation);

    fn next(&mut self) -> Option<Self::Item> {
        Some(simulate(&self.spec, &mut self.rng).expect("spec validated at construction"))
    }
}

/// Probability of a statistic class in the given mode. `m = 0` is allowed
/// for `Mode::All` (the point mass at the identity).
pub fn class_probability(mode: Mode, n: usize, k: usize, m: u64) -> Result<BigRational> {
    let base = mode.base(m);
    if base == 0 {
        return Err(Error::InvalidParameter(format!("m = 0 has no outcomes in mode {mode}")));
    }
    Ok(BigRational::new(chain_count(mode, n, k, m).value(), pow(base, n)))
}

/// Exact probability that one shuffle produces deck order `p`.
pub fn exact_prob(p: &Permutation, spec: &ShuffleSpec) -> Result<BigRational> {
    if p.len() != spec.n {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: spec.n,
        });
    }
    let k = if spec.model.is_riffle() {
        p.inverse().statistic(spec.model.statistic())
    } else {
        p.statistic(spec.model.statistic())
    };
    class_probability(spec.model.mode(), spec.n, k, spec.m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProb {
    pub k: usize,
    /// Number of permutations in the class.
    pub count: BigInt,
    /// Probability of each single permutation in the class.
    pub prob: BigRational,
}

/// A shuffle distribution stored as one probability per statistic class.
///
/// For riffle models the class of `π` is determined by `π⁻¹`; inversion is
/// a bijection so class sizes are the shelf ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDist {
    pub spec: ShuffleSpec,
    pub statistic: Statistic,
    pub classes: Vec<ClassProb>,
}

pub fn exact_distribution(spec: &ShuffleSpec) -> ExactDist {
    let statistic = spec.model.statistic();
    let mode = spec.model.mode();
    let classes = count_table(spec.n, statistic)
        .iter()
        .map(|(k, count)| ClassProb {
            k,
            count: count.clone(),
            prob: class_probability(mode, spec.n, k, spec.m).expect("m >= 1"),
        })
        .collect();
    ExactDist {
        spec: *spec,
        statistic,
        classes,
    }
}

impl ExactDist {
    pub fn class(&self, k: usize) -> Option<&ClassProb> {
        self.classes.get(k)
    }

    /// Probability of one permutation with statistic `k` (zero past the range).
    pub fn prob_of_class(&self, k: usize) -> BigRational {
        self.class(k).map(|c| c.prob.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn prob(&self, p: &Permutation) -> BigRational {
        let k = if self.spec.model.is_riffle() {
            p.inverse().statistic(self.statistic)
        } else {
            p.statistic(self.statistic)
        };
        self.prob_of_class(k)
    }

    /// `Σ_k count(k)·prob(k)`; equals 1 exactly.
    pub fn total_mass(&self) -> BigRational {
        self.classes
            .iter()
            .map(|c| BigRational::from_integer(c.count.clone()) * &c.prob)
            .sum()
    }

    pub fn class_size_total(&self) -> BigInt {
        self.classes.iter().map(|c| &c.count).sum()
    }

    /// Nearest-double view of the class probabilities, derived on demand.
    pub fn probabilities_f64(&self) -> Vec<(usize, f64)> {
        self.classes.iter().map(|c| (c.k, to_f64(&c.prob))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ExactDistJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ExactDistJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let spec = ShuffleSpec::new(raw.n, raw.m, raw.model)?;
        if raw.statistic != spec.model.statistic() {
            return Err(Error::Parse(format!(
                "statistic {} does not match model {}",
                raw.statistic, spec.model
            )));
        }
        let big = |s: &str| s.parse::<BigInt>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        let classes = raw
            .classes
            .iter()
            .map(|c| {
                let den = big(&c.prob_den)?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(ClassProb {
                    k: c.k,
                    count: big(&c.count)?,
                    prob: BigRational::new(big(&c.prob_num)?, den),
                })
            })
            .collect::<Result<_>>()?;
        Ok(ExactDist {
            spec,
            statistic: raw.statistic,
            classes,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ExactDistJson {
    model: Model,
    n: usize,
    m: u64,
    statistic: Statistic,
    classes: Vec<ClassJson>,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    k: usize,
    count: String,
    prob_num: String,
    prob_den: String,
}

impl From<&ExactDist> for ExactDistJson {
    fn from(d: &ExactDist) -> Self {
        Self {
            model: d.spec.model,
            n: d.spec.n,
            m: d.spec.m,
            statistic: d.statistic,
            classes: d
                .classes
                .iter()
                .map(|c| ClassJson {
                    k: c.k,
                    count: c.count.to_string(),
                    prob_num: c.prob.numer().to_string(),
                    prob_den: c.prob.denom().to_string(),
                })
                .collect(),
        }
    }
}

/// The single shuffle equivalent to `first` followed by `second`.
pub fn convolve(first: &ShuffleSpec, second: &ShuffleSpec) -> Result<ShuffleSpec> {
    if first.model != second.model || first.n != second.n {
        return Err(Error::MixedModels {
            left: first.to_string(),
            right: second.to_string(),
        });
    }
    let m = combined_parameter(first.model.mode(), first.m, second.m);
    ShuffleSpec::new(first.n, m, first.model)
}

fn numerators(n: usize, m: u64, model: Model) -> Vec<BigInt> {
    let mode = model.mode();
    all_permutations(n)
        .map(|p| {
            let q = if model.is_riffle() { p.inverse() } else { p };
            chain_count(mode, n, q.statistic(mode.statistic()), m).value()
        })
        .collect()
}

/// Multiplies the distributions of a `k` and an `l` shuffle in the group
/// algebra of `S_n` and compares, exactly, with the single-shuffle
/// distribution given by [`convolve`]'s rule. `k = 0` is allowed for the
/// lazy family, where it is the point mass at the identity.
pub fn group_algebra_product_check(n: usize, k: u64, l: u64, model: Model) -> Result<Report> {
    if n > 6 {
        return Err(Error::CapExceeded {
            what: format!("n = {n} for the group-algebra product"),
            limit: 6,
        });
    }
    let mode = model.mode();
    let (bk, bl) = (mode.base(k), mode.base(l));
    if bk == 0 || bl == 0 {
        return Err(Error::InvalidParameter(format!("k = {k}, l = {l} invalid for {model}")));
    }
    let big_m = combined_parameter(mode, k, l);
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let (left, right) = (numerators(n, k, model), numerators(n, l, model));
    let mut product = vec![BigInt::zero(); perms.len()];
    for (s, a) in perms.iter().zip(&left) {
        if a.is_zero() {
            continue;
        }
        for (t, b) in perms.iter().zip(&right) {
            if !b.is_zero() {
                product[s.compose(t)?.lex_rank()] += a * b;
            }
        }
    }
    let denom = pow(bk, n) * pow(bl, n);
    let mut report = Report::new(
        "group-algebra-product",
        format!("n={n}, k={k}, l={l}, model={model}"),
    );
    let single = numerators(n, big_m, model);
    let single_den = pow(mode.base(big_m), n);
    let mut mass = BigRational::zero();
    for ((p, num), s) in perms.iter().zip(product).zip(single) {
        let conv = BigRational::new(num, denom.clone());
        let expected = BigRational::new(s, single_den.clone());
        mass += &conv;
        report.record(conv == expected, || format!("π={p}: product {conv} vs single {expected}"));
    }
    report.record(mass.is_one(), || format!("product mass {mass}"));
    Ok(report)
}

/// Largest `n` accepted by the exhaustive helpers in this module.
pub const MODEL_EXHAUSTIVE_CAP: usize = EXHAUSTIVE_CAP;

/// Exact probability of every permutation of `S_n` (lexicographic order),
/// by summing over the enumerated outcome space rather than via the
/// closed forms.
pub fn enumerate_outcome_distribution(spec: &ShuffleSpec) -> Result<Vec<BigRational>> {
    use crate::ppartition::{enumerate_bounded, enumerate_riffle_outcomes, Poset};
    if spec.n > MODEL_EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded {
            what: format!("n = {}", spec.n),
            limit: MODEL_EXHAUSTIVE_CAP as u128,
        });
    }
    let mut counts = vec![BigInt::zero(); (1..=spec.n).product()];
    match spec.model.riffle_variant() {
        None => {
            for f in enumerate_bounded(&Poset::antichain(spec.n), spec.m, spec.model.mode())? {
                counts[sorting_permutation(&f).lex_rank()] += 1;
            }
        }
        Some(variant) => {
            for o in enumerate_riffle_outcomes(spec.n, spec.m, variant) {
                counts[o.permutation.lex_rank()] += 1;
            }
        }
    }
    let total = spec.outcome_count();
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(c, total.clone()))
        .collect())
}
