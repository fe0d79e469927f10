//! Cycle structure of the lazy shelf shuffle via its cycle-index series
//!
//! ```text
//! 1 + Σ_n u^n Σ_{π ∈ S_n} x_m(π) ∏ z_i^{N_i(π)}
//!   = 1/(1 - z_1 u/b) · ∏_i ((1 + z_i u^i/b^i) / (1 - z_i u^i/b^i))^{f_{i,m}}
//! ```
//!
//! with `b = 2m+1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{exact_prob, Model, ShuffleSpec};
use crate::numeric::{pow, ratio};
use crate::orderpoly::{op_lazy, EXHAUSTIVE_CAP};
use crate::perm::{all_permutations, CycleType};
use crate::report::Report;
use crate::series::TruncatedSeries;

/// Largest `u`-degree the cycle series is expanded to.
pub const SERIES_CAP: usize = 20;

pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `f_{i,m} = (1/2i) Σ_{d | i, d odd} μ(d) ((2m+1)^{i/d} - 1)`.
pub fn f_im(i: usize, m: u64) -> BigRational {
    assert!(i >= 1);
    let sum: BigInt = (1..=i)
        .step_by(2)
        .filter(|&d| i.is_multiple_of(d))
        .map(|d| BigInt::from(mobius(d as u64)) * (pow(2 * m + 1, i / d) - 1))
        .sum();
    BigRational::new(sum, BigInt::from(2 * i))
}

fn f_im_integer(i: usize, m: u64) -> Result<BigInt> {
    let f = f_im(i, m);
    if !f.is_integer() || f.is_negative() {
        return Err(Error::InvalidParameter(format!("f_({i},{m}) = {f} is not a nonnegative integer")));
    }
    Ok(f.to_integer())
}

/// Truncated series in `u` whose coefficients are polynomials in the
/// markers `z_i`, stored as cycle type → coefficient. The `u`-degree of a
/// term is the size of its cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSeries {
    degree: usize,
    terms: BTreeMap<CycleType, BigRational>,
}

impl CycleSeries {
    pub fn one(degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(CycleType::empty(), BigRational::one());
        Self { degree, terms }
    }

    /// `Σ_j c_j (z_i u^i)^j`, dropping terms past `degree`.
    pub fn in_marker(degree: usize, i: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .take_while(|(j, _)| i * j <= degree)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (CycleType::from_counts([(i, j)]), c))
            .collect();
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, t: &CycleType) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<CycleType, BigRational> {
        &self.terms
    }

    /// The `u^d` part, keyed by cycle types of `d`.
    pub fn at_degree(&self, d: usize) -> BTreeMap<CycleType, BigRational> {
        self.terms
            .iter()
            .filter(|(t, _)| t.size() == d)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect()
    }

    pub fn mul(&self, other: &CycleSeries) -> CycleSeries {
        let degree = self.degree.min(other.degree);
        let mut terms: BTreeMap<CycleType, BigRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.size() + b.size() <= degree {
                    *terms.entry(a.merge(b)).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        CycleSeries { degree, terms }
    }
}

/// `((1+w)/(1-w))^f` as integer coefficients up to `w^deg`.
fn ratio_power(deg: usize, f: &BigInt) -> Vec<BigInt> {
    // C(f, j) and C(f-1+j, j) for a possibly large exponent f.
    let mut up = Vec::with_capacity(deg + 1);
    let mut down = Vec::with_capacity(deg + 1);
    let (mut c, mut g) = (BigInt::one(), BigInt::one());
    for j in 0..=deg {
        if j > 0 {
            let jj = BigInt::from(j);
            c = c * (f - (&jj - 1)) / &jj;
            g = g * (f - 1 + &jj) / &jj;
        }
        up.push(c.clone());
        down.push(if f.is_zero() && j > 0 { BigInt::zero() } else { g.clone() });
    }
    let a = TruncatedSeries::from_coeffs(deg, up);
    let b = TruncatedSeries::from_coeffs(deg, down);
    (&a * &b).coeffs().to_vec()
}

/// The product side of the cycle identity up to `u^degree`, with each
/// `z_i u^i` scaled by `1/scale^i`.
fn product_series(degree: usize, m: u64, scale: u64) -> Result<CycleSeries> {
    let b = BigInt::from(scale);
    let scaled = |i: usize, coeffs: Vec<BigInt>| -> Vec<BigRational> {
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| BigRational::new(c, num_traits::pow(b.clone(), i * j)))
            .collect()
    };
    let geometric = vec![BigInt::one(); degree + 1];
    let mut series = CycleSeries::in_marker(degree, 1, scaled(1, geometric));
    for i in 1..=degree {
        let f = f_im_integer(i, m)?;
        let factor = CycleSeries::in_marker(degree, i, scaled(i, ratio_power(degree / i, &f)));
        series = series.mul(&factor);
    }
    Ok(series)
}

fn check_series_cap(n: usize) -> Result<()> {
    if n > SERIES_CAP {
        return Err(Error::CapExceeded {
            what: format!("n = {n} for the cycle series"),
            limit: SERIES_CAP as u128,
        });
    }
    Ok(())
}

/// Probability of each cycle type after one lazy shelf shuffle, read off
/// the product formula.
pub fn cycle_distribution(spec: &ShuffleSpec) -> Result<BTreeMap<CycleType, BigRational>> {
    if spec.model != Model::ShelfLazy {
        return Err(Error::UnsupportedModel(format!(
            "{}: the cycle series covers shelf-lazy only",
            spec.model
        )));
    }
    check_series_cap(spec.n)?;
    Ok(product_series(spec.n, spec.m, 2 * spec.m + 1)?.at_degree(spec.n))
}

fn check_exhaustive_cap(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded {
            what: format!("n = {n} for an exhaustive sum"),
            limit: EXHAUSTIVE_CAP as u128,
        });
    }
    Ok(())
}

/// `Σ_{π of type λ} x_m(π)` by enumerating `S_n`.
pub fn cycle_distribution_exhaustive(n: usize, m: u64) -> Result<BTreeMap<CycleType, BigRational>> {
    check_exhaustive_cap(n)?;
    let spec = ShuffleSpec::new(n, m, Model::ShelfLazy)?;
    let mut out: BTreeMap<CycleType, BigRational> = BTreeMap::new();
    for p in all_permutations(n) {
        let x = exact_prob(&p, &spec)?;
        *out.entry(p.cycle_type()).or_insert_with(BigRational::zero) += x;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn verify_cycle_distribution(n: usize, m: u64) -> Result<Report> {
    let spec = ShuffleSpec::new(n, m, Model::ShelfLazy)?;
    let series = cycle_distribution(&spec)?;
    let brute = cycle_distribution_exhaustive(n, m)?;
    let mut report = Report::new("cycle-distribution", format!("n={n}, m={m}"));
    let mut types: Vec<&CycleType> = series.keys().chain(brute.keys()).collect();
    types.sort();
    types.dedup();
    for t in types {
        let (a, b) = (series.get(t).cloned().unwrap_or_default(), brute.get(t).cloned().unwrap_or_default());
        report.record(a == b, || format!("type {t}: series {a}, exhaustive {b}"));
    }
    let mass: BigRational = series.values().sum();
    report.record(mass.is_one(), || format!("mass {mass}"));
    report.record(series.values().all(|c| !c.is_negative()), || "negative mass".into());
    Ok(report)
}

/// Expected number of fixed points after one lazy shelf shuffle.
pub fn expected_fixed_points(n: usize, m: u64) -> BigRational {
    assert!(n >= 1);
    let b = BigInt::from(2 * m + 1);
    let inv_pow = |e: usize| BigRational::new(BigInt::one(), num_traits::pow(b.clone(), e));
    let terms = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    let mut e = BigRational::one();
    for k in 1..=terms {
        e += BigRational::from_integer(BigInt::from(2)) * inv_pow(2 * k);
    }
    if n.is_multiple_of(2) {
        e += inv_pow(n);
    }
    e
}

/// `Σ_π x_m(π) fix(π)` by enumerating `S_n`.
pub fn expected_fixed_points_exhaustive(n: usize, m: u64) -> Result<BigRational> {
    check_exhaustive_cap(n)?;
    let spec = ShuffleSpec::new(n, m, Model::ShelfLazy)?;
    all_permutations(n)
        .map(|p| Ok(exact_prob(&p, &spec)? * ratio(p.fixed_points() as i64, 1)))
        .sum()
}

/// Checks, per cycle type of `S_n` and `1 <= m <= m_max`, that
/// `Σ_π [t^m] (1+t)^n/(1-t)^{n+1} (4t/(1+t)²)^{lpk(π)}` equals the `u^n`
/// coefficient of `1/(1-z_1 u) ∏ ((1+z_i u^i)/(1-z_i u^i))^{f_{i,m}}`.
pub fn verify_joint_lpk_cycle(n: usize, m_max: u64) -> Result<Report> {
    if n > 6 || m_max > 4 {
        return Err(Error::CapExceeded {
            what: format!("n = {n}, m_max = {m_max} for the joint identity (n <= 6, m_max <= 4)"),
            limit: 6,
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let deg = m_max as usize;
    // kernel(k) = (4t)^k (1+t)^{n-2k} / (1-t)^{n+1}
    let kernels: Vec<TruncatedSeries> = (0..=n / 2)
        .map(|k| {
            let four_t = TruncatedSeries::monomial(deg, k, num_traits::pow(BigInt::from(4), k));
            &(&four_t * &TruncatedSeries::one_plus_x_pow(deg, (n - 2 * k) as u64))
                * &TruncatedSeries::geometric_pow(deg, n as u64 + 1)
        })
        .collect();
    let mut lpk_by_type: BTreeMap<CycleType, Vec<usize>> = BTreeMap::new();
    for p in all_permutations(n) {
        lpk_by_type.entry(p.cycle_type()).or_default().push(p.left_peaks());
    }
    let mut report = Report::new("joint-lpk-cycle", format!("n={n}, m<={m_max}"));
    for m in 1..=m_max {
        let rhs = product_series(n, m, 1)?.at_degree(n);
        for (t, lpks) in &lpk_by_type {
            let lhs: BigInt = lpks.iter().map(|&k| kernels[k].coeff(m as usize)).sum();
            let direct: BigInt = lpks.iter().map(|&k| op_lazy(n, k, m).value()).sum();
            let r = rhs.get(t).cloned().unwrap_or_default();
            let lhs = BigRational::from_integer(lhs);
            report.record(lhs == r, || format!("m={m}, type {t}: kernel side {lhs}, product side {r}"));
            report.record(lhs == BigRational::from_integer(direct.clone()), || {
                format!("m={m}, type {t}: kernel side {lhs}, order polynomials {direct}")
            });
        }
        report.record(rhs.len() == lpk_by_type.len(), || {
            format!("m={m}: product side has {} types, S_{n} has {}", rhs.len(), lpk_by_type.len())
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factorial;

    #[test]
    fn mobius_values() {
        let mu: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn f_values() {
        for m in 0..6u64 {
            assert_eq!(f_im(1, m), ratio(m as i64, 1));
            assert_eq!(f_im(2, m), ratio((m * m + m) as i64, 1));
        }
        assert_eq!(f_im(3, 1), ratio(4, 1));
        for i in 1..=12 {
            for m in 0..5 {
                assert!(f_im_integer(i, m).is_ok(), "i={i} m={m}");
            }
        }
    }

    #[test]
    fn ratio_power_small() {
        let c: Vec<i64> = ratio_power(4, &BigInt::from(1)).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 2, 2, 2]);
        let c: Vec<i64> = ratio_power(3, &BigInt::zero()).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 0, 0, 0]);
    }

    #[test]
    fn markers_set_to_one_give_geometric_series() {
        for m in 1..4 {
            let s = product_series(8, m, 2 * m + 1).unwrap();
            for d in 0..=8 {
                let mass: BigRational = s.at_degree(d).values().sum();
                assert!(mass.is_one(), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn matches_exhaustive() {
        for n in 1..=5 {
            for m in 1..=3 {
                let r = verify_cycle_distribution(n, m).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn large_m_approaches_uniform() {
        let spec = ShuffleSpec::new(4, 1000, Model::ShelfLazy).unwrap();
        let dist = cycle_distribution(&spec).unwrap();
        let mut uniform: BTreeMap<CycleType, BigRational> = BTreeMap::new();
        for p in all_permutations(4) {
            *uniform.entry(p.cycle_type()).or_insert_with(BigRational::zero) +=
                BigRational::new(BigInt::one(), factorial(4));
        }
        for (t, u) in uniform {
            let diff = (dist[&t].clone() - u).abs();
            assert!(diff < ratio(1, 1000), "{t}: {diff}");
        }
    }

    #[test]
    fn rejects_other_models() {
        let spec = ShuffleSpec::new(4, 1, Model::ShelfStandard).unwrap();
        assert!(matches!(cycle_distribution(&spec), Err(Error::UnsupportedModel(_))));
        let big = ShuffleSpec::new(SERIES_CAP + 1, 1, Model::ShelfLazy).unwrap();
        assert!(cycle_distribution(&big).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(expected_fixed_points(2, 1), ratio(10, 9));
        assert_eq!(expected_fixed_points(3, 1), ratio(11, 9));
        assert_eq!(expected_fixed_points(1, 7), ratio(1, 1));
        for n in 1..=6 {
            for m in 1..=3 {
                assert_eq!(expected_fixed_points(n, m), expected_fixed_points_exhaustive(n, m).unwrap());
            }
        }
    }

    #[test]
    fn joint_identity() {
        assert!(verify_joint_lpk_cycle(1, 4).unwrap().passed());
        assert!(verify_joint_lpk_cycle(3, 1).unwrap().passed());
        assert!(verify_joint_lpk_cycle(5, 2).unwrap().passed());
        assert!(verify_joint_lpk_cycle(7, 1).is_err());
    }
}
