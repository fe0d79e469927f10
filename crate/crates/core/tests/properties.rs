use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use shuffle_lab::analysis::{count_table, linf_distance, sep_distance, tv_distance};
use shuffle_lab::model::{convolve, exact_distribution, exact_prob, ExactDist};
use shuffle_lab::numeric::{factorial, pow};
use shuffle_lab::orderpoly::{
    check_antichain_total, check_monotonicity, chain_count, combined_parameter, op_poset,
    verify_decomposition,
};
use shuffle_lab::ppartition::{
    enumerate_bounded, is_p_partition, ppartition_from_shelf_outcome, shelf_outcome_from_ppartition,
    sorting_permutation,
};
use shuffle_lab::{BarredInt, Mode, Model, PPartition, Permutation, Poset, ShuffleSpec, Statistic};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(Mode::ALL.to_vec())
}

fn model() -> impl Strategy<Value = Model> {
    prop::sample::select(Model::ALL.to_vec())
}

fn ppartition(max_n: usize, max_rank: u64) -> impl Strategy<Value = PPartition> {
    prop::collection::vec(0..=max_rank, 1..=max_n)
        .prop_map(|ranks| PPartition::new(ranks.into_iter().map(BarredInt::from_rank).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_holds(n in 1usize..=5, k in 0u64..=3, l in 0u64..=3, mode in mode()) {
        let r = verify_decomposition(n, k, l, mode).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn monotone_in_statistic(n in 1usize..=8, m in 0u64..=5, mode in mode()) {
        prop_assert!(check_monotonicity(n, m, mode).passed());
    }

    #[test]
    fn antichain_totals(n in 1usize..=8, m in 0u64..=4, mode in mode()) {
        prop_assert!(check_antichain_total(n, m, mode).passed());
    }

    #[test]
    fn chain_closed_form_matches_enumeration(p in permutation(5), m in 0u64..=3, mode in mode()) {
        let count = enumerate_bounded(&Poset::chain(&p), m, mode).unwrap().len();
        let closed = chain_count(mode, p.len(), p.statistic(mode.statistic()), m).value();
        prop_assert_eq!(closed, BigInt::from(count));
    }

    #[test]
    fn sorting_permutation_is_the_unique_chain(f in ppartition(7, 6)) {
        let pi = sorting_permutation(&f);
        prop_assert!(is_p_partition(&f, &Poset::chain(&pi), Mode::All).unwrap());
    }

    #[test]
    fn antichain_order_polynomial_is_power(n in 1usize..=4, m in 0u64..=2, mode in mode()) {
        prop_assert_eq!(op_poset(&Poset::antichain(n), m, mode), pow(mode.base(m), n));
    }

    #[test]
    fn shelf_bijection_round_trips(f in ppartition(8, 6), mode in mode()) {
        let m = f.bound().max(1);
        prop_assume!(f.values().iter().all(|&v| mode.admits(v)));
        let outcome = shelf_outcome_from_ppartition(&f, m, mode).unwrap();
        prop_assert_eq!(&outcome.permutation, &sorting_permutation(&f));
        prop_assert_eq!(ppartition_from_shelf_outcome(&outcome, mode).unwrap(), f);
    }

    #[test]
    fn permutation_text_round_trips(p in permutation(12)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
    }

    #[test]
    fn barred_text_round_trips(rank in 0u64..1000) {
        let v = BarredInt::from_rank(rank);
        prop_assert_eq!(v.to_string().parse::<BarredInt>().unwrap(), v);
    }

    #[test]
    fn inverse_and_cycles(p in permutation(10)) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.cycle_type(), p.inverse().cycle_type());
        prop_assert_eq!(p.cycle_type().size(), p.len());
        prop_assert!(p.left_peaks() >= p.peaks() && p.left_peaks() <= p.peaks() + 1);
        prop_assert!(p.left_peaks() <= Statistic::Lpk.max_value(p.len()));
    }

    #[test]
    fn distribution_normalized(n in 1usize..=30, m in 1u64..=400, model in model()) {
        let d = exact_distribution(&ShuffleSpec::new(n, m, model).unwrap());
        prop_assert!(d.total_mass().is_one());
        prop_assert_eq!(d.class_size_total(), factorial(n));
        prop_assert_eq!(ExactDist::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn distances_are_ordered(n in 1usize..=40, m in 1u64..=500, model in model()) {
        let spec = ShuffleSpec::new(n, m, model).unwrap();
        let (tv, sep, linf) = (tv_distance(&spec), sep_distance(&spec), linf_distance(&spec));
        prop_assert!(tv <= sep && sep <= linf, "{} {} {}", tv, sep, linf);
    }

    #[test]
    fn class_probability_vanishes_past_support(n in 2usize..=20, m in 1u64..=9) {
        let spec = ShuffleSpec::new(n, m, Model::ShelfLazy).unwrap();
        let d = exact_distribution(&spec);
        for c in &d.classes {
            if c.k as u64 > m {
                prop_assert_eq!(c.prob.clone(), num_rational::BigRational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn riffle_probability_is_shelf_of_inverse(p in permutation(7), m in 1u64..=4) {
        for (shelf, riffle) in [
            (Model::ShelfLazy, Model::RiffleUpdown),
            (Model::ShelfStandard, Model::RiffleDownup),
            (Model::ShelfStrict, Model::RiffleClassic),
        ] {
            let a = exact_prob(&p.inverse(), &ShuffleSpec::new(p.len(), m, shelf).unwrap()).unwrap();
            let b = exact_prob(&p, &ShuffleSpec::new(p.len(), m, riffle).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn convolution_is_associative(k in 1u64..=20, l in 1u64..=20, j in 1u64..=20, mode in mode()) {
        let c = |a, b| combined_parameter(mode, a, b);
        prop_assert_eq!(c(c(k, l), j), c(k, c(l, j)));
        let model = Model::SHELF.into_iter().find(|m| m.mode() == mode).unwrap();
        let s = |m| ShuffleSpec::new(5, m, model).unwrap();
        prop_assert_eq!(convolve(&s(k), &s(l)).unwrap().m, c(k, l));
    }
}

#[test]
fn count_tables_sum_to_factorial() {
    for n in 1..=52 {
        for kind in [Statistic::Lpk, Statistic::Pk, Statistic::Des] {
            assert_eq!(count_table(n, kind).total(), factorial(n), "{kind} n={n}");
        }
    }
}
