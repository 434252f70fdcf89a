use std::sync::OnceLock;

use lambert_core::arith::{self, is_prime};
use lambert_core::factorization::{
    generalized_series_check, multiplicative_relation_check, pentagonal_bound, recover_a,
    InnerShift, LambertPair,
};
use lambert_core::matrices::{factorization_matrix, inverse_entry_divisor_sum, invert_unit_lower};
use lambert_core::qseries::{lambert_coefficients, series_mul, series_reciprocal};
use lambert_core::{Execution, FormalLog, IntSeries, LambertSign, TriMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn inverse_80() -> &'static TriMatrix {
    static INV: OnceLock<TriMatrix> = OnceLock::new();
    INV.get_or_init(|| invert_unit_lower(&factorization_matrix(80).unwrap()).unwrap())
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_sequence_round_trips(a in prop::collection::vec(-50i64..50, 1..25)) {
        let a = ints(&a);
        let table = a.clone();
        let pair = LambertPair::from_a("custom", move |n| table[n as usize - 1].clone());
        prop_assert_eq!(recover_a(&pair, a.len()).unwrap(), a);
    }

    #[test]
    fn lambert_coefficients_are_divisor_sums(a in prop::collection::vec(-9i64..9, 1..60)) {
        let a = ints(&a);
        let b = lambert_coefficients(&a, LambertSign::Minus);
        for n in 1..=a.len() as u64 {
            let want: BigInt = arith::divisors(n).unwrap().iter().map(|&d| &a[d as usize - 1]).sum();
            prop_assert_eq!(&b[n as usize - 1], &want);
        }
    }

    #[test]
    fn divisor_sum_entry_matches_inversion(n in 1u64..=80, k_frac in 0.0f64..1.0) {
        let k = 1 + ((n as f64 - 1.0) * k_frac) as u64;
        prop_assert_eq!(
            &inverse_entry_divisor_sum(n, k).unwrap(),
            inverse_80().get(n as usize, k as usize)
        );
    }

    #[test]
    fn reciprocal_inverts(tail in prop::collection::vec(-5i64..5, 0..30), lead_neg in any::<bool>()) {
        let mut coeffs = vec![if lead_neg { -1 } else { 1 }];
        coeffs.extend(tail);
        let s = IntSeries::from_coeffs(ints(&coeffs));
        let r = series_reciprocal(&s).unwrap();
        prop_assert_eq!(series_mul(&s, &r).unwrap(), IntSeries::one(s.order()));
    }

    #[test]
    fn formal_logs_add_like_logs(x in 1u64..5000, y in 1u64..5000) {
        let lx = arith::log_formal(x).unwrap();
        let ly = arith::log_formal(y).unwrap();
        let lxy = arith::log_formal(x * y).unwrap();
        prop_assert_eq!(lx.clone() + ly.clone(), lxy.clone());
        prop_assert!((lxy.clone() - lx - ly).is_zero());
        prop_assert!(((x as f64 * y as f64).ln() - lxy.to_f64()).abs() < 1e-9);
        prop_assert_eq!(FormalLog::zero().to_string(), "0");
    }

    #[test]
    fn generalized_identity_for_random_sequences(
        a in prop::collection::vec(-20i64..20, 15),
        m in 0u64..=2,
        k in 0u64..=2,
    ) {
        let r = generalized_series_check(m, k, &ints(&a), 15, InnerShift::PerPart);
        prop_assert!(r.is_zero());
    }

    #[test]
    fn pentagonal_bound_is_exact(m in 0u64..1_000_000_000_000, positive in any::<bool>()) {
        let s = if positive { 1i64 } else { -1 };
        let k = pentagonal_bound(24 * m + 1, s) as i128;
        let g = |k: i128| k * (3 * k + s as i128) / 2;
        prop_assert!(g(k) <= m as i128);
        prop_assert!(g(k + 1) > m as i128);
    }

    #[test]
    fn multiplicative_relation_on_distinct_primes(i in 0usize..15, j in 0usize..15) {
        let primes: Vec<u64> = (2..60).filter(|&p| is_prime(p)).collect();
        prop_assume!(i != j);
        for pair in LambertPair::builtins() {
            let r = multiplicative_relation_check(&pair, primes[i], primes[j]).unwrap();
            prop_assert_eq!(r, BigInt::ZERO);
        }
    }

    #[test]
    fn sweeps_agree_across_execution_modes(len in 1u64..200, modulus in 1u64..20) {
        let f = |i: u64| i.is_multiple_of(modulus).then(|| i * i);
        prop_assert_eq!(
            Execution::Sequential.first_failure(1..=len, f),
            Execution::Parallel.first_failure(1..=len, f)
        );
        prop_assert_eq!(
            Execution::Sequential.map(1..=len, |i| i ^ modulus),
            Execution::Parallel.map(1..=len, |i| i ^ modulus)
        );
    }
}
