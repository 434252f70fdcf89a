//! Library results against brute-force oracles that share no code with it.

use lambert_core::arith;
use lambert_core::factorization::{recover_a, LambertPair};
use lambert_core::matrices::{factorization_matrix, invert_unit_lower, DivisorSumInverse};
use lambert_core::qseries::{euler_product, lambert_series, s_entry, series_mul};
use lambert_core::{partition_table, FormalLog, LambertSign};
use num_bigint::BigInt;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every set of distinct positive integers summing to n.
fn distinct_partitions(n: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack = vec![(n, 1u64, Vec::new())];
    while let Some((rest, min, parts)) = stack.pop() {
        if rest == 0 {
            out.push(parts);
            continue;
        }
        for p in min..=rest {
            let mut next = parts.clone();
            next.push(p);
            stack.push((rest - p, p + 1, next));
        }
    }
    out
}

fn count_partitions(n: u64, max: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|p| count_partitions(n - p, p)).sum()
}

#[test]
fn matrix_entries_count_signed_distinct_parts() {
    for n in 1..=24u64 {
        let parts = distinct_partitions(n);
        for k in 1..=n {
            let signed: i64 = parts
                .iter()
                .filter(|p| p.contains(&k))
                .map(|p| if p.len() % 2 == 1 { 1 } else { -1 })
                .sum();
            assert_eq!(s_entry(n, k), BigInt::from(signed), "s({n},{k})");
        }
    }
}

#[test]
fn partition_numbers_by_recursion() {
    let t = partition_table(40);
    for n in 0..=40 {
        assert_eq!(t.get(n as i64), &BigInt::from(count_partitions(n, n)));
    }
}

#[test]
fn arithmetic_functions_by_definition() {
    for n in 1..=300u64 {
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(arith::divisors(n).unwrap(), divs);
        let phi = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
        assert_eq!(arith::euler_phi(n).unwrap(), phi);
        let sigma2: u64 = divs.iter().map(|d| d * d).sum();
        assert_eq!(arith::sigma_alpha(n, 2).unwrap(), BigInt::from(sigma2));

        // Prime factors with multiplicity by repeated division.
        let mut m = n;
        let mut factors = Vec::new();
        let mut p = 2;
        while m > 1 {
            while m % p == 0 {
                factors.push(p);
                m /= p;
            }
            p += 1;
        }
        let mut distinct = factors.clone();
        distinct.dedup();
        let squarefree = distinct.len() == factors.len();
        let mu = if squarefree {
            if factors.len() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        };
        assert_eq!(arith::moebius(n).unwrap(), mu);
        let lambda = if factors.len() % 2 == 0 { 1 } else { -1 };
        assert_eq!(arith::liouville(n).unwrap(), lambda);

        let lm = arith::von_mangoldt_formal(n).unwrap();
        if distinct.len() == 1 {
            assert_eq!(lm, FormalLog::log_prime(distinct[0]));
        } else {
            assert!(lm.is_zero());
        }
    }
}

#[test]
fn jordan_totient_counts_coprime_pairs() {
    for n in 1..=40u64 {
        let count = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| gcd(gcd(a, b), n) == 1)
            .count();
        assert_eq!(arith::jordan_totient(n, 2).unwrap(), BigInt::from(count));
    }
}

#[test]
fn inverse_is_a_two_sided_inverse() {
    let a = factorization_matrix(50).unwrap();
    let inv = invert_unit_lower(&a).unwrap();
    assert!(a.mul(&inv).unwrap().is_identity());
    assert!(inv.mul(&a).unwrap().is_identity());
    let ctx = DivisorSumInverse::new(50);
    for n in 1..=50 {
        assert_eq!(
            ctx.row(n).unwrap(),
            inv.row(n as usize)[..n as usize].to_vec()
        );
    }
}

#[test]
fn factorization_theorem_by_series_arithmetic() {
    // (q;q)_∞ Σ a_n q^n/(1-q^n) has q^n coefficient Σ_k s(n,k) a_k.
    let order = 40;
    let a: Vec<BigInt> = (1..=order as i64)
        .map(|n| BigInt::from(n * n - 7 * n + 3))
        .collect();
    let lhs = series_mul(
        &lambert_series(&a, LambertSign::Minus, order),
        &euler_product(order),
    )
    .unwrap();
    for n in 1..=order as u64 {
        let want: BigInt = (1..=n).map(|k| s_entry(n, k) * &a[k as usize - 1]).sum();
        assert_eq!(lhs.coeff(n as usize), &want);
    }
}

#[test]
fn sigma_pair_is_recovered() {
    let sigma = LambertPair::power(1);
    let got = recover_a(&sigma, 50).unwrap();
    let want: Vec<BigInt> = (1..=50).map(BigInt::from).collect();
    assert_eq!(got, want);
}
