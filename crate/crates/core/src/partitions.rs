//! The partition function and brute-force partition enumeration.
//!
//! [`PartitionTable`] is the fast path (pentagonal recurrence). The
//! enumeration routines walk every partition explicitly and exist to check
//! identities against something that shares no code with the series side;
//! they are exponential and meant for n up to about 45.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::qseries::pentagonal_terms;

static ZERO: BigInt = BigInt::ZERO;

/// p(0), ..., p(max_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// p(n), with p(n) = 0 for negative `n`.
    ///
    /// # Panics
    /// If `n` exceeds the table bound.
    pub fn get(&self, n: i64) -> &BigInt {
        if n < 0 {
            return &ZERO;
        }
        self.values
            .get(n as usize)
            .unwrap_or_else(|| panic!("p({n}) requested from a table built to {}", self.max_n()))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// p(0..=max_n) by Euler's recurrence
/// p(n) = Σ_k (-1)^{k+1} (p(n - k(3k-1)/2) + p(n - k(3k+1)/2)).
pub fn partition_table(max_n: usize) -> PartitionTable {
    let mut values = Vec::with_capacity(max_n + 1);
    values.push(BigInt::one());
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        // Skip j = 0 (G_0 = 0); the remaining signs flip relative to the
        // pentagonal expansion of (q;q)_∞.
        for (_, g, sign) in pentagonal_terms(n as u64).skip(1) {
            let v = &values[n - g as usize];
            if sign < 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        values.push(acc);
    }
    PartitionTable { values }
}

/// Calls `visit` with every partition of `n` into distinct parts, parts in
/// increasing order.
pub fn for_each_distinct_partition(n: u64, mut visit: impl FnMut(&[u64])) {
    fn go(rest: u64, min: u64, parts: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        if rest == 0 {
            visit(parts);
            return;
        }
        let mut part = min;
        while part <= rest {
            let after = rest - part;
            // Remaining parts must exceed `part`, or there are none.
            if after == 0 || after > part {
                parts.push(part);
                go(after, part + 1, parts, visit);
                parts.pop();
            }
            part += 1;
        }
    }
    go(n, 1, &mut Vec::new(), &mut visit);
}

/// Calls `visit` with every partition of `n`, parts non-increasing.
pub fn for_each_partition(n: u64, mut visit: impl FnMut(&[u64])) {
    fn go(rest: u64, max: u64, parts: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        if rest == 0 {
            visit(parts);
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            parts.push(part);
            go(rest - part, part, parts, visit);
            parts.pop();
        }
    }
    go(n, n, &mut Vec::new(), &mut visit);
}

/// `(s_o(n, k), s_e(n, k))` for every `k` in `1..=n`: how many partitions of
/// `n` into an odd (even) number of distinct parts contain the part `k`.
///
/// Index 0 of the result is unused and holds `(0, 0)`.
pub fn distinct_partition_stats_row(n: u64) -> Vec<(u64, u64)> {
    let mut row = vec![(0u64, 0u64); n as usize + 1];
    for_each_distinct_partition(n, |parts| {
        let odd = parts.len() % 2 == 1;
        for &k in parts {
            let slot = &mut row[k as usize];
            if odd {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    });
    row
}

/// `(s_o(n, k), s_e(n, k))`; zero when `k` is 0 or exceeds `n`.
pub fn distinct_partition_stats(n: u64, k: u64) -> (u64, u64) {
    if k == 0 || k > n {
        return (0, 0);
    }
    distinct_partition_stats_row(n)[k as usize]
}

/// `(s_o(n), s_e(n))`: total number of parts over partitions of `n` into an
/// odd (even) number of distinct parts.
pub fn parts_count_stats(n: u64) -> (u64, u64) {
    let mut out = (0, 0);
    for_each_distinct_partition(n, |parts| {
        if parts.len() % 2 == 1 {
            out.0 += parts.len() as u64;
        } else {
            out.1 += parts.len() as u64;
        }
    });
    out
}

/// Number of partitions of `n` whose parts have greatest common divisor 1.
pub fn count_partitions_gcd_one(n: u64) -> u64 {
    let mut count = 0;
    for_each_partition(n, |parts| {
        if parts.iter().fold(0u64, |g, &p| g.gcd(&p)) == 1 {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{euler_product, series_reciprocal};

    #[test]
    fn table_values() {
        let t = partition_table(20);
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(t.get(n as i64), &BigInt::from(v));
        }
        assert_eq!(partition_table(17).get(17), &BigInt::from(297));
        assert_eq!(t.get(-3), &BigInt::zero());
    }

    #[test]
    fn table_is_reciprocal_of_euler_product() {
        let t = partition_table(200);
        let r = series_reciprocal(&euler_product(200)).unwrap();
        assert_eq!(t.values(), r.coeffs());
        assert!(t.values()[1..].windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn enumeration_counts_match_table() {
        let t = partition_table(25);
        for n in 0..=25 {
            let mut c = 0u64;
            for_each_partition(n, |_| c += 1);
            assert_eq!(&BigInt::from(c), t.get(n as i64));
        }
    }

    #[test]
    fn distinct_stats_examples() {
        assert_eq!(distinct_partition_stats(3, 1), (0, 1));
        assert_eq!(distinct_partition_stats(2, 1), (0, 0));
        for n in 1..=20 {
            assert_eq!(distinct_partition_stats(n, n), (1, 0));
        }
        assert_eq!(parts_count_stats(1), (1, 0));
        assert_eq!(parts_count_stats(3), (1, 2));
        let row = distinct_partition_stats_row(6);
        let (o, e) = row
            .iter()
            .fold((0, 0), |acc, &(o, e)| (acc.0 + o, acc.1 + e));
        assert_eq!(parts_count_stats(6), (o, e));
    }

    #[test]
    fn gcd_one_counts() {
        let expect = [1, 1, 2, 3, 6, 7, 14, 17, 27, 34, 55, 63];
        for (i, &v) in expect.iter().enumerate() {
            assert_eq!(count_partitions_gcd_one(i as u64 + 1), v);
        }
    }
}
