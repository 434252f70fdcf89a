//! The factorization matrices `A_n = (s_{i,j})` and their inverses.
//!
//! `A_n` is unit lower-triangular, so its inverse is integral and can be
//! obtained several independent ways. This module implements all of them so
//! they can be checked against each other:
//!
//! - forward substitution ([`invert_unit_lower`]);
//! - the divisor sum `s⁻¹(n,k) = Σ_{d|n} p(d-k) μ(n/d)` ([`DivisorSumInverse`]);
//! - the alternating nested chain sums ([`nested_formula_entry`]);
//! - the binomial power sum `Σ C(n-1,i) (-1)^{i+1} A^{i-1}` ([`binomial_power_inverse`]);
//! - row-by-row block extension ([`block_extend_inverse`]).
//!
//! Indices are 1-based throughout to match the usual `s_{i,j}` notation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, binomial, divisors, is_prime};
use crate::error::{Error, Result};
use crate::partitions::{partition_table, PartitionTable};
use crate::qseries::{euler_product, lambert_series, s_entry_with, IntSeries, LambertSign};

static ZERO: BigInt = BigInt::ZERO;

/// Square lower-triangular matrix of big integers, stored by rows; row `i`
/// (1-based) holds columns `1..=i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl TriMatrix {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| BigInt::zero())
    }

    /// Builds entry `(i, j)` for `1 <= j <= i <= n` from `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        Self {
            rows: (1..=n)
                .map(|i| (1..=i).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    /// Row `i` (0-based position in `rows`) must have exactly `i + 1` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(Error::MalformedRow {
                    row: idx + 1,
                    len: row.len(),
                });
            }
        }
        Ok(Self { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)`; zero above the diagonal and for any index 0.
    ///
    /// # Panics
    /// If `i` exceeds the dimension.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        if i == 0 || j == 0 || j > i {
            return &ZERO;
        }
        &self.rows[i - 1][j - 1]
    }

    /// Columns `1..=i` of row `i`.
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows.iter().all(|r| r.last().is_some_and(One::is_one))
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(idx, r)| r[..idx].iter().all(Zero::is_zero) && r[idx].is_one())
    }

    /// Upper-left `n × n` block. For lower-triangular matrices this commutes
    /// with inversion and multiplication.
    pub fn leading(&self, n: usize) -> Self {
        Self {
            rows: self.rows[..n.min(self.dim())].to_vec(),
        }
    }

    pub fn mul(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.check_dim(other)?;
        Ok(Self::from_fn(self.dim(), |i, j| {
            (j..=i).map(|t| self.get(i, t) * other.get(t, j)).sum()
        }))
    }

    pub fn add_scaled(&mut self, other: &TriMatrix, factor: &BigInt) -> Result<()> {
        self.check_dim(other)?;
        for (r, o) in self.rows.iter_mut().zip(&other.rows) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y * factor;
            }
        }
        Ok(())
    }

    fn check_dim(&self, other: &TriMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// `A_n` with entries `s_{i,j} = [q^i] q^j/(1-q^j) (q;q)_∞`.
pub fn factorization_matrix(n: usize) -> Result<TriMatrix> {
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    let euler = euler_product(n);
    Ok(TriMatrix::from_fn(n, |i, j| s_entry_with(&euler, i, j)))
}

/// Exact inverse of a unit lower-triangular matrix by forward substitution,
/// verified against the identity before it is returned.
pub fn invert_unit_lower(m: &TriMatrix) -> Result<TriMatrix> {
    let inv = forward_substitution(m)?;
    if let Some((row, col)) = first_non_identity(&m.mul(&inv)?) {
        return Err(Error::InverseCheckFailed { row, col });
    }
    Ok(inv)
}

fn forward_substitution(m: &TriMatrix) -> Result<TriMatrix> {
    for (idx, r) in m.rows.iter().enumerate() {
        if !r[idx].is_one() {
            return Err(Error::NonUnitDiagonal {
                row: idx + 1,
                value: r[idx].clone(),
            });
        }
    }
    let n = m.dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = vec![BigInt::zero(); i];
        row[i - 1] = BigInt::one();
        // X[i][j] = -Σ_{t=j}^{i-1} M[i][t] X[t][j]
        for j in (1..i).rev() {
            let mut acc = BigInt::zero();
            for t in j..i {
                let mit = m.get(i, t);
                if !mit.is_zero() {
                    acc += mit * &rows[t - 1][j - 1];
                }
            }
            row[j - 1] = -acc;
        }
        rows.push(row);
    }
    Ok(TriMatrix { rows })
}

fn first_non_identity(m: &TriMatrix) -> Option<(usize, usize)> {
    for i in 1..=m.dim() {
        for j in 1..=i {
            let v = m.get(i, j);
            if (i == j && !v.is_one()) || (i != j && !v.is_zero()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Inverse entries from partition numbers and the Möbius function:
/// `s⁻¹(n, k) = Σ_{d|n} p(d - k) μ(n/d)`.
///
/// Holds the partition and Möbius tables up to a fixed bound so that whole
/// rows and sweeps can be evaluated cheaply; the value is shareable across
/// threads.
#[derive(Debug, Clone)]
pub struct DivisorSumInverse {
    partitions: PartitionTable,
    mu: Vec<i8>,
}

impl DivisorSumInverse {
    pub fn new(max_n: usize) -> Self {
        Self {
            partitions: partition_table(max_n),
            mu: arith::moebius_table(max_n),
        }
    }

    pub fn max_n(&self) -> usize {
        self.partitions.max_n()
    }

    pub fn partitions(&self) -> &PartitionTable {
        &self.partitions
    }

    pub fn moebius(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    fn check_bound(&self, n: u64) -> Result<()> {
        if n as usize > self.max_n() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds the table bound {}",
                self.max_n()
            )));
        }
        Ok(())
    }

    /// `s⁻¹(n, k)` for `1 <= k <= n`.
    pub fn entry(&self, n: u64, k: u64) -> Result<BigInt> {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { n, k });
        }
        self.entry_extended(n, k)
    }

    /// Like [`entry`](Self::entry) but also accepts `k = 0`, where the same
    /// divisor sum gives `Σ_{d|n} p(d) μ(n/d)`.
    pub fn entry_extended(&self, n: u64, k: u64) -> Result<BigInt> {
        if n == 0 || k > n {
            return Err(Error::IndexOutOfRange { n, k });
        }
        self.check_bound(n)?;
        let mut acc = BigInt::zero();
        for d in divisors(n)? {
            let mu = self.mu[(n / d) as usize];
            if mu == 0 || d < k {
                continue;
            }
            let p = self.partitions.get(d as i64 - k as i64);
            if mu > 0 {
                acc += p;
            } else {
                acc -= p;
            }
        }
        Ok(acc)
    }

    /// Row `n` of `A_n⁻¹`, columns `1..=n`.
    pub fn row(&self, n: u64) -> Result<Vec<BigInt>> {
        (1..=n).map(|k| self.entry(n, k)).collect()
    }

    /// `A_n⁻¹` assembled from divisor sums.
    pub fn matrix(&self, n: usize) -> Result<TriMatrix> {
        let rows = (1..=n as u64).map(|i| self.row(i)).collect::<Result<_>>()?;
        Ok(TriMatrix { rows })
    }
}

/// `s⁻¹(n, k)` via the partition/Möbius divisor sum.
pub fn inverse_entry_divisor_sum(n: u64, k: u64) -> Result<BigInt> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    DivisorSumInverse::new(n as usize).entry(n, k)
}

/// First column `s⁻¹(1,1), ..., s⁻¹(N,1)`.
pub fn first_column_sequence(max_n: u64) -> Result<Vec<BigInt>> {
    if max_n == 0 {
        return Err(Error::ZeroArgument { what: "N" });
    }
    let ctx = DivisorSumInverse::new(max_n as usize);
    (1..=max_n).map(|n| ctx.entry(n, 1)).collect()
}

/// First `n` with `Σ_{d|n} s⁻¹(d,1) != p(n-1)`, if any, over `1..=column.len()`.
pub fn first_column_inversion_failure(column: &[BigInt]) -> Option<u64> {
    let table = partition_table(column.len());
    (1..=column.len() as u64).find(|&n| {
        let sum: BigInt = divisors(n)
            .expect("n >= 1")
            .into_iter()
            .map(|d| &column[d as usize - 1])
            .sum();
        &sum != table.get(n as i64 - 1)
    })
}

/// Largest deviation of the three row/column recurrences for the inverse
/// entries over all `1 <= j <= n' <= n`:
///
/// ```text
/// s⁻¹(n,j) = δ - Σ_{k=1}^{n-j} s⁻¹(n, n+1-k) s(n+1-k, j)
///          = δ - Σ_{k=1}^{n-j} s(n, n-k) s⁻¹(n-k, j)
///          = δ - Σ_{k=1}^{n}   s(n, k-1) s⁻¹(k-1, j)
/// ```
///
/// Terms that reference index 0 are absent. Entries come from `A_n` and its
/// forward-substitution inverse.
pub fn recurrence_residuals(n: usize) -> Result<BigInt> {
    let a = factorization_matrix(n)?;
    let inv = invert_unit_lower(&a)?;
    Ok(recurrence_residuals_with(&a, &inv))
}

pub fn recurrence_residuals_with(a: &TriMatrix, inv: &TriMatrix) -> BigInt {
    let mut worst = BigInt::zero();
    for np in 1..=a.dim() {
        for j in 1..=np {
            let target = inv.get(np, j);
            let delta = if np == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            let first: BigInt = (1..=np - j)
                .map(|k| inv.get(np, np + 1 - k) * a.get(np + 1 - k, j))
                .sum();
            let second: BigInt = (1..=np - j)
                .map(|k| a.get(np, np - k) * inv.get(np - k, j))
                .sum();
            let third: BigInt = (1..=np).map(|k| a.get(np, k - 1) * inv.get(k - 1, j)).sum();
            for rhs in [&delta - first, &delta - second, &delta - third] {
                let r = (rhs - target).abs();
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    worst
}

/// The `m`-fold nested chain sum
///
/// ```text
/// Σ_m(i,j) = Σ_{k_1=j+2}^{i} Σ_{k_2=j+2}^{k_1-1} ... Σ_{k_m=j+2}^{k_{m-1}-1}
///            s(i, k_1-1) s(k_1-1, k_2-1) ... s(k_m-1, j)
/// ```
///
/// evaluated literally (no matrix powers). Void ranges give 0. `a` must be
/// `A_N` for some `N >= i`.
pub fn nested_sigma(a: &TriMatrix, m: usize, i: usize, j: usize) -> BigInt {
    fn level(a: &TriMatrix, prev: usize, depth: usize, j: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for k in (j + 2)..=prev {
            let head = a.get(prev, k - 1);
            if head.is_zero() {
                continue;
            }
            let tail = if depth == 1 {
                a.get(k - 1, j).clone()
            } else {
                level(a, k - 1, depth - 1, j)
            };
            acc += head * tail;
        }
        acc
    }
    if m == 0 || j == 0 || j > i {
        return BigInt::zero();
    }
    level(a, i, m, j)
}

/// `s⁻¹(i,j) = δ_{i,j} - s_{i,j} + Σ_1 - Σ_2 + ... + (-1)^{i+j+1} Σ_{i-j}`.
///
/// This is the Neumann series for `(I + N)⁻¹` with `N = A - I`, so the
/// `s_{i,j}` term is read from `N` and vanishes on the diagonal.
pub fn nested_formula_entry(a: &TriMatrix, i: usize, j: usize) -> BigInt {
    if j == 0 || j > i {
        return BigInt::zero();
    }
    if i == j {
        return BigInt::one();
    }
    let mut acc = -a.get(i, j).clone();
    for m in 1..=(i - j) {
        let term = nested_sigma(a, m, i, j);
        if m % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `A_n⁻¹ = Σ_{i=1}^{n-1} C(n-1, i) (-1)^{i+1} A_n^{i-1}` for `n >= 2`,
/// by repeated exact multiplication.
pub fn binomial_power_inverse(n: usize) -> Result<TriMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "the binomial power sum needs n >= 2, got {n}"
        )));
    }
    let a = factorization_matrix(n)?;
    let mut power = TriMatrix::identity(n);
    let mut acc = TriMatrix::zero(n);
    for i in 1..n {
        let mut c = binomial(n as i64 - 1, i as i64);
        if i % 2 == 0 {
            c = -c;
        }
        acc.add_scaled(&power, &c)?;
        power = power.mul(&a)?;
    }
    Ok(acc)
}

/// Extends `A_n⁻¹` to `A_{n+1}⁻¹` by computing only the new bottom row,
/// `-(s_{n+1,1}, ..., s_{n+1,n}) · A_n⁻¹`, followed by the diagonal 1.
pub fn block_extend_inverse(inv_n: &TriMatrix) -> TriMatrix {
    let n = inv_n.dim();
    let euler = euler_product(n + 1);
    let bottom_a: Vec<BigInt> = (1..=n).map(|t| s_entry_with(&euler, n + 1, t)).collect();
    let mut row: Vec<BigInt> = (1..=n)
        .map(|j| {
            let acc: BigInt = (j..=n).map(|t| &bottom_a[t - 1] * inv_n.get(t, j)).sum();
            -acc
        })
        .collect();
    row.push(BigInt::one());
    let mut rows = inv_n.rows.clone();
    rows.push(row);
    TriMatrix { rows }
}

/// The bottom row of `A_n⁻¹` without its diagonal 1:
/// `s⁻¹(n,1), s⁻¹(n,2), ..., s⁻¹(n,n-1)`.
///
/// The block-recursive labelling `r_{n,n-1}, ..., r_{n,1}` maps onto these
/// columns left to right, i.e. `r_{n,j} = s⁻¹(n, n-j)`.
pub fn bottom_row_sequence(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    let ctx = DivisorSumInverse::new(n as usize);
    (1..n).map(|k| ctx.entry(n, k)).collect()
}

/// Which experimental divisor-sum grid to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorSumVariant {
    /// `a'(n,k) = Σ_{d|n} s⁻¹(d,k)` with `s⁻¹` from matrix inversion.
    APrime,
    /// `a''(n,k) = Σ_{d|n} p(d-k) μ(n/d)`.
    ADoublePrime,
}

/// `grid[n-1][k-1]` for `1 <= n <= max_n`, `1 <= k <= max_k`.
pub fn divisor_sum_grid(
    variant: DivisorSumVariant,
    max_n: usize,
    max_k: usize,
) -> Result<Vec<Vec<BigInt>>> {
    if max_n == 0 || max_k == 0 {
        return Err(Error::InvalidParameter(
            "grid bounds must be positive".into(),
        ));
    }
    match variant {
        DivisorSumVariant::APrime => {
            let inv = invert_unit_lower(&factorization_matrix(max_n)?)?;
            Ok((1..=max_n as u64)
                .map(|n| {
                    (1..=max_k)
                        .map(|k| {
                            divisors(n)
                                .expect("n >= 1")
                                .into_iter()
                                .map(|d| inv.get(d as usize, k))
                                .sum()
                        })
                        .collect()
                })
                .collect())
        }
        DivisorSumVariant::ADoublePrime => {
            let ctx = DivisorSumInverse::new(max_n);
            (1..=max_n as u64)
                .map(|n| {
                    (1..=max_k as u64)
                        .map(|k| {
                            if k > n {
                                Ok(BigInt::zero())
                            } else {
                                ctx.entry(n, k)
                            }
                        })
                        .collect()
                })
                .collect()
        }
    }
}

/// `Σ_n s⁻¹(n,k) q^n/(1-q^n) - q^k/(q;q)_∞` to the given order, with the
/// inverse column read from `inv` (which must have dimension >= `order`).
pub fn inverse_column_lambert_residual(inv: &TriMatrix, k: usize, order: usize) -> IntSeries {
    let column: Vec<BigInt> = (1..=order).map(|n| inv.get(n, k).clone()).collect();
    let lhs = lambert_series(&column, LambertSign::Minus, order);
    let table = partition_table(order);
    let rhs = IntSeries::from_fn(order, |e| table.get(e as i64 - k as i64).clone());
    &lhs - &rhs
}

/// Shapes of `n` for which the inverse entries have a closed form in terms
/// of shifted partition numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialShape {
    /// `⌈n/2⌉ < k <= n`: `p(n-k)`.
    UpperHalf,
    /// `n` prime: `p(n-k) - δ_{1,k}`.
    Prime,
    /// `n = p²`: `p(n-k) - p(p-k)` for `k <= p`, else `p(n-k)`.
    PrimeSquare { p: u64 },
    /// `n = 2p`, `p` an odd prime (three-piece form).
    TwiceOddPrime { p: u64 },
    /// `n = q·r` with `q < r` distinct primes:
    /// `δ_{1,k} - p(q-k) - p(r-k) + p(qr-k)`.
    PrimeProduct { q: u64, r: u64 },
}

/// Every special shape that applies to `(n, k)`, in dispatch order.
pub fn applicable_shapes(n: u64, k: u64) -> Vec<SpecialShape> {
    let mut out = Vec::new();
    if n == 0 || k == 0 || k > n {
        return out;
    }
    if k > n.div_ceil(2) {
        out.push(SpecialShape::UpperHalf);
    }
    if is_prime(n) {
        out.push(SpecialShape::Prime);
    }
    let fm = arith::factorize(n).expect("n >= 1");
    match fm.pairs() {
        [(p, 2)] => out.push(SpecialShape::PrimeSquare { p: *p }),
        [(q, 1), (r, 1)] => {
            if *q == 2 {
                out.push(SpecialShape::TwiceOddPrime { p: *r });
            }
            out.push(SpecialShape::PrimeProduct { q: *q, r: *r });
        }
        _ => {}
    }
    out
}

/// Evaluates the closed form for `shape` at `(n, k)`.
pub fn special_form_value(shape: SpecialShape, n: u64, k: u64, table: &PartitionTable) -> BigInt {
    let p = |x: u64| table.get(x as i64 - k as i64).clone();
    let delta1 = if k == 1 {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    match shape {
        SpecialShape::UpperHalf => p(n),
        SpecialShape::Prime => p(n) - delta1,
        SpecialShape::PrimeSquare { p: q } => {
            if k <= q {
                p(n) - p(q)
            } else {
                p(n)
            }
        }
        SpecialShape::TwiceOddPrime { p: q } => {
            if k <= 2 {
                p(n) - p(q) - p(2) + delta1
            } else if k <= q {
                p(n) - p(q)
            } else {
                p(n)
            }
        }
        SpecialShape::PrimeProduct { q, r } => delta1 - p(q) - p(r) + p(q * r),
    }
}

/// The product form `δ_{1,k} - p(q-k) - p(r-k) + p(qr-k)` for arbitrary
/// coprime `q, r`. It agrees with the divisor sum when `q` and `r` are
/// distinct primes but not in general (e.g. `q = 3, r = 4`).
pub fn coprime_product_form(q: u64, r: u64, k: u64, table: &PartitionTable) -> Result<BigInt> {
    if arith::gcd(q, r) != 1 {
        return Err(Error::NotCoprime { q, r });
    }
    let p = |x: u64| table.get(x as i64 - k as i64).clone();
    let delta1 = if k == 1 {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    Ok(delta1 - p(q) - p(r) + p(q * r))
}

/// `s⁻¹(n,k)` from the first applicable closed form.
pub fn inverse_entry_special(n: u64, k: u64, table: &PartitionTable) -> Result<BigInt> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let shape = applicable_shapes(n, k)
        .into_iter()
        .next()
        .ok_or(Error::NoSpecialForm { n, k })?;
    Ok(special_form_value(shape, n, k, table))
}
