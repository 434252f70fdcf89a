//! Truncated power series in `q` with big-integer coefficients, plus the
//! pentagonal-number machinery built on top of them.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A power series `c_0 + c_1 q + ... + c_N q^N` truncated at order `N`.
///
/// The coefficient vector always has exactly `N + 1` entries. Binary
/// operators require both operands to have the same order and panic
/// otherwise; [`series_mul`] is the checked form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    /// `coeff * q^exp`, or the zero series if `exp` exceeds `order`.
    pub fn monomial(exp: usize, coeff: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// Builds a series from its coefficient list; the order is `len - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeff_mut(&mut self, i: usize) -> &mut BigInt {
        &mut self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowers the truncation order; never raises it.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    /// Multiplies in place by `1 + sign·q^n`, the kind of sparse factor
    /// every product formula here is built from.
    pub fn mul_binomial_factor(&mut self, n: usize, sign: i32) {
        if n == 0 {
            for c in &mut self.coeffs {
                *c *= 1 + sign;
            }
            return;
        }
        for i in (n..self.coeffs.len()).rev() {
            let shifted = self.coeffs[i - n].clone();
            if sign >= 0 {
                self.coeffs[i] += shifted;
            } else {
                self.coeffs[i] -= shifted;
            }
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_order(&self, other: &IntSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }
}

/// Truncated Cauchy product of two series of equal order.
pub fn series_mul(a: &IntSeries, b: &IntSeries) -> Result<IntSeries> {
    a.check_order(b)?;
    let n = a.order();
    let mut out = IntSeries::zero(n);
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=n - i].iter().enumerate() {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    Ok(out)
}

/// Multiplicative inverse of a series whose constant term is `±1`.
pub fn series_reciprocal(a: &IntSeries) -> Result<IntSeries> {
    let a0 = a.coeff(0).clone();
    if !(a0.is_one() || (-&a0).is_one()) {
        return Err(Error::NonUnitConstant(a0));
    }
    let n = a.order();
    let mut out = IntSeries::zero(n);
    // 1/a0 == a0 for a0 = ±1.
    out.coeffs[0] = a0.clone();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let ai = &a.coeffs[i];
            if !ai.is_zero() {
                acc += ai * &out.coeffs[k - i];
            }
        }
        out.coeffs[k] = -(acc * &a0);
    }
    Ok(out)
}

impl Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        self.check_order(rhs).expect("series order mismatch");
        IntSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        self.check_order(rhs).expect("series order mismatch");
        IntSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, rhs: &IntSeries) -> IntSeries {
        series_mul(self, rhs).expect("series order mismatch")
    }
}

impl Neg for &IntSeries {
    type Output = IntSeries;
    fn neg(self) -> IntSeries {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// The generalized pentagonal number G_j = ⌈j/2⌉·⌈(3j+1)/2⌉ / 2.
///
/// For `j = 2k-1` this is `k(3k-1)/2`, for `j = 2k` it is `k(3k+1)/2`.
pub fn pentagonal_g(j: u64) -> u64 {
    let a = j.div_ceil(2);
    let b = (3 * j + 1).div_ceil(2);
    a * b / 2
}

/// The sign `(-1)^⌈j/2⌉` attached to `q^{G_j}` in the pentagonal theorem.
pub fn pentagonal_sign(j: u64) -> i32 {
    if j.div_ceil(2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(j, G_j, sign)` for every `j >= 0` with `G_j <= max`, in increasing `j`.
pub fn pentagonal_terms(max: u64) -> impl Iterator<Item = (u64, u64, i32)> {
    (0u64..)
        .map(|j| (j, pentagonal_g(j), pentagonal_sign(j)))
        .take_while(move |&(_, g, _)| g <= max)
}

/// `(q; q)_∞` to order `order`, from the sparse pentagonal expansion.
pub fn euler_product(order: usize) -> IntSeries {
    let mut s = IntSeries::zero(order);
    for (_, g, sign) in pentagonal_terms(order as u64) {
        s.coeffs[g as usize] += sign;
    }
    s
}

/// `Π_{n=1}^{order} (1 - q^n)` multiplied out factor by factor.
pub fn euler_product_direct(order: usize) -> IntSeries {
    let mut s = IntSeries::one(order);
    for n in 1..=order {
        s.mul_binomial_factor(n, -1);
    }
    s
}

/// `(-q; q)_∞ = Π (1 + q^n)`; coefficient `n` counts partitions into distinct parts.
pub fn neg_q_pochhammer(order: usize) -> IntSeries {
    let mut s = IntSeries::one(order);
    for n in 1..=order {
        s.mul_binomial_factor(n, 1);
    }
    s
}

/// `q^j / (1 - q^j) = q^j + q^{2j} + ...` truncated at `order`.
pub fn geometric_slice(j: usize, order: usize) -> Result<IntSeries> {
    if j == 0 {
        return Err(Error::ZeroArgument { what: "j" });
    }
    let mut s = IntSeries::zero(order);
    for e in (j..=order).step_by(j) {
        s.coeffs[e] = BigInt::one();
    }
    Ok(s)
}

/// `s_{i,j} = [q^i] q^j/(1-q^j) · (q;q)_∞`, the entries of the factorization
/// matrix.
///
/// This generator fixes the sign convention: it has `s_{i,i} = 1` and agrees
/// with `s_o(i,j) - s_e(i,j)` from the distinct-partition counts. Indices
/// that are zero, and entries above the diagonal, are 0.
pub fn s_entry(i: u64, j: u64) -> BigInt {
    if i == 0 || j == 0 || j > i {
        return BigInt::zero();
    }
    let euler = euler_product(i as usize);
    s_entry_with(&euler, i as usize, j as usize)
}

/// [`s_entry`] reading `(q;q)_∞` coefficients from a precomputed series of
/// order at least `i`.
pub(crate) fn s_entry_with(euler: &IntSeries, i: usize, j: usize) -> BigInt {
    if i == 0 || j == 0 || j > i {
        return BigInt::zero();
    }
    (1..=i / j).map(|m| euler.coeff(i - j * m)).sum()
}

/// Denominator sign of a Lambert series: `1 - q^n` or `1 + q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambertSign {
    Minus,
    Plus,
}

/// Coefficients `b_1..b_N` of `Σ a_n q^n / (1 ∓ q^n)` by divisor sums.
///
/// `a[0]` holds `a_1`. For [`LambertSign::Plus`] each divisor contributes
/// with sign `(-1)^{m/d - 1}`.
pub fn lambert_coefficients(a: &[BigInt], sign: LambertSign) -> Vec<BigInt> {
    let n = a.len();
    let mut b = vec![BigInt::zero(); n];
    for d in 1..=n {
        let ad = &a[d - 1];
        if ad.is_zero() {
            continue;
        }
        for (t, m) in (d..=n).step_by(d).enumerate() {
            if sign == LambertSign::Plus && t % 2 == 1 {
                b[m - 1] -= ad;
            } else {
                b[m - 1] += ad;
            }
        }
    }
    b
}

/// `Σ_{n=1}^{N} a_n q^n / (1 ∓ q^n)` expanded with series arithmetic
/// (reciprocal of each denominator), truncated at `order`.
pub fn lambert_series(a: &[BigInt], sign: LambertSign, order: usize) -> IntSeries {
    let mut total = IntSeries::zero(order);
    for (idx, an) in a.iter().enumerate().take(order) {
        let n = idx + 1;
        if an.is_zero() {
            continue;
        }
        let mut denom = IntSeries::one(order);
        denom.mul_binomial_factor(n, if sign == LambertSign::Minus { -1 } else { 1 });
        let inv = series_reciprocal(&denom).expect("constant term is 1");
        let term = &IntSeries::monomial(n, an.clone(), order) * &inv;
        total = &total + &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntSeries {
        IntSeries::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn pentagonal_sequence() {
        let g: Vec<u64> = (0..12).map(pentagonal_g).collect();
        assert_eq!(g, [0, 1, 2, 5, 7, 12, 15, 22, 26, 35, 40, 51]);
        let signs: Vec<i32> = (0..5).map(pentagonal_sign).collect();
        assert_eq!(signs, [1, -1, -1, 1, 1]);
    }

    #[test]
    fn euler_product_examples() {
        assert_eq!(euler_product(5), ints(&[1, -1, -1, 0, 0, 1]));
        assert_eq!(euler_product(0), ints(&[1]));
        let e12 = euler_product(12);
        assert_eq!(e12.coeff(12), &BigInt::from(-1));
        assert_eq!(e12.coeff(7), &BigInt::one());
    }

    #[test]
    fn sparse_matches_dense_product() {
        for n in 0..=200 {
            assert_eq!(euler_product(n), euler_product_direct(n), "order {n}");
        }
    }

    #[test]
    fn distinct_parts_series() {
        assert_eq!(neg_q_pochhammer(6), ints(&[1, 1, 1, 2, 2, 3, 4]));
        assert_eq!(neg_q_pochhammer(0), ints(&[1]));
        // (q;q)(-q;q) = (q^2;q^2): only even exponents survive.
        let prod = &euler_product(40) * &neg_q_pochhammer(40);
        let mut even = IntSeries::one(40);
        for n in 1..=20 {
            even.mul_binomial_factor(2 * n, -1);
        }
        assert_eq!(prod, even);
    }

    #[test]
    fn reciprocal_and_identity() {
        let x = ints(&[3, -1, 4, 1, -5]);
        assert_eq!(&x * &IntSeries::one(4), x);
        let one_minus_q = ints(&[1, -1, 0, 0, 0, 0]);
        let geo = ints(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(&one_minus_q * &geo, IntSeries::one(5));
        let neg = ints(&[-1, 2, 0, 7]);
        assert_eq!(&neg * &series_reciprocal(&neg).unwrap(), IntSeries::one(3));
        assert_eq!(
            series_reciprocal(&ints(&[2, 1])),
            Err(Error::NonUnitConstant(BigInt::from(2)))
        );
        assert!(series_mul(&ints(&[1]), &ints(&[1, 1])).is_err());
    }

    #[test]
    fn geometric_slices() {
        assert_eq!(geometric_slice(1, 3).unwrap(), ints(&[0, 1, 1, 1]));
        assert_eq!(geometric_slice(2, 5).unwrap(), ints(&[0, 0, 1, 0, 1, 0]));
        assert_eq!(
            geometric_slice(7, 7).unwrap(),
            IntSeries::monomial(7, BigInt::one(), 7)
        );
        assert!(geometric_slice(0, 3).is_err());
    }

    #[test]
    fn s_entry_examples() {
        assert_eq!(s_entry(1, 1), BigInt::one());
        assert_eq!(s_entry(2, 1), BigInt::zero());
        assert_eq!(s_entry(3, 1), BigInt::from(-1));
        assert_eq!(s_entry(3, 2), BigInt::from(-1));
        assert_eq!(s_entry(4, 9), BigInt::zero());
        for i in 1..=30 {
            assert_eq!(s_entry(i, i), BigInt::one());
            // Same value via explicit series multiplication.
            let order = i as usize;
            for j in 1..=i {
                let g = &geometric_slice(j as usize, order).unwrap() * &euler_product(order);
                assert_eq!(g.coeff(order), &s_entry(i, j));
            }
        }
    }

    #[test]
    fn lambert_coefficient_examples() {
        let n = 40;
        let mu: Vec<BigInt> = (1..=n)
            .map(|k| BigInt::from(crate::arith::moebius(k).unwrap()))
            .collect();
        let b = lambert_coefficients(&mu, LambertSign::Minus);
        assert_eq!(b[0], BigInt::one());
        assert!(b[1..].iter().all(Zero::is_zero));

        let id: Vec<BigInt> = (1..=n).map(BigInt::from).collect();
        assert_eq!(
            lambert_coefficients(&id, LambertSign::Minus)[5],
            BigInt::from(12)
        );

        let lam: Vec<BigInt> = (1..=n)
            .map(|k| BigInt::from(crate::arith::liouville(k).unwrap()))
            .collect();
        let b = lambert_coefficients(&lam, LambertSign::Minus);
        assert_eq!(b[8], BigInt::one());
        assert_eq!(b[7], BigInt::zero());

        for sign in [LambertSign::Minus, LambertSign::Plus] {
            for a in [&mu, &id, &lam] {
                let series = lambert_series(a, sign, n as usize);
                let b = lambert_coefficients(a, sign);
                assert_eq!(&series.coeffs()[1..], &b[..]);
                assert!(series.coeff(0).is_zero());
            }
        }
    }
}
