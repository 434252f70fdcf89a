//! Lambert series factorization: recovering `a_n` from the divisor sums
//! `b_n = Σ_{d|n} a_d` through pentagonal corrections and the inverse
//! factorization matrices, plus the surrounding family of identities.
//!
//! The reconstruction is
//!
//! ```text
//! a_n = Σ_{m=0}^{n-1} s⁻¹(n, m+1) · B_{b,m},
//! B_{b,m} = b_{m+1} - Σ_{s=±1} Σ_{k=1}^{⌊(√(24m+1)-s)/6⌋} (-1)^{k+1} b_{m+1-k(3k+s)/2}.
//! ```
//!
//! Values are generic over [`LambertValue`] so the same code handles integer
//! pairs and the von Mangoldt pair, whose values are [`FormalLog`]s.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Pow, Zero};

use crate::arith::{self, binomial, divisors};
use crate::error::{Error, Result};
use crate::formal_log::FormalLog;
use crate::matrices::DivisorSumInverse;
use crate::partitions::{distinct_partition_stats_row, parts_count_stats, PartitionTable};
use crate::qseries::{
    euler_product, lambert_series, neg_q_pochhammer, pentagonal_terms, s_entry_with,
    series_reciprocal, IntSeries, LambertSign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Integer,
    FormalLog,
}

/// Values an arithmetic function in a Lambert pair may take: an additive
/// group with multiplication by integers.
pub trait LambertValue:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: ValueKind;
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&mut self, other: &Self);
    fn sub_ref(&mut self, other: &Self);
    fn scaled(&self, factor: &BigInt) -> Self;
}

impl LambertValue for BigInt {
    const KIND: ValueKind = ValueKind::Integer;
    fn zero_value() -> Self {
        BigInt::ZERO
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn scaled(&self, factor: &BigInt) -> Self {
        self * factor
    }
}

impl LambertValue for FormalLog {
    const KIND: ValueKind = ValueKind::FormalLog;
    fn zero_value() -> Self {
        FormalLog::zero()
    }
    fn is_zero_value(&self) -> bool {
        FormalLog::is_zero(self)
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn scaled(&self, factor: &BigInt) -> Self {
        self.scale(factor)
    }
}

type ArithFn<V> = Arc<dyn Fn(u64) -> V + Send + Sync>;

/// An arithmetic function `a` together with its divisor-sum transform `b`.
#[derive(Clone)]
pub struct LambertPair<V> {
    name: String,
    a: ArithFn<V>,
    b: ArithFn<V>,
}

impl<V> fmt::Debug for LambertPair<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LambertPair")
            .field("name", &self.name)
            .finish()
    }
}

/// How far built-in pairs are checked on construction.
pub const DEFAULT_CHECK_BOUND: u64 = 64;

impl<V: LambertValue> LambertPair<V> {
    /// Wraps `a` and `b` without checking them. `a` and `b` are only ever
    /// called with arguments >= 1.
    pub fn new(
        name: impl Into<String>,
        a: impl Fn(u64) -> V + Send + Sync + 'static,
        b: impl Fn(u64) -> V + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            a: Arc::new(a),
            b: Arc::new(b),
        }
    }

    /// Like [`new`](Self::new), but rejects the pair unless
    /// `b(n) = Σ_{d|n} a(d)` for every `n <= bound`.
    pub fn checked(
        name: impl Into<String>,
        a: impl Fn(u64) -> V + Send + Sync + 'static,
        b: impl Fn(u64) -> V + Send + Sync + 'static,
        bound: u64,
    ) -> Result<Self> {
        let pair = Self::new(name, a, b);
        pair.verify(bound)?;
        Ok(pair)
    }

    /// A pair whose `b` is the divisor sum of the given `a`.
    pub fn from_a(name: impl Into<String>, a: impl Fn(u64) -> V + Send + Sync + 'static) -> Self {
        let a: ArithFn<V> = Arc::new(a);
        let a2 = Arc::clone(&a);
        Self {
            name: name.into(),
            a,
            b: Arc::new(move |n| {
                let mut acc = V::zero_value();
                for d in divisors(n).expect("n >= 1") {
                    acc.add_ref(&a2(d));
                }
                acc
            }),
        }
    }

    pub fn verify(&self, bound: u64) -> Result<()> {
        for n in 1..=bound {
            let mut sum = V::zero_value();
            for d in divisors(n)? {
                sum.add_ref(&self.a(d));
            }
            if sum != self.b(n as i64) {
                return Err(Error::PairMismatch {
                    name: self.name.clone(),
                    n,
                });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ValueKind {
        V::KIND
    }

    /// `a(n)`; zero for `n = 0`.
    pub fn a(&self, n: u64) -> V {
        if n == 0 {
            V::zero_value()
        } else {
            (self.a)(n)
        }
    }

    /// `b(n)`; zero for `n <= 0`, which every pentagonal shift relies on.
    pub fn b(&self, n: i64) -> V {
        if n <= 0 {
            V::zero_value()
        } else {
            (self.b)(n as u64)
        }
    }
}

fn int(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

impl LambertPair<BigInt> {
    /// `(μ(n), [n = 1])`.
    pub fn moebius() -> Self {
        Self::new(
            "mu",
            |n| int(arith::moebius(n).expect("n >= 1")),
            |n| int(u8::from(n == 1)),
        )
    }

    /// `(φ(n), n)`.
    pub fn phi() -> Self {
        Self::new("phi", |n| int(arith::euler_phi(n).expect("n >= 1")), int)
    }

    /// `(λ(n), [n is a square])`.
    pub fn liouville() -> Self {
        Self::new(
            "lambda",
            |n| int(arith::liouville(n).expect("n >= 1")),
            |n| int(u8::from(arith::is_positive_square(n))),
        )
    }

    /// `(|μ(n)|, 2^ω(n))`.
    pub fn abs_moebius() -> Self {
        Self::new(
            "abs_mu",
            |n| int(arith::abs_moebius(n).expect("n >= 1")),
            |n| BigInt::one() << arith::omega_distinct(n).expect("n >= 1"),
        )
    }

    /// `(J_t(n), n^t)`.
    pub fn jordan(t: u32) -> Self {
        Self::new(
            format!("jordan_{t}"),
            move |n| arith::jordan_totient(n, t).expect("n >= 1"),
            move |n| Pow::pow(BigInt::from(n), t),
        )
    }

    /// `(n^α, σ_α(n))`.
    pub fn power(alpha: u32) -> Self {
        Self::new(
            format!("power_{alpha}"),
            move |n| Pow::pow(BigInt::from(n), alpha),
            move |n| arith::sigma_alpha(n, alpha).expect("n >= 1"),
        )
    }

    /// The six integer-valued built-ins used by the verification sweeps.
    pub fn builtins() -> Vec<Self> {
        vec![
            Self::phi(),
            Self::moebius(),
            Self::liouville(),
            Self::abs_moebius(),
            Self::jordan(2),
            Self::jordan(3),
        ]
    }
}

impl LambertPair<FormalLog> {
    /// `(Λ(n), log n)` in exact formal-log arithmetic.
    pub fn von_mangoldt() -> Self {
        Self::new(
            "Lambda",
            |n| arith::von_mangoldt_formal(n).expect("n >= 1"),
            |n| arith::log_formal(n).expect("n >= 1"),
        )
    }
}

/// Largest `k >= 0` with `⌊(√radicand - s)/6⌋ >= k`, computed with an exact
/// integer square root: `6k + s <= √radicand` iff `6k + s <= isqrt(radicand)`.
pub fn pentagonal_bound(radicand: u64, s: i64) -> u64 {
    let r = radicand.sqrt() as i64;
    if r < s {
        0
    } else {
        ((r - s) / 6) as u64
    }
}

fn pentagonal_shift(k: u64, s: i64) -> i64 {
    let k = k as i64;
    k * (3 * k + s) / 2
}

/// `B_{b,m}` exactly as written: `b_{m+1}` minus the two bounded
/// pentagonal sums.
pub fn correction_generic<V: LambertValue>(pair: &LambertPair<V>, m: u64) -> V {
    let top = m as i64 + 1;
    let mut acc = pair.b(top);
    for s in [1i64, -1] {
        for k in 1..=pentagonal_bound(24 * m + 1, s) {
            let term = pair.b(top - pentagonal_shift(k, s));
            // Subtracting (-1)^{k+1} term.
            if k % 2 == 1 {
                acc.sub_ref(&term);
            } else {
                acc.add_ref(&term);
            }
        }
    }
    acc
}

/// `B_{b,m}` as `Σ_{j>=0} (-1)^{⌈j/2⌉} b(m + 1 - G_j)`, i.e. the `q^{m+1}`
/// coefficient of `(q;q)_∞ Σ b_n q^n`.
pub fn correction_pentagonal<V: LambertValue>(pair: &LambertPair<V>, m: u64) -> V {
    let mut acc = V::zero_value();
    for (_, g, sign) in pentagonal_terms(m) {
        let term = pair.b(m as i64 + 1 - g as i64);
        if sign > 0 {
            acc.add_ref(&term);
        } else {
            acc.sub_ref(&term);
        }
    }
    acc
}

/// `B_{b,0..n-1}` for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionVector<V> {
    name: String,
    values: Vec<V>,
}

impl<V: LambertValue> CorrectionVector<V> {
    pub fn new(pair: &LambertPair<V>, n: usize) -> Self {
        Self {
            name: pair.name().to_owned(),
            values: (0..n as u64).map(|m| correction_generic(pair, m)).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }
}

/// The arithmetic functions with printed closed forms for their corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialFunction {
    Phi,
    Mu,
    Liouville,
    VonMangoldt,
    AbsMu,
    Jordan(u32),
}

impl SpecialFunction {
    /// Parses the CLI names `phi, mu, lambda, Lambda, abs_mu, jordan`;
    /// `jordan` needs `t`.
    pub fn parse(name: &str, t: Option<u32>) -> Result<Self> {
        Ok(match name {
            "phi" => Self::Phi,
            "mu" => Self::Mu,
            "lambda" => Self::Liouville,
            "Lambda" => Self::VonMangoldt,
            "abs_mu" => Self::AbsMu,
            "jordan" => Self::Jordan(
                t.ok_or_else(|| Error::InvalidParameter("jordan needs a value for t".into()))?,
            ),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown function '{other}' (expected phi, mu, lambda, Lambda, abs_mu, jordan)"
                )))
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Phi => "phi".into(),
            Self::Mu => "mu".into(),
            Self::Liouville => "lambda".into(),
            Self::VonMangoldt => "Lambda".into(),
            Self::AbsMu => "abs_mu".into(),
            Self::Jordan(t) => format!("jordan_{t}"),
        }
    }

    /// The integer-valued pair for this function; `None` for Λ.
    pub fn int_pair(&self) -> Option<LambertPair<BigInt>> {
        Some(match *self {
            Self::Phi => LambertPair::phi(),
            Self::Mu => LambertPair::moebius(),
            Self::Liouville => LambertPair::liouville(),
            Self::AbsMu => LambertPair::abs_moebius(),
            Self::Jordan(t) => LambertPair::jordan(t),
            Self::VonMangoldt => return None,
        })
    }
}

/// An exact value of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithValue {
    Int(BigInt),
    Log(FormalLog),
}

impl fmt::Display for ArithValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithValue::Int(v) => write!(f, "{v}"),
            ArithValue::Log(v) => write!(f, "{v}"),
        }
    }
}

fn sign_k(k: u64) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `b(m+1) - Σ_{s=±1} Σ_k (-1)^{k+1} b(m+1-k(3k+s)/2)` for a closure `b`,
/// the shape shared by the λ, Λ, |μ| and J_t closed forms.
fn printed_shifted_sum<V: LambertValue>(m: u64, b: impl Fn(u64) -> V) -> V {
    let top = m + 1;
    let mut acc = b(top);
    for s in [1i64, -1] {
        for k in 1..=pentagonal_bound(24 * m + 1, s) {
            let term = b((top as i64 - pentagonal_shift(k, s)) as u64);
            if k % 2 == 1 {
                acc.sub_ref(&term);
            } else {
                acc.add_ref(&term);
            }
        }
    }
    acc
}

/// The closed form for `B_{φ,m}`:
///
/// ```text
/// m + 1 - (8 - 5(-1)^{u1} - 4(-2 + (-1)^{u1} + (-1)^{u2}) m
///          + 2(-1)^{u1} u1 (3u1 + 2) + (-1)^{u2} (6u2² + 8u2 - 3)) / 8
/// ```
///
/// with `u1 = ⌊(√(24m+1)+1)/6⌋` and `u2 = ⌊(√(24m+1)-1)/6⌋`. The bracket must
/// be divisible by 8.
pub fn correction_phi_closed_form(m: u64) -> Result<BigInt> {
    let u1 = pentagonal_bound(24 * m + 1, -1) as i128;
    let u2 = pentagonal_bound(24 * m + 1, 1) as i128;
    let e1: i128 = if u1 % 2 == 0 { 1 } else { -1 };
    let e2: i128 = if u2 % 2 == 0 { 1 } else { -1 };
    let m_ = m as i128;
    let numerator = 8 - 5 * e1 - 4 * (-2 + e1 + e2) * m_
        + 2 * e1 * u1 * (3 * u1 + 2)
        + e2 * (6 * u2 * u2 + 8 * u2 - 3);
    if numerator % 8 != 0 {
        return Err(Error::NonIntegral { m, numerator });
    }
    Ok(BigInt::from(m_ + 1 - numerator / 8))
}

/// The closed form for `B_{μ,m}`:
/// `[m = 0] + Σ_{b=±1} Σ_{k=1}^{⌊(√(24m+25)-b)/6⌋} (-1)^k [m + 1 - k(3k+b)/2 = 1]`.
pub fn correction_mu_closed_form(m: u64) -> BigInt {
    let mut acc = BigInt::from(u8::from(m == 0));
    for b in [1i64, -1] {
        for k in 1..=pentagonal_bound(24 * m + 25, b) {
            if m as i64 + 1 - pentagonal_shift(k, b) == 1 {
                acc += sign_k(k);
            }
        }
    }
    acc
}

/// `B_{f,m}` from the printed closed form for `f`.
pub fn correction_special(f: SpecialFunction, m: u64) -> Result<ArithValue> {
    let n1 = |n: u64| n; // readability in the closures below
    Ok(match f {
        SpecialFunction::Phi => ArithValue::Int(correction_phi_closed_form(m)?),
        SpecialFunction::Mu => ArithValue::Int(correction_mu_closed_form(m)),
        SpecialFunction::Liouville => ArithValue::Int(printed_shifted_sum(m, |n| {
            int(u8::from(arith::is_positive_square(n1(n))))
        })),
        SpecialFunction::VonMangoldt => ArithValue::Log(printed_shifted_sum(m, |n| {
            arith::log_formal(n).expect("shifted index >= 1")
        })),
        SpecialFunction::AbsMu => ArithValue::Int(printed_shifted_sum(m, |n| {
            BigInt::one() << arith::omega_distinct(n).expect("shifted index >= 1")
        })),
        SpecialFunction::Jordan(t) => {
            ArithValue::Int(printed_shifted_sum(m, |n| Pow::pow(BigInt::from(n), t)))
        }
    })
}

/// `a_1, ..., a_n` recovered from the pair's `b` values only:
/// `a_i = Σ_{m=0}^{i-1} s⁻¹(i, m+1) B_{b,m}` with divisor-sum inverse entries.
pub fn recover_a<V: LambertValue>(pair: &LambertPair<V>, n: usize) -> Result<Vec<V>> {
    recover_a_with(pair, n, &DivisorSumInverse::new(n))
}

pub fn recover_a_with<V: LambertValue>(
    pair: &LambertPair<V>,
    n: usize,
    ctx: &DivisorSumInverse,
) -> Result<Vec<V>> {
    let corrections = CorrectionVector::new(pair, n);
    recover_from_corrections(corrections.values(), ctx)
}

/// Applies `A_n⁻¹` (as divisor sums) to a correction vector `B_0..B_{n-1}`.
pub fn recover_from_corrections<V: LambertValue>(
    corrections: &[V],
    ctx: &DivisorSumInverse,
) -> Result<Vec<V>> {
    (1..=corrections.len() as u64)
        .map(|i| recover_single(corrections, i, ctx))
        .collect()
}

/// `a_i` alone, from the first `i` corrections.
pub fn recover_single<V: LambertValue>(
    corrections: &[V],
    i: u64,
    ctx: &DivisorSumInverse,
) -> Result<V> {
    let mut acc = V::zero_value();
    for m in 0..i {
        let coeff = ctx.entry(i, m + 1)?;
        if !Zero::is_zero(&coeff) {
            acc.add_ref(&corrections[m as usize].scaled(&coeff));
        }
    }
    Ok(acc)
}

/// `a_n` of a built-in function through its closed-form corrections.
pub fn evaluate_by_partitions(f: SpecialFunction, n: u64) -> Result<ArithValue> {
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    let ctx = DivisorSumInverse::new(n as usize);
    match f {
        SpecialFunction::VonMangoldt => {
            let b: Vec<FormalLog> = (0..n)
                .map(|m| match correction_special(f, m) {
                    Ok(ArithValue::Log(v)) => Ok(v),
                    Ok(ArithValue::Int(_)) => unreachable!("Lambda corrections are formal logs"),
                    Err(e) => Err(e),
                })
                .collect::<Result<_>>()?;
            recover_single(&b, n, &ctx).map(ArithValue::Log)
        }
        _ => {
            let b: Vec<BigInt> = (0..n)
                .map(|m| match correction_special(f, m)? {
                    ArithValue::Int(v) => Ok(v),
                    ArithValue::Log(_) => unreachable!("integer function"),
                })
                .collect::<Result<_>>()?;
            recover_single(&b, n, &ctx).map(ArithValue::Int)
        }
    }
}

/// `a_n` evaluated directly from its definition.
pub fn evaluate_direct(f: SpecialFunction, n: u64) -> Result<ArithValue> {
    Ok(match f {
        SpecialFunction::Phi => ArithValue::Int(int(arith::euler_phi(n)?)),
        SpecialFunction::Mu => ArithValue::Int(int(arith::moebius(n)?)),
        SpecialFunction::Liouville => ArithValue::Int(int(arith::liouville(n)?)),
        SpecialFunction::VonMangoldt => ArithValue::Log(arith::von_mangoldt_formal(n)?),
        SpecialFunction::AbsMu => ArithValue::Int(int(arith::abs_moebius(n)?)),
        SpecialFunction::Jordan(t) => ArithValue::Int(arith::jordan_totient(n, t)?),
    })
}

/// `Σ_{k=1}^{n} Σ_{j=0}^{k-1} p(n-k) (-1)^{⌈j/2⌉} b(k - G_j) - b_n`.
pub fn b_double_recurrence_check<V: LambertValue>(
    pair: &LambertPair<V>,
    n: u64,
    table: &PartitionTable,
) -> V {
    let mut rhs = V::zero_value();
    for k in 1..=n {
        let p = table.get((n - k) as i64);
        if Zero::is_zero(p) {
            continue;
        }
        let mut inner = V::zero_value();
        for j in 0..k {
            let g = crate::qseries::pentagonal_g(j);
            let term = pair.b(k as i64 - g as i64);
            if crate::qseries::pentagonal_sign(j) > 0 {
                inner.add_ref(&term);
            } else {
                inner.sub_ref(&term);
            }
        }
        rhs.add_ref(&inner.scaled(p));
    }
    rhs.sub_ref(&pair.b(n as i64));
    rhs
}

/// Both sides of `b_n = Σ_{j=0}^{n} (-1)^{⌈j/2⌉} b_{n-G_j}` as literally
/// written, plus the factorization coefficient `Σ_k s_{n,k} a_k` that the
/// right-hand side actually equals.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonalReport<V> {
    pub lhs: V,
    pub rhs: V,
    pub factor_sum: V,
}

impl<V: LambertValue> PentagonalReport<V> {
    /// Whether the identity holds as printed (it generally does not: the
    /// `j = 0` term already is `b_n`).
    pub fn printed_holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn corrected_holds(&self) -> bool {
        self.rhs == self.factor_sum
    }
}

pub fn b_pentagonal_identity_check<V: LambertValue>(
    pair: &LambertPair<V>,
    n: u64,
) -> PentagonalReport<V> {
    let mut rhs = V::zero_value();
    for j in 0..=n {
        let g = crate::qseries::pentagonal_g(j);
        let term = pair.b(n as i64 - g as i64);
        if crate::qseries::pentagonal_sign(j) > 0 {
            rhs.add_ref(&term);
        } else {
            rhs.sub_ref(&term);
        }
    }
    let euler = euler_product(n as usize);
    let mut factor_sum = V::zero_value();
    for k in 1..=n {
        let s = s_entry_with(&euler, n as usize, k as usize);
        if !Zero::is_zero(&s) {
            factor_sum.add_ref(&pair.a(k).scaled(&s));
        }
    }
    PentagonalReport {
        lhs: pair.b(n as i64),
        rhs,
        factor_sum,
    }
}

/// `Σ_{k>=1} (-1)^{k+1} (s⁻¹(n, k(3k-1)/2) + s⁻¹(n, k(3k+1)/2))`, terms with
/// column beyond `n` omitted. Counts partitions of `n` into parts with gcd 1.
pub fn aperiodic_sequence(n: u64, ctx: &DivisorSumInverse) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for (j, g, sign) in pentagonal_terms(n).skip(1) {
        let _ = j;
        let v = ctx.entry(n, g)?;
        // The pentagonal sign is (-1)^k; this sum carries (-1)^{k+1}.
        if sign < 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc)
}

/// `Σ_{k>=0} (-1)^{⌈k/2⌉} s⁻¹(n, G_k)` over `G_k <= n`, where the `k = 0`
/// term uses the divisor-sum extension `s⁻¹(n, 0) = Σ_{d|n} p(d) μ(n/d)`.
pub fn zero_alternating_check(n: u64, ctx: &DivisorSumInverse) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for (_, g, sign) in pentagonal_terms(n) {
        let v = ctx.entry_extended(n, g)?;
        if sign > 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc)
}

/// `a_q a_r - (b_{qr} - b_q - b_r + b_1)` for coprime `q, r >= 2`.
///
/// The bracket equals `(b_q - 1)(b_r - 1)` for any multiplicative `a`, so
/// the residual vanishes when `q` and `r` are primes but not in general.
pub fn multiplicative_relation_check(pair: &LambertPair<BigInt>, q: u64, r: u64) -> Result<BigInt> {
    if q < 2 || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "need q, r >= 2, got q = {q}, r = {r}"
        )));
    }
    if arith::gcd(q, r) != 1 {
        return Err(Error::NotCoprime { q, r });
    }
    let b = |n: u64| pair.b(n as i64);
    let lhs = pair.a(q) * pair.a(r);
    Ok(lhs - (b(q * r) - b(q) - b(r) + b(1)))
}

/// `(convolution, direct)` where
///
/// ```text
/// convolution = Σ_{s=±1} Σ_{0<=n<=x} Σ_{k=1}^{⌊(√(24n+25)-s)/6⌋} (-1)^{k+1} k(3k+s)/2 · p(x-n)
/// direct      = Σ_{n<=x+1} σ(n)
/// ```
pub fn sigma_average_order_check(x: u64, table: &PartitionTable) -> (BigInt, BigInt) {
    let mut conv = BigInt::zero();
    for n in 0..=x {
        let p = table.get((x - n) as i64);
        let mut inner = 0i64;
        for s in [1i64, -1] {
            for k in 1..=pentagonal_bound(24 * n + 25, s) {
                let term = pentagonal_shift(k, s);
                inner += if k % 2 == 1 { term } else { -term };
            }
        }
        conv += p * inner;
    }
    let direct: BigInt = (1..=x + 1)
        .map(|n| arith::sigma_alpha(n, 1).expect("n >= 1"))
        .sum();
    (conv, direct)
}

fn seq_get(a: &[BigInt], k: u64) -> BigInt {
    a.get(k as usize - 1).cloned().unwrap_or_default()
}

/// `Σ q^n/(1 ± q^n) - (1/(∓q;q)_∞) Σ_n (s_o(n) ± s_e(n)) q^n` to `order`,
/// with the part counts from enumeration.
pub fn parts_identity_residual(sign: LambertSign, order: usize) -> IntSeries {
    let ones = vec![BigInt::one(); order];
    let lhs = lambert_series(&ones, sign, order);
    let inner = IntSeries::from_fn(order, |n| {
        if n == 0 {
            return BigInt::zero();
        }
        let (o, e) = parts_count_stats(n as u64);
        match sign {
            LambertSign::Minus => BigInt::from(o) - BigInt::from(e),
            LambertSign::Plus => BigInt::from(o) + BigInt::from(e),
        }
    });
    &lhs - &(&inner * &pochhammer_prefactor(sign, order))
}

/// `1/(q;q)_∞` for `Minus`, `1/(-q;q)_∞` for `Plus`.
fn pochhammer_prefactor(sign: LambertSign, order: usize) -> IntSeries {
    let base = match sign {
        LambertSign::Minus => euler_product(order),
        LambertSign::Plus => neg_q_pochhammer(order),
    };
    series_reciprocal(&base).expect("constant term is 1")
}

/// `Σ a_n q^n/(1 ± q^n) - (1/(∓q;q)_∞) Σ_n (Σ_k (s_o(n,k) ± s_e(n,k)) a_k) q^n`
/// with enumerated distinct-partition statistics. `a[0]` is `a_1`.
pub fn factorization_identity_residual(a: &[BigInt], sign: LambertSign, order: usize) -> IntSeries {
    let lhs = lambert_series(a, sign, order);
    let inner = IntSeries::from_fn(order, |n| {
        if n == 0 {
            return BigInt::zero();
        }
        let row = distinct_partition_stats_row(n as u64);
        (1..=n as u64)
            .map(|k| {
                let (o, e) = row[k as usize];
                let w = match sign {
                    LambertSign::Minus => o as i64 - e as i64,
                    LambertSign::Plus => (o + e) as i64,
                };
                seq_get(a, k) * w
            })
            .sum()
    });
    &lhs - &(&inner * &pochhammer_prefactor(sign, order))
}

/// `Σ a_n q^{2n}/(1-q^n) - (1/(q;q)_∞) Σ_n Σ_{k<=n/2} (s_o(n-k,k) - s_e(n-k,k)) a_k q^n`.
pub fn q2n_variant_check(a: &[BigInt], order: usize) -> IntSeries {
    let mut lhs = IntSeries::zero(order);
    for n in 1..=order {
        let an = seq_get(a, n as u64);
        for e in (2 * n..=order).step_by(n) {
            *lhs.coeff_mut(e) += &an;
        }
    }
    let inner = IntSeries::from_fn(order, |n| {
        (1..=(n / 2) as u64)
            .map(|k| {
                let (o, e) = distinct_partition_stats_row(n as u64 - k)[k as usize];
                seq_get(a, k) * (o as i64 - e as i64)
            })
            .sum()
    });
    &lhs - &(&inner * &pochhammer_prefactor(LambertSign::Minus, order))
}

/// How the inner `s`-index is shifted in the generalized factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InnerShift {
    /// `s_{n-(m+j)i, i}`: the shift that the expansion of
    /// `a_i q^{(m+1)i}/(1-q^i)^{k+1}` produces. Identities hold with this.
    #[default]
    PerPart,
    /// `s_{n-m-ji, i}`: the index as commonly printed; only correct for `m = 0`.
    Literal,
}

impl InnerShift {
    fn index(self, n: i64, m: i64, j: i64, i: i64) -> i64 {
        match self {
            InnerShift::PerPart => n - (m + j) * i,
            InnerShift::Literal => n - m - j * i,
        }
    }
}

/// `C(k-1+j, k-1)`, with `k = 0` read as the expansion of `(1-q^i)^0`,
/// i.e. `[j = 0]`.
fn neg_binomial_weight(k: u64, j: u64) -> BigInt {
    if k == 0 {
        BigInt::from(u8::from(j == 0))
    } else {
        binomial((k - 1 + j) as i64, k as i64 - 1)
    }
}

fn generalized_inner(
    m: u64,
    k: u64,
    a: &[BigInt],
    n: u64,
    shift: InnerShift,
    euler: &IntSeries,
) -> BigInt {
    let mut acc = BigInt::zero();
    if n <= m {
        return acc;
    }
    for i in 1..=n / (m + 1) {
        let ai = seq_get(a, i);
        if Zero::is_zero(&ai) {
            continue;
        }
        for j in 0..=(n - m) / i {
            let idx = shift.index(n as i64, m as i64, j as i64, i as i64);
            if idx < i as i64 {
                continue;
            }
            let s = s_entry_with(euler, idx as usize, i as usize);
            if !Zero::is_zero(&s) {
                acc += neg_binomial_weight(k, j) * s * &ai;
            }
        }
    }
    acc
}

/// `Σ_n a_n q^{(m+1)n}/(1-q^n)^{k+1}` minus
/// `(1/(q;q)_∞) Σ_n Σ_{i<=n/(m+1)} Σ_j C(k-1+j, k-1) s_{·,i} a_i q^n`,
/// truncated at `order`.
pub fn generalized_series_check(
    m: u64,
    k: u64,
    a: &[BigInt],
    order: usize,
    shift: InnerShift,
) -> IntSeries {
    let mut lhs = IntSeries::zero(order);
    for n in 1..=order as u64 {
        let an = seq_get(a, n);
        if Zero::is_zero(&an) {
            continue;
        }
        // a_n q^{(m+1)n} Σ_t C(k+t, k) q^{nt}
        let mut t = 0;
        while n * (m + 1 + t) <= order as u64 {
            *lhs.coeff_mut((n * (m + 1 + t)) as usize) += binomial((k + t) as i64, k as i64) * &an;
            t += 1;
        }
    }
    let euler = euler_product(order);
    let inner = IntSeries::from_fn(order, |n| {
        generalized_inner(m, k, a, n as u64, shift, &euler)
    });
    &lhs - &(&inner * &pochhammer_prefactor(LambertSign::Minus, order))
}

/// For `m >= k`: the coefficient identity
///
/// ```text
/// Σ_{d|n, d<=⌊n/(m+1)⌋} C(n/d - 1 - m + k, k) a_d
///   = Σ_{q=0}^{n} Σ_i Σ_j C(k-1+j, k-1) s_{·,i} a_i p(q)
/// ```
///
/// returning left minus right. Binomials with negative upper index are 0.
pub fn generalized_coefficient_check(
    m: u64,
    k: u64,
    a: &[BigInt],
    n: u64,
    shift: InnerShift,
) -> Result<BigInt> {
    if m < k {
        return Err(Error::InvalidParameter(format!(
            "the coefficient identity needs m >= k, got m = {m}, k = {k}"
        )));
    }
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    let lhs: BigInt = divisors(n)?
        .into_iter()
        .filter(|&d| d <= n / (m + 1))
        .map(|d| binomial((n / d) as i64 - 1 - m as i64 + k as i64, k as i64) * seq_get(a, d))
        .sum();
    let table = crate::partitions::partition_table(n as usize);
    let euler = euler_product(n as usize);
    let rhs: BigInt = (0..=n)
        .map(|q| generalized_inner(m, k, a, n - q, shift, &euler) * table.get(q as i64))
        .sum();
    Ok(lhs - rhs)
}
