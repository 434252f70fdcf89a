//! Exact logarithms as integer combinations of `log p`.
//!
//! A [`FormalLog`] is an element of the free abelian group on the symbols
//! `log 2, log 3, log 5, ...`. Λ(n) and log(n) both live here, so identities
//! mixing them can be checked by map equality with no floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::FactorMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FormalLog {
    // Zero coefficients are never stored.
    terms: BTreeMap<u64, BigInt>,
}

impl FormalLog {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single symbol `log p`.
    pub fn log_prime(p: u64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, BigInt::one());
        Self { terms }
    }

    pub fn from_factor_map(fm: &FactorMap) -> Self {
        Self {
            terms: fm
                .pairs()
                .iter()
                .map(|&(p, e)| (p, BigInt::from(e)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(prime, coefficient)` pairs in increasing prime order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn coefficient(&self, p: u64) -> BigInt {
        self.terms.get(&p).cloned().unwrap_or_default()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&p, c)| (p, c * factor)).collect(),
        }
    }

    fn add_term(&mut self, p: u64, c: &BigInt) {
        let entry = self.terms.entry(p).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    /// Numeric value, for display only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&p, c)| c.to_string().parse::<f64>().unwrap_or(f64::NAN) * (p as f64).ln())
            .sum()
    }
}

impl AddAssign<&FormalLog> for FormalLog {
    fn add_assign(&mut self, rhs: &FormalLog) {
        for (&p, c) in &rhs.terms {
            self.add_term(p, c);
        }
    }
}

impl SubAssign<&FormalLog> for FormalLog {
    fn sub_assign(&mut self, rhs: &FormalLog) {
        for (&p, c) in &rhs.terms {
            self.add_term(p, &-c);
        }
    }
}

impl Add for FormalLog {
    type Output = FormalLog;
    fn add(mut self, rhs: FormalLog) -> FormalLog {
        self += &rhs;
        self
    }
}

impl Sub for FormalLog {
    type Output = FormalLog;
    fn sub(mut self, rhs: FormalLog) -> FormalLog {
        self -= &rhs;
        self
    }
}

impl Neg for FormalLog {
    type Output = FormalLog;
    fn neg(self) -> FormalLog {
        Self {
            terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sum for FormalLog {
    fn sum<I: Iterator<Item = FormalLog>>(iter: I) -> Self {
        iter.fold(FormalLog::zero(), |acc, x| acc + x)
    }
}

/// Renders as `2·log(2) + log(3)`; the empty sum prints as `0`.
impl fmt::Display for FormalLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "log({p})")?;
            } else {
                write!(f, "{mag}·log({p})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_entries() {
        let a = FormalLog::log_prime(2) + FormalLog::log_prime(3);
        let b = a.clone() - FormalLog::log_prime(3);
        assert_eq!(b, FormalLog::log_prime(2));
        assert!((b.clone() - b).is_zero());
        assert!(a.scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(FormalLog::zero().to_string(), "0");
        let x = FormalLog::log_prime(2).scale(&BigInt::from(2)) - FormalLog::log_prime(5);
        assert_eq!(x.to_string(), "2·log(2) - log(5)");
        assert_eq!((-FormalLog::log_prime(7)).to_string(), "-log(7)");
    }
}
