//! Elementary multiplicative number theory.
//!
//! Everything here works by trial-division factorization, which is plenty for
//! the desk-scale arguments (n up to about 10^6) the rest of the crate uses.
//! Values that can outgrow a machine word (`sigma_alpha`, `jordan_totient`)
//! are returned as [`BigInt`].

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::formal_log::FormalLog;

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactorMap {
    pairs: Vec<(u64, u32)>,
}

impl FactorMap {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of distinct prime factors, ω(n).
    pub fn distinct(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// Number of prime factors with multiplicity, Ω(n).
    pub fn total(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

fn nonzero(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::ZeroArgument { what: "n" })
    } else {
        Ok(n)
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub fn factorize(n: u64) -> Result<FactorMap> {
    let mut rest = nonzero(n)?;
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(FactorMap { pairs })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let fm = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in fm.pairs() {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

pub fn moebius(n: u64) -> Result<i32> {
    let fm = factorize(n)?;
    Ok(if !fm.is_squarefree() {
        0
    } else if fm.distinct() % 2 == 0 {
        1
    } else {
        -1
    })
}

pub fn abs_moebius(n: u64) -> Result<i32> {
    moebius(n).map(i32::abs)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let fm = factorize(n)?;
    Ok(fm
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product())
}

/// λ(n) = (-1)^Ω(n).
pub fn liouville(n: u64) -> Result<i32> {
    let fm = factorize(n)?;
    Ok(if fm.total() % 2 == 0 { 1 } else { -1 })
}

pub fn omega_distinct(n: u64) -> Result<u32> {
    factorize(n).map(|fm| fm.distinct())
}

/// σ_α(n) = Σ_{d|n} d^α.
pub fn sigma_alpha(n: u64, alpha: u32) -> Result<BigInt> {
    Ok(divisors(n)?
        .into_iter()
        .map(|d| Pow::pow(BigInt::from(d), alpha))
        .sum())
}

/// Jordan's totient J_t(n) = Π p^{(e-1)t} (p^t - 1).
///
/// `t = 0` gives the indicator of `n = 1`.
pub fn jordan_totient(n: u64, t: u32) -> Result<BigInt> {
    let fm = factorize(n)?;
    let mut acc = BigInt::one();
    for &(p, e) in fm.pairs() {
        let p = BigInt::from(p);
        let pt: BigInt = Pow::pow(&p, t);
        acc *= Pow::pow(&p, (e - 1) * t) * (pt - 1u32);
    }
    Ok(acc)
}

/// Whether `n` is the square of a positive integer. Zero is not.
pub fn is_positive_square(n: u64) -> bool {
    n > 0 && {
        let r = n.sqrt();
        r * r == n
    }
}

/// Λ(n) as an exact formal logarithm: `{p: 1}` for prime powers, empty otherwise.
pub fn von_mangoldt_formal(n: u64) -> Result<FormalLog> {
    let fm = factorize(n)?;
    Ok(match fm.pairs() {
        [(p, _)] => FormalLog::log_prime(*p),
        _ => FormalLog::zero(),
    })
}

/// log(n) as an exact formal sum Σ e_p log p.
pub fn log_formal(n: u64) -> Result<FormalLog> {
    factorize(n).map(|fm| FormalLog::from_factor_map(&fm))
}

/// Möbius values μ(0..=n) by a linear sieve; index 0 holds 0.
pub fn moebius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Binomial coefficient with the convention C(n, k) = 0 for k < 0 or n < k
/// (including every negative upper index).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_prime(n: u64) -> bool {
        n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(trial_division_prime(97));
        assert_eq!(factorize(97).unwrap().pairs(), &[(97, 1)]);
        assert_eq!(factorize(0), Err(Error::ZeroArgument { what: "n" }));
    }

    #[test]
    fn factor_map_recomposes() {
        for n in 1..=5000u64 {
            let fm = factorize(n).unwrap();
            assert_eq!(fm.value(), n);
            assert!(fm.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(fm.pairs().iter().all(|&(p, e)| is_prime(p) && e >= 1));
        }
    }

    #[test]
    fn divisors_match_scan() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        for n in 1..=500u64 {
            let scan: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), scan);
        }
        assert!(divisors(0).is_err());
    }

    #[test]
    fn named_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(jordan_totient(1, 5).unwrap(), BigInt::one());
        assert_eq!(jordan_totient(4, 2).unwrap(), BigInt::from(12));
        assert_eq!(liouville(12).unwrap(), -1);
        assert_eq!(omega_distinct(60).unwrap(), 3);
        assert_eq!(sigma_alpha(6, 1).unwrap(), BigInt::from(12));
        assert_eq!(sigma_alpha(6, 0).unwrap(), BigInt::from(4));
        assert!(is_positive_square(9) && !is_positive_square(8) && !is_positive_square(0));
        for f in [moebius, abs_moebius, liouville] {
            assert!(f(0).is_err());
        }
        assert!(euler_phi(0).is_err());
        assert!(jordan_totient(0, 1).is_err());
    }

    #[test]
    fn von_mangoldt_examples() {
        assert!(von_mangoldt_formal(1).unwrap().is_zero());
        assert_eq!(von_mangoldt_formal(8).unwrap(), FormalLog::log_prime(2));
        assert!(von_mangoldt_formal(12).unwrap().is_zero());
        let log12 = log_formal(12).unwrap();
        assert_eq!(
            log12,
            FormalLog::log_prime(2).scale(&2.into()) + FormalLog::log_prime(3)
        );
    }

    #[test]
    fn divisor_sum_pairings_up_to_1000() {
        for n in 1..=1000u64 {
            let divs = divisors(n).unwrap();
            let mu_sum: i32 = divs.iter().map(|&d| moebius(d).unwrap()).sum();
            assert_eq!(mu_sum, i32::from(n == 1), "mu at {n}");
            let phi_sum: u64 = divs.iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(phi_sum, n);
            for t in 1..=3 {
                let j: BigInt = divs.iter().map(|&d| jordan_totient(d, t).unwrap()).sum();
                assert_eq!(j, Pow::pow(BigInt::from(n), t));
            }
            let lam: i32 = divs.iter().map(|&d| liouville(d).unwrap()).sum();
            assert_eq!(lam, i32::from(is_positive_square(n)));
            let abs_mu: i32 = divs.iter().map(|&d| abs_moebius(d).unwrap()).sum();
            assert_eq!(abs_mu, 1 << omega_distinct(n).unwrap());
            let lambda: FormalLog = divs.iter().map(|&d| von_mangoldt_formal(d).unwrap()).sum();
            assert_eq!(lambda, log_formal(n).unwrap());
        }
    }

    #[test]
    fn sieve_agrees_with_factorization() {
        let mu = moebius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(i32::from(mu[n as usize]), moebius(n).unwrap());
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(-1, 0), BigInt::from(0));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(4, -1), BigInt::from(0));
    }
}
