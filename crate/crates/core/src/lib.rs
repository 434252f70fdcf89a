//! Exact-arithmetic Lambert series factorization.
//!
//! A Lambert series `Σ a_n q^n/(1-q^n)` factors as `(1/(q;q)_∞) Σ_n (Σ_k s_{n,k} a_k) q^n`
//! with `s_{n,k} = s_o(n,k) - s_e(n,k)` counting part `k` in partitions of
//! `n` into distinct parts, weighted by parity of the number of parts. This
//! crate builds the matrices `A_n = (s_{i,j})`, their inverses, and the
//! partition-based recovery of `a_n` from `b_n = Σ_{d|n} a_d`.
//!
//! Everything is exact: integers are [`num_bigint::BigInt`] and logarithms
//! are kept symbolically as [`FormalLog`].

pub mod arith;
pub mod error;
pub mod factorization;
pub mod formal_log;
pub mod matrices;
pub mod par;
pub mod partitions;
pub mod qseries;

pub use error::{Error, Result};
pub use factorization::{ArithValue, LambertPair, LambertValue, SpecialFunction};
pub use formal_log::FormalLog;
pub use matrices::{DivisorSumInverse, TriMatrix};
pub use par::Execution;
pub use partitions::{partition_table, PartitionTable};
pub use qseries::{IntSeries, LambertSign};
