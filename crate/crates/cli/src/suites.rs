//! The `verify` suites. Each suite is a fixed, ordered list of checks; the
//! sweeps inside a check may run in parallel but always report the smallest
//! counterexample, so reports are identical from run to run.

use std::collections::BTreeMap;
use std::time::Instant;

use lambert_core::arith::{self, divisors, is_prime};
use lambert_core::factorization::{
    aperiodic_sequence, b_double_recurrence_check, b_pentagonal_identity_check, correction_generic,
    correction_pentagonal, correction_special, evaluate_direct, factorization_identity_residual,
    generalized_coefficient_check, generalized_series_check, multiplicative_relation_check,
    parts_identity_residual, q2n_variant_check, recover_single, sigma_average_order_check,
    zero_alternating_check, ArithValue, CorrectionVector, InnerShift, LambertPair, SpecialFunction,
};
use lambert_core::matrices::{
    applicable_shapes, binomial_power_inverse, block_extend_inverse, divisor_sum_grid,
    factorization_matrix, inverse_column_lambert_residual, invert_unit_lower, nested_formula_entry,
    recurrence_residuals_with, special_form_value, DivisorSumVariant,
};
use lambert_core::partitions::{count_partitions_gcd_one, distinct_partition_stats_row};
use lambert_core::qseries::{euler_product, euler_product_direct, s_entry, series_reciprocal};
use lambert_core::{
    partition_table, DivisorSumInverse, Execution, FormalLog, IntSeries, LambertSign, TriMatrix,
};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::report::{Check, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Matrices,
    Corrections,
    Reconstructions,
    Generalized,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Matrices => "matrices",
            Suite::Corrections => "corrections",
            Suite::Reconstructions => "reconstructions",
            Suite::Generalized => "generalized",
            Suite::All => "all",
        }
    }
}

/// Sweep bounds. `--max-n` drives the matrix suite, `--max-m` the
/// correction and reconstruction suites, `--max-order` the series suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: u64,
    pub max_m: u64,
    pub max_order: usize,
    pub lambda_n: u64,
    pub sigma_x: u64,
    pub enumeration_n: u64,
    pub alternating_n: u64,
}

impl Bounds {
    pub fn full() -> Self {
        Self {
            max_n: 120,
            max_m: 60,
            max_order: 30,
            lambda_n: 40,
            sigma_x: 100,
            enumeration_n: 30,
            alternating_n: 100,
        }
    }

    pub fn quick() -> Self {
        Self {
            max_n: 40,
            max_m: 30,
            max_order: 20,
            lambda_n: 20,
            sigma_x: 40,
            enumeration_n: 20,
            alternating_n: 40,
        }
    }

    fn parameters(&self) -> BTreeMap<String, String> {
        [
            ("max_n", self.max_n.to_string()),
            ("max_m", self.max_m.to_string()),
            ("max_order", self.max_order.to_string()),
            ("lambda_n", self.lambda_n.to_string()),
            ("sigma_x", self.sigma_x.to_string()),
            ("enumeration_n", self.enumeration_n.to_string()),
            ("alternating_n", self.alternating_n.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect()
    }
}

pub fn run_suite(suite: Suite, bounds: &Bounds, exec: Execution) -> RunReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    if matches!(suite, Suite::Matrices | Suite::All) {
        checks.extend(matrices(bounds, exec));
    }
    if matches!(suite, Suite::Corrections | Suite::All) {
        checks.extend(corrections(bounds, exec));
    }
    if matches!(suite, Suite::Reconstructions | Suite::All) {
        checks.extend(reconstructions(bounds, exec));
    }
    if matches!(suite, Suite::Generalized | Suite::All) {
        checks.extend(generalized(bounds, exec));
    }
    let mut parameters = bounds.parameters();
    parameters.insert("suite".into(), suite.name().into());
    RunReport {
        command: "verify".into(),
        parameters,
        checks,
        elapsed: start.elapsed(),
    }
}

fn first_nonzero(s: &IntSeries) -> Option<String> {
    s.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .map(|i| format!("coefficient of q^{i} off by {}", s.coeff(i)))
}

fn mismatch<T: std::fmt::Display + PartialEq>(what: &str, got: &T, want: &T) -> Option<String> {
    (got != want).then(|| format!("{what}: {got} != {want}"))
}

fn matrices(b: &Bounds, exec: Execution) -> Vec<Check> {
    let n_max = b.max_n.max(1);
    let dim = n_max as usize;
    let mut checks = Vec::new();

    let gen_bound = n_max.min(30);
    checks.push(Check::sweep(
        "matrix-entries-by-enumeration",
        "generator coefficients equal signed distinct-part counts",
        "i",
        1..=gen_bound,
        exec,
        |i| {
            let row = distinct_partition_stats_row(i);
            (1..=i).find_map(|j| {
                let (o, e) = row[j as usize];
                let want = BigInt::from(o as i64 - e as i64);
                mismatch(&format!("s({i},{j})"), &s_entry(i, j), &want)
            })
        },
    ));

    let a = factorization_matrix(dim).expect("dimension >= 1");
    let inv = match invert_unit_lower(&a) {
        Ok(inv) => {
            checks.push(Check::single(
                "forward-substitution-inverse",
                "A_n times its inverse is the identity",
                &format!("n={n_max}"),
                None,
            ));
            inv
        }
        Err(e) => {
            checks.push(Check::single(
                "forward-substitution-inverse",
                "A_n times its inverse is the identity",
                &format!("n={n_max}"),
                Some(e.to_string()),
            ));
            return checks;
        }
    };
    let ctx = DivisorSumInverse::new(dim);

    checks.push(Check::sweep(
        "inverse-divisor-sum",
        "inverse entries equal sum over d|n of p(d-k) mu(n/d)",
        "n",
        1..=n_max,
        exec,
        |n| {
            (1..=n).find_map(|k| {
                let got = ctx.entry(n, k).expect("in range");
                mismatch(
                    &format!("s^-1({n},{k})"),
                    &got,
                    inv.get(n as usize, k as usize),
                )
            })
        },
    ));

    let table = partition_table(dim);
    checks.push(Check::sweep(
        "first-column-inversion",
        "sum over d|n of s^-1(d,1) equals p(n-1)",
        "n",
        1..=n_max,
        exec,
        |n| {
            let sum: BigInt = divisors(n)
                .expect("n >= 1")
                .into_iter()
                .map(|d| inv.get(d as usize, 1))
                .sum();
            mismatch("divisor sum", &sum, table.get(n as i64 - 1))
        },
    ));

    let rec_n = dim.min(18);
    let worst = recurrence_residuals_with(&a.leading(rec_n), &inv.leading(rec_n));
    checks.push(Check::single(
        "inverse-recurrences",
        "row and column recurrences for inverse entries",
        &format!("n=1..={rec_n}"),
        (!worst.is_zero()).then(|| format!("largest residual {worst}")),
    ));

    checks.push(Check::sweep(
        "nested-inverse-formula",
        "Neumann-series expansion of inverse entries",
        "i",
        1..=n_max.min(10),
        exec,
        |i| {
            (1..=i as usize).find_map(|j| {
                let got = nested_formula_entry(&a, i as usize, j);
                mismatch(&format!("entry ({i},{j})"), &got, inv.get(i as usize, j))
            })
        },
    ));

    if n_max >= 2 {
        checks.push(Check::sweep(
            "binomial-power-inverse",
            "inverse as alternating binomial sum of powers of A_n",
            "n",
            2..=n_max.min(12),
            exec,
            |n| {
                let got = binomial_power_inverse(n as usize).expect("n >= 2");
                (got != inv.leading(n as usize)).then(|| "matrices differ".to_owned())
            },
        ));
    }

    let mut block = TriMatrix::identity(1);
    let mut block_failure = None;
    for n in 2..=dim {
        block = block_extend_inverse(&block);
        if block != inv.leading(n) {
            block_failure = Some(format!("n={n}: block-recursive inverse differs"));
            break;
        }
    }
    checks.push(Check::single(
        "block-recursive-inverse",
        "inverse built one bottom row at a time",
        &format!("n=1..={n_max}"),
        block_failure,
    ));

    let order = dim.min(60);
    checks.push(Check::sweep(
        "inverse-column-lambert-series",
        "Lambert series of column k of the inverse is q^k/(q;q)_inf",
        "k",
        1..=10.min(n_max),
        exec,
        |k| first_nonzero(&inverse_column_lambert_residual(&inv, k as usize, order)),
    ));

    checks.push(Check::sweep(
        "special-inverse-forms",
        "shifted partition forms for primes, prime squares, 2p and pq",
        "n",
        1..=n_max,
        exec,
        |n| {
            (1..=n).find_map(|k| {
                let want = ctx.entry(n, k).expect("in range");
                applicable_shapes(n, k).into_iter().find_map(|shape| {
                    let got = special_form_value(shape, n, k, &table);
                    mismatch(&format!("{shape:?} at k={k}"), &got, &want)
                })
            })
        },
    ));

    let grid_n = dim.min(18);
    let grid_k = 12;
    let grid_failure = (|| {
        let ap = divisor_sum_grid(DivisorSumVariant::APrime, grid_n, grid_k).ok()?;
        let app = divisor_sum_grid(DivisorSumVariant::ADoublePrime, grid_n, grid_k).ok()?;
        for n in 1..=grid_n {
            for k in 1..=grid_k {
                let want_ap = table.get(n as i64 - k as i64);
                if &ap[n - 1][k - 1] != want_ap {
                    return Some(format!("a'({n},{k}) = {} != p(n-k)", ap[n - 1][k - 1]));
                }
                let want_app = inv.get(n, k);
                if &app[n - 1][k - 1] != want_app {
                    return Some(format!("a''({n},{k}) = {} != s^-1", app[n - 1][k - 1]));
                }
            }
        }
        None
    })();
    checks.push(Check::single(
        "divisor-sum-grids",
        "a'(n,k) = p(n-k) and a''(n,k) = s^-1(n,k)",
        &format!("n=1..={grid_n}, k=1..={grid_k}"),
        grid_failure,
    ));

    let product_failure = (|| {
        if euler_product(dim) != euler_product_direct(dim) {
            return Some("sparse and expanded products differ".to_owned());
        }
        let r = series_reciprocal(&euler_product(dim)).ok()?;
        (r.coeffs() != table.values()).then(|| "1/(q;q)_inf differs from p(n)".to_owned())
    })();
    checks.push(Check::single(
        "pentagonal-product",
        "pentagonal expansion of (q;q)_inf and its reciprocal",
        &format!("order={dim}"),
        product_failure,
    ));

    checks
}

fn special_functions() -> Vec<SpecialFunction> {
    vec![
        SpecialFunction::Phi,
        SpecialFunction::Mu,
        SpecialFunction::Liouville,
        SpecialFunction::VonMangoldt,
        SpecialFunction::AbsMu,
        SpecialFunction::Jordan(2),
        SpecialFunction::Jordan(3),
    ]
}

fn int_pairs() -> Vec<LambertPair<BigInt>> {
    let mut pairs = LambertPair::builtins();
    pairs.push(LambertPair::power(1));
    pairs
}

fn corrections(b: &Bounds, exec: Execution) -> Vec<Check> {
    let mut checks = Vec::new();
    let int_pairs = int_pairs();
    let lambda = LambertPair::von_mangoldt();

    checks.push(Check::sweep(
        "correction-routes-agree",
        "closed-form, generic and pentagonal-index corrections",
        "m",
        0..=b.max_m,
        exec,
        |m| {
            special_functions().into_iter().find_map(|f| {
                let special = correction_special(f, m).map_err(|e| e.to_string());
                let (generic, pent) = match f.int_pair() {
                    Some(p) => (
                        ArithValue::Int(correction_generic(&p, m)),
                        ArithValue::Int(correction_pentagonal(&p, m)),
                    ),
                    None => (
                        ArithValue::Log(correction_generic(&lambda, m)),
                        ArithValue::Log(correction_pentagonal(&lambda, m)),
                    ),
                };
                match special {
                    Err(e) => Some(format!("{}: {e}", f.name())),
                    Ok(s) => mismatch(&format!("{} closed vs generic", f.name()), &s, &generic)
                        .or_else(|| {
                            mismatch(
                                &format!("{} generic vs pentagonal", f.name()),
                                &generic,
                                &pent,
                            )
                        }),
                }
            })
        },
    ));

    let table = partition_table(b.max_m as usize);
    checks.push(Check::sweep(
        "b-double-recurrence",
        "b_n from partitions and pentagonal shifts of b",
        "n",
        1..=b.max_m,
        exec,
        |n| {
            int_pairs
                .iter()
                .find_map(|p| {
                    let r = b_double_recurrence_check(p, n, &table);
                    (!r.is_zero()).then(|| format!("{}: residual {r}", p.name()))
                })
                .or_else(|| {
                    let r = b_double_recurrence_check(&lambda, n, &table);
                    (!r.is_zero()).then(|| format!("Lambda: residual {r}"))
                })
        },
    ));

    checks.push(Check::sweep(
        "pentagonal-b-sum",
        "alternating pentagonal sum of b equals sum of s(n,k) a_k",
        "n",
        1..=b.max_m,
        exec,
        |n| {
            int_pairs.iter().find_map(|p| {
                let r = b_pentagonal_identity_check(p, n);
                (!r.corrected_holds())
                    .then(|| format!("{}: {} != {}", p.name(), r.rhs, r.factor_sum))
            })
        },
    ));

    let table_x = partition_table(b.sigma_x as usize);
    checks.push(Check::sweep(
        "sigma-average-order",
        "partial sums of sigma as a partition convolution",
        "x",
        0..=b.sigma_x,
        exec,
        |x| {
            let (conv, direct) = sigma_average_order_check(x, &table_x);
            mismatch("convolution vs direct", &conv, &direct)
        },
    ));

    checks
}

fn reconstructions(b: &Bounds, exec: Execution) -> Vec<Check> {
    let mut checks = Vec::new();
    let ctx = DivisorSumInverse::new(
        b.max_m
            .max(b.lambda_n)
            .max(b.alternating_n)
            .max(b.enumeration_n) as usize,
    );

    for f in special_functions() {
        let bound = if f == SpecialFunction::VonMangoldt {
            b.lambda_n
        } else {
            b.max_m
        };
        let id = format!("recover-a/{}", f.name());
        let anchor = "a_n from corrections and inverse entries";
        let check = match f.int_pair() {
            Some(pair) => {
                let corr = CorrectionVector::new(&pair, bound as usize);
                Check::sweep(&id, anchor, "n", 1..=bound, exec, |n| {
                    let got = recover_single(corr.values(), n, &ctx).expect("in range");
                    mismatch("recovered vs direct", &got, &pair.a(n))
                })
            }
            None => {
                let pair = LambertPair::von_mangoldt();
                let corr = CorrectionVector::new(&pair, bound as usize);
                Check::sweep(&id, anchor, "n", 1..=bound, exec, |n| {
                    let got: FormalLog = recover_single(corr.values(), n, &ctx).expect("in range");
                    let want = match evaluate_direct(f, n) {
                        Ok(ArithValue::Log(v)) => v,
                        _ => unreachable!("Lambda is log-valued"),
                    };
                    mismatch("recovered vs direct", &got, &want)
                })
            }
        };
        checks.push(check);
    }

    checks.push(Check::sweep(
        "aperiodic-partitions",
        "alternating pentagonal columns count gcd-1 partitions",
        "n",
        1..=b.enumeration_n,
        exec,
        |n| {
            let got = aperiodic_sequence(n, &ctx).expect("in range");
            mismatch(
                "formula vs enumeration",
                &got,
                &BigInt::from(count_partitions_gcd_one(n)),
            )
        },
    ));

    checks.push(Check::sweep(
        "alternating-column-sum",
        "alternating sum of inverse entries at pentagonal columns vanishes",
        "n",
        1..=b.alternating_n,
        exec,
        |n| {
            let v = zero_alternating_check(n, &ctx).expect("in range");
            (!v.is_zero()).then(|| format!("sum is {v}"))
        },
    ));

    let primes: Vec<u64> = (2..=23).filter(|&p| is_prime(p)).collect();
    let mut mult_failure = None;
    'outer: for pair in LambertPair::builtins() {
        for (i, &q) in primes.iter().enumerate() {
            for &r in &primes[i + 1..] {
                let res = multiplicative_relation_check(&pair, q, r).expect("coprime primes");
                if !res.is_zero() {
                    mult_failure = Some(format!("{} at q={q}, r={r}: residual {res}", pair.name()));
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::single(
        "multiplicative-relation",
        "a_q a_r = b_qr - b_q - b_r + b_1 for distinct primes",
        "q<r<=23",
        mult_failure,
    ));

    checks
}

fn sequences(order: usize) -> Vec<(&'static str, Vec<BigInt>)> {
    vec![
        ("1", vec![BigInt::from(1); order]),
        ("n", (1..=order as i64).map(BigInt::from).collect()),
        (
            "mu",
            (1..=order as u64)
                .map(|n| BigInt::from(arith::moebius(n).expect("n >= 1")))
                .collect(),
        ),
    ]
}

fn generalized(b: &Bounds, exec: Execution) -> Vec<Check> {
    let mut checks = Vec::new();
    let order = b.max_order;
    let parts_order = order + 10;

    for (sign, label) in [(LambertSign::Minus, "minus"), (LambertSign::Plus, "plus")] {
        checks.push(Check::single(
            &format!("parts-count-identity/{label}"),
            "Lambert series of 1 via total part counts",
            &format!("order={parts_order}"),
            first_nonzero(&parts_identity_residual(sign, parts_order)),
        ));
        let seqs = sequences(parts_order);
        checks.push(Check::sweep(
            &format!("lambert-factorization/{label}"),
            "Lambert series factored through distinct-part statistics",
            "case",
            0..=seqs.len() as u64 - 1,
            exec,
            |c| {
                let (name, a) = &seqs[c as usize];
                first_nonzero(&factorization_identity_residual(a, sign, parts_order))
                    .map(|e| format!("a={name}: {e}"))
            },
        ));
    }

    let seqs = sequences(order);
    checks.push(Check::sweep(
        "q2n-variant",
        "factorization of sum a_n q^(2n)/(1-q^n)",
        "case",
        0..=seqs.len() as u64 - 1,
        exec,
        |c| {
            let (name, a) = &seqs[c as usize];
            first_nonzero(&q2n_variant_check(a, order)).map(|e| format!("a={name}: {e}"))
        },
    ));

    let cases: Vec<(u64, u64, usize)> = (0..=2)
        .flat_map(|m| (0..=2).flat_map(move |k| (0..3).map(move |s| (m, k, s))))
        .collect();
    checks.push(Check::sweep(
        "generalized-series",
        "factorization of sum a_n q^((m+1)n)/(1-q^n)^(k+1)",
        "case",
        0..=cases.len() as u64 - 1,
        exec,
        |c| {
            let (m, k, s) = cases[c as usize];
            let (name, a) = &seqs[s];
            first_nonzero(&generalized_series_check(
                m,
                k,
                a,
                order,
                InnerShift::PerPart,
            ))
            .map(|e| format!("m={m}, k={k}, a={name}: {e}"))
        },
    ));

    let coeff_cases: Vec<(u64, u64, usize)> =
        cases.iter().copied().filter(|&(m, k, _)| m >= k).collect();
    checks.push(Check::sweep(
        "generalized-coefficients",
        "coefficient form of the generalized factorization",
        "n",
        1..=order as u64,
        exec,
        |n| {
            coeff_cases.iter().find_map(|&(m, k, s)| {
                let (name, a) = &seqs[s];
                let r =
                    generalized_coefficient_check(m, k, a, n, InnerShift::PerPart).expect("m >= k");
                (!r.is_zero()).then(|| format!("m={m}, k={k}, a={name}: residual {r}"))
            })
        },
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let mut b = Bounds::quick();
        b.max_n = 20;
        b.max_m = 20;
        b.max_order = 12;
        for suite in [
            Suite::Matrices,
            Suite::Corrections,
            Suite::Reconstructions,
            Suite::Generalized,
        ] {
            let r = run_suite(suite, &b, Execution::Sequential);
            for c in &r.checks {
                assert!(c.passed, "{}: {:?}", c.id, c.counterexample);
            }
        }
    }

    #[test]
    fn execution_modes_report_identically() {
        let mut b = Bounds::quick();
        b.max_n = 15;
        let s = run_suite(Suite::Matrices, &b, Execution::Sequential);
        let p = run_suite(Suite::Matrices, &b, Execution::Parallel);
        assert_eq!(s.checks, p.checks);
    }
}
