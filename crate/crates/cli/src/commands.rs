//! Table-producing commands.

use std::collections::BTreeMap;

use lambert_core::factorization::{evaluate_by_partitions, evaluate_direct, SpecialFunction};
use lambert_core::matrices::{
    divisor_sum_grid, factorization_matrix, invert_unit_lower, DivisorSumVariant,
};
use lambert_core::{partition_table, DivisorSumInverse, Error, Result};

use crate::report::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Variant {
    /// a'(n,k) = Σ_{d|n} s⁻¹(d,k)
    Aprime,
    /// a''(n,k) = Σ_{d|n} p(d-k) μ(n/d)
    Adoubleprime,
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), v.clone()))
        .collect()
}

fn numbered(first: &str, count: usize) -> Vec<String> {
    std::iter::once(first.to_owned())
        .chain((1..=count).map(|k| k.to_string()))
        .collect()
}

/// Rows `n = 2..=max_n` of the inverse matrices' bottom rows without the
/// diagonal: `s⁻¹(n,1), ..., s⁻¹(n,n-1)`. Short rows are padded with empty cells.
pub fn table1(max_n: u64) -> Result<Table> {
    if max_n < 2 {
        return Err(Error::InvalidParameter(format!(
            "--max-n must be at least 2, got {max_n}"
        )));
    }
    let ctx = DivisorSumInverse::new(max_n as usize);
    let width = max_n as usize - 1;
    let rows = (2..=max_n)
        .map(|n| {
            let mut row = vec![n.to_string()];
            for k in 1..n {
                row.push(ctx.entry(n, k)?.to_string());
            }
            row.resize(width + 1, String::new());
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        command: "table1".into(),
        parameters: params(&[("max_n", max_n.to_string())]),
        columns: numbered("n", width),
        rows,
    })
}

pub fn figure2(max_n: usize, max_k: usize, variant: Variant) -> Result<Table> {
    let (v, name) = match variant {
        Variant::Aprime => (DivisorSumVariant::APrime, "aprime"),
        Variant::Adoubleprime => (DivisorSumVariant::ADoublePrime, "adoubleprime"),
    };
    let grid = divisor_sum_grid(v, max_n, max_k)?;
    let rows = grid
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            std::iter::once((i + 1).to_string())
                .chain(row.iter().map(ToString::to_string))
                .collect()
        })
        .collect();
    Ok(Table {
        command: "figure2".into(),
        parameters: params(&[
            ("max_k", max_k.to_string()),
            ("max_n", max_n.to_string()),
            ("variant", name.into()),
        ]),
        columns: numbered("n", max_k),
        rows,
    })
}

/// `a_n` via partitions and directly; the flag says whether they agree.
pub fn eval(function: &str, n: u64, t: Option<u32>) -> Result<(Table, bool)> {
    let f = SpecialFunction::parse(function, t)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let via = evaluate_by_partitions(f, n)?;
    let direct = evaluate_direct(f, n)?;
    let matched = via == direct;
    let mut p = vec![("function", f.name()), ("n", n.to_string())];
    if let Some(t) = t {
        p.push(("t", t.to_string()));
    }
    Ok((
        Table {
            command: "eval".into(),
            parameters: params(&p),
            columns: ["function", "n", "partition_formula", "direct", "match"]
                .map(String::from)
                .to_vec(),
            rows: vec![vec![
                f.name(),
                n.to_string(),
                via.to_string(),
                direct.to_string(),
                matched.to_string(),
            ]],
        },
        matched,
    ))
}

pub fn matrix(n: usize, inverse: bool) -> Result<Table> {
    let a = factorization_matrix(n)?;
    let m = if inverse { invert_unit_lower(&a)? } else { a };
    let rows = (1..=n)
        .map(|i| {
            std::iter::once(i.to_string())
                .chain((1..=n).map(|j| m.get(i, j).to_string()))
                .collect()
        })
        .collect();
    Ok(Table {
        command: "matrix".into(),
        parameters: params(&[("inverse", inverse.to_string()), ("n", n.to_string())]),
        columns: numbered("i", n),
        rows,
    })
}

pub fn partition(max: usize) -> Table {
    let t = partition_table(max);
    Table {
        command: "partition".into(),
        parameters: params(&[("max", max.to_string())]),
        columns: vec!["n".into(), "p(n)".into()],
        rows: t
            .values()
            .iter()
            .enumerate()
            .map(|(n, p)| vec![n.to_string(), p.to_string()])
            .collect(),
    }
}
