use andrekit::andre::{andre_permutations, d_count_table, d_poly, eulerian_poly, gamma_expand};
use andrekit::Var;
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::{canonical_json, Format};

#[derive(Clone, Copy, ValueEnum)]
pub enum Which {
    /// gamma_{n,k}(1,1)
    Gamma,
    /// d_{n,k} = |D_{n,k}|
    D,
    /// d_{n,k}(p,q)
    Dq,
    /// E_n = |D_n|
    En,
}

enum Cell {
    Int(u64),
    Poly(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Poly(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Poly(s) => json!(s),
        }
    }
}

fn gamma_row(n: usize) -> Vec<Cell> {
    let expansion = gamma_expand(&eulerian_poly(n), n).expect("A_n is gamma-expressible");
    expansion
        .gammas
        .iter()
        .map(|g| {
            let v = g.specialize(&[(Var::P, 1), (Var::Q, 1)]).as_i64().expect("an integer");
            Cell::Int(v as u64)
        })
        .collect()
}

fn rows(which: Which, n_max: usize) -> Vec<Vec<Cell>> {
    match which {
        Which::Gamma => (1..=n_max).map(gamma_row).collect(),
        Which::D => d_count_table(n_max)
            .into_iter()
            .map(|row| row.into_iter().map(|v| Cell::Int(v as u64)).collect())
            .collect(),
        Which::Dq => (1..=n_max)
            .map(|n| {
                (0..=(n - 1) / 2)
                    .map(|k| Cell::Poly(d_poly(n, k).to_string()))
                    .collect()
            })
            .collect(),
        Which::En => (1..=n_max)
            .map(|n| vec![Cell::Int(andre_permutations(n).len() as u64)])
            .collect(),
    }
}

fn name(which: Which) -> &'static str {
    match which {
        Which::Gamma => "gamma",
        Which::D => "d",
        Which::Dq => "dq",
        Which::En => "en",
    }
}

/// Text puts one `n` per line; CSV and JSON have one record per cell.
pub fn render(which: Which, n_max: usize, format: Format) -> String {
    let table = rows(which, n_max);
    let has_k = !matches!(which, Which::En);
    let cells = || {
        table
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(k, c)| (i + 1, k, c)))
    };
    match format {
        Format::Text => table
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let sep = if matches!(which, Which::Dq) { "; " } else { "," };
                let values: Vec<String> = row.iter().map(Cell::text).collect();
                format!("n={}: {}", i + 1, values.join(sep))
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let mut lines = vec![if has_k { "n,k,value" } else { "n,value" }.to_string()];
            for (n, k, c) in cells() {
                let value = match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Poly(s) => format!("\"{s}\""),
                };
                lines.push(if has_k { format!("{n},{k},{value}") } else { format!("{n},{value}") });
            }
            lines.join("\n")
        }
        Format::Json => {
            let records: Vec<Value> = cells()
                .map(|(n, k, c)| {
                    if has_k {
                        json!({ "n": n, "k": k, "value": c.json() })
                    } else {
                        json!({ "n": n, "value": c.json() })
                    }
                })
                .collect();
            canonical_json(&json!({ "table": name(which), "rows": records }))
        }
    }
}
