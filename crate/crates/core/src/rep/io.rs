//! Text format for modules.
//!
//! ```text
//! module over example.alg
//! dim 1 1
//! dim 2 2
//! map a 1; 0
//! ```
//!
//! Rows of a matrix are separated by `;`, entries by spaces; rationals are
//! written `p/q`. Arrows without a `map` line act by zero and vertices
//! without a `dim` line are zero.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

use super::Rep;

/// The algebra file named by the `module over` line.
pub fn module_header(text: &str) -> Result<String> {
    for (i, raw) in text.lines().enumerate() {
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() == Some("module") && words.next() == Some("over") {
            if let Some(path) = words.next() {
                return Ok(path.to_string());
            }
        }
        return Err(Error::parse(i + 1, 1, "expected `module over <algebra-file>`"));
    }
    Err(Error::parse(1, 1, "empty module file"))
}

fn strip(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parses a module over `alg`; the `module over` line is optional here.
pub fn parse_module<F: Field>(text: &str, alg: &Arc<Algebra<F>>) -> Result<Rep<F>> {
    let q = alg.quiver();
    let mut dims = vec![0usize; q.vertex_count()];
    let mut entries: Vec<Option<(usize, Vec<Vec<F>>)>> = vec![None; q.arrow_count()];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let col = |sub: &str| raw.find(sub).map_or(1, |c| c + 1);
        match kw {
            "module" => {}
            "dim" => {
                let mut w = rest.split_whitespace();
                let (Some(v), Some(n), None) = (w.next(), w.next(), w.next()) else {
                    return Err(Error::parse(line_no, 1, "expected `dim <vertex> <n>`"));
                };
                let x = q.vertex(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
                dims[x] = n
                    .parse()
                    .map_err(|_| Error::parse(line_no, col(n), format!("bad dimension `{n}`")))?;
            }
            "map" => {
                let rest = rest.trim();
                let (name, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let a = q.arrow(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
                let mut rows = Vec::new();
                for row in body.split(';') {
                    let row = row.trim();
                    if row.is_empty() {
                        continue;
                    }
                    let vals = row
                        .split_whitespace()
                        .map(|t| F::parse(t).ok_or_else(|| Error::parse(line_no, col(t), format!("bad scalar `{t}`"))))
                        .collect::<Result<Vec<F>>>()?;
                    rows.push(vals);
                }
                entries[a] = Some((line_no, rows));
            }
            _ => return Err(Error::parse(line_no, 1, format!("unknown keyword `{kw}`"))),
        }
    }
    let maps = q
        .arrows()
        .iter()
        .zip(entries)
        .map(|(info, e)| {
            let (r, c) = (dims[info.target], dims[info.source]);
            match e {
                None => Ok(Matrix::zeros(r, c)),
                Some((line_no, rows)) => {
                    if r * c == 0 && rows.is_empty() {
                        return Ok(Matrix::zeros(r, c));
                    }
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(Error::parse(line_no, 1, format!("map {} must be {r}x{c}", info.name)));
                    }
                    Ok(Matrix::from_rows(rows, c))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::new(alg.clone(), dims, maps)
}

/// Writes a module in the format read by [`parse_module`].
pub fn format_module<F: Field>(m: &Rep<F>, over: &str) -> String {
    let q = m.algebra().quiver();
    let mut out = format!("module over {over}\n");
    for x in 0..q.vertex_count() {
        if m.dim_at(x) > 0 {
            out.push_str(&format!("dim {} {}\n", q.vertex_name(x), m.dim_at(x)));
        }
    }
    for (a, info) in q.arrows().iter().enumerate() {
        let mat = m.map(a);
        if mat.rows() == 0 || mat.cols() == 0 || mat.is_zero() {
            continue;
        }
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| mat.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&format!("map {} {}\n", info.name, rows.join("; ")));
    }
    out
}
