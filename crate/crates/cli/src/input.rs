//! Reading ideals, series and polynomials from files or standard input.

use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use ginlab_core::monomial::default_names;
use ginlab_core::{Field, Monomial, MonomialIdeal, MonomialOrder, Polynomial, Ring, SeriesWindow};

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// `{"n": n, "gens": [[e1, ..., en], ...]}`.
pub fn read_ideal(path: &Path) -> Result<MonomialIdeal> {
    let v = read_json(path)?;
    Ok(MonomialIdeal::from_json(&v)?)
}

/// The same generators in `n >= j.nvars()` variables.
pub fn pad_ideal(j: &MonomialIdeal, n: usize) -> Result<MonomialIdeal> {
    if n < j.nvars() {
        bail!(
            "cannot read an ideal in {} variables with n = {n}",
            j.nvars()
        );
    }
    let gens = j.generators().iter().map(|g| {
        let mut e = g.exponents().to_vec();
        e.resize(n, 0);
        Monomial::new(e)
    });
    Ok(MonomialIdeal::new(n, gens)?)
}

/// `{"coeffs": [...]}` or a bare list of integers.
pub fn read_series(path: &Path) -> Result<SeriesWindow> {
    let v = read_json(path)?;
    let list = v.get("coeffs").unwrap_or(&v);
    let coeffs: Vec<i64> =
        serde_json::from_value(list.clone()).context("expected {\"coeffs\": [c0, ..., cD]}")?;
    if coeffs.is_empty() {
        bail!("the series has no coefficients");
    }
    Ok(SeriesWindow::new(coeffs))
}

/// Largest `k` with `xk` occurring in `text`.
fn max_variable(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < b.len() && b[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(k) = text[start..end].parse::<usize>() {
                best = best.max(k);
            }
            i = end.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

/// Polynomials in `x1, ..., xn`.
///
/// Accepted inputs: one polynomial per line in text form (`#` starts a comment line), a
/// JSON list whose entries are text strings or term lists `[[coeff, [e1, ..., en]], ...]`,
/// or an object `{"n": n, "polys": [...]}` with such a list.
pub fn read_polynomials<F: Field>(
    path: &Path,
    n: Option<usize>,
    order: &MonomialOrder,
) -> Result<Vec<Polynomial<F>>> {
    let text = read_text(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not valid JSON", path.display()))?;
        let (n_json, list) = match &v {
            Value::Object(m) => (
                m.get("n").and_then(Value::as_u64).map(|k| k as usize),
                m.get("polys").ok_or_else(|| anyhow!("missing \"polys\""))?,
            ),
            _ => (None, &v),
        };
        let items = list
            .as_array()
            .ok_or_else(|| anyhow!("expected a list of polynomials"))?;
        let n = match n.or(n_json) {
            Some(n) => n,
            None => items.iter().map(infer_json_vars).max().unwrap_or(0),
        };
        let ring = Ring::new(default_names(n));
        return items
            .iter()
            .map(|item| match item {
                Value::String(s) => Ok(Polynomial::parse(ring.clone(), order.clone(), s)?),
                other => Ok(Polynomial::from_json(ring.clone(), order.clone(), other)?),
            })
            .collect();
    }
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let n = n.unwrap_or_else(|| max_variable(&text));
    let ring = Ring::new(default_names(n));
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            Polynomial::parse(ring.clone(), order.clone(), l)
                .with_context(|| format!("line {}", i + 1))
        })
        .collect()
}

fn infer_json_vars(item: &Value) -> usize {
    match item {
        Value::String(s) => max_variable(s),
        Value::Array(terms) => terms
            .iter()
            .filter_map(|t| t.get(1).and_then(Value::as_array).map(Vec::len))
            .max()
            .unwrap_or(0),
        _ => 0,
    }
}
