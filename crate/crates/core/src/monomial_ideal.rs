//! Monomial ideals and the Hilbert series of their quotients.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::monomial::{binomial, default_names, Monomial};

/// Ideal given by its minimal generators, kept in descending lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Drops every monomial that is a multiple of another one in the list.
fn minimal_set(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(ms.len());
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Minimal generators of the ideal generated by `monomials` in `n` variables.
pub fn minimalize(
    n: usize,
    monomials: impl IntoIterator<Item = Monomial>,
) -> Result<MonomialIdeal> {
    let ms: Vec<Monomial> = monomials.into_iter().collect();
    if let Some(m) = ms.iter().find(|m| m.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.nvars(),
        });
    }
    Ok(MonomialIdeal {
        n,
        gens: minimal_set(ms),
    })
}

impl MonomialIdeal {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        minimalize(n, monomials)
    }

    /// Convenience constructor from exponent rows.
    pub fn from_exponents<I, R>(n: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[u16]>,
    {
        minimalize(
            n,
            rows.into_iter()
                .map(|r| Monomial::new(r.as_ref().iter().copied())),
        )
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.nvars(),
            });
        }
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest degree of a minimal generator.
    pub fn maxdeg(&self) -> Result<u32> {
        self.gens
            .iter()
            .map(Monomial::degree)
            .max()
            .ok_or(Error::ZeroIdeal)
    }

    pub fn generators_of_degree(&self, d: u32) -> impl Iterator<Item = &Monomial> {
        self.gens.iter().filter(move |g| g.degree() == d)
    }

    /// Number of minimal generators in each degree `0..=maxdeg`.
    pub fn generator_counts(&self) -> Vec<usize> {
        let top = self.maxdeg().unwrap_or(0) as usize;
        let mut counts = vec![0; top + 1];
        for g in &self.gens {
            counts[g.degree() as usize] += 1;
        }
        counts
    }

    /// Numerator `N(t)` with `HS(S/J; t) = N(t) / (1 - t)^n`, lowest degree first.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let mut memo = HashMap::new();
        let mut out = numerator(self.n, self.gens.clone(), &mut memo);
        trim(&mut out);
        out
    }

    /// `dim_k (S/J)_d`.
    pub fn hilbert_function(&self, d: u32) -> u64 {
        let num = self.hilbert_numerator();
        hf_from_numerator(&num, self.n, d)
    }

    /// Hilbert series of `S/J` up to `horizon`, by default `max(maxdeg + n, 10)`.
    pub fn hilbert_series(&self, horizon: Option<u32>) -> SeriesWindow {
        let horizon = horizon.unwrap_or_else(|| self.default_horizon());
        SeriesWindow::from_rational(self.hilbert_numerator(), self.n as u32, horizon).simplified()
    }

    pub fn default_horizon(&self) -> u32 {
        (self.maxdeg().unwrap_or(0) + self.n as u32).max(10)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            n: self.n,
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        })
        .expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: IdealJson =
            serde_json::from_value(value.clone()).map_err(|e| ParseError::Term(e.to_string()))?;
        if let Some(row) = raw.gens.iter().find(|r| r.len() != raw.n) {
            return Err(ParseError::ExponentCount {
                expected: raw.n,
                found: row.len(),
            }
            .into());
        }
        Self::from_exponents(raw.n, raw.gens)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u16>>,
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.n);
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display_with(&names))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{self}")
    }
}

fn trim(p: &mut Vec<i64>) {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
}

fn add_into(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn numerator(
    n: usize,
    gens: Vec<Monomial>,
    memo: &mut HashMap<Vec<Monomial>, Vec<i64>>,
) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    let result = if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = acc.clone();
            add_into(&mut next, &acc.iter().map(|c| -c).collect::<Vec<_>>(), d);
            acc = next;
        }
        acc
    } else {
        let mut freq = vec![0usize; n];
        for g in &gens {
            for (i, &e) in g.exponents().iter().enumerate() {
                if e > 0 {
                    freq[i] += 1;
                }
            }
        }
        let pivot = (0..n)
            .max_by_key(|&i| (freq[i], std::cmp::Reverse(i)))
            .unwrap();
        let x = Monomial::var(n, pivot);
        let mut plus = gens.clone();
        plus.push(x.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| g.quotient(&x).unwrap_or_else(|| g.clone()))
            .collect();
        let mut acc = numerator(n, minimal_set(plus), memo);
        let tail = numerator(n, minimal_set(colon), memo);
        add_into(&mut acc, &tail, 1);
        acc
    };
    memo.insert(gens, result.clone());
    result
}

/// Coefficient of `t^d` in `N(t) / (1 - t)^n`.
pub fn hf_from_numerator(num: &[i64], n: usize, d: u32) -> u64 {
    let mut acc: i128 = 0;
    for (k, &c) in num.iter().enumerate() {
        let k = k as u32;
        if k > d || c == 0 {
            continue;
        }
        let ways = if n == 0 {
            u64::from(k == d)
        } else {
            binomial((d - k) as u64 + n as u64 - 1, n as u64 - 1)
        };
        acc += c as i128 * ways as i128;
    }
    debug_assert!(acc >= 0, "negative Hilbert function value");
    acc.max(0) as u64
}

/// `N(t) / (1 - t)^k` with `N` listed lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalForm {
    pub numerator: Vec<i64>,
    pub denominator_power: u32,
}

impl RationalForm {
    /// Cancels common factors `(1 - t)`.
    pub fn simplified(&self) -> RationalForm {
        let mut num = self.numerator.clone();
        let mut k = self.denominator_power;
        while k > 0 && num.iter().sum::<i64>() == 0 && num.iter().any(|&c| c != 0) {
            // synthetic division by (1 - t): q_i = sum_{j <= i} a_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut run = 0;
            for &c in &num[..num.len() - 1] {
                run += c;
                q.push(run);
            }
            num = q;
            k -= 1;
        }
        trim(&mut num);
        RationalForm {
            numerator: num,
            denominator_power: k,
        }
    }

    /// Human-readable form such as `(t^2 + 2*t + 1)/(1 - t)`.
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.numerator.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{mag}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{mag}*t^{i}"),
            };
            let sign = if c < 0 { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        let num = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        };
        match self.denominator_power {
            0 => num,
            1 => format!("({num})/(1 - t)"),
            k => format!("({num})/(1 - t)^{k}"),
        }
    }
}

/// Coefficients `c_0..=c_D` of a power series, with an optional closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWindow {
    coeffs: Vec<i64>,
    rational: Option<RationalForm>,
}

impl SeriesWindow {
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a window holds at least c_0");
        SeriesWindow {
            coeffs,
            rational: None,
        }
    }

    /// Expands `numerator / (1 - t)^k` up to `horizon`.
    pub fn from_rational(numerator: Vec<i64>, k: u32, horizon: u32) -> Self {
        let mut coeffs = vec![0i64; horizon as usize + 1];
        for (i, c) in numerator.iter().enumerate().take(coeffs.len()) {
            coeffs[i] = *c;
        }
        for _ in 0..k {
            for i in 1..coeffs.len() {
                coeffs[i] += coeffs[i - 1];
            }
        }
        SeriesWindow {
            coeffs,
            rational: Some(RationalForm {
                numerator,
                denominator_power: k,
            }),
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn horizon(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, d: u32) -> Option<i64> {
        self.coeffs.get(d as usize).copied()
    }

    pub fn rational(&self) -> Option<&RationalForm> {
        self.rational.as_ref()
    }

    pub fn simplified(mut self) -> Self {
        self.rational = self.rational.map(|r| r.simplified());
        self
    }

    /// The same series cut or re-expanded to `horizon`; re-expansion needs the closed form.
    pub fn with_horizon(&self, horizon: u32) -> Option<Self> {
        if horizon <= self.horizon() {
            return Some(SeriesWindow {
                coeffs: self.coeffs[..=horizon as usize].to_vec(),
                rational: self.rational.clone(),
            });
        }
        let r = self.rational.as_ref()?;
        Some(Self::from_rational(
            r.numerator.clone(),
            r.denominator_power,
            horizon,
        ))
    }

    pub fn drop_rational(mut self) -> Self {
        self.rational = None;
        self
    }

    /// `{"coeffs": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "coeffs": self.coeffs })
    }
}
