//! Exponent vectors.

use std::fmt;

use smallvec::SmallVec;

/// Power product `x_1^e_1 ... x_n^e_n` over a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u16>) -> Self {
        Monomial {
            exps: exps.into_iter().collect(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// The variable `x_{index}` (0-based) as a monomial.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn set_exponent(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Bit `i % 64` is set when `x_i` occurs. `a | b` requires `mask(a) & !mask(b) == 0`.
    pub fn divmask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << (i % 64))
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Keeps only the exponents at `indices`, in that order.
    pub fn project(&self, indices: &[usize]) -> Monomial {
        Monomial {
            exps: indices.iter().map(|&i| self.exps[i]).collect(),
        }
    }

    /// Writes this monomial (over `indices.len()` variables) into positions `indices` of an
    /// `nvars`-variable monomial.
    pub fn embed(&self, nvars: usize, indices: &[usize]) -> Monomial {
        let mut m = Monomial::one(nvars);
        for (k, &i) in indices.iter().enumerate() {
            m.exps[i] = self.exps[k];
        }
        m
    }

    /// Formats with the given variable names, e.g. `x1^2*x3`; `1` for the unit.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { m: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

struct DisplayWith<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Standard names `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Number of degree-`d` monomials in `n` variables, `binom(n + d - 1, d)`.
pub fn count_of_degree(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial((n as u64) + d as u64 - 1, d as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Degree-`d` monomials in `n` variables, in descending lexicographic order.
pub fn lex_descending(n: usize, d: u32) -> LexWalk {
    let start = if n == 0 {
        None
    } else {
        let mut e = vec![0u16; n];
        e[0] = d as u16;
        Some(e)
    };
    LexWalk {
        cur: start,
        ascending: false,
    }
}

/// Degree-`d` monomials in `n` variables, in ascending lexicographic order.
pub fn lex_ascending(n: usize, d: u32) -> LexWalk {
    let start = if n == 0 {
        None
    } else {
        let mut e = vec![0u16; n];
        e[n - 1] = d as u16;
        Some(e)
    };
    LexWalk {
        cur: start,
        ascending: true,
    }
}

/// Lazy walk over one graded piece in lex order.
pub struct LexWalk {
    cur: Option<Vec<u16>>,
    ascending: bool,
}

impl Iterator for LexWalk {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.cur.take()?;
        let out = Monomial::new(cur.iter().copied());
        self.cur = if self.ascending {
            lex_up(cur)
        } else {
            lex_down(cur)
        };
        Some(out)
    }
}

fn lex_down(mut e: Vec<u16>) -> Option<Vec<u16>> {
    let n = e.len();
    let i = (0..n.saturating_sub(1)).rev().find(|&i| e[i] > 0)?;
    let tail: u16 = e[i + 1..].iter().sum();
    e[i] -= 1;
    for x in &mut e[i + 1..] {
        *x = 0;
    }
    e[i + 1] = tail + 1;
    Some(e)
}

fn lex_up(mut e: Vec<u16>) -> Option<Vec<u16>> {
    let n = e.len();
    let k = (1..n).rev().find(|&k| e[k] > 0)?;
    let v = e[k] - 1;
    e[k - 1] += 1;
    e[k] = 0;
    e[n - 1] = v;
    Some(e)
}

/// All degree-`d` monomials in `n` variables (descending lex).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    lex_descending(n, d).collect()
}
