//! Structural predicates on monomial ideals: lexsegment, weakly reverse
//! lexicographic and Borel-fixed.
//!
//! Variable indices are 0-based in the API; the JSON form of a witness numbers
//! variables from 1 to match the names `x1, ..., xn`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::rank;
use crate::monomial::{binomial, lex_descending, monomials_of_degree, Monomial};
use crate::monomial_ideal::MonomialIdeal;
use crate::order::{binom_p_leq, MonomialOrder};

/// Evidence that a predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `member` lies in the ideal, `missing` is lex-larger of the same degree and does not.
    Lex { member: Monomial, missing: Monomial },
    /// `missing` is degrevlex-larger than the generator and not in the ideal.
    Revlex {
        generator: Monomial,
        missing: Monomial,
    },
    /// `generator * (x_i / x_j)^s` is not in the ideal.
    Borel {
        generator: Monomial,
        i: usize,
        j: usize,
        s: u16,
        missing: Monomial,
    },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let e = |m: &Monomial| m.exponents().to_vec();
        match self {
            Witness::Lex { member, missing } => {
                json!({ "member": e(member), "missing": e(missing) })
            }
            Witness::Revlex { generator, missing } => {
                json!({ "generator": e(generator), "missing": e(missing) })
            }
            Witness::Borel {
                generator,
                i,
                j,
                s,
                missing,
            } => json!({
                "generator": e(generator),
                "i": i + 1,
                "j": j + 1,
                "s": s,
                "missing": e(missing),
            }),
        }
    }

    /// The monomial that should be in the ideal but is not.
    pub fn missing(&self) -> &Monomial {
        match self {
            Witness::Lex { missing, .. }
            | Witness::Revlex { missing, .. }
            | Witness::Borel { missing, .. } => missing,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    fn holds(property: &'static str) -> Self {
        PropertyVerdict {
            property,
            holds: true,
            witness: None,
        }
    }

    fn fails(property: &'static str, w: Witness) -> Self {
        PropertyVerdict {
            property,
            holds: false,
            witness: Some(w),
        }
    }

    /// `{"property", "holds", "witness"?}`.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "property": self.property, "holds": self.holds });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}

/// Every degree-`d` piece up to `maxdeg` is an initial segment in descending lex.
pub fn is_lexsegment(j: &MonomialIdeal) -> PropertyVerdict {
    const NAME: &str = "lexsegment";
    let Ok(top) = j.maxdeg() else {
        return PropertyVerdict::holds(NAME);
    };
    for d in 0..=top {
        let mut first_gap: Option<Monomial> = None;
        for m in lex_descending(j.nvars(), d) {
            let inside = j.contains_unchecked(&m);
            match (&first_gap, inside) {
                (None, false) => first_gap = Some(m),
                (Some(gap), true) => {
                    return PropertyVerdict::fails(
                        NAME,
                        Witness::Lex {
                            member: m,
                            missing: gap.clone(),
                        },
                    )
                }
                _ => {}
            }
        }
    }
    PropertyVerdict::holds(NAME)
}

/// For each minimal generator, every same-degree degrevlex-larger monomial is a member.
pub fn is_weakly_revlex(j: &MonomialIdeal) -> PropertyVerdict {
    const NAME: &str = "weakly_revlex";
    let ord = MonomialOrder::DegRevLex;
    let mut by_degree: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for g in j.generators() {
        let pieces = by_degree.entry(g.degree()).or_insert_with(|| {
            let mut ms = monomials_of_degree(j.nvars(), g.degree());
            ms.sort_by(|a, b| ord.cmp(b, a));
            ms
        });
        for m in pieces.iter() {
            if ord.cmp(m, g).is_le() {
                break;
            }
            if !j.contains_unchecked(m) {
                return PropertyVerdict::fails(
                    NAME,
                    Witness::Revlex {
                        generator: g.clone(),
                        missing: m.clone(),
                    },
                );
            }
        }
    }
    PropertyVerdict::holds(NAME)
}

/// Combinatorial Borel-fixedness in characteristic `p` (0 or a prime).
pub fn is_borel_fixed(j: &MonomialIdeal, p: u64) -> Result<PropertyVerdict> {
    const NAME: &str = "borel_fixed";
    binom_p_leq(0, 0, p)?;
    let n = j.nvars();
    for g in j.generators() {
        for jj in 0..n {
            let t = g.exponent(jj);
            for s in 1..=t {
                if !binom_p_leq(s as u64, t as u64, p)? {
                    continue;
                }
                for i in 0..jj {
                    let mut m = g.clone();
                    m.set_exponent(jj, t - s);
                    m.set_exponent(i, m.exponent(i) + s);
                    if !j.contains_unchecked(&m) {
                        return Ok(PropertyVerdict::fails(
                            NAME,
                            Witness::Borel {
                                generator: g.clone(),
                                i,
                                j: jj,
                                s,
                                missing: m,
                            },
                        ));
                    }
                }
            }
        }
    }
    Ok(PropertyVerdict::holds(NAME))
}

/// Whether the substitution `x_j -> x_j + c*x_i` maps `J_d` onto itself for all `d <= horizon`,
/// by exact row reduction over Q.
pub fn borel_action_check(
    j: &MonomialIdeal,
    i: usize,
    jj: usize,
    c: &Rational,
    horizon: u32,
) -> Result<bool> {
    let n = j.nvars();
    if i >= jj || jj >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= i < j < {n}, got i = {i}, j = {jj}"
        )));
    }
    if c.is_zero() {
        return Err(Error::InvalidArgument("the action needs c != 0".into()));
    }
    for d in 0..=horizon {
        let all = monomials_of_degree(n, d);
        let col: HashMap<&Monomial, usize> = all.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let members: Vec<&Monomial> = all.iter().filter(|m| j.contains_unchecked(m)).collect();
        if members.is_empty() {
            continue;
        }
        let mut images = Vec::with_capacity(members.len());
        for m in &members {
            let mut row = vec![Rational::zero(); all.len()];
            let e = m.exponent(jj);
            let mut cpow = Rational::one();
            // (x_j + c x_i)^e = sum_k binom(e, k) c^k x_i^k x_j^(e-k)
            for k in 0..=e {
                let mut img = (*m).clone();
                img.set_exponent(jj, e - k);
                img.set_exponent(i, m.exponent(i) + k);
                row[col[&img]] += Rational::from_i64(binomial(e as u64, k as u64) as i64) * &cpow;
                cpow *= c;
            }
            images.push(row);
        }
        let basis: Vec<Vec<Rational>> = members
            .iter()
            .map(|m| {
                let mut row = vec![Rational::zero(); all.len()];
                row[col[m]] = Rational::one();
                row
            })
            .collect();
        let r_images = rank(images.clone(), all.len());
        let mut both = images;
        both.extend(basis);
        let r_both = rank(both, all.len());
        if r_images != members.len() || r_both != members.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
