//! Monomial orders, including inverse block orders over a parameter/main split.
//!
//! Variables are ranked `x_1 > x_2 > ... > x_n` in every order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::field::is_prime;
use crate::monomial::Monomial;

/// The non-block orders, usable on the whole ring or on a subset of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    Lex,
    DegLex,
    /// Ties in degree go to the monomial with the smaller exponent in the last
    /// variable where the two differ.
    DegRevLex,
}

impl BaseOrder {
    fn cmp_pairs<I>(self, pairs: I) -> Ordering
    where
        I: DoubleEndedIterator<Item = (u16, u16)> + Clone,
    {
        let by_degree = || {
            let (da, db) = pairs
                .clone()
                .fold((0u32, 0u32), |(x, y), (a, b)| (x + a as u32, y + b as u32));
            da.cmp(&db)
        };
        match self {
            BaseOrder::Lex => lex(pairs),
            BaseOrder::DegLex => by_degree().then_with(|| lex(pairs)),
            BaseOrder::DegRevLex => by_degree().then_with(|| {
                for (a, b) in pairs.rev() {
                    if a != b {
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseOrder::Lex => "lex",
            BaseOrder::DegLex => "deglex",
            BaseOrder::DegRevLex => "degrevlex",
        }
    }
}

fn lex<I: Iterator<Item = (u16, u16)>>(pairs: I) -> Ordering {
    for (a, b) in pairs {
        if a != b {
            return a.cmp(&b);
        }
    }
    Ordering::Equal
}

impl FromStr for BaseOrder {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match s.to_ascii_lowercase().as_str() {
            "lex" | "plex" => Ok(BaseOrder::Lex),
            "deglex" | "grlex" => Ok(BaseOrder::DegLex),
            "degrevlex" | "grevlex" | "dp" => Ok(BaseOrder::DegRevLex),
            _ => Err(ParseError::Order(s.to_string())),
        }
    }
}

impl fmt::Display for BaseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inverse block order: main-variable parts are compared first by `main_order`,
/// parameter parts break ties by `param_order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockOrder {
    nvars: usize,
    main: Vec<usize>,
    params: Vec<usize>,
    main_order: BaseOrder,
    param_order: BaseOrder,
}

impl BlockOrder {
    pub fn main(&self) -> &[usize] {
        &self.main
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn main_order(&self) -> BaseOrder {
        self.main_order
    }

    pub fn param_order(&self) -> BaseOrder {
        self.param_order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
    InverseBlock(Arc<BlockOrder>),
}

impl MonomialOrder {
    /// Inverse block order on `nvars` variables whose main variables are `main`
    /// (every other index is a parameter).
    pub fn inverse_block(
        nvars: usize,
        main: &[usize],
        main_order: BaseOrder,
        param_order: BaseOrder,
    ) -> Result<Self> {
        let mut is_main = vec![false; nvars];
        for &i in main {
            if i >= nvars || is_main[i] {
                return Err(Error::InvalidArgument(format!(
                    "bad main-variable index {i} for {nvars} variables"
                )));
            }
            is_main[i] = true;
        }
        let mut main = main.to_vec();
        main.sort_unstable();
        let params = (0..nvars).filter(|&i| !is_main[i]).collect();
        Ok(MonomialOrder::InverseBlock(Arc::new(BlockOrder {
            nvars,
            main,
            params,
            main_order,
            param_order,
        })))
    }

    pub fn base(order: BaseOrder) -> Self {
        match order {
            BaseOrder::Lex => MonomialOrder::Lex,
            BaseOrder::DegLex => MonomialOrder::DegLex,
            BaseOrder::DegRevLex => MonomialOrder::DegRevLex,
        }
    }

    pub fn as_base(&self) -> Option<BaseOrder> {
        match self {
            MonomialOrder::Lex => Some(BaseOrder::Lex),
            MonomialOrder::DegLex => Some(BaseOrder::DegLex),
            MonomialOrder::DegRevLex => Some(BaseOrder::DegRevLex),
            MonomialOrder::InverseBlock(_) => None,
        }
    }

    pub fn block(&self) -> Option<&BlockOrder> {
        match self {
            MonomialOrder::InverseBlock(b) => Some(b),
            _ => None,
        }
    }

    /// Comparison without dimension checks; callers guarantee matching rings.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exponents(), b.exponents());
        debug_assert_eq!(x.len(), y.len());
        let full = || x.iter().copied().zip(y.iter().copied());
        match self {
            MonomialOrder::Lex => lex(full()),
            MonomialOrder::DegLex => BaseOrder::DegLex.cmp_pairs(full()),
            MonomialOrder::DegRevLex => BaseOrder::DegRevLex.cmp_pairs(full()),
            MonomialOrder::InverseBlock(b) => {
                let main = b.main.iter().map(|&i| (x[i], y[i]));
                b.main_order.cmp_pairs(main).then_with(|| {
                    let params = b.params.iter().map(|&i| (x[i], y[i]));
                    b.param_order.cmp_pairs(params)
                })
            }
        }
    }

    /// Comparison that rejects monomials from different ambient rings.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let expected = match self {
            MonomialOrder::InverseBlock(b) => b.nvars,
            _ => a.nvars(),
        };
        for m in [a, b] {
            if m.nvars() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: m.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::InverseBlock(b) => {
                format!("inverse-block({},{})", b.main_order, b.param_order)
            }
            other => other.as_base().unwrap().name().to_string(),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        BaseOrder::from_str(s).map(MonomialOrder::base)
    }
}

/// `s ⪯_p t`: `binom(t, s)` is nonzero modulo `p` (ordinary `s <= t` when `p == 0`).
///
/// Uses Lucas' theorem: every base-`p` digit of `s` is at most the matching digit of `t`.
pub fn binom_p_leq(s: u64, t: u64, p: u64) -> Result<bool> {
    if p == 0 {
        return Ok(s <= t);
    }
    if !is_prime(p) {
        return Err(Error::CompositeCharacteristic(p));
    }
    let (mut s, mut t) = (s, t);
    while s > 0 || t > 0 {
        if s % p > t % p {
            return Ok(false);
        }
        s /= p;
        t /= p;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomials_of_degree;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    fn sorted_desc(order: &MonomialOrder, n: usize, d: u32) -> Vec<Monomial> {
        let mut ms = monomials_of_degree(n, d);
        ms.sort_by(|a, b| order.cmp(b, a));
        ms
    }

    #[test]
    fn lex_first_variable_decides() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 2]), &m(&[0, 4, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn identical_monomials_compare_equal() {
        let a = m(&[1, 2, 3]);
        for o in [
            MonomialOrder::Lex,
            MonomialOrder::DegLex,
            MonomialOrder::DegRevLex,
        ] {
            assert_eq!(o.cmp(&a, &a), Ordering::Equal);
        }
    }

    #[test]
    fn degrevlex_degree_two_table() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        let expected: Vec<_> = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ]
        .iter()
        .map(|e| m(e))
        .collect();
        assert_eq!(sorted_desc(&o, 3, 2), expected);
    }

    #[test]
    fn degrevlex_degree_three_table() {
        let expected: Vec<_> = [
            [3, 0, 0],
            [2, 1, 0],
            [1, 2, 0],
            [0, 3, 0],
            [2, 0, 1],
            [1, 1, 1],
            [0, 2, 1],
            [1, 0, 2],
            [0, 1, 2],
            [0, 0, 3],
        ]
        .iter()
        .map(|e| m(e))
        .collect();
        assert_eq!(sorted_desc(&MonomialOrder::DegRevLex, 3, 3), expected);
    }

    #[test]
    fn deglex_vs_degrevlex_differ_at_degree_three() {
        // x1*x3^2 vs x2^3: deglex prefers the x1 term, degrevlex the x2 term
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::DegLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn inverse_block_main_part_dominates() {
        // variables (x1, x2, t1): main = {0, 1}
        let o =
            MonomialOrder::inverse_block(3, &[0, 1], BaseOrder::Lex, BaseOrder::DegRevLex).unwrap();
        // t1^5 * x2 < x1
        assert_eq!(o.cmp(&m(&[0, 1, 5]), &m(&[1, 0, 0])), Ordering::Less);
        // same main part: parameter order decides
        assert_eq!(o.cmp(&m(&[1, 0, 2]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let o = MonomialOrder::inverse_block(3, &[0], BaseOrder::Lex, BaseOrder::Lex).unwrap();
        assert!(matches!(
            o.try_cmp(&m(&[1, 0]), &m(&[0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(MonomialOrder::Lex
            .try_cmp(&m(&[1, 0]), &m(&[0, 1, 0]))
            .is_err());
    }

    #[test]
    fn binom_p_leq_examples() {
        assert!(binom_p_leq(1, 3, 2).unwrap());
        assert!(!binom_p_leq(1, 2, 2).unwrap());
        for t in 0..20 {
            for p in [0, 2, 3, 5, 7] {
                assert!(binom_p_leq(0, t, p).unwrap());
            }
        }
        assert_eq!(binom_p_leq(1, 2, 4), Err(Error::CompositeCharacteristic(4)));
    }

    #[test]
    fn lucas_matches_direct_binomials() {
        for p in [2u64, 3, 5] {
            for t in 0..=12u64 {
                for s in 0..=t {
                    let direct = !crate::monomial::binomial(t, s).is_multiple_of(p);
                    assert_eq!(binom_p_leq(s, t, p).unwrap(), direct, "s={s} t={t} p={p}");
                }
            }
        }
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::DegLex,
            MonomialOrder::DegRevLex,
            MonomialOrder::inverse_block(4, &[0, 2], BaseOrder::Lex, BaseOrder::DegRevLex).unwrap(),
            MonomialOrder::inverse_block(4, &[1, 3], BaseOrder::DegRevLex, BaseOrder::Lex).unwrap(),
        ]
    }

    fn mono4() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..5, 4).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn orders_are_monomial_orders(a in mono4(), b in mono4(), c in mono4(), u in mono4()) {
            let one = Monomial::one(4);
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
                prop_assert_eq!(o.cmp(&a.mul(&u), &b.mul(&u)), ab);
                prop_assert_ne!(o.cmp(&one, &a), Ordering::Greater);
            }
        }

        #[test]
        fn inverse_block_restricts_to_main_order(
            a in proptest::collection::vec(0u16..5, 2),
            b in proptest::collection::vec(0u16..5, 2),
        ) {
            for main_order in [BaseOrder::Lex, BaseOrder::DegLex, BaseOrder::DegRevLex] {
                let o = MonomialOrder::inverse_block(5, &[1, 3], main_order, BaseOrder::Lex).unwrap();
                let ma = Monomial::new(a.iter().copied());
                let mb = Monomial::new(b.iter().copied());
                let ea = ma.embed(5, &[1, 3]);
                let eb = mb.embed(5, &[1, 3]);
                prop_assert_eq!(o.cmp(&ea, &eb), MonomialOrder::base(main_order).cmp(&ma, &mb));
            }
        }
    }
}
