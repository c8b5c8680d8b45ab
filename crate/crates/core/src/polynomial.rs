//! Sparse multivariate polynomials over an exact field, with an optional split of
//! the variables into parameters and main variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, ParseError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::{BaseOrder, MonomialOrder};

/// Variable names plus the optional parameter/main partition.
pub struct Ring {
    names: Vec<String>,
    main: Vec<usize>,
    params: Vec<usize>,
    main_ring: OnceLock<Arc<Ring>>,
    param_ring: OnceLock<Arc<Ring>>,
}

impl Ring {
    /// A ring without parameters.
    pub fn new(names: Vec<String>) -> Arc<Ring> {
        let main = (0..names.len()).collect();
        Arc::new(Ring {
            names,
            main,
            params: Vec::new(),
            main_ring: OnceLock::new(),
            param_ring: OnceLock::new(),
        })
    }

    /// `k[params][main]`, laid out with the main variables first.
    pub fn with_parameters(main: Vec<String>, params: Vec<String>) -> Arc<Ring> {
        let n = main.len();
        let total = n + params.len();
        let mut names = main;
        names.extend(params);
        Arc::new(Ring {
            names,
            main: (0..n).collect(),
            params: (n..total).collect(),
            main_ring: OnceLock::new(),
            param_ring: OnceLock::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn main_indices(&self) -> &[usize] {
        &self.main
    }

    pub fn param_indices(&self) -> &[usize] {
        &self.params
    }

    pub fn has_parameters(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `k[x̄]`: the ring of main variables only.
    pub fn main_ring(&self) -> Arc<Ring> {
        self.main_ring
            .get_or_init(|| Ring::new(self.main.iter().map(|&i| self.names[i].clone()).collect()))
            .clone()
    }

    /// `k[t̄]`: the ring of parameters only.
    pub fn param_ring(&self) -> Arc<Ring> {
        self.param_ring
            .get_or_init(|| Ring::new(self.params.iter().map(|&i| self.names[i].clone()).collect()))
            .clone()
    }

    fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.names == other.names && self.main == other.main && self.params == other.params
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("names", &self.names)
            .field("params", &self.params)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F> {
    pub coeff: F,
    pub monomial: Monomial,
}

/// Polynomial with nonzero terms kept strictly descending under its active order.
#[derive(Clone)]
pub struct Polynomial<F> {
    ring: Arc<Ring>,
    order: MonomialOrder,
    terms: Vec<Term<F>>,
}

/// Leading data of a polynomial viewed in `k[t̄][x̄]`.
#[derive(Clone, Debug)]
pub struct BlockLeadingData<F: Field> {
    /// Largest main-variable monomial, in `k[x̄]`.
    pub lead_monomial: Monomial,
    /// Its full coefficient, a polynomial in `k[t̄]`.
    pub lead_coefficient: Polynomial<F>,
}

/// Parameter values keyed by variable index in the parametric ring.
#[derive(Clone, Debug, Default)]
pub struct Point<F> {
    values: BTreeMap<usize, F>,
}

impl<F: Field> Point<F> {
    pub fn new() -> Self {
        Point {
            values: BTreeMap::new(),
        }
    }

    /// Assigns `values` to the ring's parameters in order.
    pub fn from_values(ring: &Ring, values: impl IntoIterator<Item = F>) -> Self {
        Point {
            values: ring.param_indices().iter().copied().zip(values).collect(),
        }
    }

    pub fn set(&mut self, var: usize, value: F) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: usize) -> Option<&F> {
        self.values.get(&var)
    }

    /// Values of the ring's parameters, in order; fails on the first unassigned one.
    pub fn param_values(&self, ring: &Ring) -> Result<Vec<F>> {
        ring.param_indices()
            .iter()
            .map(|&p| {
                self.get(p)
                    .cloned()
                    .ok_or_else(|| Error::UnassignedParameter(ring.names()[p].clone()))
            })
            .collect()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: Arc<Ring>, order: MonomialOrder) -> Self {
        Polynomial {
            ring,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Arc<Ring>, order: MonomialOrder, c: F) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, order, [(c, Monomial::one(n))])
    }

    pub fn variable(ring: Arc<Ring>, order: MonomialOrder, index: usize) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, order, [(F::one(), Monomial::var(n, index))])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(
        ring: Arc<Ring>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (F, Monomial)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial outside the ring");
            if c.is_zero() {
                continue;
            }
            acc.entry(m).and_modify(|x| *x += &c).or_insert(c);
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial { ring, order, terms }
    }

    /// Trusted constructor: terms already sorted, nonzero and distinct.
    pub(crate) fn from_sorted(ring: Arc<Ring>, order: MonomialOrder, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| order.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial { ring, order, terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn lead_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.monomial.degree();
                self.terms.iter().all(|t| t.monomial.degree() == d)
            }
        }
    }

    /// The same polynomial sorted under another order.
    pub fn with_order(&self, order: &MonomialOrder) -> Self {
        if &self.order == order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: self.ring.clone(),
            order: order.clone(),
            terms,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let other = other.with_order(&self.order);
        let terms = merge_combine(
            &self.order,
            &self.terms,
            None,
            &other.terms,
            &F::one(),
            None,
        );
        Ok(Polynomial::from_sorted(
            self.ring.clone(),
            self.order.clone(),
            terms,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let other = other.with_order(&self.order);
        let terms = merge_combine(
            &self.order,
            &self.terms,
            None,
            &other.terms,
            &-F::one(),
            None,
        );
        Ok(Polynomial::from_sorted(
            self.ring.clone(),
            self.order.clone(),
            terms,
        ))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone(), self.order.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone() * c,
                monomial: t.monomial.clone(),
            })
            .collect();
        Polynomial::from_sorted(self.ring.clone(), self.order.clone(), terms)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone(), self.order.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone() * c,
                monomial: t.monomial.mul(m),
            })
            .collect();
        Polynomial::from_sorted(self.ring.clone(), self.order.clone(), terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut acc = Self::zero(self.ring.clone(), self.order.clone());
        let other = other.with_order(&self.order);
        for t in &other.terms {
            let part = self.mul_term(&t.coeff, &t.monomial);
            let terms = merge_combine(&self.order, &acc.terms, None, &part.terms, &F::one(), None);
            acc.terms = terms;
        }
        Ok(acc)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero lead")),
            _ => self.clone(),
        }
    }

    /// Canonical scalar multiple: primitive with positive lead over Q, monic over GF(p).
    pub fn normalized(&self) -> Self {
        match F::normalizer(self.terms.iter().map(|t| &t.coeff)) {
            Some(k) => self.scale(&k),
            None => self.clone(),
        }
    }

    /// Substitutes parameter values; the result lives in the main-variable ring.
    pub fn specialize(&self, point: &Point<F>) -> Result<Self> {
        let ring = &self.ring;
        let params = ring.param_indices();
        let main = ring.main_indices();
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut c = t.coeff.clone();
            for &p in params {
                let e = t.monomial.exponent(p);
                if e == 0 {
                    continue;
                }
                let v = point
                    .get(p)
                    .ok_or_else(|| Error::UnassignedParameter(ring.names()[p].clone()))?;
                for _ in 0..e {
                    c *= v;
                }
            }
            out.push((c, t.monomial.project(main)));
        }
        let order = match &self.order {
            MonomialOrder::InverseBlock(b) => MonomialOrder::base(b.main_order()),
            other => other.clone(),
        };
        Ok(Self::from_terms(ring.main_ring(), order, out))
    }

    /// Evaluates at a full point (one value per ring variable).
    pub fn evaluate(&self, values: &[F]) -> Result<F> {
        let n = self.ring.nvars();
        if values.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: values.len(),
            });
        }
        let mut acc = F::zero();
        for t in &self.terms {
            let mut c = t.coeff.clone();
            for (v, &e) in values.iter().zip(t.monomial.exponents()) {
                for _ in 0..e {
                    c *= v;
                }
            }
            acc += c;
        }
        Ok(acc)
    }

    /// Leading main-variable monomial under `main_order` and its coefficient in `k[t̄]`.
    pub fn block_leading_data(&self, main_order: BaseOrder) -> Result<BlockLeadingData<F>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ring = &self.ring;
        let main = ring.main_indices();
        let params = ring.param_indices();
        let ord = MonomialOrder::base(main_order);
        let lead = self
            .terms
            .iter()
            .map(|t| t.monomial.project(main))
            .max_by(|a, b| ord.cmp(a, b))
            .expect("nonempty");
        let coeff_order = match &self.order {
            MonomialOrder::InverseBlock(b) => MonomialOrder::base(b.param_order()),
            _ => ord.clone(),
        };
        let coeff_terms = self
            .terms
            .iter()
            .filter(|t| t.monomial.project(main) == lead)
            .map(|t| (t.coeff.clone(), t.monomial.project(params)));
        let lead_coefficient = Self::from_terms(ring.param_ring(), coeff_order, coeff_terms);
        Ok(BlockLeadingData {
            lead_monomial: lead,
            lead_coefficient,
        })
    }

    /// Parses `c*x1^e1*...` terms joined by `+`/`-`.
    pub fn parse(ring: Arc<Ring>, order: MonomialOrder, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Self::zero(ring, order));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(ParseError::Term(compact.clone()).into());
                    }
                    pieces.push((negative, std::mem::take(&mut cur)));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(ParseError::Term(compact).into());
        }
        pieces.push((negative, cur));

        let n = ring.nvars();
        let mut terms = Vec::with_capacity(pieces.len());
        for (neg, piece) in pieces {
            let mut coeff = F::one();
            let mut mono = Monomial::one(n);
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(ParseError::Term(piece.clone()).into());
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= &F::parse_coeff(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<u16>()
                            .map_err(|_| ParseError::Exponent(factor.to_string()))?,
                    ),
                    None => (factor, 1),
                };
                let idx = ring
                    .index_of(name)
                    .ok_or_else(|| ParseError::UnknownVariable(name.to_string()))?;
                mono.set_exponent(idx, mono.exponent(idx) + exp);
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((coeff, mono));
        }
        Ok(Self::from_terms(ring, order, terms))
    }

    /// JSON form: `[[coefficient-string, [e1, ..., en]], ...]`, terms descending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|t| serde_json::json!([t.coeff.to_string(), t.monomial.exponents()]))
                .collect(),
        )
    }

    pub fn from_json(
        ring: Arc<Ring>,
        order: MonomialOrder,
        value: &serde_json::Value,
    ) -> Result<Self> {
        let raw: Vec<(String, Vec<u16>)> =
            serde_json::from_value(value.clone()).map_err(|e| ParseError::Term(e.to_string()))?;
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            if e.len() != n {
                return Err(ParseError::ExponentCount {
                    expected: n,
                    found: e.len(),
                }
                .into());
            }
            terms.push((F::parse_coeff(&c)?, Monomial::new(e)));
        }
        Ok(Self::from_terms(ring, order, terms))
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    /// Equal as ring elements (term sets), regardless of active order.
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_as(&other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        let other = other.with_order(&self.order);
        self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        for (i, t) in self.terms.iter().enumerate() {
            let s = t.coeff.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = t.monomial.is_one();
            if mag != "1" || unit {
                f.write_str(&mag)?;
                if !unit {
                    f.write_str("*")?;
                }
            }
            if !unit {
                write!(f, "{}", t.monomial.display_with(names))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `alpha*a - beta*shift*b` for descending term lists `a`, `b` (`alpha = None` means 1).
/// `neg_beta` is `-beta`; passing `F::one()` adds.
pub(crate) fn merge_combine<F: Field>(
    order: &MonomialOrder,
    a: &[Term<F>],
    alpha: Option<&F>,
    b: &[Term<F>],
    neg_beta: &F,
    shift: Option<&Monomial>,
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scale_a = |c: &F| match alpha {
        Some(k) => c.clone() * k,
        None => c.clone(),
    };
    let shifted = |m: &Monomial| match shift {
        Some(s) => m.mul(s),
        None => m.clone(),
    };
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|t| shifted(&t.monomial));
    while i < a.len() {
        let Some(mb) = bj.as_ref() else { break };
        match order.cmp(&a[i].monomial, mb) {
            Ordering::Greater => {
                out.push(Term {
                    coeff: scale_a(&a[i].coeff),
                    monomial: a[i].monomial.clone(),
                });
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: b[j].coeff.clone() * neg_beta,
                    monomial: bj.take().unwrap(),
                });
                j += 1;
                bj = b.get(j).map(|t| shifted(&t.monomial));
            }
            Ordering::Equal => {
                let c = scale_a(&a[i].coeff) + b[j].coeff.clone() * neg_beta;
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        monomial: a[i].monomial.clone(),
                    });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| shifted(&t.monomial));
            }
        }
    }
    for t in &a[i..] {
        out.push(Term {
            coeff: scale_a(&t.coeff),
            monomial: t.monomial.clone(),
        });
    }
    if let Some(mb) = bj {
        out.push(Term {
            coeff: b[j].coeff.clone() * neg_beta,
            monomial: mb,
        });
        for t in &b[j + 1..] {
            out.push(Term {
                coeff: t.coeff.clone() * neg_beta,
                monomial: shifted(&t.monomial),
            });
        }
    }
    out
}
