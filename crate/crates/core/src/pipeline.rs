//! Generic templates and the two routes to their initial ideal.
//!
//! A template `F_i` carries one parameter `t{i}_{k}` per degree-`d_i` monomial,
//! `k` counting monomials in descending lex from 1. The sampling route replaces the
//! parameters by random nonzero integers; the parametric route computes one
//! Groebner basis over `k[t̄, x̄]` under an inverse block order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, ParseError, Result};
use crate::field::{Field, Gf32003, Rational};
use crate::groebner::{buchberger, buchberger_with, Budget};
use crate::linalg::rank;
use crate::monomial::{
    count_of_degree, default_names, lex_descending, monomials_of_degree, Monomial,
};
use crate::monomial_ideal::{minimalize, MonomialIdeal};
use crate::order::{BaseOrder, MonomialOrder};
use crate::polynomial::{Polynomial, Ring};
use crate::series::{default_horizon, froeberg_series};

/// Generic homogeneous forms of degrees `d_1, ..., d_s` in `n` variables.
#[derive(Clone, Debug)]
pub struct GenericInstance {
    n: usize,
    degrees: Vec<u32>,
    ring: Arc<Ring>,
    /// For each template, its monomials in descending lex; parameter `k` of template `i`
    /// is ring variable `offsets[i] + k`.
    supports: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
}

/// Builds the templates for `(n; d_1, ..., d_s)`.
pub fn generic_templates(n: usize, degrees: &[u32]) -> Result<GenericInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidArgument("degrees must be positive".into()));
    }
    let mut params = Vec::new();
    let mut supports = Vec::new();
    let mut offsets = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        let support: Vec<Monomial> = lex_descending(n, d).collect();
        offsets.push(n + params.len());
        for k in 1..=support.len() {
            params.push(format!("t{}_{}", i + 1, k));
        }
        supports.push(support);
    }
    let ring = Ring::with_parameters(default_names(n), params);
    Ok(GenericInstance {
        n,
        degrees: degrees.to_vec(),
        ring,
        supports,
        offsets,
    })
}

impl GenericInstance {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `k[t̄, x̄]` with the main variables first.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Total number of parameters `N`.
    pub fn nparams(&self) -> usize {
        self.supports.iter().map(Vec::len).sum()
    }

    /// Number of terms of each template.
    pub fn template_sizes(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    /// The templates as polynomials over `k[t̄, x̄]`.
    pub fn templates<F: Field>(&self, order: &MonomialOrder) -> Vec<Polynomial<F>> {
        let total = self.ring.nvars();
        self.supports
            .iter()
            .zip(&self.offsets)
            .map(|(support, &off)| {
                let terms = support.iter().enumerate().map(|(k, m)| {
                    let mut e = m.embed(total, &(0..self.n).collect::<Vec<_>>());
                    e.set_exponent(off + k, 1);
                    (F::one(), e)
                });
                Polynomial::from_terms(self.ring.clone(), order.clone(), terms)
            })
            .collect()
    }

    /// The forms obtained by substituting `point` (one value per parameter, template by
    /// template) into the templates; they live in `k[x̄]`.
    pub fn specialize<F: Field>(
        &self,
        point: &[F],
        order: BaseOrder,
    ) -> Result<Vec<Polynomial<F>>> {
        if point.len() != self.nparams() {
            return Err(Error::DimensionMismatch {
                expected: self.nparams(),
                found: point.len(),
            });
        }
        let ring = self.ring.main_ring();
        let ord = MonomialOrder::base(order);
        let mut values = point.iter();
        Ok(self
            .supports
            .iter()
            .map(|support| {
                let terms = support
                    .iter()
                    .map(|m| (values.next().unwrap().clone(), m.clone()));
                Polynomial::from_terms(ring.clone(), ord.clone(), terms)
            })
            .collect())
    }
}

/// `nparams` nonzero integers drawn uniformly from `[-bound, bound]` by ChaCha8 seeded with `seed`.
pub fn sample_point(nparams: usize, seed: u64, bound: u64) -> Result<Vec<i64>> {
    if bound == 0 || bound > i64::MAX as u64 / 2 {
        return Err(Error::InvalidArgument(format!(
            "coefficient bound {bound} out of range"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound as i64;
    Ok((0..nparams)
        .map(|_| {
            let k = rng.random_range(0..2 * b);
            if k < b {
                k - b
            } else {
                k - b + 1
            }
        })
        .collect())
}

/// The templates specialized at the point drawn for `seed`.
pub fn sample_ideal<F: Field>(
    inst: &GenericInstance,
    seed: u64,
    bound: u64,
    order: BaseOrder,
) -> Result<Vec<Polynomial<F>>> {
    let point = sample_point(inst.nparams(), seed, bound)?;
    let values: Vec<F> = point.iter().map(|&v| F::from_i64(v)).collect();
    inst.specialize(&values, order)
}

/// `dim_k (S/I)_d` for homogeneous `gens` in `n` variables, via the rank of the degree-`d`
/// Macaulay matrix.
pub fn hilbert_function_homogeneous<F: Field>(
    n: usize,
    gens: &[Polynomial<F>],
    d: u32,
) -> Result<u64> {
    let gens: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    for g in &gens {
        if g.ring().nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.ring().nvars(),
            });
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let cols = monomials_of_degree(n, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap();
        if dg > d {
            continue;
        }
        for tau in monomials_of_degree(n, d - dg) {
            let mut row = vec![F::zero(); cols.len()];
            for t in g.terms() {
                row[index[&t.monomial.mul(&tau)]] = t.coeff.clone();
            }
            rows.push(row);
        }
    }
    let r = rank(rows, cols.len()) as u64;
    Ok(count_of_degree(n, d) - r)
}

/// Whether sampled forms have the expected Hilbert series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UGeneric {
    /// Matches, and `s <= n` (regular sequence case).
    Yes,
    /// Matches the conjectured series, `s > n`.
    ConjecturalYes,
    No,
}

impl UGeneric {
    pub fn name(self) -> &'static str {
        match self {
            UGeneric::Yes => "yes",
            UGeneric::ConjecturalYes => "conjectural-yes",
            UGeneric::No => "no",
        }
    }

    pub fn is_match(self) -> bool {
        self != UGeneric::No
    }
}

impl fmt::Display for UGeneric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Compares the Hilbert function of `gens` with the expected series for `degrees` up to
/// `horizon` (default `sum (d_i - 1) + n + 1`).
pub fn is_u_generic<F: Field>(
    n: usize,
    gens: &[Polynomial<F>],
    degrees: &[u32],
    horizon: Option<u32>,
) -> Result<UGeneric> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(n, degrees));
    let expected = froeberg_series(n, degrees, horizon);
    for d in 0..=horizon {
        let want = expected.coeffs()[d as usize];
        let got = hilbert_function_homogeneous(n, gens, d)? as i64;
        if got != want {
            return Ok(UGeneric::No);
        }
        // both vanish from here on
        if want == 0 {
            break;
        }
    }
    Ok(if degrees.len() <= n {
        UGeneric::Yes
    } else {
        UGeneric::ConjecturalYes
    })
}

/// Same verdict as [`is_u_generic`], read off an initial ideal of the sample.
pub fn u_generic_from_initial(
    ideal: &MonomialIdeal,
    degrees: &[u32],
    horizon: Option<u32>,
) -> UGeneric {
    let n = ideal.nvars();
    let horizon = horizon.unwrap_or_else(|| default_horizon(n, degrees));
    let expected = froeberg_series(n, degrees, horizon);
    let got = ideal.hilbert_series(Some(horizon));
    if got.coeffs() != expected.coeffs() {
        return UGeneric::No;
    }
    if degrees.len() <= n {
        UGeneric::Yes
    } else {
        UGeneric::ConjecturalYes
    }
}

/// Minimal generators of the initial ideal of `(gens)` under a base order.
pub fn initial_ideal<F: Field>(
    n: usize,
    gens: &[Polynomial<F>],
    order: BaseOrder,
) -> Result<MonomialIdeal> {
    let ord = MonomialOrder::base(order);
    let gb = buchberger(gens, &ord);
    minimalize(n, gb.lead_monomials())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Sampling,
    Parametric,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Sampling => "sampling",
            Route::Parametric => "parametric",
        }
    }
}

impl FromStr for Route {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match s {
            "sampling" | "sample" => Ok(Route::Sampling),
            "parametric" => Ok(Route::Parametric),
            _ => Err(ParseError::Term(format!("unknown route `{s}`"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Initial ideal of a generic instance, with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinResult {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub order: String,
    pub route: Route,
    pub ideal: MonomialIdeal,
    /// Seeds of the sampling trials, in order.
    pub seeds: Vec<u64>,
    /// Initial ideal of each trial.
    pub per_seed: Vec<MonomialIdeal>,
    /// Number of trials that produced `ideal`.
    pub agreement: usize,
    pub u_generic: Vec<UGeneric>,
    /// Field tag, `"Q"` or `"F32003"`.
    pub field: String,
}

impl GinResult {
    pub fn s(&self) -> usize {
        self.degrees.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "s": self.s(),
            "degrees": self.degrees,
            "order": self.order,
            "route": self.route.name(),
            "ideal": self.ideal.to_json(),
            "seeds": self.seeds,
            "agreement": self.agreement,
            "u_generic": self.u_generic.iter().map(|u| u.name()).collect::<Vec<_>>(),
            "per_seed": self.per_seed.iter().map(MonomialIdeal::to_json).collect::<Vec<_>>(),
            "field": self.field,
        })
    }
}

/// Settings of the sampling route.
#[derive(Clone, Debug)]
pub struct SamplingConfig {
    pub order: BaseOrder,
    pub trials: usize,
    pub seed: u64,
    /// Coefficients are drawn from `[-bound, bound] \ {0}`.
    pub bound: u64,
}

impl SamplingConfig {
    /// Five trials from `seed`, coefficients in `[-(p-1), p-1]` for GF(p) and `[-99, 99]` over Q.
    pub fn new<F: Field>(order: BaseOrder, seed: u64) -> Self {
        let bound = match F::characteristic() {
            0 => 99,
            p => p - 1,
        };
        SamplingConfig {
            order,
            trials: 5,
            seed,
            bound,
        }
    }
}

/// Trial `k` uses seed `seed + k`; the reported ideal is the strict majority.
pub fn gin_by_sampling<F: Field>(
    inst: &GenericInstance,
    cfg: &SamplingConfig,
) -> Result<GinResult> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let seeds: Vec<u64> = (0..cfg.trials as u64)
        .map(|k| cfg.seed.wrapping_add(k))
        .collect();
    let outcomes: Vec<Result<(MonomialIdeal, UGeneric)>> = seeds
        .par_iter()
        .map(|&seed| {
            let gens = sample_ideal::<F>(inst, seed, cfg.bound, cfg.order)?;
            let ideal = initial_ideal(inst.n, &gens, cfg.order)?;
            let flag = if F::has_coefficient_growth() {
                u_generic_from_initial(&ideal, &inst.degrees, None)
            } else {
                is_u_generic(inst.n, &gens, &inst.degrees, None)?
            };
            Ok((ideal, flag))
        })
        .collect();
    let mut per_seed = Vec::with_capacity(seeds.len());
    let mut u_generic = Vec::with_capacity(seeds.len());
    for o in outcomes {
        let (ideal, flag) = o?;
        per_seed.push(ideal);
        u_generic.push(flag);
    }
    let mut best: Option<(&MonomialIdeal, usize)> = None;
    for cand in &per_seed {
        let count = per_seed.iter().filter(|x| *x == cand).count();
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((cand, count));
        }
    }
    let (ideal, agreement) = best.expect("at least one trial");
    if 2 * agreement <= cfg.trials {
        return Err(Error::Inconclusive {
            trials: cfg.trials,
            best: agreement,
        });
    }
    Ok(GinResult {
        n: inst.n,
        degrees: inst.degrees.clone(),
        order: cfg.order.name().to_string(),
        route: Route::Sampling,
        ideal: ideal.clone(),
        seeds,
        agreement,
        u_generic,
        field: F::tag(),
        per_seed: per_seed.clone(),
    })
}

/// Settings of the parametric route.
#[derive(Clone, Debug)]
pub struct ParametricConfig {
    pub order: BaseOrder,
    /// Tie-break order on the parameters.
    pub param_order: BaseOrder,
    pub budget: Budget,
}

impl ParametricConfig {
    pub fn new(order: BaseOrder) -> Self {
        ParametricConfig {
            order,
            param_order: BaseOrder::DegRevLex,
            budget: Budget::unlimited(),
        }
    }
}

/// The inverse block order on `k[t̄, x̄]` used by the parametric route.
pub fn parametric_order(
    inst: &GenericInstance,
    order: BaseOrder,
    param_order: BaseOrder,
) -> MonomialOrder {
    let main: Vec<usize> = (0..inst.n).collect();
    MonomialOrder::inverse_block(inst.ring.nvars(), &main, order, param_order)
        .expect("main indices are in range")
}

/// The main-variable parts of the leading monomials of a Groebner basis of the templates.
pub fn gin_parametric<F: Field>(
    inst: &GenericInstance,
    cfg: &ParametricConfig,
) -> Result<GinResult> {
    let ord = parametric_order(inst, cfg.order, cfg.param_order);
    let templates = inst.templates::<F>(&ord);
    let (gb, _) = buchberger_with(&templates, &ord, &cfg.budget)?;
    let main: Vec<usize> = (0..inst.n).collect();
    let leads = gb
        .lead_monomials()
        .into_iter()
        .map(|m| m.project(&main))
        .filter(|m| !m.is_one());
    let ideal = minimalize(inst.n, leads)?;
    Ok(GinResult {
        n: inst.n,
        degrees: inst.degrees.clone(),
        order: cfg.order.name().to_string(),
        route: Route::Parametric,
        per_seed: Vec::new(),
        ideal,
        seeds: Vec::new(),
        agreement: 1,
        u_generic: Vec::new(),
        field: F::tag(),
    })
}

/// Coefficient field selected at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Gf32003,
}

impl FieldKind {
    pub fn tag(self) -> String {
        match self {
            FieldKind::Rational => Rational::tag(),
            FieldKind::Gf32003 => Gf32003::tag(),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Gf32003 => Gf32003::characteristic(),
        }
    }

    /// GF(32003) for sampling, Q for the parametric route.
    pub fn default_for(route: Route) -> Self {
        match route {
            Route::Sampling => FieldKind::Gf32003,
            Route::Parametric => FieldKind::Rational,
        }
    }
}

impl FromStr for FieldKind {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "qq" | "rational" | "0" => Ok(FieldKind::Rational),
            "f32003" | "gf32003" | "gf" | "32003" => Ok(FieldKind::Gf32003),
            _ => Err(ParseError::Term(format!("unknown field `{s}`"))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Everything needed to run either route over either field.
#[derive(Clone, Debug)]
pub struct GinRequest {
    pub order: BaseOrder,
    pub route: Route,
    pub field: FieldKind,
    pub trials: usize,
    pub seed: u64,
    /// Sampling bound; `None` picks the field default.
    pub bound: Option<u64>,
    pub budget: Budget,
}

impl GinRequest {
    pub fn new(order: BaseOrder, route: Route) -> Self {
        GinRequest {
            order,
            route,
            field: FieldKind::default_for(route),
            trials: 5,
            seed: 0,
            bound: None,
            budget: Budget::unlimited(),
        }
    }
}

pub fn compute_gin(inst: &GenericInstance, req: &GinRequest) -> Result<GinResult> {
    fn sampled<F: Field>(inst: &GenericInstance, req: &GinRequest) -> Result<GinResult> {
        let mut cfg = SamplingConfig::new::<F>(req.order, req.seed);
        cfg.trials = req.trials;
        if let Some(b) = req.bound {
            cfg.bound = b;
        }
        gin_by_sampling::<F>(inst, &cfg)
    }
    match req.route {
        Route::Sampling => match req.field {
            FieldKind::Rational => sampled::<Rational>(inst, req),
            FieldKind::Gf32003 => sampled::<Gf32003>(inst, req),
        },
        Route::Parametric => {
            let mut cfg = ParametricConfig::new(req.order);
            cfg.budget = req.budget.clone();
            match req.field {
                FieldKind::Rational => gin_parametric::<Rational>(inst, &cfg),
                FieldKind::Gf32003 => gin_parametric::<Gf32003>(inst, &cfg),
            }
        }
    }
}
