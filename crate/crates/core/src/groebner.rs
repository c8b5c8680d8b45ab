//! Division, Buchberger's algorithm and reduced Groebner bases.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::polynomial::{Point, Polynomial, Term};

/// Content is stripped from the working remainder every this many reduction steps.
const CONTENT_PERIOD: usize = 16;
const DEADLINE_PERIOD: usize = 64;

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    generators: Vec<Polynomial<F>>,
    order: MonomialOrder,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Polynomial<F>> {
        self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.lead_monomial().cloned())
            .collect()
    }
}

/// Limits on a Buchberger run. The default is unlimited.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    /// Upper bound on pending critical pairs.
    pub max_pairs: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(d: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + d),
            max_pairs: None,
        }
    }

    fn check(&self, pending: usize) -> Result<()> {
        if let Some(t) = self.deadline {
            if Instant::now() >= t {
                return Err(Error::BudgetExhausted("time limit reached".into()));
            }
        }
        if let Some(cap) = self.max_pairs {
            if pending > cap {
                return Err(Error::BudgetExhausted(format!(
                    "{pending} pending pairs exceed the cap of {cap}"
                )));
            }
        }
        Ok(())
    }
}

/// Counters from the last Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_basis_len: usize,
}

/// Reducers sorted ascending by lead monomial; the first divisor wins.
struct Reducers<'a, F: Field> {
    items: Vec<(&'a Polynomial<F>, u64)>,
}

impl<'a, F: Field> Reducers<'a, F> {
    fn new(order: &MonomialOrder, polys: impl IntoIterator<Item = &'a Polynomial<F>>) -> Self {
        let mut items: Vec<_> = polys
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| (g, g.lead_monomial().unwrap().divmask()))
            .collect();
        items.sort_by(|a, b| order.cmp(a.0.lead_monomial().unwrap(), b.0.lead_monomial().unwrap()));
        Reducers { items }
    }

    fn find(&self, m: &Monomial) -> Option<&'a Polynomial<F>> {
        let mask = m.divmask();
        self.items
            .iter()
            .find(|(g, gm)| gm & !mask == 0 && g.lead_monomial().unwrap().divides(m))
            .map(|(g, _)| *g)
    }
}

/// `acc` and `b` ascending; returns `alpha*acc + neg_beta*shift*b`, ascending.
fn merge_ascending<F: Field>(
    order: &MonomialOrder,
    acc: Vec<Term<F>>,
    alpha: &F,
    b: impl Iterator<Item = (F, Monomial)>,
) -> Vec<Term<F>> {
    let scale = !alpha.is_one();
    let mut out = Vec::with_capacity(acc.len() + 8);
    let mut a = acc.into_iter().peekable();
    let mut b = b.peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some((_, mb))) => order.cmp(&x.monomial, mb),
        };
        match ord {
            Ordering::Less => {
                let mut t = a.next().unwrap();
                if scale {
                    t.coeff *= alpha;
                }
                out.push(t);
            }
            Ordering::Greater => {
                let (c, m) = b.next().unwrap();
                out.push(Term {
                    coeff: c,
                    monomial: m,
                });
            }
            Ordering::Equal => {
                let mut t = a.next().unwrap();
                let (c, _) = b.next().unwrap();
                if scale {
                    t.coeff *= alpha;
                }
                t.coeff += c;
                if !t.coeff.is_zero() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Removes a common scalar from `work` and `rem` together.
fn strip_content<F: Field>(work: &mut [Term<F>], rem: &mut [Term<F>]) {
    let coeffs = rem.iter().chain(work.iter().rev()).map(|t| &t.coeff);
    if let Some(k) = F::normalizer(coeffs) {
        for t in work.iter_mut().chain(rem.iter_mut()) {
            t.coeff *= &k;
        }
    }
}

/// Full reduction. With `exact` the result is the true remainder, otherwise a nonzero
/// scalar multiple of it, computed without leaving the integers over Q.
fn reduce<F: Field>(
    f: &Polynomial<F>,
    reducers: &Reducers<'_, F>,
    order: &MonomialOrder,
    exact: bool,
    deadline: Option<Instant>,
) -> Result<Polynomial<F>> {
    let ring = f.ring().clone();
    let mut work: Vec<Term<F>> = if f.order() == order {
        f.terms().iter().rev().cloned().collect()
    } else {
        let mut t = f.with_order(order).terms().to_vec();
        t.reverse();
        t
    };
    let mut rem: Vec<Term<F>> = Vec::new();
    let growth = !exact && F::has_coefficient_growth();
    let mut steps = 0usize;
    while let Some(lead) = work.last() {
        let Some(g) = reducers.find(&lead.monomial) else {
            rem.push(work.pop().unwrap());
            continue;
        };
        let lead = work.pop().unwrap();
        let gl = g.lead_term().unwrap();
        let (alpha, beta) = if exact {
            (
                F::one(),
                lead.coeff.clone() * &gl.coeff.inv().expect("nonzero lead"),
            )
        } else {
            F::cofactors(&lead.coeff, &gl.coeff)
        };
        let shift = lead.monomial.quotient(&gl.monomial).expect("divisor");
        let neg_beta = -beta;
        let tail = g.terms()[1..]
            .iter()
            .rev()
            .map(|t| (t.coeff.clone() * &neg_beta, t.monomial.mul(&shift)));
        work = merge_ascending(order, work, &alpha, tail);
        if !alpha.is_one() {
            for t in &mut rem {
                t.coeff *= &alpha;
            }
        }
        steps += 1;
        if growth && steps.is_multiple_of(CONTENT_PERIOD) {
            strip_content(&mut work, &mut rem);
        }
        if steps.is_multiple_of(DEADLINE_PERIOD) && deadline.is_some_and(|t| Instant::now() >= t) {
            return Err(Error::BudgetExhausted("time limit reached".into()));
        }
    }
    let out = Polynomial::from_sorted(ring, order.clone(), rem);
    Ok(if growth { out.normalized() } else { out })
}

/// Remainder of `f` on division by `divisors` under `order`.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Polynomial<F> {
    let sorted: Vec<Polynomial<F>> = divisors.iter().map(|g| g.with_order(order)).collect();
    let reducers = Reducers::new(order, sorted.iter());
    reduce(f, &reducers, order, true, None).expect("no deadline")
}

/// Monic S-polynomial `lcm/LT(f) * f - lcm/LT(g) * g`, made monic.
pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: &MonomialOrder,
) -> Result<Polynomial<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.with_order(order).monic();
    let g = g.with_order(order).monic();
    let (lf, lg) = (f.lead_monomial().unwrap(), g.lead_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = f.mul_term(&F::one(), &l.quotient(lf).unwrap());
    let b = g.mul_term(&F::one(), &l.quotient(lg).unwrap());
    Ok(a.sub(&b)?.monic())
}

fn raw_spoly<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: &MonomialOrder,
) -> Polynomial<F> {
    let (tf, tg) = (f.lead_term().unwrap(), g.lead_term().unwrap());
    let l = tf.monomial.lcm(&tg.monomial);
    let (alpha, beta) = F::cofactors(&tf.coeff, &tg.coeff);
    let sf = l.quotient(&tf.monomial).unwrap();
    let sg = l.quotient(&tg.monomial).unwrap();
    let a = f.mul_term(&alpha, &sf);
    let b = g.mul_term(&beta, &sg);
    debug_assert_eq!(a.order(), order);
    let out = a.sub(&b).expect("same ring");
    if F::has_coefficient_growth() {
        out.normalized()
    } else {
        out
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

/// Groebner basis of the ideal generated by `gens` (not reduced).
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], order: &MonomialOrder) -> GroebnerBasis<F> {
    buchberger_with(gens, order, &Budget::unlimited())
        .expect("unlimited budget")
        .0
}

/// Buchberger's algorithm with the normal selection strategy and the Gebauer-Moeller
/// criteria; fails once `budget` is exceeded.
pub fn buchberger_with<F: Field>(
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<(GroebnerBasis<F>, Stats)> {
    if let Some(first) = gens.first() {
        if gens.iter().any(|g| g.ring() != first.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let mut state = State {
        order: order.clone(),
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        homogeneous: gens.iter().all(Polynomial::is_homogeneous),
        stats: Stats::default(),
    };
    let mut inputs: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    for f in inputs {
        let h = state.reduce(&f, budget.deadline)?;
        if !h.is_zero() {
            state.update(h);
        }
    }
    while !state.pairs.is_empty() {
        budget.check(state.pairs.len())?;
        let p = state.select();
        let s = raw_spoly(&state.basis[p.i], &state.basis[p.j], order);
        state.stats.pairs_reduced += 1;
        let h = state.reduce(&s, budget.deadline)?;
        if h.is_zero() {
            state.stats.zero_reductions += 1;
        } else {
            state.update(h);
        }
    }
    let generators: Vec<_> = state
        .basis
        .into_iter()
        .zip(state.active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    Ok((
        GroebnerBasis {
            generators,
            order: order.clone(),
            reduced: false,
        },
        state.stats,
    ))
}

struct State<F: Field> {
    order: MonomialOrder,
    basis: Vec<Polynomial<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    homogeneous: bool,
    stats: Stats,
}

impl<F: Field> State<F> {
    fn reduce(&self, f: &Polynomial<F>, deadline: Option<Instant>) -> Result<Polynomial<F>> {
        let reducers = Reducers::new(
            &self.order,
            self.basis
                .iter()
                .zip(&self.active)
                .filter_map(|(g, &a)| a.then_some(g)),
        );
        reduce(f, &reducers, &self.order, false, deadline)
    }

    /// Removes and returns the pair with smallest lcm. Homogeneous input compares lcm
    /// degrees first.
    fn select(&mut self) -> Pair {
        let order = &self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                let by_degree = if self.homogeneous {
                    p.degree.cmp(&q.degree)
                } else {
                    Ordering::Equal
                };
                by_degree
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        self.pairs.swap_remove(best)
    }

    /// Gebauer-Moeller update with the new element `h`.
    fn update(&mut self, h: Polynomial<F>) {
        let h = h.normalized();
        let k = self.basis.len();
        let lh = h.lead_monomial().unwrap().clone();
        let candidates: Vec<usize> = (0..k).filter(|&i| self.active[i]).collect();
        let lead = |i: usize| self.basis[i].lead_monomial().unwrap();

        // New pairs (i, k) with their lcms.
        let new: Vec<(usize, Monomial, bool)> = candidates
            .iter()
            .map(|&i| (i, lead(i).lcm(&lh), lead(i).is_coprime(&lh)))
            .collect();

        // Chain criterion among the new pairs: drop (i,k) if some (j,k) has a lcm that
        // properly divides it. Among equal lcms keep one, preferring a coprime one.
        let mut keep = vec![true; new.len()];
        for a in 0..new.len() {
            for b in 0..new.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if new[b].1.divides(&new[a].1) && new[b].1 != new[a].1 {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut kept: Vec<usize> = Vec::new();
        for a in 0..new.len() {
            if !keep[a] {
                continue;
            }
            if let Some(pos) = kept.iter().position(|&b| new[b].1 == new[a].1) {
                let b = kept[pos];
                if new[a].2 && !new[b].2 {
                    kept[pos] = a;
                }
                continue;
            }
            kept.push(a);
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|&a| !new[a].2)
            .map(|a| Pair {
                i: new[a].0,
                j: k,
                degree: new[a].1.degree(),
                lcm: new[a].1.clone(),
            })
            .collect();

        // Old pairs (i, j) made redundant by h.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead_monomial().unwrap().lcm(&lh);
            let lj = basis[p.j].lead_monomial().unwrap().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(fresh);

        // Elements whose lead is a multiple of the new lead leave the basis.
        for i in candidates {
            if lh.divides(self.basis[i].lead_monomial().unwrap()) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
        let live = self.active.iter().filter(|&&a| a).count();
        self.stats.max_basis_len = self.stats.max_basis_len.max(live);
    }
}

/// The reduced Groebner basis: minimal, interreduced, monic, sorted ascending by lead.
pub fn reduce_basis<F: Field>(g: &GroebnerBasis<F>) -> GroebnerBasis<F> {
    let order = g.order().clone();
    let mut polys: Vec<Polynomial<F>> = g
        .generators()
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.with_order(&order).monic())
        .collect();
    // Autoreduce: smallest leads first, re-queueing anything a new lead divides.
    polys.sort_by(|a, b| order.cmp(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
    let mut minimal: Vec<Polynomial<F>> = Vec::with_capacity(polys.len());
    while let Some(p) = polys.pop() {
        let r = normal_form(&p, &minimal, &order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let lr = r.lead_monomial().unwrap().clone();
        let (moved, kept): (Vec<_>, Vec<_>) = minimal
            .into_iter()
            .partition(|q| lr.divides(q.lead_monomial().unwrap()));
        minimal = kept;
        minimal.push(r);
        polys.extend(moved);
    }
    minimal.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let others = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q);
        let reducers = Reducers::new(&order, others);
        out.push(
            reduce(p, &reducers, &order, true, None)
                .expect("no deadline")
                .monic(),
        );
    }
    GroebnerBasis {
        generators: out,
        order,
        reduced: true,
    }
}

/// Reduced Groebner basis of `(gens)`.
pub fn reduced_groebner_basis<F: Field>(
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
) -> GroebnerBasis<F> {
    reduce_basis(&buchberger(gens, order))
}

/// Whether `G` is a Groebner basis: every S-polynomial reduces to 0.
pub fn is_groebner_basis<F: Field>(g: &[Polynomial<F>], order: &MonomialOrder) -> bool {
    let polys: Vec<_> = g
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.with_order(order))
        .collect();
    let reducers = Reducers::new(order, polys.iter());
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let s = raw_spoly(&polys[i], &polys[j], order);
            if !reduce(&s, &reducers, order, false, None)
                .expect("no deadline")
                .is_zero()
            {
                return false;
            }
        }
    }
    true
}

/// Outcome of specializing a parametric Groebner basis at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    /// Indices (0-based) of the members whose leading coefficient survives; their
    /// specializations form a Groebner basis of the specialized ideal.
    Stable(Vec<usize>),
    Unstable,
}

/// Checks whether the specialization of `g` at `point` stays a Groebner basis.
pub fn stability_check<F: Field>(g: &GroebnerBasis<F>, point: &Point<F>) -> Result<Stability> {
    let Some(first) = g.generators().first() else {
        return Ok(Stability::Stable(Vec::new()));
    };
    let ring = first.ring().clone();
    if !ring.has_parameters() {
        return Ok(Stability::Stable((0..g.len()).collect()));
    }
    let block = g
        .order()
        .block()
        .ok_or_else(|| Error::InvalidArgument("stability needs an inverse block order".into()))?;
    let main_order = MonomialOrder::base(block.main_order());
    let params = point.param_values(&ring)?;

    let mut survivors = Vec::new();
    let mut special = Vec::new();
    let mut vanished = Vec::new();
    for (i, gi) in g.generators().iter().enumerate() {
        let bl = gi.block_leading_data(block.main_order())?;
        let s = gi.specialize(point)?.with_order(&main_order);
        if bl.lead_coefficient.evaluate(&params)?.is_zero() {
            vanished.push(s);
        } else {
            survivors.push(i);
            special.push(s);
        }
    }
    for v in &vanished {
        if !normal_form(v, &special, &main_order).is_zero() {
            return Ok(Stability::Unstable);
        }
    }
    Ok(Stability::Stable(survivors))
}
