//! Expected Hilbert series of generic ideals, lexsegment ideals with a prescribed
//! Hilbert function, and the resulting degree bound for Groebner bases.

use crate::error::{Error, Result};
use crate::monomial::{count_of_degree, lex_ascending, Monomial};
use crate::monomial_ideal::{minimalize, MonomialIdeal, RationalForm, SeriesWindow};

/// Largest horizon the automatic extension will try.
pub const HORIZON_CAP: u32 = 512;

/// Zeroes every coefficient from the first non-positive one onwards.
pub fn bracket_truncate(series: &SeriesWindow) -> SeriesWindow {
    let mut coeffs = series.coeffs().to_vec();
    if let Some(first) = coeffs.iter().position(|&c| c <= 0) {
        for c in &mut coeffs[first..] {
            *c = 0;
        }
    }
    SeriesWindow::new(coeffs)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Closed form of `|prod (1 - t^d_i) / (1 - t)^n|`.
pub fn froeberg_rational(n: usize, degrees: &[u32]) -> RationalForm {
    // prod (1 - t^d) = (1 - t)^s * prod (1 + t + ... + t^(d-1))
    let mut num = vec![1i64];
    for &d in degrees {
        num = poly_mul(&num, &vec![1i64; d.max(1) as usize]);
        if d == 0 {
            num = vec![0];
        }
    }
    let s = degrees.len();
    if s <= n {
        return RationalForm {
            numerator: num,
            denominator_power: (n - s) as u32,
        }
        .simplified();
    }
    for _ in 0..s - n {
        num = poly_mul(&num, &[1, -1]);
    }
    let horizon = num.len() as u32;
    let bracketed = bracket_truncate(&SeriesWindow::new(num));
    let mut coeffs = bracketed.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    debug_assert!(coeffs.len() as u32 <= horizon);
    RationalForm {
        numerator: coeffs,
        denominator_power: 0,
    }
}

/// `|prod (1 - t^d_i) / (1 - t)^n|` up to `horizon`, with its closed form attached.
pub fn froeberg_series(n: usize, degrees: &[u32], horizon: u32) -> SeriesWindow {
    let mut coeffs = vec![0i64; horizon as usize + 1];
    coeffs[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for i in (d..coeffs.len()).rev() {
            coeffs[i] -= coeffs[i - d];
        }
    }
    for _ in 0..n {
        for i in 1..coeffs.len() {
            coeffs[i] += coeffs[i - 1];
        }
    }
    let expanded = bracket_truncate(&SeriesWindow::new(coeffs));
    let r = froeberg_rational(n, degrees);
    let closed = SeriesWindow::from_rational(r.numerator, r.denominator_power, horizon);
    debug_assert_eq!(closed.coeffs(), expanded.coeffs());
    closed
}

/// Degree from which no new lex generators are expected: `sum (d_i - 1) + n + 1`.
pub fn default_horizon(n: usize, degrees: &[u32]) -> u32 {
    degrees.iter().map(|d| d.saturating_sub(1)).sum::<u32>() + n as u32 + 1
}

fn hf_values(hf: &SeriesWindow, horizon: u32) -> Result<Vec<i64>> {
    match hf.with_horizon(horizon) {
        Some(w) => Ok(w.coeffs().to_vec()),
        None => Err(Error::InvalidArgument(format!(
            "Hilbert function known only up to degree {}, needed up to {horizon}",
            hf.horizon()
        ))),
    }
}

/// The lexsegment ideal whose quotient has Hilbert function `hf` in degrees `0..=horizon`.
pub fn lexsegment_of_hf(n: usize, hf: &SeriesWindow, horizon: u32) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::InvalidArgument("no variables".into()));
    }
    let values = hf_values(hf, horizon)?;
    let mut gens: Vec<Monomial> = Vec::new();
    for d in 0..=horizon {
        let dim = count_of_degree(n, d);
        let h = values[d as usize];
        if h < 0 || h as u64 > dim {
            return Err(Error::Inadmissible(format!(
                "value {h} in degree {d} is outside [0, {dim}]"
            )));
        }
        let h = h as u64;
        if h == dim {
            continue;
        }
        let current = minimalize(n, gens.iter().cloned())?;
        let mut walk = lex_ascending(n, d);
        if h > 0 {
            let largest_standard = walk.nth(h as usize - 1).expect("h < dim");
            if current.contains_unchecked(&largest_standard) {
                return Err(Error::Inadmissible(format!(
                    "degree {d} needs {h} standard monomials but the ideal generated below already \
                     covers more"
                )));
            }
        }
        for m in walk {
            if current.contains_unchecked(&m) {
                break;
            }
            gens.push(m);
        }
    }
    let ideal = minimalize(n, gens)?;
    let check = ideal.hilbert_series(Some(horizon));
    if let Some(d) = (0..=horizon as usize).find(|&d| check.coeffs()[d] != values[d]) {
        return Err(Error::Inadmissible(format!(
            "lexsegment ideal has value {} in degree {d}, expected {}",
            check.coeffs()[d],
            values[d]
        )));
    }
    Ok(ideal)
}

/// `maxdeg` of the lexsegment ideal with Hilbert function `hf`.
pub fn maxgbdeg_bound(n: usize, hf: &SeriesWindow, horizon: u32) -> Result<u32> {
    lexsegment_of_hf(n, hf, horizon)?.maxdeg()
}

/// A lexsegment ideal together with the horizon it was built to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexSegment {
    pub ideal: MonomialIdeal,
    pub horizon: u32,
    /// Set when the construction could not confirm that no generators lie beyond `horizon`.
    pub horizon_uncertain: bool,
}

/// Builds the lexsegment ideal starting from `initial_horizon`, doubling the horizon until
/// the result is confirmed complete.
///
/// With a closed form on `hf` the result is complete once its own Hilbert series equals
/// `hf` exactly. Without one, the result is accepted once no generator sits in the last
/// `n` degrees.
pub fn lexsegment_extended(
    n: usize,
    hf: &SeriesWindow,
    initial_horizon: u32,
) -> Result<LexSegment> {
    let target = hf.rational().map(RationalForm::simplified);
    let mut horizon = initial_horizon.max(1);
    if target.is_none() {
        horizon = horizon.min(hf.horizon());
    }
    loop {
        let ideal = lexsegment_of_hf(n, hf, horizon)?;
        let complete = match &target {
            Some(t) => ideal.hilbert_series(Some(0)).rational() == Some(t),
            None => ideal.maxdeg().map_or(true, |m| m + n as u32 <= horizon),
        };
        if complete {
            return Ok(LexSegment {
                ideal,
                horizon,
                horizon_uncertain: false,
            });
        }
        let next = (horizon * 2).min(HORIZON_CAP);
        let limit = if target.is_some() {
            HORIZON_CAP
        } else {
            hf.horizon()
        };
        if horizon >= limit || next <= horizon {
            return Ok(LexSegment {
                ideal,
                horizon,
                horizon_uncertain: true,
            });
        }
        horizon = next.min(limit);
    }
}

/// Lexsegment ideal of the expected Hilbert series for degrees `degrees` in `n` variables.
pub fn froeberg_lexsegment(n: usize, degrees: &[u32]) -> Result<LexSegment> {
    let d0 = default_horizon(n, degrees);
    let hf = froeberg_series(n, degrees, d0);
    lexsegment_extended(n, &hf, d0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn window(c: &[i64]) -> SeriesWindow {
        SeriesWindow::new(c.to_vec())
    }

    fn rows(j: &MonomialIdeal) -> Vec<Vec<u16>> {
        j.generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(
            bracket_truncate(&window(&[1, 2, 0, -2, -1])).coeffs(),
            &[1, 2, 0, 0, 0]
        );
        assert_eq!(bracket_truncate(&window(&[1, 2, 3])).coeffs(), &[1, 2, 3]);
        assert_eq!(bracket_truncate(&window(&[0, 2, 3])).coeffs(), &[0, 0, 0]);
    }

    #[test]
    fn froeberg_examples() {
        assert_eq!(froeberg_series(3, &[2, 2], 5).coeffs(), &[1, 3, 4, 4, 4, 4]);
        assert_eq!(
            froeberg_series(3, &[2, 2, 2], 5).coeffs(),
            &[1, 3, 3, 1, 0, 0]
        );
        assert_eq!(froeberg_series(2, &[2, 2, 2], 4).coeffs(), &[1, 2, 0, 0, 0]);
        let r = froeberg_rational(3, &[2, 2]);
        assert_eq!(r.display(), "(t^2 + 2*t + 1)/(1 - t)");
    }

    #[test]
    fn lexsegment_examples() {
        let hf = froeberg_series(3, &[2, 2], 8);
        let j = lexsegment_of_hf(3, &hf, 8).unwrap();
        assert_eq!(
            rows(&j),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 2], vec![0, 4, 0]]
        );
        assert_eq!(maxgbdeg_bound(3, &hf, 8).unwrap(), 4);

        let hf = window(&[1, 3, 3, 1, 0, 0, 0]);
        let j = lexsegment_of_hf(3, &hf, 6).unwrap();
        assert_eq!(
            rows(&j),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 3, 0],
                vec![0, 2, 1],
                vec![0, 1, 2],
                vec![0, 0, 4]
            ]
        );
        assert_eq!(
            j.hilbert_series(Some(0)).rational().unwrap().numerator,
            vec![1, 3, 3, 1]
        );
        assert_eq!(maxgbdeg_bound(3, &hf, 6).unwrap(), 4);

        let hf = window(&[1, 2, 1, 0, 0, 0]);
        let j = lexsegment_of_hf(2, &hf, 5).unwrap();
        assert_eq!(rows(&j), vec![vec![2, 0], vec![1, 1], vec![0, 3]]);
        assert_eq!(maxgbdeg_bound(2, &hf, 5).unwrap(), 3);
    }

    #[test]
    fn inadmissible_functions_are_rejected() {
        // 1, 1, 2: growth from 1 to 2 in two variables is impossible
        assert!(matches!(
            lexsegment_of_hf(2, &window(&[1, 1, 2]), 2),
            Err(Error::Inadmissible(_))
        ));
        assert!(matches!(
            lexsegment_of_hf(2, &window(&[1, 3]), 1),
            Err(Error::Inadmissible(_))
        ));
        assert!(matches!(
            lexsegment_of_hf(2, &window(&[1, 2]), 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn extension_reaches_late_generators() {
        // n = 4, three cubics: the lex ideal has generators far above the default horizon
        let seg = froeberg_lexsegment(4, &[3, 3, 3]).unwrap();
        assert!(!seg.horizon_uncertain);
        assert!(seg.ideal.maxdeg().unwrap() > default_horizon(4, &[3, 3, 3]));
        let hs = seg.ideal.hilbert_series(Some(0));
        assert_eq!(hs.rational(), Some(&froeberg_rational(4, &[3, 3, 3])));
    }

    fn random_ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
        proptest::collection::vec(proptest::collection::vec(0u16..4, n), 1..=5)
            .prop_map(move |rows| MonomialIdeal::from_exponents(n, rows).unwrap())
    }

    proptest! {
        #[test]
        fn bracket_is_idempotent(c in proptest::collection::vec(-5i64..6, 1..12)) {
            let once = bracket_truncate(&window(&c));
            prop_assert_eq!(bracket_truncate(&once), once);
        }

        #[test]
        fn regular_sequence_series_stay_positive(
            n in 1usize..=5,
            degrees in proptest::collection::vec(1u32..=4, 0..=5),
        ) {
            prop_assume!(degrees.len() <= n);
            let s = froeberg_series(n, &degrees, 30);
            // no truncation: equal to the plain expansion of the product
            let mut num = vec![1i64];
            for &d in &degrees {
                let mut f = vec![0i64; d as usize + 1];
                f[0] = 1;
                f[d as usize] = -1;
                num = poly_mul(&num, &f);
            }
            let plain = SeriesWindow::from_rational(num, n as u32, 30);
            prop_assert_eq!(s.coeffs(), plain.coeffs());
            if degrees.len() < n {
                prop_assert!(s.coeffs().iter().all(|&c| c > 0));
            }
        }

        #[test]
        fn lex_ideal_has_at_least_as_many_generators(n in 1usize..=3, seed in any::<u64>()) {
            let j = {
                use proptest::strategy::ValueTree;
                use proptest::test_runner::{Config, RngSeed, TestRunner};
                let cfg = Config { rng_seed: RngSeed::Fixed(seed), ..Config::default() };
                let mut runner = TestRunner::new(cfg);
                random_ideal(n).new_tree(&mut runner).unwrap().current()
            };
            let hs = j.hilbert_series(Some(0));
            let seg = lexsegment_extended(n, &hs, j.default_horizon()).unwrap();
            prop_assert!(!seg.horizon_uncertain);
            let lex = seg.ideal.generator_counts();
            let other = j.generator_counts();
            for (d, &c) in other.iter().enumerate() {
                prop_assert!(lex.get(d).copied().unwrap_or(0) >= c, "degree {}", d);
            }
        }
    }
}
