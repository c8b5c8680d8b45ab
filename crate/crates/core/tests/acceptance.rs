//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ginlab_core::groebner::{buchberger, reduce_basis};
use ginlab_core::monomial::default_names;
use ginlab_core::pipeline::{
    compute_gin, generic_templates, hilbert_function_homogeneous, initial_ideal, is_u_generic,
    FieldKind, GinRequest, Route, UGeneric,
};
use ginlab_core::properties::{borel_action_check, is_borel_fixed, is_lexsegment, Witness};
use ginlab_core::series::{froeberg_series, lexsegment_extended};
use ginlab_core::survey::{grid_cases, run_survey, SurveyConfig, SurveyRow};
use ginlab_core::{
    BaseOrder, Field, Monomial, MonomialIdeal, MonomialOrder, Polynomial, Rational, Ring,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ideal(n: usize, rows: &[&[u16]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, rows.iter().map(|r| r.to_vec())).unwrap()
}

fn section3_ideal() -> MonomialIdeal {
    ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 2], &[0, 4, 0]])
}

fn parse_all<F: Field>(n: usize, order: &MonomialOrder, polys: &[&str]) -> Vec<Polynomial<F>> {
    let ring = Ring::new(default_names(n));
    polys
        .iter()
        .map(|p| Polynomial::parse(ring.clone(), order.clone(), p).unwrap())
        .collect()
}

/// Standard monomials of degree `d` outside the ideal generated by `gens`, by enumeration.
fn brute_force_hf(n: usize, gens: &[Vec<u16>], d: u32) -> u64 {
    fn walk(n: usize, left: u32, cur: &mut Vec<u16>, gens: &[Vec<u16>], count: &mut u64) {
        if cur.len() == n - 1 {
            cur.push(left as u16);
            if !gens
                .iter()
                .any(|g| g.iter().zip(cur.iter()).all(|(a, b)| a <= b))
            {
                *count += 1;
            }
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            walk(n, left - e, cur, gens, count);
            cur.pop();
        }
    }
    if n == 0 {
        return u64::from(d == 0 && gens.is_empty());
    }
    let mut count = 0;
    walk(n, d, &mut Vec::new(), gens, &mut count);
    count
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, max_n: usize, max_deg: u32) -> MonomialIdeal {
    let n = rng.random_range(1..=max_n);
    let k = rng.random_range(1..=4);
    let gens = (0..k).map(|_| {
        let d = rng.random_range(1..=max_deg);
        let mut e = vec![0u16; n];
        for _ in 0..d {
            e[rng.random_range(0..n)] += 1;
        }
        Monomial::new(e)
    });
    MonomialIdeal::new(n, gens).unwrap()
}

fn exponents(j: &MonomialIdeal) -> Vec<Vec<u16>> {
    j.generators()
        .iter()
        .map(|g| g.exponents().to_vec())
        .collect()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t <= limit, "took {t:?}, limit {limit:?}");
    Ok(t)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for (n, d, want) in [
        (3, vec![2, 2], vec![1, 3, 4, 4, 4]),
        (3, vec![2, 2, 2], vec![1, 3, 3, 1, 0]),
        (2, vec![2, 2, 2], vec![1, 2, 0, 0, 0]),
    ] {
        let got = froeberg_series(n, &d, 4);
        ensure!(
            got.coeffs() == want,
            "n={n} d={d:?}: {:?} != {want:?}",
            got.coeffs()
        );
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("three series exact in {t:?}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let ord = MonomialOrder::DegRevLex;
    let i = parse_all::<Rational>(
        3,
        &ord,
        &[
            "x1^2 + x1*x3 + x2*x3 + x3^2",
            "x1^2 + x1*x2 + x1*x3 + x3^2",
            "x1^2 + x1*x2 - x1*x3 + x2^2 - x2*x3 - x3^2",
        ],
    );
    let j = parse_all::<Rational>(
        3,
        &ord,
        &[
            "x1^2 + x1*x3 + x2^2 + x2*x3 + x3^2",
            "x1*x2 + x1*x3 - x2^2 + x2*x3 + x3^2",
            "x1^2 + x1*x2 + x1*x3 + x2*x3 + x3^2",
        ],
    );
    let want_i = ideal(
        3,
        &[
            &[2, 0, 0],
            &[1, 1, 0],
            &[0, 2, 0],
            &[1, 0, 2],
            &[0, 1, 2],
            &[0, 0, 4],
        ],
    );
    let want_j = ideal(
        3,
        &[
            &[2, 0, 0],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 3, 0],
            &[0, 2, 1],
            &[0, 1, 2],
            &[0, 0, 4],
        ],
    );
    for (name, gens, want) in [("I", i, want_i), ("J", j, want_j)] {
        let g = reduce_basis(&buchberger(&gens, &ord));
        let got = MonomialIdeal::new(3, g.lead_monomials()).unwrap();
        ensure!(got == want, "ini({name}) = {got}, expected {want}");
        ensure!(
            got.generators().len() == g.len(),
            "reduced basis of {name} has {} elements for {} minimal leads",
            g.len(),
            got.generators().len()
        );
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "ini(I), ini(J) exact under degrevlex over Q in {t:?}"
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let point: Vec<Rational> = [8, -6, 9, -1, 1, 5, 1, 2, 7, -4, 5, -8]
        .iter()
        .map(|&v| Rational::from_i64(v))
        .collect();
    let inst = generic_templates(3, &[2, 2]).map_err(|e| e.to_string())?;
    let gens = inst
        .specialize(&point, BaseOrder::Lex)
        .map_err(|e| e.to_string())?;
    let gin = initial_ideal(3, &gens, BaseOrder::Lex).map_err(|e| e.to_string())?;
    ensure!(gin == section3_ideal(), "initial ideal {gin}");
    ensure!(is_lexsegment(&gin).holds, "not a lexsegment ideal");
    let series = gin.hilbert_series(Some(6));
    ensure!(
        series.coeffs() == [1, 3, 4, 4, 4, 4, 4],
        "series {:?}",
        series.coeffs()
    );
    let u = is_u_generic(3, &gens, &[2, 2], None).map_err(|e| e.to_string())?;
    ensure!(u == UGeneric::Yes, "is_u_generic = {}", u.name());
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{gin}, lexsegment, series 1,3,4,4,..., u-generic in {t:?}"
    ))
}

fn criterion_4(dir: &std::path::Path) -> (Check, Option<Vec<SurveyRow>>) {
    let start = Instant::now();
    let mut cases = grid_cases(&[3], &[2, 3], 2, 3);
    cases.extend(grid_cases(&[4], &[3], 2, 3));
    let cfg = SurveyConfig::new(BaseOrder::Lex, Route::Sampling);
    let report = match run_survey(&cases, &cfg, dir) {
        Ok(r) => r,
        Err(e) => return (Err(format!("survey failed: {e}")), None),
    };
    let rows = report.rows;
    let check = (|| {
        ensure!(
            rows.len() == cases.len(),
            "{} rows for {} cases",
            rows.len(),
            cases.len()
        );
        for r in &rows {
            ensure!(
                r.error.is_none(),
                "n={} d={:?}: {}",
                r.n,
                r.degrees,
                r.error.clone().unwrap()
            );
            ensure!(
                r.is_lexsegment == Some(true),
                "n={} d={:?}: gin is not a lexsegment ideal",
                r.n,
                r.degrees
            );
            ensure!(
                5 * r.agreement >= 4 * r.trials,
                "n={} d={:?}: agreement {}/{}",
                r.n,
                r.degrees,
                r.agreement,
                r.trials
            );
        }
        let t = within(start, Duration::from_secs(600))?;
        let fallbacks = rows.iter().filter(|r| r.fallback).count();
        let min_agree = rows.iter().map(|r| r.agreement).min().unwrap_or(0);
        Ok(format!(
            "{} cases lexsegment, min agreement {min_agree}/5, {fallbacks} Q fallbacks, {t:?}",
            rows.len()
        ))
    })();
    (check, Some(rows))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let inst = generic_templates(4, &[2, 2]).map_err(|e| e.to_string())?;
    let res = compute_gin(&inst, &GinRequest::new(BaseOrder::Lex, Route::Sampling))
        .map_err(|e| e.to_string())?;
    let want = ideal(
        4,
        &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 2, 0], &[0, 4, 0, 0]],
    );
    ensure!(res.ideal == want, "gin {}", res.ideal);
    let v = is_lexsegment(&res.ideal);
    ensure!(!v.holds, "reported as lexsegment");
    let Some(Witness::Lex { missing, .. }) = &v.witness else {
        return Err("no lex witness".into());
    };
    ensure!(
        missing.exponents() == [1, 0, 1, 2],
        "witness {:?}",
        missing.exponents()
    );
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{}, not lexsegment, witness x1*x3*x4^2, {t:?}",
        res.ideal
    ))
}

fn criterion_6(gins: &mut Vec<(MonomialIdeal, u64)>) -> Check {
    let mut parts = Vec::new();
    for (n, want, limit) in [
        (
            2,
            ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]),
            Duration::from_secs(60),
        ),
        (3, section3_ideal(), Duration::from_secs(1800)),
    ] {
        let start = Instant::now();
        let inst = generic_templates(n, &[2, 2]).map_err(|e| e.to_string())?;
        let par = compute_gin(&inst, &GinRequest::new(BaseOrder::Lex, Route::Parametric))
            .map_err(|e| e.to_string())?;
        let sam = compute_gin(&inst, &GinRequest::new(BaseOrder::Lex, Route::Sampling))
            .map_err(|e| e.to_string())?;
        ensure!(
            par.ideal == sam.ideal,
            "n={n}: parametric {} vs sampling {}",
            par.ideal,
            sam.ideal
        );
        ensure!(par.ideal == want, "n={n}: {} expected {want}", par.ideal);
        let t = within(start, limit)?;
        gins.push((
            par.ideal,
            FieldKind::default_for(Route::Parametric).characteristic(),
        ));
        gins.push((
            sam.ideal,
            FieldKind::default_for(Route::Sampling).characteristic(),
        ));
        parts.push(format!("n={n} {t:?}"));
    }
    Ok(format!("routes agree ({})", parts.join(", ")))
}

fn criterion_7(gins: &[(MonomialIdeal, u64)]) -> Check {
    let start = Instant::now();
    for (j, p) in gins {
        let v = is_borel_fixed(j, *p).map_err(|e| e.to_string())?;
        ensure!(v.holds, "{j} is not Borel-fixed at p={p}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fixed = 0;
    for _ in 0..50 {
        let j = random_monomial_ideal(&mut rng, 3, 4);
        let combinatorial = is_borel_fixed(&j, 0).map_err(|e| e.to_string())?.holds;
        let horizon = j.maxdeg().unwrap_or(0);
        let n = j.nvars();
        let mut action = true;
        for jj in 0..n {
            for i in 0..jj {
                for c in [1, 2] {
                    action &= borel_action_check(&j, i, jj, &Rational::from_i64(c), horizon)
                        .map_err(|e| e.to_string())?;
                }
            }
        }
        ensure!(
            action == combinatorial,
            "{j}: action {action}, combinatorial {combinatorial}"
        );
        fixed += usize::from(combinatorial);
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{} gins Borel-fixed; 50 random ideals agree ({fixed} fixed) in {t:?}",
        gins.len()
    ))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let j = random_monomial_ideal(&mut rng, 4, 5);
        let gens = exponents(&j);
        for d in 0..=8 {
            let (got, want) = (j.hilbert_function(d), brute_force_hf(j.nvars(), &gens, d));
            ensure!(got == want, "{j} degree {d}: {got} != {want}");
        }
    }
    for trial in 0..20 {
        let n = rng.random_range(1..=3);
        let order = [BaseOrder::Lex, BaseOrder::DegRevLex][trial % 2];
        let ring = Ring::new(default_names(n));
        let k = rng.random_range(1..=3);
        let gens: Vec<Polynomial<Rational>> = (0..k)
            .map(|_| {
                let deg = rng.random_range(1..=2u32);
                let terms: Vec<_> = ginlab_core::monomial::monomials_of_degree(n, deg)
                    .into_iter()
                    .filter_map(|m| match rng.random_range(-5..=5) {
                        0 => None,
                        c => Some((Rational::from_i64(c), m)),
                    })
                    .collect();
                Polynomial::from_terms(ring.clone(), MonomialOrder::base(order), terms)
            })
            .filter(|p| !p.is_zero())
            .collect();
        let ini = initial_ideal(n, &gens, order).map_err(|e| e.to_string())?;
        let ini_gens = exponents(&ini);
        for d in 0..=6 {
            let by_rank = hilbert_function_homogeneous(n, &gens, d).map_err(|e| e.to_string())?;
            let by_count = brute_force_hf(n, &ini_gens, d);
            ensure!(
                by_rank == by_count,
                "trial {trial} degree {d}: rank {by_rank}, count {by_count}"
            );
        }
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "100 monomial ideals to degree 8, 20 ideals to degree 6, {t:?}"
    ))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let j = random_monomial_ideal(&mut rng, 3, 5);
        let n = j.nvars();
        let hs = j.hilbert_series(None);
        let lex = lexsegment_extended(n, &hs, hs.horizon()).map_err(|e| e.to_string())?;
        ensure!(!lex.horizon_uncertain, "{j}: horizon not confirmed");
        let (src, dst) = (j.generator_counts(), lex.ideal.generator_counts());
        for (d, &want) in src.iter().enumerate() {
            let have = dst.get(d).copied().unwrap_or(0);
            ensure!(have >= want, "{j}: degree {d} lex has {have} < {want}");
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "30 ideals, lex counts dominate in every degree, {t:?}"
    ))
}

fn criterion_10(rows: &[SurveyRow]) -> Check {
    ensure!(!rows.is_empty(), "no survey rows");
    for r in rows {
        let (Some(m), Some(b)) = (r.maxdeg_gin, r.maxgbdeg_bound) else {
            return Err(format!("n={} d={:?}: missing degree data", r.n, r.degrees));
        };
        ensure!(
            m <= b,
            "n={} d={:?}: maxdeg {m} > bound {b}",
            r.n,
            r.degrees
        );
        ensure!(
            m == b,
            "n={} d={:?}: maxdeg {m} < bound {b} on a lexsegment case",
            r.n,
            r.degrees
        );
    }
    let top = rows.iter().filter_map(|r| r.maxdeg_gin).max().unwrap_or(0);
    Ok(format!(
        "{} rows with maxdeg = bound (largest {top})",
        rows.len()
    ))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary directory");
    let mut results: Vec<(u32, &str, Check)> = Vec::new();
    let mut gins: Vec<(MonomialIdeal, u64)> = vec![(section3_ideal(), 0)];

    results.push((1, "Froeberg series", criterion_1()));
    results.push((2, "Groebner bases of the U/V example", criterion_2()));
    results.push((3, "fixed-point replay", criterion_3()));
    let (c4, survey) = criterion_4(dir.path());
    results.push((4, "lex survey at s <= n", c4));
    if let Some(rows) = &survey {
        for r in rows {
            if let Some(j) = r.gin_ideal() {
                let p = if r.field == "Q" { 0 } else { 32003 };
                gins.push((j, p));
            }
        }
    }
    let c5 = criterion_5();
    if c5.is_ok() {
        gins.push((
            ideal(
                4,
                &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 2, 0], &[0, 4, 0, 0]],
            ),
            32003,
        ));
    }
    results.push((5, "n=4, d=(2,2) is not lexsegment", c5));
    results.push((6, "route agreement", criterion_6(&mut gins)));
    results.push((7, "Borel-fixedness", criterion_7(&gins)));
    results.push((8, "Hilbert function oracles", criterion_8()));
    results.push((9, "lexsegment generator maximality", criterion_9()));
    let c10 = match &survey {
        Some(rows) => criterion_10(rows),
        None => Err("survey did not run".into()),
    };
    results.push((10, "maxdeg bound on survey rows", c10));

    let mut failed = 0;
    for (k, name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {k:>2} ({name}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {k:>2} ({name}): {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
