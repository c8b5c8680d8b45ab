//! Batch runs over grids of cases, persisted as JSON lines plus a CSV summary.
//!
//! Rows are keyed by case and seed. Re-running a grid appends only the missing rows, and
//! the CSV is rebuilt from the JSON-lines file after every run.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::monomial_ideal::MonomialIdeal;
use crate::order::BaseOrder;
use crate::pipeline::{compute_gin, generic_templates, FieldKind, GinRequest, GinResult, Route};
use crate::properties::{is_borel_fixed, is_lexsegment, is_weakly_revlex};
use crate::series::lexsegment_extended;

pub const JSONL_NAME: &str = "survey.jsonl";
pub const CSV_NAME: &str = "survey.csv";

/// CSV column order.
pub const CSV_COLUMNS: [&str; 19] = [
    "n",
    "s",
    "degrees",
    "order",
    "route",
    "field",
    "seed",
    "trials",
    "agreement",
    "gin",
    "is_lexsegment",
    "is_weakly_revlex",
    "is_borel_fixed",
    "maxdeg_gin",
    "maxgbdeg_bound",
    "u_generic",
    "fallback",
    "runtime_ms",
    "error",
];

/// One `(n, degrees)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurveyCase {
    pub n: usize,
    pub degrees: Vec<u32>,
}

/// Cases for every `n` in `ns`, `s` in `ss` and nondecreasing degree tuple in `dmin..=dmax`.
pub fn grid_cases(ns: &[usize], ss: &[usize], dmin: u32, dmax: u32) -> Vec<SurveyCase> {
    let mut out = Vec::new();
    for &n in ns {
        for &s in ss {
            for degrees in nondecreasing_tuples(s, dmin, dmax) {
                out.push(SurveyCase { n, degrees });
            }
        }
    }
    out
}

fn nondecreasing_tuples(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if lo > hi || len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![lo; len];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..len).rev().find(|&i| cur[i] < hi) else {
            return out;
        };
        let v = cur[i] + 1;
        cur[i..].fill(v);
    }
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub order: BaseOrder,
    pub route: Route,
    pub field: FieldKind,
    pub trials: usize,
    pub seed: u64,
    /// Per-case limit on Groebner basis work.
    pub budget: Option<Duration>,
    /// Redo GF(p) sampling over Q when agreement is below 4/5 or there is no majority.
    pub fallback: bool,
}

impl SurveyConfig {
    pub fn new(order: BaseOrder, route: Route) -> Self {
        SurveyConfig {
            order,
            route,
            field: FieldKind::default_for(route),
            trials: 5,
            seed: 0,
            budget: None,
            fallback: true,
        }
    }

    fn request(&self, field: FieldKind) -> GinRequest {
        GinRequest {
            order: self.order,
            route: self.route,
            field,
            trials: self.trials,
            seed: self.seed,
            bound: None,
            budget: self
                .budget
                .map_or_else(Budget::unlimited, Budget::with_timeout),
        }
    }
}

/// One persisted survey line. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub schema: u32,
    pub n: usize,
    pub s: usize,
    pub degrees: Vec<u32>,
    pub order: String,
    pub route: String,
    /// Field the reported result was computed over.
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub seeds: Vec<u64>,
    pub agreement: usize,
    pub gin: Option<serde_json::Value>,
    pub is_lexsegment: Option<bool>,
    pub is_weakly_revlex: Option<bool>,
    pub is_borel_fixed: Option<bool>,
    pub maxdeg_gin: Option<u32>,
    pub maxgbdeg_bound: Option<u32>,
    pub u_generic: Vec<String>,
    /// Set when a GF(p) run was replaced by a Q run.
    pub fallback: bool,
    pub runtime_ms: u64,
    pub error: Option<String>,
}

/// Identity of a row for idempotent persistence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct RowKey {
    n: usize,
    degrees: Vec<u32>,
    order: String,
    route: String,
    seed: u64,
    trials: usize,
}

impl SurveyRow {
    fn key(&self) -> RowKey {
        RowKey {
            n: self.n,
            degrees: self.degrees.clone(),
            order: self.order.clone(),
            route: self.route.clone(),
            seed: self.seed,
            trials: self.trials,
        }
    }

    pub fn gin_ideal(&self) -> Option<MonomialIdeal> {
        self.gin
            .as_ref()
            .and_then(|v| MonomialIdeal::from_json(v).ok())
    }

    /// The bound `maxdeg_gin <= maxgbdeg_bound`, vacuous when either is missing.
    pub fn bound_holds(&self) -> bool {
        match (self.maxdeg_gin, self.maxgbdeg_bound) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("rows serialize")
    }

    fn csv_record(&self) -> Vec<String> {
        let join = |v: &[String]| v.join(";");
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.n.to_string(),
            self.s.to_string(),
            join(&self.degrees.iter().map(u32::to_string).collect::<Vec<_>>()),
            self.order.clone(),
            self.route.clone(),
            self.field.clone(),
            self.seed.to_string(),
            self.trials.to_string(),
            self.agreement.to_string(),
            opt(self.gin_ideal().map(|j| j.to_string())),
            opt(self.is_lexsegment.map(|b| b.to_string())),
            opt(self.is_weakly_revlex.map(|b| b.to_string())),
            opt(self.is_borel_fixed.map(|b| b.to_string())),
            opt(self.maxdeg_gin.map(|b| b.to_string())),
            opt(self.maxgbdeg_bound.map(|b| b.to_string())),
            join(&self.u_generic),
            self.fallback.to_string(),
            self.runtime_ms.to_string(),
            opt(self.error.clone()),
        ]
    }
}

fn needs_fallback(cfg: &SurveyConfig, outcome: &Result<GinResult>) -> bool {
    if !cfg.fallback || cfg.route != Route::Sampling || cfg.field == FieldKind::Rational {
        return false;
    }
    match outcome {
        Ok(r) => 5 * r.agreement < 4 * r.seeds.len(),
        Err(Error::Inconclusive { .. }) => true,
        Err(_) => false,
    }
}

/// Computes one row. Failures end up in `error`.
pub fn run_case(case: &SurveyCase, cfg: &SurveyConfig) -> SurveyRow {
    let start = Instant::now();
    let mut row = SurveyRow {
        schema: 1,
        n: case.n,
        s: case.degrees.len(),
        degrees: case.degrees.clone(),
        order: cfg.order.name().to_string(),
        route: cfg.route.name().to_string(),
        field: cfg.field.tag(),
        seed: cfg.seed,
        trials: cfg.trials,
        seeds: Vec::new(),
        agreement: 0,
        gin: None,
        is_lexsegment: None,
        is_weakly_revlex: None,
        is_borel_fixed: None,
        maxdeg_gin: None,
        maxgbdeg_bound: None,
        u_generic: Vec::new(),
        fallback: false,
        runtime_ms: 0,
        error: None,
    };
    if let Err(e) = fill_row(case, cfg, &mut row) {
        row.error = Some(e.to_string());
    }
    row.runtime_ms = start.elapsed().as_millis() as u64;
    row
}

fn fill_row(case: &SurveyCase, cfg: &SurveyConfig, row: &mut SurveyRow) -> Result<()> {
    let inst = generic_templates(case.n, &case.degrees)?;
    let mut outcome = compute_gin(&inst, &cfg.request(cfg.field));
    let mut field = cfg.field;
    if needs_fallback(cfg, &outcome) {
        field = FieldKind::Rational;
        row.fallback = true;
        outcome = compute_gin(&inst, &cfg.request(field));
    }
    row.field = field.tag();
    let res = outcome?;
    row.seeds = res.seeds.clone();
    row.agreement = res.agreement;
    row.u_generic = res.u_generic.iter().map(|u| u.name().to_string()).collect();
    let gin = &res.ideal;
    row.gin = Some(gin.to_json());
    row.is_lexsegment = Some(is_lexsegment(gin).holds);
    row.is_weakly_revlex = Some(is_weakly_revlex(gin).holds);
    row.is_borel_fixed = Some(is_borel_fixed(gin, field.characteristic())?.holds);
    row.maxdeg_gin = gin.maxdeg().ok();
    if !gin.is_zero() {
        let hs = gin.hilbert_series(None);
        let lex = lexsegment_extended(case.n, &hs, hs.horizon())?;
        row.maxgbdeg_bound = lex.ideal.maxdeg().ok();
    }
    Ok(())
}

/// Reads every row of a JSON-lines file; a missing file reads as empty.
pub fn read_rows(path: &Path) -> io::Result<Vec<SurveyRow>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = serde_json::from_str(&line).map_err(|e| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("{}:{}: {e}", path.display(), i + 1),
            )
        })?;
        rows.push(row);
    }
    Ok(rows)
}

/// Writes the CSV summary of `rows`; no rows gives an empty file.
pub fn write_csv(path: &Path, rows: &[SurveyRow]) -> io::Result<()> {
    if rows.is_empty() {
        return fs::write(path, "");
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record(r.csv_record())?;
    }
    w.flush()
}

#[derive(Clone, Debug)]
pub struct SurveyReport {
    /// Rows for the requested cases, in case order, whether new or already on disk.
    pub rows: Vec<SurveyRow>,
    pub appended: usize,
    pub jsonl: PathBuf,
    pub csv: PathBuf,
}

/// Runs the missing cases in parallel and appends their rows in case order.
pub fn run_survey(
    cases: &[SurveyCase],
    cfg: &SurveyConfig,
    out_dir: &Path,
) -> io::Result<SurveyReport> {
    fs::create_dir_all(out_dir)?;
    let jsonl = out_dir.join(JSONL_NAME);
    let csv_path = out_dir.join(CSV_NAME);
    let existing = read_rows(&jsonl)?;
    let mut seen: HashSet<RowKey> = existing.iter().map(SurveyRow::key).collect();

    let probe = |case: &SurveyCase| RowKey {
        n: case.n,
        degrees: case.degrees.clone(),
        order: cfg.order.name().to_string(),
        route: cfg.route.name().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
    };
    let mut todo: Vec<&SurveyCase> = Vec::new();
    for case in cases {
        if seen.insert(probe(case)) {
            todo.push(case);
        }
    }

    let mut file = OpenOptions::new().create(true).append(true).open(&jsonl)?;
    let (tx, rx) = mpsc::channel::<(usize, SurveyRow)>();
    let new_rows = std::thread::scope(|scope| -> io::Result<Vec<SurveyRow>> {
        let writer = scope.spawn(move || -> io::Result<Vec<SurveyRow>> {
            let mut pending = BTreeMap::new();
            let mut written = Vec::new();
            for (i, row) in rx {
                pending.insert(i, row);
                while let Some(row) = pending.remove(&written.len()) {
                    writeln!(file, "{}", row.to_json_line())?;
                    file.flush()?;
                    written.push(row);
                }
            }
            Ok(written)
        });
        todo.par_iter()
            .enumerate()
            .for_each_with(tx, |tx, (i, case)| {
                let _ = tx.send((i, run_case(case, cfg)));
            });
        writer.join().expect("writer thread")
    })?;

    let all = read_rows(&jsonl)?;
    write_csv(&csv_path, &all)?;
    let rows = cases
        .iter()
        .filter_map(|c| {
            let key = probe(c);
            all.iter().find(|r| r.key() == key).cloned()
        })
        .collect();
    Ok(SurveyReport {
        rows,
        appended: new_rows.len(),
        jsonl,
        csv: csv_path,
    })
}
