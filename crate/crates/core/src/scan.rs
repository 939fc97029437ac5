//! Exhaustive and sampled scans over polynomial spaces with JSON-lines,
//! CSV and summary reports.
//!
//! Output depends only on the configuration: items are processed in any
//! order by the worker pool and sorted by their enumeration index before
//! anything is written.

use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{choose_l, envelope, orbit_bound_with, run_bound_check, weil_check, BoundReport, CharTable, WeilCheck};
use crate::classify::{classify_2_ordinary, oracle_2_ordinary, ClassificationReport, Form, OracleVerdict, Verdict};
use crate::dynamics::{longest_run_in, FunctionalGraph, SignSequence};
use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::fpoly::{Poly, DEFAULT_DEGREE_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Every polynomial of exact degree `d`.
    All,
    Monic,
    Sample { count: usize, seed: u64, monic: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// Cross-check the classifier against the factorization oracle.
    pub oracle: bool,
    pub weil: bool,
    pub orbit_bounds: bool,
    /// Only on 2-ordinary polynomials; requires `orbit_bounds`.
    pub envelope: bool,
    pub run_bounds: bool,
    /// Run checks on polynomials of the exceptional forms as well.
    pub runs_on_exceptional: bool,
    pub ratios: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            oracle: false,
            weil: true,
            orbit_bounds: true,
            envelope: true,
            run_bounds: true,
            runs_on_exceptional: false,
            ratios: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub field: String,
    pub degree: usize,
    pub space: Space,
    pub checks: Checks,
    /// Restricts orbit-bound checks to a sample of the eligible `(f, a)`
    /// pairs (those with purely periodic sign sequences).
    pub pair_sample: Option<SampleSpec>,
    /// Window lengths `L`; defaults to `1..=max(choose_l(q, d), 3)`.
    pub windows: Option<Vec<usize>>,
    /// Oracle depth.
    pub depth: u32,
    pub budget: u64,
    /// Seed for randomized factorization.
    pub seed: u64,
    /// Worker threads; not part of the reproducibility key.
    #[serde(skip, default = "default_workers")]
    pub workers: usize,
}

fn default_workers() -> usize {
    1
}

impl ScanConfig {
    pub fn new(field: &str, degree: usize) -> Self {
        ScanConfig {
            field: field.to_string(),
            degree,
            space: Space::Monic,
            checks: Checks::default(),
            pair_sample: None,
            windows: None,
            depth: 4,
            budget: DEFAULT_DEGREE_BUDGET,
            seed: 0,
            workers: 1,
        }
    }

    pub fn resolved_windows(&self, q: u64) -> Vec<usize> {
        match &self.windows {
            Some(w) => w.clone(),
            None => (1..=choose_l(q, self.degree).max(3)).collect(),
        }
    }
}

/// Counters gathered during a scan.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanStats {
    pub polys: usize,
    pub two_ordinary: usize,
    pub form_counts: [usize; 5],
    pub oracle_certified: usize,
    pub oracle_errors: usize,
    pub disagreements: Vec<String>,
    pub weil_applies: usize,
    pub weil_failures: Vec<String>,
    pub eligible_pairs: usize,
    pub orbit_rows: usize,
    pub orbit_failures: Vec<String>,
    pub envelope_checks: usize,
    pub envelope_failures: Vec<String>,
    pub run_pairs: usize,
    pub run_checks: usize,
    pub run_excluded: usize,
    pub run_failures: Vec<String>,
    pub max_orbit: usize,
    pub max_run: usize,
    /// `max |O| / m` over non-exceptional `f` and purely periodic `a`.
    pub max_orbit_over_m: Option<f64>,
    pub ratio_exponent_q5_6: f64,
    pub ratio_exponent_log_d: f64,
    pub max_orbit_ratio_q5_6: Option<f64>,
    pub max_orbit_ratio_log_d: Option<f64>,
    pub max_run_ratio_q5_6: Option<f64>,
    pub max_run_ratio_log_d: Option<f64>,
}

pub struct ScanOutput {
    pub jsonl: String,
    pub csv: String,
    pub summary: Value,
    pub stats: ScanStats,
}

impl ScanOutput {
    /// Writes `scan.jsonl`, `scan.csv` and `summary.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("scan.jsonl"), &self.jsonl)?;
        fs::write(dir.join("scan.csv"), &self.csv)?;
        let mut summary = serde_json::to_string_pretty(&self.summary).expect("serializable");
        summary.push('\n');
        fs::write(dir.join("summary.json"), summary)
    }
}

/// Maps `f` over `items` on up to `workers` threads, returning results in
/// input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut tagged: Vec<(usize, R)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers.min(items.len()))
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= items.len() {
                            break local;
                        }
                        local.push((i, f(&items[i])));
                    }
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    tagged.sort_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, r)| r).collect()
}

/// The polynomial with enumeration index `idx` in the given space:
/// coefficients `c_0, ..., c_(d-1)` are base-`q` digits of `idx` (most
/// significant first) and the leading coefficient is `1 + idx / q^d`.
pub fn poly_at(field: &FieldSpec, d: usize, idx: u64) -> Poly {
    let q = field.q();
    let mut rest = idx;
    let mut low = vec![field.zero(); d];
    for slot in low.iter_mut().rev() {
        *slot = field.element(rest % q).expect("digit");
        rest /= q;
    }
    low.push(field.element(1 + rest).expect("leading coefficient"));
    Poly::new(field, low)
}

pub fn space_size(field: &FieldSpec, d: usize, monic: bool) -> Option<u64> {
    let low = field.q().checked_pow(d as u32)?;
    if monic {
        Some(low)
    } else {
        low.checked_mul(field.q() - 1)
    }
}

fn sample_indices(total: u64, count: usize, seed: u64) -> Result<Vec<u64>> {
    let total_usize = usize::try_from(total).map_err(|_| Error::Parse("space too large to sample".into()))?;
    if count >= total_usize {
        return Ok((0..total).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = index::sample(&mut rng, total_usize, count).into_iter().map(|i| i as u64).collect();
    picked.sort_unstable();
    Ok(picked)
}

pub fn enumerate_space(field: &FieldSpec, d: usize, space: &Space) -> Result<Vec<Poly>> {
    // monic indices are exactly those below q^d
    let indices: Vec<u64> = match space {
        Space::All | Space::Monic => {
            let monic = *space == Space::Monic;
            let total = space_size(field, d, monic).ok_or_else(|| Error::Parse("space too large".into()))?;
            if total > 50_000_000 {
                return Err(Error::Parse(format!("space of {total} polynomials is too large; use a sample")));
            }
            (0..total).collect()
        }
        Space::Sample { count, seed, monic } => {
            let total = space_size(field, d, *monic).ok_or_else(|| Error::Parse("space too large".into()))?;
            sample_indices(total, *count, *seed)?
        }
    };
    Ok(indices.into_iter().map(|i| poly_at(field, d, i)).collect())
}

struct PolyResult {
    f: Poly,
    report: ClassificationReport,
    oracle: Option<Result<OracleVerdict>>,
    weil: Option<WeilCheck>,
    eligible: Vec<FieldElement>,
    runs: Vec<BoundReport>,
    run_errors: Vec<String>,
    max_orbit: usize,
    max_run: usize,
    /// `(|O|, m)` maximizing `|O| / m` among purely periodic points.
    best_orbit: Option<(usize, usize)>,
}

fn analyze(f: &Poly, config: &ScanConfig) -> PolyResult {
    let report = classify_2_ordinary(f).expect("degree checked up front");
    let exceptional = report.verdict == Verdict::NotTwoOrdinary;
    let oracle = config.checks.oracle.then(|| oracle_2_ordinary(f, config.depth, config.budget, config.seed));
    let weil = config.checks.weil.then(|| weil_check(f));
    let graph = FunctionalGraph::new(f);
    let field = f.field();
    let mut eligible = Vec::new();
    let mut runs = Vec::new();
    let mut run_errors = Vec::new();
    let mut max_orbit = 0;
    let mut max_run = 0;
    let mut best_orbit: Option<(usize, usize)> = None;
    for a in field.elements() {
        let orbit = graph.orbit(a);
        let signs = SignSequence::from_orbit(field, &orbit);
        max_orbit = max_orbit.max(orbit.size());
        if signs.purely_periodic {
            eligible.push(a);
            if !exceptional {
                let cand = (orbit.size(), signs.sign_period);
                if best_orbit.is_none_or(|(s, m)| cand.0 * m > s * cand.1) {
                    best_orbit = Some(cand);
                }
            }
        }
        if !exceptional {
            let r = longest_run_in(&orbit, &signs, 1).length.max(longest_run_in(&orbit, &signs, -1).length);
            max_run = max_run.max(r);
        }
        if config.checks.run_bounds && (!exceptional || config.checks.runs_on_exceptional) {
            match run_bound_check(f, a, config.budget) {
                Ok(r) => runs.push(r),
                Err(e) => run_errors.push(format!("{} a={}: {e}", f, field.format(a))),
            }
        }
    }
    PolyResult { f: f.clone(), report, oracle, weil, eligible, runs, run_errors, max_orbit, max_run, best_orbit }
}

fn orbit_rows(f: &Poly, points: &[FieldElement], windows: &[usize], envelope_on: bool) -> Vec<BoundReport> {
    let Some(&max_window) = windows.iter().max() else {
        return Vec::new();
    };
    let field = f.field();
    let d = f.degree().expect("nonconstant");
    let graph = FunctionalGraph::new(f);
    let full = CharTable::new(f, max_window);
    let mut out = Vec::new();
    for &a in points {
        let orbit = graph.orbit(a);
        for &l in windows {
            let table = if l == max_window { None } else { Some(CharTable::new(f, l)) };
            let mut rep = orbit_bound_with(table.as_ref().unwrap_or(&full), f, &orbit).expect("eligible points are purely periodic");
            if envelope_on {
                let env: Vec<_> = rep
                    .b_values
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (format!("envelope_{i}"), envelope(field.q(), d, l, b.clone())))
                    .collect();
                rep.checks.extend(env);
            }
            out.push(rep);
        }
    }
    out
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanOutput> {
    let field = FieldSpec::from_str(&config.field)?;
    if config.degree < 2 {
        return Err(Error::DegreeTooSmall(config.degree));
    }
    let q = field.q();
    let d = config.degree;
    let polys = enumerate_space(&field, d, &config.space)?;
    let results = par_map(&polys, config.workers, |f| analyze(f, config));

    let windows = config.resolved_windows(q);
    for &l in &windows {
        crate::fpoly::check_budget(d, l as u32, config.budget)?;
    }
    // (poly index, point) pairs that get orbit-bound rows
    let mut selected: Vec<Vec<FieldElement>> = vec![Vec::new(); results.len()];
    let eligible_total: usize = results.iter().map(|r| r.eligible.len()).sum();
    if config.checks.orbit_bounds {
        match config.pair_sample {
            None => {
                for (slot, r) in selected.iter_mut().zip(&results) {
                    slot.clone_from(&r.eligible);
                }
            }
            Some(SampleSpec { count, seed }) => {
                let flat: Vec<(usize, FieldElement)> = results
                    .iter()
                    .enumerate()
                    .flat_map(|(i, r)| r.eligible.iter().map(move |&a| (i, a)))
                    .collect();
                for k in sample_indices(flat.len() as u64, count, seed)? {
                    let (i, a) = flat[k as usize];
                    selected[i].push(a);
                }
            }
        }
    }
    let work: Vec<usize> = (0..results.len()).filter(|&i| !selected[i].is_empty()).collect();
    let orbit_reports = par_map(&work, config.workers, |&i| {
        let envelope_on = config.checks.envelope && results[i].report.verdict == Verdict::TwoOrdinary;
        orbit_rows(&results[i].f, &selected[i], &windows, envelope_on)
    });
    let mut orbit_by_poly: Vec<Vec<BoundReport>> = vec![Vec::new(); results.len()];
    for (i, reps) in work.into_iter().zip(orbit_reports) {
        orbit_by_poly[i] = reps;
    }

    let mut stats = ScanStats {
        polys: results.len(),
        eligible_pairs: eligible_total,
        ratio_exponent_q5_6: 5.0 / 6.0,
        ratio_exponent_log_d: {
            let l = (d as f64).log2();
            (2.0 * l + 1.0) / (2.0 * l + 2.0)
        },
        ..ScanStats::default()
    };
    let mut jsonl = String::new();
    let header = json!({"type": "config", "config": config, "q": q, "windows": windows});
    jsonl.push_str(&header.to_string());
    jsonl.push('\n');
    let mut csv_out = csv::Writer::from_writer(Vec::new());
    csv_out
        .write_record(["q", "d", "f", "a", "m", "orbit", "L", "maxB", "lhs", "rhs", "pass"])
        .expect("in-memory write");
    let mut best_orbit: Option<(usize, usize)> = None;

    for (r, orbit_reps) in results.iter().zip(&orbit_by_poly) {
        let f = &r.f;
        let rep = &r.report;
        if rep.verdict == Verdict::TwoOrdinary {
            stats.two_ordinary += 1;
        }
        for (k, form) in [Form::A, Form::B, Form::C, Form::D, Form::E].into_iter().enumerate() {
            if rep.matches(form) {
                stats.form_counts[k] += 1;
            }
        }
        let mut line = json!({"type": "poly", "classification": rep.to_json()});
        if let Some(o) = &r.oracle {
            match o {
                Ok(v) => {
                    line["oracle"] = v.to_json();
                    let certified = matches!(v, OracleVerdict::CertifiedNot(_));
                    if certified {
                        stats.oracle_certified += 1;
                    }
                    if certified != (rep.verdict == Verdict::NotTwoOrdinary) {
                        stats.disagreements.push(format!("{f}: forms [{}] oracle {v:?}", rep.forms()));
                    }
                }
                Err(e) => {
                    stats.oracle_errors += 1;
                    line["oracle"] = json!({"error": e.to_string()});
                    if rep.verdict == Verdict::NotTwoOrdinary {
                        stats.disagreements.push(format!("{f}: forms [{}] oracle error {e}", rep.forms()));
                    }
                }
            }
        }
        if let Some(w) = &r.weil {
            line["weil"] = w.to_json();
            if let Some(pass) = w.passes() {
                stats.weil_applies += 1;
                if !pass {
                    stats.weil_failures.push(f.to_string());
                }
            }
        }
        line["eligible_points"] = json!(r.eligible.len());
        line["max_orbit"] = json!(r.max_orbit);
        jsonl.push_str(&line.to_string());
        jsonl.push('\n');
        stats.max_orbit = stats.max_orbit.max(r.max_orbit);
        stats.max_run = stats.max_run.max(r.max_run);
        if let Some(cand) = r.best_orbit {
            if best_orbit.is_none_or(|(s, m)| cand.0 * m > s * cand.1) {
                best_orbit = Some(cand);
            }
        }

        for run in &r.runs {
            stats.run_pairs += 1;
            stats.run_checks += run.checks.len();
            stats.run_excluded += run.notes.iter().filter(|n| n.contains("excluded")).count();
            if !run.pass() {
                stats.run_failures.push(format!("{f} a={}", field.format(run.a.expect("set"))));
            }
            let mut v = run.to_json();
            v["type"] = json!("run");
            jsonl.push_str(&v.to_string());
            jsonl.push('\n');
        }
        for e in &r.run_errors {
            stats.run_failures.push(e.clone());
        }
        for orep in orbit_reps {
            stats.orbit_rows += 1;
            let a = orep.a.expect("set");
            let (orbit_sum, orbit_uniform) = (&orep.checks[0].1, &orep.checks[1].1);
            if !orbit_sum.holds() || !orbit_uniform.holds() {
                stats.orbit_failures.push(format!("{f} a={} L={}", field.format(a), orep.window));
            }
            for (name, c) in orep.checks.iter().skip(2) {
                stats.envelope_checks += 1;
                if !c.holds() {
                    stats.envelope_failures.push(format!("{f} a={} L={} {name}", field.format(a), orep.window));
                }
            }
            let mut v = orep.to_json();
            v["type"] = json!("orbit");
            jsonl.push_str(&v.to_string());
            jsonl.push('\n');
            csv_out
                .write_record([
                    q.to_string(),
                    d.to_string(),
                    f.to_string(),
                    field.format(a),
                    orep.sign_period.to_string(),
                    orep.orbit_size.to_string(),
                    orep.window.to_string(),
                    orep.max_b().map(|b| b.to_string()).unwrap_or_default(),
                    orbit_sum.lhs.to_string(),
                    orbit_sum.rhs_text(),
                    orep.pass().to_string(),
                ])
                .expect("in-memory write");
        }
    }

    if config.checks.ratios {
        let qf = q as f64;
        if let Some((size, m)) = best_orbit {
            let base = size as f64 / m as f64;
            stats.max_orbit_over_m = Some(base);
            stats.max_orbit_ratio_q5_6 = Some(base / qf.powf(stats.ratio_exponent_q5_6));
            stats.max_orbit_ratio_log_d = Some(base / qf.powf(stats.ratio_exponent_log_d));
        }
        if stats.two_ordinary > 0 {
            stats.max_run_ratio_q5_6 = Some(stats.max_run as f64 / qf.powf(stats.ratio_exponent_q5_6));
            stats.max_run_ratio_log_d = Some(stats.max_run as f64 / qf.powf(stats.ratio_exponent_log_d));
        }
    }

    let csv = String::from_utf8(csv_out.into_inner().expect("in-memory flush")).expect("utf-8");
    let summary = summarize(config, &field, &stats);
    Ok(ScanOutput { jsonl, csv, summary, stats })
}

fn summarize(config: &ScanConfig, field: &FieldSpec, stats: &ScanStats) -> Value {
    let form_counts: serde_json::Map<String, Value> = ["a", "b", "c", "d", "e"]
        .iter()
        .zip(stats.form_counts)
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "config": config,
        "q": field.q(),
        "polys": stats.polys,
        "two_ordinary": stats.two_ordinary,
        "form_counts": form_counts,
        "oracle": {
            "enabled": config.checks.oracle,
            "certified": stats.oracle_certified,
            "errors": stats.oracle_errors,
            "disagreements": stats.disagreements,
        },
        "weil": {"applies": stats.weil_applies, "failures": stats.weil_failures},
        "orbit_bounds": {
            "eligible_pairs": stats.eligible_pairs,
            "rows": stats.orbit_rows,
            "failures": stats.orbit_failures,
            "envelope_checks": stats.envelope_checks,
            "envelope_failures": stats.envelope_failures,
        },
        "run_bounds": {
            "pairs": stats.run_pairs,
            "checks": stats.run_checks,
            "excluded_cycle_constant": stats.run_excluded,
            "failures": stats.run_failures,
        },
        "max_orbit": stats.max_orbit,
        "max_run_non_exceptional": stats.max_run,
        "ratios": {
            "max_orbit_over_m": stats.max_orbit_over_m,
            "exponent_q5_6": stats.ratio_exponent_q5_6,
            "exponent_log_d": stats.ratio_exponent_log_d,
            "orbit_ratio_q5_6": stats.max_orbit_ratio_q5_6,
            "orbit_ratio_log_d": stats.max_orbit_ratio_log_d,
            "run_ratio_q5_6": stats.max_run_ratio_q5_6,
            "run_ratio_log_d": stats.max_run_ratio_log_d,
        },
    })
}

/// Ratio table rows across several fields, as CSV.
pub fn ratio_table(configs: &[ScanConfig]) -> Result<(String, Vec<ScanStats>)> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "q",
        "d",
        "polys",
        "max_orbit_over_m",
        "orbit_ratio_q5_6",
        "orbit_ratio_log_d",
        "max_run",
        "run_ratio_q5_6",
        "run_ratio_log_d",
    ])
    .expect("in-memory write");
    let mut all = Vec::new();
    for c in configs {
        let out = run_scan(c)?;
        let s = out.stats;
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        let q = FieldSpec::from_str(&c.field)?.q();
        w.write_record([
            q.to_string(),
            c.degree.to_string(),
            s.polys.to_string(),
            opt(s.max_orbit_over_m),
            opt(s.max_orbit_ratio_q5_6),
            opt(s.max_orbit_ratio_log_d),
            s.max_run.to_string(),
            opt(s.max_run_ratio_q5_6),
            opt(s.max_run_ratio_log_d),
        ])
        .expect("in-memory write");
        all.push(s);
    }
    let text = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
    Ok((text, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn enumeration_covers_the_space() {
        let f7 = make_field(7, 1, None).unwrap();
        let monic = enumerate_space(&f7, 2, &Space::Monic).unwrap();
        assert_eq!(monic.len(), 49);
        assert!(monic.iter().all(|f| f.is_monic() && f.degree() == Some(2)));
        let mut sorted = monic.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 49);
        let all = enumerate_space(&f7, 2, &Space::All).unwrap();
        assert_eq!(all.len(), 49 * 6);
        let s1 = enumerate_space(&f7, 2, &Space::Sample { count: 100, seed: 1, monic: false }).unwrap();
        let s2 = enumerate_space(&f7, 2, &Space::Sample { count: 100, seed: 1, monic: false }).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 100);
    }

    #[test]
    fn scan_rows_and_determinism() {
        let mut config = ScanConfig::new("7", 2);
        config.checks.oracle = true;
        let one = run_scan(&config).unwrap();
        assert_eq!(one.stats.polys, 49);
        assert_eq!(one.jsonl.lines().filter(|l| l.contains("\"type\":\"poly\"")).count(), 49);
        assert!(one.stats.disagreements.is_empty(), "{:?}", one.stats.disagreements);
        assert!(one.stats.orbit_failures.is_empty());
        assert!(one.stats.run_failures.is_empty());
        config.workers = 4;
        let four = run_scan(&config).unwrap();
        assert_eq!(one.jsonl, four.jsonl);
        assert_eq!(one.csv, four.csv);
        assert_eq!(one.summary, four.summary);
        let header = one.csv.lines().next().unwrap();
        assert_eq!(header, "q,d,f,a,m,orbit,L,maxB,lhs,rhs,pass");
    }

    #[test]
    fn par_map_keeps_order() {
        let items: Vec<u64> = (0..1000).collect();
        assert_eq!(par_map(&items, 7, |x| x * x), items.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
