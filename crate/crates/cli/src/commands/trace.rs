use std::sync::Mutex;

use rayon::prelude::*;
use serde_json::Value;

use crate::config::{list, parse_rational, single, MethodArg, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{int, num, obj, opt, s, Payload, RowSink, Table};
use laurent_lab::poly::binomial;
use laurent_lab::trace::{
    bias_scan, bruteforce_fits, min_copies_for_bias, trace_distance, trace_distance_bruteforce,
    trace_distance_symmetric, EnsembleSpec, TraceDistanceResult, TraceMethod, WRule,
    AGREEMENT_TOL,
};

const DEFAULT_K_CAP: u32 = 32;
const DEFAULT_SCAN_K_CAP: u32 = 6;
const DEFAULT_THRESHOLD: &str = "1/10";

fn method_name(m: TraceMethod) -> &'static str {
    match m {
        TraceMethod::BruteForce => "brute-force",
        TraceMethod::SymmetryReduced => "symmetry-reduced",
    }
}

fn gram_size(l: u64, w: u64) -> u128 {
    let c = |k: u64| u128::try_from(binomial(l as i64, k as i64)).unwrap_or(u128::MAX);
    c(w).saturating_add(c(2 * w))
}

/// Whether the brute-force route fits both its own cap and the run budget.
fn brute_allowed(cfg: &RunConfig, spec: &EnsembleSpec) -> bool {
    bruteforce_fits(spec) && gram_size(spec.l, spec.w) <= cfg.budget as u128
}

fn summary(r: &TraceDistanceResult) -> Value {
    let e = &r.eigen_summary;
    obj(vec![
        ("value", s(num(r.value))),
        ("method", s(method_name(r.method))),
        ("eigen_min", s(num(e.min))),
        ("eigen_max", s(num(e.max))),
        ("eigen_nonzero", s(int(e.nonzero))),
        ("eigen_signed_sum", s(num(e.signed_sum))),
    ])
}

pub fn compute(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let spec = EnsembleSpec::new(single(&p.l, "l")?, single(&p.w, "w")?, p.k.unwrap_or(1))?;
    let method = p.method.unwrap_or(MethodArg::Auto);
    let cross = p.cross_check.unwrap_or(true);
    let mut notes = Vec::new();
    let main = match method {
        MethodArg::Brute => {
            cfg.check_budget("signed Gram dimension", gram_size(spec.l, spec.w))?;
            trace_distance_bruteforce(&spec)?
        }
        MethodArg::Symmetric => trace_distance_symmetric(&spec)?,
        MethodArg::Auto => trace_distance(&spec)?,
    };
    let mut check = s("not-run");
    let mut diff = String::new();
    if cross {
        let other = match main.method {
            TraceMethod::SymmetryReduced if brute_allowed(cfg, &spec) => {
                Some(trace_distance_bruteforce(&spec)?)
            }
            TraceMethod::BruteForce if spec.l <= laurent_lab::trace::SYMMETRIC_MAX_L => {
                Some(trace_distance_symmetric(&spec)?)
            }
            _ => {
                notes.push("cross-check skipped: second route outside its budget".to_string());
                None
            }
        };
        if let Some(o) = other {
            let d = (o.value - main.value).abs();
            if d > AGREEMENT_TOL {
                return Err(CliError::Compute(laurent_lab::Error::Reduction(format!(
                    "routes disagree by {d}"
                ))));
            }
            check = s("agreed");
            diff = num(d);
        }
    }
    let results = obj(vec![
        ("l", s(int(spec.l))),
        ("w", s(int(spec.w))),
        ("k", s(int(spec.k))),
        ("result", summary(&main)),
        ("cross_check", check),
        ("cross_check_difference", s(diff)),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: notes,
    })
}

pub fn mink(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let (l, w) = (single(&p.l, "l")?, single(&p.w, "w")?);
    let threshold = parse_rational(p.threshold.as_deref().unwrap_or(DEFAULT_THRESHOLD), "threshold")?;
    let k_cap = p.k_cap.unwrap_or(DEFAULT_K_CAP);
    let spec = EnsembleSpec::new(l, w, 0)?;
    if spec.l > laurent_lab::trace::SYMMETRIC_MAX_L {
        cfg.check_budget("signed Gram dimension", gram_size(l, w))?;
    }
    let m = min_copies_for_bias(l, w, &threshold, k_cap)?;
    let mut table = Table::new(vec!["k", "value"]);
    for (k, v) in &m.values {
        table.push(vec![int(k), num(*v)]);
    }
    let results = obj(vec![
        ("l", s(int(l))),
        ("w", s(int(w))),
        ("threshold", s(threshold.to_string())),
        ("k_cap", s(int(k_cap))),
        ("min_k", s(opt(m.k, int))),
        ("method", s(method_name(m.method))),
        ("values", table.to_json()),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: vec![],
    })
}

const SCAN_HEADER: [&str; 6] = ["l", "w", "k", "value", "method", "cross_check_difference"];

pub fn scan(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let ls = list(&p.l, "l")?;
    let k_cap = p.k_cap.unwrap_or(DEFAULT_SCAN_K_CAP);
    let cross = p.cross_check.unwrap_or(true);
    let cells: Vec<(u64, u64)> = ls
        .iter()
        .flat_map(|&l| {
            let ws = match &p.w {
                Some(ws) => ws.iter().copied().filter(|&w| w >= 1 && 2 * w <= l).collect(),
                None => WRule::All.values(l),
            };
            ws.into_iter().map(move |w| (l, w))
        })
        .collect();
    let mut notes = Vec::new();
    for &(l, w) in &cells {
        if l > laurent_lab::trace::SYMMETRIC_MAX_L {
            cfg.check_budget("signed Gram dimension", gram_size(l, w))?;
        }
        if cross && !brute_allowed(cfg, &EnsembleSpec::new(l, w, 0)?) {
            notes.push(format!("L = {l}, w = {w}: cross-check skipped, brute force over budget"));
        }
    }
    let sink = Mutex::new(RowSink::for_config(cfg)?);
    let blocks = cells
        .par_iter()
        .map(|&(l, w)| -> CliResult<Vec<Vec<String>>> {
            let check = cross && brute_allowed(cfg, &EnsembleSpec::new(l, w, 0)?);
            let rows: Vec<Vec<String>> = bias_scan(&[l], &WRule::Fixed(w), k_cap, check)?
                .into_iter()
                .map(|r| {
                    vec![
                        int(r.l),
                        int(r.w),
                        int(r.k),
                        num(r.value),
                        method_name(r.method).to_string(),
                        opt(r.cross_check, num),
                    ]
                })
                .collect();
            let mut sink = sink.lock().expect("sink");
            for r in &rows {
                sink.row(&SCAN_HEADER, r)?;
            }
            Ok(rows)
        })
        .collect::<CliResult<Vec<_>>>()?;
    sink.into_inner().expect("sink").finish(cfg)?;
    let mut table = Table::new(SCAN_HEADER.to_vec());
    for r in blocks.into_iter().flatten() {
        table.push(r);
    }
    let all_agreed = table.rows.iter().all(|r| !r[5].is_empty()) && cross;
    let results = obj(vec![
        ("rows", table.to_json()),
        ("cross_check_all_agreed", Value::Bool(all_agreed)),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: notes,
    })
}
