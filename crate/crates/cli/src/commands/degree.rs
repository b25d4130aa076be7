use std::sync::Mutex;

use rayon::prelude::*;
use serde_json::Value;

use super::certificate;
use crate::config::{list, required, single, RunConfig};
use crate::error::{usage, CliResult};
use crate::report::{decimal, int, num, obj, opt, s, Payload, RowSink, Table};
use laurent_lab::degree::{
    cube_root_ceil, default_degree_cap, laurent_cell, laurent_instance, least_squares_slope,
    min_degree_lp, solve_certified, FedjaInstance, FEDJA_DEGREE_SLACK,
};

const HEADER: [&str; 8] = [
    "w",
    "d_min",
    "construction_degree",
    "sandwich",
    "margin_at_min",
    "margin_below",
    "verified",
    "degree_cap",
];

fn lp_size(w: u64) -> u128 {
    4 * w as u128 + 2
}

pub fn scan(cfg: &RunConfig) -> CliResult<Payload> {
    let ws = list(&cfg.parameters.w, "w")?;
    if let Some(&w) = ws.iter().find(|&&w| w < 2) {
        return usage(format!("parameter `w`: {w} is below 2"));
    }
    for &w in &ws {
        cfg.check_budget("degree LP constraint count 4w+2", lp_size(w))?;
    }
    let digits = cfg.digits();
    let sink = Mutex::new(RowSink::for_config(cfg)?);
    let mut rows = ws
        .par_iter()
        .map(|&w| -> CliResult<(u64, Vec<String>, Option<usize>)> {
            let w_us = w as usize;
            let cap = default_degree_cap(w_us)?;
            let construction = (w >= 8).then_some(cap);
            let r = min_degree_lp(w_us, cap)?;
            let inst = FedjaInstance::new(w_us)?;
            let mut verified = true;
            if let (Some(d), Some(c)) = (r.d_min, &r.at_min) {
                verified &= c.verify(&inst.lp(d))? == c.verification_margin;
            }
            if let Some(c) = &r.below {
                verified &= c.verify(&inst.lp(c.degree()))? == c.verification_margin;
            }
            let sandwich = match (r.d_min, construction) {
                (Some(d), Some(c)) => (d <= c).to_string(),
                _ => String::new(),
            };
            let row = vec![
                int(w),
                opt(r.d_min, int),
                opt(construction, int),
                sandwich,
                opt(r.at_min.as_ref(), |c| decimal(&c.verification_margin, digits)),
                opt(r.below.as_ref(), |c| decimal(&c.verification_margin, digits)),
                verified.to_string(),
                int(cap),
            ];
            sink.lock().expect("sink").row(&HEADER, &row)?;
            Ok((w, row, r.d_min))
        })
        .collect::<CliResult<Vec<_>>>()?;
    rows.sort_by_key(|r| r.0);
    sink.into_inner().expect("sink").finish(cfg)?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|(w, _, d)| match d {
            Some(d) if *d > 0 => Some(((*w as f64).ln(), (*d as f64).ln())),
            _ => None,
        })
        .collect();
    let mut table = Table::new(HEADER.to_vec());
    for (_, row, _) in rows {
        table.push(row);
    }
    let results = obj(vec![
        ("rows", table.to_json()),
        ("slope", s(opt(least_squares_slope(&pts), num))),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: vec![],
    })
}

/// Polynomial family at `--w` (and `--degree`, defaulting to the minimal
/// degree search), or the Laurent cell at `--n --w --deg-u --deg-v`.
pub fn certify(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let w = single(&p.w, "w")?;
    cfg.check_budget("degree LP constraint count 4w+2", lp_size(w))?;
    let digits = cfg.digits();
    if p.deg_u.is_some() || p.deg_v.is_some() {
        let n = required(&p.n, "n")?;
        let du = required(&p.deg_u, "deg_u")?;
        let dv = required(&p.deg_v, "deg_v")?;
        let inst = laurent_instance(n as usize, w as usize, du, dv)?;
        let cert = laurent_cell(n as usize, w as usize, du, dv)?;
        let results = obj(vec![
            ("family", s("laurent")),
            ("n", s(int(n))),
            ("w", s(int(w))),
            ("deg_u", s(int(du))),
            ("deg_v", s(int(dv))),
            ("result", certificate(&cert, &inst, digits)?),
        ]);
        return Ok(Payload {
            results,
            table: None,
            budget_notes: vec![],
        });
    }
    let inst = FedjaInstance::new(w as usize)?;
    let (degree, cert, search) = match p.degree {
        Some(d) => (d, solve_certified(&inst.lp(d))?, Value::Null),
        None => {
            let cap = default_degree_cap(w as usize)?;
            let r = min_degree_lp(w as usize, cap)?;
            match (r.d_min, r.at_min) {
                (Some(d), Some(at_min)) => {
                    let below = match &r.below {
                        Some(c) => certificate(c, &inst.lp(c.degree()), digits)?,
                        None => Value::Null,
                    };
                    let search = obj(vec![("degree_cap", s(int(cap))), ("below", below)]);
                    (d, at_min, search)
                }
                // Infeasible up to the cap: report the cap's dual certificate.
                _ => {
                    let search = obj(vec![("degree_cap", s(int(cap))), ("below", Value::Null)]);
                    (cap, r.below.expect("certificate at the cap"), search)
                }
            }
        }
    };
    let results = obj(vec![
        ("family", s("polynomial")),
        ("w", s(int(w))),
        ("degree", s(int(degree))),
        (
            "construction_bound",
            s(int(2 * cube_root_ceil(w as usize) + FEDJA_DEGREE_SLACK)),
        ),
        ("result", certificate(&cert, &inst.lp(degree), digits)?),
        ("search", search),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: vec![],
    })
}
