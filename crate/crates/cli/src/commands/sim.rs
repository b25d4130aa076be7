use serde_json::Value;

use super::rational;
use crate::config::{required, single, AlgorithmArg, RunConfig};
use crate::error::CliResult;
use crate::report::{exact, int, num, obj, s, Payload, Table};
use laurent_lab::qsim::{
    birthday_distinguisher, full_curve, grover_distinguisher, projection_distinguisher,
    AlgorithmKind, AlgorithmSpec, BIRTHDAY_COPY_CONSTANT, GROVER_QUERY_CONSTANT,
    PROJECTION_COPY_CONSTANT,
};
use laurent_lab::symmetry::{fit_laurent_f64, FitCoefficients};

const DEFAULT_N: u64 = 8;
const DEFAULT_TRIALS: usize = 10_000;

pub fn curve(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let n = p.n.unwrap_or(DEFAULT_N) as usize;
    let algorithm = p.algorithm.unwrap_or(AlgorithmArg::Random);
    let (copies, queries) = (p.copies.unwrap_or(1), p.queries.unwrap_or(0));
    let kind = match algorithm {
        AlgorithmArg::Projection => AlgorithmKind::Projection,
        AlgorithmArg::Collision => AlgorithmKind::Collision,
        AlgorithmArg::Random => AlgorithmKind::Random { seed: cfg.seed },
    };
    let mut dim = (n as u128).saturating_pow(copies as u32);
    if queries > 0 {
        dim = dim.saturating_mul(n as u128);
    }
    cfg.check_budget("state dimension", dim)?;
    let alg = AlgorithmSpec::from_kind(&kind, n, copies, queries)?;
    let points = full_curve(&alg)?;
    let mut notes = Vec::new();
    let fit = match fit_laurent_f64(&points, alg.copies, alg.queries) {
        Ok(f) => Some(f),
        Err(e @ laurent_lab::Error::Underdetermined { .. }) => {
            notes.push(format!("fit skipped: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(vec!["k", "acceptance"]);
    for (k, q) in &points {
        table.push(vec![int(k), num(*q)]);
    }
    let fit = match &fit {
        None => Value::Null,
        Some(fit) => {
            let coefficients: Vec<Value> = match &fit.coefficients {
                FitCoefficients::Exact(c) => c.iter().map(|x| s(exact(x))).collect(),
                FitCoefficients::Float(c) => c.iter().map(|x| s(num(*x))).collect(),
            };
            obj(vec![
                ("min_exp", s(int(fit.min_exp))),
                ("max_exp", s(int(fit.max_exp))),
                ("residual", s(num(fit.residual))),
                ("coefficients", Value::Array(coefficients)),
            ])
        }
    };
    let results = obj(vec![
        ("n", s(int(n))),
        ("copies", s(int(alg.copies))),
        ("queries", s(int(alg.queries))),
        ("unitarity_error", s(num(alg.max_unitarity_error()))),
        ("curve", table.to_json()),
        ("fit", fit),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: notes,
    })
}

pub fn grover(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let n = required(&p.n, "n")?;
    let w = single(&p.w, "w")?;
    cfg.check_budget("Grover statevector N", n as u128)?;
    let budget = p.queries.unwrap_or_else(|| {
        (GROVER_QUERY_CONSTANT * (n as f64 / w as f64).sqrt()).ceil() as usize
    });
    let trials = p.trials.unwrap_or(DEFAULT_TRIALS);
    let r = grover_distinguisher(n as usize, w as usize, budget, trials, cfg.seed)?;
    let results = obj(vec![
        ("n", s(int(n))),
        ("w", s(int(w))),
        ("query_budget", s(int(budget))),
        ("query_constant", s(num(GROVER_QUERY_CONSTANT))),
        ("trials", s(int(trials))),
        ("success", s(num(r.success))),
        ("iterations", s(int(r.iterations))),
        ("runs", s(int(r.runs))),
        ("queries_used", s(int(r.queries_used))),
        ("hit_w", s(num(r.hit_w))),
        ("hit_2w", s(num(r.hit_2w))),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: vec![],
    })
}

pub fn birthday(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let w = single(&p.w, "w")?;
    let copies = p
        .copies
        .unwrap_or_else(|| (BIRTHDAY_COPY_CONSTANT * (w as f64).sqrt()).ceil() as usize);
    let trials = p.trials.unwrap_or(DEFAULT_TRIALS);
    cfg.check_budget("samples copies·trials", (copies * trials) as u128)?;
    let r = birthday_distinguisher(w as usize, copies, trials, cfg.seed)?;
    let digits = cfg.digits();
    let results = obj(vec![
        ("w", s(int(w))),
        ("copies", s(int(copies))),
        ("copy_constant", s(num(BIRTHDAY_COPY_CONSTANT))),
        ("trials", s(int(trials))),
        ("success", s(num(r.success))),
        ("threshold", rational(&r.threshold, digits)),
        ("expected_w", rational(&r.expected_w, digits)),
        ("expected_2w", rational(&r.expected_2w, digits)),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: vec![],
    })
}

pub fn project(cfg: &RunConfig) -> CliResult<Payload> {
    let p = &cfg.parameters;
    let n = required(&p.n, "n")?;
    let w = single(&p.w, "w")?;
    let copies = p
        .copies
        .unwrap_or_else(|| (PROJECTION_COPY_CONSTANT * n as f64 / w as f64).ceil() as usize);
    cfg.check_budget("binomial support copies", copies as u128)?;
    let r = projection_distinguisher(n as usize, w as usize, copies)?;
    let results = obj(vec![
        ("n", s(int(n))),
        ("w", s(int(w))),
        ("copies", s(int(copies))),
        ("copy_constant", s(num(PROJECTION_COPY_CONSTANT))),
        ("success", rational(&r.success, cfg.digits())),
        ("threshold", s(int(r.threshold))),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: vec![],
    })
}
