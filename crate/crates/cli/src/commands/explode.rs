use serde_json::Value;

use crate::config::{parse_rational, required, single, RunConfig, SeedSide};
use crate::error::CliResult;
use crate::report::{decimal, int, num, obj, opt, s, Payload, Table};
use laurent_lab::symmetry::{
    explosion_iterate, explosion_region_scan, ExplosionParams, Quantities, Side,
};
use laurent_lab::Rational;

const DEFAULT_MAX_ROUNDS: usize = 50;
const DEFAULT_THRESHOLD: &str = "1e9";

fn side(s: Option<SeedSide>) -> Side {
    match s.unwrap_or(SeedSide::U) {
        SeedSide::U => Side::U,
        SeedSide::V => Side::V,
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::U => "u",
        Side::V => "v",
    }
}

fn common(cfg: &RunConfig) -> CliResult<(u64, u64, usize, Rational)> {
    let p = &cfg.parameters;
    let n = required(&p.n, "n")?;
    let w = single(&p.w, "w")?;
    let rounds = p.max_rounds.unwrap_or(DEFAULT_MAX_ROUNDS);
    cfg.check_budget("explosion rounds", rounds as u128)?;
    let threshold = parse_rational(
        p.blowup_threshold.as_deref().unwrap_or(DEFAULT_THRESHOLD),
        "blowup_threshold",
    )?;
    Ok((n, w, rounds, threshold))
}

fn quantities(q: &Quantities, digits: usize) -> [String; 5] {
    [&q.g, &q.delta, &q.h, &q.i, &q.l].map(|x| decimal(x, digits))
}

pub fn run(cfg: &RunConfig) -> CliResult<Payload> {
    let (n, w, max_rounds, blowup_threshold) = common(cfg)?;
    let p = &cfg.parameters;
    let params = ExplosionParams {
        max_rounds,
        blowup_threshold,
        ..ExplosionParams::new(
            n,
            w,
            required(&p.deg_u, "deg_u")?,
            required(&p.deg_v, "deg_v")?,
            side(p.seed_side),
        )
    };
    let r = explosion_iterate(&params)?;
    let digits = cfg.digits();
    let mut table = Table::new(vec![
        "round", "side", "g_u", "delta_u", "h_u", "i_u", "l_u", "g_v", "delta_v", "h_v", "i_v",
        "l_v",
    ]);
    for st in &r.trace {
        let mut row = vec![int(st.round), side_name(st.side).to_string()];
        row.extend(quantities(&st.u, digits));
        row.extend(quantities(&st.v, digits));
        table.push(row);
    }
    let results = obj(vec![
        ("diverged", Value::Bool(r.diverged)),
        ("constant_side", s(opt(r.constant_side, |x| side_name(x).to_string()))),
        ("rounds", s(int(r.trace.len()))),
        ("deg_u", s(int(params.deg_u))),
        ("deg_v", s(int(params.deg_v))),
        ("trace", table.to_json()),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: vec![],
    })
}

pub fn grid(cfg: &RunConfig) -> CliResult<Payload> {
    let (n, w, max_rounds, threshold) = common(cfg)?;
    let p = &cfg.parameters;
    let du_cap = required(&p.du_cap, "du_cap")?;
    let dv_cap = required(&p.dv_cap, "dv_cap")?;
    cfg.check_budget("explosion grid cells", (du_cap * dv_cap) as u128)?;
    let g = explosion_region_scan(n, w, du_cap, dv_cap, side(p.seed_side), max_rounds, &threshold)?;
    let mut table = Table::new(vec!["deg_u", "deg_v", "diverged", "rounds"]);
    for c in &g.cells {
        table.push(vec![
            int(c.deg_u),
            int(c.deg_v),
            c.diverged.to_string(),
            int(c.rounds),
        ]);
    }
    let boundary: Vec<Value> = g
        .boundary
        .iter()
        .map(|(du, dv)| obj(vec![("deg_u", s(int(du))), ("max_diverging_deg_v", s(opt(*dv, int)))]))
        .collect();
    let results = obj(vec![
        ("cells", table.to_json()),
        ("boundary", Value::Array(boundary)),
        ("v_boundary_constant", s(opt(g.v_boundary_constant, num))),
        ("antitone", Value::Bool(g.is_antitone())),
    ]);
    Ok(Payload {
        results,
        table: Some(table),
        budget_notes: vec![],
    })
}
