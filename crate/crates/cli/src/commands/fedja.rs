use serde_json::Value;

use super::{coefficients, rational};
use crate::config::{single, RunConfig};
use crate::error::{usage, CliResult};
use crate::report::{int, obj, s, Payload};
use laurent_lab::degree::{
    cube_root_ceil, fedja_all_pass, fedja_construct_detailed, validate_fedja, FedjaConstraint,
    FEDJA_DEGREE_SLACK,
};

pub const FEDJA_MIN_W: u64 = 8;

pub fn build(cfg: &RunConfig) -> CliResult<Payload> {
    let w = single(&cfg.parameters.w, "w")?;
    if w < FEDJA_MIN_W {
        return usage(format!(
            "parameter `w`: the construction needs w ≥ {FEDJA_MIN_W}, got {w}"
        ));
    }
    cfg.check_budget("constraint count 2w+2", 2 * w as u128 + 2)?;
    let digits = cfg.digits();
    let c = fedja_construct_detailed(w as usize)?;
    let checks = validate_fedja(&c.poly, w as usize);
    let margins: Vec<Value> = checks
        .iter()
        .map(|ch| {
            let name = match ch.constraint {
                FedjaConstraint::Bounded { k } => format!("bounded:{k}"),
                FedjaConstraint::Low => "low".into(),
                FedjaConstraint::High => "high".into(),
            };
            obj(vec![
                ("constraint", s(name)),
                ("satisfied", Value::Bool(ch.check.satisfied)),
                ("margin", rational(&(&ch.check.rhs - &ch.check.lhs), digits)),
            ])
        })
        .collect();
    let bound = 2 * cube_root_ceil(w as usize) + FEDJA_DEGREE_SLACK;
    let results = obj(vec![
        ("w", s(int(w))),
        ("degree", s(int(c.poly.degree()))),
        ("degree_bound", s(int(bound))),
        ("within_bound", Value::Bool(c.poly.degree() <= bound)),
        ("m", s(int(c.m))),
        ("chebyshev_degree", s(int(c.chebyshev_degree))),
        ("alpha", rational(&c.alpha, digits)),
        ("beta", rational(&c.beta, digits)),
        ("all_pass", Value::Bool(fedja_all_pass(&checks))),
        ("checks", Value::Array(margins)),
        ("coefficients", coefficients(c.poly.to_monomial().coeffs())),
    ]);
    Ok(Payload {
        results,
        table: None,
        budget_notes: vec![],
    })
}
