pub mod degree;
pub mod explode;
pub mod fedja;
pub mod sim;
pub mod trace;

use serde_json::Value;

use crate::config::{Command, RunConfig};
use crate::error::CliResult;
use crate::report::{decimal, exact, obj, s, Payload};
use laurent_lab::degree::{CertificateKind, DegreeCertificate, LpInstance, Relation};
use laurent_lab::Rational;

pub fn dispatch(cfg: &RunConfig) -> CliResult<Payload> {
    match cfg.command {
        Command::DegreeScan => degree::scan(cfg),
        Command::DegreeCertify => degree::certify(cfg),
        Command::FedjaBuild => fedja::build(cfg),
        Command::ExplodeRun => explode::run(cfg),
        Command::ExplodeGrid => explode::grid(cfg),
        Command::SimCurve => sim::curve(cfg),
        Command::SimGrover => sim::grover(cfg),
        Command::SimBirthday => sim::birthday(cfg),
        Command::SimProject => sim::project(cfg),
        Command::TraceCompute => trace::compute(cfg),
        Command::TraceMink => trace::mink(cfg),
        Command::TraceScan => trace::scan(cfg),
    }
}

/// `{"exact": "p/q", "decimal": "…"}`.
pub(crate) fn rational(x: &Rational, digits: usize) -> Value {
    obj(vec![("exact", s(exact(x))), ("decimal", s(decimal(x, digits)))])
}

pub(crate) fn coefficients(c: &[Rational]) -> Value {
    Value::Array(c.iter().map(|x| s(exact(x))).collect())
}

/// Certificate contents plus an independent exact re-verification.
pub(crate) fn certificate(cert: &DegreeCertificate, inst: &LpInstance, digits: usize) -> CliResult<Value> {
    let reverified = cert.verify(inst)?;
    let body = match &cert.kind {
        CertificateKind::FeasibleWitness(p) => obj(vec![
            ("type", s("polynomial-witness")),
            ("coefficients", coefficients(p.to_monomial().coeffs())),
        ]),
        CertificateKind::FeasibleLaurent(q) => obj(vec![
            ("type", s("laurent-witness")),
            ("u_coefficients", coefficients(q.u.to_monomial().coeffs())),
            ("v_coefficients", coefficients(q.v.to_monomial().coeffs())),
        ]),
        CertificateKind::InfeasibleDual(y) => {
            let support: Vec<Value> = y
                .iter()
                .enumerate()
                .filter(|(_, m)| !num_traits::Zero::is_zero(*m))
                .map(|(i, m)| {
                    let c = &inst.constraints[i];
                    obj(vec![
                        ("index", s(i.to_string())),
                        ("point", s(exact(&c.point))),
                        (
                            "relation",
                            s(match c.relation {
                                Relation::Le => "le",
                                Relation::Ge => "ge",
                            }),
                        ),
                        ("bound", s(exact(&c.bound))),
                        ("multiplier", s(exact(m))),
                    ])
                })
                .collect();
            obj(vec![("type", s("farkas-dual")), ("support", Value::Array(support))])
        }
    };
    Ok(obj(vec![
        ("feasible", Value::Bool(cert.is_feasible())),
        ("margin", rational(&cert.verification_margin, digits)),
        ("reverified", Value::Bool(reverified == cert.verification_margin)),
        ("certificate", body),
    ]))
}
