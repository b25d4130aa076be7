//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every tolerance and time limit is pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use laurent_lab::bounds::{
    discrete_range_check, markov_check, paturi_check, shrink_range_check,
};
use laurent_lab::degree::{
    cube_root_ceil, default_degree_cap, fedja_all_pass, fedja_construct, least_squares_slope,
    min_degree_lp, validate_fedja, FedjaInstance, FEDJA_DEGREE_SLACK,
};
use laurent_lab::poly::{chebyshev, from_f64, int, rat, Polynomial, Rational};
use laurent_lab::qsim::{
    birthday_distinguisher, full_curve, grover_distinguisher, projection_distinguisher,
    AlgorithmSpec, BIRTHDAY_COPY_CONSTANT, GROVER_QUERY_CONSTANT, PROJECTION_COPY_CONSTANT,
    UNITARITY_TOL,
};
use laurent_lab::symmetry::{explosion_iterate, fit_laurent_f64, fit_window, ExplosionParams, Side};
use laurent_lab::trace::{
    min_copies_for_bias, trace_distance_bruteforce, trace_distance_symmetric, EnsembleSpec,
};
use laurent_lab_cli::config::{AlgorithmArg, MethodArg};
use laurent_lab_cli::{execute, replay, Command, ReplayOutcome, ReportEnvelope, RunConfig};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// 1 -------------------------------------------------------------------------

const C1_MAX_D: usize = 64;

fn chebyshev_markov() -> Outcome {
    for d in 0..=C1_MAX_D {
        let t = chebyshev(d);
        let got = t.derivative().eval(&int(1));
        ensure(got == int((d * d) as i64), || format!("T_{d}'(1) = {got}"))?;
        if d >= 1 {
            let c = markov_check(&t, &int(-1), &int(1)).map_err(err)?;
            ensure(c.slack_ratio == Some(int(1)), || {
                format!("d = {d}: slack ratio {:?}", c.slack_ratio)
            })?;
        }
    }
    Ok(format!("d = 0..={C1_MAX_D}, derivative and slack ratio exact"))
}

// 2 -------------------------------------------------------------------------

const C2_MAX_D: usize = 32;
const C2_MU_EXPONENTS: std::ops::RangeInclusive<u32> = 0..=6;

fn paturi() -> Outcome {
    let mut n = 0;
    for d in 0..=C2_MAX_D {
        let t = chebyshev(d);
        for e in C2_MU_EXPONENTS {
            let mu = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << e));
            let c = paturi_check(&t, &mu).map_err(err)?;
            ensure(c.lhs == t.eval(&(int(1) + &mu)), || format!("d = {d}: inexact left side"))?;
            ensure(c.satisfied, || format!("d = {d}, mu = {mu}: {} > {}", c.lhs, c.rhs))?;
            n += 1;
        }
    }
    Ok(format!("{n} (d, mu) pairs hold"))
}

// 3 -------------------------------------------------------------------------

const C3_SAMPLES: usize = 200;

fn random_poly(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize) -> Polynomial {
    loop {
        let d = rng.random_range(min_deg..=max_deg);
        let coeffs = (0..=d).map(|_| rat(rng.random_range(-1000..=1000), 1000)).collect();
        let p = Polynomial::monomial(coeffs);
        if p.degree() >= min_deg {
            return p;
        }
    }
}

fn shrink_and_discrete() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for i in 0..C3_SAMPLES {
        let p = random_poly(&mut rng, 1, 10);
        let d = p.degree() as i64;
        let a = rat(rng.random_range(-300..300), 100);
        let b = &a + rat(rng.random_range(1..400), 100);
        // eps ≤ 1/(100 d²) meets the shrink hypothesis
        let eps = rat(1, 100 * d * d) * rat(rng.random_range(1..=10), 10);
        let c = shrink_range_check(&p, &a, &b, &eps).map_err(err)?;
        ensure(c.satisfied, || format!("shrink sample {i}: p = {p}"))?;
    }
    for i in 0..C3_SAMPLES {
        let p = random_poly(&mut rng, 0, 10);
        let d = p.degree().max(1) as i64;
        let n = d * d + rng.random_range(0..20);
        let mut points = vec![int(0)];
        let mut x = int(0);
        loop {
            x += rat(rng.random_range(1..=4), 4);
            if x >= int(n) {
                points.push(int(n));
                break;
            }
            points.push(x.clone());
        }
        let scale = rat(rng.random_range(1..50), 7);
        let shift = rat(rng.random_range(-50..50), 3);
        let mapped: Vec<Rational> = points.iter().map(|z| z * &scale + &shift).collect();
        let q = p.compose_linear(&(Rational::one() / &scale), &(-&shift / &scale));
        let (lo, hi) = (mapped[0].clone(), mapped[mapped.len() - 1].clone());
        let r = discrete_range_check(&q, &mapped, &lo, &hi).map_err(err)?;
        ensure(r.check.satisfied, || format!("discrete sample {i}: p = {p}, N = {n}"))?;
    }
    Ok(format!("{C3_SAMPLES} + {C3_SAMPLES} samples, zero violations"))
}

// 4 -------------------------------------------------------------------------

const C4_WS: [usize; 5] = [27, 64, 125, 216, 1000];

fn fedja() -> Outcome {
    let mut degs = Vec::new();
    for w in C4_WS {
        let p = fedja_construct(w).map_err(err)?;
        let checks = validate_fedja(&p, w);
        ensure(checks.len() == 2 * w + 2, || format!("w = {w}: {} checks", checks.len()))?;
        ensure(fedja_all_pass(&checks), || format!("w = {w}: a constraint fails"))?;
        let bound = 2 * cube_root_ceil(w) + FEDJA_DEGREE_SLACK;
        ensure(p.degree() <= bound, || format!("w = {w}: degree {} > {bound}", p.degree()))?;
        degs.push(format!("{w}:{}", p.degree()));
    }
    Ok(format!("degrees {}", degs.join(" ")))
}

// 5 -------------------------------------------------------------------------

const C5_WS: [usize; 7] = [64, 128, 256, 512, 1024, 2048, 4096];
const C5_SLOPE: (f64, f64) = (0.25, 0.45);

fn degree_law() -> Outcome {
    let rows = C5_WS
        .par_iter()
        .map(|&w| -> Result<(usize, usize), String> {
            let construction = default_degree_cap(w).map_err(err)?;
            let r = min_degree_lp(w, construction).map_err(err)?;
            let d = r.d_min.ok_or_else(|| format!("w = {w}: infeasible up to the construction"))?;
            ensure(d <= construction, || format!("w = {w}: {d} > {construction}"))?;
            let inst = FedjaInstance::new(w).map_err(err)?;
            let at = r.at_min.as_ref().ok_or("missing witness")?;
            ensure(at.is_feasible() && at.verify(&inst.lp(d)).map_err(err)? == at.verification_margin, || {
                format!("w = {w}: witness does not re-verify")
            })?;
            if d > 0 {
                let below = r.below.as_ref().ok_or("missing infeasibility certificate")?;
                let m = below.verify(&inst.lp(d - 1)).map_err(err)?;
                ensure(!below.is_feasible() && m == below.verification_margin && m.is_positive(), || {
                    format!("w = {w}: certificate at {} not positive", d - 1)
                })?;
            }
            Ok((w, d))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let pts: Vec<(f64, f64)> =
        rows.iter().map(|&(w, d)| ((w as f64).ln(), (d as f64).ln())).collect();
    let slope = least_squares_slope(&pts).ok_or("no slope")?;
    ensure(slope >= C5_SLOPE.0 && slope <= C5_SLOPE.1, || format!("slope {slope:.4}"))?;
    let ds: Vec<String> = rows.iter().map(|(w, d)| format!("{w}:{d}")).collect();
    Ok(format!("slope {slope:.4}, d_min {}", ds.join(" ")))
}

// 6 -------------------------------------------------------------------------

const C6_N: usize = 8;
const C6_SEEDS: u64 = 20;
const C6_RESIDUAL: f64 = 1e-8;
const C6_SHAPES: [(usize, usize); 5] = [(1, 0), (1, 1), (2, 0), (2, 1), (0, 1)];
const C6_MAX_WIDTH: i64 = 6;

fn exponent_law() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..C6_SEEDS {
        let (r, t) = C6_SHAPES[seed as usize % C6_SHAPES.len()];
        let alg = AlgorithmSpec::random(C6_N, r, t, 1, 1000 + seed).map_err(err)?;
        ensure(alg.max_unitarity_error() < UNITARITY_TOL, || format!("seed {seed}: not unitary"))?;
        let curve = full_curve(&alg).map_err(err)?;
        let fit = fit_laurent_f64(&curve, r, t).map_err(err)?;
        ensure(fit.residual <= C6_RESIDUAL, || format!("seed {seed}: residual {}", fit.residual))?;
        worst = worst.max(fit.residual);
    }
    let collision = full_curve(&AlgorithmSpec::collision(C6_N).map_err(err)?).map_err(err)?;
    let exact: Vec<_> = collision.iter().map(|&(k, v)| (k, from_f64(v))).collect();
    let mut windows = 0;
    for lo in -(C6_MAX_WIDTH + 2)..=C6_MAX_WIDTH {
        for hi in lo..=(lo + C6_MAX_WIDTH) {
            if lo <= -1 && -1 <= hi {
                continue;
            }
            let f = fit_window(&exact, lo, hi).map_err(err)?;
            ensure(f.residual > C6_RESIDUAL, || {
                format!("collision fits [{lo}, {hi}] without 1/k: residual {}", f.residual)
            })?;
            windows += 1;
        }
    }
    Ok(format!("worst residual {worst:.2e}; collision fails {windows} windows without -1"))
}

// 7 -------------------------------------------------------------------------

const C7_TARGET: f64 = 2.0 / 3.0;
const C7_BIRTHDAY_SLACK: f64 = 0.03;
const C7_GROVER_SLACK: f64 = 0.05;
const C7_TRIALS: usize = 10_000;
const C7_SEED: u64 = 7;

fn distinguishers() -> Outcome {
    let (n, w) = (1024usize, 32usize);
    let copies = (PROJECTION_COPY_CONSTANT * n as f64 / w as f64).ceil() as usize;
    let p = projection_distinguisher(n, w, copies).map_err(err)?;
    let ps = laurent_lab::poly::to_f64(&p.success);
    ensure(p.success >= rat(2, 3), || format!("projection {ps}"))?;

    let w = 400usize;
    let copies = (BIRTHDAY_COPY_CONSTANT * (w as f64).sqrt()).ceil() as usize;
    let b = birthday_distinguisher(w, copies, C7_TRIALS, C7_SEED).map_err(err)?;
    ensure(b.success >= C7_TARGET - C7_BIRTHDAY_SLACK, || format!("birthday {}", b.success))?;

    let (n, w) = (1024usize, 16usize);
    let queries = (GROVER_QUERY_CONSTANT * (n as f64 / w as f64).sqrt()).ceil() as usize;
    let g = grover_distinguisher(n, w, queries, C7_TRIALS, C7_SEED).map_err(err)?;
    ensure(g.success >= C7_TARGET - C7_GROVER_SLACK, || format!("grover {}", g.success))?;
    Ok(format!(
        "projection {ps:.4}, birthday {:.4} ({copies} copies), grover {:.4} ({queries} queries)",
        b.success, g.success
    ))
}

// 8 -------------------------------------------------------------------------

const C8_N: u64 = 1 << 24;
const C8_W: u64 = 1 << 12;

fn explosion() -> Outcome {
    let ratio = (C8_N / C8_W) as f64;
    let deg_u = (0.1 * ratio.sqrt()).floor() as usize;
    let deg_v = (0.1 * (C8_W as f64).powf(0.25)).floor() as usize;
    let big_u = 10 * ratio.sqrt().ceil() as usize;
    let mut rounds = Vec::new();
    for side in [Side::U, Side::V] {
        let r = explosion_iterate(&ExplosionParams::new(C8_N, C8_W, deg_u, deg_v, side))
            .map_err(err)?;
        ensure(r.diverged, || format!("({deg_u}, {deg_v}) from {side:?}: bounded"))?;
        rounds.push(r.trace.len());
    }
    // The oversized-u run starts from the u seed: with deg_v = 0 a v seed
    // contradicts itself in round one whatever deg_u is.
    let r = explosion_iterate(&ExplosionParams::new(C8_N, C8_W, big_u, deg_v, Side::U))
        .map_err(err)?;
    ensure(!r.diverged, || format!("({big_u}, {deg_v}) from U: diverged"))?;
    Ok(format!(
        "({deg_u}, {deg_v}) diverges from both seeds in {rounds:?} rounds; ({big_u}, {deg_v}) from U bounded over {} rounds",
        r.trace.len()
    ))
}

// 9 -------------------------------------------------------------------------

const C9_AGREE: f64 = 1e-9;
const C9_MAX_L: u64 = 12;
const C9_MAX_W: u64 = 3;
const C9_MAX_K: u32 = 6;
/// (L, w, least k with bias above 1/10), from an independent numpy oracle.
const C9_MIN_K: [(u64, u64, u32); 8] = [
    (4, 1, 1),
    (8, 2, 1),
    (12, 3, 1),
    (20, 1, 2),
    (30, 1, 2),
    (40, 1, 2),
    (16, 2, 1),
    (64, 1, 2),
];

fn trace() -> Outcome {
    let spec = |l, w, k| EnsembleSpec::new(l, w, k).map_err(err);
    let v = trace_distance_symmetric(&spec(2, 1, 1)?).map_err(err)?.value;
    let b = trace_distance_bruteforce(&spec(2, 1, 1)?).map_err(err)?.value;
    ensure((v - 0.5).abs() <= C9_AGREE && (b - 0.5).abs() <= C9_AGREE, || {
        format!("(2, 1, 1): {v}, {b}")
    })?;
    let cells: Vec<(u64, u64)> = (2..=C9_MAX_L)
        .flat_map(|l| (1..=C9_MAX_W).filter(move |w| 2 * w <= l).map(move |w| (l, w)))
        .collect();
    let worst = cells
        .par_iter()
        .map(|&(l, w)| -> Result<f64, String> {
            let z = trace_distance_symmetric(&spec(l, w, 0)?).map_err(err)?.value;
            ensure(z == 0.0, || format!("L = {l}, w = {w}, k = 0: {z}"))?;
            let mut prev = 0.0;
            let mut worst = 0.0f64;
            for k in 0..=C9_MAX_K {
                let s = trace_distance_symmetric(&spec(l, w, k)?).map_err(err)?.value;
                let b = trace_distance_bruteforce(&spec(l, w, k)?).map_err(err)?.value;
                let d = (s - b).abs();
                ensure(d <= C9_AGREE, || format!("L = {l}, w = {w}, k = {k}: routes differ by {d}"))?;
                ensure(s >= prev - C9_AGREE, || format!("L = {l}, w = {w}: drops at k = {k}"))?;
                prev = s;
                worst = worst.max(d);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    for (l, w, k) in C9_MIN_K {
        let m = min_copies_for_bias(l, w, &rat(1, 10), 16).map_err(err)?;
        ensure(m.k == Some(k), || format!("L = {l}, w = {w}: min k {:?}, expected {k}", m.k))?;
    }
    Ok(format!(
        "{} cells, worst route gap {worst:.1e}, {} min-k fixtures",
        cells.len(),
        C9_MIN_K.len()
    ))
}

// 10 ------------------------------------------------------------------------

fn replay_configs() -> Vec<RunConfig> {
    let mut out = Vec::new();
    let mut c = RunConfig::new(Command::DegreeScan);
    c.parameters.w = Some(vec![8, 16, 27]);
    out.push(c);
    let mut c = RunConfig::new(Command::ExplodeGrid);
    c.parameters.n = Some(1 << 16);
    c.parameters.w = Some(vec![1 << 8]);
    c.parameters.du_cap = Some(4);
    c.parameters.dv_cap = Some(3);
    out.push(c);
    let mut c = RunConfig::new(Command::SimCurve);
    c.parameters.n = Some(6);
    c.parameters.copies = Some(1);
    c.parameters.queries = Some(1);
    c.parameters.algorithm = Some(AlgorithmArg::Random);
    c.seed = 11;
    out.push(c);
    let mut c = RunConfig::new(Command::SimBirthday);
    c.parameters.w = Some(vec![100]);
    c.parameters.trials = Some(2000);
    c.seed = 12;
    out.push(c);
    let mut c = RunConfig::new(Command::TraceCompute);
    c.parameters.l = Some(vec![10]);
    c.parameters.w = Some(vec![2]);
    c.parameters.k = Some(3);
    c.parameters.method = Some(MethodArg::Auto);
    out.push(c);
    out
}

fn reproducibility() -> Outcome {
    let configs = replay_configs();
    for cfg in &configs {
        let (env, _) = execute(cfg).map_err(err)?;
        // round-trip through the on-disk form first
        let text = serde_json::to_string_pretty(&env).map_err(err)?;
        let parsed: ReportEnvelope = serde_json::from_str(&text).map_err(err)?;
        match replay(&parsed).map_err(err)? {
            ReplayOutcome::Identical => {}
            ReplayOutcome::Differs { .. } => {
                return Err(format!("{} differs on replay", cfg.command.name()))
            }
        }
    }
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("report.json");
    let bin = env!("CARGO_BIN_EXE_laurent-lab");
    let made = std::process::Command::new(bin)
        .args(["trace", "scan", "--l", "8", "--k-cap", "3", "--seed", "5", "--out"])
        .arg(&path)
        .env_remove("LAURENT_LAB_BUDGET")
        .output()
        .map_err(err)?;
    ensure(made.status.success(), || "binary run failed".into())?;
    let replayed = std::process::Command::new(bin).arg("replay").arg(&path).output().map_err(err)?;
    ensure(
        replayed.status.success() && replayed.stdout.starts_with(b"replay identical"),
        || "binary replay differs".into(),
    )?;
    Ok(format!("{} configs plus one binary round trip", configs.len() + 1))
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "chebyshev-markov extremality", limit: Duration::from_secs(1), run: chebyshev_markov },
    Criterion { id: 2, name: "paturi bound", limit: Duration::from_secs(10), run: paturi },
    Criterion { id: 3, name: "shrink and discrete checkers", limit: Duration::from_secs(60), run: shrink_and_discrete },
    Criterion { id: 4, name: "explicit construction", limit: Duration::from_secs(120), run: fedja },
    Criterion { id: 5, name: "degree law", limit: Duration::from_secs(1800), run: degree_law },
    Criterion { id: 6, name: "laurent exponent law", limit: Duration::from_secs(600), run: exponent_law },
    Criterion { id: 7, name: "upper-bound distinguishers", limit: Duration::from_secs(900), run: distinguishers },
    Criterion { id: 8, name: "explosion engine", limit: Duration::from_secs(1), run: explosion },
    Criterion { id: 9, name: "trace distance", limit: Duration::from_secs(600), run: trace },
    Criterion { id: 10, name: "reproducibility", limit: Duration::from_secs(60), run: reproducibility },
];

fn main() -> ExitCode {
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_none_or(|o| o == c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("{detail}; over the {:?} limit", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {} ({:.2} s): {detail}", c.id, c.name, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.2} s): {why}", c.id, c.name, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
