use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{trace_distance, trace_distance_checked, EnsembleSpec, TraceMethod};
use crate::error::{Error, Result};
use crate::poly::{to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinCopies {
    /// Smallest `k ≤ k_cap` whose distance exceeds the threshold.
    pub k: Option<u32>,
    /// `(k, value)` for every `k` evaluated, in order.
    pub values: Vec<(u32, f64)>,
    pub method: TraceMethod,
}

/// Default bias threshold.
pub fn default_threshold() -> Rational {
    Rational::new(1.into(), 10.into())
}

/// First `k` in `0..=k_cap` with trace distance strictly above `threshold`.
/// A threshold of 1 is accepted and is never exceeded.
pub fn min_copies_for_bias(l: u64, w: u64, threshold: &Rational, k_cap: u32) -> Result<MinCopies> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    if *threshold <= zero || *threshold > one {
        return Err(Error::Precondition(format!(
            "threshold must lie in (0, 1], got {threshold}"
        )));
    }
    let t = to_f64(threshold);
    let mut values = Vec::new();
    let mut method = TraceMethod::SymmetryReduced;
    for k in 0..=k_cap {
        let r = trace_distance(&EnsembleSpec::new(l, w, k)?)?;
        method = r.method;
        values.push((k, r.value));
        if r.value > t {
            return Ok(MinCopies {
                k: Some(k),
                values,
                method,
            });
        }
    }
    Ok(MinCopies {
        k: None,
        values,
        method,
    })
}

/// Which `w` values a scan visits for each `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WRule {
    Fixed(u64),
    /// Every `w` with `2w ≤ L`.
    All,
    /// `w = max(1, ⌊L · num / den⌋)`.
    Fraction {
        num: u64,
        den: u64,
    },
}

impl WRule {
    pub fn values(&self, l: u64) -> Vec<u64> {
        let ws = match *self {
            WRule::Fixed(w) => vec![w],
            WRule::All => (1..=l / 2).collect(),
            WRule::Fraction { num, den } => vec![(l * num / den.max(1)).max(1)],
        };
        ws.into_iter().filter(|&w| w >= 1 && 2 * w <= l).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasRow {
    pub l: u64,
    pub w: u64,
    pub k: u32,
    pub value: f64,
    pub method: TraceMethod,
    /// `|symmetric - brute force|` when both routes ran.
    pub cross_check: Option<f64>,
}

/// Rows `(L, w, k, value)` for `k = 0..=k_cap`, ordered by `L`, `w`, `k`.
pub fn bias_scan(
    l_list: &[u64],
    w_rule: &WRule,
    k_cap: u32,
    cross_check: bool,
) -> Result<Vec<BiasRow>> {
    let cells: Vec<(u64, u64)> = l_list
        .iter()
        .flat_map(|&l| w_rule.values(l).into_iter().map(move |w| (l, w)))
        .collect();
    let blocks = cells
        .par_iter()
        .map(|&(l, w)| {
            (0..=k_cap)
                .map(|k| {
                    let spec = EnsembleSpec::new(l, w, k)?;
                    let (r, diff) = if cross_check {
                        trace_distance_checked(&spec)?
                    } else {
                        (trace_distance(&spec)?, None)
                    };
                    Ok(BiasRow {
                        l,
                        w,
                        k,
                        value: r.value,
                        method: r.method,
                        cross_check: diff,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}
