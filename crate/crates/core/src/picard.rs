//! Picard iteration `x_{n+1} = T x_n` with step-size diagnostics.

use rayon::prelude::*;
use serde::Serialize;

use crate::activations::fixed_points;
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::numerics::SelfMap;

/// A limit within this distance of an analytic fixed point is reported as
/// that fixed point.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    pub max_iters: usize,
    pub fix_tol: f64,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            max_iters: 10_000,
            fix_tol: 1e-12,
        }
    }
}

impl IterateOptions {
    fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Spec("max_iters must be at least 1".into()));
        }
        if !(self.fix_tol > 0.0) {
            return Err(Error::Spec(format!("fix_tol must be positive, got {}", self.fix_tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub orbit: Vec<f64>,
    /// `u_seq[n] = d(orbit[n], orbit[n + 1])`.
    pub u_seq: Vec<f64>,
    pub converged: bool,
    pub limit: Option<f64>,
    pub iterations: usize,
}

impl OrbitReport {
    /// Whether `u_n` strictly decreases until it first drops to `tol` or below.
    pub fn strictly_decreasing_until(&self, tol: f64) -> bool {
        for w in self.u_seq.windows(2) {
            if w[0] <= tol {
                return true;
            }
            if !(w[1] < w[0]) {
                return false;
            }
        }
        true
    }
}

/// Iterates from `x0` until a step `u_n <= fix_tol` lands on a point whose
/// own residual `d(Tx, x)` is also within `fix_tol`, or `max_iters` steps.
pub fn iterate(t: &SelfMap, d: &dyn Metric, x0: f64, opts: &IterateOptions) -> Result<OrbitReport> {
    opts.validate()?;
    if !t.domain().contains(x0) {
        return Err(Error::Domain(format!("start {x0} is outside {}", t.domain())));
    }
    let mut orbit = vec![x0];
    let mut u_seq = Vec::new();
    let mut x = x0;
    let mut converged = false;
    for _ in 0..opts.max_iters {
        let next = t.apply(x)?;
        if !t.domain().contains(next) {
            return Err(Error::Domain(format!("iterate T({x}) = {next} escaped {}", t.domain())));
        }
        let u = d.distance(x, next);
        orbit.push(next);
        u_seq.push(u);
        x = next;
        if u <= opts.fix_tol && d.distance(t.apply(next)?, next) <= opts.fix_tol {
            converged = true;
            break;
        }
    }
    Ok(OrbitReport {
        iterations: u_seq.len(),
        limit: converged.then_some(x),
        orbit,
        u_seq,
        converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Attractor {
    /// Converged to this analytic fixed point.
    Fixed { x: f64 },
    /// Converged, but not near any isolated analytic fixed point.
    Numeric { x: f64 },
    /// Did not converge within the iteration budget.
    NotConverged,
}

impl Attractor {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Attractor::Fixed { x } | Attractor::Numeric { x } => Some(x),
            Attractor::NotConverged => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasinEntry {
    pub x0: f64,
    pub attractor: Attractor,
}

/// Attractor label for every starting point, in input order.
pub fn basin_sweep(t: &SelfMap, d: &dyn Metric, xs: &[f64], opts: &IterateOptions) -> Result<Vec<BasinEntry>> {
    let known: Vec<f64> = fixed_points(t).iter().filter_map(|s| s.as_point()).collect();
    xs.par_iter()
        .map(|&x0| {
            let report = iterate(t, d, x0, opts)?;
            let attractor = match report.limit {
                None => Attractor::NotConverged,
                Some(limit) => known
                    .iter()
                    .copied()
                    .find(|fp| (fp - limit).abs() <= MATCH_TOL)
                    .map(|x| Attractor::Fixed { x })
                    .unwrap_or(Attractor::Numeric { x: limit }),
            };
            Ok(BasinEntry { x0, attractor })
        })
        .collect()
}
