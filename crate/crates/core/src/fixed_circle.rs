//! Circles `C(x0, r) = {x : d(x0, x) = r}` and fixed-circle checks.
//!
//! On the real line a circle is the two-point set `{x0 - r, x0 + r}`.

use serde::Serialize;

use crate::contraction::ContractionKind;
use crate::discontinuity::{classify_at, ContinuityVerdict};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::numerics::SelfMap;

/// Tolerance on residuals and on both circle conditions.
pub const CIRCLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circle {
    pub center: f64,
    pub radius: f64,
    pub points: Vec<f64>,
}

impl Circle {
    pub fn on_real_line(center: f64, radius: f64) -> Result<Self> {
        if !center.is_finite() || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Spec(format!(
                "circle needs a finite center and a positive radius (center={center}, radius={radius})"
            )));
        }
        Ok(Circle {
            center,
            radius,
            points: vec![center - radius, center + radius],
        })
    }

    /// Whether `x` is on the circle under `d`.
    pub fn contains(&self, d: &dyn Metric, x: f64) -> bool {
        (d.distance(self.center, x) - self.radius).abs() <= CIRCLE_TOL
    }

    fn check_domain(&self, t: &SelfMap) -> Result<()> {
        match self.points.iter().find(|x| !t.domain().contains(**x)) {
            Some(x) => Err(Error::Domain(format!("circle point {x} is outside {}", t.domain()))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedCircleCheck {
    pub fixed: bool,
    /// `(x, d(Tx, x))` per circle point.
    pub residuals: Vec<(f64, f64)>,
}

pub fn is_fixed_circle(t: &SelfMap, d: &dyn Metric, c: &Circle) -> Result<FixedCircleCheck> {
    c.check_domain(t)?;
    let residuals = c
        .points
        .iter()
        .map(|&x| Ok((x, d.distance(t.apply(x)?, x))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedCircleCheck {
        fixed: residuals.iter().all(|(_, r)| *r <= CIRCLE_TOL),
        residuals,
    })
}

/// Both sufficient conditions at one circle point, with `φ(x) = d(x, x0)`:
/// (C1) `d(x, Tx) <= φ(x) - φ(Tx)` and (C2) `d(Tx, x0) >= r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CirclePointConditions {
    pub point: f64,
    pub c1: bool,
    pub c2: bool,
    pub c1_lhs: f64,
    pub c1_rhs: f64,
    pub c2_lhs: f64,
}

pub fn check_c1_c2(t: &SelfMap, d: &dyn Metric, c: &Circle) -> Result<Vec<CirclePointConditions>> {
    c.check_domain(t)?;
    let phi = |x: f64| d.distance(x, c.center);
    c.points
        .iter()
        .map(|&x| {
            let tx = t.apply(x)?;
            let c1_lhs = d.distance(x, tx);
            let c1_rhs = phi(x) - phi(tx);
            let c2_lhs = d.distance(tx, c.center);
            Ok(CirclePointConditions {
                point: x,
                c1: c1_lhs <= c1_rhs + CIRCLE_TOL,
                c2: c2_lhs >= c.radius - CIRCLE_TOL,
                c1_lhs,
                c1_rhs,
                c2_lhs,
            })
        })
        .collect()
}

/// Continuity verdict at each point of a fixed circle.
pub fn circle_continuity(
    t: &SelfMap,
    d: &dyn Metric,
    c: &Circle,
    kind: ContractionKind,
) -> Result<Vec<(f64, ContinuityVerdict)>> {
    if !is_fixed_circle(t, d, c)?.fixed {
        return Err(Error::NotFixedCircle {
            center: c.center,
            radius: c.radius,
        });
    }
    c.points.iter().map(|&x| Ok((x, classify_at(t, d, kind, x)?))).collect()
}
