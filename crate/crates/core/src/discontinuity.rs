//! Continuity classification at fixed points.
//!
//! At a fixed point `y0`, `T` is continuous exactly when `M(x, y0) → 0` as
//! `x → y0`. [`classify_at`] estimates the two directional limits of
//! `x ↦ M(x, y0)` on a geometric radius schedule and reports one of three
//! verdicts. [`analytic_continuity`] answers the same question directly from
//! the closed-form pieces and serves as a cross-check.

use serde::Serialize;

use crate::contraction::{ContractionKind, ContractionNumber, KindName};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::numerics::{SelfMap, Side, EQ_TOL};

/// `|T(y0) - y0|` allowed for `y0` to count as a fixed point.
pub const FIXED_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityStatus {
    Continuous,
    DiscontinuousLimit,
    DiscontinuousNoLimit,
}

impl ContinuityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ContinuityStatus::Continuous => "continuous",
            ContinuityStatus::DiscontinuousLimit => "discontinuous_limit",
            ContinuityStatus::DiscontinuousNoLimit => "discontinuous_no_limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evidence {
    pub radius: f64,
    pub side: Side,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityVerdict {
    pub status: ContinuityStatus,
    #[serde(rename = "left")]
    pub left_estimate: Option<f64>,
    #[serde(rename = "right")]
    pub right_estimate: Option<f64>,
    pub evidence: Vec<Evidence>,
}

impl ContinuityVerdict {
    pub fn is_continuous(&self) -> bool {
        self.status == ContinuityStatus::Continuous
    }

    pub fn side_values(&self, side: Side) -> impl Iterator<Item = f64> + '_ {
        self.evidence.iter().filter(move |e| e.side == side).map(|e| e.value)
    }
}

/// Radii `r0 · ratio^k`, `k = 0..steps`, and the tail test applied to them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusSchedule {
    pub r0: f64,
    pub ratio: f64,
    pub steps: usize,
    /// Number of trailing values that must agree within `tau_lim`.
    pub tail: usize,
    pub tau_lim: f64,
}

impl Default for RadiusSchedule {
    fn default() -> Self {
        RadiusSchedule {
            r0: 0.5,
            ratio: 0.5,
            steps: 41,
            tail: 5,
            tau_lim: 1e-6,
        }
    }
}

impl RadiusSchedule {
    fn validate(&self) -> Result<()> {
        let ok = self.r0 > 0.0
            && self.ratio > 0.0
            && self.ratio < 1.0
            && self.tail >= 1
            && self.steps >= self.tail
            && self.tau_lim > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Spec(format!("invalid radius schedule {self:?}")))
        }
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.r0 * self.ratio.powi(k as i32))
    }
}

struct Direction {
    estimate: f64,
    cauchy: bool,
}

pub fn classify_at(t: &SelfMap, d: &dyn Metric, kind: ContractionKind, y0: f64) -> Result<ContinuityVerdict> {
    classify_with(t, d, kind, y0, &RadiusSchedule::default())
}

/// Classifies continuity of `T` (or `T^m` for powered kinds) at the fixed
/// point `y0` from the directional behaviour of `M(x, y0)`.
pub fn classify_with(
    t: &SelfMap,
    d: &dyn Metric,
    kind: ContractionKind,
    y0: f64,
    schedule: &RadiusSchedule,
) -> Result<ContinuityVerdict> {
    schedule.validate()?;
    if !matches!(kind.name(), KindName::M1 | KindName::M2) {
        return Err(Error::Spec(format!(
            "continuity classification uses kinds m1 or m2, not {}",
            kind.name()
        )));
    }
    let number = ContractionNumber::new(kind, t, d)?;
    let ty0 = number.map().apply(y0)?;
    let residual = d.distance(ty0, y0);
    if residual > FIXED_TOL {
        return Err(Error::NotFixedPoint { point: y0, residual });
    }

    let dom = t.domain();
    let mut evidence = Vec::new();
    let mut directions = Vec::new();
    for side in [Side::Left, Side::Right] {
        let mut values = Vec::new();
        for r in schedule.radii() {
            let x = match side {
                Side::Left => y0 - r,
                Side::Right => y0 + r,
            };
            if x == y0 || !dom.contains(x) {
                continue;
            }
            let value = number.value(x, y0)?;
            values.push(value);
            evidence.push(Evidence { radius: r, side, value });
        }
        if values.len() < schedule.tail {
            directions.push(None);
            continue;
        }
        let tail = &values[values.len() - schedule.tail..];
        let (lo, hi) = tail.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
        directions.push(Some(Direction {
            estimate: *tail.last().expect("tail is nonempty"),
            cauchy: hi - lo <= schedule.tau_lim,
        }));
    }
    let right = directions.pop().flatten();
    let left = directions.pop().flatten();

    let present: Vec<&Direction> = left.iter().chain(right.iter()).collect();
    if present.is_empty() {
        return Err(Error::Domain(format!("no admissible approach to {y0} inside {dom}")));
    }
    let tau = schedule.tau_lim;
    let status = if present.iter().any(|dir| !dir.cauchy) {
        ContinuityStatus::DiscontinuousNoLimit
    } else if present.iter().all(|dir| dir.estimate <= tau) {
        ContinuityStatus::Continuous
    } else {
        let agree = match (&left, &right) {
            (Some(l), Some(r)) => (l.estimate - r.estimate).abs() <= tau,
            _ => true,
        };
        if agree {
            ContinuityStatus::DiscontinuousLimit
        } else {
            ContinuityStatus::DiscontinuousNoLimit
        }
    };
    Ok(ContinuityVerdict {
        status,
        left_estimate: left.map(|dir| dir.estimate),
        right_estimate: right.map(|dir| dir.estimate),
        evidence,
    })
}

/// Closed-form continuity of a piecewise map at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AnalyticContinuity {
    Continuous,
    Jump {
        left: Option<f64>,
        right: Option<f64>,
        value: f64,
    },
}

impl AnalyticContinuity {
    pub fn is_continuous(&self) -> bool {
        matches!(self, AnalyticContinuity::Continuous)
    }
}

/// Compares the one-sided limits at `x` with `T(x)`.
pub fn analytic_continuity(t: &SelfMap, x: f64) -> Result<AnalyticContinuity> {
    let f = t.func();
    let value = f.eval(x)?;
    let left = f.one_sided_limit(x, Side::Left).ok();
    let right = f.one_sided_limit(x, Side::Right).ok();
    let matches = |lim: Option<f64>| lim.is_none_or(|l| (l - value).abs() <= EQ_TOL);
    if matches(left) && matches(right) {
        Ok(AnalyticContinuity::Continuous)
    } else {
        Ok(AnalyticContinuity::Jump { left, right, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activations::{build, MexicanHatParams, Tails};
    use crate::metric::usual_metric;
    use crate::numerics::{Interval, Piece, PiecewiseFunc};

    fn example1() -> SelfMap {
        SelfMap::from_func(
            PiecewiseFunc::new(vec![
                Piece::constant(Interval::closed(0.0, 2.0).unwrap(), 2.0).unwrap(),
                Piece::constant(Interval::new(2.0, 4.0, false, true).unwrap(), 0.0).unwrap(),
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn eq17() -> SelfMap {
        build(&MexicanHatParams {
            p: -1.0,
            r: 1.0,
            q: 3.0,
            l1: 1.0,
            c1: 4.0,
            l2: -1.0,
            c2: 6.0,
            tails: Tails::Discontinuous { u: 3.0, v: 6.0 },
        })
        .unwrap()
    }

    #[test]
    fn example1_has_no_limit_at_two() {
        let v = classify_at(&example1(), &usual_metric(), ContractionKind::m1(), 2.0).unwrap();
        assert_eq!(v.status, ContinuityStatus::DiscontinuousNoLimit);
        assert!(v.left_estimate.unwrap() <= 1e-6);
        assert!((v.right_estimate.unwrap() - 2.0).abs() <= 1e-6);
        assert_eq!(v.evidence.len(), 82);
    }

    #[test]
    fn constant_map_is_continuous() {
        let t = SelfMap::constant(Interval::closed(0.0, 4.0).unwrap(), 2.0).unwrap();
        let v = classify_at(&t, &usual_metric(), ContractionKind::m2(), 2.0).unwrap();
        assert_eq!(v.status, ContinuityStatus::Continuous);
    }

    #[test]
    fn eq17_fixed_points() {
        let d = usual_metric();
        let at6 = classify_at(&eq17(), &d, ContractionKind::m1(), 6.0).unwrap();
        assert_eq!(at6.status, ContinuityStatus::Continuous);
        let at3 = classify_at(&eq17(), &d, ContractionKind::m1(), 3.0).unwrap();
        assert_eq!(at3.status, ContinuityStatus::DiscontinuousNoLimit);
        assert!(at3.left_estimate.unwrap() <= 1e-6);
        assert!((at3.right_estimate.unwrap() - 3.0).abs() <= 1e-6);
    }

    #[test]
    fn powered_kind_sees_t_squared() {
        let k = ContractionKind::m1().with_power(2).unwrap();
        let v = classify_at(&example1(), &usual_metric(), k, 2.0).unwrap();
        assert_eq!(v.status, ContinuityStatus::Continuous);
    }

    #[test]
    fn one_sided_jump_with_a_limit() {
        // On [0, 1]: T(0) = 0 and T(x) = 1 otherwise. Only the right side exists
        // and M1(x, 0) -> 1 there.
        let t = SelfMap::from_func(
            PiecewiseFunc::new(vec![
                Piece::constant(Interval::point(0.0).unwrap(), 0.0).unwrap(),
                Piece::constant(Interval::new(0.0, 1.0, false, true).unwrap(), 1.0).unwrap(),
            ])
            .unwrap(),
        )
        .unwrap();
        let v = classify_at(&t, &usual_metric(), ContractionKind::m1(), 0.0).unwrap();
        assert_eq!(v.status, ContinuityStatus::DiscontinuousLimit);
        assert_eq!(v.left_estimate, None);
        assert!((v.right_estimate.unwrap() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn symmetric_jump_has_a_limit() {
        // T = 0 at 0, and 1 elsewhere on [-1, 1]: M1(x, 0) -> 1 from both sides.
        let t = SelfMap::from_func(
            PiecewiseFunc::new(vec![
                Piece::constant(Interval::new(-1.0, 0.0, true, false).unwrap(), 1.0).unwrap(),
                Piece::constant(Interval::point(0.0).unwrap(), 0.0).unwrap(),
                Piece::constant(Interval::new(0.0, 1.0, false, true).unwrap(), 1.0).unwrap(),
            ])
            .unwrap(),
        )
        .unwrap();
        let v = classify_at(&t, &usual_metric(), ContractionKind::m1(), 0.0).unwrap();
        assert_eq!(v.status, ContinuityStatus::DiscontinuousLimit);
    }

    #[test]
    fn not_a_fixed_point() {
        let err = classify_at(&example1(), &usual_metric(), ContractionKind::m1(), 1.0).unwrap_err();
        assert!(matches!(err, Error::NotFixedPoint { .. }));
        let err = classify_at(&example1(), &usual_metric(), ContractionKind::pant(), 2.0).unwrap_err();
        assert!(matches!(err, Error::Spec(_)));
    }

    #[test]
    fn degenerate_domain_has_no_approach() {
        let t = SelfMap::identity(Interval::point(1.0).unwrap()).unwrap();
        let err = classify_at(&t, &usual_metric(), ContractionKind::m1(), 1.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn analytic_checks() {
        assert_eq!(
            analytic_continuity(&eq17(), 3.0).unwrap(),
            AnalyticContinuity::Jump {
                left: Some(3.0),
                right: Some(6.0),
                value: 3.0
            }
        );
        assert!(analytic_continuity(&eq17(), -1.0).unwrap().is_continuous());
        assert!(analytic_continuity(&eq17(), 6.0).unwrap().is_continuous());
        let c = SelfMap::constant(Interval::closed(0.0, 4.0).unwrap(), 2.0).unwrap();
        assert!(analytic_continuity(&c, 0.0).unwrap().is_continuous());
        assert!(analytic_continuity(&c, 4.0).unwrap().is_continuous());
        assert!(analytic_continuity(&c, 5.0).is_err());
    }
}
