//! Mexican-hat activation functions and fixed-point enumeration for
//! piecewise constant/affine maps.
//!
//! The four pieces are
//!
//! ```text
//!   left tail          (-inf, p)   constant
//!   rising edge        [p, r]      l1·x + c1
//!   falling edge       (r, q]      l2·x + c2
//!   right tail         (q, +inf)   constant
//! ```
//!
//! With equal tails the function is continuous. The discontinuous family
//! lifts the right tail to `v > l1·r + c1`, which creates a jump at `q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Interval, Piece, PieceKind, PiecewiseFunc, SelfMap, EQ_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tails {
    /// Both tails equal `m`.
    Continuous { m: f64 },
    /// Left tail `u`, right tail `v`.
    Discontinuous { u: f64, v: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MexicanHatParams {
    pub p: f64,
    pub r: f64,
    pub q: f64,
    pub l1: f64,
    pub c1: f64,
    pub l2: f64,
    pub c2: f64,
    pub tails: Tails,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOL
}

impl MexicanHatParams {
    /// Checks every constraint of the family, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Param(msg));
        let all = [self.p, self.r, self.q, self.l1, self.c1, self.l2, self.c2];
        if all.iter().any(|v| !v.is_finite()) {
            return fail("all parameters must be finite".into());
        }
        if !(self.p < self.r && self.r < self.q) {
            return fail(format!("p < r < q violated (p={}, r={}, q={})", self.p, self.r, self.q));
        }
        if !(self.l1 > 0.0) {
            return fail(format!("l1 > 0 violated (l1={})", self.l1));
        }
        if !(self.l2 < 0.0) {
            return fail(format!("l2 < 0 violated (l2={})", self.l2));
        }
        let at_p = self.l1 * self.p + self.c1;
        let at_q = self.l2 * self.q + self.c2;
        let peak_rising = self.l1 * self.r + self.c1;
        let peak_falling = self.l2 * self.r + self.c2;
        if !close(peak_rising, peak_falling) {
            return fail(format!(
                "l1*r + c1 = l2*r + c2 violated ({peak_rising} vs {peak_falling})"
            ));
        }
        let (left, name) = match self.tails {
            Tails::Continuous { m } => (m, "m"),
            Tails::Discontinuous { u, .. } => (u, "u"),
        };
        if !left.is_finite() {
            return fail(format!("{name} must be finite"));
        }
        if !close(left, at_p) {
            return fail(format!("{name} = l1*p + c1 violated ({left} vs {at_p})"));
        }
        if !close(left, at_q) {
            return fail(format!("{name} = l2*q + c2 violated ({left} vs {at_q})"));
        }
        if let Tails::Discontinuous { v, .. } = self.tails {
            if !v.is_finite() || !(v > peak_rising) {
                return fail(format!("v > T(r) violated (v={v}, T(r)={peak_rising})"));
            }
        }
        Ok(())
    }

    fn tail_values(&self) -> (f64, f64) {
        match self.tails {
            Tails::Continuous { m } => (m, m),
            Tails::Discontinuous { u, v } => (u, v),
        }
    }
}

/// Builds the activation as a self-map of the real line.
pub fn build(params: &MexicanHatParams) -> Result<SelfMap> {
    params.validate()?;
    let MexicanHatParams {
        p,
        r,
        q,
        l1,
        c1,
        l2,
        c2,
        ..
    } = *params;
    let (left, right) = params.tail_values();
    let pieces = vec![
        Piece::constant(Interval::new(f64::NEG_INFINITY, p, false, false)?, left)?,
        Piece::affine(Interval::new(p, r, true, true)?, l1, c1)?,
        Piece::affine(Interval::new(r, q, false, true)?, l2, c2)?,
        Piece::constant(Interval::new(q, f64::INFINITY, false, false)?, right)?,
    ];
    SelfMap::new(PiecewiseFunc::new(pieces)?, Interval::real_line())
}

/// Applies the `i`-th activation to the `i`-th input.
pub fn apply_vector(params: &[MexicanHatParams], xs: &[f64]) -> Result<Vec<f64>> {
    if params.len() != xs.len() {
        return Err(Error::Spec(format!(
            "{} activations for {} inputs",
            params.len(),
            xs.len()
        )));
    }
    params.iter().zip(xs).map(|(p, &x)| build(p)?.apply(x)).collect()
}

/// A fixed point or an interval of fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FixedSet {
    Point {
        x: f64,
    },
    Interval {
        lo: f64,
        hi: f64,
        lo_inc: bool,
        hi_inc: bool,
    },
}

impl FixedSet {
    fn interval(i: &Interval) -> Self {
        FixedSet::Interval {
            lo: i.lo(),
            hi: i.hi(),
            lo_inc: i.lo_inclusive(),
            hi_inc: i.hi_inclusive(),
        }
    }

    fn start(&self) -> f64 {
        match *self {
            FixedSet::Point { x } => x,
            FixedSet::Interval { lo, .. } => lo,
        }
    }

    pub fn contains(&self, y: f64) -> bool {
        match *self {
            FixedSet::Point { x } => x == y,
            FixedSet::Interval { lo, hi, lo_inc, hi_inc } => Interval::new(lo, hi, lo_inc, hi_inc)
                .map(|i| i.contains(y))
                .unwrap_or(false),
        }
    }

    pub fn as_point(&self) -> Option<f64> {
        match *self {
            FixedSet::Point { x } => Some(x),
            FixedSet::Interval { .. } => None,
        }
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FixedSet::Point { x } => write!(f, "{x}"),
            FixedSet::Interval { lo, hi, lo_inc, hi_inc } => write!(
                f,
                "{}{lo}, {hi}{}",
                if lo_inc { '[' } else { '(' },
                if hi_inc { ']' } else { ')' }
            ),
        }
    }
}

/// Every fixed point of `t`, solved piece by piece in closed form.
pub fn fixed_points(t: &SelfMap) -> Vec<FixedSet> {
    let mut found = Vec::new();
    for piece in t.func().pieces() {
        let dom = piece.domain();
        match *piece.kind() {
            PieceKind::Constant { value } => {
                if dom.contains(value) {
                    found.push(FixedSet::Point { x: value });
                }
            }
            PieceKind::Affine { slope: 1.0, intercept } => {
                if intercept == 0.0 {
                    if dom.is_point() {
                        found.push(FixedSet::Point { x: dom.lo() });
                    } else {
                        found.push(FixedSet::interval(dom));
                    }
                }
            }
            PieceKind::Affine { slope, intercept } => {
                let x = intercept / (1.0 - slope);
                if dom.contains(x) {
                    found.push(FixedSet::Point { x });
                }
            }
        }
    }
    found.sort_by(|a, b| a.start().total_cmp(&b.start()));
    let intervals: Vec<FixedSet> = found
        .iter()
        .copied()
        .filter(|s| matches!(s, FixedSet::Interval { .. }))
        .collect();
    let mut out: Vec<FixedSet> = Vec::with_capacity(found.len());
    for s in found {
        if let FixedSet::Point { x } = s {
            if intervals.iter().any(|i| i.contains(x)) || out.last() == Some(&s) {
                continue;
            }
        }
        out.push(s);
    }
    out
}
