use std::fmt;

use crate::error::{Error, Result};

/// Tolerance used when comparing scalars during validation.
pub const EQ_TOL: f64 = 1e-9;

/// A real interval with extended-real endpoints.
///
/// Infinite endpoints are always exclusive. A degenerate interval `[a, a]`
/// is allowed and must be closed on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_inc: bool,
    hi_inc: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_inc: bool, hi_inc: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidFunction("interval endpoint is NaN".into()));
        }
        if (lo.is_infinite() && lo_inc) || (hi.is_infinite() && hi_inc) {
            return Err(Error::InvalidFunction(format!(
                "infinite endpoint cannot be inclusive in {}",
                Interval { lo, hi, lo_inc, hi_inc }
            )));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidFunction(format!(
                "interval endpoints out of order: lo={lo}, hi={hi}"
            )));
        }
        let ok = lo < hi || (lo == hi && lo_inc && hi_inc);
        if !ok {
            return Err(Error::InvalidFunction(format!(
                "empty interval {}",
                Interval { lo, hi, lo_inc, hi_inc }
            )));
        }
        Ok(Interval { lo, hi, lo_inc, hi_inc })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x, true, true)
    }

    /// The whole real line `(-inf, +inf)`.
    pub fn real_line() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            lo_inc: false,
            hi_inc: false,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_inclusive(&self) -> bool {
        self.lo_inc
    }

    pub fn hi_inclusive(&self) -> bool {
        self.hi_inc
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = x > self.lo || (x == self.lo && self.lo_inc);
        let below = x < self.hi || (x == self.hi && self.hi_inc);
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_inc) = if self.lo > other.lo {
            (self.lo, self.lo_inc)
        } else if other.lo > self.lo {
            (other.lo, other.lo_inc)
        } else {
            (self.lo, self.lo_inc && other.lo_inc)
        };
        let (hi, hi_inc) = if self.hi < other.hi {
            (self.hi, self.hi_inc)
        } else if other.hi < self.hi {
            (other.hi, other.hi_inc)
        } else {
            (self.hi, self.hi_inc && other.hi_inc)
        };
        Interval::new(lo, hi, lo_inc, hi_inc).ok()
    }

    /// Whether `other` lies inside `self`, allowing endpoint slack of `tol`.
    pub fn contains_interval(&self, other: &Interval, tol: f64) -> bool {
        let lower_ok = if other.lo == self.lo {
            self.lo_inc || !other.lo_inc
        } else if other.lo > self.lo {
            true
        } else {
            self.lo.is_finite() && other.lo.is_finite() && self.lo - other.lo <= tol
        };
        let upper_ok = if other.hi == self.hi {
            self.hi_inc || !other.hi_inc
        } else if other.hi < self.hi {
            true
        } else {
            self.hi.is_finite() && other.hi.is_finite() && other.hi - self.hi <= tol
        };
        lower_ok && upper_ok
    }

    /// Finite bounds used for sampling: infinite ends are replaced by
    /// `anchor ± margin`, where the anchors are the supplied finite reference
    /// points (typically breakpoints) or the finite endpoints themselves.
    pub fn sampling_bounds(&self, anchors: &[f64], margin: f64) -> (f64, f64) {
        let finite = anchors
            .iter()
            .copied()
            .chain([self.lo, self.hi])
            .filter(|v| v.is_finite());
        let (mut amin, mut amax) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in finite {
            amin = amin.min(v);
            amax = amax.max(v);
        }
        if !amin.is_finite() {
            amin = 0.0;
            amax = 0.0;
        }
        let lo = if self.lo.is_finite() { self.lo } else { amin - margin };
        let hi = if self.hi.is_finite() { self.hi } else { amax + margin };
        (lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_inc { '[' } else { '(' };
        let close = if self.hi_inc { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}
