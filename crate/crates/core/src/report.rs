//! CSV emission with locale-independent, 17-significant-digit numbers.

use std::fmt::Write as _;

use crate::discontinuity::ContinuityVerdict;
use crate::picard::{Attractor, BasinEntry, OrbitReport};

/// Formats `v` like C's `%.17g`.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn profile_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("x,value\n");
    for (x, v) in rows {
        let _ = writeln!(out, "{},{}", fmt_g17(*x), fmt_g17(*v));
    }
    out
}

pub fn orbit_csv(report: &OrbitReport) -> String {
    let mut out = String::from("n,x_n,u_n\n");
    for (n, x) in report.orbit.iter().enumerate() {
        let u = report.u_seq.get(n).map(|u| fmt_g17(*u)).unwrap_or_default();
        let _ = writeln!(out, "{n},{},{u}", fmt_g17(*x));
    }
    out
}

pub fn basin_csv(entries: &[BasinEntry]) -> String {
    let mut out = String::from("x0,attractor\n");
    for e in entries {
        let label = match e.attractor {
            Attractor::Fixed { x } | Attractor::Numeric { x } => fmt_g17(x),
            Attractor::NotConverged => "not_converged".into(),
        };
        let _ = writeln!(out, "{},{label}", fmt_g17(e.x0));
    }
    out
}

pub fn evidence_csv(verdict: &ContinuityVerdict) -> String {
    let mut out = String::from("radius,side,value\n");
    for e in &verdict.evidence {
        let _ = writeln!(out, "{},{},{}", fmt_g17(e.radius), e.side.as_str(), fmt_g17(e.value));
    }
    out
}
