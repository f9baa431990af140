#![allow(dead_code)]

use std::path::PathBuf;

use fixdisc::format;
use fixdisc::numerics::SelfMap;
use fixdisc::Sampling;

pub const FIXTURE_MAPS: [&str; 4] = ["eq17.map", "example1.map", "example2.map", "identity.map"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn map(name: &str) -> SelfMap {
    format::read_map(fixture(name)).unwrap()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Fixed-point set found without the analytic solver: a grid scan of
/// `g(x) = T(x) - x`, bisection on sign changes, and breakpoint probes.
#[derive(Debug, Default)]
pub struct OracleFixedSet {
    pub points: Vec<f64>,
    /// `(first, last)` grid point of each run of consecutive grid zeros.
    pub runs: Vec<(f64, f64)>,
    pub step: f64,
}

pub const ORACLE_TOL: f64 = 1e-9;

pub fn oracle_fixed_points(t: &SelfMap, n: usize) -> OracleFixedSet {
    let (lo, hi) = Sampling::default().window(t);
    let xs: Vec<f64> = linspace(lo, hi, n)
        .into_iter()
        .filter(|x| t.domain().contains(*x))
        .collect();
    let g = |x: f64| t.apply(x).unwrap() - x;
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut out = OracleFixedSet {
        step: (hi - lo) / (n - 1) as f64,
        ..Default::default()
    };
    let mut candidates = Vec::new();

    let mut i = 0;
    while i < xs.len() {
        if gs[i].abs() <= ORACLE_TOL {
            let start = i;
            while i + 1 < xs.len() && gs[i + 1].abs() <= ORACLE_TOL {
                i += 1;
            }
            if i > start {
                out.runs.push((xs[start], xs[i]));
            } else {
                candidates.push(xs[i]);
            }
        }
        i += 1;
    }
    for k in 0..xs.len().saturating_sub(1) {
        if gs[k] * gs[k + 1] < 0.0 {
            let (mut a, mut b) = (xs[k], xs[k + 1]);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if g(a) * g(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            for c in [a, b] {
                if g(c).abs() <= ORACLE_TOL {
                    candidates.push(c);
                }
            }
        }
    }
    for b in t.breakpoints() {
        if t.domain().contains(b) && g(b).abs() <= ORACLE_TOL {
            candidates.push(b);
        }
    }
    candidates.sort_by(f64::total_cmp);
    for c in candidates {
        let in_run = out.runs.iter().any(|&(a, b)| c >= a - out.step && c <= b + out.step);
        let seen = out.points.last().is_some_and(|p| (c - p).abs() <= 1e-7);
        if !in_run && !seen {
            out.points.push(c);
        }
    }
    out
}
