//! Metrics on the real line and a sampled axiom checker.

use serde::Serialize;

use crate::numerics::Interval;
use crate::sampling::draw;
use crate::sampling::Sampling;

/// A distance function on the real line.
///
/// Implemented for closures so tests can inject pathological metrics.
pub trait Metric: Send + Sync {
    fn distance(&self, x: f64, y: f64) -> f64;
}

/// `d(x, y) = |x - y|`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UsualMetric;

impl Metric for UsualMetric {
    fn distance(&self, x: f64, y: f64) -> f64 {
        (x - y).abs()
    }
}

impl<F> Metric for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn distance(&self, x: f64, y: f64) -> f64 {
        self(x, y)
    }
}

pub fn usual_metric() -> UsualMetric {
    UsualMetric
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    NonNegativity,
    Identity,
    Symmetry,
    Triangle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

fn slack(rhs: f64) -> f64 {
    1e-12 * (1.0 + rhs.abs())
}

/// Every axiom violated by the triple `(x, y, z)`.
pub fn check_triple(d: &dyn Metric, x: f64, y: f64, z: f64) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let mut push = |axiom, lhs, rhs| {
        out.push(AxiomViolation {
            axiom,
            x,
            y,
            z,
            lhs,
            rhs,
        })
    };
    let (dxy, dyx, dyz, dxz, dxx) = (
        d.distance(x, y),
        d.distance(y, x),
        d.distance(y, z),
        d.distance(x, z),
        d.distance(x, x),
    );
    if dxy < 0.0 || dxy.is_nan() {
        push(Axiom::NonNegativity, dxy, 0.0);
    }
    if dxx.abs() > slack(0.0) || dxx.is_nan() {
        push(Axiom::Identity, dxx, 0.0);
    }
    if x != y && dxy.abs() <= slack(0.0) {
        push(Axiom::Identity, dxy, 0.0);
    }
    if (dxy - dyx).abs() > slack(dyx) {
        push(Axiom::Symmetry, dxy, dyx);
    }
    let via = dxy + dyz;
    if dxz > via + slack(via) {
        push(Axiom::Triangle, dxz, via);
    }
    out
}

/// Checks the metric axioms on `samples` seeded random triples drawn from
/// `domain` (unbounded ends are clipped to ±10 around the finite endpoints).
pub fn check_axioms(d: &dyn Metric, domain: &Interval, samples: usize, seed: u64) -> AxiomReport {
    let (lo, hi) = domain.sampling_bounds(&[], Sampling::default().margin);
    let mut rng = Sampling {
        seed,
        ..Default::default()
    }
    .rng();
    let mut violations = Vec::new();
    for _ in 0..samples {
        let x = draw(&mut rng, domain, lo, hi);
        let y = draw(&mut rng, domain, lo, hi);
        let z = draw(&mut rng, domain, lo, hi);
        violations.extend(check_triple(d, x, y, z));
    }
    AxiomReport {
        samples,
        seed,
        violations,
    }
}
