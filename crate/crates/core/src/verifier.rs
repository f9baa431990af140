//! Sampled checks of the two-part contractive conditions and of Rhoades'
//! strict inequality.
//!
//! Every check runs over a `grid_n × grid_n` uniform grid plus `grid_n²`
//! seeded random pairs (see [`Sampling`]). Non-strict inequalities get a
//! relative slack of `1e-12 · (1 + |rhs|)`; the strict Rhoades inequality is
//! compared exactly.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::contraction::{ContractionKind, ContractionNumber, KindName};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::numerics::{PiecewiseFunc, SelfMap};
use crate::sampling::Sampling;

pub const REL_SLACK: f64 = 1e-12;

fn slack(rhs: f64) -> f64 {
    REL_SLACK * (1.0 + rhs.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    One,
    Half,
}

impl Factor {
    pub fn value(&self) -> f64 {
        match self {
            Factor::One => 1.0,
            Factor::Half => 0.5,
        }
    }
}

/// The comparison function applied to the contraction number.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    /// A user function `psi` that must also satisfy `psi(t) < t` for `t > 0`.
    Psi(PiecewiseFunc),
    /// `psi(t) = t` applied only where `M > 0` (the weak form `d(Tx,Ty) <= M`).
    Identity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition1Spec {
    kind: ContractionKind,
    bound: Bound,
    factor: Factor,
}

impl Condition1Spec {
    pub fn new(kind: ContractionKind, bound: Bound, factor: Factor) -> Result<Self> {
        if factor == Factor::Half && kind.name() != KindName::M2 && kind.name() != KindName::Dist {
            return Err(Error::Spec(format!(
                "factor 1/2 is only defined for kinds m2 and dist, not {}",
                kind.name()
            )));
        }
        Ok(Condition1Spec { kind, bound, factor })
    }

    pub fn kind(&self) -> ContractionKind {
        self.kind
    }

    pub fn factor(&self) -> Factor {
        self.factor
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition2Spec {
    kind: ContractionKind,
    delta: PiecewiseFunc,
    epsilons: Vec<f64>,
    decile_epsilons: bool,
}

impl Condition2Spec {
    /// Checks exactly the given `epsilons`.
    pub fn new(kind: ContractionKind, delta: PiecewiseFunc, epsilons: Vec<f64>) -> Result<Self> {
        if let Some(e) = epsilons.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return Err(Error::Spec(format!("epsilon must be a positive real, got {e}")));
        }
        Ok(Condition2Spec {
            kind,
            delta,
            epsilons,
            decile_epsilons: false,
        })
    }

    /// Also test the deciles of the sampled positive contraction numbers.
    pub fn with_decile_epsilons(mut self) -> Self {
        self.decile_epsilons = true;
        self
    }

    pub fn kind(&self) -> ContractionKind {
        self.kind
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `d(Tx,Ty)` exceeds the bound.
    Contractive,
    /// `psi(t) >= t` at a sampled `t > 0`.
    PsiAdmissibility,
    /// `ε < M < ε + δ(ε)` but `d(Tx,Ty) > ε`.
    EpsilonDelta,
    /// `d(Tx,Ty)` is not strictly below the Rhoades maximum.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: f64,
    pub y: f64,
    pub epsilon: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Violation {
    fn order(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
            .then(self.epsilon.unwrap_or(0.0).total_cmp(&other.epsilon.unwrap_or(0.0)))
            .then(self.kind.cmp(&other.kind))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub pass: bool,
    pub samples_checked: usize,
    pub seed: u64,
    pub grid_n: usize,
    /// Finite window the pairs were drawn from.
    pub window: [f64; 2],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub epsilons: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    fn build(
        sampling: &Sampling,
        window: (f64, f64),
        samples_checked: usize,
        epsilons: Vec<f64>,
        mut violations: Vec<Violation>,
    ) -> Self {
        violations.sort_by(Violation::order);
        ViolationReport {
            pass: violations.is_empty(),
            samples_checked,
            seed: sampling.seed,
            grid_n: sampling.grid_n,
            window: [window.0, window.1],
            epsilons,
            violations,
        }
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

fn check_grid(sampling: &Sampling) -> Result<()> {
    if sampling.grid_n < 2 {
        return Err(Error::Spec(format!(
            "grid_n must be at least 2, got {}",
            sampling.grid_n
        )));
    }
    Ok(())
}

/// One evaluated pair: the contraction number and `d(Tx, Ty)`.
#[derive(Debug, Clone, Copy)]
struct PairEval {
    x: f64,
    y: f64,
    m: f64,
    lhs: f64,
}

fn evaluate_pairs(number: &ContractionNumber<'_>, pairs: &[(f64, f64)]) -> Result<Vec<PairEval>> {
    let d = number.metric();
    pairs
        .par_iter()
        .map(|&(x, y)| {
            let e = number.evaluate(x, y)?;
            Ok(PairEval {
                x,
                y,
                m: e.value,
                lhs: d.distance(e.tx, e.ty),
            })
        })
        .collect()
}

/// Checks `d(Tx,Ty) <= factor · psi(M(x,y))` and `psi(t) < t` at every
/// sampled `t = M(x,y) > 0`.
pub fn check_condition1(
    t: &SelfMap,
    d: &dyn Metric,
    spec: &Condition1Spec,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    check_grid(sampling)?;
    let number = ContractionNumber::new(spec.kind, t, d)?;
    let pairs = sampling.pairs(t);
    let evals = evaluate_pairs(&number, &pairs)?;
    let factor = spec.factor.value();

    let per_pair: Vec<Vec<Violation>> = evals
        .par_iter()
        .map(|p| {
            let mut out = Vec::new();
            let bound = match &spec.bound {
                Bound::Identity if p.m <= 0.0 => return Ok(out),
                Bound::Identity => p.m,
                Bound::Psi(psi) => {
                    let v = psi.eval(p.m).map_err(|_| {
                        Error::Spec(format!("psi is undefined at t = {} (domain {})", p.m, psi.domain()))
                    })?;
                    if p.m > 0.0 && v >= p.m {
                        out.push(Violation {
                            kind: ViolationKind::PsiAdmissibility,
                            x: p.x,
                            y: p.y,
                            epsilon: None,
                            lhs: v,
                            rhs: p.m,
                        });
                    }
                    v
                }
            };
            let rhs = factor * bound;
            if p.lhs > rhs + slack(rhs) {
                out.push(Violation {
                    kind: ViolationKind::Contractive,
                    x: p.x,
                    y: p.y,
                    epsilon: None,
                    lhs: p.lhs,
                    rhs,
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let violations = per_pair.into_iter().flatten().collect();
    Ok(ViolationReport::build(
        sampling,
        sampling.window(t),
        pairs.len(),
        Vec::new(),
        violations,
    ))
}

/// Deciles (10%, ..., 90%) of the positive values in `ms`.
pub fn decile_epsilons(ms: &[f64]) -> Vec<f64> {
    let mut pos: Vec<f64> = ms.iter().copied().filter(|m| *m > 0.0).collect();
    if pos.is_empty() {
        return Vec::new();
    }
    pos.sort_by(f64::total_cmp);
    let n = pos.len();
    let mut out: Vec<f64> = (1..10).map(|k| pos[k * (n - 1) / 10]).collect();
    out.dedup();
    out
}

/// Checks that `ε < M(x,y) < ε + δ(ε)` implies `d(Tx,Ty) <= ε`.
pub fn check_condition2(
    t: &SelfMap,
    d: &dyn Metric,
    spec: &Condition2Spec,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    check_grid(sampling)?;
    let number = ContractionNumber::new(spec.kind, t, d)?;
    let pairs = sampling.pairs(t);
    let evals = evaluate_pairs(&number, &pairs)?;

    let mut epsilons = spec.epsilons.clone();
    if spec.decile_epsilons {
        let ms: Vec<f64> = evals.iter().map(|p| p.m).collect();
        epsilons.extend(decile_epsilons(&ms));
    }
    epsilons.sort_by(f64::total_cmp);
    epsilons.dedup();
    if epsilons.is_empty() {
        return Err(Error::Spec("condition (2) needs at least one epsilon".into()));
    }

    let mut violations = Vec::new();
    for &eps in &epsilons {
        let delta = spec
            .delta
            .eval(eps)
            .map_err(|_| Error::Spec(format!("delta is undefined at epsilon = {eps}")))?;
        if !(delta > 0.0) {
            return Err(Error::Spec(format!("delta({eps}) = {delta} is not positive")));
        }
        violations.extend(
            evals
                .par_iter()
                .filter(|p| eps < p.m && p.m < eps + delta && p.lhs > eps + slack(eps))
                .map(|p| Violation {
                    kind: ViolationKind::EpsilonDelta,
                    x: p.x,
                    y: p.y,
                    epsilon: Some(eps),
                    lhs: p.lhs,
                    rhs: eps,
                })
                .collect::<Vec<_>>(),
        );
    }
    Ok(ViolationReport::build(
        sampling,
        sampling.window(t),
        pairs.len(),
        epsilons,
        violations,
    ))
}

/// Checks `d(Tx,Ty) < max{d(x,y), d(x,Tx), d(y,Ty), d(x,Ty), d(y,Tx)}` for
/// every sampled pair with `x ≠ y`.
pub fn check_rhoades(t: &SelfMap, d: &dyn Metric, sampling: &Sampling) -> Result<ViolationReport> {
    check_grid(sampling)?;
    let number = ContractionNumber::new(ContractionKind::rhoades(), t, d)?;
    let pairs: Vec<(f64, f64)> = sampling.pairs(t).into_iter().filter(|(x, y)| x != y).collect();
    let evals = evaluate_pairs(&number, &pairs)?;
    let violations = evals
        .par_iter()
        .filter(|p| {
            debug_assert!(p.m > 0.0 || d.distance(p.x, p.y) <= 0.0);
            p.lhs >= p.m
        })
        .map(|p| Violation {
            kind: ViolationKind::Strict,
            x: p.x,
            y: p.y,
            epsilon: None,
            lhs: p.lhs,
            rhs: p.m,
        })
        .collect();
    Ok(ViolationReport::build(
        sampling,
        sampling.window(t),
        pairs.len(),
        Vec::new(),
        violations,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::usual_metric;
    use crate::numerics::{Interval, Piece};

    fn dom04() -> Interval {
        Interval::closed(0.0, 4.0).unwrap()
    }

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

    fn half() -> PiecewiseFunc {
        PiecewiseFunc::affine(Interval::new(0.0, f64::INFINITY, true, false).unwrap(), 0.5, 0.0).unwrap()
    }

    fn small() -> Sampling {
        Sampling::new(41, 42)
    }

    #[test]
    fn identity_map_violates_condition1() {
        let id = SelfMap::identity(Interval::closed(0.0, 1.0).unwrap()).unwrap();
        let spec = Condition1Spec::new(ContractionKind::m1(), Bound::Psi(half()), Factor::One).unwrap();
        let r = check_condition1(&id, &usual_metric(), &spec, &small()).unwrap();
        assert!(!r.pass);
        assert!(r.count(ViolationKind::Contractive) > 0);
        assert_eq!(r.count(ViolationKind::PsiAdmissibility), 0);
    }

    #[test]
    fn inadmissible_psi_is_reported() {
        let psi = PiecewiseFunc::affine(Interval::new(0.0, f64::INFINITY, true, false).unwrap(), 1.0, 0.0).unwrap();
        let c = SelfMap::constant(dom04(), 2.0).unwrap();
        let spec = Condition1Spec::new(ContractionKind::m2(), Bound::Psi(psi), Factor::One).unwrap();
        let r = check_condition1(&c, &usual_metric(), &spec, &small()).unwrap();
        assert!(r.count(ViolationKind::PsiAdmissibility) > 0);
        assert_eq!(r.count(ViolationKind::Contractive), 0);
    }

    #[test]
    fn psi_must_cover_sampled_values() {
        let psi = PiecewiseFunc::affine(Interval::closed(0.0, 1.0).unwrap(), 0.5, 0.0).unwrap();
        let spec = Condition1Spec::new(ContractionKind::m1(), Bound::Psi(psi), Factor::One).unwrap();
        let err = check_condition1(&example1(), &usual_metric(), &spec, &small()).unwrap_err();
        assert!(matches!(err, Error::Spec(_)));
    }

    #[test]
    fn half_factor_only_for_m2() {
        assert!(Condition1Spec::new(ContractionKind::m1(), Bound::Identity, Factor::Half).is_err());
        assert!(Condition1Spec::new(ContractionKind::m2(), Bound::Identity, Factor::Half).is_ok());
        let powered = ContractionKind::m2().with_power(2).unwrap();
        assert!(Condition1Spec::new(powered, Bound::Identity, Factor::Half).is_ok());
    }

    #[test]
    fn weak_identity_bound_on_example1() {
        let spec = Condition1Spec::new(ContractionKind::m1(), Bound::Identity, Factor::One).unwrap();
        assert!(
            check_condition1(&example1(), &usual_metric(), &spec, &small())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn constant_map_passes_condition2() {
        let c = SelfMap::constant(dom04(), 1.0).unwrap();
        let delta = PiecewiseFunc::constant(Interval::open(0.0, f64::INFINITY).unwrap(), 0.25).unwrap();
        let spec = Condition2Spec::new(ContractionKind::m1(), delta, vec![0.1, 1.0, 3.5])
            .unwrap()
            .with_decile_epsilons();
        let r = check_condition2(&c, &usual_metric(), &spec, &small()).unwrap();
        assert!(r.pass);
        assert!(r.epsilons.len() > 3);
    }

    #[test]
    fn nonpositive_delta_is_a_spec_error() {
        let c = SelfMap::constant(dom04(), 1.0).unwrap();
        let delta = PiecewiseFunc::affine(Interval::open(0.0, f64::INFINITY).unwrap(), -1.0, 1.0).unwrap();
        let spec = Condition2Spec::new(ContractionKind::m1(), delta, vec![2.0]).unwrap();
        assert!(matches!(
            check_condition2(&c, &usual_metric(), &spec, &small()),
            Err(Error::Spec(_))
        ));
        assert!(Condition2Spec::new(ContractionKind::m1(), half(), vec![0.0]).is_err());
    }

    #[test]
    fn rhoades_examples() {
        let d = usual_metric();
        assert!(check_rhoades(&example1(), &d, &small()).unwrap().pass);
        assert!(
            check_rhoades(&SelfMap::constant(dom04(), 3.0).unwrap(), &d, &small())
                .unwrap()
                .pass
        );
        let id = SelfMap::identity(Interval::closed(0.0, 1.0).unwrap()).unwrap();
        let r = check_rhoades(&id, &d, &small()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.count(ViolationKind::Strict), r.samples_checked);
    }

    #[test]
    fn grid_too_small() {
        let spec = Condition1Spec::new(ContractionKind::m1(), Bound::Identity, Factor::One).unwrap();
        let err = check_condition1(&example1(), &usual_metric(), &spec, &Sampling::new(1, 0));
        assert!(matches!(err, Err(Error::Spec(_))));
    }

    #[test]
    fn deciles_of_positive_values() {
        let ms: Vec<f64> = (0..=100).map(f64::from).collect();
        assert_eq!(
            decile_epsilons(&ms),
            vec![10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0]
        );
        assert!(decile_epsilons(&[0.0, 0.0]).is_empty());
    }

    #[test]
    fn violations_sorted_and_deterministic() {
        let id = SelfMap::identity(Interval::closed(0.0, 1.0).unwrap()).unwrap();
        let a = check_rhoades(&id, &usual_metric(), &small()).unwrap();
        let b = check_rhoades(&id, &usual_metric(), &small()).unwrap();
        assert_eq!(a, b);
        assert!(a.violations.windows(2).all(|w| w[0].order(&w[1]) != Ordering::Greater));
    }
}
