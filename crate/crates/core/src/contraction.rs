//! Contraction numbers built from distances among `x`, `y`, `Tx` and `Ty`.
//!
//! | kind      | terms                                                                   |
//! |-----------|-------------------------------------------------------------------------|
//! | `m1`      | d(x,y), d(x,Tx), d(y,Ty), d(x,Tx)d(y,Ty)/(1+d(x,y)), d(x,Tx)d(y,Ty)/(1+d(Tx,Ty)) |
//! | `m2`      | d(x,y), d(Tx,x), d(Ty,y), d(Tx,y), d(Ty,x)                              |
//! | `rhoades` | d(x,y), d(x,Tx), d(y,Ty), d(x,Ty), d(y,Tx)                              |
//! | `pant`    | d(x,Tx), d(y,Ty)                                                        |
//! | `bp_m`    | d(x,y), d(x,Tx), d(y,Ty), (d(x,Ty)+d(y,Tx))/2                           |
//! | `bp_n`    | d(x,y), d(x,Tx), d(y,Ty), α(d(x,Ty)+d(y,Tx))/2, 0 ≤ α < 1               |
//! | `dist`    | d(x,y)                                                                  |
//!
//! The number is the maximum of the terms. For `m1` and `m2` a power `m > 1`
//! replaces `T` by `T^m` throughout.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::numerics::SelfMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    M1,
    M2,
    Pant,
    BpM,
    BpN,
    Rhoades,
    Dist,
}

impl KindName {
    pub const ALL: [KindName; 7] = [
        KindName::M1,
        KindName::M2,
        KindName::Pant,
        KindName::BpM,
        KindName::BpN,
        KindName::Rhoades,
        KindName::Dist,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            KindName::M1 => "m1",
            KindName::M2 => "m2",
            KindName::Pant => "pant",
            KindName::BpM => "bp_m",
            KindName::BpN => "bp_n",
            KindName::Rhoades => "rhoades",
            KindName::Dist => "dist",
        }
    }

    /// Whether `d(x, y)` is one of the kind's terms.
    pub fn bounds_distance(&self) -> bool {
        !matches!(self, KindName::Pant)
    }
}

impl fmt::Display for KindName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KindName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KindName::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Spec(format!("unknown contraction kind {s:?}")))
    }
}

/// Which contraction number to compute, with its power and parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionKind {
    name: KindName,
    power: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
}

impl ContractionKind {
    pub fn new(name: KindName, power: u32, alpha: Option<f64>) -> Result<Self> {
        if power == 0 {
            return Err(Error::Spec("power must be at least 1".into()));
        }
        if power > 1 && !matches!(name, KindName::M1 | KindName::M2) {
            return Err(Error::Spec(format!("kind {name} does not take a power")));
        }
        match (name, alpha) {
            (KindName::BpN, Some(a)) if (0.0..1.0).contains(&a) => {}
            (KindName::BpN, Some(a)) => return Err(Error::Spec(format!("bp_n needs 0 <= alpha < 1, got {a}"))),
            (KindName::BpN, None) => return Err(Error::Spec("bp_n needs alpha".into())),
            (_, Some(_)) => return Err(Error::Spec(format!("kind {name} does not take alpha"))),
            (_, None) => {}
        }
        Ok(ContractionKind { name, power, alpha })
    }

    fn plain(name: KindName) -> Self {
        ContractionKind {
            name,
            power: 1,
            alpha: None,
        }
    }

    pub fn m1() -> Self {
        Self::plain(KindName::M1)
    }

    pub fn m2() -> Self {
        Self::plain(KindName::M2)
    }

    pub fn pant() -> Self {
        Self::plain(KindName::Pant)
    }

    pub fn bp_m() -> Self {
        Self::plain(KindName::BpM)
    }

    pub fn bp_n(alpha: f64) -> Result<Self> {
        Self::new(KindName::BpN, 1, Some(alpha))
    }

    pub fn rhoades() -> Self {
        Self::plain(KindName::Rhoades)
    }

    pub fn dist() -> Self {
        Self::plain(KindName::Dist)
    }

    pub fn with_power(self, power: u32) -> Result<Self> {
        Self::new(self.name, power, self.alpha)
    }

    pub fn name(&self) -> KindName {
        self.name
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.power > 1 {
            write!(f, "^{}", self.power)?;
        }
        if let Some(a) = self.alpha {
            write!(f, "(alpha={a})")?;
        }
        Ok(())
    }
}

/// A contraction number evaluated at one pair, with the images it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub tx: f64,
    pub ty: f64,
}

/// A contraction number bound to a map and metric.
///
/// For powered kinds `T^m` is built once up front.
pub struct ContractionNumber<'a> {
    kind: ContractionKind,
    map: SelfMap,
    metric: &'a dyn Metric,
}

impl<'a> ContractionNumber<'a> {
    pub fn new(kind: ContractionKind, t: &SelfMap, d: &'a dyn Metric) -> Result<Self> {
        let map = if kind.power > 1 {
            t.power(kind.power)?
        } else {
            t.clone()
        };
        Ok(ContractionNumber { kind, map, metric: d })
    }

    pub fn kind(&self) -> ContractionKind {
        self.kind
    }

    /// The map the terms are built from (`T` or `T^m`).
    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    pub fn metric(&self) -> &dyn Metric {
        self.metric
    }

    pub fn evaluate(&self, x: f64, y: f64) -> Result<Evaluation> {
        let tx = self.map.apply(x)?;
        let ty = self.map.apply(y)?;
        let value = max_of(&self.terms_from(x, y, tx, ty));
        Ok(Evaluation { value, tx, ty })
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        self.evaluate(x, y).map(|e| e.value)
    }

    /// The individual terms whose maximum is the number.
    pub fn terms(&self, x: f64, y: f64) -> Result<Vec<f64>> {
        let tx = self.map.apply(x)?;
        let ty = self.map.apply(y)?;
        Ok(self.terms_from(x, y, tx, ty))
    }

    fn terms_from(&self, x: f64, y: f64, tx: f64, ty: f64) -> Vec<f64> {
        let d = |a, b| self.metric.distance(a, b);
        let dxy = d(x, y);
        match self.kind.name {
            KindName::M1 => {
                let (dx, dy) = (d(x, tx), d(y, ty));
                vec![dxy, dx, dy, dx * dy / (1.0 + dxy), dx * dy / (1.0 + d(tx, ty))]
            }
            KindName::M2 => vec![dxy, d(tx, x), d(ty, y), d(tx, y), d(ty, x)],
            KindName::Rhoades => vec![dxy, d(x, tx), d(y, ty), d(x, ty), d(y, tx)],
            KindName::Pant => vec![d(x, tx), d(y, ty)],
            KindName::BpM => vec![dxy, d(x, tx), d(y, ty), (d(x, ty) + d(y, tx)) / 2.0],
            KindName::BpN => {
                let alpha = self.kind.alpha.unwrap_or(0.0);
                vec![dxy, d(x, tx), d(y, ty), alpha * (d(x, ty) + d(y, tx)) / 2.0]
            }
            KindName::Dist => vec![dxy],
        }
    }
}

fn max_of(terms: &[f64]) -> f64 {
    terms.iter().copied().fold(0.0, f64::max)
}

pub fn compute(kind: ContractionKind, t: &SelfMap, d: &dyn Metric, x: f64, y: f64) -> Result<f64> {
    ContractionNumber::new(kind, t, d)?.value(x, y)
}

/// `(x, M(x, y0))` for every `x`, in input order.
pub fn profile(kind: ContractionKind, t: &SelfMap, d: &dyn Metric, y0: f64, xs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let number = ContractionNumber::new(kind, t, d)?;
    number.map.apply(y0)?;
    xs.par_iter().map(|&x| number.value(x, y0).map(|v| (x, v))).collect()
}
