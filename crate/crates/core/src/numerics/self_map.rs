use super::interval::{Interval, EQ_TOL};
use super::piecewise::{Piece, PiecewiseFunc};
use crate::error::{Error, Result};

/// A piecewise function together with a domain it maps into itself.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfMap {
    func: PiecewiseFunc,
}

impl SelfMap {
    /// Checks that the pieces cover `domain` exactly and that every piece's
    /// image stays inside it.
    pub fn new(func: PiecewiseFunc, domain: Interval) -> Result<Self> {
        if *func.domain() != domain {
            return Err(Error::InvalidFunction(format!(
                "pieces cover {} but the map domain is {domain}",
                func.domain()
            )));
        }
        for piece in func.pieces() {
            let image = piece.image();
            if !domain.contains_interval(&image, EQ_TOL) {
                return Err(Error::Domain(format!(
                    "not a self-map: piece on {} has image {image} outside {domain}",
                    piece.domain()
                )));
            }
        }
        Ok(SelfMap { func })
    }

    pub fn from_func(func: PiecewiseFunc) -> Result<Self> {
        let domain = *func.domain();
        Self::new(func, domain)
    }

    pub fn identity(domain: Interval) -> Result<Self> {
        Self::from_func(PiecewiseFunc::new(vec![Piece::affine(domain, 1.0, 0.0)?])?)
    }

    pub fn constant(domain: Interval, value: f64) -> Result<Self> {
        Self::from_func(PiecewiseFunc::constant(domain, value)?)
    }

    pub fn func(&self) -> &PiecewiseFunc {
        &self.func
    }

    pub fn domain(&self) -> &Interval {
        self.func.domain()
    }

    pub fn apply(&self, x: f64) -> Result<f64> {
        self.func.eval(x)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.func.breakpoints()
    }

    /// The exact piecewise representation of the `m`-fold composition.
    pub fn power(&self, m: u32) -> Result<SelfMap> {
        if m == 0 {
            return Err(Error::Spec("power must be at least 1".into()));
        }
        let mut acc = self.func.clone();
        for _ in 1..m {
            acc = acc.then(&self.func)?;
        }
        SelfMap::from_func(acc)
    }
}
