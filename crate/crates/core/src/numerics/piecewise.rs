use serde::Serialize;

use super::interval::Interval;
use crate::error::{Error, Result};

/// Closed form of a single piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceKind {
    Constant { value: f64 },
    Affine { slope: f64, intercept: f64 },
}

impl PieceKind {
    pub fn value_at(&self, x: f64) -> f64 {
        match *self {
            PieceKind::Constant { value } => value,
            PieceKind::Affine { slope, intercept } => slope * x + intercept,
        }
    }

    /// `self ∘ (a·x + b)`.
    fn after_affine(&self, a: f64, b: f64) -> PieceKind {
        match *self {
            PieceKind::Constant { value } => PieceKind::Constant { value },
            PieceKind::Affine { slope, intercept } => PieceKind::Affine {
                slope: slope * a,
                intercept: slope * b + intercept,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    domain: Interval,
    kind: PieceKind,
}

impl Piece {
    pub fn new(domain: Interval, kind: PieceKind) -> Result<Self> {
        let finite = match kind {
            PieceKind::Constant { value } => value.is_finite(),
            PieceKind::Affine { slope, intercept } => slope.is_finite() && intercept.is_finite(),
        };
        if !finite {
            return Err(Error::InvalidFunction(format!(
                "piece on {domain} has a non-finite coefficient"
            )));
        }
        Ok(Piece { domain, kind })
    }

    pub fn constant(domain: Interval, value: f64) -> Result<Self> {
        Self::new(domain, PieceKind::Constant { value })
    }

    pub fn affine(domain: Interval, slope: f64, intercept: f64) -> Result<Self> {
        Self::new(domain, PieceKind::Affine { slope, intercept })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn kind(&self) -> &PieceKind {
        &self.kind
    }

    /// Slope and intercept when the piece is a non-degenerate affine map.
    fn affine_coeffs(&self) -> Option<(f64, f64)> {
        match self.kind {
            PieceKind::Affine { slope, intercept } if slope != 0.0 && !self.domain.is_point() => {
                Some((slope, intercept))
            }
            _ => None,
        }
    }

    /// The exact image of the piece's domain.
    pub fn image(&self) -> Interval {
        let d = &self.domain;
        match self.affine_coeffs() {
            None => {
                let v = self.kind.value_at(if d.lo().is_finite() { d.lo() } else { d.hi() });
                let v = if v.is_finite() { v } else { self.kind.value_at(0.0) };
                Interval::point(v).expect("finite constant")
            }
            Some((a, b)) => {
                let at_lo = a * d.lo() + b;
                let at_hi = a * d.hi() + b;
                let built = if a > 0.0 {
                    Interval::new(at_lo, at_hi, d.lo_inclusive(), d.hi_inclusive())
                } else {
                    Interval::new(at_hi, at_lo, d.hi_inclusive(), d.lo_inclusive())
                };
                built.expect("affine image of a valid interval is valid")
            }
        }
    }
}

/// Approach direction for one-sided limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A real function given by ordered constant/affine pieces whose domains
/// tile a single interval with no gaps or overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFunc {
    pieces: Vec<Piece>,
    domain: Interval,
}

impl PiecewiseFunc {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidFunction("function has no pieces".into()));
        }
        pieces.sort_by(|a, b| {
            a.domain
                .lo()
                .total_cmp(&b.domain.lo())
                .then_with(|| b.domain.lo_inclusive().cmp(&a.domain.lo_inclusive()))
        });
        for pair in pieces.windows(2) {
            let (a, b) = (&pair[0].domain, &pair[1].domain);
            if a.hi() != b.lo() {
                let what = if a.hi() < b.lo() { "gap" } else { "overlap" };
                return Err(Error::InvalidFunction(format!("{what} between pieces {a} and {b}")));
            }
            match (a.hi_inclusive(), b.lo_inclusive()) {
                (true, true) => {
                    return Err(Error::InvalidFunction(format!(
                        "pieces {a} and {b} overlap at {}",
                        a.hi()
                    )))
                }
                (false, false) => {
                    return Err(Error::InvalidFunction(format!(
                        "point {} is covered by neither {a} nor {b}",
                        a.hi()
                    )))
                }
                _ => {}
            }
        }
        let first = pieces[0].domain;
        let last = pieces[pieces.len() - 1].domain;
        let domain = Interval::new(first.lo(), last.hi(), first.lo_inclusive(), last.hi_inclusive())?;
        Ok(PiecewiseFunc { pieces, domain })
    }

    /// Like [`PiecewiseFunc::new`] but also requires the pieces to cover
    /// exactly `domain`.
    pub fn with_domain(domain: Interval, pieces: Vec<Piece>) -> Result<Self> {
        let f = Self::new(pieces)?;
        if f.domain != domain {
            return Err(Error::InvalidFunction(format!(
                "pieces cover {} but the declared domain is {domain}",
                f.domain
            )));
        }
        Ok(f)
    }

    pub fn constant(domain: Interval, value: f64) -> Result<Self> {
        Self::new(vec![Piece::constant(domain, value)?])
    }

    pub fn affine(domain: Interval, slope: f64, intercept: f64) -> Result<Self> {
        Self::new(vec![Piece::affine(domain, slope, intercept)?])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn piece_at(&self, x: f64) -> Option<&Piece> {
        // Pieces are sorted, so the first piece whose upper end reaches x is the
        // only candidate.
        let idx = self.pieces.partition_point(|p| {
            let d = p.domain;
            d.hi() < x || (d.hi() == x && !d.hi_inclusive())
        });
        self.pieces.get(idx).filter(|p| p.domain.contains(x))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.piece_at(x)
            .map(|p| p.kind.value_at(x))
            .ok_or_else(|| Error::Domain(format!("{x} is outside the domain {}", self.domain)))
    }

    /// Exact one-sided limit at `b` from the adjacent piece's closed form.
    pub fn one_sided_limit(&self, b: f64, side: Side) -> Result<f64> {
        let adjacent = self.pieces.iter().find(|p| {
            let d = p.domain;
            match side {
                Side::Left => d.lo() < b && b <= d.hi(),
                Side::Right => d.lo() <= b && b < d.hi(),
            }
        });
        adjacent.map(|p| p.kind.value_at(b)).ok_or_else(|| {
            Error::Domain(format!(
                "no piece approaches {b} from the {} within {}",
                side.as_str(),
                self.domain
            ))
        })
    }

    /// Sorted finite endpoints shared by adjacent pieces.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.pieces.windows(2).map(|w| w[0].domain.hi()).collect();
        out.dedup();
        out
    }

    /// Merges neighbouring pieces that share an identical closed form.
    pub fn simplified(&self) -> PiecewiseFunc {
        let mut merged: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            if let Some(prev) = merged.last_mut() {
                if prev.kind == piece.kind {
                    let d = Interval::new(
                        prev.domain.lo(),
                        piece.domain.hi(),
                        prev.domain.lo_inclusive(),
                        piece.domain.hi_inclusive(),
                    )
                    .expect("adjacent pieces form an interval");
                    prev.domain = d;
                    continue;
                }
            }
            merged.push(*piece);
        }
        PiecewiseFunc {
            pieces: merged,
            domain: self.domain,
        }
    }

    /// `outer ∘ self`, split at the exact preimages of `outer`'s breakpoints.
    ///
    /// Fails when the image of some piece of `self` leaves `outer`'s domain.
    pub fn then(&self, outer: &PiecewiseFunc) -> Result<PiecewiseFunc> {
        let mut pieces = Vec::new();
        for inner in &self.pieces {
            let Some((a, b)) = inner.affine_coeffs() else {
                let c = inner.image().lo();
                let value = outer.eval(c).map_err(|_| {
                    Error::Domain(format!(
                        "composition: value {c} of piece on {} leaves the outer domain {}",
                        inner.domain, outer.domain
                    ))
                })?;
                pieces.push(Piece::constant(inner.domain, value)?);
                continue;
            };
            if !outer.domain.contains_interval(&inner.image(), 0.0) {
                return Err(Error::Domain(format!(
                    "composition: image {} of piece on {} leaves the outer domain {}",
                    inner.image(),
                    inner.domain,
                    outer.domain
                )));
            }
            let start = pieces.len();
            for q in &outer.pieces {
                let pre = preimage(&q.domain, a, b);
                if let Some(dom) = pre.intersect(&inner.domain) {
                    pieces.push(Piece::new(dom, q.kind.after_affine(a, b))?);
                }
            }
            if a < 0.0 {
                pieces[start..].reverse();
            }
        }
        Ok(PiecewiseFunc::with_domain(self.domain, pieces)?.simplified())
    }
}

/// `{x : a·x + b ∈ target}` for `a ≠ 0`.
fn preimage(target: &Interval, a: f64, b: f64) -> Interval {
    let lo = (target.lo() - b) / a;
    let hi = (target.hi() - b) / a;
    let built = if a > 0.0 {
        Interval::new(lo, hi, target.lo_inclusive(), target.hi_inclusive())
    } else {
        Interval::new(hi, lo, target.hi_inclusive(), target.lo_inclusive())
    };
    built.expect("preimage of a valid interval under a bijection is valid")
}
