//! Map / function definition files.
//!
//! A file holds one JSON object:
//!
//! ```text
//! {
//!   "domain": {"lo": "-inf", "hi": "inf", "lo_inc": false, "hi_inc": false},
//!   "pieces": [
//!     {"lo": "-inf", "hi": -1.0, "lo_inc": false, "hi_inc": false, "kind": "const", "value": 3.0},
//!     {"lo": -1.0, "hi": 1.0, "lo_inc": true, "hi_inc": true, "kind": "affine", "slope": 1.0, "intercept": 4.0}
//!   ]
//! }
//! ```
//!
//! Infinite endpoints are written as the strings `"inf"` / `"-inf"` (`"+inf"`
//! is accepted on input). Writing a parsed file reproduces it byte for byte
//! when it was produced by [`function_to_string`].

use std::fs;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Interval, Piece, PieceKind, PiecewiseFunc, SelfMap};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Endpoint(f64);

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            v if v == f64::INFINITY => s.serialize_str("inf"),
            v if v == f64::NEG_INFINITY => s.serialize_str("-inf"),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EndpointVisitor;

        impl Visitor<'_> for EndpointVisitor {
            type Value = Endpoint;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number or one of \"inf\", \"+inf\", \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Endpoint, E> {
                Ok(Endpoint(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Endpoint, E> {
                Ok(Endpoint(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Endpoint, E> {
                Ok(Endpoint(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Endpoint, E> {
                match v {
                    "inf" | "+inf" => Ok(Endpoint(f64::INFINITY)),
                    "-inf" => Ok(Endpoint(f64::NEG_INFINITY)),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(EndpointVisitor)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainDoc {
    lo: Endpoint,
    hi: Endpoint,
    lo_inc: bool,
    hi_inc: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum KindDoc {
    #[serde(rename = "const")]
    Const { value: f64 },
    #[serde(rename = "affine")]
    Affine { slope: f64, intercept: f64 },
}

#[derive(Debug, Serialize, Deserialize)]
struct PieceDoc {
    lo: Endpoint,
    hi: Endpoint,
    lo_inc: bool,
    hi_inc: bool,
    #[serde(flatten)]
    kind: KindDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    domain: DomainDoc,
    pieces: Vec<PieceDoc>,
}

impl DomainDoc {
    fn from_interval(i: &Interval) -> Self {
        DomainDoc {
            lo: Endpoint(i.lo()),
            hi: Endpoint(i.hi()),
            lo_inc: i.lo_inclusive(),
            hi_inc: i.hi_inclusive(),
        }
    }

    fn to_interval(&self) -> Result<Interval> {
        Interval::new(self.lo.0, self.hi.0, self.lo_inc, self.hi_inc)
    }
}

fn to_doc(f: &PiecewiseFunc) -> FunctionDoc {
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            let d = p.domain();
            PieceDoc {
                lo: Endpoint(d.lo()),
                hi: Endpoint(d.hi()),
                lo_inc: d.lo_inclusive(),
                hi_inc: d.hi_inclusive(),
                kind: match *p.kind() {
                    PieceKind::Constant { value } => KindDoc::Const { value },
                    PieceKind::Affine { slope, intercept } => KindDoc::Affine { slope, intercept },
                },
            }
        })
        .collect();
    FunctionDoc {
        domain: DomainDoc::from_interval(f.domain()),
        pieces,
    }
}

fn from_doc(doc: FunctionDoc) -> Result<PiecewiseFunc> {
    let domain = doc.domain.to_interval()?;
    let pieces = doc
        .pieces
        .into_iter()
        .map(|p| {
            let dom = Interval::new(p.lo.0, p.hi.0, p.lo_inc, p.hi_inc)?;
            match p.kind {
                KindDoc::Const { value } => Piece::constant(dom, value),
                KindDoc::Affine { slope, intercept } => Piece::affine(dom, slope, intercept),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PiecewiseFunc::with_domain(domain, pieces)
}

pub fn parse_function(text: &str) -> Result<PiecewiseFunc> {
    from_doc(serde_json::from_str(text)?)
}

/// Parses a map file and checks that it is closed on its domain.
pub fn parse_map(text: &str) -> Result<SelfMap> {
    SelfMap::from_func(parse_function(text)?)
}

/// Canonical text form: pretty-printed JSON with a trailing newline.
pub fn function_to_string(f: &PiecewiseFunc) -> String {
    let mut s = serde_json::to_string_pretty(&to_doc(f)).expect("function documents always serialize");
    s.push('\n');
    s
}

pub fn map_to_string(t: &SelfMap) -> String {
    function_to_string(t.func())
}

pub fn read_function(path: impl AsRef<Path>) -> Result<PiecewiseFunc> {
    parse_function(&fs::read_to_string(path)?)
}

pub fn read_map(path: impl AsRef<Path>) -> Result<SelfMap> {
    parse_map(&fs::read_to_string(path)?)
}

pub fn write_function(path: impl AsRef<Path>, f: &PiecewiseFunc) -> Result<()> {
    fs::write(path, function_to_string(f)).map_err(Error::from)
}

pub fn write_map(path: impl AsRef<Path>, t: &SelfMap) -> Result<()> {
    write_function(path, t.func())
}
