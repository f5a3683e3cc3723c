use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parse::{parse_polynomial, ParseError};
use crate::arith::{Field, Rational};
use crate::poly::{affine_vars, dehomogenize, MultiPoly, PolyError, Vars};
use crate::proj::{AnyMap, ProjError, ProjMap, ProjPoint, Space};

pub const SCHEMA_VERSION: &str = "1";

/// JSON description of a self-map.
///
/// P² components are forms in `z0, z1, z2`. P¹×P¹ components are affine
/// polynomials in `z1, z2` listed as `[D1, N1, D2, N2]`, meaning
/// `f1 = N1 / D1` and `f2 = N2 / D2`; they are bihomogenized on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub schema_version: String,
    pub space: Space,
    /// `"Q"` or `"Q(i)"`.
    pub field: String,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapFileError {
    #[error("unsupported schema version {0:?}")]
    SchemaVersion(String),
    #[error("unknown field {0:?} (expected \"Q\" or \"Q(i)\")")]
    UnknownField(String),
    #[error("component {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

fn parse_components<F: Field>(file: &MapFile, vars: &Vars) -> Result<Vec<MultiPoly<F>>, MapFileError> {
    file.components
        .iter()
        .enumerate()
        .map(|(index, s)| parse_polynomial(s, vars).map_err(|source| MapFileError::Parse { index, source }))
        .collect()
}

fn build<F: Field>(file: &MapFile) -> Result<ProjMap<F>, MapFileError> {
    let expected = file.space.ncoords();
    if file.components.len() != expected {
        return Err(ProjError::WrongComponentCount { expected, actual: file.components.len() }.into());
    }
    match file.space {
        Space::P2 => Ok(ProjMap::new(Space::P2, Space::P2, parse_components(file, &Space::P2.vars())?)?),
        Space::P1xP1 => {
            let c = parse_components::<F>(file, &affine_vars())?;
            for pair in c.chunks(2) {
                if pair.iter().all(|p| p.is_zero()) {
                    return Err(ProjError::AllZeroComponents.into());
                }
            }
            Ok(ProjMap::from_affine((&c[1], &c[0]), (&c[3], &c[2]))?)
        }
    }
}

impl MapFile {
    pub fn from_json(text: &str) -> Result<MapFile, MapFileError> {
        serde_json::from_str(text).map_err(|e| MapFileError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_map(&self) -> Result<AnyMap, MapFileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(MapFileError::SchemaVersion(self.schema_version.clone()));
        }
        match self.field.as_str() {
            "Q" => Ok(AnyMap::Rational(build(self)?)),
            "Q(i)" => Ok(AnyMap::Gaussian(build(self)?)),
            other => Err(MapFileError::UnknownField(other.to_string())),
        }
    }

    pub fn from_map<F: Field>(f: &ProjMap<F>, name: Option<&str>) -> Result<MapFile, PolyError> {
        if !f.is_self_map() {
            return Err(PolyError::VariableMismatch);
        }
        let components = match f.source() {
            Space::P2 => f.components().iter().map(|c| c.to_string()).collect(),
            Space::P1xP1 => {
                let av = affine_vars();
                f.components().iter().map(|c| dehomogenize(c, &[0, 2], &av).to_string()).collect()
            }
        };
        Ok(MapFile {
            schema_version: SCHEMA_VERSION.into(),
            space: f.source(),
            field: F::NAME.into(),
            components,
            name: name.map(str::to_string),
            provenance: None,
        })
    }

    pub fn from_any(f: &AnyMap, name: Option<&str>) -> Result<MapFile, PolyError> {
        match f {
            AnyMap::Rational(g) => MapFile::from_map(g, name),
            AnyMap::Gaussian(g) => MapFile::from_map(g, name),
        }
    }
}

/// Parses a constant expression such as `-3/4` or `1 + 2*i`.
pub fn parse_scalar<F: Field>(text: &str) -> Result<F, ParseError> {
    let p: MultiPoly<F> = parse_polynomial(text, &Vars::new::<&str>(&[]))?;
    Ok(p.constant_value().unwrap_or_else(F::zero))
}

/// Parses `"a,b;c,d"` into pairs of rationals.
pub fn parse_pairs(text: &str) -> Result<Vec<(Rational, Rational)>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        let parts: Vec<&str> = chunk.split(',').collect();
        if parts.len() != 2 {
            return Err(ParseError::Syntax { offset, message: "expected `a,b`".into() });
        }
        let shift = |e: ParseError, by: usize| match e {
            ParseError::Syntax { offset, message } => ParseError::Syntax { offset: offset + by, message },
            other => other,
        };
        let a = parse_scalar(parts[0]).map_err(|e| shift(e, offset))?;
        let b = parse_scalar(parts[1]).map_err(|e| shift(e, offset + parts[0].len() + 1))?;
        out.push((a, b));
        offset += chunk.len() + 1;
    }
    Ok(out)
}

/// Parses `"a,b"` (entries may be `inf`) into a point of P¹×P¹.
pub fn parse_center<F: Field>(text: &str) -> Result<ProjPoint<F>, ParseError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(ParseError::Syntax { offset: 0, message: "expected `a,b`".into() });
    }
    let coord = |s: &str| -> Result<Option<F>, ParseError> {
        if s.trim() == "inf" {
            Ok(None)
        } else {
            parse_scalar(s).map(Some)
        }
    };
    Ok(ProjPoint::from_affine(coord(parts[0])?, coord(parts[1])?))
}
