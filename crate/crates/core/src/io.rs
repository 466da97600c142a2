//! Line-oriented JSON files for links and one-parameter families.
//!
//! Every non-blank line is a JSON object. A component line has the keys
//! `x`, `y`, `z`, `w`, each a list of coefficients, lowest degree first.
//! Coefficients are integers or strings `"n"` / `"p/q"`. A header line may
//! carry `orientations` (one `1` or `-1` per component) and, for a family,
//! `parameter` and `grid`. In a family file a coefficient may itself be a
//! list: the coefficients of a polynomial in the parameter.
//!
//! ```text
//! {"orientations": [1, -1]}
//! {"x": [1, 0, -1], "y": [0, 2], "z": [0], "w": [1, 0, 1]}
//! {"x": [2], "y": [0], "z": [0, 2], "w": [1, 0, 1]}
//! ```

use std::path::Path;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{format_rational, parse_rational, Rational, UPoly};
use crate::curve::{CurveError, Link, RationalSpaceCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, field {field}: {message}")]
    Parse { line: usize, field: String, message: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

const COORDS: [&str; 4] = ["x", "y", "z", "w"];

/// A family `tau -> L(tau)` whose coefficients are polynomials in `tau`,
/// together with the grid of parameter values to scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub parameter: String,
    pub grid: Vec<Rational>,
    /// Per component and coordinate, the coefficients in `t`, each a
    /// polynomial in the parameter.
    pub components: Vec<[Vec<UPoly>; 4]>,
    pub orientations: Option<Vec<i8>>,
}

impl Family {
    pub fn member(&self, tau: &Rational) -> Result<Link, CurveError> {
        let comps = self
            .components
            .iter()
            .map(|c| {
                let coords = c.clone().map(|coeffs| UPoly::from_coeffs(coeffs.iter().map(|p| p.eval(tau)).collect()));
                RationalSpaceCurve::from_coords(coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Link::new(comps, self.orientations.clone())
    }
}

/// Contents of a curve file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveInput {
    Link(Link),
    Family(Family),
}

impl CurveInput {
    pub fn into_link(self) -> Option<Link> {
        match self {
            CurveInput::Link(l) => Some(l),
            CurveInput::Family(_) => None,
        }
    }
}

fn parse_err(line: usize, field: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Parse { line, field: field.into(), message: message.into() }
}

fn scalar(v: &Value, line: usize, field: &str) -> Result<Rational, IoError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::algebra::rat)
            .ok_or_else(|| parse_err(line, field, format!("{n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => parse_rational(s).ok_or_else(|| parse_err(line, field, format!("cannot read {s:?} as a rational"))),
        other => Err(parse_err(line, field, format!("expected a number, found {other}"))),
    }
}

fn coefficient(v: &Value, family: bool, line: usize, field: &str) -> Result<UPoly, IoError> {
    match v {
        Value::Array(items) if family => {
            let c = items.iter().map(|x| scalar(x, line, field)).collect::<Result<Vec<_>, _>>()?;
            Ok(UPoly::from_coeffs(c))
        }
        Value::Array(_) => Err(parse_err(line, field, "parameter dependent coefficient outside a family")),
        _ => Ok(UPoly::constant(scalar(v, line, field)?)),
    }
}

/// Parses the text of a curve file.
pub fn parse_curve_str(text: &str) -> Result<CurveInput, IoError> {
    let mut orientations: Option<Vec<i8>> = None;
    let mut parameter: Option<(String, Vec<Rational>)> = None;
    let mut raw: Vec<(usize, Map<String, Value>)> = Vec::new();
    for (k, l) in text.lines().enumerate() {
        let line = k + 1;
        if l.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(l).map_err(|e| parse_err(line, "-", e.to_string()))?;
        let Value::Object(obj) = v else {
            return Err(parse_err(line, "-", "expected a JSON object"));
        };
        if COORDS.iter().any(|c| obj.contains_key(*c)) {
            raw.push((line, obj));
            continue;
        }
        for (key, val) in &obj {
            match key.as_str() {
                "orientations" => {
                    let Value::Array(items) = val else {
                        return Err(parse_err(line, key, "expected a list"));
                    };
                    let flags = items
                        .iter()
                        .map(|x| match x.as_i64() {
                            Some(1) => Ok(1),
                            Some(-1) => Ok(-1),
                            _ => Err(parse_err(line, key, format!("orientation flag {x} is not 1 or -1"))),
                        })
                        .collect::<Result<Vec<i8>, _>>()?;
                    orientations = Some(flags);
                }
                "parameter" => {
                    let name = val.as_str().ok_or_else(|| parse_err(line, key, "expected a string"))?;
                    let grid = match obj.get("grid") {
                        Some(Value::Array(g)) => g.iter().map(|x| scalar(x, line, "grid")).collect::<Result<Vec<_>, _>>()?,
                        _ => return Err(parse_err(line, "grid", "a family needs a grid list")),
                    };
                    parameter = Some((name.to_string(), grid));
                }
                "grid" => {}
                other => return Err(parse_err(line, other, "unknown key")),
            }
        }
    }
    if raw.is_empty() {
        return Err(parse_err(0, "-", "no components"));
    }
    let family = parameter.is_some();
    let mut components = Vec::new();
    for (line, obj) in &raw {
        if let Some(key) = obj.keys().find(|k| !COORDS.contains(&k.as_str())) {
            return Err(parse_err(*line, key, "unknown key"));
        }
        let mut coords: [Vec<UPoly>; 4] = Default::default();
        for (i, name) in COORDS.iter().enumerate() {
            let Some(val) = obj.get(*name) else {
                return Err(parse_err(*line, *name, "missing coordinate"));
            };
            let Value::Array(items) = val else {
                return Err(parse_err(*line, *name, "expected a list of coefficients"));
            };
            coords[i] = items.iter().map(|x| coefficient(x, family, *line, name)).collect::<Result<_, _>>()?;
        }
        if !family && coords.iter().all(|c| c.iter().all(UPoly::is_zero)) {
            return Err(parse_err(*line, "x,y,z,w", "all four coordinates are zero"));
        }
        components.push(coords);
    }
    if let Some(o) = &orientations {
        if o.len() != components.len() {
            return Err(parse_err(0, "orientations", format!("{} flags for {} components", o.len(), components.len())));
        }
    }
    if let Some((parameter, grid)) = parameter {
        return Ok(CurveInput::Family(Family { parameter, grid, components, orientations }));
    }
    let comps = components
        .into_iter()
        .map(|c| RationalSpaceCurve::from_coords(c.map(|k| UPoly::from_coeffs(k.iter().map(|p| p.coeff(0)).collect()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveInput::Link(Link::new(comps, orientations)?))
}

/// `parse_curve_file(path)`.
pub fn parse_curve_file(path: &Path) -> Result<CurveInput, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IoError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_curve_str(&text)
}

fn coeffs_json(p: &UPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
}

fn zero_safe(p: &UPoly) -> Value {
    if p.is_zero() {
        json!(["0"])
    } else {
        coeffs_json(p)
    }
}

/// Serializes a link; `parse_curve_str` reads it back exactly.
pub fn write_link(link: &Link) -> String {
    let mut out = String::new();
    if let Some(o) = link.orientations() {
        out.push_str(&json!({ "orientations": o }).to_string());
        out.push('\n');
    }
    for c in link.components() {
        let mut obj = Map::new();
        for (i, name) in COORDS.iter().enumerate() {
            obj.insert(name.to_string(), zero_safe(c.coord(i)));
        }
        out.push_str(&Value::Object(obj).to_string());
        out.push('\n');
    }
    out
}

/// Serializes a family.
pub fn write_family(family: &Family) -> String {
    let mut header = Map::new();
    if let Some(o) = &family.orientations {
        header.insert("orientations".into(), json!(o));
    }
    header.insert("parameter".into(), json!(family.parameter));
    header.insert("grid".into(), Value::Array(family.grid.iter().map(|g| Value::String(format_rational(g))).collect()));
    let mut out = Value::Object(header).to_string();
    out.push('\n');
    for c in &family.components {
        let mut obj = Map::new();
        for (i, name) in COORDS.iter().enumerate() {
            let items: Vec<Value> = c[i]
                .iter()
                .map(|p| if p.deg() == 0 || p.is_zero() { Value::String(format_rational(&p.coeff(0))) } else { coeffs_json(p) })
                .collect();
            obj.insert(name.to_string(), Value::Array(items));
        }
        out.push_str(&Value::Object(obj).to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn model_file() {
        let l = parse_curve_str(r#"{"x":[1,0,-1],"y":[0,1,0,-1],"z":[0,-1],"w":[1]}"#)
            .unwrap()
            .into_link()
            .unwrap();
        assert_eq!(l.component(0), &RationalSpaceCurve::model(&rat(-1)));
        assert_eq!(l.component(0).degree(), 3);
    }

    #[test]
    fn zero_quadruple_is_a_parse_error() {
        let e = parse_curve_str(r#"{"x":[0],"y":[0],"z":[0],"w":[0]}"#).unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }));
    }

    #[test]
    fn oriented_two_components() {
        let text = "{\"orientations\": [1, -1]}\n{\"x\":[1,0,-1],\"y\":[0,2],\"z\":[0],\"w\":[1,0,1]}\n{\"x\":[2],\"y\":[0],\"z\":[0,2],\"w\":[1,0,1]}\n";
        let l = parse_curve_str(text).unwrap().into_link().unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.orientations(), Some(&[1i8, -1][..]));
    }

    #[test]
    fn errors_name_line_and_field() {
        let text = "{\"x\":[1],\"y\":[0],\"z\":[0],\"w\":[1]}\n{\"x\":[1],\"y\":[\"a/b\"],\"z\":[0],\"w\":[1]}";
        match parse_curve_str(text) {
            Err(IoError::Parse { line, field, .. }) => assert_eq!((line, field.as_str()), (2, "y")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_curve_str("{\"x\":[1.5],\"y\":[0],\"z\":[0],\"w\":[1]}"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_curve_str("{\"x\":[1],\"y\":[0],\"z\":[0]}"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_curve_str(""), Err(IoError::Parse { .. })));
    }

    #[test]
    fn fractions_round_trip() {
        let c = RationalSpaceCurve::new(
            UPoly::from_coeffs(vec![ratio(1, 3), rat(0), ratio(-7, 2)]),
            UPoly::zero(),
            UPoly::from_ints(&[0, 5]),
            UPoly::one(),
        )
        .unwrap();
        let l = Link::new(vec![c], Some(vec![-1])).unwrap();
        assert_eq!(parse_curve_str(&write_link(&l)).unwrap(), CurveInput::Link(l));
    }

    #[test]
    fn model_family() {
        let text = "{\"parameter\":\"tau\",\"grid\":[\"-1\",\"1/2\"]}\n{\"x\":[[0,-1],0,-1],\"y\":[0,[0,-1],0,-1],\"z\":[0,-1],\"w\":[1]}";
        let CurveInput::Family(f) = parse_curve_str(text).unwrap() else { panic!("family expected") };
        assert_eq!(f.grid, vec![rat(-1), ratio(1, 2)]);
        for tau in &f.grid {
            assert_eq!(f.member(tau).unwrap().component(0), &RationalSpaceCurve::model(tau));
        }
        assert_eq!(parse_curve_str(&write_family(&f)).unwrap(), CurveInput::Family(f));
    }
}
