use std::collections::BTreeMap;
use std::path::Path;

use hodgejump::coeff::{parse_gaussian, parse_poly, GaussianRational, Params, Point, Poly};
use hodgejump::exterior::{has_errors, monomial, ScalarSpec, Severity, VectorForm};
use hodgejump::lab::FreeComplex;
use hodgejump::linalg::PolyMatrix;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A manifest document, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Manifest {
    LieAlgebra(LieAlgebraManifest),
    FreeComplex(FreeComplexManifest),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraManifest {
    pub name: String,
    pub dimension: usize,
    /// `d(phi_k) += coefficient * monomial`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<StructureConstant>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    /// First-order deformation `sum coefficient * theta_i (x) phibar_lambda`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deformation: Vec<DeformationEntry>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstant {
    pub k: usize,
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationEntry {
    pub i: usize,
    pub lambda: usize,
    pub coefficient: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Truncation order for `mc` and the oracle family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    /// Named sample points, `name=value` pairs separated by commas.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, String>,
    /// Scale applied to a sample point before the oracle runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_scale: Option<String>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.order.is_none() && self.points.is_empty() && self.ray_scale.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeComplexManifest {
    pub name: String,
    #[serde(default = "default_parameter")]
    pub parameter: String,
    pub ranks: Vec<usize>,
    /// `differentials[q]` is the `ranks[q+1] x ranks[q]` matrix of `d^q`, row by row.
    pub differentials: Vec<Vec<Vec<String>>>,
}

fn default_parameter() -> String {
    "t".to_string()
}

/// A structure with its optional first-order deformation.
#[derive(Clone, Debug)]
pub struct Structure {
    pub name: String,
    pub spec: ScalarSpec,
    pub params: Params,
    pub psi1: Option<VectorForm<Poly>>,
    pub options: Options,
}

#[derive(Clone, Debug)]
pub enum Loaded {
    Structure(Box<Structure>),
    Complex { name: String, complex: FreeComplex },
}

const BUILTINS: [(&str, &str); 4] = [
    ("iwasawa", include_str!("../manifests/iwasawa.json")),
    ("torus3", include_str!("../manifests/torus3.json")),
    ("lab-t", include_str!("../manifests/lab-t.json")),
    ("lab-t2", include_str!("../manifests/lab-t2.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    BUILTINS.iter().find(|(n, _)| *n == stem).map(|(_, text)| *text)
}

/// Read a manifest from a file, falling back to the builtin of that name.
pub fn resolve(arg: &str) -> Result<(String, String), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        return Ok((arg.to_string(), text));
    }
    match builtin(arg) {
        Some(text) => Ok((arg.to_string(), text.to_string())),
        None => Err(CliError::Usage(format!(
            "{arg}: no such file and no builtin of that name (builtins: {})",
            builtin_names().join(", ")
        ))),
    }
}

/// 1-based line of the first occurrence of `"key": value` (whitespace ignored).
fn line_of(text: &str, key: &str, value: Option<&str>) -> usize {
    let pattern = match value {
        Some(v) => format!("\"{key}\":{v}"),
        None => format!("\"{key}\":"),
    };
    text.lines()
        .position(|l| {
            let squeezed: String = l.chars().filter(|c| !c.is_whitespace()).collect();
            squeezed.contains(&pattern)
        })
        .map_or(1, |i| i + 1)
}

fn invalid(source: &str, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{source}:{line}: {msg}"))
}

pub fn parse_manifest(text: &str) -> Result<Manifest, serde_json::Error> {
    serde_json::from_str(text)
}

/// Parse, check against the schema and build the mathematical object.
pub fn load(source: &str, text: &str) -> Result<(Manifest, Loaded), CliError> {
    let manifest = parse_manifest(text).map_err(|e| invalid(source, e.line().max(1), format!("column {}: {e}", e.column())))?;
    let loaded = match &manifest {
        Manifest::LieAlgebra(m) => Loaded::Structure(Box::new(build_structure(source, text, m)?)),
        Manifest::FreeComplex(m) => Loaded::Complex { name: m.name.clone(), complex: build_complex(source, text, m)? },
    };
    Ok((manifest, loaded))
}

fn build_structure(source: &str, text: &str, m: &LieAlgebraManifest) -> Result<Structure, CliError> {
    let n = m.dimension;
    if n == 0 || n > monomial::MAX_DIM {
        return Err(invalid(source, line_of(text, "dimension", None), format!("dimension must be in 1..={}", monomial::MAX_DIM)));
    }
    let mut constants = Vec::with_capacity(m.structure.len());
    for s in &m.structure {
        let line = line_of(text, "monomial", Some(&format!("\"{}\"", s.monomial.replace(' ', ""))));
        let (mask, sign) = monomial::parse(&s.monomial, n).map_err(|e| invalid(source, line, e))?;
        let c = parse_gaussian(&s.coefficient).map_err(|e| invalid(source, line, e))?;
        let c = if sign < 0 { -c } else { c };
        constants.push((s.k, mask, c));
    }
    let spec = ScalarSpec::from_constants(n, &constants).map_err(|e| invalid(source, line_of(text, "structure", None), e))?;
    let diags = spec.validate();
    if has_errors(&diags) {
        let d = diags.iter().find(|d| d.severity == Severity::Error).expect("has an error");
        let line = d
            .generator
            .as_deref()
            .and_then(|g| g[1..].parse::<usize>().ok())
            .map_or_else(|| line_of(text, "structure", None), |k| line_of(text, "k", Some(&k.to_string())));
        return Err(invalid(source, line, d));
    }
    for d in &diags {
        log::warn!("{source}: {d}");
    }
    let params = Params::new(&m.parameters);
    let psi1 = if m.deformation.is_empty() {
        None
    } else {
        let mut psi = VectorForm::zero(n, 1);
        for e in &m.deformation {
            let line = line_of(text, "coefficient", Some(&format!("\"{}\"", e.coefficient.replace(' ', ""))));
            let c = parse_poly(&e.coefficient, &m.parameters).map_err(|err| invalid(source, line, err))?;
            let term = VectorForm::term(n, e.i, &[e.lambda], c).map_err(|err| invalid(source, line, err))?;
            psi = psi.try_add(&term).map_err(|err| invalid(source, line, err))?;
        }
        let diags = hodgejump::defo::validate_first_order(&spec, &psi).map_err(|e| invalid(source, line_of(text, "deformation", None), e))?;
        if let Some(d) = diags.first() {
            return Err(invalid(source, line_of(text, "deformation", None), d));
        }
        Some(psi)
    };
    if let Some(s) = &m.options.ray_scale {
        parse_gaussian(s).map_err(|e| invalid(source, line_of(text, "ray_scale", None), e))?;
    }
    for (name, p) in &m.options.points {
        parse_point(&params, p).map_err(|e| invalid(source, line_of(text, name, None), e))?;
    }
    Ok(Structure { name: m.name.clone(), spec, params, psi1, options: m.options.clone() })
}

fn build_complex(source: &str, text: &str, m: &FreeComplexManifest) -> Result<FreeComplex, CliError> {
    let names = vec![m.parameter.clone()];
    let line = line_of(text, "differentials", None);
    let mut mats = Vec::with_capacity(m.differentials.len());
    for rows in &m.differentials {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_poly(e, &names)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| invalid(source, line, e))?;
        let cols = m.ranks.get(mats.len()).copied().unwrap_or(0);
        let mat = if parsed.is_empty() { PolyMatrix::zeros(0, cols) } else { PolyMatrix::from_rows(parsed).map_err(|e| invalid(source, line, e))? };
        mats.push(mat);
    }
    let complex = FreeComplex::new(m.parameter.clone(), m.ranks.clone(), mats).map_err(|e| invalid(source, line, e))?;
    if let Some(d) = complex.validate() {
        return Err(invalid(source, line, d));
    }
    Ok(complex)
}

/// `name=value` pairs separated by commas; unnamed parameters are zero.
pub fn parse_point(params: &Params, text: &str) -> Result<Point, hodgejump::Error> {
    let mut values: Vec<(String, GaussianRational)> = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| hodgejump::Error::Parse(format!("`{part}` is not name=value")))?;
        values.push((name.trim().to_string(), parse_gaussian(value.trim())?));
    }
    Point::with_defaults(params, values.iter().map(|(n, v)| (n.as_str(), v.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in builtin_names() {
            let (_, text) = resolve(name).unwrap();
            load(name, &text).unwrap();
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = "{\n  \"kind\": \"free-complex\",\n  \"name\": \"x\",\n  \"ranks\": [1],\n  \"differentials\": [],\n  \"extra\": 1\n}";
        let Err(CliError::Validation(msg)) = load("x.json", text) else { panic!("accepted an unknown field") };
        assert!(msg.starts_with("x.json:"), "{msg}");
    }

    #[test]
    fn jacobi_violation_is_anchored() {
        let text = r#"{
  "kind": "lie-algebra",
  "name": "bad",
  "dimension": 3,
  "structure": [
    {"k": 2, "monomial": "f1^c1", "coefficient": "1"},
    {"k": 3, "monomial": "f2^c2", "coefficient": "1"}
  ]
}"#;
        let Err(CliError::Validation(msg)) = load("bad.json", text) else { panic!("accepted d^2 != 0") };
        assert!(msg.starts_with("bad.json:7:"), "{msg}");
    }

    #[test]
    fn points_parse() {
        let params = Params::new(["a", "b"]);
        let p = parse_point(&params, "b=1/2").unwrap();
        assert_eq!(p.get("a"), Some(&GaussianRational::from_integer(0)));
        assert_eq!(p.get("b"), Some(&GaussianRational::from_ratio(1, 2)));
        assert!(parse_point(&params, "c=1").is_err());
    }
}
