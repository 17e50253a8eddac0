//! JSON data-transfer types for parameter arrays, matrices, reports, and
//! polynomial data.
//!
//! Scalars travel as strings ("a" or "a/b" over the rationals, residue
//! strings over a prime field) so that every value round-trips exactly. The
//! field is named either by the string "rational" or by an object
//! {"prime": p}. Struct keys serialize in the documented schema order,
//! which keeps output byte-identical for identical input.

use crate::exactfield::{FieldSpec, FieldValue, Poly, SquareMatrix};
use crate::params::{ParameterData, ValidationReport};
use crate::relations::{CommutatorReport, RelationScalars};
use crate::system::RecognitionResult;
use serde::{Deserialize, Serialize};
use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IoError {
    Json(String),
    UnknownField(String),
    BadValue(String),
    BadShape(String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Json(msg) => write!(f, "malformed JSON: {msg}"),
            IoError::UnknownField(name) => write!(f, "unknown field name: {name}"),
            IoError::BadValue(s) => write!(f, "cannot parse scalar: {s}"),
            IoError::BadShape(msg) => write!(f, "inconsistent shape: {msg}"),
        }
    }
}

impl Error for IoError {}

/// The ground field, serialized as "rational" or {"prime": p}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDto {
    Name(String),
    Prime { prime: u64 },
}

impl FieldDto {
    pub fn from_spec(spec: &FieldSpec) -> FieldDto {
        match spec {
            FieldSpec::Rational => FieldDto::Name("rational".to_string()),
            FieldSpec::PrimeField { modulus } => FieldDto::Prime { prime: *modulus },
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, IoError> {
        match self {
            FieldDto::Name(name) if name == "rational" => Ok(FieldSpec::Rational),
            FieldDto::Name(name) => Err(IoError::UnknownField(name.clone())),
            FieldDto::Prime { prime } => FieldSpec::prime_field(*prime)
                .map_err(|e| IoError::BadValue(e.to_string())),
        }
    }
}

/// Parse the compact field notation used on the command line and in the
/// LEONARD_FIELD environment variable: "rational" or "p:<prime>".
pub fn parse_field_name(s: &str) -> Result<FieldSpec, IoError> {
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(rest) = s.strip_prefix("p:") {
        let modulus: u64 = rest
            .parse()
            .map_err(|_| IoError::BadValue(s.to_string()))?;
        return FieldSpec::prime_field(modulus).map_err(|e| IoError::BadValue(e.to_string()));
    }
    Err(IoError::UnknownField(s.to_string()))
}

pub fn values_to_strings(values: &[FieldValue]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

pub fn parse_values(strings: &[String], spec: &FieldSpec) -> Result<Vec<FieldValue>, IoError> {
    strings
        .iter()
        .map(|s| FieldValue::parse(s, spec).map_err(|_| IoError::BadValue(s.clone())))
        .collect()
}

/// Ascending coefficient strings of a polynomial; the zero polynomial is
/// the single entry "0".
pub fn poly_to_coeff_strings(p: &Poly) -> Vec<String> {
    match p.degree() {
        None => vec![FieldValue::zero(&p.spec()).to_string()],
        Some(deg) => (0..=deg).map(|k| p.coeff(k).to_string()).collect(),
    }
}

pub fn grid_to_strings(grid: &[Vec<FieldValue>]) -> Vec<Vec<String>> {
    grid.iter().map(|row| values_to_strings(row)).collect()
}

/// Parameter array file schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterDataDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDto>,
    pub d: usize,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub varphi: Vec<String>,
    pub phi: Vec<String>,
}

impl ParameterDataDto {
    pub fn from_params(p: &ParameterData) -> ParameterDataDto {
        ParameterDataDto {
            field: Some(FieldDto::from_spec(&p.spec())),
            d: p.d,
            theta: values_to_strings(&p.theta),
            theta_star: values_to_strings(&p.theta_star),
            varphi: values_to_strings(&p.varphi),
            phi: values_to_strings(&p.phi),
        }
    }

    /// Convert to the domain type. A file without an explicit "field" key
    /// falls back to `default_spec`, and to the rationals when that is
    /// absent too; an explicit key always wins.
    pub fn to_params(&self, default_spec: Option<&FieldSpec>) -> Result<ParameterData, IoError> {
        let spec = match &self.field {
            Some(dto) => dto.to_spec()?,
            None => default_spec.cloned().unwrap_or(FieldSpec::Rational),
        };
        let theta = parse_values(&self.theta, &spec)?;
        let theta_star = parse_values(&self.theta_star, &spec)?;
        let varphi = parse_values(&self.varphi, &spec)?;
        let phi = parse_values(&self.phi, &spec)?;
        ParameterData::new(self.d, theta, theta_star, varphi, phi)
            .map_err(|e| IoError::BadShape(e.to_string()))
    }
}

/// Square matrix file schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDto>,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDto {
    pub fn from_matrix(m: &SquareMatrix) -> MatrixDto {
        MatrixDto {
            field: Some(FieldDto::from_spec(&m.spec())),
            n: m.dim(),
            entries: m.rows().map(values_to_strings).collect(),
        }
    }

    pub fn to_matrix(&self, default_spec: Option<&FieldSpec>) -> Result<SquareMatrix, IoError> {
        let spec = match &self.field {
            Some(dto) => dto.to_spec()?,
            None => default_spec.cloned().unwrap_or(FieldSpec::Rational),
        };
        if self.entries.len() != self.n || self.entries.iter().any(|row| row.len() != self.n) {
            return Err(IoError::BadShape(format!(
                "entries do not form an {n} by {n} grid",
                n = self.n
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| parse_values(row, &spec))
            .collect::<Result<Vec<_>, _>>()?;
        SquareMatrix::from_rows(rows).map_err(|e| IoError::BadShape(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionDto {
    pub passed: bool,
    pub offending: Vec<usize>,
}

/// Per-condition validation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReportDto {
    pub nonzero: ConditionDto,
    pub distinct: ConditionDto,
    pub varphi_formula: ConditionDto,
    pub phi_formula: ConditionDto,
    pub ratios_agree: ConditionDto,
    pub ratios_vacuous: bool,
    pub common_ratio: Option<String>,
    pub overall: bool,
}

impl ValidationReportDto {
    pub fn from_report(report: &ValidationReport) -> ValidationReportDto {
        let cond = |c: &crate::params::ConditionReport| ConditionDto {
            passed: c.passed,
            offending: c.offending.clone(),
        };
        ValidationReportDto {
            nonzero: cond(&report.nonzero),
            distinct: cond(&report.distinct),
            varphi_formula: cond(&report.varphi_formula),
            phi_formula: cond(&report.phi_formula),
            ratios_agree: cond(&report.ratios_agree),
            ratios_vacuous: report.ratios_vacuous,
            common_ratio: report.common_ratio.as_ref().map(|v| v.to_string()),
            overall: report.overall,
        }
    }
}

/// One recognized idempotent ordering: the eigenvalue orderings together
/// with the parameter array they induce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognizedOrderingDto {
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub params: ParameterDataDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionResultDto {
    pub field: FieldDto,
    pub orderings: Vec<RecognizedOrderingDto>,
}

impl RecognitionResultDto {
    pub fn from_result(result: &RecognitionResult, spec: &FieldSpec) -> RecognitionResultDto {
        RecognitionResultDto {
            field: FieldDto::from_spec(spec),
            orderings: result
                .orderings
                .iter()
                .map(|o| RecognizedOrderingDto {
                    theta: values_to_strings(&o.params.theta),
                    theta_star: values_to_strings(&o.params.theta_star),
                    params: ParameterDataDto::from_params(&o.params),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationScalarsDto {
    pub beta: String,
    pub gamma: String,
    pub gamma_star: String,
    pub rho: String,
    pub rho_star: String,
    pub unique: bool,
}

impl RelationScalarsDto {
    pub fn from_scalars(s: &RelationScalars) -> RelationScalarsDto {
        RelationScalarsDto {
            beta: s.beta.to_string(),
            gamma: s.gamma.to_string(),
            gamma_star: s.gamma_star.to_string(),
            rho: s.rho.to_string(),
            rho_star: s.rho_star.to_string(),
            unique: s.unique,
        }
    }
}

/// Relation verification report: the scalar tuple and both commutator
/// residual matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReportDto {
    pub scalars: RelationScalarsDto,
    pub residual_primary: MatrixDto,
    pub residual_dual: MatrixDto,
    pub clean: bool,
}

impl RelationReportDto {
    pub fn from_report(scalars: &RelationScalars, report: &CommutatorReport) -> RelationReportDto {
        RelationReportDto {
            scalars: RelationScalarsDto::from_scalars(scalars),
            residual_primary: MatrixDto::from_matrix(&report.residual_primary),
            residual_dual: MatrixDto::from_matrix(&report.residual_dual),
            clean: report.is_clean(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn d1_params() -> ParameterData {
        let qv = |ss: &[&str]| ss.iter().map(|s| q(s)).collect::<Vec<_>>();
        ParameterData::new(1, qv(&["0", "1"]), qv(&["0", "1"]), qv(&["2"]), qv(&["3"])).unwrap()
    }

    #[test]
    fn parameter_round_trip_rational() {
        let p = d1_params();
        let dto = ParameterDataDto::from_params(&p);
        let text = serde_json::to_string(&dto).unwrap();
        let back: ParameterDataDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_params(None).unwrap(), p);
    }

    #[test]
    fn parameter_serialization_is_frozen() {
        let dto = ParameterDataDto::from_params(&d1_params());
        let text = serde_json::to_string(&dto).unwrap();
        assert_eq!(
            text,
            r#"{"field":"rational","d":1,"theta":["0","1"],"theta_star":["0","1"],"varphi":["2"],"phi":["3"]}"#
        );
    }

    #[test]
    fn parameter_round_trip_prime_field() {
        let spec = FieldSpec::prime_field(7).unwrap();
        let v = |s: &str| FieldValue::parse(s, &spec).unwrap();
        let p = ParameterData::new(
            1,
            vec![v("0"), v("1")],
            vec![v("0"), v("1")],
            vec![v("2")],
            vec![v("3")],
        )
        .unwrap();
        let dto = ParameterDataDto::from_params(&p);
        assert_eq!(dto.field, Some(FieldDto::Prime { prime: 7 }));
        let text = serde_json::to_string(&dto).unwrap();
        let back: ParameterDataDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_params(None).unwrap(), p);
    }

    #[test]
    fn missing_field_key_uses_fallback() {
        let text = r#"{"d":1,"theta":["0","1"],"theta_star":["0","1"],"varphi":["2"],"phi":["3"]}"#;
        let dto: ParameterDataDto = serde_json::from_str(text).unwrap();
        let rational = dto.to_params(None).unwrap();
        assert_eq!(rational.spec(), RAT);
        let gf5 = FieldSpec::prime_field(5).unwrap();
        let modular = dto.to_params(Some(&gf5)).unwrap();
        assert_eq!(modular.spec(), gf5);
    }

    #[test]
    fn explicit_field_key_beats_fallback() {
        let text = r#"{"field":{"prime":7},"d":1,"theta":["0","1"],"theta_star":["0","1"],"varphi":["2"],"phi":["3"]}"#;
        let dto: ParameterDataDto = serde_json::from_str(text).unwrap();
        let p = dto.to_params(Some(&RAT)).unwrap();
        assert_eq!(p.spec(), FieldSpec::prime_field(7).unwrap());
    }

    #[test]
    fn bad_inputs_are_reported() {
        assert_eq!(
            FieldDto::Name("real".into()).to_spec().unwrap_err(),
            IoError::UnknownField("real".into())
        );
        assert!(matches!(
            FieldDto::Prime { prime: 6 }.to_spec().unwrap_err(),
            IoError::BadValue(_)
        ));
        assert_eq!(
            parse_values(&["x".into()], &RAT).unwrap_err(),
            IoError::BadValue("x".into())
        );
        let dto = MatrixDto {
            field: None,
            n: 2,
            entries: vec![vec!["1".into()]],
        };
        assert!(matches!(dto.to_matrix(None).unwrap_err(), IoError::BadShape(_)));
    }

    #[test]
    fn field_name_notation() {
        assert_eq!(parse_field_name("rational").unwrap(), RAT);
        assert_eq!(
            parse_field_name("p:11").unwrap(),
            FieldSpec::prime_field(11).unwrap()
        );
        assert!(parse_field_name("p:6").is_err());
        assert!(parse_field_name("complex").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[0, 3], &[1, 0]]);
        let dto = MatrixDto::from_matrix(&m);
        let text = serde_json::to_string(&dto).unwrap();
        let back: MatrixDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix(None).unwrap(), m);
    }

    #[test]
    fn poly_coefficient_strings() {
        let p = Poly::from_coeffs(&RAT, vec![q("1"), q("1/2")]);
        assert_eq!(poly_to_coeff_strings(&p), vec!["1", "1/2"]);
        assert_eq!(poly_to_coeff_strings(&Poly::zero(&RAT)), vec!["0"]);
    }
}
