//! Parameter arrays of Leonard systems and every sequence-level computation
//! on them: validation of the five defining conditions, recurrence
//! classification, closed forms for recurrent sequences, the eight-element
//! relative (D4) action, and the q-Racah parameter generator.

mod closed_form;
mod d4;
mod qracah;
mod recurrence;
mod validate;

pub use closed_form::{fit_closed_form, ClosedFormFit, QuadExt};
pub use d4::{d4_transform, D4Element, D4Generator};
pub use qracah::{qracah_params, QRacahInput};
pub use recurrence::{classify_recurrence, RecurrenceClass, RecurrenceKind};
pub use validate::{
    phi_from_varphi, validate_parameter_array, vartheta_from_recursion, vartheta_sum,
    ConditionReport, ValidationReport,
};

use crate::exactfield::{FieldSpec, FieldValue};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamsError {
    /// Array lengths do not match the stated diameter.
    SizeMismatch,
    /// Values from different fields in one parameter array.
    FieldMismatch,
    /// A sum or ratio needs theta_0 != theta_d (or a nonzero divisor) and
    /// got a degenerate input.
    DegenerateDenominator,
    /// An index outside its documented range.
    IndexOutOfRange,
    /// No root of the quadratic for q lies in the field and extension was
    /// disabled.
    NoQInField,
    /// The sequence does not actually satisfy the requested closed form.
    InconsistentSequence,
    /// The q-Racah constraint r1 r2 = s s* q^{d+1} fails.
    ConstraintViolated,
    /// A zero value where the q-Racah formulas must divide (q = 0 or s* = 0).
    DivisionByZero,
}

impl fmt::Display for ParamsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamsError::SizeMismatch => write!(f, "array lengths do not match the diameter"),
            ParamsError::FieldMismatch => write!(f, "values from different fields"),
            ParamsError::DegenerateDenominator => write!(f, "degenerate denominator"),
            ParamsError::IndexOutOfRange => write!(f, "index out of range"),
            ParamsError::NoQInField => {
                write!(f, "no root of the q-quadratic in the field (extension disabled)")
            }
            ParamsError::InconsistentSequence => {
                write!(f, "sequence does not satisfy the requested closed form")
            }
            ParamsError::ConstraintViolated => {
                write!(f, "constraint r1*r2 = s*s_star*q^(d+1) violated")
            }
            ParamsError::DivisionByZero => write!(f, "division by zero in parameter formulas"),
        }
    }
}

impl std::error::Error for ParamsError {}

/// The classification data of a Leonard system: eigenvalue sequence theta,
/// dual eigenvalue sequence theta_star (lengths d+1), and the two split
/// sequences varphi and phi (lengths d, paper indices 1..d stored at 0..d-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterData {
    pub d: usize,
    pub theta: Vec<FieldValue>,
    pub theta_star: Vec<FieldValue>,
    pub varphi: Vec<FieldValue>,
    pub phi: Vec<FieldValue>,
}

impl ParameterData {
    pub fn new(
        d: usize,
        theta: Vec<FieldValue>,
        theta_star: Vec<FieldValue>,
        varphi: Vec<FieldValue>,
        phi: Vec<FieldValue>,
    ) -> Result<ParameterData, ParamsError> {
        let p = ParameterData {
            d,
            theta,
            theta_star,
            varphi,
            phi,
        };
        p.check_shape()?;
        Ok(p)
    }

    /// Verifies array lengths against d and field agreement across entries.
    pub fn check_shape(&self) -> Result<(), ParamsError> {
        if self.theta.len() != self.d + 1
            || self.theta_star.len() != self.d + 1
            || self.varphi.len() != self.d
            || self.phi.len() != self.d
        {
            return Err(ParamsError::SizeMismatch);
        }
        let spec = self.spec();
        let all = self
            .theta
            .iter()
            .chain(&self.theta_star)
            .chain(&self.varphi)
            .chain(&self.phi);
        for v in all {
            if v.spec() != spec {
                return Err(ParamsError::FieldMismatch);
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> FieldSpec {
        self.theta
            .first()
            .map(|v| v.spec())
            .unwrap_or(FieldSpec::Rational)
    }

    /// Paper-indexed accessors: theta_i for 0 <= i <= d.
    pub fn theta_i(&self, i: usize) -> &FieldValue {
        &self.theta[i]
    }

    pub fn theta_star_i(&self, i: usize) -> &FieldValue {
        &self.theta_star[i]
    }

    /// varphi_i for 1 <= i <= d.
    pub fn varphi_i(&self, i: usize) -> &FieldValue {
        &self.varphi[i - 1]
    }

    /// phi_i for 1 <= i <= d.
    pub fn phi_i(&self, i: usize) -> &FieldValue {
        &self.phi[i - 1]
    }
}
