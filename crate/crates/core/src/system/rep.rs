use crate::exactfield::{FieldSpec, FieldValue, Poly, SquareMatrix};
use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    /// The parameter array failed the five-condition validator.
    InvalidParameters,
    /// An eigenvalue list for idempotent construction contains a repeat.
    RepeatedEigenvalue,
    /// A claimed eigenvalue fails A·E = θ·E (or yields a zero idempotent).
    NotAnEigenvalue,
    /// An index outside 0..=d.
    IndexOutOfRange,
    /// Matrix data does not carry the structure of a Leonard system
    /// (degenerate split basis, broken idempotent identities, and the like).
    NotALeonardSystem,
    /// A matrix whose characteristic polynomial does not split into distinct
    /// linear factors over the base field.
    NotMultiplicityFree,
    /// The support graph of one matrix in the other's eigenbasis is not a
    /// simple path.
    NotTridiagonalizable,
    /// Inputs of mismatched dimension or field.
    ShapeMismatch,
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            SystemError::InvalidParameters => "parameter array fails validation",
            SystemError::RepeatedEigenvalue => "repeated eigenvalue",
            SystemError::NotAnEigenvalue => "value is not a simple eigenvalue",
            SystemError::IndexOutOfRange => "index out of range",
            SystemError::NotALeonardSystem => "matrices do not form a Leonard system",
            SystemError::NotMultiplicityFree => {
                "matrix is not multiplicity-free over the base field"
            }
            SystemError::NotTridiagonalizable => "support graph is not a simple path",
            SystemError::ShapeMismatch => "mismatched dimensions or fields",
        };
        f.write_str(msg)
    }
}

impl Error for SystemError {}

/// A matrix realization of an ordered pair of multiplicity-free operators:
/// both matrices, their primitive idempotents, and the eigenvalue orderings
/// the idempotents follow.
///
/// Construction verifies the eigendecomposition identities
/// A·E_i = E_i·A = θ_i·E_i, E_i·E_j = δ_ij·E_i, and ΣE_i = I for both
/// families. Whether the pair is genuinely a Leonard pair is certified by
/// the construction route (the split-form builder validates its parameters;
/// the recognizer checks the tridiagonal support conditions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeonardSystemRep {
    spec: FieldSpec,
    d: usize,
    a: SquareMatrix,
    a_star: SquareMatrix,
    e: Vec<SquareMatrix>,
    e_star: Vec<SquareMatrix>,
    theta: Vec<FieldValue>,
    theta_star: Vec<FieldValue>,
}

fn check_eigen_family(
    a: &SquareMatrix,
    e: &[SquareMatrix],
    theta: &[FieldValue],
) -> Result<(), SystemError> {
    let n = a.dim();
    if e.len() != n || theta.len() != n {
        return Err(SystemError::ShapeMismatch);
    }
    let spec = a.spec();
    if e.iter().any(|m| m.dim() != n || m.spec() != spec)
        || theta.iter().any(|v| v.spec() != spec)
    {
        return Err(SystemError::ShapeMismatch);
    }
    let mut sum = SquareMatrix::zero(&spec, n);
    for (i, ei) in e.iter().enumerate() {
        let scaled = ei.scale(&theta[i]);
        if a.mul(ei) != scaled || ei.mul(a) != scaled {
            return Err(SystemError::NotALeonardSystem);
        }
        for (j, ej) in e.iter().enumerate() {
            let prod = ei.mul(ej);
            let want = if i == j {
                ei.clone()
            } else {
                SquareMatrix::zero(&spec, n)
            };
            if prod != want {
                return Err(SystemError::NotALeonardSystem);
            }
        }
        sum = sum.add(ei);
    }
    if sum != SquareMatrix::identity(&spec, n) {
        return Err(SystemError::NotALeonardSystem);
    }
    Ok(())
}

impl LeonardSystemRep {
    /// Assembles a representation after verifying every eigendecomposition
    /// identity on both families.
    pub fn new(
        a: SquareMatrix,
        a_star: SquareMatrix,
        e: Vec<SquareMatrix>,
        e_star: Vec<SquareMatrix>,
        theta: Vec<FieldValue>,
        theta_star: Vec<FieldValue>,
    ) -> Result<LeonardSystemRep, SystemError> {
        if a.dim() != a_star.dim() || a.spec() != a_star.spec() || a.dim() == 0 {
            return Err(SystemError::ShapeMismatch);
        }
        check_eigen_family(&a, &e, &theta)?;
        check_eigen_family(&a_star, &e_star, &theta_star)?;
        Ok(LeonardSystemRep {
            spec: a.spec(),
            d: a.dim() - 1,
            a,
            a_star,
            e,
            e_star,
            theta,
            theta_star,
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec.clone()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &SquareMatrix {
        &self.a
    }

    pub fn a_star(&self) -> &SquareMatrix {
        &self.a_star
    }

    pub fn idempotent(&self, i: usize) -> &SquareMatrix {
        &self.e[i]
    }

    pub fn dual_idempotent(&self, i: usize) -> &SquareMatrix {
        &self.e_star[i]
    }

    pub fn idempotents(&self) -> &[SquareMatrix] {
        &self.e
    }

    pub fn dual_idempotents(&self) -> &[SquareMatrix] {
        &self.e_star
    }

    pub fn theta(&self) -> &[FieldValue] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[FieldValue] {
        &self.theta_star
    }
}

/// The four families of monic polynomials built from the eigenvalue
/// sequences: tau_i has roots theta_0..theta_{i-1}, eta_i has roots
/// theta_d..theta_{d-i+1}, and the starred families use theta_star. Each
/// list has length d+2 (degrees 0 through d+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauEtaBasis {
    pub tau: Vec<Poly>,
    pub tau_star: Vec<Poly>,
    pub eta: Vec<Poly>,
    pub eta_star: Vec<Poly>,
}

fn prefix_polys(spec: &FieldSpec, roots: &[FieldValue]) -> Vec<Poly> {
    (0..=roots.len())
        .map(|i| Poly::from_roots(spec, &roots[..i]))
        .collect()
}

impl TauEtaBasis {
    pub fn new(theta: &[FieldValue], theta_star: &[FieldValue]) -> TauEtaBasis {
        assert!(
            !theta.is_empty() && theta.len() == theta_star.len(),
            "eigenvalue sequences must both have length d+1"
        );
        let spec = theta[0].spec();
        let rev: Vec<FieldValue> = theta.iter().rev().cloned().collect();
        let rev_star: Vec<FieldValue> = theta_star.iter().rev().cloned().collect();
        TauEtaBasis {
            tau: prefix_polys(&spec, theta),
            tau_star: prefix_polys(&spec, theta_star),
            eta: prefix_polys(&spec, &rev),
            eta_star: prefix_polys(&spec, &rev_star),
        }
    }
}

/// The diagonal coefficients of each matrix with respect to the other's
/// eigenbasis: a_i = tr(A·E*_i) and a*_i = tr(A*·E_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCoeffs {
    pub a: Vec<FieldValue>,
    pub a_star: Vec<FieldValue>,
}
