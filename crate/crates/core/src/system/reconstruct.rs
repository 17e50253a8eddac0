use super::rep::SystemError;
use crate::exactfield::FieldValue;
use crate::params::{vartheta_sum, ParameterData};

/// The single eigenvalue of index three supplied to reconstruct_from_nine,
/// on either the primary or the dual side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FourthEigenvalue {
    Theta3(FieldValue),
    ThetaStar3(FieldValue),
}

/// The single split scalar supplied to reconstruct_from_nine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitScalar {
    Varphi1(FieldValue),
    Phi1(FieldValue),
    VarphiD(FieldValue),
    PhiD(FieldValue),
}

fn extend_by_ratio(prefix: &[FieldValue; 3], c: &FieldValue, d: usize) -> Vec<FieldValue> {
    let mut seq: Vec<FieldValue> = prefix.to_vec();
    for i in 2..d {
        let next = seq[i - 2].sub(&c.mul(&seq[i - 1].sub(&seq[i])));
        seq.push(next);
    }
    seq
}

/// Rebuild a full parameter array of diameter d ≥ 3 from nine scalars: the
/// three leading eigenvalues on each side, one further eigenvalue of index
/// three (either side), and one split scalar (first or last, either
/// sequence).
///
/// The eigenvalue prefixes are extended by the three-term ratio recursion
/// θ_{i+1} = θ_{i−2} − c·(θ_{i−1} − θ_i), where the common value c is fixed
/// by the supplied index-three eigenvalue; the same c governs both sides.
/// For d = 3 the ratio condition contributes exactly one equation per side,
/// so the supplied eigenvalue determines c and nothing is extrapolated. The
/// split sequences are then filled in through the two telescoping relations
/// that express φ_i and φ'_i against the opposite sequence's first entry.
///
/// The output is exactly the source array whenever the nine scalars come
/// from a valid one; arbitrary inputs yield an array the caller should
/// validate.
pub fn reconstruct_from_nine(
    d: usize,
    theta_prefix: &[FieldValue; 3],
    theta_star_prefix: &[FieldValue; 3],
    fourth: &FourthEigenvalue,
    scalar: &SplitScalar,
) -> Result<ParameterData, SystemError> {
    if d < 3 {
        return Err(SystemError::IndexOutOfRange);
    }
    let spec = theta_prefix[0].spec();
    let fourth_value = match fourth {
        FourthEigenvalue::Theta3(v) | FourthEigenvalue::ThetaStar3(v) => v,
    };
    let scalar_value = match scalar {
        SplitScalar::Varphi1(v)
        | SplitScalar::Phi1(v)
        | SplitScalar::VarphiD(v)
        | SplitScalar::PhiD(v) => v,
    };
    if theta_prefix
        .iter()
        .chain(theta_star_prefix)
        .chain([fourth_value, scalar_value])
        .any(|v| v.spec() != spec)
    {
        return Err(SystemError::ShapeMismatch);
    }
    let c = match fourth {
        FourthEigenvalue::Theta3(t3) => {
            let den = theta_prefix[1].sub(&theta_prefix[2]);
            if den.is_zero() {
                return Err(SystemError::InvalidParameters);
            }
            theta_prefix[0].sub(t3).div(&den)
        }
        FourthEigenvalue::ThetaStar3(t3) => {
            let den = theta_star_prefix[1].sub(&theta_star_prefix[2]);
            if den.is_zero() {
                return Err(SystemError::InvalidParameters);
            }
            theta_star_prefix[0].sub(t3).div(&den)
        }
    };
    let theta = extend_by_ratio(theta_prefix, &c, d);
    let theta_star = extend_by_ratio(theta_star_prefix, &c, d);

    // Everything below needs the normalized telescoping sums, which exist
    // only when the extended sequence has distinct extremes.
    let vartheta = |i: usize| -> Result<FieldValue, SystemError> {
        vartheta_sum(&theta, i).map_err(|_| SystemError::InvalidParameters)
    };
    let theta_gap = theta_prefix[0].sub(&theta[d]);
    let dual_gap_1 = theta_star_prefix[1].sub(&theta_star_prefix[0]);
    let dual_gap_d = theta_star[d].sub(&theta_star_prefix[0]);
    let varphi_1 = match scalar {
        SplitScalar::Varphi1(v) => v.clone(),
        SplitScalar::Phi1(v) => v.add(&dual_gap_1.mul(&theta_gap)),
        SplitScalar::VarphiD(v) => {
            let phi_1 = v.sub(&dual_gap_d.mul(&theta[d - 1].sub(&theta[d])));
            phi_1.add(&dual_gap_1.mul(&theta_gap))
        }
        SplitScalar::PhiD(v) => v.sub(&dual_gap_d.mul(&theta[1].sub(&theta[0]))),
    };
    let mut phi = Vec::with_capacity(d);
    for i in 1..=d {
        let dual_gap = theta_star[i].sub(&theta_star[0]);
        phi.push(
            varphi_1
                .mul(&vartheta(i)?)
                .add(&dual_gap.mul(&theta[d - i + 1].sub(&theta[0]))),
        );
    }
    let phi_1 = phi[0].clone();
    let mut varphi = Vec::with_capacity(d);
    for i in 1..=d {
        let dual_gap = theta_star[i].sub(&theta_star[0]);
        varphi.push(
            phi_1
                .mul(&vartheta(i)?)
                .add(&dual_gap.mul(&theta[i - 1].sub(&theta[d]))),
        );
    }
    ParameterData::new(d, theta, theta_star, varphi, phi)
        .map_err(|_| SystemError::ShapeMismatch)
}
