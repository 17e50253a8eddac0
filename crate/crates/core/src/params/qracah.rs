use super::{ParameterData, ParamsError};
use crate::exactfield::FieldValue;

/// Input scalars for the q-Racah parameter family, the most general
/// parametric solution of the classification conditions.
///
/// The scalars must satisfy r1·r2 = s·s*·q^{d+1}, with q nonzero and s*
/// nonzero (the phi-sequence divides by s*). Degeneracy of the resulting
/// sequences (repeated eigenvalues, vanishing varphi) is not checked here;
/// run the validator on the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRacahInput {
    pub d: usize,
    pub q: FieldValue,
    pub h: FieldValue,
    pub h_star: FieldValue,
    pub r1: FieldValue,
    pub r2: FieldValue,
    pub s: FieldValue,
    pub s_star: FieldValue,
    pub theta0: FieldValue,
    pub theta_star0: FieldValue,
}

/// Builds the parameter array of the q-Racah family:
///
///   theta_i  = theta_0  + h (1 − q^i)(1 − s q^{i+1}) q^{−i}
///   theta*_i = theta*_0 + h* (1 − q^i)(1 − s* q^{i+1}) q^{−i}
///   varphi_i = h h* q^{1−2i} (1 − q^i)(1 − q^{i−d−1})(1 − r1 q^i)(1 − r2 q^i)
///   phi_i    = h h* q^{1−2i} (1 − q^i)(1 − q^{i−d−1})(r1 − s* q^i)(r2 − s* q^i) / s*
pub fn qracah_params(input: &QRacahInput) -> Result<ParameterData, ParamsError> {
    let spec = input.q.spec();
    let same_field = [
        &input.h,
        &input.h_star,
        &input.r1,
        &input.r2,
        &input.s,
        &input.s_star,
        &input.theta0,
        &input.theta_star0,
    ]
    .iter()
    .all(|v| v.spec() == spec);
    if !same_field {
        return Err(ParamsError::FieldMismatch);
    }
    if input.q.is_zero() || input.s_star.is_zero() {
        return Err(ParamsError::DivisionByZero);
    }
    let d = input.d;
    let dp1 = i64::try_from(d + 1).expect("diameter fits in i64");
    let lhs = input.r1.mul(&input.r2);
    let rhs = input.s.mul(&input.s_star).mul(&input.q.pow(dp1));
    if lhs != rhs {
        return Err(ParamsError::ConstraintViolated);
    }

    let one = FieldValue::one(&spec);
    let q = &input.q;
    let eigen = |base: &FieldValue, scale: &FieldValue, split: &FieldValue, i: i64| {
        let a = one.sub(&q.pow(i));
        let b = one.sub(&split.mul(&q.pow(i + 1)));
        base.add(&scale.mul(&a).mul(&b).mul(&q.pow(-i)))
    };
    let mut theta = Vec::with_capacity(d + 1);
    let mut theta_star = Vec::with_capacity(d + 1);
    for i in 0..dp1 {
        theta.push(eigen(&input.theta0, &input.h, &input.s, i));
        theta_star.push(eigen(&input.theta_star0, &input.h_star, &input.s_star, i));
    }

    let hh = input.h.mul(&input.h_star);
    let ss_inv = input.s_star.inv().expect("s* checked nonzero");
    let mut varphi = Vec::with_capacity(d);
    let mut phi = Vec::with_capacity(d);
    for i in 1..dp1 {
        let lead = hh.mul(&q.pow(1 - 2 * i));
        let a = one.sub(&q.pow(i));
        let b = one.sub(&q.pow(i - dp1));
        let common = lead.mul(&a).mul(&b);
        let v1 = one.sub(&input.r1.mul(&q.pow(i)));
        let v2 = one.sub(&input.r2.mul(&q.pow(i)));
        varphi.push(common.mul(&v1).mul(&v2));
        let p1 = input.r1.sub(&input.s_star.mul(&q.pow(i)));
        let p2 = input.r2.sub(&input.s_star.mul(&q.pow(i)));
        phi.push(common.mul(&p1).mul(&p2).mul(&ss_inv));
    }

    Ok(ParameterData::new(d, theta, theta_star, varphi, phi)
        .expect("generated arrays are sized per d"))
}
