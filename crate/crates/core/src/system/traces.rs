use super::rep::{LeonardSystemRep, SystemError, TraceCoeffs};
use crate::exactfield::FieldValue;
use crate::params::ParameterData;

/// Intersection-style coefficients of a representation by direct traces:
/// a_i = tr(A E*_i) and a*_i = tr(A* E_i).
pub fn trace_coefficients(rep: &LeonardSystemRep) -> TraceCoeffs {
    let d = rep.d();
    let a = (0..=d)
        .map(|i| rep.a().mul(rep.dual_idempotent(i)).trace())
        .collect();
    let a_star = (0..=d)
        .map(|i| rep.a_star().mul(rep.idempotent(i)).trace())
        .collect();
    TraceCoeffs { a, a_star }
}

/// The same coefficients straight from a parameter array:
/// a_i = θ_i + φ_i/(θ*_i − θ*_{i−1}) + φ_{i+1}/(θ*_i − θ*_{i+1}) and the
/// analogous expression for a*_i, with the conventions φ_0 = φ_{d+1} = 0.
pub fn trace_coefficients_closed(p: &ParameterData) -> Result<TraceCoeffs, SystemError> {
    p.check_shape().map_err(|_| SystemError::ShapeMismatch)?;
    let d = p.d;
    let term = |num: &FieldValue, lhs: &FieldValue, rhs: &FieldValue| {
        let den = lhs.sub(rhs);
        if den.is_zero() {
            Err(SystemError::InvalidParameters)
        } else {
            Ok(num.div(&den))
        }
    };
    let mut a = Vec::with_capacity(d + 1);
    let mut a_star = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut ai = p.theta[i].clone();
        let mut asi = p.theta_star[i].clone();
        if i >= 1 {
            ai = ai.add(&term(p.varphi_i(i), &p.theta_star[i], &p.theta_star[i - 1])?);
            asi = asi.add(&term(p.varphi_i(i), &p.theta[i], &p.theta[i - 1])?);
        }
        if i < d {
            ai = ai.add(&term(p.varphi_i(i + 1), &p.theta_star[i], &p.theta_star[i + 1])?);
            asi = asi.add(&term(p.varphi_i(i + 1), &p.theta[i], &p.theta[i + 1])?);
        }
        a.push(ai);
        a_star.push(asi);
    }
    Ok(TraceCoeffs { a, a_star })
}

/// The four telescoping expressions for each split scalar, one quadruple per
/// index i = 1..d. With dual = false the quadruples target φ_i:
///
///   (θ*_i − θ*_{i−1}) Σ_{h<i} (θ_h − a_h),
///   (θ*_{i−1} − θ*_i) Σ_{h≥i} (θ_h − a_h),
///   (θ_i − θ_{i−1})   Σ_{h<i} (θ*_h − a*_h),
///   (θ_{i−1} − θ_i)   Σ_{h≥i} (θ*_h − a*_h).
///
/// With dual = true they target the second split sequence φ'_i, replacing
/// θ_h by θ_{d−h} in the first pair and a*_h by a*_{d−h} (and θ_{i−1}, θ_i by
/// θ_{d−i+1}, θ_{d−i}) in the second pair. For a Leonard system all four
/// agree; the caller owns that assertion.
pub fn varphi_four_ways(
    p: &ParameterData,
    t: &TraceCoeffs,
    dual: bool,
) -> Result<Vec<[FieldValue; 4]>, SystemError> {
    p.check_shape().map_err(|_| SystemError::ShapeMismatch)?;
    let d = p.d;
    let spec = p.spec();
    if t.a.len() != d + 1
        || t.a_star.len() != d + 1
        || t.a.iter().chain(&t.a_star).any(|v| v.spec() != spec)
    {
        return Err(SystemError::ShapeMismatch);
    }
    let theta_at = |h: usize| if dual { &p.theta[d - h] } else { &p.theta[h] };
    let a_star_at = |h: usize| if dual { &t.a_star[d - h] } else { &t.a_star[h] };
    let theta_diff = |i: usize| {
        // theta_i - theta_{i-1}, transported through the reversal in dual mode.
        if dual {
            p.theta[d - i].sub(&p.theta[d - i + 1])
        } else {
            p.theta[i].sub(&p.theta[i - 1])
        }
    };
    let mut out = Vec::with_capacity(d);
    let zero = FieldValue::zero(&spec);
    let mut head_primary = zero.clone();
    let mut head_dual = zero.clone();
    let mut tail_primary = (0..=d).fold(zero.clone(), |acc, h| {
        acc.add(&theta_at(h).sub(&t.a[h]))
    });
    let mut tail_dual = (0..=d).fold(zero, |acc, h| {
        acc.add(&p.theta_star[h].sub(a_star_at(h)))
    });
    for i in 1..=d {
        head_primary = head_primary.add(&theta_at(i - 1).sub(&t.a[i - 1]));
        tail_primary = tail_primary.sub(&theta_at(i - 1).sub(&t.a[i - 1]));
        head_dual = head_dual.add(&p.theta_star[i - 1].sub(a_star_at(i - 1)));
        tail_dual = tail_dual.sub(&p.theta_star[i - 1].sub(a_star_at(i - 1)));
        let ds = p.theta_star[i].sub(&p.theta_star[i - 1]);
        let dt = theta_diff(i);
        out.push([
            ds.mul(&head_primary),
            ds.neg().mul(&tail_primary),
            dt.mul(&head_dual),
            dt.neg().mul(&tail_dual),
        ]);
    }
    Ok(out)
}
