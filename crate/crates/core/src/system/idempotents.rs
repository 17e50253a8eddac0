use super::rep::{SystemError, TauEtaBasis};
use crate::exactfield::{FieldValue, SquareMatrix};
use crate::params::ParameterData;

/// Primitive idempotents of a multiplicity-free matrix by the Lagrange
/// product: E_i is the product over j ≠ i of (A − θ_j I)/(θ_i − θ_j).
///
/// The list of claimed eigenvalues must be pairwise distinct and exhaust the
/// spectrum; every output is verified to be a nonzero spectral projector and
/// the family must resolve the identity.
pub fn idempotents_lagrange(
    a: &SquareMatrix,
    eigs: &[FieldValue],
) -> Result<Vec<SquareMatrix>, SystemError> {
    let n = a.dim();
    let spec = a.spec();
    if eigs.len() != n || eigs.iter().any(|v| v.spec() != spec) {
        return Err(SystemError::ShapeMismatch);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if eigs[i] == eigs[j] {
                return Err(SystemError::RepeatedEigenvalue);
            }
        }
    }
    let identity = SquareMatrix::identity(&spec, n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = identity.clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            let factor = a.sub(&identity.scale(&eigs[j]));
            let denom_inv = eigs[i]
                .sub(&eigs[j])
                .inv()
                .expect("distinct eigenvalues");
            e = e.mul(&factor).scale(&denom_inv);
        }
        if e.is_zero() || a.mul(&e) != e.scale(&eigs[i]) {
            return Err(SystemError::NotAnEigenvalue);
        }
        out.push(e);
    }
    let mut sum = SquareMatrix::zero(&spec, n);
    for e in &out {
        sum = sum.add(e);
    }
    if sum != identity {
        return Err(SystemError::NotAnEigenvalue);
    }
    Ok(out)
}

/// The r-th primitive idempotent of the split form, entry by entry from the
/// closed formulas.
///
/// With dual = false this is the idempotent E_r of the lower-bidiagonal
/// split matrix: entry (i,j) = τ_j(θ_r) η_{d−i}(θ_r) / (τ_r(θ_r) η_{d−r}(θ_r)).
/// With dual = true it is E*_r of the upper-bidiagonal dual: entry (i,j) =
/// (φ₁···φ_j)/(φ₁···φ_i) · τ*_i(θ*_r) η*_{d−j}(θ*_r) / (τ*_r(θ*_r) η*_{d−r}(θ*_r)).
pub fn idempotent_entries_closed(
    p: &ParameterData,
    r: usize,
    dual: bool,
) -> Result<SquareMatrix, SystemError> {
    let d = p.d;
    if r > d {
        return Err(SystemError::IndexOutOfRange);
    }
    let seq = if dual { &p.theta_star } else { &p.theta };
    for i in 0..=d {
        for j in (i + 1)..=d {
            if seq[i] == seq[j] {
                return Err(SystemError::InvalidParameters);
            }
        }
    }
    if dual && p.varphi.iter().any(|v| v.is_zero()) {
        return Err(SystemError::InvalidParameters);
    }
    let basis = TauEtaBasis::new(&p.theta, &p.theta_star);
    let n = d + 1;
    let rows: Vec<Vec<FieldValue>> = if !dual {
        let at = &p.theta[r];
        let tau_at: Vec<FieldValue> = (0..n).map(|k| basis.tau[k].eval(at)).collect();
        let eta_at: Vec<FieldValue> = (0..n).map(|k| basis.eta[k].eval(at)).collect();
        let denom_inv = tau_at[r]
            .mul(&eta_at[d - r])
            .inv()
            .expect("distinct eigenvalues give a nonzero denominator");
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| tau_at[j].mul(&eta_at[d - i]).mul(&denom_inv))
                    .collect()
            })
            .collect()
    } else {
        let at = &p.theta_star[r];
        let tau_at: Vec<FieldValue> = (0..n).map(|k| basis.tau_star[k].eval(at)).collect();
        let eta_at: Vec<FieldValue> = (0..n).map(|k| basis.eta_star[k].eval(at)).collect();
        let denom_inv = tau_at[r]
            .mul(&eta_at[d - r])
            .inv()
            .expect("distinct dual eigenvalues give a nonzero denominator");
        // Prefix products varphi_1 ... varphi_k.
        let mut pref = Vec::with_capacity(n);
        pref.push(FieldValue::one(&p.spec()));
        for k in 1..n {
            pref.push(pref[k - 1].mul(p.varphi_i(k)));
        }
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        pref[j]
                            .div(&pref[i])
                            .mul(&tau_at[i])
                            .mul(&eta_at[d - j])
                            .mul(&denom_inv)
                    })
                    .collect()
            })
            .collect()
    };
    Ok(SquareMatrix::from_rows(rows).expect("entries form a square matrix"))
}
