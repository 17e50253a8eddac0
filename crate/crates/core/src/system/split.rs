use super::idempotents::{idempotent_entries_closed, idempotents_lagrange};
use super::rep::{LeonardSystemRep, SystemError};
use crate::exactfield::{FieldValue, SquareMatrix};
use crate::params::{validate_parameter_array, ParameterData};

/// Build the split-form representation of the Leonard system attached to a
/// validated parameter array: A is lower bidiagonal with diagonal θ_0..θ_d
/// and subdiagonal entries 1, A* is upper bidiagonal with diagonal θ*_0..θ*_d
/// and superdiagonal entries φ_1..φ_d. The primitive idempotents are computed
/// by Lagrange interpolation and checked against their entrywise closed
/// forms before the representation is assembled.
pub fn build_split_form(p: &ParameterData) -> Result<LeonardSystemRep, SystemError> {
    let report = validate_parameter_array(p).map_err(|_| SystemError::InvalidParameters)?;
    if !report.overall {
        return Err(SystemError::InvalidParameters);
    }
    let spec = p.spec();
    let d = p.d;
    let n = d + 1;
    let one = FieldValue::one(&spec);
    let mut a = SquareMatrix::zero(&spec, n);
    let mut a_star = SquareMatrix::zero(&spec, n);
    for i in 0..n {
        a.set(i, i, p.theta[i].clone());
        a_star.set(i, i, p.theta_star[i].clone());
        if i < d {
            a.set(i + 1, i, one.clone());
            a_star.set(i, i + 1, p.varphi_i(i + 1).clone());
        }
    }
    let e = idempotents_lagrange(&a, &p.theta)?;
    let e_star = idempotents_lagrange(&a_star, &p.theta_star)?;
    for r in 0..n {
        assert_eq!(
            e[r],
            idempotent_entries_closed(p, r, false)?,
            "closed-form idempotent mismatch at index {r}"
        );
        assert_eq!(
            e_star[r],
            idempotent_entries_closed(p, r, true)?,
            "closed-form dual idempotent mismatch at index {r}"
        );
    }
    LeonardSystemRep::new(
        a,
        a_star,
        e,
        e_star,
        p.theta.clone(),
        p.theta_star.clone(),
    )
}

fn mat_apply(m: &SquareMatrix, v: &[FieldValue]) -> Vec<FieldValue> {
    m.mul_vec(v)
}

fn vec_axpy(v: &[FieldValue], c: &FieldValue, w: &[FieldValue]) -> Vec<FieldValue> {
    v.iter()
        .zip(w)
        .map(|(vi, wi)| vi.sub(&c.mul(wi)))
        .collect()
}

fn vec_is_zero(v: &[FieldValue]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Split scalars of the representation relative to the eigenvalue order
/// theta_order: starting from v, the chain v_{i+1} = (A − theta_order[i] I) v_i
/// is formed, and the i-th scalar is read off from
/// (A* − θ*_i I) v_i = scalar · v_{i−1}.
fn split_scalars(
    rep: &LeonardSystemRep,
    v0: &[FieldValue],
    theta_order: &[FieldValue],
) -> Result<Vec<FieldValue>, SystemError> {
    let d = rep.d();
    let mut chain = vec![v0.to_vec()];
    for i in 0..d {
        let prev = chain.last().unwrap();
        let next = vec_axpy(&mat_apply(rep.a(), prev), &theta_order[i], prev);
        if vec_is_zero(&next) {
            return Err(SystemError::NotALeonardSystem);
        }
        chain.push(next);
    }
    let mut scalars = Vec::with_capacity(d);
    for i in 1..=d {
        let w = vec_axpy(
            &mat_apply(rep.a_star(), &chain[i]),
            &rep.theta_star()[i],
            &chain[i],
        );
        let prev = &chain[i - 1];
        let k = prev
            .iter()
            .position(|x| !x.is_zero())
            .expect("chain vectors are nonzero");
        let scalar = w[k].div(&prev[k]);
        let residual = vec_axpy(&w, &scalar, prev);
        if !vec_is_zero(&residual) || scalar.is_zero() {
            return Err(SystemError::NotALeonardSystem);
        }
        scalars.push(scalar);
    }
    Ok(scalars)
}

/// Recover the parameter array of a Leonard system representation.
///
/// A starting vector is taken from the image of E*_0 (its first nonzero
/// column), the split chain v_{i+1} = (A − θ_i I) v_i yields φ_1..φ_d, and
/// running the same chain against the reversed eigenvalue order yields
/// φ'_1..φ'_d relative to the second split decomposition.
pub fn extract_parameters(rep: &LeonardSystemRep) -> Result<ParameterData, SystemError> {
    let d = rep.d();
    let n = d + 1;
    let e0s = rep.dual_idempotent(0);
    let col = (0..n)
        .find(|&j| (0..n).any(|i| !e0s.get(i, j).is_zero()))
        .ok_or(SystemError::NotALeonardSystem)?;
    let v0: Vec<FieldValue> = (0..n).map(|i| e0s.get(i, col).clone()).collect();
    let varphi = split_scalars(rep, &v0, rep.theta())?;
    let reversed: Vec<FieldValue> = rep.theta().iter().rev().cloned().collect();
    let phi = split_scalars(rep, &v0, &reversed)?;
    ParameterData::new(
        d,
        rep.theta().to_vec(),
        rep.theta_star().to_vec(),
        varphi,
        phi,
    )
    .map_err(|_| SystemError::NotALeonardSystem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::params::{d4_transform, qracah_params, D4Element, D4Generator, QRacahInput};

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<FieldValue> {
        ss.iter().map(|s| q(s)).collect()
    }

    fn d1_params() -> ParameterData {
        ParameterData::new(1, qv(&["0", "1"]), qv(&["0", "1"]), qv(&["2"]), qv(&["3"])).unwrap()
    }

    fn d3_qracah() -> ParameterData {
        let input = QRacahInput {
            d: 3,
            q: q("2"),
            h: q("1"),
            h_star: q("1"),
            r1: q("-1"),
            r2: q("-16"),
            s: q("1"),
            s_star: q("1"),
            theta0: q("0"),
            theta_star0: q("0"),
        };
        qracah_params(&input).unwrap()
    }

    #[test]
    fn split_shapes_for_diameter_one() {
        let rep = build_split_form(&d1_params()).unwrap();
        let a = SquareMatrix::from_i64_rows(&RAT, &[&[0, 0], &[1, 1]]);
        let a_star = SquareMatrix::from_i64_rows(&RAT, &[&[0, 2], &[0, 1]]);
        assert_eq!(rep.a(), &a);
        assert_eq!(rep.a_star(), &a_star);
        assert_eq!(rep.theta(), &qv(&["0", "1"])[..]);
    }

    #[test]
    fn diameter_zero_is_trivial() {
        let p = ParameterData::new(0, qv(&["5"]), qv(&["-7"]), vec![], vec![]).unwrap();
        let rep = build_split_form(&p).unwrap();
        assert_eq!(rep.idempotent(0), &SquareMatrix::identity(&RAT, 1));
        assert_eq!(extract_parameters(&rep).unwrap(), p);
    }

    #[test]
    fn invalid_parameters_rejected() {
        let bad =
            ParameterData::new(1, qv(&["0", "1"]), qv(&["0", "1"]), qv(&["0"]), qv(&["3"]))
                .unwrap();
        assert_eq!(
            build_split_form(&bad).unwrap_err(),
            SystemError::InvalidParameters
        );
    }

    #[test]
    fn extraction_round_trips() {
        for p in [d1_params(), d3_qracah()] {
            let rep = build_split_form(&p).unwrap();
            assert_eq!(extract_parameters(&rep).unwrap(), p);
        }
    }

    #[test]
    fn reversed_idempotent_order_extracts_second_split_array() {
        // Reversing the eigenvalue ordering of A gives the representation of
        // the downward relative, whose parameter array swaps the two split
        // sequences and reverses theta.
        let p = d3_qracah();
        let rep = build_split_form(&p).unwrap();
        let rev_e: Vec<SquareMatrix> = rep.idempotents().iter().rev().cloned().collect();
        let rev_theta: Vec<FieldValue> = rep.theta().iter().rev().cloned().collect();
        let flipped = LeonardSystemRep::new(
            rep.a().clone(),
            rep.a_star().clone(),
            rev_e,
            rep.dual_idempotents().to_vec(),
            rev_theta,
            rep.theta_star().to_vec(),
        )
        .unwrap();
        let got = extract_parameters(&flipped).unwrap();
        let want = d4_transform(&p, &D4Element::generator(D4Generator::DDown));
        assert_eq!(got, want);
    }
}
