//! Orthogonal-polynomial data of a Leonard system: the monic polynomial
//! sequence and its dual, the normalized u-polynomials, the three-term
//! recurrence scalars with their trace counterparts, the four orthogonality
//! relations, and the terminating basic hypergeometric evaluation for the
//! q-Racah parameter family.

use crate::exactfield::{FieldValue, Poly};
use crate::params::{validate_parameter_array, ParameterData, QRacahInput};
use crate::system::{LeonardSystemRep, TauEtaBasis};
use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolysError {
    InvalidParameters,
    InconsistentData,
    ZeroDenominator,
}

impl fmt::Display for PolysError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            PolysError::InvalidParameters => "parameter array failed validation",
            PolysError::InconsistentData => {
                "trace and closed-form values disagree; upstream data is corrupt"
            }
            PolysError::ZeroDenominator => "a hypergeometric denominator factor vanished",
        };
        write!(f, "{msg}")
    }
}

impl Error for PolysError {}

/// The monic polynomial sequence p_0..p_{d+1}, its dual, and the normalized
/// sequences u_i = p_i / p_i(θ_0) and their duals.
#[derive(Debug, Clone)]
pub struct PolySeqBundle {
    pub p: Vec<Poly>,
    pub p_star: Vec<Poly>,
    pub u: Vec<Poly>,
    pub u_star: Vec<Poly>,
}

/// Scalars of the three-term recurrences and orthogonality relations:
/// a_0..a_d, x_1..x_d, b_0..b_{d−1}, c_1..c_d, the weights m_i = tr(E_i E*_0),
/// the normalized weights k_i, and the total mass n = 1/m_0.
#[derive(Debug, Clone)]
pub struct RecurrenceData {
    pub a: Vec<FieldValue>,
    pub x: Vec<FieldValue>,
    pub b: Vec<FieldValue>,
    pub c: Vec<FieldValue>,
    pub k: Vec<FieldValue>,
    pub m: Vec<FieldValue>,
    pub n: FieldValue,
}

/// Residuals of the four orthogonality relations, each a (d+1) × (d+1)
/// grid. A clean report means every residual is zero.
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub monic_pairs: Vec<Vec<FieldValue>>,
    pub monic_points: Vec<Vec<FieldValue>>,
    pub normalized_pairs: Vec<Vec<FieldValue>>,
    pub normalized_points: Vec<Vec<FieldValue>>,
}

impl OrthogonalityReport {
    pub fn is_clean(&self) -> bool {
        [
            &self.monic_pairs,
            &self.monic_points,
            &self.normalized_pairs,
            &self.normalized_points,
        ]
        .iter()
        .all(|grid| grid.iter().flatten().all(|v| v.is_zero()))
    }
}

/// Evaluation request for the terminating hypergeometric sum: the value of
/// u_i at the j-th eigenvalue of the q-Racah family given by `input`.
#[derive(Debug, Clone)]
pub struct QRacahEvalInput {
    pub i: usize,
    pub j: usize,
    pub input: QRacahInput,
}

fn varphi_prefix_products(p: &ParameterData) -> Vec<FieldValue> {
    let mut pref = Vec::with_capacity(p.d + 1);
    pref.push(FieldValue::one(&p.spec()));
    for h in 1..=p.d {
        pref.push(pref[h - 1].mul(p.varphi_i(h)));
    }
    pref
}

/// Build the polynomial bundle of a valid parameter array from the explicit
/// summation formulas: p_i is the weighted sum of the first i+1 lower
/// factorial polynomials, p_{d+1} is the full factorial polynomial (monic of
/// degree d+1 vanishing at every eigenvalue), and u_i drops the leading
/// normalization so that u_i = p_i / p_i(θ_0). Both routes to u_i are
/// computed and compared.
pub fn build_poly_bundle(p: &ParameterData) -> Result<PolySeqBundle, PolysError> {
    let report = validate_parameter_array(p).map_err(|_| PolysError::InvalidParameters)?;
    if !report.overall {
        return Err(PolysError::InvalidParameters);
    }
    let d = p.d;
    let basis = TauEtaBasis::new(&p.theta, &p.theta_star);
    let pref = varphi_prefix_products(p);
    let build_side = |tau: &[Poly], tau_star: &[Poly], eigs: &[FieldValue], origin: &FieldValue| {
        let mut ps = Vec::with_capacity(d + 2);
        let mut us = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let denom = tau_star[i]
                .eval(&eigs[i])
                .inv()
                .expect("distinct eigenvalues give nonzero factorial values");
            let mut monic = Poly::zero(&p.spec());
            let mut normalized = Poly::zero(&p.spec());
            for h in 0..=i {
                let weight = tau_star[h].eval(&eigs[i]).div(&pref[h]);
                normalized = normalized.add(&tau[h].scale(&weight));
                monic = monic.add(&tau[h].scale(&weight.mul(&pref[i]).mul(&denom)));
            }
            // The two summation formulas differ by the scalar
            // p_i(θ_0) = (φ_1 ... φ_i) / τ*_i(θ*_i).
            let at_zero = monic.eval(origin);
            assert_eq!(
                monic,
                normalized.scale(&at_zero),
                "monic and normalized sums must agree up to p_i(theta_0)"
            );
            ps.push(monic);
            us.push(normalized);
        }
        ps.push(tau[d + 1].clone());
        (ps, us)
    };
    let (p_seq, u_seq) = build_side(&basis.tau, &basis.tau_star, &p.theta_star, &p.theta[0]);
    let (p_star_seq, u_star_seq) =
        build_side(&basis.tau_star, &basis.tau, &p.theta, &p.theta_star[0]);
    Ok(PolySeqBundle {
        p: p_seq,
        p_star: p_star_seq,
        u: u_seq,
        u_star: u_star_seq,
    })
}

/// Recurrence and orthogonality scalars, each computed two ways where the
/// source offers two routes: a_i by trace and by the closed formula, x_i by
/// trace and as b_{i−1} c_i, and the total mass n by inverting m_0 and by
/// the quotient of factorial values. Any disagreement is reported as
/// corrupt upstream data.
pub fn recurrence_data(
    rep: &LeonardSystemRep,
    p: &ParameterData,
) -> Result<RecurrenceData, PolysError> {
    assert_eq!(rep.d(), p.d, "diameter mismatch");
    assert_eq!(rep.spec(), p.spec(), "field mismatch");
    let d = p.d;
    let basis = TauEtaBasis::new(&p.theta, &p.theta_star);
    let closed = crate::system::trace_coefficients_closed(p)
        .map_err(|_| PolysError::InvalidParameters)?;
    let a: Vec<FieldValue> = (0..=d)
        .map(|i| rep.dual_idempotent(i).mul(rep.a()).trace())
        .collect();
    if a != closed.a {
        return Err(PolysError::InconsistentData);
    }
    let b: Vec<FieldValue> = (0..d)
        .map(|i| {
            let num = basis.tau_star[i].eval(&p.theta_star[i]);
            let den = basis.tau_star[i + 1].eval(&p.theta_star[i + 1]);
            p.varphi_i(i + 1).mul(&num).div(&den)
        })
        .collect();
    let c: Vec<FieldValue> = (1..=d)
        .map(|i| {
            let num = basis.eta_star[d - i].eval(&p.theta_star[i]);
            let den = basis.eta_star[d - i + 1].eval(&p.theta_star[i - 1]);
            p.phi_i(i).mul(&num).div(&den)
        })
        .collect();
    let mut x = Vec::with_capacity(d);
    for i in 1..=d {
        let direct = rep
            .dual_idempotent(i)
            .mul(rep.a())
            .mul(rep.dual_idempotent(i - 1))
            .mul(rep.a())
            .trace();
        if direct != b[i - 1].mul(&c[i - 1]) {
            return Err(PolysError::InconsistentData);
        }
        x.push(direct);
    }
    // theta_0 = c_i + a_i + b_i with the conventions c_0 = 0, b_d = 0.
    let zero = FieldValue::zero(&p.spec());
    for i in 0..=d {
        let ci = if i == 0 { &zero } else { &c[i - 1] };
        let bi = if i == d { &zero } else { &b[i] };
        if ci.add(&a[i]).add(bi) != p.theta[0] {
            return Err(PolysError::InconsistentData);
        }
    }
    let m: Vec<FieldValue> = (0..=d)
        .map(|i| rep.idempotent(i).mul(rep.dual_idempotent(0)).trace())
        .collect();
    let m_star: Vec<FieldValue> = (0..=d)
        .map(|i| rep.dual_idempotent(i).mul(rep.idempotent(0)).trace())
        .collect();
    if m[0] != m_star[0] || m.iter().chain(&m_star).any(|v| v.is_zero()) {
        return Err(PolysError::InconsistentData);
    }
    let n = m[0].inv().expect("m_0 is nonzero");
    let phi_product = (1..=d).fold(FieldValue::one(&p.spec()), |acc, i| acc.mul(p.phi_i(i)));
    let n_closed = basis.eta[d]
        .eval(&p.theta[0])
        .mul(&basis.eta_star[d].eval(&p.theta_star[0]))
        .div(&phi_product);
    if n != n_closed {
        return Err(PolysError::InconsistentData);
    }
    let k: Vec<FieldValue> = m_star.iter().map(|ms| ms.mul(&n)).collect();
    let k_sum = k.iter().fold(FieldValue::zero(&p.spec()), |acc, v| acc.add(v));
    if k_sum != n {
        return Err(PolysError::InconsistentData);
    }
    Ok(RecurrenceData { a, x, b, c, k, m, n })
}

/// Evaluate all four orthogonality relations exactly and return their
/// residual grids: the monic family against the weights m_r with squared
/// norms x_1 ... x_i, its transpose over eigenvalue pairs, and the same two
/// for the normalized family with squared norms 1/k_i.
pub fn orthogonality_check(
    bundle: &PolySeqBundle,
    rec: &RecurrenceData,
    p: &ParameterData,
) -> OrthogonalityReport {
    let d = p.d;
    let spec = p.spec();
    let zero = FieldValue::zero(&spec);
    let one = FieldValue::one(&spec);
    let p_vals: Vec<Vec<FieldValue>> = (0..=d)
        .map(|i| (0..=d).map(|r| bundle.p[i].eval(&p.theta[r])).collect())
        .collect();
    let u_vals: Vec<Vec<FieldValue>> = (0..=d)
        .map(|i| (0..=d).map(|r| bundle.u[i].eval(&p.theta[r])).collect())
        .collect();
    let mut x_prod = vec![one.clone()];
    for i in 1..=d {
        x_prod.push(x_prod[i - 1].mul(&rec.x[i - 1]));
    }
    let m_inv: Vec<FieldValue> = rec
        .m
        .iter()
        .map(|v| v.inv().expect("weights are nonzero"))
        .collect();
    let k_inv: Vec<FieldValue> = rec
        .k
        .iter()
        .map(|v| v.inv().expect("normalized weights are nonzero"))
        .collect();
    let grid = |f: &dyn Fn(usize, usize) -> FieldValue| -> Vec<Vec<FieldValue>> {
        (0..=d)
            .map(|i| (0..=d).map(|j| f(i, j)).collect())
            .collect()
    };
    let monic_pairs = grid(&|i, j| {
        let sum = (0..=d).fold(zero.clone(), |acc, r| {
            acc.add(&p_vals[i][r].mul(&p_vals[j][r]).mul(&rec.m[r]))
        });
        let target = if i == j { &x_prod[i] } else { &zero };
        sum.sub(target)
    });
    let monic_points = grid(&|r, s| {
        let sum = (0..=d).fold(zero.clone(), |acc, i| {
            acc.add(&p_vals[i][r].mul(&p_vals[i][s]).div(&x_prod[i]))
        });
        let target = if r == s { &m_inv[r] } else { &zero };
        sum.sub(target)
    });
    let normalized_pairs = grid(&|i, j| {
        let sum = (0..=d).fold(zero.clone(), |acc, r| {
            acc.add(&u_vals[i][r].mul(&u_vals[j][r]).mul(&rec.m[r]))
        });
        let target = if i == j { &k_inv[i] } else { &zero };
        sum.sub(target)
    });
    let normalized_points = grid(&|r, s| {
        let sum = (0..=d).fold(zero.clone(), |acc, i| {
            acc.add(&u_vals[i][r].mul(&u_vals[i][s]).mul(&rec.k[i]))
        });
        let target = if r == s { &m_inv[r] } else { &zero };
        sum.sub(target)
    });
    OrthogonalityReport {
        monic_pairs,
        monic_points,
        normalized_pairs,
        normalized_points,
    }
}

fn pochhammer(a: &FieldValue, q: &FieldValue, n: usize) -> FieldValue {
    let one = FieldValue::one(&a.spec());
    let mut factor = a.clone();
    let mut out = one.clone();
    for _ in 0..n {
        out = out.mul(&one.sub(&factor));
        factor = factor.mul(q);
    }
    out
}

/// Evaluate the terminating basic hypergeometric sum giving the common
/// value of u_i(θ_j) and u*_j(θ*_i) for the q-Racah parameter family. The
/// sum truncates after min(i, j) + 1 terms because the shifted factorial of
/// q^{−i} (or q^{−j}) vanishes beyond that point.
pub fn qracah_u_value(inp: &QRacahEvalInput) -> Result<FieldValue, PolysError> {
    let q = &inp.input.q;
    let spec = q.spec();
    let one = FieldValue::one(&spec);
    assert!(inp.i <= inp.input.d && inp.j <= inp.input.d, "indices exceed diameter");
    if q.is_zero() {
        return Err(PolysError::ZeroDenominator);
    }
    let q_inv = q.inv().expect("nonzero");
    let pow = |base: &FieldValue, e: usize| -> FieldValue {
        (0..e).fold(one.clone(), |acc, _| acc.mul(base))
    };
    let q_mi = pow(&q_inv, inp.i);
    let q_mj = pow(&q_inv, inp.j);
    let q_md = pow(&q_inv, inp.input.d);
    let ss_qi = inp.input.s_star.mul(&pow(q, inp.i + 1));
    let s_qj = inp.input.s.mul(&pow(q, inp.j + 1));
    let r1q = inp.input.r1.mul(q);
    let r2q = inp.input.r2.mul(q);
    let top = inp.i.min(inp.j);
    let mut total = FieldValue::zero(&spec);
    for n in 0..=top {
        let numerator = pochhammer(&q_mi, q, n)
            .mul(&pochhammer(&ss_qi, q, n))
            .mul(&pochhammer(&q_mj, q, n))
            .mul(&pochhammer(&s_qj, q, n))
            .mul(&pow(q, n));
        let denominator = pochhammer(&r1q, q, n)
            .mul(&pochhammer(&r2q, q, n))
            .mul(&pochhammer(&q_md, q, n))
            .mul(&pochhammer(q, q, n));
        if denominator.is_zero() {
            return Err(PolysError::ZeroDenominator);
        }
        total = total.add(&numerator.div(&denominator));
    }
    Ok(total)
}
