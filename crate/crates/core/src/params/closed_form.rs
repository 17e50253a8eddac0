use super::ParamsError;
use crate::exactfield::{FieldSpec, FieldValue};
use std::fmt;

/// Element a + b·q of the quadratic extension ℱ[q], where q satisfies
/// q² = βq − 1 (so q + q⁻¹ = β).
///
/// When λ² − βλ + 1 already has a root in ℱ, no extension is needed: such
/// computations carry b = 0 throughout and stay inside the base field, which
/// keeps every element invertible even though the quotient ring has zero
/// divisors in that case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: FieldValue,
    b: FieldValue,
    beta: FieldValue,
}

impl QuadExt {
    pub fn new(a: FieldValue, b: FieldValue, beta: &FieldValue) -> QuadExt {
        assert!(
            a.spec() == b.spec() && a.spec() == beta.spec(),
            "extension parts must share one field"
        );
        QuadExt {
            a,
            b,
            beta: beta.clone(),
        }
    }

    pub fn from_base(v: FieldValue, beta: &FieldValue) -> QuadExt {
        let z = FieldValue::zero(&v.spec());
        QuadExt::new(v, z, beta)
    }

    pub fn zero(spec: &FieldSpec, beta: &FieldValue) -> QuadExt {
        QuadExt::from_base(FieldValue::zero(spec), beta)
    }

    pub fn one(spec: &FieldSpec, beta: &FieldValue) -> QuadExt {
        QuadExt::from_base(FieldValue::one(spec), beta)
    }

    /// The extension generator q itself (0 + 1·q).
    pub fn generator(beta: &FieldValue) -> QuadExt {
        let spec = beta.spec();
        QuadExt::new(FieldValue::zero(&spec), FieldValue::one(&spec), beta)
    }

    pub fn spec(&self) -> FieldSpec {
        self.a.spec()
    }

    pub fn beta_value(&self) -> &FieldValue {
        &self.beta
    }

    pub fn constant_part(&self) -> &FieldValue {
        &self.a
    }

    pub fn q_part(&self) -> &FieldValue {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }

    /// The base-field value, if the q-part vanishes.
    pub fn into_base(self) -> Option<FieldValue> {
        if self.b.is_zero() {
            Some(self.a)
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &QuadExt) {
        debug_assert!(
            self.beta == other.beta,
            "extension elements built over different beta"
        );
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        QuadExt::new(self.a.add(&other.a), self.b.add(&other.b), &self.beta)
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        QuadExt::new(self.a.sub(&other.a), self.b.sub(&other.b), &self.beta)
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(self.a.neg(), self.b.neg(), &self.beta)
    }

    /// (a + bq)(c + dq) = (ac − bd) + (ad + bc + bdβ)q, using q² = βq − 1.
    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        let ac = self.a.mul(&other.a);
        let bd = self.b.mul(&other.b);
        let ad = self.a.mul(&other.b);
        let bc = self.b.mul(&other.a);
        QuadExt::new(
            ac.sub(&bd),
            ad.add(&bc).add(&bd.mul(&self.beta)),
            &self.beta,
        )
    }

    /// Conjugate (a + bβ) − bq, the image of q under q ↦ β − q = q⁻¹.
    pub fn conj(&self) -> QuadExt {
        QuadExt::new(self.a.add(&self.b.mul(&self.beta)), self.b.neg(), &self.beta)
    }

    /// Norm (self · conj), a base-field value: a² + abβ + b².
    pub fn norm(&self) -> FieldValue {
        let a2 = self.a.mul(&self.a);
        let ab = self.a.mul(&self.b).mul(&self.beta);
        let b2 = self.b.mul(&self.b);
        a2.add(&ab).add(&b2)
    }

    /// Multiplicative inverse conj/norm; None when the norm vanishes (only
    /// possible for zero or a zero divisor of a reducible quotient).
    pub fn inv(&self) -> Option<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let ninv = n.inv().expect("nonzero norm");
        let c = self.conj();
        Some(QuadExt::new(c.a.mul(&ninv), c.b.mul(&ninv), &self.beta))
    }

    pub fn pow(&self, e: i64) -> QuadExt {
        let spec = self.spec();
        let base = if e < 0 {
            self.inv().expect("inverting a non-invertible element")
        } else {
            self.clone()
        };
        let mut acc = QuadExt::one(&spec, &self.beta);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})q", self.a, self.b)
        }
    }
}

/// Result of fitting a beta-recurrent sequence to its closed form.
///
/// The basis depends on beta and the characteristic: geometric
/// {1, qⁱ, q⁻ⁱ} when β ≠ ±2, polynomial {1, i, i²} when β = 2 away from
/// characteristic 2, alternating {1, (−1)ⁱ, i(−1)ⁱ} when β = −2 away from
/// characteristic 2, and the binomial basis {1, i, C(i,2) mod 2} when β = 0
/// in characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormFit {
    Geometric {
        q: QuadExt,
        alpha: [QuadExt; 3],
        in_extension: bool,
    },
    Quadratic {
        alpha: [FieldValue; 3],
    },
    Alternating {
        alpha: [FieldValue; 3],
    },
    CharTwo {
        alpha: [FieldValue; 3],
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BasisKind {
    Quadratic,
    Alternating,
    CharTwo,
}

/// C(i,2) reduced mod 2: zero when i ≡ 0, 1 (mod 4), one when i ≡ 2, 3.
fn binom2_mod2(i: usize) -> i64 {
    match i % 4 {
        2 | 3 => 1,
        _ => 0,
    }
}

fn basis_base(kind: BasisKind, k: usize, i: usize, spec: &FieldSpec) -> FieldValue {
    let iv = FieldValue::from_i64(spec, i as i64);
    match (kind, k) {
        (_, 0) => FieldValue::one(spec),
        (BasisKind::Quadratic, 1) => iv,
        (BasisKind::Quadratic, 2) => iv.mul(&iv),
        (BasisKind::Alternating, 1) => FieldValue::from_i64(spec, if i % 2 == 1 { -1 } else { 1 }),
        (BasisKind::Alternating, 2) => {
            let sign = FieldValue::from_i64(spec, if i % 2 == 1 { -1 } else { 1 });
            iv.mul(&sign)
        }
        (BasisKind::CharTwo, 1) => iv,
        (BasisKind::CharTwo, 2) => FieldValue::from_i64(spec, binom2_mod2(i)),
        _ => unreachable!("basis index out of range"),
    }
}

/// A root of λ² − βλ + 1 in the base field, if one exists. Away from
/// characteristic 2 the canonical root (β + √(β²−4))/2 is taken, with the
/// canonical square root of the discriminant; in characteristic 2 the two
/// field elements are tested directly.
fn base_root(beta: &FieldValue, spec: &FieldSpec) -> Option<FieldValue> {
    if spec.characteristic() == 2 {
        let one = FieldValue::one(spec);
        for r in 0..2 {
            let cand = FieldValue::from_i64(spec, r);
            let val = cand.mul(&cand).sub(&beta.mul(&cand)).add(&one);
            if val.is_zero() {
                return Some(cand);
            }
        }
        None
    } else {
        let disc = beta.mul(beta).sub(&FieldValue::from_i64(spec, 4));
        disc.sqrt()
            .map(|s| beta.add(&s).div(&FieldValue::from_i64(spec, 2)))
    }
}

/// Solves for the first m = min(3, len) basis coefficients at indices
/// 0..m−1 (the basis matrices involved are nonsingular), then verifies the
/// fit on every index.
fn fit_basis(
    seq: &[FieldValue],
    beta: &FieldValue,
    basis: impl Fn(usize, usize) -> QuadExt,
) -> Result<[QuadExt; 3], ParamsError> {
    let spec = seq[0].spec();
    let m = seq.len().min(3);
    let mut rows: Vec<Vec<QuadExt>> = (0..m)
        .map(|i| {
            let mut row: Vec<QuadExt> = (0..m).map(|k| basis(k, i)).collect();
            row.push(QuadExt::from_base(seq[i].clone(), beta));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .expect("fit basis matrix is nonsingular");
        rows.swap(col, pivot);
        let inv = rows[col][col].inv().expect("pivot is invertible");
        for k in col..=m {
            rows[col][k] = rows[col][k].mul(&inv);
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in col..=m {
                    rows[r][k] = rows[r][k].sub(&f.mul(&rows[col][k]));
                }
            }
        }
    }
    let mut alpha = [
        QuadExt::zero(&spec, beta),
        QuadExt::zero(&spec, beta),
        QuadExt::zero(&spec, beta),
    ];
    for (k, row) in rows.iter().enumerate() {
        alpha[k] = row[m].clone();
    }
    for (i, want) in seq.iter().enumerate() {
        let mut val = QuadExt::zero(&spec, beta);
        for (k, coeff) in alpha.iter().enumerate() {
            val = val.add(&coeff.mul(&basis(k, i)));
        }
        if val != QuadExt::from_base(want.clone(), beta) {
            return Err(ParamsError::InconsistentSequence);
        }
    }
    Ok(alpha)
}

fn fit_base_kind(
    seq: &[FieldValue],
    beta: &FieldValue,
    kind: BasisKind,
) -> Result<[FieldValue; 3], ParamsError> {
    let spec = seq[0].spec();
    let alpha = fit_basis(seq, beta, |k, i| {
        QuadExt::from_base(basis_base(kind, k, i, &spec), beta)
    })?;
    Ok(alpha.map(|a| a.into_base().expect("base basis stays in base field")))
}

/// Fits a beta-recurrent sequence to the closed form its (beta,
/// characteristic) case dictates, solving a small linear system exactly and
/// verifying every index.
///
/// `char_f` must be the characteristic of the sequence's field (0 for the
/// rationals); it selects among the β = ±2 degenerate bases. For β ≠ ±2 the
/// root q of λ² − βλ + 1 is found in the field when possible; otherwise the
/// fit moves to the quadratic extension ℱ[q], or fails with NoQInField when
/// `allow_extension` is false. A sequence not matching its closed form at
/// every index fails with InconsistentSequence.
pub fn fit_closed_form(
    seq: &[FieldValue],
    beta: &FieldValue,
    char_f: u64,
    allow_extension: bool,
) -> Result<ClosedFormFit, ParamsError> {
    assert!(!seq.is_empty(), "empty sequence");
    let spec = seq[0].spec();
    assert!(
        seq.iter().all(|v| v.spec() == spec) && beta.spec() == spec,
        "sequence and beta must share one field"
    );
    assert_eq!(
        char_f,
        spec.characteristic(),
        "declared characteristic must match the field"
    );
    if char_f == 2 {
        if beta.is_zero() {
            let alpha = fit_base_kind(seq, beta, BasisKind::CharTwo)?;
            return Ok(ClosedFormFit::CharTwo { alpha });
        }
    } else if *beta == FieldValue::from_i64(&spec, 2) {
        let alpha = fit_base_kind(seq, beta, BasisKind::Quadratic)?;
        return Ok(ClosedFormFit::Quadratic { alpha });
    } else if *beta == FieldValue::from_i64(&spec, -2) {
        let alpha = fit_base_kind(seq, beta, BasisKind::Alternating)?;
        return Ok(ClosedFormFit::Alternating { alpha });
    }
    let (q, in_extension) = match base_root(beta, &spec) {
        Some(r) => (QuadExt::from_base(r, beta), false),
        None if allow_extension => (QuadExt::generator(beta), true),
        None => return Err(ParamsError::NoQInField),
    };
    let q_inv = q.inv().expect("q is invertible");
    let one = QuadExt::one(&spec, beta);
    let alpha = fit_basis(seq, beta, |k, i| match k {
        0 => one.clone(),
        1 => q.pow(i as i64),
        2 => q_inv.pow(i as i64),
        _ => unreachable!("basis index out of range"),
    })?;
    Ok(ClosedFormFit::Geometric {
        q,
        alpha,
        in_extension,
    })
}

impl ClosedFormFit {
    /// The fitted value at index i, when it lies in the base field. A
    /// geometric fit whose coefficients genuinely use the extension can
    /// produce values with a nonzero q-part; those return None.
    pub fn eval(&self, i: usize) -> Option<FieldValue> {
        match self {
            ClosedFormFit::Geometric { q, alpha, .. } => {
                let spec = q.spec();
                let beta = q.beta_value().clone();
                let q_inv = q.inv().expect("q is invertible");
                let mut val = QuadExt::zero(&spec, &beta);
                let powers = [
                    QuadExt::one(&spec, &beta),
                    q.pow(i as i64),
                    q_inv.pow(i as i64),
                ];
                for (coeff, p) in alpha.iter().zip(powers.iter()) {
                    val = val.add(&coeff.mul(p));
                }
                val.into_base()
            }
            ClosedFormFit::Quadratic { alpha } => Some(eval_base(alpha, BasisKind::Quadratic, i)),
            ClosedFormFit::Alternating { alpha } => {
                Some(eval_base(alpha, BasisKind::Alternating, i))
            }
            ClosedFormFit::CharTwo { alpha } => Some(eval_base(alpha, BasisKind::CharTwo, i)),
        }
    }
}

fn eval_base(alpha: &[FieldValue; 3], kind: BasisKind, i: usize) -> FieldValue {
    let spec = alpha[0].spec();
    let mut val = FieldValue::zero(&spec);
    for (k, coeff) in alpha.iter().enumerate() {
        val = val.add(&coeff.mul(&basis_base(kind, k, i, &spec)));
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<FieldValue> {
        ss.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn quadext_ring_identities() {
        let beta = q("7");
        let gen = QuadExt::generator(&beta);
        let one = QuadExt::one(&RAT, &beta);
        // q² = βq − 1.
        let q2 = gen.mul(&gen);
        assert_eq!(
            q2,
            QuadExt::new(q("-1"), q("7"), &beta),
        );
        // q · q⁻¹ = 1 and q + q⁻¹ = β.
        let qi = gen.inv().unwrap();
        assert_eq!(gen.mul(&qi), one);
        assert_eq!(gen.add(&qi), QuadExt::from_base(q("7"), &beta));
        // Norm is multiplicative on a sample pair.
        let x = QuadExt::new(q("2"), q("3"), &beta);
        let y = QuadExt::new(q("-1"), q("5"), &beta);
        assert_eq!(x.mul(&y).norm(), x.norm().mul(&y.norm()));
        // Inverse round-trip.
        assert_eq!(x.mul(&x.inv().unwrap()), one);
    }

    #[test]
    fn arithmetic_progression_fits_quadratic() {
        let fit = fit_closed_form(&qv(&["0", "1", "2", "3"]), &q("2"), 0, true).unwrap();
        let ClosedFormFit::Quadratic { alpha } = &fit else {
            panic!("expected quadratic basis");
        };
        assert_eq!(alpha, &[q("0"), q("1"), q("0")]);
        assert_eq!(fit.eval(7), Some(q("7")));
    }

    #[test]
    fn geometric_sequence_fits_with_rational_q() {
        // theta_i = (1 - 2^i)(1 - 2^{i+1}) / 2^i, beta = 5/2.
        let seq = qv(&["0", "3/2", "21/4", "105/8"]);
        let fit = fit_closed_form(&seq, &q("5/2"), 0, false).unwrap();
        let ClosedFormFit::Geometric {
            q: root,
            alpha,
            in_extension,
        } = &fit
        else {
            panic!("expected geometric basis");
        };
        assert!(!in_extension);
        let beta = q("5/2");
        assert_eq!(root, &QuadExt::from_base(q("2"), &beta));
        assert_eq!(
            alpha,
            &[
                QuadExt::from_base(q("-3"), &beta),
                QuadExt::from_base(q("2"), &beta),
                QuadExt::from_base(q("1"), &beta),
            ]
        );
        for (i, want) in seq.iter().enumerate() {
            assert_eq!(fit.eval(i).as_ref(), Some(want));
        }
    }

    #[test]
    fn char_two_binomial_basis() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let seq: Vec<FieldValue> = [0i64, 1, 1, 0]
            .iter()
            .map(|&v| FieldValue::from_i64(&f2, v))
            .collect();
        let beta = FieldValue::zero(&f2);
        let fit = fit_closed_form(&seq, &beta, 2, true).unwrap();
        let ClosedFormFit::CharTwo { alpha } = &fit else {
            panic!("expected characteristic-2 basis");
        };
        let one = FieldValue::one(&f2);
        let zero = FieldValue::zero(&f2);
        assert_eq!(alpha, &[zero, one.clone(), one]);
        for (i, want) in seq.iter().enumerate() {
            assert_eq!(fit.eval(i).as_ref(), Some(want));
        }
    }

    #[test]
    fn alternating_basis() {
        // f(i) = 1 + 2(-1)^i + 3i(-1)^i.
        let seq = qv(&["3", "-4", "9", "-10"]);
        let fit = fit_closed_form(&seq, &q("-2"), 0, true).unwrap();
        let ClosedFormFit::Alternating { alpha } = &fit else {
            panic!("expected alternating basis");
        };
        assert_eq!(alpha, &[q("1"), q("2"), q("3")]);
        assert_eq!(fit.eval(4), Some(q("15")));
    }

    #[test]
    fn extension_fit_when_no_rational_root() {
        // f(i) = q^i + q^{-i} with q a primitive 6th root of unity: beta = 1.
        let seq = qv(&["2", "1", "-1", "-2", "-1"]);
        let beta = q("1");
        let fit = fit_closed_form(&seq, &beta, 0, true).unwrap();
        let ClosedFormFit::Geometric {
            q: root,
            alpha,
            in_extension,
        } = &fit
        else {
            panic!("expected geometric basis");
        };
        assert!(in_extension);
        assert_eq!(root, &QuadExt::generator(&beta));
        assert_eq!(
            alpha,
            &[
                QuadExt::zero(&RAT, &beta),
                QuadExt::one(&RAT, &beta),
                QuadExt::one(&RAT, &beta),
            ]
        );
        for (i, want) in seq.iter().enumerate() {
            assert_eq!(fit.eval(i).as_ref(), Some(want));
        }
    }

    #[test]
    fn extension_disabled_reports_no_root() {
        let seq = qv(&["2", "1", "-1"]);
        let err = fit_closed_form(&seq, &q("1"), 0, false).unwrap_err();
        assert_eq!(err, ParamsError::NoQInField);
    }

    #[test]
    fn inconsistent_sequence_detected() {
        let seq = qv(&["0", "1", "2", "3", "10"]);
        let err = fit_closed_form(&seq, &q("2"), 0, true).unwrap_err();
        assert_eq!(err, ParamsError::InconsistentSequence);
    }

    #[test]
    fn prime_field_geometric_with_base_root() {
        // Over GF(11), lambda^2 - 7 lambda + 1 has roots 3 and 4; the
        // canonical choice is (7 + 1)/2 = 4, and 3^i is then alpha_3 q^{-i}.
        let f11 = FieldSpec::prime_field(11).unwrap();
        let seq: Vec<FieldValue> = [1i64, 3, 9, 5, 4]
            .iter()
            .map(|&v| FieldValue::from_i64(&f11, v))
            .collect();
        let beta = FieldValue::from_i64(&f11, 7);
        let fit = fit_closed_form(&seq, &beta, 11, false).unwrap();
        let ClosedFormFit::Geometric {
            q: root,
            alpha,
            in_extension,
        } = &fit
        else {
            panic!("expected geometric basis");
        };
        assert!(!in_extension);
        assert_eq!(
            root,
            &QuadExt::from_base(FieldValue::from_i64(&f11, 4), &beta)
        );
        assert_eq!(
            alpha,
            &[
                QuadExt::zero(&f11, &beta),
                QuadExt::zero(&f11, &beta),
                QuadExt::one(&f11, &beta),
            ]
        );
    }

    #[test]
    fn short_sequences_fit_trivially() {
        let fit = fit_closed_form(&qv(&["5"]), &q("5/2"), 0, false).unwrap();
        assert_eq!(fit.eval(0), Some(q("5")));
        assert_eq!(fit.eval(3), Some(q("5")));
        let fit = fit_closed_form(&qv(&["3", "9"]), &q("2"), 0, false).unwrap();
        let ClosedFormFit::Quadratic { alpha } = &fit else {
            panic!("expected quadratic basis");
        };
        assert_eq!(alpha, &[q("3"), q("6"), q("0")]);
    }
}
