use super::factor::divisors;
use super::matrix::SquareMatrix;
use super::value::{FieldSpec, FieldValue};
use num::bigint::BigInt;
use num::{Integer, One, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The zero polynomial was passed where a nonzero one is required.
    EmptyPolynomial,
    /// Operands from different fields.
    FieldMismatch,
    /// Division by the zero polynomial.
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::EmptyPolynomial => write!(f, "zero polynomial not allowed here"),
            PolyError::FieldMismatch => write!(f, "polynomials over different fields"),
            PolyError::DivisionByZero => write!(f, "polynomial division by zero"),
        }
    }
}

impl std::error::Error for PolyError {}

/// A univariate polynomial with coefficients in one exact field, stored
/// lowest degree first with no trailing zeros (the zero polynomial keeps an
/// empty coefficient list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldValue>,
}

impl Poly {
    pub fn zero(spec: &FieldSpec) -> Poly {
        Poly {
            spec: *spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly::constant(FieldValue::one(spec))
    }

    pub fn constant(v: FieldValue) -> Poly {
        let spec = v.spec();
        Poly::from_coeffs(&spec, vec![v])
    }

    /// Builds a polynomial from coefficients, lowest degree first, trimming
    /// trailing zeros. Panics if a coefficient is from another field.
    pub fn from_coeffs(spec: &FieldSpec, mut coeffs: Vec<FieldValue>) -> Poly {
        assert!(
            coeffs.iter().all(|c| c.spec() == *spec),
            "coefficient from wrong field"
        );
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            spec: *spec,
            coeffs,
        }
    }

    pub fn from_i64_coeffs(spec: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(
            spec,
            coeffs.iter().map(|&c| FieldValue::from_i64(spec, c)).collect(),
        )
    }

    /// The monic product of (x - r) over the given roots.
    pub fn from_roots(spec: &FieldSpec, roots: &[FieldValue]) -> Poly {
        let mut p = Poly::one(spec);
        for r in roots {
            let factor = Poly::from_coeffs(spec, vec![r.neg(), FieldValue::one(spec)]);
            p = p.mul(&factor);
        }
        p
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FieldValue] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> FieldValue {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldValue::zero(&self.spec))
    }

    pub fn leading(&self) -> Option<&FieldValue> {
        self.coeffs.last()
    }

    fn expect_same_field(&self, other: &Poly) {
        assert!(self.spec == other.spec, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.expect_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Poly::from_coeffs(&self.spec, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &FieldValue) -> Poly {
        assert!(c.spec() == self.spec, "scalar from wrong field");
        Poly::from_coeffs(&self.spec, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.expect_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut coeffs =
            vec![FieldValue::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.spec, coeffs)
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        if self.spec != divisor.spec {
            return Err(PolyError::FieldMismatch);
        }
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldValue::zero(&self.spec); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().mul(&lead_inv);
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(b));
                }
                quot[k] = c;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        Ok((
            Poly::from_coeffs(&self.spec, quot),
            Poly::from_coeffs(&self.spec, rem),
        ))
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Result<Poly, PolyError> {
        let lead = self.leading().ok_or(PolyError::EmptyPolynomial)?;
        Ok(self.scale(&lead.inv().expect("nonzero leading")))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldValue) -> FieldValue {
        assert!(x.spec() == self.spec, "point from wrong field");
        let mut acc = FieldValue::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix (constant term times identity).
    pub fn eval_matrix(&self, m: &SquareMatrix) -> SquareMatrix {
        assert!(m.spec() == self.spec, "matrix over wrong field");
        let n = m.dim();
        let mut acc = SquareMatrix::zero(&self.spec, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            if !c.is_zero() {
                acc = acc.add(&SquareMatrix::identity(&self.spec, n).scale(c));
            }
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "({c})*x")?,
                _ if c.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic characteristic polynomial det(xI - m), by the Berkowitz
/// division-free algorithm, so it works over any field including small
/// characteristic.
pub fn char_poly(m: &SquareMatrix) -> Poly {
    let spec = m.spec();
    let n = m.dim();
    let one = FieldValue::one(&spec);
    // Coefficient vector of the characteristic polynomial of the leading
    // r x r principal block, highest degree first. Starts at r = 0.
    let mut v = vec![one.clone()];
    for r in 1..=n {
        // Toeplitz column: t[0] = 1, t[1] = -a_rr, t[k] = -(row. M^{k-2}. col).
        let a_diag = m.get(r - 1, r - 1).clone();
        let mut t = Vec::with_capacity(r + 1);
        t.push(one.clone());
        t.push(a_diag.neg());
        if r >= 2 {
            let row: Vec<FieldValue> = (0..r - 1).map(|j| m.get(r - 1, j).clone()).collect();
            let mut col: Vec<FieldValue> = (0..r - 1).map(|i| m.get(i, r - 1).clone()).collect();
            for _ in 2..=r {
                let mut dot = FieldValue::zero(&spec);
                for (a, b) in row.iter().zip(&col) {
                    dot = dot.add(&a.mul(b));
                }
                t.push(dot.neg());
                // col <- M . col, where M is the leading (r-1) x (r-1) block.
                col = (0..r - 1)
                    .map(|i| {
                        let mut acc = FieldValue::zero(&spec);
                        for (k, c) in col.iter().enumerate() {
                            acc = acc.add(&m.get(i, k).mul(c));
                        }
                        acc
                    })
                    .collect();
            }
        }
        // Multiply the lower-triangular Toeplitz matrix built from t into v.
        let mut next = vec![FieldValue::zero(&spec); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = FieldValue::zero(&spec);
            for (j, old) in v.iter().enumerate() {
                if i >= j && i - j <= r {
                    acc = acc.add(&t[i - j].mul(old));
                }
            }
            *slot = acc;
        }
        v = next;
    }
    v.reverse();
    Poly::from_coeffs(&spec, v)
}

/// All roots of p lying in the given field, with multiplicity, sorted.
///
/// Over the rationals this is the rational-root search: clear denominators,
/// factor the trailing and leading integer coefficients, test each candidate
/// divisor ratio, and deflate on success. Over GF(p) every residue is
/// tested. Roots outside the field (irrational, or absent mod p) are simply
/// not reported, so callers see fewer than deg(p) roots.
pub fn field_roots(p: &Poly, spec: &FieldSpec) -> Result<Vec<FieldValue>, PolyError> {
    if p.spec() != *spec {
        return Err(PolyError::FieldMismatch);
    }
    if p.is_zero() {
        return Err(PolyError::EmptyPolynomial);
    }
    let mut roots = match spec {
        FieldSpec::Rational => rational_roots(p),
        FieldSpec::PrimeField { modulus } => prime_roots(p, *modulus),
    };
    roots.sort_by(cmp_same_field);
    Ok(roots)
}

/// Total order on values of one field, for deterministic output.
pub(crate) fn cmp_same_field(a: &FieldValue, b: &FieldValue) -> Ordering {
    match (a, b) {
        (FieldValue::Rational(x), FieldValue::Rational(y)) => x.cmp(y),
        (FieldValue::Prime { residue: x, .. }, FieldValue::Prime { residue: y, .. }) => x.cmp(y),
        _ => panic!("comparing values from different fields"),
    }
}

fn rational_roots(p: &Poly) -> Vec<FieldValue> {
    let spec = FieldSpec::Rational;
    let mut roots = Vec::new();
    let mut work = p.clone();

    // Strip roots at zero first.
    let zero = FieldValue::zero(&spec);
    while !work.is_zero() && work.coeff(0).is_zero() && work.degree() > Some(0) {
        roots.push(zero.clone());
        let coeffs = work.coeffs()[1..].to_vec();
        work = Poly::from_coeffs(&spec, coeffs);
    }

    while work.degree().map_or(false, |d| d >= 1) {
        match find_rational_root(&work) {
            None => break,
            Some(r) => {
                let factor = Poly::from_coeffs(&spec, vec![r.neg(), FieldValue::one(&spec)]);
                loop {
                    let (q, rem) = work.div_rem(&factor).expect("nonzero factor");
                    if !rem.is_zero() {
                        break;
                    }
                    roots.push(r.clone());
                    work = q;
                    if work.degree().is_none() || work.degree() == Some(0) {
                        break;
                    }
                }
            }
        }
    }
    roots
}

/// One rational root of a polynomial with nonzero constant term, if any.
fn find_rational_root(p: &Poly) -> Option<FieldValue> {
    // Clear denominators to get integer coefficients.
    let mut denom_lcm = BigInt::one();
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.as_rational().denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational();
            r.numer() * (&denom_lcm / r.denom())
        })
        .collect();
    let trailing = ints.first().expect("nonzero poly");
    let leading = ints.last().expect("nonzero poly");
    debug_assert!(!trailing.is_zero() && !leading.is_zero());

    let nums = divisors(trailing);
    let dens = divisors(leading);
    for den in &dens {
        for num in &nums {
            if num.gcd(den) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = FieldValue::from_ratio(
                    &FieldSpec::Rational,
                    num * BigInt::from(sign),
                    den.clone(),
                )
                .expect("nonzero denominator");
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn prime_roots(p: &Poly, modulus: u64) -> Vec<FieldValue> {
    let spec = FieldSpec::PrimeField { modulus };
    let mut roots = Vec::new();
    let mut work = p.clone();
    for r in 0..modulus {
        let cand = FieldValue::Prime {
            residue: r,
            modulus,
        };
        while work.degree().map_or(false, |d| d >= 1) && work.eval(&cand).is_zero() {
            roots.push(cand.clone());
            let factor = Poly::from_coeffs(&spec, vec![cand.neg(), FieldValue::one(&spec)]);
            let (q, rem) = work.div_rem(&factor).expect("nonzero factor");
            debug_assert!(rem.is_zero());
            work = q;
        }
        if work.degree() == Some(0) {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    #[test]
    fn construction_trims_trailing_zeros() {
        let p = Poly::from_i64_coeffs(&RAT, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let z = Poly::from_i64_coeffs(&RAT, &[0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = Poly::from_i64_coeffs(&RAT, &[1, 2, 3]);
        let b = Poly::from_i64_coeffs(&RAT, &[-1, 1]);
        let prod = a.mul(&b);
        let (quot, rem) = prod.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, a);
        assert_eq!(a.sub(&a), Poly::zero(&RAT));
    }

    #[test]
    fn div_rem_with_remainder() {
        // x^3 + 1 = (x + 1)(x^2 - x + 1) + 0; x^3 + x = (x^2 + 1) * x + 0;
        // x^2 + 1 over (x - 1) leaves remainder 2.
        let p = Poly::from_i64_coeffs(&RAT, &[1, 0, 1]);
        let d = Poly::from_i64_coeffs(&RAT, &[-1, 1]);
        let (quot, rem) = p.div_rem(&d).unwrap();
        assert_eq!(quot, Poly::from_i64_coeffs(&RAT, &[1, 1]));
        assert_eq!(rem, Poly::from_i64_coeffs(&RAT, &[2]));
        assert!(p.div_rem(&Poly::zero(&RAT)).is_err());
    }

    #[test]
    fn eval_horner() {
        let p = Poly::from_i64_coeffs(&RAT, &[2, -3, 1]); // x^2 - 3x + 2
        assert_eq!(p.eval(&q("1")), q("0"));
        assert_eq!(p.eval(&q("2")), q("0"));
        assert_eq!(p.eval(&q("1/2")), q("3/4"));
    }

    #[test]
    fn char_poly_one_by_one() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[5]]);
        assert_eq!(char_poly(&m), Poly::from_i64_coeffs(&RAT, &[-5, 1]));
    }

    #[test]
    fn char_poly_diagonal() {
        let m = SquareMatrix::from_i64_rows(
            &RAT,
            &[&[3, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -3]],
        );
        let want = Poly::from_roots(&RAT, &[q("3"), q("1"), q("-1"), q("-3")]);
        assert_eq!(char_poly(&m), want);
    }

    #[test]
    fn char_poly_respects_similarity() {
        // The 4x4 irreducible tridiagonal example and its diagonal partner
        // are similar, so they share a characteristic polynomial.
        let a = SquareMatrix::from_i64_rows(
            &RAT,
            &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]],
        );
        let astar = SquareMatrix::from_i64_rows(
            &RAT,
            &[&[3, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -3]],
        );
        let got = char_poly(&a);
        assert_eq!(got, char_poly(&astar));
        // Expanded by hand: (x^2 - 9)(x^2 - 1) = x^4 - 10x^2 + 9.
        assert_eq!(got, Poly::from_i64_coeffs(&RAT, &[9, 0, -10, 0, 1]));
    }

    #[test]
    fn char_poly_small_characteristic() {
        // Berkowitz needs no divisions, so characteristic 2 at dimension 4
        // must work.
        let f2 = FieldSpec::prime_field(2).unwrap();
        let m = SquareMatrix::from_i64_rows(
            &f2,
            &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]],
        );
        let p = char_poly(&m);
        assert_eq!(p.degree(), Some(4));
        assert!(p.leading().unwrap().is_one());
        // Cayley-Hamilton as a sanity check.
        assert!(p.eval_matrix(&m).is_zero());
    }

    #[test]
    fn cayley_hamilton_rational() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2, 0], &[-1, 0, 3], &[2, 2, 2]]);
        assert!(char_poly(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn roots_of_quadratics() {
        let p = Poly::from_i64_coeffs(&RAT, &[-1, 0, 1]); // x^2 - 1
        assert_eq!(field_roots(&p, &RAT).unwrap(), vec![q("-1"), q("1")]);

        let f5 = FieldSpec::prime_field(5).unwrap();
        let p = Poly::from_i64_coeffs(&f5, &[1, 0, 1]); // x^2 + 1
        let got = field_roots(&p, &f5).unwrap();
        assert_eq!(
            got,
            vec![FieldValue::from_i64(&f5, 2), FieldValue::from_i64(&f5, 3)]
        );
    }

    #[test]
    fn roots_with_multiplicity_and_fractions() {
        // (2x - 1)^2 (x + 3) = 0 has roots 1/2, 1/2, -3.
        let p = Poly::from_roots(&RAT, &[q("1/2"), q("1/2"), q("-3")]).scale(&q("4"));
        let got = field_roots(&p, &RAT).unwrap();
        assert_eq!(got, vec![q("-3"), q("1/2"), q("1/2")]);
    }

    #[test]
    fn irrational_roots_not_reported() {
        // x^2 - 2 has no rational roots.
        let p = Poly::from_i64_coeffs(&RAT, &[-2, 0, 1]);
        assert!(field_roots(&p, &RAT).unwrap().is_empty());
        // x^3 - 2x^2 - 2x + 4 = (x - 2)(x^2 - 2): only the rational root.
        let p = Poly::from_i64_coeffs(&RAT, &[4, -2, -2, 1]);
        assert_eq!(field_roots(&p, &RAT).unwrap(), vec![q("2")]);
    }

    #[test]
    fn root_factors_divide_exactly() {
        let p = Poly::from_i64_coeffs(&RAT, &[0, 0, -4, 0, 1]); // x^2(x^2 - 4)
        let roots = field_roots(&p, &RAT).unwrap();
        assert_eq!(roots, vec![q("-2"), q("0"), q("0"), q("2")]);
        let prod = Poly::from_roots(&RAT, &roots);
        let (_, rem) = p.div_rem(&prod).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            field_roots(&Poly::zero(&RAT), &RAT),
            Err(PolyError::EmptyPolynomial)
        );
    }

    #[test]
    fn eval_matrix_constant_and_linear() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2], &[3, 4]]);
        let p = Poly::from_i64_coeffs(&RAT, &[7]); // constant 7
        assert_eq!(p.eval_matrix(&m), SquareMatrix::identity(&RAT, 2).scale(&q("7")));
        let p = Poly::from_i64_coeffs(&RAT, &[-1, 1]); // x - 1
        let want = m.sub(&SquareMatrix::identity(&RAT, 2));
        assert_eq!(p.eval_matrix(&m), want);
    }
}
