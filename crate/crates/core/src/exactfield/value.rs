use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;

/// Which exact field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rational,
    /// The prime field GF(p) for a prime modulus fitting a machine word.
    PrimeField { modulus: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Two values from different fields met in one operation.
    FieldMismatch,
    /// Inversion or division by zero was requested.
    DivisionByZero,
    /// The requested prime-field modulus is not prime.
    NotPrime(u64),
    /// A string did not parse as a value of the requested field.
    Parse(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::FieldMismatch => write!(f, "values belong to different fields"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::NotPrime(n) => write!(f, "{n} is not prime"),
            FieldError::Parse(s) => write!(f, "cannot parse field value: {s}"),
        }
    }
}

impl std::error::Error for FieldError {}

impl FieldSpec {
    /// Builds a prime-field spec, rejecting composite or tiny moduli.
    pub fn prime_field(modulus: u64) -> Result<FieldSpec, FieldError> {
        if is_prime_u64(modulus) {
            Ok(FieldSpec::PrimeField { modulus })
        } else {
            Err(FieldError::NotPrime(modulus))
        }
    }

    /// The field characteristic: 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::PrimeField { modulus } => *modulus,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::PrimeField { modulus } => write!(f, "gf({modulus})"),
        }
    }
}

/// A single scalar from one of the supported fields.
///
/// Rationals are always in lowest terms with positive denominator; prime
/// field values are residues in `[0, p)`. Equality is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl FieldValue {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldValue::Rational(_) => FieldSpec::Rational,
            FieldValue::Prime { modulus, .. } => FieldSpec::PrimeField { modulus: *modulus },
        }
    }

    pub fn zero(spec: &FieldSpec) -> FieldValue {
        match spec {
            FieldSpec::Rational => FieldValue::Rational(BigRational::zero()),
            FieldSpec::PrimeField { modulus } => FieldValue::Prime {
                residue: 0,
                modulus: *modulus,
            },
        }
    }

    pub fn one(spec: &FieldSpec) -> FieldValue {
        match spec {
            FieldSpec::Rational => FieldValue::Rational(BigRational::one()),
            FieldSpec::PrimeField { modulus } => FieldValue::Prime {
                residue: 1 % *modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn from_i64(spec: &FieldSpec, n: i64) -> FieldValue {
        FieldValue::from_integer(spec, BigInt::from(n))
    }

    pub fn from_integer(spec: &FieldSpec, n: BigInt) -> FieldValue {
        match spec {
            FieldSpec::Rational => FieldValue::Rational(BigRational::from_integer(n)),
            FieldSpec::PrimeField { modulus } => {
                let p = BigInt::from(*modulus);
                let r = n.mod_floor(&p);
                let residue = u64::try_from(r).expect("residue fits u64 after reduction");
                FieldValue::Prime {
                    residue,
                    modulus: *modulus,
                }
            }
        }
    }

    /// Builds the rational a/b over the requested field (over GF(p) this is
    /// the residue of a times the inverse residue of b).
    pub fn from_ratio(spec: &FieldSpec, num: BigInt, den: BigInt) -> Result<FieldValue, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match spec {
            FieldSpec::Rational => Ok(FieldValue::Rational(BigRational::new(num, den))),
            FieldSpec::PrimeField { .. } => {
                let n = FieldValue::from_integer(spec, num);
                let d = FieldValue::from_integer(spec, den);
                n.checked_div(&d)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_zero(),
            FieldValue::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_one(),
            FieldValue::Prime { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    fn expect_same_field(&self, other: &FieldValue) {
        assert!(
            self.spec() == other.spec(),
            "field mismatch: {} vs {}",
            self.spec(),
            other.spec()
        );
    }

    pub fn add(&self, other: &FieldValue) -> FieldValue {
        self.expect_same_field(other);
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (
                FieldValue::Prime { residue: a, modulus },
                FieldValue::Prime { residue: b, .. },
            ) => {
                let sum = (u128::from(*a) + u128::from(*b)) % u128::from(*modulus);
                FieldValue::Prime {
                    residue: sum as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("specs already checked"),
        }
    }

    pub fn sub(&self, other: &FieldValue) -> FieldValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldValue {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Prime { residue, modulus } => FieldValue::Prime {
                residue: if *residue == 0 { 0 } else { *modulus - *residue },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &FieldValue) -> FieldValue {
        self.expect_same_field(other);
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (
                FieldValue::Prime { residue: a, modulus },
                FieldValue::Prime { residue: b, .. },
            ) => {
                let prod = (u128::from(*a) * u128::from(*b)) % u128::from(*modulus);
                FieldValue::Prime {
                    residue: prod as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("specs already checked"),
        }
    }

    pub fn inv(&self) -> Result<FieldValue, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldValue::Rational(a) => FieldValue::Rational(a.recip()),
            FieldValue::Prime { residue, modulus } => FieldValue::Prime {
                residue: inv_mod(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        if self.spec() != other.spec() {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Division that panics on a zero divisor. For internal use where the
    /// divisor has already been checked nonzero.
    pub fn div(&self, other: &FieldValue) -> FieldValue {
        self.checked_div(other).expect("division by zero")
    }

    /// Integer power, with negative exponents going through the inverse.
    pub fn pow(&self, exp: i64) -> FieldValue {
        let spec = self.spec();
        if exp == 0 {
            return FieldValue::one(&spec);
        }
        let base = if exp < 0 {
            self.inv().expect("zero base with negative exponent")
        } else {
            self.clone()
        };
        let mut result = FieldValue::one(&spec);
        let mut acc = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&acc);
            }
            e >>= 1;
            if e > 0 {
                acc = acc.mul(&acc);
            }
        }
        result
    }

    /// A square root in the field, if one exists. Over the rationals both
    /// numerator and denominator must be perfect squares and the nonnegative
    /// root is returned; over GF(p) this is the Tonelli-Shanks algorithm and
    /// the smaller of the two residues is returned.
    pub fn sqrt(&self) -> Option<FieldValue> {
        match self {
            FieldValue::Rational(a) => {
                if a.is_negative() {
                    return None;
                }
                let num = a.numer();
                let den = a.denom();
                let sn = num.sqrt();
                let sd = den.sqrt();
                if &(&sn * &sn) == num && &(&sd * &sd) == den {
                    Some(FieldValue::Rational(BigRational::new(sn, sd)))
                } else {
                    None
                }
            }
            FieldValue::Prime { residue, modulus } => {
                // Canonical choice: the numerically smaller of the two roots.
                sqrt_mod(*residue, *modulus).map(|r| FieldValue::Prime {
                    residue: r.min((*modulus - r) % *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    /// Parses "a" or "a/b" (decimal, optional sign). Over GF(p) the parts
    /// are reduced mod p, with "a/b" meaning a times the inverse of b.
    pub fn parse(s: &str, spec: &FieldSpec) -> Result<FieldValue, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        let parse_int = |t: &str| t.parse::<BigInt>().map_err(|_| bad());
        match s.split_once('/') {
            None => Ok(FieldValue::from_integer(spec, parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(bad());
                }
                FieldValue::from_ratio(spec, num, den)
            }
        }
    }

    /// The value as a rational number. Panics on prime-field values; meant
    /// for contexts that already dispatched on the field.
    pub fn as_rational(&self) -> &BigRational {
        match self {
            FieldValue::Rational(r) => r,
            FieldValue::Prime { .. } => panic!("prime-field value used as rational"),
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldValue::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl std::ops::Add for &FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: &FieldValue) -> FieldValue {
        FieldValue::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: &FieldValue) -> FieldValue {
        FieldValue::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: &FieldValue) -> FieldValue {
        FieldValue::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        FieldValue::neg(self)
    }
}

/// Deterministic Miller-Rabin for u64 (the listed witnesses cover the full
/// 64-bit range).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        exp >>= 1;
        base = mul_mod(base, base, m);
    }
    result
}

/// Modular inverse for a nonzero residue modulo a prime, via Fermat.
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    pow_mod(a, p - 2, p)
}

/// Tonelli-Shanks square root mod an odd prime; direct answers for p = 2.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Find a quadratic nonresidue z.
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
