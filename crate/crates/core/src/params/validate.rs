use super::{ParameterData, ParamsError};
use crate::exactfield::FieldValue;

/// Outcome of one of the five defining conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub passed: bool,
    /// Paper indices i at which the condition fails (empty when it passes,
    /// or when the failure is global rather than index-local).
    pub offending: Vec<usize>,
}

impl ConditionReport {
    fn pass() -> ConditionReport {
        ConditionReport {
            passed: true,
            offending: Vec::new(),
        }
    }

    fn from_offending(offending: Vec<usize>) -> ConditionReport {
        ConditionReport {
            passed: offending.is_empty(),
            offending,
        }
    }

    fn fail_global() -> ConditionReport {
        ConditionReport {
            passed: false,
            offending: Vec::new(),
        }
    }
}

/// Per-condition outcome of the five-part parameter-array test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// (i) every varphi_i and phi_i is nonzero.
    pub nonzero: ConditionReport,
    /// (ii) theta pairwise distinct and theta_star pairwise distinct.
    pub distinct: ConditionReport,
    /// (iii) varphi_i equals phi_1 times the normalized theta sum plus
    /// (theta_star_i - theta_star_0)(theta_{i-1} - theta_d).
    pub varphi_formula: ConditionReport,
    /// (iv) phi_i equals varphi_1 times the normalized theta sum plus
    /// (theta_star_i - theta_star_0)(theta_{d-i+1} - theta_0).
    pub phi_formula: ConditionReport,
    /// (v) the two ratio families agree on a single common value for
    /// 2 <= i <= d-1.
    pub ratios_agree: ConditionReport,
    /// True when d <= 2, where condition (v) has an empty index range.
    pub ratios_vacuous: bool,
    /// The common ratio value when condition (v) passes non-vacuously.
    pub common_ratio: Option<FieldValue>,
    pub overall: bool,
}

/// The normalized partial sum over theta: sum of
/// (theta_h - theta_{d-h}) / (theta_0 - theta_d) for h = 0..i-1.
///
/// Defined for 0 <= i <= d+1. For d = 0 the value at i = 1 is taken to be 1
/// by convention (the quotient is formally 0/0 there, and 1 keeps the
/// boundary identities uniform).
pub fn vartheta_sum(theta: &[FieldValue], i: usize) -> Result<FieldValue, ParamsError> {
    assert!(!theta.is_empty(), "theta must have length d+1 >= 1");
    let d = theta.len() - 1;
    if i > d + 1 {
        return Err(ParamsError::IndexOutOfRange);
    }
    let spec = theta[0].spec();
    if d == 0 {
        // i is 0 or 1 here.
        return Ok(if i == 0 {
            FieldValue::zero(&spec)
        } else {
            FieldValue::one(&spec)
        });
    }
    if i == 0 {
        return Ok(FieldValue::zero(&spec));
    }
    let den = theta[0].sub(&theta[d]);
    if den.is_zero() {
        return Err(ParamsError::DegenerateDenominator);
    }
    let mut num = FieldValue::zero(&spec);
    for h in 0..i {
        num = num.add(&theta[h].sub(&theta[d - h]));
    }
    Ok(num.div(&den))
}

/// Builds the sequence the first-order recursion
/// x_{i+1} = x_i (theta_i - theta_{d-1}) / (theta_{i-1} - theta_d) + x_1
/// generates from a given x_1, for 1 <= i <= r-1.
///
/// Returns x_0..x_r with x_0 = 0. Any sequence satisfying that recursion is
/// x_1 times the normalized theta sum, so this is the directed converse of
/// the sum recursion, usable only with the seed value supplied.
pub fn vartheta_from_recursion(
    theta: &[FieldValue],
    x1: &FieldValue,
    r: usize,
) -> Result<Vec<FieldValue>, ParamsError> {
    assert!(!theta.is_empty(), "theta must have length d+1 >= 1");
    let d = theta.len() - 1;
    if r < 1 || r > d + 1 {
        return Err(ParamsError::IndexOutOfRange);
    }
    let spec = theta[0].spec();
    let mut out = vec![FieldValue::zero(&spec), x1.clone()];
    for i in 1..r {
        let den = theta[i - 1].sub(&theta[d]);
        if den.is_zero() {
            return Err(ParamsError::DegenerateDenominator);
        }
        let scaled = out[i].mul(&theta[i].sub(&theta[d - 1])).div(&den);
        out.push(scaled.add(x1));
    }
    Ok(out)
}

/// Checks the five conditions a parameter array must satisfy to come from a
/// Leonard system: nonzero split sequences, distinct eigenvalues, the two
/// sum formulas tying varphi and phi together, and the common-ratio
/// condition on both eigenvalue sequences.
pub fn validate_parameter_array(p: &ParameterData) -> Result<ValidationReport, ParamsError> {
    p.check_shape()?;
    let d = p.d;

    // (i) all varphi_i and phi_i nonzero.
    let mut zero_idx = Vec::new();
    for i in 1..=d {
        if p.varphi_i(i).is_zero() || p.phi_i(i).is_zero() {
            zero_idx.push(i);
        }
    }
    let nonzero = ConditionReport::from_offending(zero_idx);

    // (ii) theta pairwise distinct, theta_star pairwise distinct.
    let mut dup_idx = Vec::new();
    for seq in [&p.theta, &p.theta_star] {
        for i in 0..=d {
            for j in (i + 1)..=d {
                if seq[i] == seq[j] {
                    dup_idx.push(i);
                    dup_idx.push(j);
                }
            }
        }
    }
    dup_idx.sort_unstable();
    dup_idx.dedup();
    let distinct = ConditionReport::from_offending(dup_idx);

    // (iii) and (iv) need the normalized sums, hence theta_0 != theta_d.
    let sums_defined = d == 0 || p.theta[0] != p.theta[d];
    let (varphi_formula, phi_formula) = if !sums_defined {
        (ConditionReport::fail_global(), ConditionReport::fail_global())
    } else {
        let mut bad_varphi = Vec::new();
        let mut bad_phi = Vec::new();
        for i in 1..=d {
            let vs = vartheta_sum(&p.theta, i).expect("denominator checked");
            let want_varphi = p
                .phi_i(1)
                .mul(&vs)
                .add(&p.theta_star_i(i).sub(p.theta_star_i(0)).mul(&p.theta_i(i - 1).sub(p.theta_i(d))));
            if *p.varphi_i(i) != want_varphi {
                bad_varphi.push(i);
            }
            let want_phi = p
                .varphi_i(1)
                .mul(&vs)
                .add(&p.theta_star_i(i).sub(p.theta_star_i(0)).mul(&p.theta_i(d - i + 1).sub(p.theta_i(0))));
            if *p.phi_i(i) != want_phi {
                bad_phi.push(i);
            }
        }
        (
            ConditionReport::from_offending(bad_varphi),
            ConditionReport::from_offending(bad_phi),
        )
    };

    // (v) both ratio families equal and independent of i for 2 <= i <= d-1.
    let ratios_vacuous = d <= 2;
    let mut common_ratio: Option<FieldValue> = None;
    let ratios_agree = if ratios_vacuous {
        ConditionReport::pass()
    } else {
        let mut bad = Vec::new();
        let mut common: Option<FieldValue> = None;
        for i in 2..=(d - 1) {
            for seq in [&p.theta, &p.theta_star] {
                let den = seq[i - 1].sub(&seq[i]);
                if den.is_zero() {
                    bad.push(i);
                    continue;
                }
                let ratio = seq[i - 2].sub(&seq[i + 1]).div(&den);
                match &common {
                    None => common = Some(ratio),
                    Some(c) => {
                        if *c != ratio {
                            bad.push(i);
                        }
                    }
                }
            }
        }
        bad.sort_unstable();
        bad.dedup();
        let report = ConditionReport::from_offending(bad);
        if report.passed {
            common_ratio = common;
        }
        report
    };

    let overall = nonzero.passed
        && distinct.passed
        && varphi_formula.passed
        && phi_formula.passed
        && ratios_agree.passed;
    Ok(ValidationReport {
        nonzero,
        distinct,
        varphi_formula,
        phi_formula,
        ratios_agree,
        ratios_vacuous,
        common_ratio,
        overall,
    })
}

/// Derives the phi-sequence from theta, theta_star, and varphi:
/// phi_i = varphi_i - (theta_star_i - theta_star_{i-1}) times the raw sum of
/// (theta_h - theta_{d-h}) over h = 0..i-1. The sum here is not normalized.
pub fn phi_from_varphi(
    theta: &[FieldValue],
    theta_star: &[FieldValue],
    varphi: &[FieldValue],
) -> Result<Vec<FieldValue>, ParamsError> {
    if theta.is_empty() || theta.len() != theta_star.len() || varphi.len() + 1 != theta.len() {
        return Err(ParamsError::SizeMismatch);
    }
    let d = theta.len() - 1;
    let spec = theta[0].spec();
    let mut out = Vec::with_capacity(d);
    let mut raw_sum = FieldValue::zero(&spec);
    for i in 1..=d {
        raw_sum = raw_sum.add(&theta[i - 1].sub(&theta[d - i + 1]));
        let correction = theta_star[i].sub(&theta_star[i - 1]).mul(&raw_sum);
        out.push(varphi[i - 1].sub(&correction));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<FieldValue> {
        ss.iter().map(|s| q(s)).collect()
    }

    fn d1_example() -> ParameterData {
        ParameterData::new(1, qv(&["0", "1"]), qv(&["0", "1"]), qv(&["2"]), qv(&["3"])).unwrap()
    }

    #[test]
    fn vartheta_boundary_values() {
        // theta_i = 3 - 2i for d = 4: recurrent with beta = 2.
        let theta = qv(&["3", "1", "-1", "-3", "-5"]);
        let d = 4;
        assert_eq!(vartheta_sum(&theta, 0).unwrap(), q("0"));
        assert_eq!(vartheta_sum(&theta, 1).unwrap(), q("1"));
        assert_eq!(vartheta_sum(&theta, d).unwrap(), q("1"));
        assert_eq!(vartheta_sum(&theta, d + 1).unwrap(), q("0"));
        // Closed form i(d-i+1)/d at i = 2: 2*3/4 = 3/2.
        assert_eq!(vartheta_sum(&theta, 2).unwrap(), q("3/2"));
        assert!(vartheta_sum(&theta, d + 2).is_err());
    }

    #[test]
    fn vartheta_palindromy() {
        let theta = qv(&["3", "1", "-1", "-3", "-5"]);
        for i in 0..=5 {
            assert_eq!(
                vartheta_sum(&theta, i).unwrap(),
                vartheta_sum(&theta, 5 - i).unwrap(),
                "palindromy fails at {i}"
            );
        }
    }

    #[test]
    fn vartheta_degenerate_denominator() {
        let theta = qv(&["1", "5", "1"]);
        assert_eq!(
            vartheta_sum(&theta, 1),
            Err(ParamsError::DegenerateDenominator)
        );
        // i = 0 never divides.
        assert_eq!(vartheta_sum(&theta, 0).unwrap(), q("0"));
    }

    #[test]
    fn recursion_reproduces_scaled_sums() {
        let theta = qv(&["3", "1", "-1", "-3", "-5"]);
        let x1 = q("5");
        let got = vartheta_from_recursion(&theta, &x1, 5).unwrap();
        let want: Vec<FieldValue> = (0..=5)
            .map(|i| x1.mul(&vartheta_sum(&theta, i).unwrap()))
            .collect();
        assert_eq!(got, want);
        // Short prefixes agree too.
        let got = vartheta_from_recursion(&theta, &x1, 2).unwrap();
        assert_eq!(got, want[..3].to_vec());
        assert!(vartheta_from_recursion(&theta, &x1, 6).is_err());
        // A repeated theta_0 = theta_d kills the first denominator.
        let bad = qv(&["1", "5", "1"]);
        assert_eq!(
            vartheta_from_recursion(&bad, &x1, 2),
            Err(ParamsError::DegenerateDenominator)
        );
    }

    #[test]
    fn vartheta_d0_convention() {
        let theta = qv(&["7"]);
        assert_eq!(vartheta_sum(&theta, 0).unwrap(), q("0"));
        assert_eq!(vartheta_sum(&theta, 1).unwrap(), q("1"));
    }

    #[test]
    fn diameter_one_example_passes() {
        let report = validate_parameter_array(&d1_example()).unwrap();
        assert!(report.overall, "{report:?}");
        assert!(report.ratios_vacuous);
        assert_eq!(report.common_ratio, None);
    }

    #[test]
    fn zero_phi_fails_condition_one() {
        let p = ParameterData::new(1, qv(&["0", "1"]), qv(&["0", "1"]), qv(&["2"]), qv(&["0"]))
            .unwrap();
        let report = validate_parameter_array(&p).unwrap();
        assert!(!report.overall);
        assert!(!report.nonzero.passed);
        assert_eq!(report.nonzero.offending, vec![1]);
    }

    #[test]
    fn repeated_eigenvalue_fails_condition_two() {
        let p = ParameterData::new(1, qv(&["1", "1"]), qv(&["0", "1"]), qv(&["2"]), qv(&["3"]))
            .unwrap();
        let report = validate_parameter_array(&p).unwrap();
        assert!(!report.overall);
        assert!(!report.distinct.passed);
        assert_eq!(report.distinct.offending, vec![0, 1]);
    }

    #[test]
    fn perturbed_varphi_fails_condition_three() {
        let mut p = d1_example();
        p.varphi[0] = q("5");
        let report = validate_parameter_array(&p).unwrap();
        assert!(!report.varphi_formula.passed);
        assert_eq!(report.varphi_formula.offending, vec![1]);
    }

    #[test]
    fn shape_mismatch_detected() {
        let p = ParameterData {
            d: 2,
            theta: qv(&["0", "1"]),
            theta_star: qv(&["0", "1", "2"]),
            varphi: qv(&["1", "1"]),
            phi: qv(&["1", "1"]),
        };
        assert_eq!(
            validate_parameter_array(&p),
            Err(ParamsError::SizeMismatch)
        );
    }

    #[test]
    fn phi_from_varphi_diameter_one() {
        // phi_1 = 2 - (1)(0 - 1) = 3.
        let got = phi_from_varphi(&qv(&["0", "1"]), &qv(&["0", "1"]), &qv(&["2"])).unwrap();
        assert_eq!(got, qv(&["3"]));
    }

    #[test]
    fn phi_from_varphi_palindromic_theta() {
        // theta_h = theta_{d-h} for all h makes the sums vanish, so phi
        // equals varphi.
        let theta = qv(&["1", "4", "1"]);
        let theta_star = qv(&["0", "1", "2"]);
        let varphi = qv(&["5", "7"]);
        let got = phi_from_varphi(&theta, &theta_star, &varphi).unwrap();
        assert_eq!(got, varphi);
    }

    #[test]
    fn phi_from_varphi_reproduces_stored_phi() {
        let p = d1_example();
        let got = phi_from_varphi(&p.theta, &p.theta_star, &p.varphi).unwrap();
        assert_eq!(got, p.phi);
    }
}
