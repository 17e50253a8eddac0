use crate::exactfield::FieldValue;

/// Which level of the recurrence hierarchy a sequence lands in.
///
/// The levels, from most specific to least: recurrent (common difference
/// ratio with distinct consecutive terms), beta-recurrent (the four-term
/// linear relation), (beta, gamma)-recurrent (three-term relation with
/// constant), and (beta, gamma, rho)-recurrent (the symmetric quadratic
/// relation). Every level implies the next when its nondegeneracy
/// assumptions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceKind {
    Recurrent,
    BetaRecurrent,
    BetaGammaRecurrent,
    BetaGammaRhoRecurrent,
    None,
}

/// Classification outcome. Scalars are reported whenever the sequence
/// determines them (or a canonical witness exists); absent when the defining
/// ranges are empty and nothing constrains them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceClass {
    pub kind: RecurrenceKind,
    pub beta: Option<FieldValue>,
    pub gamma: Option<FieldValue>,
    pub rho: Option<FieldValue>,
}

enum DerivedScalar {
    Unconstrained,
    Constant(FieldValue),
    NotConstant,
}

/// gamma_i = theta_{i-1} - beta theta_i + theta_{i+1} over 1 <= i <= d-1.
fn derive_gamma(seq: &[FieldValue], beta: &FieldValue) -> DerivedScalar {
    let d = seq.len() - 1;
    let mut common: Option<FieldValue> = None;
    for i in 1..d {
        let g = seq[i - 1].sub(&beta.mul(&seq[i])).add(&seq[i + 1]);
        match &common {
            None => common = Some(g),
            Some(c) => {
                if *c != g {
                    return DerivedScalar::NotConstant;
                }
            }
        }
    }
    match common {
        None => DerivedScalar::Unconstrained,
        Some(c) => DerivedScalar::Constant(c),
    }
}

/// rho_i = theta_{i-1}^2 - beta theta_{i-1} theta_i + theta_i^2
///         - gamma (theta_{i-1} + theta_i) over 1 <= i <= d.
fn derive_rho(seq: &[FieldValue], beta: &FieldValue, gamma: &FieldValue) -> DerivedScalar {
    let d = seq.len() - 1;
    let mut common: Option<FieldValue> = None;
    for i in 1..=d {
        let a = &seq[i - 1];
        let b = &seq[i];
        let r = a
            .mul(a)
            .sub(&beta.mul(&a.mul(b)))
            .add(&b.mul(b))
            .sub(&gamma.mul(&a.add(b)));
        match &common {
            None => common = Some(r),
            Some(c) => {
                if *c != r {
                    return DerivedScalar::NotConstant;
                }
            }
        }
    }
    match common {
        None => DerivedScalar::Unconstrained,
        Some(c) => DerivedScalar::Constant(c),
    }
}

/// Fills gamma and rho for a beta that is known to satisfy the four-term
/// relation on the whole range (both are then automatically constant).
fn complete_from_beta(seq: &[FieldValue], beta: FieldValue, kind: RecurrenceKind) -> RecurrenceClass {
    let gamma = match derive_gamma(seq, &beta) {
        DerivedScalar::Constant(g) => Some(g),
        DerivedScalar::Unconstrained => None,
        DerivedScalar::NotConstant => {
            unreachable!("beta-recurrence ties all gamma values together")
        }
    };
    let rho = gamma.as_ref().and_then(|g| match derive_rho(seq, &beta, g) {
        DerivedScalar::Constant(r) => Some(r),
        DerivedScalar::Unconstrained => None,
        DerivedScalar::NotConstant => {
            unreachable!("constant gamma ties all rho values together")
        }
    });
    RecurrenceClass {
        kind,
        beta: Some(beta),
        gamma,
        rho,
    }
}

/// Places a sequence in the recurrence hierarchy and reports the strongest
/// class that holds, with the defining scalars.
///
/// A sequence of length at most 3 has every defining range empty; it reports
/// the top class with all scalars absent. Otherwise the ladder runs:
/// recurrent (ratio test), then a unique or unconstrained beta from the
/// four-term relation (an unconstrained beta gets the canonical witness 2),
/// then a direct linear solve of the quadratic relation, then none.
pub fn classify_recurrence(seq: &[FieldValue]) -> RecurrenceClass {
    assert!(!seq.is_empty(), "empty sequence");
    let spec = seq[0].spec();
    assert!(
        seq.iter().all(|v| v.spec() == spec),
        "sequence mixes fields"
    );
    let d = seq.len() - 1;
    if d <= 2 {
        return RecurrenceClass {
            kind: RecurrenceKind::Recurrent,
            beta: None,
            gamma: None,
            rho: None,
        };
    }
    let one = FieldValue::one(&spec);

    // Stage 1: recurrent. Needs consecutive terms distinct on the ratio
    // range and a common ratio there.
    let consecutive_distinct = (2..d).all(|i| seq[i - 1] != seq[i]);
    if consecutive_distinct {
        let mut common: Option<FieldValue> = None;
        let mut constant = true;
        for i in 2..d {
            let ratio = seq[i - 2].sub(&seq[i + 1]).div(&seq[i - 1].sub(&seq[i]));
            match &common {
                None => common = Some(ratio),
                Some(c) => {
                    if *c != ratio {
                        constant = false;
                        break;
                    }
                }
            }
        }
        if constant {
            let beta = common.expect("range nonempty for d >= 3").sub(&one);
            return complete_from_beta(seq, beta, RecurrenceKind::Recurrent);
        }
    }

    // Stage 2: solve the four-term relation
    // theta_{i-2} - (beta+1) theta_{i-1} + (beta+1) theta_i - theta_{i+1} = 0
    // for beta over 2 <= i <= d-1.
    let mut determined: Option<FieldValue> = None;
    let mut solvable = true;
    for i in 2..d {
        let coeff = seq[i].sub(&seq[i - 1]);
        let rhs = seq[i + 1].sub(&seq[i - 2]);
        if coeff.is_zero() {
            if !rhs.is_zero() {
                solvable = false;
                break;
            }
        } else {
            let beta_plus_one = rhs.div(&coeff);
            match &determined {
                None => determined = Some(beta_plus_one),
                Some(b) => {
                    if *b != beta_plus_one {
                        solvable = false;
                        break;
                    }
                }
            }
        }
    }
    if solvable {
        return match determined {
            Some(beta_plus_one) => complete_from_beta(
                seq,
                beta_plus_one.sub(&one),
                RecurrenceKind::BetaRecurrent,
            ),
            // Every beta works; take the canonical witness 2 and report the
            // class by the scalar that is actually pinned down.
            None => {
                let witness = FieldValue::from_i64(&spec, 2);
                complete_from_beta(seq, witness, RecurrenceKind::BetaGammaRecurrent)
            }
        };
    }

    // Stage 3: the quadratic relation is linear in (beta, gamma, rho); solve
    // it directly over 1 <= i <= d.
    match solve_quadratic_relation(seq) {
        Some((beta, gamma, rho)) => RecurrenceClass {
            kind: RecurrenceKind::BetaGammaRhoRecurrent,
            beta: Some(beta),
            gamma: Some(gamma),
            rho: Some(rho),
        },
        None => RecurrenceClass {
            kind: RecurrenceKind::None,
            beta: None,
            gamma: None,
            rho: None,
        },
    }
}

/// Solves theta_{i-1} theta_i beta + (theta_{i-1} + theta_i) gamma + rho
/// = theta_{i-1}^2 + theta_i^2 for all i by Gaussian elimination, assigning
/// canonical defaults (beta=2, gamma=0, rho=0) to free unknowns.
fn solve_quadratic_relation(
    seq: &[FieldValue],
) -> Option<(FieldValue, FieldValue, FieldValue)> {
    let spec = seq[0].spec();
    let d = seq.len() - 1;
    let one = FieldValue::one(&spec);
    let mut rows: Vec<[FieldValue; 4]> = (1..=d)
        .map(|i| {
            let a = &seq[i - 1];
            let b = &seq[i];
            [
                a.mul(b),
                a.add(b),
                one.clone(),
                a.mul(a).add(&b.mul(b)),
            ]
        })
        .collect();

    // Row reduce.
    let mut pivot_of_col: [Option<usize>; 3] = [None, None, None];
    let mut next_row = 0;
    for col in 0..3 {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][col].inv().expect("pivot nonzero");
        for k in 0..4 {
            rows[next_row][k] = rows[next_row][k].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in 0..4 {
                    rows[r][k] = rows[r][k].sub(&factor.mul(&rows[next_row][k]));
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }
    // Inconsistent if a zero row has nonzero right side.
    for r in next_row..rows.len() {
        if !rows[r][3].is_zero() {
            return None;
        }
    }
    // Assign defaults to free unknowns, then read pivot rows.
    let defaults = [
        FieldValue::from_i64(&spec, 2),
        FieldValue::zero(&spec),
        FieldValue::zero(&spec),
    ];
    let mut x: Vec<FieldValue> = defaults.to_vec();
    // Process pivot columns in reverse so later free values feed in.
    for col in (0..3).rev() {
        if let Some(r) = pivot_of_col[col] {
            let mut val = rows[r][3].clone();
            for k in (col + 1)..3 {
                val = val.sub(&rows[r][k].mul(&x[k]));
            }
            x[col] = val;
        }
    }
    Some((x[0].clone(), x[1].clone(), x[2].clone()))
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

    #[test]
    fn arithmetic_progression() {
        let cls = classify_recurrence(&qv(&["0", "1", "2", "3", "4"]));
        assert_eq!(cls.kind, RecurrenceKind::Recurrent);
        assert_eq!(cls.beta, Some(q("2")));
        assert_eq!(cls.gamma, Some(q("0")));
        assert_eq!(cls.rho, Some(q("1")));
    }

    #[test]
    fn geometric_progression() {
        // theta_i = 2^i: ratio is q + 1/q + 1 = 7/2, so beta = 5/2.
        let cls = classify_recurrence(&qv(&["1", "2", "4", "8", "16"]));
        assert_eq!(cls.kind, RecurrenceKind::Recurrent);
        assert_eq!(cls.beta, Some(q("5/2")));
        assert_eq!(cls.gamma, Some(q("0")));
        assert_eq!(cls.rho, Some(q("0")));
    }

    #[test]
    fn constant_sequence() {
        let cls = classify_recurrence(&qv(&["5", "5", "5", "5", "5"]));
        assert_eq!(cls.kind, RecurrenceKind::BetaGammaRecurrent);
        assert_eq!(cls.beta, Some(q("2")));
        assert_eq!(cls.gamma, Some(q("0")));
        assert_eq!(cls.rho, Some(q("0")));
    }

    #[test]
    fn unique_beta_without_recurrence() {
        // Consecutive repeat breaks the ratio test but one equation still
        // pins beta: (0,1,1,0,3) forces beta + 1 = (3-1)/(0-1) = -2.
        let cls = classify_recurrence(&qv(&["0", "1", "1", "0", "3"]));
        assert_eq!(cls.kind, RecurrenceKind::BetaRecurrent);
        assert_eq!(cls.beta, Some(q("-3")));
        assert_eq!(cls.gamma, Some(q("4")));
    }

    #[test]
    fn quadratic_relation_only() {
        // (1,1,1,2) satisfies the quadratic relation but no four-term one.
        let cls = classify_recurrence(&qv(&["1", "1", "1", "2"]));
        assert_eq!(cls.kind, RecurrenceKind::BetaGammaRhoRecurrent);
        assert_eq!(cls.beta, Some(q("4")));
        assert_eq!(cls.gamma, Some(q("-1")));
        assert_eq!(cls.rho, Some(q("0")));
    }

    #[test]
    fn unclassifiable_sequence() {
        let cls = classify_recurrence(&qv(&["0", "1", "2", "4", "8"]));
        assert_eq!(cls.kind, RecurrenceKind::None);
        assert_eq!(cls.beta, None);
    }

    #[test]
    fn short_sequences_are_vacuous() {
        for len in 1..=3 {
            let seq: Vec<FieldValue> = (0..len).map(|i| q(&i.to_string())).collect();
            let cls = classify_recurrence(&seq);
            assert_eq!(cls.kind, RecurrenceKind::Recurrent);
            assert_eq!(cls.beta, None);
            assert_eq!(cls.gamma, None);
            assert_eq!(cls.rho, None);
        }
    }

    #[test]
    fn char_two_palindrome() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let seq: Vec<FieldValue> = [0i64, 1, 1, 0]
            .iter()
            .map(|&v| FieldValue::from_i64(&f2, v))
            .collect();
        let cls = classify_recurrence(&seq);
        assert_eq!(cls.kind, RecurrenceKind::BetaGammaRecurrent);
        // The witness 2 is 0 in characteristic 2.
        assert_eq!(cls.beta, Some(FieldValue::from_i64(&f2, 0)));
        assert_eq!(cls.gamma, Some(FieldValue::from_i64(&f2, 1)));
        assert_eq!(cls.rho, Some(FieldValue::from_i64(&f2, 0)));
    }

    #[test]
    fn verify_rho_against_definition() {
        // For any classified sequence with all three scalars, the quadratic
        // relation must hold at every index.
        let seqs = [
            qv(&["0", "1", "2", "3", "4"]),
            qv(&["1", "2", "4", "8", "16"]),
            qv(&["1", "1", "1", "2"]),
            qv(&["3", "1", "-1", "-3", "-5"]),
        ];
        for seq in &seqs {
            let cls = classify_recurrence(seq);
            let (Some(b), Some(g), Some(r)) = (&cls.beta, &cls.gamma, &cls.rho) else {
                panic!("scalars expected for {seq:?}");
            };
            for i in 1..seq.len() {
                let x = &seq[i - 1];
                let y = &seq[i];
                let lhs = x
                    .mul(x)
                    .sub(&b.mul(&x.mul(y)))
                    .add(&y.mul(y))
                    .sub(&g.mul(&x.add(y)));
                assert_eq!(lhs, *r, "relation fails at i={i} for {seq:?}");
            }
        }
    }
}
