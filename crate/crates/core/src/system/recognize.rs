use super::idempotents::idempotents_lagrange;
use super::rep::{LeonardSystemRep, SystemError};
use super::split::extract_parameters;
use crate::exactfield::{char_poly, field_roots, FieldValue, SquareMatrix};
use crate::params::ParameterData;

/// One admissible pair of eigenvalue orderings for a recognized Leonard
/// pair, together with the assembled representation and its parameter array.
#[derive(Debug, Clone)]
pub struct RecognizedOrdering {
    pub system: LeonardSystemRep,
    pub params: ParameterData,
}

/// Every (ordering, dual ordering) pair under which the input matrices form
/// a Leonard system. A Leonard pair of diameter at least one always admits
/// exactly four.
#[derive(Debug, Clone)]
pub struct RecognitionResult {
    pub orderings: Vec<RecognizedOrdering>,
}

fn simple_spectrum(m: &SquareMatrix) -> Result<Vec<FieldValue>, SystemError> {
    let cp = char_poly(m);
    let roots =
        field_roots(&cp, &m.spec()).map_err(|_| SystemError::NotMultiplicityFree)?;
    if roots.len() != m.dim() {
        return Err(SystemError::NotMultiplicityFree);
    }
    for w in roots.windows(2) {
        if w[0] == w[1] {
            return Err(SystemError::NotMultiplicityFree);
        }
    }
    Ok(roots)
}

/// Vertex order of the support graph on the idempotent family, where i and j
/// are adjacent when E_i · other · E_j is nonzero. The graph must be
/// symmetric and a single simple path, otherwise no ordering can make the
/// other matrix irreducible tridiagonal.
fn support_path(
    e: &[SquareMatrix],
    other: &SquareMatrix,
) -> Result<Vec<usize>, SystemError> {
    let n = e.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        let left = e[i].mul(other);
        for j in 0..n {
            if i != j {
                adj[i][j] = !left.mul(&e[j]).is_zero();
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if adj[i][j] != adj[j][i] {
                return Err(SystemError::NotTridiagonalizable);
            }
        }
    }
    if n == 1 {
        return Ok(vec![0]);
    }
    let degree: Vec<usize> = (0..n).map(|i| adj[i].iter().filter(|&&b| b).count()).collect();
    let endpoints: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    if endpoints.len() != 2 || degree.iter().any(|&deg| deg != 1 && deg != 2) {
        return Err(SystemError::NotTridiagonalizable);
    }
    let mut order = vec![endpoints[0]];
    let mut visited = vec![false; n];
    visited[endpoints[0]] = true;
    while let Some(&cur) = order.last() {
        match (0..n).find(|&j| adj[cur][j] && !visited[j]) {
            Some(next) => {
                visited[next] = true;
                order.push(next);
            }
            None => break,
        }
    }
    if order.len() != n {
        return Err(SystemError::NotTridiagonalizable);
    }
    Ok(order)
}

fn traversals(path: &[usize]) -> Vec<Vec<usize>> {
    if path.len() <= 1 {
        vec![path.to_vec()]
    } else {
        vec![path.to_vec(), path.iter().rev().copied().collect()]
    }
}

/// Decide whether two matrices form a Leonard pair and, if so, list every
/// eigenvalue ordering pair realizing them as a Leonard system.
///
/// Both matrices must be multiplicity-free with full spectrum in the ground
/// field; the support graph of each family of primitive idempotents against
/// the opposite matrix must be a simple path. Each path can be walked in two
/// directions, so a pair of diameter at least one yields four orderings,
/// each carrying its own extracted parameter array.
pub fn recognize_leonard_pair(
    a: &SquareMatrix,
    a_star: &SquareMatrix,
) -> Result<RecognitionResult, SystemError> {
    if a.dim() != a_star.dim() || a.spec() != a_star.spec() {
        return Err(SystemError::ShapeMismatch);
    }
    let eigs = simple_spectrum(a)?;
    let eigs_star = simple_spectrum(a_star)?;
    let e = idempotents_lagrange(a, &eigs)?;
    let e_star = idempotents_lagrange(a_star, &eigs_star)?;
    let path = support_path(&e, a_star)?;
    let path_star = support_path(&e_star, a)?;
    let mut orderings = Vec::new();
    for order in traversals(&path) {
        for order_star in traversals(&path_star) {
            let theta: Vec<FieldValue> = order.iter().map(|&k| eigs[k].clone()).collect();
            let theta_star: Vec<FieldValue> =
                order_star.iter().map(|&k| eigs_star[k].clone()).collect();
            let perm_e: Vec<SquareMatrix> = order.iter().map(|&k| e[k].clone()).collect();
            let perm_e_star: Vec<SquareMatrix> =
                order_star.iter().map(|&k| e_star[k].clone()).collect();
            let system = LeonardSystemRep::new(
                a.clone(),
                a_star.clone(),
                perm_e,
                perm_e_star,
                theta,
                theta_star,
            )?;
            let params = extract_parameters(&system)?;
            orderings.push(RecognizedOrdering { system, params });
        }
    }
    Ok(RecognitionResult { orderings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::params::validate_parameter_array;
    use crate::system::build_split_form;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<FieldValue> {
        ss.iter().map(|s| q(s)).collect()
    }

    fn example_pair() -> (SquareMatrix, SquareMatrix) {
        let a = SquareMatrix::from_i64_rows(
            &RAT,
            &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]],
        );
        let a_star = SquareMatrix::diagonal(&qv(&["3", "1", "-1", "-3"])).unwrap();
        (a, a_star)
    }

    #[test]
    fn tridiagonal_example_yields_four_orderings() {
        let (a, a_star) = example_pair();
        let result = recognize_leonard_pair(&a, &a_star).unwrap();
        assert_eq!(result.orderings.len(), 4);
        let asc = qv(&["-3", "-1", "1", "3"]);
        let desc = qv(&["3", "1", "-1", "-3"]);
        let mut seen = Vec::new();
        for o in &result.orderings {
            assert!(o.params.theta == asc || o.params.theta == desc);
            assert!(o.params.theta_star == asc || o.params.theta_star == desc);
            let report = validate_parameter_array(&o.params).unwrap();
            assert!(report.overall, "extracted array must validate");
            seen.push((o.params.theta[0].clone(), o.params.theta_star[0].clone()));
        }
        seen.sort_by(|x, y| format!("{:?}", x).cmp(&format!("{:?}", y)));
        seen.dedup();
        assert_eq!(seen.len(), 4, "orderings must be pairwise distinct");
    }

    #[test]
    fn commuting_diagonal_pair_rejected() {
        let a = SquareMatrix::diagonal(&qv(&["0", "1"])).unwrap();
        let a_star = SquareMatrix::diagonal(&qv(&["2", "5"])).unwrap();
        assert_eq!(
            recognize_leonard_pair(&a, &a_star).unwrap_err(),
            SystemError::NotTridiagonalizable
        );
    }

    #[test]
    fn irrational_or_repeated_spectrum_rejected() {
        let companion = SquareMatrix::from_i64_rows(&RAT, &[&[0, 2], &[1, 0]]);
        let diag = SquareMatrix::diagonal(&qv(&["0", "1"])).unwrap();
        assert_eq!(
            recognize_leonard_pair(&companion, &diag).unwrap_err(),
            SystemError::NotMultiplicityFree
        );
        let jordan = SquareMatrix::from_i64_rows(&RAT, &[&[0, 1], &[0, 0]]);
        assert_eq!(
            recognize_leonard_pair(&jordan, &diag).unwrap_err(),
            SystemError::NotMultiplicityFree
        );
    }

    #[test]
    fn prime_field_split_form_recognized() {
        let spec = FieldSpec::prime_field(5).unwrap();
        let f = |n: i64| FieldValue::from_i64(&spec, n);
        let p = ParameterData::new(
            1,
            vec![f(0), f(1)],
            vec![f(0), f(1)],
            vec![f(2)],
            vec![f(3)],
        )
        .unwrap();
        let rep = build_split_form(&p).unwrap();
        let result = recognize_leonard_pair(rep.a(), rep.a_star()).unwrap();
        assert_eq!(result.orderings.len(), 4);
        assert!(result.orderings.iter().any(|o| o.params == p));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = SquareMatrix::diagonal(&qv(&["0", "1"])).unwrap();
        let b = SquareMatrix::diagonal(&qv(&["0", "1", "2"])).unwrap();
        assert_eq!(
            recognize_leonard_pair(&a, &b).unwrap_err(),
            SystemError::ShapeMismatch
        );
    }
}
