//! Decomposability of two-forms.

use super::form::KForm;
use super::linalg::rank;
use super::scalar::Scalar;
use super::ExteriorError;

fn check_two_form(a: &KForm) -> Result<(), ExteriorError> {
    if a.degree() != 2 {
        return Err(ExteriorError::DegreeMismatch { expected: 2, found: a.degree() });
    }
    Ok(())
}

/// `a = ξ∧ζ` for some one-forms, decided by the Plücker condition `a∧a = 0`.
pub fn is_simple(a: &KForm) -> Result<bool, ExteriorError> {
    check_two_form(a)?;
    Ok((a ^ a).is_zero())
}

/// Rank of the alternating matrix `A[i][j] = a(e_i, e_j)`.
pub fn alternating_rank(a: &KForm) -> Result<usize, ExteriorError> {
    check_two_form(a)?;
    let n = a.ambient_dim();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (s, c) in a.terms() {
        let ij: Vec<usize> = s.indices().collect();
        let (i, j) = (ij[0] - 1, ij[1] - 1);
        m[i][j] = c.clone();
        m[j][i] = -c;
    }
    Ok(rank(&m))
}

/// An explicit factorisation `a = ξ∧ζ`, or `None` when `a` is zero or not simple.
///
/// With `c = a_{ij} ≠ 0` one has `c·a = -(e_j⌟a)∧(e_i⌟a)` for simple `a`.
pub fn factor_simple(a: &KForm) -> Result<Option<(KForm, KForm)>, ExteriorError> {
    check_two_form(a)?;
    let Some((s, c)) = a.terms().next() else {
        return Ok(None);
    };
    let mut idx = s.indices();
    let (i, j) = (idx.next().unwrap(), idx.next().unwrap());
    let inv = c.inverse().expect("stored coefficients are nonzero");
    let xi = a.contract(j)?.scale(&-inv);
    let zeta = a.contract(i)?;
    if &(&xi ^ &zeta) == a {
        Ok(Some((xi, zeta)))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::super::form::e;
    use super::*;

    #[test]
    fn basis_two_form_factors() {
        let (x, z) = factor_simple(&e(6, "12")).unwrap().unwrap();
        assert_eq!(&x ^ &z, e(6, "12"));
        assert_eq!(x, e(6, "1"));
        assert_eq!(z, e(6, "2"));
        assert!(is_simple(&e(6, "12")).unwrap());
    }

    #[test]
    fn symplectic_pairs_are_not_simple() {
        let a = &e(6, "12") + &e(6, "34");
        assert!(!is_simple(&a).unwrap());
        assert_eq!(alternating_rank(&a).unwrap(), 4);
        assert!(factor_simple(&a).unwrap().is_none());
        let b = &e(6, "34") - &e(6, "12");
        assert!(!is_simple(&b).unwrap());
    }

    #[test]
    fn mixed_simple_form() {
        // (e1 + e3) ∧ (e2 - e4)
        let a = &(&e(6, "1") + &e(6, "3")) ^ &(&e(6, "2") - &e(6, "4"));
        assert!(is_simple(&a).unwrap());
        let (x, z) = factor_simple(&a).unwrap().unwrap();
        assert_eq!(&x ^ &z, a);
    }

    #[test]
    fn wrong_degree_rejected() {
        assert!(is_simple(&e(6, "1")).is_err());
        assert!(factor_simple(&e(6, "123")).is_err());
    }
}
