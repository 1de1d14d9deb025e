use super::form::KForm;
use super::linalg::Matrix;
use super::scalar::Scalar;
use super::ExteriorError;

/// A change of coframe `f^a = Σ_i P[a][i] e^i` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    forward: Vec<KForm>,
    inverse: Vec<KForm>,
    matrix: Matrix,
    inverse_matrix: Matrix,
}

impl BasisChange {
    /// `new_basis[a]` is the one-form `f^{a+1}` in old coordinates.
    pub fn new(new_basis: &[KForm]) -> Result<Self, ExteriorError> {
        let n = new_basis.len();
        for f in new_basis {
            if f.degree() != 1 {
                return Err(ExteriorError::DegreeMismatch { expected: 1, found: f.degree() });
            }
            if f.ambient_dim() != n {
                return Err(ExteriorError::DimensionMismatch { left: n, right: f.ambient_dim() });
            }
        }
        let matrix = Matrix::from_rows(new_basis.iter().map(KForm::to_vector).collect(), n);
        let inverse_matrix = matrix.inverse().ok_or(ExteriorError::Degenerate)?;
        // e^i = Σ_a Q[i][a] f^a
        let inverse = (0..n)
            .map(|i| KForm::from_vector(n, 1, inverse_matrix.row(i)))
            .collect();
        Ok(BasisChange { forward: new_basis.to_vec(), inverse, matrix, inverse_matrix })
    }

    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    /// The new coframe in old coordinates.
    pub fn new_basis(&self) -> &[KForm] {
        &self.forward
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Rewrites a form given in old coordinates in terms of the new coframe.
    pub fn to_new(&self, f: &KForm) -> Result<KForm, ExteriorError> {
        f.pullback(&self.inverse)
    }

    /// Rewrites a form given in new coordinates in terms of the old coframe.
    pub fn to_old(&self, f: &KForm) -> Result<KForm, ExteriorError> {
        f.pullback(&self.forward)
    }

    /// Vector components in the new frame for a vector with old components `v`
    /// (vectors transform contragrediently: `v_new[a] = f^a(v)`).
    pub fn vector_to_new(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// The dual frame: `X_a` in old components, with `f^b(X_a) = δ_ab`.
    pub fn dual_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|a| self.inverse_matrix.column(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::form::e;
    use super::*;

    #[test]
    fn round_trip() {
        let frame = vec![&e(3, "1") + &e(3, "2"), e(3, "2"), &e(3, "3") - &e(3, "1")];
        let bc = BasisChange::new(&frame).unwrap();
        let f = &e(3, "12") + &e(3, "23").times(3);
        assert_eq!(bc.to_old(&bc.to_new(&f).unwrap()).unwrap(), f);
        // the new generators are coordinate forms in the new frame
        assert_eq!(bc.to_new(&frame[2]).unwrap(), e(3, "3"));
        for (a, x) in bc.dual_vectors().iter().enumerate() {
            for (b, f) in frame.iter().enumerate() {
                let expect = if a == b { Scalar::one() } else { Scalar::zero() };
                assert_eq!(f.pair(x).unwrap(), expect);
            }
        }
    }

    #[test]
    fn degenerate_rejected() {
        let frame = vec![e(2, "1"), e(2, "1").times(2)];
        assert_eq!(BasisChange::new(&frame), Err(ExteriorError::Degenerate));
    }
}
