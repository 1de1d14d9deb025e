//! SU(3)-structures presented by adapted coframes.
//!
//! For a coframe `η^1, …, η^6`:
//!
//! ```text
//! ω  = η^{12} + η^{34} + η^{56}
//! ψ⁺ = η^{135} - η^{146} - η^{236} - η^{245}
//! ψ⁻ = η^{136} + η^{145} + η^{235} - η^{246}
//! ```
//! which are the real and imaginary parts of `(η^1+iη^2)∧(η^3+iη^4)∧(η^5+iη^6)`.

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{parse_form_list, BasisChange, ExteriorError, IndexSet, KForm, Matrix, Scalar};
use crate::liealg::LieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Su3Error {
    #[error("a frame needs 6 one-forms, got {0}")]
    WrongLength(usize),
    #[error("the frame is not a basis of 𝔤*")]
    Degenerate,
    #[error("zero one-form")]
    ZeroForm,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// An ordered coframe `η^1, …, η^6` of a six-dimensional `𝔤*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    eta: Vec<KForm>,
    change: BasisChange,
}

impl Frame {
    pub fn new(eta: Vec<KForm>) -> Result<Self, Su3Error> {
        if eta.len() != 6 {
            return Err(Su3Error::WrongLength(eta.len()));
        }
        let change = BasisChange::new(&eta).map_err(|e| match e {
            ExteriorError::Degenerate => Su3Error::Degenerate,
            other => Su3Error::Exterior(other),
        })?;
        Ok(Frame { eta, change })
    }

    /// Parses `e1-e2, e4, e5, e2, e6, e3`-style input.
    pub fn parse(input: &str) -> Result<Self, Su3Error> {
        Frame::new(parse_form_list(input, 6)?)
    }

    pub fn identity() -> Self {
        Frame::new((1..=6).map(|i| KForm::generator(6, i)).collect()).expect("identity frame")
    }

    pub fn eta(&self) -> &[KForm] {
        &self.eta
    }

    /// `η^I` for 1-based indices.
    fn eta_product(&self, idx: &[usize]) -> KForm {
        idx.iter().fold(KForm::constant(6, Scalar::one()), |acc, &i| &acc ^ &self.eta[i - 1])
    }

    /// Dual frame vectors in coordinates of `e_1, …, e_6`.
    pub fn dual_vectors(&self) -> Vec<Vec<Scalar>> {
        self.change.dual_vectors()
    }

    /// Frame-wise complex structure on covectors: `Jη^{2k-1} = η^{2k}`, `Jη^{2k} = -η^{2k-1}`.
    pub fn j(&self, a: &KForm) -> Result<KForm, Su3Error> {
        let c = self.change.to_new(a)?;
        let mut out = KForm::zero(6, 1);
        for k in 0..3 {
            let x = c.coeff(IndexSet::singleton(2 * k + 1));
            let y = c.coeff(IndexSet::singleton(2 * k + 2));
            out = &out + &self.eta[2 * k + 1].scale(&x);
            out = &out - &self.eta[2 * k].scale(&y);
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.eta.iter().map(|f| f.to_string()).collect()
    }
}

/// `(ω, ψ⁺, ψ⁻)` in coordinates of `e^1, …, e^6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su3Forms {
    pub omega: KForm,
    pub psi_plus: KForm,
    pub psi_minus: KForm,
}

pub fn forms_from_frame(f: &Frame) -> Su3Forms {
    let t = |idx: &[usize]| f.eta_product(idx);
    let omega = &(&t(&[1, 2]) + &t(&[3, 4])) + &t(&[5, 6]);
    let psi_plus = &(&(&t(&[1, 3, 5]) - &t(&[1, 4, 6])) - &t(&[2, 3, 6])) - &t(&[2, 4, 5]);
    let psi_minus = &(&(&t(&[1, 3, 6]) + &t(&[1, 4, 5])) + &t(&[2, 3, 5])) - &t(&[2, 4, 6]);
    Su3Forms { omega, psi_plus, psi_minus }
}

/// Evaluated half-flat equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfFlatCertificate {
    pub half_flat: bool,
    /// `dω∧ω`
    pub d_omega_wedge_omega: String,
    /// `dψ⁺`
    pub d_psi_plus: String,
}

/// `dω∧ω = 0` and `dψ⁺ = 0`.
pub fn is_half_flat(g: &LieAlgebra, forms: &Su3Forms) -> HalfFlatCertificate {
    let dww = &g.d(&forms.omega) ^ &forms.omega;
    let dpsi = g.d(&forms.psi_plus);
    HalfFlatCertificate {
        half_flat: dww.is_zero() && dpsi.is_zero(),
        d_omega_wedge_omega: dww.to_string(),
        d_psi_plus: dpsi.to_string(),
    }
}

fn top() -> IndexSet {
    IndexSet::from_indices(&[1, 2, 3, 4, 5, 6]).expect("six indices")
}

/// `G[i][j]` with `G[i][j]·ω³ = -3 (X_i⌟ω)∧(X_j⌟ψ⁺)∧ψ⁺`.
pub fn gram_matrix(forms: &Su3Forms, vectors: &[Vec<Scalar>]) -> Result<Matrix, Su3Error> {
    let omega3 = &(&forms.omega ^ &forms.omega) ^ &forms.omega;
    let top = top();
    let inv = omega3.coeff(top).inverse().ok_or(Su3Error::Degenerate)?;
    let factor = &Scalar::from_int(-3) * &inv;
    let mut rows = Vec::with_capacity(vectors.len());
    for xi in vectors {
        let a = forms.omega.contract_vector(xi)?;
        let mut row = Vec::with_capacity(vectors.len());
        for xj in vectors {
            let b = forms.psi_plus.contract_vector(xj)?;
            let rhs = &(&a ^ &b) ^ &forms.psi_plus;
            row.push(&factor * &rhs.coeff(top));
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows, vectors.len()))
}

/// Gram matrix of the dual frame; the identity whenever the frame is adapted.
pub fn gram_from_forms(f: &Frame) -> Result<Matrix, Su3Error> {
    gram_matrix(&forms_from_frame(f), &f.dual_vectors())
}

/// Ratio `ψ⁺∧ψ⁻ / ω³`.
pub fn normalization(forms: &Su3Forms) -> Option<Scalar> {
    let top = top();
    let omega3 = &(&forms.omega ^ &forms.omega) ^ &forms.omega;
    let pp = &forms.psi_plus ^ &forms.psi_minus;
    Some(&pp.coeff(top) * &omega3.coeff(top).inverse()?)
}

/// `a ∧ Ja ∧ ω² ≠ 0`.
pub fn nondegeneracy(f: &Frame, a: &KForm) -> Result<bool, Su3Error> {
    if a.is_zero() {
        return Err(Su3Error::ZeroForm);
    }
    let forms = forms_from_frame(f);
    let w2 = &forms.omega ^ &forms.omega;
    Ok(!(&(a ^ &f.j(a)?) ^ &w2).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::e;

    #[test]
    fn identity_frame_normal_form() {
        let s = forms_from_frame(&Frame::identity());
        assert_eq!(s.omega, &(&e(6, "12") + &e(6, "34")) + &e(6, "56"));
        assert!((&s.omega ^ &s.psi_plus).is_zero());
        assert!((&s.omega ^ &s.psi_minus).is_zero());
    }

    #[test]
    fn table_frame_omega() {
        let f = Frame::parse("e1,e5,e2,e4,e3,e6").unwrap();
        let s = forms_from_frame(&f);
        assert_eq!(s.omega, &(&e(6, "15") + &e(6, "24")) + &e(6, "36"));
    }

    #[test]
    fn half_flat_checks() {
        let ab = LieAlgebra::abelian(6);
        assert!(is_half_flat(&ab, &forms_from_frame(&Frame::identity())).half_flat);
        let g = LieAlgebra::parse("0,0,12,13,23,14").unwrap();
        let f = Frame::parse("e1,e5,e2,e4,e3,e6").unwrap();
        assert!(is_half_flat(&g, &forms_from_frame(&f)).half_flat);
        let cert = is_half_flat(&g, &forms_from_frame(&Frame::identity()));
        assert!(!cert.half_flat);
        assert_ne!(cert.d_psi_plus, "0");
    }

    #[test]
    fn gram_values() {
        assert_eq!(gram_from_forms(&Frame::identity()).unwrap(), Matrix::identity(6));
        let scaled = forms_from_frame(&Frame::parse("2*e1,e2,e3,e4,e5,e6").unwrap());
        let g = gram_matrix(&scaled, &Frame::identity().dual_vectors()).unwrap();
        assert_eq!(g.get(0, 0), &Scalar::from_int(4));
        assert_eq!(g.get(1, 1), &Scalar::one());
        assert_eq!(g, g.transpose());
        let r2 = Frame::parse("-e5,e2,e4,e1,r2*(e3-e5),1/2*r2*e6").unwrap();
        assert_eq!(gram_from_forms(&r2).unwrap(), Matrix::identity(6));
    }

    #[test]
    fn nondegeneracy_examples() {
        let id = Frame::identity();
        assert!(nondegeneracy(&id, &e(6, "1")).unwrap());
        let s = forms_from_frame(&id);
        let w2 = &s.omega ^ &s.omega;
        assert_eq!(&e(6, "12") ^ &w2, e(6, "123456").times(2));
        assert!(nondegeneracy(&id, &(&e(6, "1") + &e(6, "3"))).unwrap());
        assert_eq!(nondegeneracy(&id, &KForm::zero(6, 1)), Err(Su3Error::ZeroForm));
    }

    #[test]
    fn frame_errors() {
        assert_eq!(Frame::parse("e1,e2,e3").unwrap_err(), Su3Error::WrongLength(3));
        assert_eq!(Frame::parse("e1,e1,e3,e4,e5,e6").unwrap_err(), Su3Error::Degenerate);
    }

    /// `(re, im)` of a complex-valued form.
    type Complex = (KForm, KForm);

    fn cmul(a: &Complex, b: &Complex) -> Complex {
        (&(&a.0 ^ &b.0) - &(&a.1 ^ &b.1), &(&a.0 ^ &b.1) + &(&a.1 ^ &b.0))
    }

    fn complex_oracle(f: &Frame) -> Complex {
        let eta = f.eta();
        let one: Complex = (KForm::constant(6, Scalar::one()), KForm::zero(6, 0));
        (0..3).fold(one, |acc, k| cmul(&acc, &(eta[2 * k].clone(), eta[2 * k + 1].clone())))
    }

    #[test]
    fn psi_matches_complex_product() {
        for frame in ["e1,e2,e3,e4,e5,e6", "e1,e5,e2,e4,e3,e6", "e3,e6,e4,e4-e2,-e5,e1+e5", "-e5,e2,e4,e1,r2*(e3-e5),1/2*r2*e6"] {
            let f = Frame::parse(frame).unwrap();
            let (re, im) = complex_oracle(&f);
            let s = forms_from_frame(&f);
            assert_eq!(s.psi_plus, re, "{frame}");
            assert_eq!(s.psi_minus, im, "{frame}");
        }
    }

    #[test]
    fn normalization_sign() {
        // ψ⁺∧ψ⁻ = (2/3)ω³ with these conventions
        for frame in ["e1,e2,e3,e4,e5,e6", "e3,e6,e4,e4-e2,-e5,e1+e5", "2*e1,e2,e3,e4,e5,e6"] {
            let s = forms_from_frame(&Frame::parse(frame).unwrap());
            assert_eq!(normalization(&s), Some(Scalar::from_ratio(2, 3)));
        }
        let s = forms_from_frame(&Frame::identity());
        let w3 = &(&s.omega ^ &s.omega) ^ &s.omega;
        assert_eq!(w3, e(6, "123456").times(6));
    }

    #[test]
    fn su3_permutations_fix_forms() {
        let base = forms_from_frame(&Frame::identity());
        for frame in ["e3,e4,e5,e6,e1,e2", "e5,e6,e1,e2,e3,e4", "-e1,-e2,-e3,-e4,e5,e6", "e1,e2,-e3,-e4,-e5,-e6"] {
            let s = forms_from_frame(&Frame::parse(frame).unwrap());
            assert_eq!(s.omega, base.omega, "{frame}");
            assert_eq!(s.psi_plus, base.psi_plus, "{frame}");
        }
    }

    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = i64> {
        -4i64..=4
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nondegenerate_on_random_covectors(c in proptest::collection::vec(small(), 6), d in 1i64..5) {
            prop_assume!(c.iter().any(|&x| x != 0));
            let a = KForm::from_vector(6, 1, &c.iter().map(|&x| Scalar::from_ratio(x, d)).collect::<Vec<_>>());
            let f = Frame::parse("e3,e6,e4,e4-e2,-e5,e1+e5").unwrap();
            prop_assert!(nondegeneracy(&f, &a).unwrap());
            prop_assert!(nondegeneracy(&Frame::identity(), &a).unwrap());
        }

        #[test]
        fn random_frames_are_adapted(m in proptest::collection::vec(small(), 36)) {
            let eta: Vec<KForm> = m.chunks(6)
                .map(|r| KForm::from_vector(6, 1, &r.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>()))
                .collect();
            if let Ok(f) = Frame::new(eta) {
                let s = forms_from_frame(&f);
                prop_assert!((&s.omega ^ &s.psi_plus).is_zero());
                prop_assert!((&s.omega ^ &s.psi_minus).is_zero());
                prop_assert_eq!(normalization(&s), Some(Scalar::from_ratio(2, 3)));
                prop_assert_eq!(gram_from_forms(&f).unwrap(), Matrix::identity(6));
            }
        }
    }
}
