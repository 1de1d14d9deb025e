//! Lie algebras in structure-constant notation, the Chevalley–Eilenberg
//! differential and ordinary cohomology.

mod notation;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::exterior::{basis, BasisChange, ExteriorError, IndexSet, KForm, Scalar, Subspace, MAX_DIM};

pub use notation::{format_differential, parse_differentials};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("digit {digit} at {position} is outside 1..={dim}")]
    DigitOutOfRange { position: usize, digit: usize, dim: usize },
    #[error("repeated digit {digit} in pair at {position}")]
    RepeatedDigit { position: usize, digit: usize },
    #[error("dimension {dim} is too small (need at least 2)")]
    TooSmall { dim: usize },
    #[error("dimension {dim} exceeds single-digit notation")]
    TooLarge { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Notation(#[from] NotationError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("d∘d ≠ 0: Jacobi identity fails on e^{generator}")]
    Jacobi { generator: usize },
    #[error("the algebra is not solvable")]
    NotSolvable,
}

/// A Lie algebra given dually by `de^i` for a fixed basis `e^1, …, e^n` of `𝔤*`.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    d1: Vec<KForm>,
    source: Option<String>,
    /// `images[k][j]` is `d` of the `j`-th basis element of `Λ^k`.
    images: Vec<Vec<KForm>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.d1 == other.d1
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({})", self.notation())
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.notation())
    }
}

impl LieAlgebra {
    /// Builds the algebra from `de^1, …, de^n`. The Jacobi identity is not enforced here.
    pub fn from_differentials(d1: Vec<KForm>) -> Result<Self, LieError> {
        let n = d1.len();
        if n < 2 {
            return Err(NotationError::TooSmall { dim: n }.into());
        }
        if n > MAX_DIM {
            return Err(NotationError::TooLarge { dim: n }.into());
        }
        for f in &d1 {
            if f.ambient_dim() != n {
                return Err(ExteriorError::DimensionMismatch { left: n, right: f.ambient_dim() }.into());
            }
            if f.degree() != 2 {
                return Err(ExteriorError::DegreeMismatch { expected: 2, found: f.degree() }.into());
            }
        }
        let images = differential_images(&d1);
        Ok(LieAlgebra { dim: n, d1, source: None, images })
    }

    pub fn parse(notation: &str) -> Result<Self, LieError> {
        let mut g = LieAlgebra::from_differentials(parse_differentials(notation)?)?;
        g.source = Some(notation.to_string());
        Ok(g)
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra::from_differentials(vec![KForm::zero(n, 2); n]).expect("valid dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `de^i` for `i = 1..=n` (index 0 holds `de^1`).
    pub fn d1(&self) -> &[KForm] {
        &self.d1
    }

    pub fn source_notation(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// Canonical notation; `parse(notation())` reproduces `self`.
    pub fn notation(&self) -> String {
        self.d1.iter().map(format_differential).collect::<Vec<_>>().join(",")
    }

    pub fn generator(&self, i: usize) -> KForm {
        KForm::generator(self.dim, i)
    }

    /// Images under `d` of the canonical basis of `Λ^k`.
    pub fn d_images(&self, k: usize) -> &[KForm] {
        &self.images[k]
    }

    /// The Chevalley–Eilenberg differential, extended as an antiderivation.
    pub fn differential(&self, a: &KForm) -> Result<KForm, LieError> {
        if a.ambient_dim() != self.dim {
            return Err(ExteriorError::DimensionMismatch { left: self.dim, right: a.ambient_dim() }.into());
        }
        let k = a.degree();
        if k >= self.dim {
            return Ok(KForm::zero(self.dim, k + 1));
        }
        let b = basis(self.dim, k);
        let mut out = KForm::zero(self.dim, k + 1);
        for (s, c) in a.terms() {
            let j = b.binary_search(&s).expect("basis contains every index set of degree k");
            out = &out + &self.images[k][j].scale(c);
        }
        Ok(out)
    }

    pub fn d(&self, a: &KForm) -> KForm {
        self.differential(a).expect("form lives on this algebra")
    }

    /// `d² = 0` on every generator.
    pub fn check_jacobi(&self) -> bool {
        self.jacobi_failure().is_none()
    }

    fn jacobi_failure(&self) -> Option<usize> {
        (1..=self.dim).find(|&i| !self.d(&self.d1[i - 1]).is_zero())
    }

    pub fn require_jacobi(&self) -> Result<(), LieError> {
        match self.jacobi_failure() {
            Some(generator) => Err(LieError::Jacobi { generator }),
            None => Ok(()),
        }
    }

    /// `ker d` on `Λ^1`.
    pub fn closed_one_forms(&self) -> Subspace {
        self.closed(1)
    }

    /// `Z^k`, closed `k`-forms.
    pub fn closed(&self, k: usize) -> Subspace {
        let images: Vec<Vec<Scalar>> = self.images[k].iter().map(KForm::to_vector).collect();
        Subspace::kernel(self.dim, k, &images)
    }

    /// `B^k`, exact `k`-forms.
    pub fn exact(&self, k: usize) -> Subspace {
        if k == 0 {
            return Subspace::zero(self.dim, 0);
        }
        Subspace::span(self.dim, k, &self.images[k - 1]).expect("images have degree k")
    }

    /// `{α ∈ 𝔤* : dα ∈ target}` for a subspace of `Λ^2`.
    fn d_preimage(&self, target: &Subspace) -> Subspace {
        Subspace::preimage(self.dim, 1, &self.images[1], target)
    }

    /// Iterates `W ↦ d⁻¹(step(W))` from `W = 0`; returns the stable chain.
    fn dual_series<F>(&self, step: F) -> Vec<Subspace>
    where
        F: Fn(&Subspace) -> Subspace,
    {
        let mut chain = vec![Subspace::zero(self.dim, 1)];
        loop {
            let next = self.d_preimage(&step(chain.last().unwrap()));
            if next.dim() == chain.last().unwrap().dim() {
                return chain;
            }
            chain.push(next);
        }
    }

    /// `W_0 = 0`, `W_{i+1} = {α : dα ∈ Λ²W_i}`; dual to the lower central series.
    pub fn ascending_filtration(&self) -> Vec<Subspace> {
        self.dual_series(|w| wedge_span(w, w))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.ascending_filtration().last().unwrap().dim() == self.dim
    }

    /// `A_0 = 0`, `A_{m+1} = {α : dα ∈ A_m ∧ 𝔤*}`, where `A_m` annihilates the `m`-th derived algebra.
    pub fn derived_annihilators(&self) -> Vec<Subspace> {
        let all = Subspace::full(self.dim, 1);
        self.dual_series(|a| wedge_span(a, &all))
    }

    pub fn derived_length(&self) -> Result<usize, LieError> {
        let chain = self.derived_annihilators();
        if chain.last().unwrap().dim() == self.dim {
            Ok(chain.len() - 1)
        } else {
            Err(LieError::NotSolvable)
        }
    }

    /// Every `(n-1)`-form is closed.
    pub fn is_unimodular(&self) -> bool {
        self.images[self.dim - 1].iter().all(KForm::is_zero)
    }

    /// `tr ad(e_i) = 0` for every basis vector, read off the structure constants.
    /// Independent of [`LieAlgebra::is_unimodular`]; both must agree.
    pub fn is_trace_free(&self) -> bool {
        (1..=self.dim).all(|i| {
            let mut tr = Scalar::zero();
            for j in 1..=self.dim {
                if i == j {
                    continue;
                }
                let set = IndexSet::from_indices(&[i, j]).unwrap();
                let c = self.d1[j - 1].coeff(set);
                if i < j {
                    tr += &c;
                } else {
                    tr -= &c;
                }
            }
            tr.is_zero()
        })
    }

    pub fn cohomology(&self) -> Result<CohomologySummary, LieError> {
        self.require_jacobi()?;
        let closed: Vec<Subspace> = (0..=self.dim).map(|k| self.closed(k)).collect();
        let exact: Vec<Subspace> = (0..=self.dim).map(|k| self.exact(k)).collect();
        let betti = closed.iter().zip(&exact).map(|(z, b)| z.dim() - b.dim()).collect();
        Ok(CohomologySummary { betti, closed, exact })
    }

    /// The same algebra written in the coframe `new_basis` (one-forms in current coordinates).
    pub fn in_basis(&self, change: &BasisChange) -> Result<LieAlgebra, LieError> {
        let d1 = change
            .new_basis()
            .iter()
            .map(|f| change.to_new(&self.d(f)))
            .collect::<Result<Vec<_>, _>>()?;
        LieAlgebra::from_differentials(d1)
    }
}

/// Span of `a ∧ b` over bases of two subspaces of `Λ^1`.
pub fn wedge_span(a: &Subspace, b: &Subspace) -> Subspace {
    let n = a.ambient_dim();
    let mut forms = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            forms.push(&x ^ &y);
        }
    }
    Subspace::span(n, a.degree() + b.degree(), &forms).expect("consistent degrees")
}

/// `d` on every basis monomial, using `d(e^i ∧ e^R) = de^i ∧ e^R - e^i ∧ d(e^R)`.
fn differential_images(d1: &[KForm]) -> Vec<Vec<KForm>> {
    let n = d1.len();
    let mut memo: HashMap<IndexSet, KForm> = HashMap::new();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = Vec::new();
        for s in basis(n, k) {
            let img = match s.indices().next() {
                None => KForm::zero(n, 1),
                Some(i) => {
                    let rest = s.without(i);
                    let e_rest = KForm::basis_element(n, rest);
                    let d_rest = if rest.is_empty() { KForm::zero(n, 1) } else { memo[&rest].clone() };
                    let e_i = KForm::generator(n, i);
                    &(&d1[i - 1] ^ &e_rest) - &(&e_i ^ &d_rest)
                }
            };
            memo.insert(s, img.clone());
            row.push(img);
        }
        out.push(row);
    }
    out
}

/// Ordinary cohomology of `(Λ*𝔤*, d)`.
#[derive(Clone, Debug)]
pub struct CohomologySummary {
    pub betti: Vec<usize>,
    /// `Z^k` for `k = 0..=n`.
    pub closed: Vec<Subspace>,
    /// `B^k` for `k = 0..=n`.
    pub exact: Vec<Subspace>,
}

impl CohomologySummary {
    pub fn b(&self, k: usize) -> usize {
        self.betti[k]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{binomial, e};

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::parse(s).unwrap()
    }

    #[test]
    fn parses_solvable_example() {
        let g = alg("(0,12,13,14,15,16)");
        assert!(g.d1()[0].is_zero());
        for i in 2..=6 {
            assert_eq!(g.d1()[i - 1], e(6, &format!("1{}", i)));
        }
    }

    #[test]
    fn kernel_of_d_on_one_forms() {
        let g = alg("0,0,12,13,23,14");
        let k = g.closed_one_forms();
        assert_eq!(k, Subspace::span(6, 1, &[e(6, "1"), e(6, "2")]).unwrap());
    }

    #[test]
    fn differential_examples() {
        let g = alg("0,0,12,13,23,14");
        assert_eq!(g.d(&e(6, "3")), e(6, "12"));
        assert!(g.d(&e(6, "12")).is_zero());
        let h = alg("0,0,12,13,14,34+52");
        let z4 = h.closed(4);
        for sigma in z4.basis() {
            assert_eq!(h.d(&(&sigma ^ &e(6, "3"))), &sigma ^ &e(6, "12"));
        }
    }

    #[test]
    fn jacobi_failure_detected() {
        let g = alg("0,0,12,13,24,0");
        assert!(!g.check_jacobi());
        // d(de^5) = d(e^{24}) = -e^2 ∧ e^{13} = e^{123}
        assert_eq!(g.d(&g.d1()[4]), e(6, "123"));
        assert!(matches!(g.cohomology(), Err(LieError::Jacobi { generator: 5 })));
    }

    #[test]
    fn structural_flags() {
        let s = alg("0,12,13,14,15,16");
        assert!(s.check_jacobi());
        assert!(!s.is_nilpotent());
        assert!(!s.is_unimodular());
        assert!(!s.is_trace_free());
        assert!(!s.d(&e(6, "23456")).is_zero());
        assert_eq!(s.derived_length().unwrap(), 2);
        assert_eq!(alg("0,0,12,13,14,34+52").derived_length().unwrap(), 3);
        assert_eq!(alg("0,0,0,0,0,0").derived_length().unwrap(), 1);
    }

    #[test]
    fn non_solvable_signal() {
        // so(3): de^1 = e^{23}, de^2 = -e^{13}, de^3 = e^{12}
        let g = alg("23,-13,12");
        assert!(g.check_jacobi());
        assert_eq!(g.derived_length(), Err(LieError::NotSolvable));
        assert!(!g.is_nilpotent());
        assert!(g.is_unimodular());
    }

    #[test]
    fn betti_numbers() {
        let c = alg("0,0,0,0,12,15").cohomology().unwrap();
        assert_eq!((c.b(1), c.b(2)), (4, 7));
        let c = alg("0,0,12,13,14,15").cohomology().unwrap();
        assert_eq!((c.b(1), c.b(2)), (2, 3));
        let c = LieAlgebra::abelian(6).cohomology().unwrap();
        for k in 0..=6 {
            assert_eq!(c.b(k), binomial(6, k));
        }
    }

    #[test]
    fn notation_round_trip() {
        assert_eq!(LieAlgebra::abelian(6).notation(), "0,0,0,0,0,0");
        let g = alg("0, 0, 12, 13, 23, 14 + 25");
        assert_eq!(g.notation(), "0,0,12,13,23,14+25");
        let h = alg("0,0,12,13,14,34+52");
        assert_eq!(h.notation(), "0,0,12,13,14,-25+34");
        assert_eq!(alg(&h.notation()), h);
    }

    #[test]
    fn basis_change_preserves_cohomology() {
        let g = alg("0,0,12,13,23,14");
        let frame = vec![e(6, "1"), e(6, "5"), e(6, "2"), e(6, "4"), e(6, "3"), e(6, "6")];
        let h = g.in_basis(&BasisChange::new(&frame).unwrap()).unwrap();
        assert!(h.check_jacobi());
        assert_eq!(h.cohomology().unwrap().betti, g.cohomology().unwrap().betti);
    }
}
