//! Coherent splittings `𝔤* = V1 ⊕ V2`, the double complex `(Λ^{p,q}, δ1, δ2)`
//! and the filtration cohomology `h^{p,q}`.
//!
//! All bigraded computations happen in an adapted coframe whose first `r`
//! elements span `V1` and whose remaining elements span `V2`; in that frame
//! `Λ^{p,q}` is spanned by index sets with exactly `p` indices `≤ r`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{
    basis, factor_simple, BasisChange, ExteriorError, IndexSet, KForm, Matrix, Scalar, Subspace,
};
use crate::liealg::{wedge_span, LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("generator {0} is not a simple two-form")]
    NotSimple(String),
    #[error("generator is zero")]
    ZeroGenerator,
    #[error("V1 and V2 are not complementary in 𝔤*")]
    NotComplementary,
    #[error("splitting is not coherent: d({form}) leaves Λ^{{p+1,q}} + Λ^{{p+2,q-1}}")]
    Incoherent { form: String },
    #[error("the algebra is not unimodular")]
    NotUnimodular,
    #[error("derived length {0} > 2: [𝔤,𝔤] is not abelian")]
    DerivedLengthTooLarge(usize),
    #[error("operation needs dim V1 = 2, found {0}")]
    NotTwoPlane(usize),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `(p, q)` for a basis element in the adapted frame.
fn bidegree(s: IndexSet, r: usize) -> (usize, usize) {
    let p = s.indices().filter(|&i| i <= r).count();
    (p, s.len() - p)
}

/// A coherent splitting, certified at construction.
#[derive(Clone, Debug)]
pub struct CoherentSplitting {
    v1: Subspace,
    v2: Subspace,
    generator: KForm,
    change: BasisChange,
    adapted: LieAlgebra,
}

impl CoherentSplitting {
    /// Splitting with `V1 = v1` and the given complement, or the default complement
    /// spanned by the coordinate covectors `e^j` that are not pivots of `v1`.
    pub fn new(g: &LieAlgebra, v1: &Subspace, v2: Option<&Subspace>) -> Result<Self, SplittingError> {
        let n = g.dim();
        if v1.ambient_dim() != n || v1.degree() != 1 {
            return Err(ExteriorError::DimensionMismatch { left: n, right: v1.ambient_dim() }.into());
        }
        let v2 = match v2 {
            Some(v2) => v2.clone(),
            None => default_complement(v1),
        };
        if v2.ambient_dim() != n || v2.degree() != 1 || v1.dim() + v2.dim() != n || v1.sum(&v2).dim() != n {
            return Err(SplittingError::NotComplementary);
        }
        let frame: Vec<KForm> = v1.basis().into_iter().chain(v2.basis()).collect();
        let change = BasisChange::new(&frame)?;
        let adapted = g.in_basis(&change)?;
        let r = v1.dim();
        let generator = v1
            .basis()
            .iter()
            .fold(KForm::constant(n, Scalar::one()), |acc, f| &acc ^ f);
        let s = CoherentSplitting { v1: v1.clone(), v2, generator, change, adapted };
        // coherence on generators implies it in every degree; check all degrees anyway
        for k in 1..n {
            for (j, set) in basis(n, k).into_iter().enumerate() {
                let (p, q) = bidegree(set, r);
                let img = &s.adapted.d_images(k)[j];
                let ok = img.terms().all(|(t, _)| {
                    let b = bidegree(t, r);
                    b == (p + 1, q) || (q >= 1 && b == (p + 2, q - 1))
                });
                if !ok {
                    let form = s.change.to_old(&KForm::basis_element(n, set))?;
                    return Err(SplittingError::Incoherent { form: form.to_string() });
                }
            }
        }
        Ok(s)
    }

    /// The splitting whose `Λ^{2,0}` is spanned by the simple two-form `alpha`.
    pub fn from_generator(g: &LieAlgebra, alpha: &KForm) -> Result<Self, SplittingError> {
        let (xi, zeta) = match factor_simple(alpha)? {
            Some(f) => f,
            None if alpha.is_zero() => return Err(SplittingError::ZeroGenerator),
            None => return Err(SplittingError::NotSimple(alpha.to_string())),
        };
        let v1 = Subspace::span(g.dim(), 1, &[xi, zeta])?;
        CoherentSplitting::new(g, &v1, None)
    }

    pub fn v1(&self) -> &Subspace {
        &self.v1
    }

    pub fn v2(&self) -> &Subspace {
        &self.v2
    }

    /// Wedge of the `V1` basis; spans `Λ^{r,0}`.
    pub fn generator(&self) -> &KForm {
        &self.generator
    }

    pub fn rank(&self) -> usize {
        self.v1.dim()
    }

    pub fn dim(&self) -> usize {
        self.adapted.dim()
    }

    /// The algebra rewritten in the adapted coframe.
    pub fn adapted_algebra(&self) -> &LieAlgebra {
        &self.adapted
    }

    pub fn basis_change(&self) -> &BasisChange {
        &self.change
    }

    /// Basis of `Λ^{p,q}` in the adapted frame.
    pub fn bigraded_basis(&self, p: usize, q: usize) -> Vec<IndexSet> {
        let r = self.rank();
        if p > r || q > self.dim() - r {
            return Vec::new();
        }
        basis(self.dim(), p + q)
            .into_iter()
            .filter(|s| bidegree(*s, r) == (p, q))
            .collect()
    }

    /// `Λ^{p,q}` as a subspace, in adapted coordinates.
    fn bigraded_space(&self, p: usize, q: usize) -> Subspace {
        Subspace::coordinate(self.dim(), p + q, &self.bigraded_basis(p, q))
    }

    /// Component of `d` raising `p` by `shift` (1 for δ1, 2 for δ2), applied to an adapted-frame form.
    fn delta(&self, x: &KForm, shift: usize) -> KForm {
        let r = self.rank();
        let k = x.degree();
        let n = self.dim();
        let mut out = KForm::zero(n, k + 1);
        if k >= n {
            return out;
        }
        let b = basis(n, k);
        for (s, c) in x.terms() {
            let (p, q) = bidegree(s, r);
            let j = b.binary_search(&s).expect("basis element");
            let img = &self.adapted.d_images(k)[j];
            let part = KForm::from_terms(
                n,
                k + 1,
                img.terms()
                    .filter(|(t, _)| q + 1 >= shift && bidegree(*t, r) == (p + shift, q + 1 - shift))
                    .map(|(t, v)| (t, v * c)),
            )
            .expect("same type");
            out = &out + &part;
        }
        out
    }

    pub fn delta1(&self, x: &KForm) -> KForm {
        self.delta(x, 1)
    }

    pub fn delta2(&self, x: &KForm) -> KForm {
        self.delta(x, 2)
    }

    /// Matrix of δ1 (`shift = 1`) or δ2 (`shift = 2`) from `Λ^{p,q}`.
    fn block(&self, p: usize, q: usize, shift: usize) -> Matrix {
        let domain = self.bigraded_basis(p, q);
        let codomain = if q + 1 >= shift { self.bigraded_basis(p + shift, q + 1 - shift) } else { Vec::new() };
        let n = self.dim();
        let columns: Vec<Vec<Scalar>> = domain
            .iter()
            .map(|s| {
                let img = self.delta(&KForm::basis_element(n, *s), shift);
                codomain.iter().map(|t| img.coeff(*t)).collect()
            })
            .collect();
        Matrix::from_columns(&columns, codomain.len())
    }

    /// Explicit matrices of δ1 and δ2 on every bigraded piece.
    pub fn split_d(&self) -> SplitDifferential {
        let r = self.rank();
        let mut blocks = BTreeMap::new();
        for p in 0..=r {
            for q in 0..=self.dim() - r {
                blocks.insert((p, q), (self.block(p, q, 1), self.block(p, q, 2)));
            }
        }
        SplitDifferential { rank: r, dim: self.dim(), blocks }
    }

    /// `Z^k ∩ F_p` and the dimension of its image in `H^k`, where
    /// `F_p = Σ_{p' ≥ p} Λ^{p', k-p'}` depends only on `V1`.
    pub fn hpq(&self) -> HpqTable {
        let n = self.dim();
        let r = self.rank();
        let mut filtration = Vec::new();
        let mut hk = vec![vec![0usize; r + 2]; n + 1];
        let mut betti = Vec::with_capacity(n + 1);
        for (k, row) in hk.iter_mut().enumerate() {
            let z = self.adapted.closed(k);
            let b = self.adapted.exact(k);
            betti.push(z.dim() - b.dim());
            for (p, slot) in row.iter_mut().enumerate().take(r + 1) {
                let level: Vec<IndexSet> = basis(n, k).into_iter().filter(|s| bidegree(*s, r).0 >= p).collect();
                let f = Subspace::coordinate(n, k, &level);
                let zp = z.intersection(&f);
                let bp = b.intersection(&f);
                let h = zp.dim() - bp.dim();
                *slot = h;
                filtration.push(FiltrationLevel { k, p, z: zp.dim(), h });
            }
        }
        let h = (0..=r)
            .map(|p| {
                (0..=n - r)
                    .map(|q| if p + q <= n { hk[p + q][p] - hk[p + q][p + 1] } else { 0 })
                    .collect()
            })
            .collect();
        HpqTable { rank: r, dim: n, h, betti, filtration }
    }

    /// First and second pages of the spectral sequence, with an explicit basis of `E_1^{0,2}`.
    pub fn e1_term(&self) -> Result<E1Table, SplittingError> {
        let n = self.dim();
        let r = self.rank();
        let mut e1 = vec![vec![0usize; n - r + 1]; r + 1];
        let mut e2 = vec![vec![0usize; n - r + 1]; r + 1];
        let mut lambda = vec![vec![0usize; n - r + 1]; r + 1];
        let mut basis_02 = Vec::new();
        for p in 0..=r {
            for q in 0..=n - r {
                let k = p + q;
                lambda[p][q] = self.bigraded_basis(p, q).len();
                let z1 = self.delta1_cycles(p, q);
                let b1 = self.delta1_boundaries(p, q);
                e1[p][q] = z1.dim() - b1.dim();
                // ∂1 = [δ2] : E_1^{p,q} → E_1^{p+2,q-1}
                let kernel = if q >= 1 {
                    let target = self.delta1_boundaries(p + 2, q - 1);
                    let zb = z1.basis();
                    let imgs: Vec<KForm> = zb.iter().map(|x| self.delta2(x)).collect();
                    Subspace::restricted_preimage(n, k, &zb, &imgs, &target)
                } else {
                    z1.clone()
                };
                let incoming = if p >= 2 {
                    let src = self.delta1_cycles(p - 2, q + 1);
                    let imgs: Vec<KForm> = src.basis().iter().map(|x| self.delta2(x)).collect();
                    if imgs.is_empty() {
                        b1.clone()
                    } else {
                        Subspace::span(n, k, &imgs)?.sum(&b1)
                    }
                } else {
                    b1.clone()
                };
                e2[p][q] = kernel.dim() - incoming.dim();
                if (p, q) == (0, 2) {
                    basis_02 = z1
                        .basis()
                        .iter()
                        .map(|x| self.change.to_old(x))
                        .collect::<Result<Vec<_>, _>>()?;
                }
            }
        }
        let table = E1Table { rank: r, e1, e2, lambda, basis_02: Subspace::span(n, 2, &basis_02)? };
        if r == 2 {
            let h = self.hpq();
            if table.e2 != h.h {
                return Err(SplittingError::Consistency(format!(
                    "spectral sequence does not collapse at E_2: E_2 = {:?}, h = {:?}",
                    table.e2, h.h
                )));
            }
        }
        Ok(table)
    }

    /// `ker δ1 ∩ Λ^{p,q}`.
    fn delta1_cycles(&self, p: usize, q: usize) -> Subspace {
        let n = self.dim();
        let dom: Vec<KForm> = self.bigraded_basis(p, q).into_iter().map(|s| KForm::basis_element(n, s)).collect();
        let imgs: Vec<Vec<Scalar>> = dom.iter().map(|x| self.delta1(x).to_vector()).collect();
        Subspace::restricted_kernel(n, p + q, &dom, &imgs)
    }

    /// `δ1(Λ^{p-1,q}) ⊆ Λ^{p,q}`.
    fn delta1_boundaries(&self, p: usize, q: usize) -> Subspace {
        let n = self.dim();
        if p == 0 {
            return Subspace::zero(n, q);
        }
        let imgs: Vec<KForm> = self
            .bigraded_basis(p - 1, q)
            .into_iter()
            .map(|s| self.delta1(&KForm::basis_element(n, s)))
            .collect();
        if imgs.is_empty() {
            return Subspace::zero(n, p + q);
        }
        Subspace::span(n, p + q, &imgs).expect("δ1 images share a type")
    }

    /// Whether the forms in `Λ^{p,q}` (adapted coordinates) match `x`'s bidegree; test helper.
    pub fn is_bihomogeneous(&self, x: &KForm, p: usize, q: usize) -> bool {
        self.bigraded_space(p, q).contains(x)
    }

    /// `h^{0,3}` from `1 - b_1 + b_2 - dim E_1^{0,2}`; licensed for unimodular algebras.
    pub fn prop2_h03(&self) -> Result<i64, SplittingError> {
        self.require_standard_unimodular()?;
        let b = &self.hpq().betti;
        let e1 = self.e1_term()?;
        Ok(1 - b[1] as i64 + b[2] as i64 - e1.e1[0][2] as i64)
    }

    /// `h^{0,4} = 0` iff the generator of `Λ^{2,0}` is exact; licensed for unimodular algebras.
    pub fn prop2_h04_zero(&self, g: &LieAlgebra) -> Result<bool, SplittingError> {
        self.require_standard_unimodular()?;
        Ok(g.exact(2).contains(&self.generator))
    }

    fn require_standard_unimodular(&self) -> Result<(), SplittingError> {
        if self.rank() != 2 {
            return Err(SplittingError::NotTwoPlane(self.rank()));
        }
        if !self.adapted.is_unimodular() {
            return Err(SplittingError::NotUnimodular);
        }
        Ok(())
    }
}

fn default_complement(v1: &Subspace) -> Subspace {
    let n = v1.ambient_dim();
    let forms: Vec<KForm> = (1..=n)
        .filter(|j| !v1.pivots().contains(&(j - 1)))
        .map(|j| KForm::generator(n, j))
        .collect();
    if forms.is_empty() {
        return Subspace::zero(n, 1);
    }
    Subspace::span(n, 1, &forms).expect("one-forms")
}

/// δ1 and δ2 as matrices over the adapted bigraded bases.
#[derive(Clone, Debug)]
pub struct SplitDifferential {
    rank: usize,
    dim: usize,
    /// `(p, q) ↦ (δ1 : Λ^{p,q} → Λ^{p+1,q}, δ2 : Λ^{p,q} → Λ^{p+2,q-1})`.
    pub blocks: BTreeMap<(usize, usize), (Matrix, Matrix)>,
}

impl SplitDifferential {
    fn get(&self, p: usize, q: usize, shift: usize) -> Option<&Matrix> {
        self.blocks.get(&(p, q)).map(|(a, b)| if shift == 1 { a } else { b })
    }

    pub fn delta1(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.get(p, q, 1)
    }

    pub fn delta2(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.get(p, q, 2)
    }

    /// `δ1² = 0`, `δ2² = 0` and `δ1δ2 + δ2δ1 = 0` as matrix identities.
    pub fn check_identities(&self) -> bool {
        let q_max = self.dim - self.rank;
        for p in 0..=self.rank {
            for q in 0..=q_max {
                let (d1, d2) = &self.blocks[&(p, q)];
                if let Some(next) = self.delta1(p + 1, q) {
                    if !next.mul(d1).is_zero() {
                        return false;
                    }
                }
                if q >= 1 {
                    if let Some(next) = self.delta2(p + 2, q - 1) {
                        if !next.mul(d2).is_zero() {
                            return false;
                        }
                    }
                    // both routes Λ^{p,q} → Λ^{p+3,q-1}
                    if let (Some(a), Some(b)) = (self.delta2(p + 1, q), self.delta1(p + 2, q - 1)) {
                        if !a.mul(d1).add(&b.mul(d2)).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|(a, b)| a.is_zero() && b.is_zero())
    }
}

/// One step of the filtration of `H^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub k: usize,
    pub p: usize,
    /// `dim Z^k_p`
    pub z: usize,
    /// `dim H^k_p`
    pub h: usize,
}

/// `h^{p,q}` for `0 ≤ p ≤ r`, `0 ≤ q ≤ n - r`, plus the Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpqTable {
    pub rank: usize,
    pub dim: usize,
    /// `h[p][q]`
    pub h: Vec<Vec<usize>>,
    pub betti: Vec<usize>,
    pub filtration: Vec<FiltrationLevel>,
}

impl HpqTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h.get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} h^{p,q} = b_k` for every `k`.
    pub fn sums_to_betti(&self) -> bool {
        (0..=self.dim).all(|k| (0..=k.min(self.rank)).map(|p| self.get(p, k - p)).sum::<usize>() == self.betti[k])
    }

    /// `h^{p,q} = h^{r-p, n-r-q}`.
    pub fn is_self_dual(&self) -> bool {
        let qm = self.dim - self.rank;
        (0..=self.rank).all(|p| (0..=qm).all(|q| self.get(p, q) == self.get(self.rank - p, qm - q)))
    }
}

/// Dimensions of `E_1^{p,q}` and `E_2^{p,q}`, and `E_1^{0,2}` in original coordinates.
#[derive(Clone, Debug)]
pub struct E1Table {
    pub rank: usize,
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    /// `dim Λ^{p,q}`
    pub lambda: Vec<Vec<usize>>,
    /// `ker(δ1 : Λ^{0,2} → Λ^{1,2})`.
    pub basis_02: Subspace,
}

impl E1Table {
    /// `Σ_p (-1)^p dim E_1^{p,2} = Σ_p (-1)^p dim Λ^{p,2}` along the column `q = 2`.
    pub fn column_euler_matches(&self) -> bool {
        let alt = |t: &Vec<Vec<usize>>| -> i64 {
            (0..=self.rank)
                .filter(|&p| t[p].len() > 2)
                .map(|p| if p % 2 == 0 { t[p][2] as i64 } else { -(t[p][2] as i64) })
                .sum()
        };
        alt(&self.e1) == alt(&self.lambda)
    }
}

/// Solutions of `α ∈ Λ²ker d, α∧de^i = 0`; its simple nonzero elements are
/// exactly the generators of coherent splittings when `g` is nilpotent. For
/// other algebras every simple element still gives a coherent splitting,
/// but splittings with `V1 ⊄ ker d` are missed.
pub fn generator_space(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let kd = g.closed_one_forms();
    let domain = wedge_span(&kd, &kd).basis();
    let images: Vec<Vec<Scalar>> = domain
        .iter()
        .map(|a| g.d1().iter().flat_map(|de| (a ^ de).to_vector()).collect())
        .collect();
    Subspace::restricted_kernel(n, 2, &domain, &images)
}

/// Finite witness set of simple generators: simple RREF basis vectors of
/// [`generator_space`] and simple pairwise sums and differences.
pub fn candidate_generators(g: &LieAlgebra) -> Vec<KForm> {
    let b = generator_space(g).basis();
    let mut out: Vec<KForm> = Vec::new();
    let mut push = |f: KForm| {
        if !f.is_zero() && (&f ^ &f).is_zero() && !out.contains(&f) {
            out.push(f);
        }
    };
    for f in &b {
        push(f.clone());
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            push(&b[i] + &b[j]);
            push(&b[i] - &b[j]);
        }
    }
    out
}

/// Coordinate two-planes `⟨e^i, e^j⟩` that give coherent splittings, for
/// algebras where [`generator_space`] is incomplete.
pub fn coordinate_splittings(g: &LieAlgebra) -> Vec<CoherentSplitting> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let v1 = Subspace::span(n, 1, &[g.generator(i), g.generator(j)]).expect("one-forms");
            if let Ok(s) = CoherentSplitting::new(g, &v1, None) {
                out.push(s);
            }
        }
    }
    out
}

/// `h^{p,q}` for the canonical splitting `V1 = ker d`.
#[derive(Clone, Debug)]
pub struct CanonicalHpq {
    pub splitting: CoherentSplitting,
    pub table: HpqTable,
    /// `h^{p,q} = h^{b1-p, n-b1-q}`, checked for unimodular algebras.
    pub duality_checked: bool,
}

pub fn canonical_hpq(g: &LieAlgebra) -> Result<CanonicalHpq, SplittingError> {
    g.require_jacobi()?;
    let len = g.derived_length()?;
    if len > 2 {
        return Err(SplittingError::DerivedLengthTooLarge(len));
    }
    let splitting = CoherentSplitting::new(g, &g.closed_one_forms(), None)?;
    let table = splitting.hpq();
    let unimodular = g.is_unimodular();
    if unimodular && !table.is_self_dual() {
        return Err(SplittingError::Consistency(format!("generalized duality fails: {:?}", table.h)));
    }
    Ok(CanonicalHpq { splitting, table, duality_checked: unimodular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::e;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::parse(s).unwrap()
    }

    fn span2(forms: &[&str]) -> Subspace {
        let f: Vec<KForm> = forms.iter().map(|s| e(6, s)).collect();
        Subspace::span(6, 2, &f).unwrap()
    }

    #[test]
    fn generator_space_examples() {
        assert_eq!(generator_space(&alg("0,0,12,13,23,14")), span2(&["12"]));
        assert_eq!(generator_space(&alg("0,0,0,12,13,23")), span2(&["12", "13", "23"]));
        assert!(generator_space(&alg("0,0,12,13,14,34+52")).is_zero());
        assert_eq!(generator_space(&LieAlgebra::abelian(6)).dim(), 15);
    }

    #[test]
    fn splitting_from_generator_uses_coordinate_complement() {
        let g = alg("0,0,12,13,23,14");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        assert_eq!(s.v1(), &Subspace::span(6, 1, &[e(6, "1"), e(6, "2")]).unwrap());
        let v2: Vec<KForm> = (3..=6).map(|i| e(6, &i.to_string())).collect();
        assert_eq!(s.v2(), &Subspace::span(6, 1, &v2).unwrap());
    }

    #[test]
    fn solvable_example_is_coherent_with_injective_delta1() {
        let g = alg("0,12,13,14,15,16");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        for i in 3..=6 {
            assert_eq!(s.delta1(&e(6, &i.to_string())), e(6, &format!("1{}", i)));
        }
        let sd = s.split_d();
        for q in 1..=4 {
            let m = sd.delta1(0, q).unwrap();
            assert_eq!(m.rank(), m.ncols(), "δ1 injective on Λ^(0,{q})");
        }
        let t = s.hpq();
        assert_eq!(t.get(0, 0), 1);
        for q in 1..=4 {
            assert_eq!(t.get(0, q), 0);
        }
    }

    #[test]
    fn rejects_non_simple_and_incoherent() {
        let g = alg("0,0,12,13,23,14");
        assert!(matches!(
            CoherentSplitting::from_generator(&g, &(&e(6, "12") + &e(6, "34"))),
            Err(SplittingError::NotSimple(_))
        ));
        assert!(matches!(
            CoherentSplitting::from_generator(&g, &e(6, "34")),
            Err(SplittingError::Incoherent { .. })
        ));
        assert!(matches!(
            CoherentSplitting::from_generator(&g, &KForm::zero(6, 2)),
            Err(SplittingError::ZeroGenerator)
        ));
    }

    #[test]
    fn abelian_deltas_vanish() {
        let s = CoherentSplitting::from_generator(&LieAlgebra::abelian(6), &e(6, "12")).unwrap();
        assert!(s.split_d().is_zero());
        let t = s.e1_term().unwrap();
        assert_eq!(t.e1[0][2], 6);
        assert_eq!(t.basis_02.dim(), 6);
    }

    #[test]
    fn h03_h04_depend_on_v1() {
        let g = alg("0,0,0,0,12,13");
        for (gen, want) in [("12", (2, 0)), ("14", (2, 1)), ("23", (3, 1))] {
            let t = CoherentSplitting::from_generator(&g, &e(6, gen)).unwrap().hpq();
            assert_eq!((t.get(0, 3), t.get(0, 4)), want, "generator e^{gen}");
        }
        let g = alg("0,0,0,12,13,14");
        for (gen, want) in [("12", (0, 0)), ("13", (2, 0))] {
            let t = CoherentSplitting::from_generator(&g, &e(6, gen)).unwrap().hpq();
            assert_eq!((t.get(0, 3), t.get(0, 4)), want, "generator e^{gen}");
        }
    }

    #[test]
    fn hpq_independent_of_complement() {
        let g = alg("0,0,0,0,12,13");
        let v1 = Subspace::span(6, 1, &[e(6, "1"), e(6, "4")]).unwrap();
        let a = CoherentSplitting::new(&g, &v1, None).unwrap();
        let v2 = Subspace::span(
            6,
            1,
            &[&e(6, "2") + &e(6, "1"), &e(6, "3") - &e(6, "4"), &e(6, "5") + &e(6, "4"), &e(6, "6") + &e(6, "1").times(3)],
        )
        .unwrap();
        let b = CoherentSplitting::new(&g, &v1, Some(&v2)).unwrap();
        assert_eq!(a.hpq().h, b.hpq().h);
        assert_eq!(a.e1_term().unwrap().e1[0][2], b.e1_term().unwrap().e1[0][2]);
    }

    #[test]
    fn e1_02_table_bases() {
        let g = alg("0,0,0,12,14,24");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        assert_eq!(s.e1_term().unwrap().basis_02, span2(&["34", "45", "46"]));
        let g = alg("0,0,12,13,14,15");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        let want = Subspace::span(6, 2, &[e(6, "34"), &e(6, "45") - &e(6, "36")]).unwrap();
        assert_eq!(s.e1_term().unwrap().basis_02, want);
    }

    #[test]
    fn prop2_formulas() {
        let g = alg("0,0,0,0,12,15");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        assert_eq!(s.prop2_h03().unwrap(), 0);
        let g = alg("0,0,0,12,13,14");
        let s = CoherentSplitting::from_generator(&g, &e(6, "12")).unwrap();
        assert_eq!(s.prop2_h03().unwrap(), 0);
        assert!(s.prop2_h04_zero(&g).unwrap());
        let g = alg("0,0,0,0,12,13");
        let s = CoherentSplitting::from_generator(&g, &e(6, "14")).unwrap();
        assert!(!s.prop2_h04_zero(&g).unwrap());
        assert_eq!(s.hpq().get(0, 4), 1);
        let solv = alg("0,12,13,14,15,16");
        let s = CoherentSplitting::from_generator(&solv, &e(6, "12")).unwrap();
        assert_eq!(s.prop2_h03(), Err(SplittingError::NotUnimodular));
    }

    #[test]
    fn canonical_examples() {
        for a in ["0,0,0,12,13,24", "0,0,0,12,13,14"] {
            let c = canonical_hpq(&alg(a)).unwrap();
            let t = &c.table;
            assert_eq!(t.rank, 3);
            assert_eq!((t.get(0, 2), t.get(1, 1), t.get(2, 0)), (0, 5, 1));
            assert_eq!((t.get(0, 3), t.get(1, 2)), (0, 4));
            assert!(c.duality_checked);
        }
        assert_eq!(
            canonical_hpq(&alg("0,0,12,13,14,34+52")).unwrap_err(),
            SplittingError::DerivedLengthTooLarge(3)
        );
    }
}
