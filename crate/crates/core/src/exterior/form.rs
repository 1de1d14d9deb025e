use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use itertools::Itertools;
use num_traits::Zero;

use super::scalar::Scalar;
use super::ExteriorError;

/// Largest ambient dimension supported (single-digit notation).
pub const MAX_DIM: usize = 9;

/// A strictly increasing set of generator indices in `1..=n`, naming the
/// basis element `e^{i1…ik}`. Stored as a bitmask; bit `i` marks index `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet(u16);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Builds the set from arbitrary (possibly unsorted) indices.
    /// Returns `None` on repetition or an index outside `1..=MAX_DIM`.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u16;
        for &i in indices {
            if i == 0 || i > MAX_DIM || mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(IndexSet(mask))
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&i));
        IndexSet(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i <= MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn max_index(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            15 - self.0.leading_zeros() as usize
        }
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (1..=MAX_DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    /// Number of indices strictly greater than `j`.
    fn count_above(self, j: usize) -> u32 {
        (self.0 & !((1u16 << (j + 1)) - 1)).count_ones()
    }

    /// Number of indices strictly less than `j`.
    fn count_below(self, j: usize) -> u32 {
        (self.0 & ((1u16 << j) - 1)).count_ones()
    }

    /// Sign of the permutation that merges `self` followed by `other` into
    /// increasing order. `None` if the sets overlap.
    pub fn merge_sign(self, other: IndexSet) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: u32 = other.indices().map(|j| self.count_above(j)).sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// Sign picked up by `e_k ⌟ e^{I}` when `k ∈ I`.
    pub fn contraction_sign(self, k: usize) -> i32 {
        if self.count_below(k).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            write!(f, "{}", i)?;
        }
        Ok(())
    }
}

/// The canonical basis of `Λ^k` on `n` generators, lexicographically ordered.
pub fn basis(n: usize, k: usize) -> Vec<IndexSet> {
    (1..=n)
        .combinations(k)
        .map(|c| IndexSet::from_indices(&c).expect("combination is a valid index set"))
        .collect()
}

/// Binomial coefficient `C(n, k)`, the dimension of `Λ^k` on `n` generators.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A homogeneous exterior form of degree `k` on an `n`-dimensional space.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<IndexSet, Scalar>,
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        KForm { n, k, coeffs: BTreeMap::new() }
    }

    /// The constant 0-form `c`.
    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut f = KForm::zero(n, 0);
        f.add_term(IndexSet::EMPTY, c);
        f
    }

    /// The basis element `e^I`.
    pub fn basis_element(n: usize, set: IndexSet) -> Self {
        let mut f = KForm::zero(n, set.len());
        f.add_term(set, Scalar::one());
        f
    }

    /// The generator `e^i`.
    pub fn generator(n: usize, i: usize) -> Self {
        KForm::basis_element(n, IndexSet::singleton(i))
    }

    /// `e^{i1} ∧ … ∧ e^{ik}` for indices in the given (arbitrary) order.
    /// Repeated indices give the zero form.
    pub fn monomial(n: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        let mut acc = KForm::constant(n, Scalar::one());
        for &i in indices {
            if i == 0 || i > n {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim: n });
            }
            acc = acc.wedge(&KForm::generator(n, i))?;
        }
        Ok(acc)
    }

    /// Builds a form from `(index set, coefficient)` terms; repeated sets are summed.
    pub fn from_terms<I>(n: usize, k: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (IndexSet, Scalar)>,
    {
        let mut f = KForm::zero(n, k);
        for (set, c) in terms {
            if set.len() != k {
                return Err(ExteriorError::DegreeMismatch { expected: k, found: set.len() });
            }
            if set.max_index() > n {
                return Err(ExteriorError::IndexOutOfRange { index: set.max_index(), dim: n });
            }
            f.add_term(set, c);
        }
        Ok(f)
    }

    /// Coordinates in `basis(n, k)` order.
    pub fn from_vector(n: usize, k: usize, v: &[Scalar]) -> Self {
        let b = basis(n, k);
        assert_eq!(b.len(), v.len(), "vector length does not match dim Λ^{k}");
        let mut f = KForm::zero(n, k);
        for (set, c) in b.into_iter().zip(v) {
            f.add_term(set, c.clone());
        }
        f
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        basis(self.n, self.k)
            .into_iter()
            .map(|set| self.coeff(set))
            .collect()
    }

    pub(crate) fn add_term(&mut self, set: IndexSet, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.coeffs.get_mut(&set) {
            Some(existing) => {
                *existing += &c;
                existing.is_zero()
            }
            None => {
                self.coeffs.insert(set, c);
                false
            }
        };
        if remove {
            self.coeffs.remove(&set);
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, set: IndexSet) -> Scalar {
        self.coeffs.get(&set).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (IndexSet, &Scalar)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return KForm::zero(self.n, self.k);
        }
        KForm {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|(s, x)| (*s, x * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c.clone());
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &KForm) -> Result<(), ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.k != other.k {
            return Err(ExteriorError::DegreeMismatch { expected: self.k, found: other.k });
        }
        Ok(())
    }

    /// Exterior product. Degrees above `n` give the zero form of that degree.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = KForm::zero(self.n, self.k + other.k);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some(sign) = a.merge_sign(*b) {
                    let c = x * y;
                    out.add_term(a.union(*b), if sign > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the dual basis vector `e_k`.
    pub fn contract(&self, k: usize) -> Result<KForm, ExteriorError> {
        if self.k == 0 {
            return Err(ExteriorError::ContractDegreeZero);
        }
        if k == 0 || k > self.n {
            return Err(ExteriorError::IndexOutOfRange { index: k, dim: self.n });
        }
        let mut out = KForm::zero(self.n, self.k - 1);
        for (s, c) in &self.coeffs {
            if s.contains(k) {
                let c = if s.contraction_sign(k) > 0 { c.clone() } else { -c };
                out.add_term(s.without(k), c);
            }
        }
        Ok(out)
    }

    /// Interior product with the vector `Σ v_i e_i`.
    pub fn contract_vector(&self, v: &[Scalar]) -> Result<KForm, ExteriorError> {
        if v.len() != self.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: v.len() });
        }
        if self.k == 0 {
            return Err(ExteriorError::ContractDegreeZero);
        }
        let mut out = KForm::zero(self.n, self.k - 1);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            out = out.try_add(&self.contract(i + 1)?.scale(vi))?;
        }
        Ok(out)
    }

    /// Evaluates a one-form on a vector.
    pub fn pair(&self, v: &[Scalar]) -> Result<Scalar, ExteriorError> {
        if self.k != 1 {
            return Err(ExteriorError::DegreeMismatch { expected: 1, found: self.k });
        }
        Ok(self.contract_vector(v)?.coeff(IndexSet::EMPTY))
    }

    /// Substitutes `e^i ↦ images[i-1]` (one-forms on a possibly different space)
    /// and expands multiplicatively.
    pub fn pullback(&self, images: &[KForm]) -> Result<KForm, ExteriorError> {
        if images.len() != self.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: images.len() });
        }
        let m = images.first().map(|f| f.n).unwrap_or(0);
        if let Some(bad) = images.iter().find(|f| f.k != 1) {
            return Err(ExteriorError::DegreeMismatch { expected: 1, found: bad.k });
        }
        let mut out = KForm::zero(m, self.k);
        for (s, c) in &self.coeffs {
            let mut term = KForm::constant(m, c.clone());
            for i in s.indices() {
                term = term.wedge(&images[i - 1])?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Rational scalar multiple.
    pub fn times(&self, c: i64) -> Self {
        self.scale(&Scalar::from_int(c))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(n={}, k={}, {})", self.n, self.k, self)
    }
}

/// `c*e^{i1..ik}` terms joined by `+`/`-`; unit coefficients are omitted.
impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (s, c)) in self.coeffs.iter().enumerate() {
            let negative = (c.is_rational() || c.rational_part().is_zero()) && c.signum() < 0;
            let mag = if negative { -c } else { c.clone() };
            if negative {
                write!(f, "-")?;
            } else if pos > 0 {
                write!(f, "+")?;
            }
            if s.is_empty() {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            write!(f, "e^{{{}}}", s)?;
        }
        Ok(())
    }
}

impl Add for &KForm {
    type Output = KForm;
    /// Panics if the forms live in different spaces; use [`KForm::try_add`] otherwise.
    fn add(self, rhs: &KForm) -> KForm {
        self.try_add(rhs).expect("adding forms of different type")
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.try_add(&-rhs).expect("subtracting forms of different type")
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        KForm {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

/// Wedge product; panics on mismatched ambient dimension.
impl BitXor for &KForm {
    type Output = KForm;
    fn bitxor(self, rhs: &KForm) -> KForm {
        self.wedge(rhs).expect("wedging forms of different ambient dimension")
    }
}

/// `e^{digits}` shorthand used throughout tests and data tables, e.g. `e(6, "12")`.
/// Digits may be unsorted; the sign of the reordering is applied.
pub fn e(n: usize, digits: &str) -> KForm {
    let idx: Vec<usize> = digits
        .chars()
        .map(|c| c.to_digit(10).expect("digit") as usize)
        .collect();
    KForm::monomial(n, &idx).expect("valid monomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_basis_cases() {
        assert_eq!(&e(6, "1") ^ &e(6, "2"), e(6, "12"));
        assert!((&e(6, "12") ^ &e(6, "12")).is_zero());
        assert_eq!(e(6, "21"), -&e(6, "12"));
    }

    #[test]
    fn non_simple_table_generator_squares_to_minus_two_e1234() {
        let a = &e(6, "23") - &e(6, "14");
        assert_eq!(&a ^ &a, e(6, "1234").times(-2));
    }

    #[test]
    fn wedge_rejects_mismatched_dimension() {
        assert!(matches!(
            e(6, "1").wedge(&e(5, "2")),
            Err(ExteriorError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wedge_past_top_degree_is_zero() {
        let top = e(4, "1234");
        let w = top.wedge(&e(4, "1")).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 5);
    }

    #[test]
    fn contraction_sign_convention() {
        assert_eq!(e(6, "12").contract(1).unwrap(), e(6, "2"));
        assert_eq!(e(6, "12").contract(2).unwrap(), -&e(6, "1"));
        assert!(e(6, "12").contract(3).unwrap().is_zero());
        assert!(matches!(
            KForm::constant(6, Scalar::one()).contract(1),
            Err(ExteriorError::ContractDegreeZero)
        ));
    }

    #[test]
    fn contract_psi_plus_identity_frame() {
        let psi = &(&(&e(6, "135") - &e(6, "146")) - &e(6, "236")) - &e(6, "245");
        assert_eq!(psi.contract(1).unwrap(), &e(6, "35") - &e(6, "46"));
    }

    #[test]
    fn basis_is_lexicographic() {
        let b = basis(4, 2);
        let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["12", "13", "14", "23", "24", "34"]);
        assert_eq!(basis(6, 3).len(), binomial(6, 3));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pullback_by_permutation() {
        // e^1 ↦ e^2, e^2 ↦ e^1 sends e^{12} to -e^{12}
        let imgs = vec![e(2, "2"), e(2, "1")];
        assert_eq!(e(2, "12").pullback(&imgs).unwrap(), -&e(2, "12"));
    }

    #[test]
    fn display_format() {
        let a = &e(6, "23") - &e(6, "14");
        assert_eq!(a.to_string(), "-e^{14}+e^{23}");
        assert_eq!(e(6, "1234").times(2).to_string(), "2*e^{1234}");
        assert_eq!(e(6, "6").scale(&Scalar::sqrt2()).to_string(), "r2*e^{6}");
        assert_eq!(KForm::zero(6, 2).to_string(), "0");
    }
}
