//! Exact Gaussian elimination over ℚ(√2) and subspaces of `Λ^k`.

use std::fmt;

use super::form::{basis, binomial, KForm};
use super::scalar::Scalar;
use super::ExteriorError;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows, one basis vector per free column.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        out.push(v);
    }
    out
}

/// Transposes a list of column vectors (all of length `nrows`) into rows.
pub fn columns_to_rows(columns: &[Vec<Scalar>], nrows: usize) -> Vec<Vec<Scalar>> {
    (0..nrows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Dense matrix over ℚ(√2), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols));
        Matrix { rows: data.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        Matrix { rows, cols: columns.len(), data: columns_to_rows(columns, rows) }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let data = (0..self.cols).map(|j| self.column(j)).collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(Scalar::zero(), |mut acc, (a, x)| {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                    acc
                })
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix { rows: n, cols: n, data: aug.into_iter().map(|r| r[n..].to_vec()).collect() })
    }

    /// Basis of the kernel as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        nullspace(&self.data, self.cols)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `Λ^k` on `n` generators, stored as RREF rows over the
/// canonical basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    k: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize, k: usize) -> Self {
        Subspace { n, k, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize, k: usize) -> Self {
        let d = binomial(n, k);
        let rows = Matrix::identity(d).data;
        Subspace { n, k, rows, pivots: (0..d).collect() }
    }

    /// Subspace spanned by coordinate vectors in `basis(n, k)` order.
    pub fn from_vectors(n: usize, k: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let d = binomial(n, k);
        debug_assert!(vectors.iter().all(|v| v.len() == d));
        let mut rows: Vec<Vec<Scalar>> = vectors;
        let pivots = rref(&mut rows);
        Subspace { n, k, rows, pivots }
    }

    /// Linear span of forms of common ambient dimension `n` and degree `k`.
    pub fn span(n: usize, k: usize, forms: &[KForm]) -> Result<Self, ExteriorError> {
        for f in forms {
            if f.ambient_dim() != n {
                return Err(ExteriorError::DimensionMismatch { left: n, right: f.ambient_dim() });
            }
            if f.degree() != k {
                return Err(ExteriorError::DegreeMismatch { expected: k, found: f.degree() });
            }
        }
        Ok(Subspace::from_vectors(n, k, forms.iter().map(KForm::to_vector).collect()))
    }

    /// Span of a nonempty list of forms, taking the type from the first.
    pub fn span_of(forms: &[KForm]) -> Result<Self, ExteriorError> {
        let first = forms.first().ok_or(ExteriorError::EmptySpan)?;
        Subspace::span(first.ambient_dim(), first.degree(), forms)
    }

    /// Kernel of the linear map on `Λ^k` (n generators) sending the `j`-th basis
    /// element to `images[j]`, an arbitrary coordinate vector.
    pub fn kernel(n: usize, k: usize, images: &[Vec<Scalar>]) -> Self {
        let d = binomial(n, k);
        assert_eq!(images.len(), d, "one image per basis element");
        let target = images.first().map_or(0, Vec::len);
        let rows = columns_to_rows(images, target);
        Subspace::from_vectors(n, k, nullspace(&rows, d))
    }

    /// Kernel of a form-valued linear map evaluated on each basis element.
    /// Several target forms per basis element are concatenated.
    pub fn kernel_of_map<F>(n: usize, k: usize, mut f: F) -> Self
    where
        F: FnMut(&KForm) -> Vec<KForm>,
    {
        let images: Vec<Vec<Scalar>> = basis(n, k)
            .into_iter()
            .map(|s| {
                f(&KForm::basis_element(n, s))
                    .iter()
                    .flat_map(KForm::to_vector)
                    .collect()
            })
            .collect();
        Subspace::kernel(n, k, &images)
    }

    /// `{x ∈ Λ^k : map(x) ∈ target}` where `images[j]` is the image of the `j`-th basis element.
    pub fn preimage(n: usize, k: usize, images: &[KForm], target: &Subspace) -> Self {
        let residuals: Vec<Vec<Scalar>> = images.iter().map(|f| target.residual(&f.to_vector())).collect();
        Subspace::kernel(n, k, &residuals)
    }

    /// Span of the combinations `Σ c_i domain[i]` whose image `Σ c_i images[i]`
    /// vanishes; `images[i]` is a coordinate vector of any fixed length.
    pub fn restricted_kernel(n: usize, k: usize, domain: &[KForm], images: &[Vec<Scalar>]) -> Self {
        assert_eq!(domain.len(), images.len());
        let target = images.first().map_or(0, Vec::len);
        let coeffs = nullspace(&columns_to_rows(images, target), domain.len());
        let mut forms = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let mut f = KForm::zero(n, k);
            for (ci, d) in c.iter().zip(domain) {
                if !ci.is_zero() {
                    f = &f + &d.scale(ci);
                }
            }
            forms.push(f);
        }
        Subspace::span(n, k, &forms).expect("domain forms share a type")
    }

    /// Span of the combinations of `domain` whose image under the map lies in `target`.
    pub fn restricted_preimage(n: usize, k: usize, domain: &[KForm], images: &[KForm], target: &Subspace) -> Self {
        let residuals: Vec<Vec<Scalar>> = images.iter().map(|f| target.residual(&f.to_vector())).collect();
        Subspace::restricted_kernel(n, k, domain, &residuals)
    }

    /// Coordinate subspace spanned by the given basis elements.
    pub fn coordinate(n: usize, k: usize, sets: &[super::form::IndexSet]) -> Self {
        let forms: Vec<KForm> = sets.iter().map(|s| KForm::basis_element(n, *s)).collect();
        Subspace::span(n, k, &forms).expect("basis elements of degree k")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// RREF basis as forms.
    pub fn basis(&self) -> Vec<KForm> {
        self.rows.iter().map(|r| KForm::from_vector(self.n, self.k, r)).collect()
    }

    /// Remainder of `v` after elimination against the pivot rows; zero iff `v` lies in the subspace.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.residual(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, f: &KForm) -> bool {
        f.ambient_dim() == self.n && f.degree() == self.k && self.contains_vector(&f.to_vector())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.k == other.k && self.rows.iter().all(|r| other.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_vectors(self.n, self.k, rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!((self.n, self.k), (other.n, other.k));
        // coefficients x over our rows with Σ x_i row_i ∈ other
        let residuals: Vec<Vec<Scalar>> = self.rows.iter().map(|r| other.residual(r)).collect();
        let d = binomial(self.n, self.k);
        let ker = nullspace(&columns_to_rows(&residuals, d), self.rows.len());
        let vectors = ker
            .into_iter()
            .map(|x| {
                let mut v = vec![Scalar::zero(); d];
                for (xi, row) in x.iter().zip(&self.rows) {
                    if xi.is_zero() {
                        continue;
                    }
                    for (a, b) in v.iter_mut().zip(row) {
                        *a += &(xi * b);
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.n, self.k, vectors)
    }

    /// Annihilator in the dual space, expressed in the dual coordinates.
    /// For a subspace of `Λ^1` this is a space of vectors, returned as rows.
    pub fn annihilator_vectors(&self) -> Vec<Vec<Scalar>> {
        nullspace(&self.rows, binomial(self.n, self.k))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis().iter().map(|x| x.to_string()).collect();
        write!(f, "Subspace(n={}, k={}, dim={}, [{}])", self.n, self.k, self.dim(), b.join(", "))
    }
}
