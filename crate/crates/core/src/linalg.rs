//! Dense exact linear algebra over `Q` and `Q(i)`.
//!
//! Everything here is fraction-exact Gaussian elimination; matrices in this
//! crate rarely exceed a hundred columns.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

/// Exact field used by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl Field for Rational {}
impl Field for Scalar {}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type QMatrix = Matrix<Rational>;
pub type CMatrix = Matrix<Scalar>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_mat(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(
            self.cols,
            v.len(),
            "shape mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub_mat(&self, o: &Self) -> Self {
        self.add_mat(&o.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Stack `self` on top of `o`.
    pub fn vstack(&self, o: &Self) -> Self {
        if self.rows == 0 {
            return o.clone();
        }
        if o.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self·x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone() / piv.clone();
                    for j in c..n {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    }
                }
            }
        }
        det
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> F {
        let sub = Matrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect())
                .collect(),
        );
        if sub.rows == 0 {
            return F::one();
        }
        sub.det()
    }

    /// `det` of each leading `k×k` block, `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<F> {
        let idx: Vec<usize> = (0..self.rows).collect();
        (1..=self.rows)
            .map(|k| self.minor(&idx[..k], &idx[..k]))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul_mat(o).sub_mat(&o.mul_mat(self))
    }

    /// Elementary matrix `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Scalar::from_int(1);
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    /// All entries as a flat vector, row-major.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn real_part_matrix(&self) -> Option<QMatrix> {
        if self.data.iter().all(Scalar::is_real) {
            Some(self.map(|s| s.re.clone()))
        } else {
            None
        }
    }
}

/// Signature `(positive, negative, zero)` of a rational symmetric matrix,
/// computed by symmetric Gaussian elimination (congruence), which stays exact
/// even when leading minors vanish.
pub fn signature(sym: &QMatrix) -> (usize, usize, usize) {
    assert!(sym.is_square());
    let mut m = sym.clone();
    let mut n = m.rows();
    let (mut pos, mut neg) = (0, 0);
    let total = n;
    while n > 0 {
        // bring a nonzero diagonal entry to position 0 of the active block
        let diag = (0..n).find(|&i| !m[(i, i)].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[(i, j)].is_zero())
                else {
                    break;
                };
                // x_i ← x_i + x_j makes the (i,i) entry 2 m_ij ≠ 0
                for k in 0..n {
                    let v = m[(j, k)].clone();
                    m[(i, k)] += v;
                }
                for k in 0..n {
                    let v = m[(k, j)].clone();
                    m[(k, i)] += v;
                }
                i
            }
        };
        let last = n - 1;
        swap_sym(&mut m, pivot, last);
        let p = m[(last, last)].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in 0..last {
            if m[(i, last)].is_zero() {
                continue;
            }
            let f = &m[(i, last)] / &p;
            for j in 0..last {
                let v = &f * &m[(last, j)];
                m[(i, j)] -= v;
            }
        }
        n -= 1;
        let mut shrunk = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                shrunk[(i, j)] = m[(i, j)].clone();
            }
        }
        m = shrunk;
    }
    (pos, neg, total - pos - neg)
}

fn swap_sym(m: &mut QMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap_rows(a, b);
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Subspaces of `F^n` given by spanning vectors.
pub mod subspace {
    use super::*;

    /// A basis (row-reduced) of the span of `vectors` in `F^dim`.
    pub fn span_basis<F: Field>(dim: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), dim);
        let (r, pivots) = m.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn dimension<F: Field>(dim: usize, vectors: &[Vec<F>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        Matrix::from_rows(vectors.to_vec()).rank().min(dim)
    }

    /// Exact equality of two spans.
    pub fn same_span<F: Field>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
        let da = dimension(dim, a);
        if da != dimension(dim, b) {
            return false;
        }
        let mut both = a.to_vec();
        both.extend_from_slice(b);
        dimension(dim, &both) == da
    }

    /// Whether `v` lies in the span of `basis`.
    pub fn contains<F: Field>(dim: usize, basis: &[Vec<F>], v: &[F]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let d = dimension(dim, basis);
        let mut ext = basis.to_vec();
        ext.push(v.to_vec());
        dimension(dim, &ext) == d
    }

    /// Basis of the intersection of two spans.
    pub fn intersection<F: Field>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // x·A = y·B  ⟺  (x, −y) in the left kernel of [A; B]
        let mut rows = a.to_vec();
        rows.extend(b.iter().cloned());
        let stacked = Matrix::from_rows(rows).transpose();
        let out: Vec<Vec<F>> = stacked
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![F::zero(); dim];
                for (c, row) in coef.iter().zip(a) {
                    if !c.is_zero() {
                        for (vi, ri) in v.iter_mut().zip(row) {
                            *vi = vi.clone() + c.clone() * ri.clone();
                        }
                    }
                }
                v
            })
            .collect();
        span_basis(dim, &out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_nullspace_and_solve() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        let x = m.solve(&[rat(6, 1), rat(12, 1), rat(2, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(6, 1), rat(12, 1), rat(2, 1)]);
        assert!(m.solve(&[rat(1, 1), rat(0, 1), rat(0, 1)]).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), rat(4, 1));
        assert_eq!(m.leading_minors(), vec![rat(2, 1), rat(3, 1), rat(4, 1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), QMatrix::identity(3));
        assert!(q(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        // hyperbolic plane has signature (1,1,0) but leading minor 0
        assert_eq!(signature(&q(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&q(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
        assert_eq!(signature(&q(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(signature(&QMatrix::zeros(3, 3)), (0, 0, 3));
    }

    #[test]
    fn complex_solve() {
        let m = CMatrix::from_rows(vec![
            vec![Scalar::i(), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_ints(0, -1)],
        ]);
        // second row is -i times the first
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), Scalar::from_int(0));
    }
}
