//! Finite-dimensional reductive Lie algebras given by exact matrix bases.
//!
//! Elements are coordinate vectors over [`Scalar`] with respect to the basis.
//! A real algebra uses the same basis with real coordinates; its
//! complexification keeps the basis and allows complex coordinates, so
//! entrywise conjugation of coordinates is the conjugation of the real form.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::linalg::{signature, subspace, CMatrix, Matrix};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Real,
    Complex,
}

/// Coordinate vector of an element of a finite Lie algebra.
pub type Coords = Vec<Scalar>;

#[derive(Clone, Debug)]
pub struct FiniteLieAlgebra {
    name: String,
    field: BaseField,
    size: usize,
    basis: Vec<CMatrix>,
    /// `brackets[i][j]` lists the nonzero coordinates of `[b_i, b_j]`.
    brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
    gram: CMatrix,
    pivot_entries: Vec<usize>,
    pivot_inverse: CMatrix,
    center: Vec<Coords>,
    simple_blocks: Vec<Vec<Coords>>,
}

impl PartialEq for FiniteLieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.basis == o.basis
    }
}

impl FiniteLieAlgebra {
    /// Validates independence, closure and reductivity, then precomputes
    /// structure constants, the Killing Gram matrix and the ideal split.
    pub fn from_basis(
        name: &str,
        field: BaseField,
        basis: Vec<CMatrix>,
    ) -> Result<Self, AlgebraError> {
        let size = basis.first().map_or(1, Matrix::rows);
        if basis.iter().any(|b| b.rows() != size || b.cols() != size) {
            return Err(AlgebraError::ShapeMismatch(size));
        }
        let dim = basis.len();
        let flat: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let (pivot_entries, pivot_inverse) = if dim == 0 {
            (Vec::new(), CMatrix::zeros(0, 0))
        } else {
            let rows = Matrix::from_rows(flat.clone());
            let (_, pivots) = rows.rref();
            if pivots.len() < dim {
                return Err(AlgebraError::DependentBasis);
            }
            let sub = Matrix::from_rows(
                flat.iter()
                    .map(|f| pivots.iter().map(|&p| f[p].clone()).collect())
                    .collect(),
            )
            .transpose();
            (pivots, sub.inverse().ok_or(AlgebraError::DependentBasis)?)
        };
        let mut g = FiniteLieAlgebra {
            name: name.to_string(),
            field,
            size,
            basis,
            brackets: Vec::new(),
            gram: CMatrix::zeros(dim, dim),
            pivot_entries,
            pivot_inverse,
            center: Vec::new(),
            simple_blocks: Vec::new(),
        };
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let m = g.basis[i].commutator(&g.basis[j]);
                let c = g.coords(&m).map_err(|_| AlgebraError::NotClosed(i, j))?;
                if field == BaseField::Real && !c.iter().all(Scalar::is_real) {
                    return Err(AlgebraError::NonRealStructure(i, j));
                }
                brackets[i][j] = c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
            }
        }
        g.brackets = brackets;
        let ads: Vec<CMatrix> = (0..dim).map(|i| g.ad_basis(i)).collect();
        for i in 0..dim {
            for j in i..dim {
                let v = ads[i].mul_mat(&ads[j]).trace();
                g.gram[(i, j)] = v.clone();
                g.gram[(j, i)] = v;
            }
        }
        g.split_ideals()?;
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Side length of the matrices in the basis.
    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Same basis, complex coordinates allowed.
    pub fn complexified(&self) -> Self {
        let mut g = self.clone();
        g.field = BaseField::Complex;
        if !g.name.ends_with("_C") && self.field == BaseField::Real {
            g.name = format!("{}_C", self.name);
        }
        g
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Nonzero coordinates of `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.brackets[i][j]
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(Scalar::zero, |(_, s)| s.clone())
    }

    fn check_len(&self, x: &[Scalar]) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Bracket of coordinate vectors. Lengths must equal `dim`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Coords {
        let mut out = vec![Scalar::zero(); self.dim()];
        self.bracket_into(&mut out, x, y, &Scalar::one());
        out
    }

    /// `acc += s · [x, y]`.
    pub fn bracket_into(&self, acc: &mut [Scalar], x: &[Scalar], y: &[Scalar], s: &Scalar) {
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let xs = xi * s;
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.brackets[i][j].is_empty() {
                    continue;
                }
                let f = &xs * yj;
                for (k, c) in &self.brackets[i][j] {
                    acc[*k] += &(&f * c);
                }
            }
        }
    }

    pub fn try_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Coords, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad b_i` on coordinates: column `l` holds `[b_i, b_l]`.
    pub fn ad_basis(&self, i: usize) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for l in 0..n {
            for (k, c) in &self.brackets[i][l] {
                m[(*k, l)] = c.clone();
            }
        }
        m
    }

    pub fn ad(&self, x: &[Scalar]) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for l in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[l] = Scalar::one();
            for (k, v) in self.bracket(x, &e).into_iter().enumerate() {
                m[(k, l)] = v;
            }
        }
        m
    }

    /// Killing Gram matrix `tr(ad b_i ad b_j)`.
    pub fn killing_gram(&self) -> &CMatrix {
        &self.gram
    }

    /// Killing form `tr(ad x ad y)`, bilinear (no conjugation).
    pub fn killing(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.killing_unchecked(x, y))
    }

    pub(crate) fn killing_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Matrix `Σ x_i b_i`.
    pub fn element(&self, x: &[Scalar]) -> CMatrix {
        let mut m = CMatrix::zeros(self.size, self.size);
        for (xi, b) in x.iter().zip(&self.basis) {
            if !xi.is_zero() {
                m = m.add_mat(&b.scale(xi));
            }
        }
        m
    }

    /// Coordinates of a matrix in the span of the basis.
    pub fn coords(&self, m: &CMatrix) -> Result<Coords, AlgebraError> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(AlgebraError::ShapeMismatch(self.size));
        }
        let rhs: Vec<Scalar> = self
            .pivot_entries
            .iter()
            .map(|&p| m.entries()[p].clone())
            .collect();
        let x = if self.dim() == 0 {
            Vec::new()
        } else {
            self.pivot_inverse.mul_vec(&rhs)
        };
        if &self.element(&x) != m {
            return Err(AlgebraError::NotInAlgebra);
        }
        if self.field == BaseField::Real && !x.iter().all(Scalar::is_real) {
            return Err(AlgebraError::NotInAlgebra);
        }
        Ok(x)
    }

    /// Basis (coordinate vectors) of the center.
    pub fn center(&self) -> &[Coords] {
        &self.center
    }

    /// Bases of the simple ideals of `[g, g]`.
    pub fn simple_blocks(&self) -> &[Vec<Coords>] {
        &self.simple_blocks
    }

    pub fn is_abelian(&self) -> bool {
        self.simple_blocks.is_empty()
    }

    pub fn is_semisimple(&self) -> bool {
        self.center.is_empty() && self.dim() > 0
    }

    fn split_ideals(&mut self) -> Result<(), AlgebraError> {
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        // x is central iff Σ_i x_i c_ij^k = 0 for all j, k
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let row: Vec<Scalar> = (0..n).map(|i| self.structure_constant(i, j, k)).collect();
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
        self.center = if rows.is_empty() {
            subspace::span_basis(n, &identity_rows(n))
        } else {
            Matrix::from_rows(rows).nullspace()
        };
        self.center = subspace::span_basis(n, &self.center);
        let mut derived = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Scalar::zero(); n];
                for (k, c) in &self.brackets[i][j] {
                    v[*k] = c.clone();
                }
                if v.iter().any(|s| !s.is_zero()) {
                    derived.push(v);
                }
            }
        }
        let derived = subspace::span_basis(n, &derived);
        let mut all = self.center.clone();
        all.extend(derived.iter().cloned());
        if subspace::dimension(n, &all) != n {
            return Err(AlgebraError::NotReductive);
        }
        if !derived.is_empty() {
            self.simple_blocks = self.simple_ideals(&derived);
        }
        Ok(())
    }

    /// Splits the semisimple part `s` (given by a basis) into simple ideals via
    /// eigenspaces of its centroid, the commutant of `ad(s)` on `s`.
    fn simple_ideals(&self, s: &[Coords]) -> Vec<Vec<Coords>> {
        let r = s.len();
        let n = self.dim();
        let s_mat = CMatrix::from_columns(n, s);
        let in_s = |v: &[Scalar]| s_mat.solve(v).expect("derived algebra is an ideal");
        let ads: Vec<CMatrix> = s
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = s.iter().map(|b| in_s(&self.bracket(a, b))).collect();
                CMatrix::from_columns(r, &cols)
            })
            .collect();
        // T·ad_a − ad_a·T = 0, unknown T flattened row-major
        let mut rows = Vec::new();
        for ad in &ads {
            for p in 0..r {
                for q in 0..r {
                    let mut row = vec![Scalar::zero(); r * r];
                    for t in 0..r {
                        row[p * r + t] += &ad[(t, q)];
                        row[t * r + q] -= &ad[(p, t)];
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let centroid: Vec<CMatrix> = Matrix::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|v| Matrix::from_rows(v.chunks(r).map(<[Scalar]>::to_vec).collect()))
            .collect();
        let mut blocks: Vec<Vec<Coords>> = vec![identity_rows(r)];
        for t in &centroid {
            let mut next = Vec::new();
            for w in blocks {
                next.extend(split_by_eigenvalues(t, &w));
            }
            blocks = next;
        }
        let mut out: Vec<Vec<Coords>> = blocks
            .into_iter()
            .map(|w| {
                let vecs: Vec<Coords> = w.iter().map(|c| s_mat.mul_vec(c)).collect();
                subspace::span_basis(n, &vecs)
            })
            .collect();
        out.sort_by_key(|b| b.first().and_then(|v| v.iter().position(|x| !x.is_zero())));
        out
    }

    /// Direct sum with block-diagonal matrices.
    pub fn direct_sum(a: &Self, b: &Self) -> Result<Self, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::BadParameter(
                "direct sum of algebras over different fields".into(),
            ));
        }
        let za = CMatrix::zeros(a.size, a.size);
        let zb = CMatrix::zeros(b.size, b.size);
        let mut basis: Vec<CMatrix> = a
            .basis
            .iter()
            .map(|x| CMatrix::block_diag(x, &zb))
            .collect();
        basis.extend(b.basis.iter().map(|y| CMatrix::block_diag(&za, y)));
        FiniteLieAlgebra::from_basis(&format!("{}⊕{}", a.name, b.name), a.field, basis)
    }
}

fn identity_rows(n: usize) -> Vec<Coords> {
    (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect()
}

/// Eigenspaces of `t` restricted to the invariant subspace spanned by `w`,
/// for eigenvalues that are rational. Returns `[w]` when no split is found.
fn split_by_eigenvalues(t: &CMatrix, w: &[Coords]) -> Vec<Vec<Coords>> {
    let r = t.rows();
    let k = w.len();
    let w_mat = CMatrix::from_columns(r, w);
    let cols: Vec<Vec<Scalar>> = w
        .iter()
        .map(|v| w_mat.solve(&t.mul_vec(v)).expect("invariant subspace"))
        .collect();
    let tw = CMatrix::from_columns(k, &cols);
    let Some(poly) = minimal_polynomial(&tw) else {
        return vec![w.to_vec()];
    };
    let roots = rational_roots(&poly);
    if roots.len() < 2 {
        return vec![w.to_vec()];
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for lam in roots {
        let shifted = tw.sub_mat(&CMatrix::identity(k).scale(&Scalar::real(lam)));
        let ker = shifted.nullspace();
        total += ker.len();
        parts.push(ker.iter().map(|c| w_mat.mul_vec(c)).collect::<Vec<_>>());
    }
    if total != k {
        return vec![w.to_vec()];
    }
    parts
}

/// Monic minimal polynomial (coefficients low to high) when all coefficients
/// are real rationals.
fn minimal_polynomial(m: &CMatrix) -> Option<Vec<Rational>> {
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![CMatrix::identity(n).entries().to_vec()];
    let mut cur = CMatrix::identity(n);
    loop {
        cur = cur.mul_mat(m);
        let target = cur.entries().to_vec();
        let basis = CMatrix::from_columns(n * n, &powers);
        if let Some(c) = basis.solve(&target) {
            let mut poly: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
            poly.push(Scalar::one());
            if !poly.iter().all(Scalar::is_real) {
                return None;
            }
            return Some(poly.into_iter().map(|s| s.re).collect());
        }
        powers.push(target);
        if powers.len() > n + 1 {
            return None;
        }
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d <= n.sqrt() {
        if n % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
    }
    Some(out)
}

fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots in ascending order (rational root theorem).
fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if ints.len() > 1 {
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().expect("nonempty")))
        else {
            return roots;
        };
        let poly_q: Vec<Rational> = ints.iter().cloned().map(Rational::from_integer).collect();
        for p in &ps {
            for q in &qs {
                for cand in [
                    Rational::new(p.clone(), q.clone()),
                    -Rational::new(p.clone(), q.clone()),
                ] {
                    if !roots.contains(&cand) && eval(&poly_q, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn check_n(n: usize, min: usize, what: &str) -> Result<(), AlgebraError> {
    if n < min {
        return Err(AlgebraError::BadParameter(format!(
            "{what} requires n ≥ {min}, got {n}"
        )));
    }
    Ok(())
}

/// Traceless matrices: `E_ij` (i ≠ j, row-major) then `H_i = E_ii − E_{i+1,i+1}`.
pub fn make_sl(n: usize, field: BaseField) -> Result<FiniteLieAlgebra, AlgebraError> {
    check_n(n, 2, "sl(n)")?;
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(CMatrix::unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(CMatrix::unit(n, i, i).sub_mat(&CMatrix::unit(n, i + 1, i + 1)));
    }
    let name = match field {
        BaseField::Real => format!("sl({n},R)"),
        BaseField::Complex => format!("sl({n},C)"),
    };
    FiniteLieAlgebra::from_basis(&name, field, basis)
}

/// Anti-Hermitian traceless matrices as a real algebra: `i·H_j`, then for
/// each pair `j < k` the matrices `E_jk − E_kj` and `i(E_jk + E_kj)`.
pub fn make_su(n: usize) -> Result<FiniteLieAlgebra, AlgebraError> {
    check_n(n, 2, "su(n)")?;
    let i = Scalar::i();
    let mut basis = Vec::new();
    for j in 0..n - 1 {
        basis.push(
            CMatrix::unit(n, j, j)
                .sub_mat(&CMatrix::unit(n, j + 1, j + 1))
                .scale(&i),
        );
    }
    for j in 0..n {
        for k in j + 1..n {
            basis.push(CMatrix::unit(n, j, k).sub_mat(&CMatrix::unit(n, k, j)));
            basis.push(
                CMatrix::unit(n, j, k)
                    .add_mat(&CMatrix::unit(n, k, j))
                    .scale(&i),
            );
        }
    }
    FiniteLieAlgebra::from_basis(&format!("su({n})"), BaseField::Real, basis)
}

/// Antisymmetric matrices `E_jk − E_kj`, `j < k`.
pub fn make_so(n: usize, field: BaseField) -> Result<FiniteLieAlgebra, AlgebraError> {
    check_n(n, 3, "so(n)")?;
    let mut basis = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            basis.push(CMatrix::unit(n, j, k).sub_mat(&CMatrix::unit(n, k, j)));
        }
    }
    let name = match field {
        BaseField::Real => format!("so({n})"),
        BaseField::Complex => format!("so({n},C)"),
    };
    FiniteLieAlgebra::from_basis(&name, field, basis)
}

/// Diagonal `k×k` matrices.
pub fn make_abelian(k: usize, field: BaseField) -> FiniteLieAlgebra {
    let size = k.max(1);
    let basis = (0..k).map(|j| CMatrix::unit(size, j, j)).collect();
    let mut g = FiniteLieAlgebra::from_basis(&format!("abelian({k})"), field, basis)
        .expect("diagonal basis");
    g.size = size;
    g
}

/// Negative definite Killing form on a semisimple real algebra.
pub fn is_compact_type(g: &FiniteLieAlgebra) -> Result<bool, AlgebraError> {
    if g.field != BaseField::Real {
        return Err(AlgebraError::ComplexField);
    }
    if !g.is_semisimple() {
        return Ok(false);
    }
    let gram = g
        .gram
        .real_part_matrix()
        .expect("real algebra has a real Killing form");
    let (_, neg, _) = signature(&gram);
    Ok(neg == g.dim())
}

/// Elementary matrix operations from which automorphisms and real forms are
/// assembled.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixOp {
    Identity,
    /// Entrywise complex conjugation.
    Conj,
    Transpose,
    Negate,
    /// `X ↦ −X̄ᵀ`, the conjugation of the compact real form.
    CStar,
    /// `X ↦ −Xᵀ`.
    NegT,
    /// `X ↦ M X M⁻¹`.
    Ad(CMatrix),
}

impl MatrixOp {
    pub fn is_antilinear(&self) -> bool {
        matches!(self, MatrixOp::Conj | MatrixOp::CStar)
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        match self {
            MatrixOp::Identity => x.clone(),
            MatrixOp::Conj => x.conj(),
            MatrixOp::Transpose => x.transpose(),
            MatrixOp::Negate => x.scale(&Scalar::from_int(-1)),
            MatrixOp::CStar => x.adjoint().scale(&Scalar::from_int(-1)),
            MatrixOp::NegT => x.transpose().scale(&Scalar::from_int(-1)),
            MatrixOp::Ad(m) => m
                .mul_mat(x)
                .mul_mat(&m.inverse().expect("Ad by an invertible matrix")),
        }
    }

    /// The block swap `Ad([[0, I], [I, 0]])` on `2k×2k` matrices.
    pub fn swap(k: usize) -> Self {
        let mut m = CMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            m[(i, k + i)] = Scalar::one();
            m[(k + i, i)] = Scalar::one();
        }
        MatrixOp::Ad(m)
    }
}

/// Composition of matrix operations; the last entry is applied first.
pub fn apply_word(word: &[MatrixOp], x: &CMatrix) -> CMatrix {
    word.iter().rev().fold(x.clone(), |acc, op| op.apply(&acc))
}

pub fn word_is_antilinear(word: &[MatrixOp]) -> bool {
    word.iter().filter(|op| op.is_antilinear()).count() % 2 == 1
}

/// An automorphism `x ↦ L·x` or `x ↦ L·x̄` on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAutomorphism {
    pub linear_part: CMatrix,
    pub conjugate_linear: bool,
    pub order: u32,
}

impl FiniteAutomorphism {
    pub fn identity(dim: usize) -> Self {
        FiniteAutomorphism {
            linear_part: CMatrix::identity(dim),
            conjugate_linear: false,
            order: 1,
        }
    }

    /// Coordinates of a matrix-level map; `antilinear` says whether it is
    /// conjugate-linear over the coordinates' scalars.
    pub fn from_matrix_map(
        g: &FiniteLieAlgebra,
        f: impl Fn(&CMatrix) -> CMatrix,
        antilinear: bool,
        order: u32,
    ) -> Result<Self, AlgebraError> {
        let cols = g
            .basis
            .iter()
            .map(|b| g.coords(&f(b)))
            .collect::<Result<Vec<_>, _>>()?;
        let linear_part = CMatrix::from_columns(g.dim(), &cols);
        let conjugate_linear = antilinear && g.field == BaseField::Complex;
        Ok(FiniteAutomorphism {
            linear_part,
            conjugate_linear,
            order,
        })
    }

    pub fn from_word(
        g: &FiniteLieAlgebra,
        word: &[MatrixOp],
        order: u32,
    ) -> Result<Self, AlgebraError> {
        Self::from_matrix_map(g, |x| apply_word(word, x), word_is_antilinear(word), order)
    }

    pub fn apply(&self, x: &[Scalar]) -> Coords {
        if self.conjugate_linear {
            let xc: Vec<Scalar> = x.iter().map(Scalar::conj).collect();
            self.linear_part.mul_vec(&xc)
        } else {
            self.linear_part.mul_vec(x)
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let inner = if self.conjugate_linear {
            other.linear_part.conj()
        } else {
            other.linear_part.clone()
        };
        let mut out = FiniteAutomorphism {
            linear_part: self.linear_part.mul_mat(&inner),
            conjugate_linear: self.conjugate_linear ^ other.conjugate_linear,
            order: 0,
        };
        out.order = out.actual_order(12).unwrap_or(0);
        out
    }

    pub fn is_identity(&self) -> bool {
        !self.conjugate_linear && self.linear_part == CMatrix::identity(self.linear_part.rows())
    }

    /// Smallest `k ≤ max` with `φ^k = id`.
    pub fn actual_order(&self, max: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = self.compose_raw(&p);
        }
        None
    }

    fn compose_raw(&self, other: &Self) -> Self {
        let inner = if self.conjugate_linear {
            other.linear_part.conj()
        } else {
            other.linear_part.clone()
        };
        FiniteAutomorphism {
            linear_part: self.linear_part.mul_mat(&inner),
            conjugate_linear: self.conjugate_linear ^ other.conjugate_linear,
            order: 0,
        }
    }

    /// `−φ` (an anti-automorphism unless the algebra is abelian).
    pub fn negated(&self) -> Self {
        FiniteAutomorphism {
            linear_part: self.linear_part.scale(&Scalar::from_int(-1)),
            conjugate_linear: self.conjugate_linear,
            order: self.order,
        }
    }
}

/// Verifies bracket preservation on all basis pairs and the declared order.
pub fn check_automorphism(
    g: &FiniteLieAlgebra,
    phi: &FiniteAutomorphism,
) -> Result<FiniteAutomorphism, AlgebraError> {
    let n = g.dim();
    if phi.linear_part.rows() != n || phi.linear_part.cols() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            got: phi.linear_part.rows(),
        });
    }
    if n > 0 && phi.linear_part.det().is_zero() {
        return Err(AlgebraError::NotInvertible);
    }
    let images: Vec<Coords> = identity_rows(n).iter().map(|e| phi.apply(e)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut lhs_in = vec![Scalar::zero(); n];
            for (k, c) in g.bracket_basis(i, j) {
                lhs_in[*k] = c.clone();
            }
            if phi.apply(&lhs_in) != g.bracket(&images[i], &images[j]) {
                return Err(AlgebraError::NotAutomorphism(i, j));
            }
        }
    }
    let actual = phi.actual_order(phi.order.max(1));
    if actual != Some(phi.order) {
        return Err(AlgebraError::WrongOrder {
            declared: phi.order,
            actual: phi.actual_order(12),
        });
    }
    Ok(phi.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn add_scaled(acc: &mut [Scalar], v: &[Scalar], s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += &(x * s);
            }
        }
    }

    fn e(n: usize, i: usize) -> Coords {
        identity_rows(n).swap_remove(i)
    }

    /// Oracle: `tr(ad x ad y)` from the matrix commutators directly.
    fn killing_oracle(g: &FiniteLieAlgebra, x: &CMatrix, y: &CMatrix) -> Scalar {
        let mut tr = Scalar::zero();
        for (l, b) in g.basis().iter().enumerate() {
            let v = x.commutator(&y.commutator(b));
            tr += &g.coords(&v).unwrap()[l];
        }
        tr
    }

    #[test]
    fn dimensions() {
        assert_eq!(make_sl(2, BaseField::Complex).unwrap().dim(), 3);
        assert_eq!(make_sl(3, BaseField::Complex).unwrap().dim(), 8);
        assert_eq!(make_so(5, BaseField::Complex).unwrap().dim(), 10);
        assert_eq!(make_so(3, BaseField::Real).unwrap().dim(), 3);
        let sl2 = make_sl(2, BaseField::Complex).unwrap();
        assert_eq!(FiniteLieAlgebra::direct_sum(&sl2, &sl2).unwrap().dim(), 6);
        assert!(matches!(
            make_sl(1, BaseField::Complex),
            Err(AlgebraError::BadParameter(_))
        ));
        assert!(make_so(2, BaseField::Real).is_err());
    }

    #[test]
    fn su2_basis_and_killing() {
        let su2 = make_su(2).unwrap();
        let i = Scalar::i();
        let mi = Scalar::from_ints(0, -1);
        let x = CMatrix::from_rows(vec![
            vec![i.clone(), Scalar::zero()],
            vec![Scalar::zero(), mi],
        ]);
        assert_eq!(su2.basis()[0], x);
        assert_eq!(
            su2.killing(&e(3, 0), &e(3, 0)).unwrap(),
            Scalar::from_int(-8)
        );
        assert_eq!(killing_oracle(&su2, &x, &x), Scalar::from_int(-8));
        assert!(is_compact_type(&su2).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                let want = killing_oracle(&su2, &su2.basis()[a], &su2.basis()[b]);
                assert_eq!(su2.killing_gram()[(a, b)], want);
            }
        }
    }

    #[test]
    fn split_forms_are_not_compact() {
        let sl2r = make_sl(2, BaseField::Real).unwrap();
        assert_eq!(
            sl2r.killing(&e(3, 2), &e(3, 2)).unwrap(),
            Scalar::from_int(8)
        );
        assert!(!is_compact_type(&sl2r).unwrap());
        assert!(!is_compact_type(&make_abelian(1, BaseField::Real)).unwrap());
        assert_eq!(
            is_compact_type(&make_sl(2, BaseField::Complex).unwrap()),
            Err(AlgebraError::ComplexField)
        );
    }

    #[test]
    fn su2_complexifies_to_sl2() {
        let su2c = make_su(2).unwrap().complexified();
        let sl2 = make_sl(2, BaseField::Complex).unwrap();
        // every sl(2,C) basis matrix has complex coordinates in the su(2) basis, and back
        for b in sl2.basis() {
            let c = su2c.coords(b).unwrap();
            assert_eq!(&su2c.element(&c), b);
        }
        for b in su2c.basis() {
            assert!(sl2.coords(b).is_ok());
        }
        assert!(make_su(2).unwrap().coords(&sl2.basis()[2]).is_err());
    }

    #[test]
    fn abelian_algebra() {
        let a = make_abelian(1, BaseField::Real);
        assert!(a.bracket_basis(0, 0).is_empty());
        assert_eq!(a.killing(&e(1, 0), &e(1, 0)).unwrap(), Scalar::zero());
        assert!(a.is_abelian());
        let mixed = FiniteLieAlgebra::direct_sum(&a, &make_su(2).unwrap()).unwrap();
        assert_eq!(mixed.center().len(), 1);
        assert_eq!(mixed.simple_blocks().len(), 1);
        assert_eq!(make_abelian(0, BaseField::Real).dim(), 0);
    }

    #[test]
    fn so4_splits_into_two_simple_ideals() {
        let so4 = make_so(4, BaseField::Real).unwrap();
        assert_eq!(so4.dim(), 6);
        let blocks = so4.simple_blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
        // the ideals commute with each other
        for x in &blocks[0] {
            for y in &blocks[1] {
                assert!(so4.bracket(x, y).iter().all(Zero::is_zero));
            }
        }
        let sl3 = make_sl(3, BaseField::Complex).unwrap();
        assert_eq!(sl3.simple_blocks().len(), 1);
    }

    #[test]
    fn antisymmetry_and_jacobi_on_basis() {
        let algebras = [
            make_su(2).unwrap(),
            make_sl(3, BaseField::Complex).unwrap(),
            make_so(4, BaseField::Real).unwrap(),
        ];
        for g in &algebras {
            let n = g.dim();
            for a in 0..n {
                for b in 0..n {
                    let ab = g.bracket(&e(n, a), &e(n, b));
                    let ba = g.bracket(&e(n, b), &e(n, a));
                    assert!(ab.iter().zip(&ba).all(|(x, y)| (x + y).is_zero()));
                    for c in 0..n {
                        let mut sum = g.bracket(&ab, &e(n, c));
                        let bc = g.bracket(&e(n, b), &e(n, c));
                        let ca = g.bracket(&e(n, c), &e(n, a));
                        add_scaled(&mut sum, &g.bracket(&bc, &e(n, a)), &Scalar::one());
                        add_scaled(&mut sum, &g.bracket(&ca, &e(n, b)), &Scalar::one());
                        assert!(sum.iter().all(Zero::is_zero), "{} ({a},{b},{c})", g.name());
                    }
                }
            }
        }
    }

    #[test]
    fn semisimple_gram_is_nondegenerate() {
        for g in [
            make_su(2).unwrap(),
            make_so(5, BaseField::Complex).unwrap(),
            make_sl(3, BaseField::Complex).unwrap(),
        ] {
            assert!(!g.killing_gram().det().is_zero());
        }
    }

    #[test]
    fn automorphisms_of_su2() {
        let su2 = make_su(2).unwrap();
        let mu = FiniteAutomorphism::from_word(&su2, &[MatrixOp::Conj], 2).unwrap();
        assert_eq!(check_automorphism(&su2, &mu).unwrap().order, 2);
        let diag = CMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        let ad = FiniteAutomorphism::from_word(&su2, &[MatrixOp::Ad(diag)], 2).unwrap();
        assert!(check_automorphism(&su2, &ad).is_ok());
        assert!(check_automorphism(&su2, &FiniteAutomorphism::identity(3)).is_ok());
        let wrong = FiniteAutomorphism {
            order: 1,
            ..mu.clone()
        };
        assert_eq!(
            check_automorphism(&su2, &wrong),
            Err(AlgebraError::WrongOrder {
                declared: 1,
                actual: Some(2)
            })
        );
        let neg = FiniteAutomorphism::identity(3).negated();
        assert!(matches!(
            check_automorphism(&su2, &neg),
            Err(AlgebraError::NotAutomorphism(..))
        ));
    }

    #[test]
    fn antilinear_automorphism_on_complexification() {
        let g = make_su(2).unwrap().complexified();
        // conjugation of the compact form is coordinate conjugation in this basis
        let c = FiniteAutomorphism::from_word(&g, &[MatrixOp::CStar], 2).unwrap();
        assert!(c.conjugate_linear);
        assert_eq!(c.linear_part, CMatrix::identity(3));
        let x = vec![
            Scalar::new(rat(1, 2), rat(3, 1)),
            Scalar::i(),
            Scalar::from_int(2),
        ];
        let kx = g.killing(&c.apply(&x), &c.apply(&x)).unwrap();
        assert_eq!(kx, g.killing(&x, &x).unwrap().conj());
        let split = FiniteAutomorphism::from_word(&g, &[MatrixOp::Conj], 2).unwrap();
        assert!(check_automorphism(&g, &split).is_ok());
    }

    #[test]
    fn rational_root_finder() {
        // (x − 1)(x + 2)(2x − 1)
        let poly = vec![rat(2, 1), rat(-5, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(
            rational_roots(&poly),
            vec![rat(-2, 1), rat(1, 2), rat(1, 1)]
        );
        assert!(rational_roots(&[rat(-2, 1), rat(0, 1), rat(1, 1)]).is_empty());
    }
}
