//! Twisted loop algebras `L(g,σ)` with finite Fourier expansions.
//!
//! An element is stored on the integer grid: the coefficient at `k` multiplies
//! `e^{ikt/m}` where `m ∈ {1, 2}` is the order of the twist. For `m = 2` the
//! coefficient must satisfy `σ a_k = (−1)^k a_k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::LoopError;
use crate::findim::{check_automorphism, BaseField, Coords, FiniteAutomorphism, FiniteLieAlgebra};
use crate::linalg::{signature, QMatrix};
use crate::scalar::{rat, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopElement {
    dim: usize,
    twist_order: u32,
    terms: BTreeMap<i64, Coords>,
}

impl LoopElement {
    pub fn zero(dim: usize, twist_order: u32) -> Self {
        LoopElement {
            dim,
            twist_order,
            terms: BTreeMap::new(),
        }
    }

    /// Builds an element from `(k, a_k)` pairs, summing repeated exponents and
    /// dropping zero coefficients. No grading check is made here.
    pub fn from_terms(
        dim: usize,
        twist_order: u32,
        terms: impl IntoIterator<Item = (i64, Coords)>,
    ) -> Self {
        let mut out = LoopElement::zero(dim, twist_order);
        for (k, a) in terms {
            assert_eq!(a.len(), dim, "coefficient length");
            out.add_term(k, &a, &Scalar::from_int(1));
        }
        out
    }

    /// `x·e^{ikt/m}`.
    pub fn monomial(k: i64, x: Coords, twist_order: u32) -> Self {
        LoopElement::from_terms(x.len(), twist_order, [(k, x)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn twist_order(&self) -> u32 {
        self.twist_order
    }

    pub fn terms(&self) -> &BTreeMap<i64, Coords> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> Coords {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![Scalar::zero(); self.dim])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|k|` among stored terms.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// `self += s · x·e^{ikt/m}`, keeping the normal form.
    pub fn add_term(&mut self, k: i64, x: &[Scalar], s: &Scalar) {
        if s.is_zero() || x.iter().all(Zero::is_zero) {
            return;
        }
        let entry = self
            .terms
            .entry(k)
            .or_insert_with(|| vec![Scalar::zero(); x.len()]);
        for (a, b) in entry.iter_mut().zip(x) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
        if entry.iter().all(Zero::is_zero) {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &Scalar::from_int(1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_scaled(o, &Scalar::from_int(-1))
    }

    /// `self + s·o`.
    pub fn add_scaled(&self, o: &Self, s: &Scalar) -> Self {
        let mut out = self.clone();
        for (k, a) in &o.terms {
            out.add_term(*k, a, s);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LoopElement::zero(self.dim, self.twist_order).add_scaled(self, s)
    }

    pub fn map_terms(&self, f: impl Fn(i64, &Coords) -> (i64, Coords)) -> Self {
        LoopElement::from_terms(
            self.dim,
            self.twist_order,
            self.terms.iter().map(|(k, a)| f(*k, a)),
        )
    }
}

/// `L(g,σ)` for a complexified finite algebra `g` and twist `σ` of order 1 or 2.
#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    g: Arc<FiniteLieAlgebra>,
    sigma: FiniteAutomorphism,
}

impl PartialEq for LoopAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.g == o.g && self.sigma == o.sigma
    }
}

impl LoopAlgebra {
    /// Untwisted loops over the complexification of `g`.
    pub fn untwisted(g: &FiniteLieAlgebra) -> Self {
        let g = g.complexified();
        let sigma = FiniteAutomorphism::identity(g.dim());
        LoopAlgebra {
            g: Arc::new(g),
            sigma,
        }
    }

    /// Loops twisted by a verified linear automorphism `σ` of order 1 or 2.
    pub fn twisted(g: &FiniteLieAlgebra, sigma: FiniteAutomorphism) -> Result<Self, LoopError> {
        let g = g.complexified();
        if sigma.order > 2 || sigma.order == 0 {
            return Err(LoopError::UnsupportedTwist(sigma.order));
        }
        if sigma.conjugate_linear {
            return Err(LoopError::Algebra(
                crate::error::AlgebraError::BadParameter("twist must be complex-linear".into()),
            ));
        }
        let sigma = check_automorphism(&g, &sigma)?;
        Ok(LoopAlgebra {
            g: Arc::new(g),
            sigma,
        })
    }

    pub fn finite(&self) -> &FiniteLieAlgebra {
        &self.g
    }

    pub fn finite_arc(&self) -> Arc<FiniteLieAlgebra> {
        Arc::clone(&self.g)
    }

    pub fn sigma(&self) -> &FiniteAutomorphism {
        &self.sigma
    }

    pub fn twist_order(&self) -> u32 {
        self.sigma.order
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn zero(&self) -> LoopElement {
        LoopElement::zero(self.dim(), self.twist_order())
    }

    /// Projection of `x` onto the `σ`-eigenspace required at exponent `k`.
    pub fn project_grade(&self, k: i64, x: &[Scalar]) -> Coords {
        if self.twist_order() == 1 {
            return x.to_vec();
        }
        let sx = self.sigma.apply(x);
        let sign = if k.rem_euclid(2) == 0 {
            Scalar::from_int(1)
        } else {
            Scalar::from_int(-1)
        };
        let half = Scalar::real(rat(1, 2));
        x.iter()
            .zip(&sx)
            .map(|(a, b)| &(a + &(b * &sign)) * &half)
            .collect()
    }

    pub fn is_graded(&self, k: i64, x: &[Scalar]) -> bool {
        self.project_grade(k, x) == x
    }

    /// Checks dimension, twist order and the grading of every coefficient.
    pub fn validate(&self, f: &LoopElement) -> Result<(), LoopError> {
        if f.dim != self.dim() || f.twist_order != self.twist_order() {
            return Err(LoopError::Mismatch);
        }
        for (k, a) in &f.terms {
            if !self.is_graded(*k, a) {
                return Err(LoopError::NotGraded(*k));
            }
        }
        Ok(())
    }

    pub(crate) fn same(&self, f: &LoopElement, g: &LoopElement) -> Result<(), LoopError> {
        for x in [f, g] {
            if x.dim != self.dim() || x.twist_order != self.twist_order() {
                return Err(LoopError::Mismatch);
            }
        }
        Ok(())
    }

    /// Pointwise bracket: `[f,g]_k = Σ_{p+q=k} [a_p, b_q]`.
    pub fn bracket(&self, f: &LoopElement, g: &LoopElement) -> Result<LoopElement, LoopError> {
        self.same(f, g)?;
        Ok(self.bracket_unchecked(f, g))
    }

    pub(crate) fn bracket_unchecked(&self, f: &LoopElement, g: &LoopElement) -> LoopElement {
        let mut acc: BTreeMap<i64, Coords> = BTreeMap::new();
        let one = Scalar::from_int(1);
        for (p, a) in &f.terms {
            for (q, b) in &g.terms {
                let slot = acc
                    .entry(p + q)
                    .or_insert_with(|| vec![Scalar::zero(); self.dim()]);
                self.g.bracket_into(slot, a, b, &one);
            }
        }
        LoopElement::from_terms(self.dim(), self.twist_order(), acc)
    }

    /// `t`-derivative: `a_k ↦ (i·k/m)·a_k`.
    pub fn derivative(&self, f: &LoopElement) -> LoopElement {
        let m = i64::from(f.twist_order);
        f.map_terms(|k, a| {
            let s = Scalar::new(Rational::zero(), rat(k, m));
            (k, a.iter().map(|x| x * &s).collect())
        })
    }

    /// Constant Fourier coefficient of `B_g(f(t), g(t))`, i.e. the loop
    /// Killing form normalized by `1/2π`.
    pub fn killing(&self, f: &LoopElement, g: &LoopElement) -> Result<Scalar, LoopError> {
        self.same(f, g)?;
        Ok(self.killing_unchecked(f, g))
    }

    pub(crate) fn killing_unchecked(&self, f: &LoopElement, g: &LoopElement) -> Scalar {
        let mut total = Scalar::zero();
        for (k, a) in &f.terms {
            if let Some(b) = g.terms.get(&-k) {
                total += &self.g.killing_unchecked(a, b);
            }
        }
        total
    }

    /// Gram matrix of the loop Killing form on `basis` with its verdict.
    /// Every pairing must be real.
    pub fn killing_gram(&self, basis: &[LoopElement]) -> Result<GramReport, LoopError> {
        let n = basis.len();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.killing(&basis[i], &basis[j])?;
                if !v.is_real() {
                    return Err(LoopError::NonReal(v.to_string()));
                }
                m[(i, j)] = v.re.clone();
                m[(j, i)] = v.re;
            }
        }
        Ok(GramReport::from_matrix(m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PosDefinite,
    NegDefinite,
    Indefinite,
    Degenerate,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PosDefinite => "PosDefinite",
            Definiteness::NegDefinite => "NegDefinite",
            Definiteness::Indefinite => "Indefinite",
            Definiteness::Degenerate => "Degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub matrix: QMatrix,
    /// `(positive, negative, zero)` from exact congruence.
    pub signature: (usize, usize, usize),
    pub verdict: Definiteness,
}

impl GramReport {
    pub fn from_matrix(matrix: QMatrix) -> Self {
        let sig = signature(&matrix);
        let n = matrix.rows();
        let verdict = if n > 0 && sig.0 == n {
            Definiteness::PosDefinite
        } else if n > 0 && sig.1 == n {
            Definiteness::NegDefinite
        } else if sig.0 > 0 && sig.1 > 0 {
            Definiteness::Indefinite
        } else {
            Definiteness::Degenerate
        };
        GramReport {
            matrix,
            signature: sig,
            verdict,
        }
    }

    pub fn leading_minors(&self) -> Vec<Rational> {
        self.matrix.leading_minors()
    }
}

/// Basis of the real loop algebra `{f : f(t) ∈ g_R}` over a real algebra `g`,
/// truncated at `|k| ≤ n`. Elements live in `L(g_C)`; reality means
/// `a_{−k} = ā_k` in coordinates.
pub fn real_loop_basis(
    g: &FiniteLieAlgebra,
    n: i64,
) -> Result<(LoopAlgebra, Vec<LoopElement>), LoopError> {
    if g.field() != BaseField::Real {
        return Err(LoopError::Algebra(crate::error::AlgebraError::ComplexField));
    }
    let la = LoopAlgebra::untwisted(g);
    let d = g.dim();
    let mut out = Vec::new();
    for j in 0..d {
        let mut e = vec![Scalar::zero(); d];
        e[j] = Scalar::from_int(1);
        out.push(LoopElement::monomial(0, e.clone(), 1));
        for k in 1..=n {
            // 2 cos(kt)·e_j and 2 sin(kt)·e_j
            out.push(LoopElement::from_terms(
                d,
                1,
                [(k, e.clone()), (-k, e.clone())],
            ));
            let ie: Coords = e.iter().map(Scalar::mul_i).collect();
            let mie: Coords = ie.iter().map(|x| -x).collect();
            out.push(LoopElement::from_terms(d, 1, [(k, mie), (-k, ie)]));
        }
    }
    Ok((la, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{make_abelian, make_sl, make_su, MatrixOp};

    fn unit(n: usize, i: usize) -> Coords {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::from_int(1);
        v
    }

    #[test]
    fn monomial_brackets() {
        let la = LoopAlgebra::untwisted(&make_su(2).unwrap());
        let x = unit(3, 1);
        let y = unit(3, 2);
        let f = LoopElement::monomial(1, x.clone(), 1);
        let g = LoopElement::monomial(-1, y.clone(), 1);
        let want = LoopElement::monomial(0, la.finite().bracket(&x, &y), 1);
        assert_eq!(la.bracket(&f, &g).unwrap(), want);
        let c = la
            .bracket(
                &LoopElement::monomial(0, x.clone(), 1),
                &LoopElement::monomial(0, y.clone(), 1),
            )
            .unwrap();
        assert_eq!(c, want);
    }

    #[test]
    fn derivative_frequencies() {
        let la = LoopAlgebra::untwisted(&make_su(2).unwrap());
        let x = unit(3, 0);
        assert!(la
            .derivative(&LoopElement::monomial(0, x.clone(), 1))
            .is_zero());
        let d = la.derivative(&LoopElement::monomial(1, x.clone(), 1));
        assert_eq!(
            d,
            LoopElement::monomial(1, x.iter().map(Scalar::mul_i).collect(), 1)
        );
        let su2 = make_su(2).unwrap();
        let mu = FiniteAutomorphism::from_word(&su2.complexified(), &[MatrixOp::NegT], 2).unwrap();
        let tw = LoopAlgebra::twisted(&su2, mu).unwrap();
        // e_0 = diag(i,−i) is odd under −Xᵀ
        let f = LoopElement::monomial(1, x.clone(), 2);
        tw.validate(&f).unwrap();
        let half_i = Scalar::new(Rational::zero(), rat(1, 2));
        assert_eq!(
            tw.derivative(&f),
            LoopElement::monomial(1, x.iter().map(|s| s * &half_i).collect(), 2)
        );
        assert_eq!(
            tw.validate(&LoopElement::monomial(2, x, 2)),
            Err(LoopError::NotGraded(2))
        );
    }

    #[test]
    fn loop_killing_values() {
        let la = LoopAlgebra::untwisted(&make_su(2).unwrap());
        let x = unit(3, 0);
        let f = LoopElement::monomial(1, x.clone(), 1);
        let g = LoopElement::monomial(-1, x.clone(), 1);
        assert_eq!(la.killing(&f, &g).unwrap(), Scalar::from_int(-8));
        assert_eq!(la.killing(&f, &f).unwrap(), Scalar::zero());
        let ab = LoopAlgebra::untwisted(&make_abelian(1, BaseField::Real));
        let h = LoopElement::from_terms(1, 1, [(1, unit(1, 0)), (-1, unit(1, 0))]);
        assert_eq!(ab.killing(&h, &h).unwrap(), Scalar::zero());
    }

    #[test]
    fn gram_verdicts() {
        let (la, basis) = real_loop_basis(&make_su(2).unwrap(), 2).unwrap();
        assert_eq!(basis.len(), 15);
        assert_eq!(
            la.killing_gram(&basis).unwrap().verdict,
            Definiteness::NegDefinite
        );
        let (la, basis) = real_loop_basis(&make_sl(2, BaseField::Real).unwrap(), 1).unwrap();
        assert_eq!(
            la.killing_gram(&basis).unwrap().verdict,
            Definiteness::Indefinite
        );
        let (la, basis) = real_loop_basis(&make_abelian(1, BaseField::Real), 2).unwrap();
        let rep = la.killing_gram(&basis).unwrap();
        assert_eq!(rep.verdict, Definiteness::Degenerate);
        assert!(rep.matrix.is_zero());
    }

    #[test]
    fn non_real_pairing_is_rejected() {
        let la = LoopAlgebra::untwisted(&make_su(2).unwrap());
        let f = LoopElement::monomial(0, vec![Scalar::i(), Scalar::zero(), Scalar::zero()], 1);
        let g = LoopElement::monomial(0, unit(3, 0), 1);
        assert!(matches!(
            la.killing_gram(&[f, g]),
            Err(LoopError::NonReal(_))
        ));
    }

    #[test]
    fn mismatch_is_reported() {
        let la = LoopAlgebra::untwisted(&make_su(2).unwrap());
        let f = LoopElement::monomial(0, unit(3, 0), 1);
        let g = LoopElement::monomial(0, unit(3, 0), 2);
        assert_eq!(la.bracket(&f, &g), Err(LoopError::Mismatch));
    }
}
