//! Involutions of `L̂(g,σ)` in standard form, real forms cut out by
//! coefficient conditions, Cartan decompositions and their duals.
//!
//! Every map here acts on coefficients as
//! `a_k ↦ i^{p·k} · L · ā_{±k}` (conjugation optional), with
//! `c ↦ s_c·c̄ + γ·d̄` and `d ↦ s_d·d̄`. These compose in closed form, which is
//! what lets dual real forms be compared syntactically.

use std::fmt;

use num_traits::Zero;

use crate::error::{InvolutionError, LoopError};
use crate::findim::{
    apply_word, word_is_antilinear, Coords, FiniteAutomorphism, FiniteLieAlgebra, MatrixOp,
};
use crate::kmext::{ExtendedElement, KmAlgebra};
use crate::linalg::{subspace, CMatrix, QMatrix};
use crate::loops::{GramReport, LoopElement};
use crate::scalar::{Rational, Scalar};

fn sign_scalar(s: i8) -> Scalar {
    Scalar::from_int(i64::from(s))
}

fn conj_if(b: bool, x: &Scalar) -> Scalar {
    if b {
        x.conj()
    } else {
        x.clone()
    }
}

/// A real-linear map of `L̂(g_C,σ)` acting degree by degree.
#[derive(Clone, Debug)]
pub struct CoefficientMap {
    pub label: String,
    pub linear: CMatrix,
    pub conjugate: bool,
    /// Coefficient index reflection `k ↦ −k`.
    pub reflect: bool,
    /// Exponent `p` of the factor `i^{p·k}` (mod 4).
    pub parity: u8,
    pub c_sign: i8,
    pub d_sign: i8,
    pub gamma: Scalar,
}

impl PartialEq for CoefficientMap {
    /// Equality of the normal form; labels are ignored.
    fn eq(&self, o: &Self) -> bool {
        self.linear == o.linear
            && self.conjugate == o.conjugate
            && self.reflect == o.reflect
            && self.parity == o.parity
            && self.c_sign == o.c_sign
            && self.d_sign == o.d_sign
            && self.gamma == o.gamma
    }
}

impl fmt::Display for CoefficientMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl CoefficientMap {
    /// Signs on `c` and `d` default to `−1` exactly when the map reverses time
    /// at the level of functions, which is what a homomorphism requires.
    pub fn new(label: &str, linear: CMatrix, conjugate: bool, reflect: bool, parity: u8) -> Self {
        let s = if conjugate ^ reflect { -1 } else { 1 };
        CoefficientMap {
            label: label.to_string(),
            linear,
            conjugate,
            reflect,
            parity: parity % 4,
            c_sign: s,
            d_sign: s,
            gamma: Scalar::zero(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new("id", CMatrix::identity(dim), false, false, 0)
    }

    pub fn from_automorphism(
        label: &str,
        phi: &FiniteAutomorphism,
        reflect: bool,
        parity: u8,
    ) -> Self {
        Self::new(
            label,
            phi.linear_part.clone(),
            phi.conjugate_linear,
            reflect,
            parity,
        )
    }

    /// From a word of matrix operations applied to each coefficient.
    pub fn from_word(
        label: &str,
        g: &FiniteLieAlgebra,
        word: &[MatrixOp],
        reflect: bool,
        parity: u8,
    ) -> Result<Self, InvolutionError> {
        let phi = FiniteAutomorphism::from_matrix_map(
            g,
            |x| apply_word(word, x),
            word_is_antilinear(word),
            0,
        )?;
        Ok(Self::from_automorphism(label, &phi, reflect, parity))
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn with_c_sign(mut self, s: i8) -> Self {
        self.c_sign = s;
        self
    }

    /// Whether `f(t) ↦ …f(−t)…` at the level of functions.
    pub fn time_reversal(&self) -> bool {
        self.conjugate ^ self.reflect
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn apply(&self, x: &ExtendedElement) -> ExtendedElement {
        let lp = &x.loop_part;
        let mut out = LoopElement::zero(lp.dim(), lp.twist_order());
        for (s, a) in lp.terms() {
            let k = if self.reflect { -s } else { *s };
            let a: Coords = if self.conjugate {
                a.iter().map(Scalar::conj).collect()
            } else {
                a.clone()
            };
            let factor = Scalar::i_pow(i64::from(self.parity) * k);
            out.add_term(k, &self.linear.mul_vec(&a), &factor);
        }
        let c = &(&sign_scalar(self.c_sign) * &conj_if(self.conjugate, &x.c))
            + &(&self.gamma * &conj_if(self.conjugate, &x.d));
        let d = &sign_scalar(self.d_sign) * &conj_if(self.conjugate, &x.d);
        ExtendedElement::new(out, c, d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let inner = if self.conjugate {
            other.linear.conj()
        } else {
            other.linear.clone()
        };
        let flip = (if self.conjugate { -1 } else { 1 }) * (if self.reflect { -1 } else { 1 });
        let parity = (i64::from(self.parity) + flip * i64::from(other.parity)).rem_euclid(4) as u8;
        let gamma = &(&sign_scalar(self.c_sign) * &conj_if(self.conjugate, &other.gamma))
            + &(&self.gamma * &sign_scalar(other.d_sign));
        CoefficientMap {
            label: format!("{}∘{}", self.label, other.label),
            linear: self.linear.mul_mat(&inner),
            conjugate: self.conjugate ^ other.conjugate,
            reflect: self.reflect ^ other.reflect,
            parity,
            c_sign: self.c_sign * other.c_sign,
            d_sign: self.d_sign * other.d_sign,
            gamma,
        }
    }

    /// `−self`.
    pub fn negated(&self) -> Self {
        CoefficientMap {
            label: format!("−{}", self.label),
            linear: self.linear.scale(&Scalar::from_int(-1)),
            c_sign: -self.c_sign,
            d_sign: -self.d_sign,
            gamma: -&self.gamma,
            ..self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// Block-diagonal combination on `g₁ ⊕ g₂`; flags and signs must agree.
    pub fn direct_sum(a: &Self, b: &Self) -> Result<Self, InvolutionError> {
        if a.conjugate != b.conjugate
            || a.reflect != b.reflect
            || a.parity != b.parity
            || a.c_sign != b.c_sign
            || a.d_sign != b.d_sign
            || a.gamma != b.gamma
        {
            return Err(InvolutionError::Incompatible(format!(
                "{} and {}",
                a.label, b.label
            )));
        }
        Ok(CoefficientMap {
            label: format!("{}⊕{}", a.label, b.label),
            linear: CMatrix::block_diag(&a.linear, &b.linear),
            ..a.clone()
        })
    }
}

/// Standard-form involution data: `f ↦ ρ₊(f(λ(t)))` with `λ(t) = ±t`,
/// `c ↦ ε·c` and `d ↦ λ′·d + γ·c`.
#[derive(Clone, Debug)]
pub struct InvolutionDescriptor {
    pub label: String,
    pub finite_part: FiniteAutomorphism,
    /// `t ↦ −t` at the level of functions.
    pub reflect_time: bool,
    pub epsilon: i8,
    pub conjugate_linear: bool,
    pub gamma: Scalar,
    pub invariant_pair: Option<(FiniteAutomorphism, FiniteAutomorphism)>,
}

impl InvolutionDescriptor {
    /// Time-reflecting involution with `ε = −1` when `reflect_time`, else `ε = +1`.
    pub fn standard(label: &str, finite_part: FiniteAutomorphism, reflect_time: bool) -> Self {
        let conjugate_linear = finite_part.conjugate_linear;
        InvolutionDescriptor {
            label: label.to_string(),
            finite_part,
            reflect_time,
            epsilon: if reflect_time { -1 } else { 1 },
            conjugate_linear,
            gamma: Scalar::zero(),
            invariant_pair: None,
        }
    }

    pub fn with_epsilon(mut self, epsilon: i8) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Coefficient-level form. A conjugate-linear finite part already reverses
    /// the Fourier index, so the coefficient reflection is `reflect_time` XOR
    /// `conjugate_linear`.
    pub fn to_map(&self) -> CoefficientMap {
        let reflect = self.reflect_time ^ self.conjugate_linear;
        let mut m = CoefficientMap::new(
            &self.label,
            self.finite_part.linear_part.clone(),
            self.conjugate_linear,
            reflect,
            0,
        );
        m.c_sign = self.epsilon;
        m.d_sign = if self.reflect_time { -1 } else { 1 };
        m.gamma = self.gamma.clone();
        m
    }

    /// Checks involutivity of the finite part, compatibility with the twist
    /// and the sign rule `ε = λ′` (which may only be broken when `g` is abelian,
    /// since then the cocycle vanishes).
    pub fn validate(&self, km: &KmAlgebra) -> Result<(), InvolutionError> {
        let f = &self.finite_part;
        if f.linear_part.rows() != km.dim() {
            return Err(InvolutionError::Loop(LoopError::Mismatch));
        }
        if f.conjugate_linear != self.conjugate_linear {
            return Err(InvolutionError::Incompatible(
                "conjugate_linear flag disagrees with the finite part".into(),
            ));
        }
        if !f.compose(f).is_identity() {
            return Err(InvolutionError::NotInvolutive);
        }
        let sigma = km.loops().sigma();
        if f.compose(sigma).linear_part != sigma.compose(f).linear_part {
            return Err(InvolutionError::Incompatible(
                "finite part does not commute with the twist".into(),
            ));
        }
        let lambda = if self.reflect_time { -1 } else { 1 };
        if self.epsilon != lambda && !km.finite().is_abelian() {
            return Err(InvolutionError::Incompatible(format!(
                "ε = {} but the time direction gives {}",
                self.epsilon, lambda
            )));
        }
        Ok(())
    }
}

/// `f(t) ↦ ρ₊(f(−t))` on `L(g,σ)` with `σ = ρ₋ρ₊`, `ε = −1`. Returns the
/// descriptor and the twist `σ`, whose order is 1 when `ρ₊ = ρ₋`.
pub fn involution_from_invariants(
    rho_plus: &FiniteAutomorphism,
    rho_minus: &FiniteAutomorphism,
) -> Result<(InvolutionDescriptor, FiniteAutomorphism), InvolutionError> {
    for r in [rho_plus, rho_minus] {
        if r.conjugate_linear || !r.compose(r).is_identity() {
            return Err(InvolutionError::NotInvolutive);
        }
    }
    let mut sigma = rho_minus.compose(rho_plus);
    sigma.order = if sigma.is_identity() {
        1
    } else {
        sigma.actual_order(2).unwrap_or(0)
    };
    let mut desc = InvolutionDescriptor::standard("ρ₊(f(−t))", rho_plus.clone(), true);
    desc.invariant_pair = Some((rho_plus.clone(), rho_minus.clone()));
    Ok((desc, sigma))
}

pub fn apply_involution(
    km: &KmAlgebra,
    phi: &InvolutionDescriptor,
    x: &ExtendedElement,
) -> Result<ExtendedElement, InvolutionError> {
    if x.loop_part.dim() != km.dim() || x.loop_part.twist_order() != km.twist_order() {
        return Err(InvolutionError::Loop(LoopError::Mismatch));
    }
    Ok(phi.to_map().apply(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    FirstKind,
    SecondKind,
}

pub fn check_kind(phi: &InvolutionDescriptor) -> Kind {
    if phi.epsilon == -1 {
        Kind::SecondKind
    } else {
        Kind::FirstKind
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    LocallyAdmissibleOnly,
}

/// Admissible iff all factors extend with the same `ε`.
pub fn admissibility_check(per_factor: &[InvolutionDescriptor]) -> Admissibility {
    match per_factor.first() {
        Some(first) if per_factor.iter().any(|p| p.epsilon != first.epsilon) => {
            Admissibility::LocallyAdmissibleOnly
        }
        _ => Admissibility::Admissible,
    }
}

/// Which real multiples of `c` (and `d`) a real form contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdReality {
    /// `Rc ⊕ Rd`
    Real,
    /// `iRc ⊕ iRd`
    Imaginary,
    /// `Cc ⊕ Cd`, no conditions at all.
    Complex,
    /// Conflicting conditions force `c = d = 0`.
    Zero,
}

/// A real form: the common fixed set of conjugate-linear coefficient maps.
#[derive(Clone, Debug)]
pub struct RealFormDescriptor {
    pub name: String,
    pub conditions: Vec<CoefficientMap>,
}

impl RealFormDescriptor {
    pub fn new(name: &str, conditions: Vec<CoefficientMap>) -> Result<Self, InvolutionError> {
        if let Some(m) = conditions.iter().find(|m| !m.conjugate) {
            return Err(InvolutionError::Incompatible(format!(
                "real-form condition {} is complex-linear",
                m.label
            )));
        }
        Ok(RealFormDescriptor {
            name: name.to_string(),
            conditions,
        })
    }

    pub fn cd_reality(&self) -> CdReality {
        if self.conditions.is_empty() {
            return CdReality::Complex;
        }
        if self.conditions.iter().all(|m| m.c_sign == 1) {
            CdReality::Real
        } else if self.conditions.iter().all(|m| m.c_sign == -1) {
            CdReality::Imaginary
        } else {
            CdReality::Zero
        }
    }

    pub fn contains(&self, x: &ExtendedElement) -> bool {
        self.conditions.iter().all(|m| &m.apply(x) == x)
    }

    /// Same conditions (as normal forms, in order).
    pub fn same_conditions(&self, o: &Self) -> bool {
        self.conditions == o.conditions
    }
}

pub fn real_form_membership(rf: &RealFormDescriptor, x: &ExtendedElement) -> bool {
    rf.contains(x)
}

/// Real-coordinate bookkeeping for the truncation `|k| ≤ degree`.
///
/// Block 0 holds `(c, d)`; block `b ≥ 1` holds the exponents `±(b − 1)`.
/// Every coefficient map preserves the blocks, so all subspace computations
/// split into small independent systems.
#[derive(Clone, Debug)]
pub struct Truncation {
    km: KmAlgebra,
    degree: i64,
}

impl Truncation {
    pub fn new(km: &KmAlgebra, degree: i64) -> Self {
        Truncation {
            km: km.clone(),
            degree,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn km(&self) -> &KmAlgebra {
        &self.km
    }

    pub fn num_blocks(&self) -> usize {
        self.degree as usize + 2
    }

    /// Exponents held by block `b`.
    pub fn indices(&self, b: usize) -> Vec<i64> {
        match b {
            0 => Vec::new(),
            1 => vec![0],
            _ => {
                let k = b as i64 - 1;
                vec![k, -k]
            }
        }
    }

    /// Number of complex entries in block `b`.
    fn complex_len(&self, b: usize) -> usize {
        if b == 0 {
            2
        } else {
            self.indices(b).len() * self.km.dim()
        }
    }

    pub fn real_len(&self, b: usize) -> usize {
        2 * self.complex_len(b)
    }

    /// Complex entries of `x` in block `b`.
    pub fn flatten(&self, b: usize, x: &ExtendedElement) -> Vec<Scalar> {
        if b == 0 {
            return vec![x.c.clone(), x.d.clone()];
        }
        self.indices(b)
            .into_iter()
            .flat_map(|k| x.loop_part.coefficient(k))
            .collect()
    }

    pub fn element(&self, b: usize, v: &[Rational]) -> ExtendedElement {
        let entries: Vec<Scalar> = v
            .chunks(2)
            .map(|p| Scalar::new(p[0].clone(), p[1].clone()))
            .collect();
        let m = self.km.twist_order();
        let n = self.km.dim();
        if b == 0 {
            return ExtendedElement::new(
                LoopElement::zero(n, m),
                entries[0].clone(),
                entries[1].clone(),
            );
        }
        let terms = self
            .indices(b)
            .into_iter()
            .zip(entries.chunks(n))
            .map(|(k, a)| (k, a.to_vec()));
        ExtendedElement::from_loop(LoopElement::from_terms(n, m, terms))
    }

    /// Real matrix of a real-linear map `x ↦ f(x)` read back on block `b`.
    pub fn real_matrix(&self, b: usize, f: &dyn Fn(&ExtendedElement) -> Vec<Scalar>) -> QMatrix {
        let len = self.real_len(b);
        let cols: Vec<Vec<Rational>> = (0..len)
            .map(|j| {
                let mut v = vec![Rational::zero(); len];
                v[j] = Rational::from_integer(1.into());
                f(&self.element(b, &v))
                    .into_iter()
                    .flat_map(|s| [s.re, s.im])
                    .collect()
            })
            .collect();
        let rows = cols.first().map_or(0, Vec::len);
        QMatrix::from_columns(rows, &cols)
    }

    /// Rows expressing the grading condition on block `b`.
    fn grading(&self, b: usize) -> QMatrix {
        let loops = self.km.loops().clone();
        let idx = self.indices(b);
        self.real_matrix(b, &|x| {
            idx.iter()
                .flat_map(|&k| {
                    let a = x.loop_part.coefficient(k);
                    let p = loops.project_grade(k, &a);
                    p.iter().zip(&a).map(|(u, v)| u - v).collect::<Vec<_>>()
                })
                .collect()
        })
    }

    /// Rows of `x ↦ φ(x) − s·x` on block `b`.
    pub fn eigen_rows(&self, b: usize, phi: &CoefficientMap, s: i8) -> QMatrix {
        let sign = sign_scalar(s);
        self.real_matrix(b, &|x| {
            let y = phi.apply(x);
            self.flatten(b, &y)
                .iter()
                .zip(self.flatten(b, x))
                .map(|(u, v)| u - &(&v * &sign))
                .collect()
        })
    }

    /// The real subspace cut out by `φ_j(x) = s_j·x` for every `(φ_j, s_j)`,
    /// the grading, and the extra complex-valued linear `constraints`.
    pub fn solve(
        &self,
        eigen: &[(&CoefficientMap, i8)],
        constraints: &[&dyn Fn(usize, &ExtendedElement) -> Vec<Scalar>],
    ) -> TruncSubspace {
        let blocks = (0..self.num_blocks())
            .map(|b| {
                let mut m = QMatrix::zeros(0, self.real_len(b));
                if b > 0 {
                    m = m.vstack(&self.grading(b));
                }
                for (phi, s) in eigen {
                    m = m.vstack(&self.eigen_rows(b, phi, *s));
                }
                for c in constraints {
                    let rows = self.real_matrix(b, &|x| c(b, x));
                    if rows.rows() > 0 {
                        m = m.vstack(&rows);
                    }
                }
                if m.rows() == 0 {
                    return (0..self.real_len(b))
                        .map(|j| {
                            let mut v = vec![Rational::zero(); self.real_len(b)];
                            v[j] = Rational::from_integer(1.into());
                            v
                        })
                        .collect();
                }
                subspace::span_basis(self.real_len(b), &m.nullspace())
            })
            .collect();
        TruncSubspace { blocks }
    }

    /// Complex dimension of the graded truncation plus `c` and `d`.
    pub fn complex_dim(&self) -> usize {
        (-self.degree..=self.degree)
            .map(|k| self.km.graded_basis(k).len())
            .sum::<usize>()
            + 2
    }
}

/// A real subspace of a truncation, stored block by block.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSubspace {
    pub blocks: Vec<Vec<Vec<Rational>>>,
}

impl TruncSubspace {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn elements(&self, t: &Truncation) -> Vec<ExtendedElement> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, vs)| vs.iter().map(move |v| t.element(b, v)))
            .collect()
    }

    /// Elements without the `(c, d)` block.
    pub fn loop_elements(&self, t: &Truncation) -> Vec<LoopElement> {
        self.blocks
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(b, vs)| vs.iter().map(move |v| t.element(b, v).loop_part))
            .collect()
    }

    pub fn cd_dim(&self) -> usize {
        self.blocks[0].len()
    }

    /// Block-by-block equality of spans.
    pub fn same_as(&self, o: &Self, t: &Truncation) -> bool {
        self.blocks.len() == o.blocks.len()
            && (0..self.blocks.len())
                .all(|b| subspace::same_span(t.real_len(b), &self.blocks[b], &o.blocks[b]))
    }

    /// Blocks on which the spans differ.
    pub fn differing_blocks(&self, o: &Self, t: &Truncation) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| !subspace::same_span(t.real_len(b), &self.blocks[b], &o.blocks[b]))
            .collect()
    }

    /// `i·V`.
    pub fn times_i(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|vs| {
                vs.iter()
                    .map(|v| {
                        v.chunks(2)
                            .flat_map(|p| [-p[1].clone(), p[0].clone()])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TruncSubspace { blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}

/// `K ⊕ P` on a truncated real form.
#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    pub real_form: RealFormDescriptor,
    pub involution: CoefficientMap,
    pub truncation: Truncation,
    pub real: TruncSubspace,
    pub k: TruncSubspace,
    pub p: TruncSubspace,
}

impl CartanDecomposition {
    pub fn degree(&self) -> i64 {
        self.truncation.degree()
    }

    pub fn km(&self) -> &KmAlgebra {
        self.truncation.km()
    }

    /// Membership in `K`, exact and without truncation.
    pub fn in_k(&self, x: &ExtendedElement) -> bool {
        self.real_form.contains(x) && &self.involution.apply(x) == x
    }

    pub fn in_p(&self, x: &ExtendedElement) -> bool {
        self.real_form.contains(x) && self.involution.apply(x) == x.scale(&Scalar::from_int(-1))
    }

    /// `[K,K] ⊆ K`, `[K,P] ⊆ P`, `[P,P] ⊆ K` on all pairs of truncated basis
    /// elements.
    pub fn cartan_relations(&self) -> bool {
        let t = &self.truncation;
        let ks = self.k.elements(t);
        let ps = self.p.elements(t);
        let km = self.km();
        let br =
            |a: &ExtendedElement, b: &ExtendedElement| km.hat_bracket(a, b).expect("same algebra");
        ks.iter().all(|a| ks.iter().all(|b| self.in_k(&br(a, b))))
            && ks.iter().all(|a| ps.iter().all(|b| self.in_p(&br(a, b))))
            && ps.iter().all(|a| ps.iter().all(|b| self.in_k(&br(a, b))))
    }

    pub fn k_loop_gram(&self) -> Result<GramReport, LoopError> {
        self.km()
            .loops()
            .killing_gram(&self.k.loop_elements(&self.truncation))
    }

    pub fn p_loop_gram(&self) -> Result<GramReport, LoopError> {
        self.km()
            .loops()
            .killing_gram(&self.p.loop_elements(&self.truncation))
    }

    pub fn real_loop_gram(&self) -> Result<GramReport, LoopError> {
        self.km()
            .loops()
            .killing_gram(&self.real.loop_elements(&self.truncation))
    }
}

/// Truncated real form `R_N` of a descriptor.
pub fn real_form_subspace(t: &Truncation, rf: &RealFormDescriptor) -> TruncSubspace {
    let eq: Vec<(&CoefficientMap, i8)> = rf.conditions.iter().map(|m| (m, 1)).collect();
    t.solve(&eq, &[])
}

/// Verifies that `rf` is closed under the bracket on truncated basis pairs.
pub fn check_closure(
    t: &Truncation,
    rf: &RealFormDescriptor,
    basis: &[ExtendedElement],
) -> Result<(), InvolutionError> {
    let km = t.km();
    for a in basis {
        for b in basis {
            if !rf.contains(&km.hat_bracket(a, b)?) {
                return Err(InvolutionError::NotClosed(rf.name.clone()));
            }
        }
    }
    Ok(())
}

/// `±1` eigenspaces of `θ` on the degree-`N` truncation of the real form.
pub fn fixed_and_eigenspaces(
    km: &KmAlgebra,
    theta: &CoefficientMap,
    rf: &RealFormDescriptor,
    n: i64,
) -> Result<CartanDecomposition, InvolutionError> {
    if theta.dim() != km.dim() || rf.conditions.iter().any(|m| m.dim() != km.dim()) {
        return Err(InvolutionError::Loop(LoopError::Mismatch));
    }
    let t = Truncation::new(km, n);
    let real = real_form_subspace(&t, rf);
    for x in real.elements(&t) {
        let y = theta.apply(&x);
        if !rf.contains(&y) {
            return Err(InvolutionError::DoesNotPreserve(rf.name.clone()));
        }
        if theta.apply(&y) != x {
            return Err(InvolutionError::SquareNotIdentity);
        }
    }
    let mut eq: Vec<(&CoefficientMap, i8)> = rf.conditions.iter().map(|m| (m, 1)).collect();
    eq.push((theta, 1));
    let k = t.solve(&eq, &[]);
    eq.pop();
    eq.push((theta, -1));
    let p = t.solve(&eq, &[]);
    debug_assert_eq!(k.dim() + p.dim(), real.dim());
    Ok(CartanDecomposition {
        real_form: rf.clone(),
        involution: theta.clone(),
        truncation: t,
        real,
        k,
        p,
    })
}

/// The dual real form `K ⊕ iP`: the fixed set of `τ_j ∘ θ`.
pub fn dualize(dec: &CartanDecomposition) -> RealFormDescriptor {
    let conditions = dec
        .real_form
        .conditions
        .iter()
        .map(|tau| {
            let lbl = format!("{}∘{}", tau.label, dec.involution.label);
            tau.compose(&dec.involution).with_label(&lbl)
        })
        .collect();
    RealFormDescriptor {
        name: format!("({})*", dec.real_form.name),
        conditions,
    }
}

/// Decomposition of the dual form under the same involution, with the checks
/// `K* = K` and `P* = iP`.
pub fn dual_decomposition(
    dec: &CartanDecomposition,
) -> Result<(CartanDecomposition, bool), InvolutionError> {
    let rf = dualize(dec);
    let dual = fixed_and_eigenspaces(dec.km(), &dec.involution, &rf, dec.degree())?;
    let t = &dec.truncation;
    let ok = dual.k.same_as(&dec.k, t) && dual.p.same_as(&dec.p.times_i(), t);
    Ok((dual, ok))
}
