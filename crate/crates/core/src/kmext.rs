//! The extension `L̂(g,σ) = L(g,σ) ⊕ Fc ⊕ Fd`.
//!
//! `c` is central, `[d, f] = f′` and `[f, g] = [f, g]₀ + ω(f, g)·c` with
//! `ω(f, g) = (1/2π)∫⟨f, g′⟩dt`, `⟨,⟩` the Killing form of `g`.

use rayon::prelude::*;

use crate::error::{KmError, LoopError};
use crate::findim::{Coords, FiniteLieAlgebra};
use crate::linalg::{subspace, CMatrix};
use crate::loops::{LoopAlgebra, LoopElement};
use crate::random::{random_extended, random_loop, random_scalar, trial_rng, Reality};
use crate::scalar::{rat, Rational, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedElement {
    pub loop_part: LoopElement,
    pub c: Scalar,
    pub d: Scalar,
}

impl ExtendedElement {
    pub fn new(loop_part: LoopElement, c: Scalar, d: Scalar) -> Self {
        ExtendedElement { loop_part, c, d }
    }

    pub fn from_loop(loop_part: LoopElement) -> Self {
        ExtendedElement {
            loop_part,
            c: Scalar::zero(),
            d: Scalar::zero(),
        }
    }

    pub fn zero(dim: usize, twist_order: u32) -> Self {
        Self::from_loop(LoopElement::zero(dim, twist_order))
    }

    pub fn c_unit(dim: usize, twist_order: u32) -> Self {
        ExtendedElement {
            c: Scalar::from_int(1),
            ..Self::zero(dim, twist_order)
        }
    }

    pub fn d_unit(dim: usize, twist_order: u32) -> Self {
        ExtendedElement {
            d: Scalar::from_int(1),
            ..Self::zero(dim, twist_order)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &Scalar::from_int(1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_scaled(o, &Scalar::from_int(-1))
    }

    pub fn add_scaled(&self, o: &Self, s: &Scalar) -> Self {
        ExtendedElement {
            loop_part: self.loop_part.add_scaled(&o.loop_part, s),
            c: &self.c + &(&o.c * s),
            d: &self.d + &(&o.d * s),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ExtendedElement {
            loop_part: self.loop_part.scale(s),
            c: &self.c * s,
            d: &self.d * s,
        }
    }
}

/// Residue form of the cocycle together with its integral-form value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCocycle {
    /// `Res_z ⟨f, dg/dz⟩`.
    pub residue: Scalar,
    /// `i · residue`, equal to the integral form since `d/dt = iz·d/dz`.
    pub integral: Scalar,
}

/// `L̂(g,σ)` over a loop algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct KmAlgebra {
    loops: LoopAlgebra,
}

impl KmAlgebra {
    pub fn new(loops: LoopAlgebra) -> Self {
        KmAlgebra { loops }
    }

    pub fn loops(&self) -> &LoopAlgebra {
        &self.loops
    }

    pub fn finite(&self) -> &FiniteLieAlgebra {
        self.loops.finite()
    }

    pub fn dim(&self) -> usize {
        self.loops.dim()
    }

    pub fn twist_order(&self) -> u32 {
        self.loops.twist_order()
    }

    pub fn zero(&self) -> ExtendedElement {
        ExtendedElement::zero(self.dim(), self.twist_order())
    }

    pub fn c(&self) -> ExtendedElement {
        ExtendedElement::c_unit(self.dim(), self.twist_order())
    }

    pub fn d(&self) -> ExtendedElement {
        ExtendedElement::d_unit(self.dim(), self.twist_order())
    }

    pub fn validate(&self, x: &ExtendedElement) -> Result<(), LoopError> {
        self.loops.validate(&x.loop_part)
    }

    fn same(&self, x: &ExtendedElement) -> Result<(), LoopError> {
        if x.loop_part.dim() != self.dim() || x.loop_part.twist_order() != self.twist_order() {
            return Err(LoopError::Mismatch);
        }
        Ok(())
    }

    /// `Σ_k B(a_k, i(−k/m)·b_{−k})`.
    pub fn cocycle(&self, f: &LoopElement, g: &LoopElement) -> Result<Scalar, LoopError> {
        self.loops.same(f, g)?;
        Ok(self.cocycle_unchecked(f, g))
    }

    fn cocycle_unchecked(&self, f: &LoopElement, g: &LoopElement) -> Scalar {
        let m = i64::from(self.twist_order());
        let mut total = Scalar::zero();
        for (k, a) in f.terms() {
            if *k == 0 {
                continue;
            }
            if let Some(b) = g.terms().get(&-k) {
                let factor = Scalar::new(Rational::zero(), rat(-k, m));
                total += &(&self.finite().killing_unchecked(a, b) * &factor);
            }
        }
        total
    }

    /// `Σ_k (−k)·B(a_k, b_{−k})` for untwisted loops.
    pub fn residue_cocycle(
        &self,
        f: &LoopElement,
        g: &LoopElement,
    ) -> Result<ResidueCocycle, LoopError> {
        if self.twist_order() != 1 {
            return Err(LoopError::TwistedResidue);
        }
        self.loops.same(f, g)?;
        let mut residue = Scalar::zero();
        for (k, a) in f.terms() {
            if let Some(b) = g.terms().get(&-k) {
                residue += &self
                    .finite()
                    .killing_unchecked(a, b)
                    .scale(&Rational::from_integer((-k).into()));
            }
        }
        let integral = residue.mul_i();
        Ok(ResidueCocycle { residue, integral })
    }

    /// `([f,g]₀ + d_X·g′ − d_Y·f′, ω(f,g), 0)`.
    pub fn hat_bracket(
        &self,
        x: &ExtendedElement,
        y: &ExtendedElement,
    ) -> Result<ExtendedElement, LoopError> {
        self.same(x)?;
        self.same(y)?;
        Ok(self.hat_bracket_unchecked(x, y))
    }

    pub(crate) fn hat_bracket_unchecked(
        &self,
        x: &ExtendedElement,
        y: &ExtendedElement,
    ) -> ExtendedElement {
        let f = &x.loop_part;
        let g = &y.loop_part;
        let mut lp = self.loops.bracket_unchecked(f, g);
        if !x.d.is_zero() {
            lp = lp.add_scaled(&self.loops.derivative(g), &x.d);
        }
        if !y.d.is_zero() {
            lp = lp.add_scaled(&self.loops.derivative(f), &-&y.d);
        }
        ExtendedElement {
            loop_part: lp,
            c: self.cocycle_unchecked(f, g),
            d: Scalar::zero(),
        }
    }

    /// `[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]`, zero in a Lie algebra.
    pub fn jacobi_residual(
        &self,
        x: &ExtendedElement,
        y: &ExtendedElement,
        z: &ExtendedElement,
    ) -> Result<ExtendedElement, LoopError> {
        let a = self.hat_bracket(&self.hat_bracket(x, y)?, z)?;
        let b = self.hat_bracket(&self.hat_bracket(y, z)?, x)?;
        let c = self.hat_bracket(&self.hat_bracket(z, x)?, y)?;
        Ok(a.add(&b).add(&c))
    }

    /// Membership in `L(g,σ) ⊕ Fc`.
    pub fn in_derived_algebra(&self, x: &ExtendedElement) -> bool {
        x.d.is_zero()
    }

    /// Basis of the `σ`-eigenspace required at exponent `k`.
    pub fn graded_basis(&self, k: i64) -> Vec<Coords> {
        let n = self.dim();
        let proj: Vec<Coords> = (0..n)
            .map(|j| self.loops.project_grade(k, &unit(n, j)))
            .collect();
        subspace::span_basis(n, &proj)
    }

    /// Complex basis of the truncation `|k| ≤ degree` together with `c` and `d`.
    pub fn truncated_basis(&self, degree: i64) -> Vec<ExtendedElement> {
        let mut out = Vec::new();
        for k in -degree..=degree {
            for v in self.graded_basis(k) {
                out.push(ExtendedElement::from_loop(LoopElement::monomial(
                    k,
                    v,
                    self.twist_order(),
                )));
            }
        }
        out.push(self.c());
        out.push(self.d());
        out
    }
}

fn unit(n: usize, j: usize) -> Coords {
    let mut v = vec![Scalar::zero(); n];
    v[j] = Scalar::from_int(1);
    v
}

/// All loops with coefficients in a fixed subspace of `g_C`, optionally with
/// the `c` and `d` lines.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSubspace {
    pub coeff_space: Vec<Coords>,
    pub with_c: bool,
    pub with_d: bool,
}

impl GradedSubspace {
    pub fn contains(&self, x: &ExtendedElement) -> bool {
        if (!self.with_c && !x.c.is_zero()) || (!self.with_d && !x.d.is_zero()) {
            return false;
        }
        let n = x.loop_part.dim();
        x.loop_part
            .terms()
            .values()
            .all(|a| subspace::contains(n, &self.coeff_space, a))
    }

    /// Spanning set of the part with `|k| ≤ degree`.
    pub fn generators(&self, km: &KmAlgebra, degree: i64) -> Vec<ExtendedElement> {
        let n = km.dim();
        let mut out = Vec::new();
        for k in -degree..=degree {
            let proj: Vec<Coords> = self
                .coeff_space
                .iter()
                .map(|v| km.loops().project_grade(k, v))
                .collect();
            for v in subspace::span_basis(n, &proj) {
                out.push(ExtendedElement::from_loop(LoopElement::monomial(
                    k,
                    v,
                    km.twist_order(),
                )));
            }
        }
        if self.with_c {
            out.push(km.c());
        }
        if self.with_d {
            out.push(km.d());
        }
        out
    }
}

/// Whether brackets of the subspace's generators (up to `degree`) with every
/// sample element stay inside the subspace.
pub fn is_ideal(
    km: &KmAlgebra,
    sub: &GradedSubspace,
    degree: i64,
    sample: &[ExtendedElement],
) -> bool {
    let gens = sub.generators(km, degree);
    gens.iter().all(|g| {
        sample.iter().all(|s| {
            km.hat_bracket(g, s)
                .map(|b| sub.contains(&b))
                .unwrap_or(false)
        })
    })
}

/// Outcome of checking the map `⊕ L̃(g_i,σ_i) → L̃(g,σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub factors: usize,
    pub domain_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    pub trials: usize,
    pub homomorphism_failures: usize,
}

/// An element of `⊕ L̃(g_i,σ_i)`: one `(loop, c)` pair per factor.
pub type SplitElement = Vec<(LoopElement, Scalar)>;

fn check_blocks(factors: &[KmAlgebra], target: &KmAlgebra) -> Result<Vec<usize>, KmError> {
    let total: usize = factors.iter().map(KmAlgebra::dim).sum();
    if factors.is_empty() || total != target.dim() {
        return Err(KmError::BlockMismatch);
    }
    if factors
        .iter()
        .any(|f| f.twist_order() != target.twist_order())
    {
        return Err(KmError::BlockMismatch);
    }
    let mut offsets = Vec::new();
    let mut off = 0;
    for f in factors {
        offsets.push(off);
        off += f.dim();
    }
    let tg = target.finite();
    for (a, fa) in factors.iter().enumerate() {
        for (b, fb) in factors.iter().enumerate() {
            for i in 0..fa.dim() {
                for j in 0..fb.dim() {
                    let got = tg.bracket_basis(offsets[a] + i, offsets[b] + j);
                    let want: Vec<(usize, Scalar)> = if a == b {
                        fa.finite()
                            .bracket_basis(i, j)
                            .iter()
                            .map(|(k, s)| (offsets[a] + k, s.clone()))
                            .collect()
                    } else {
                        Vec::new()
                    };
                    if got != want.as_slice() {
                        return Err(KmError::BlockMismatch);
                    }
                }
            }
            let sig_t = &target.loops().sigma().linear_part;
            for i in 0..fa.dim() {
                for j in 0..fb.dim() {
                    let want = if a == b {
                        fa.loops().sigma().linear_part[(i, j)].clone()
                    } else {
                        Scalar::zero()
                    };
                    if sig_t[(offsets[a] + i, offsets[b] + j)] != want {
                        return Err(KmError::BlockMismatch);
                    }
                }
            }
        }
    }
    Ok(offsets)
}

fn split_map(target: &KmAlgebra, offsets: &[usize], x: &SplitElement) -> ExtendedElement {
    let n = target.dim();
    let mut lp = LoopElement::zero(n, target.twist_order());
    let mut c = Scalar::zero();
    for ((f, r), off) in x.iter().zip(offsets) {
        for (k, a) in f.terms() {
            let mut v = vec![Scalar::zero(); n];
            for (j, s) in a.iter().enumerate() {
                v[off + j] = s.clone();
            }
            lp.add_term(*k, &v, &Scalar::from_int(1));
        }
        c += r;
    }
    ExtendedElement::new(lp, c, Scalar::zero())
}

/// `φ((f_1,r_1),…,(f_n,r_n)) = (f_1 ⊕ … ⊕ f_n, Σ r_i)`: the kernel dimension
/// on the truncation `|k| ≤ degree`, surjectivity, and the homomorphism
/// property on `trials` random pairs.
pub fn splitting_hom(
    factors: &[KmAlgebra],
    target: &KmAlgebra,
    degree: i64,
    trials: usize,
    seed: u64,
) -> Result<SplittingReport, KmError> {
    let offsets = check_blocks(factors, target)?;
    let m = target.twist_order();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let width = (2 * degree as usize + 1) * target.dim() + 1;
    let column_of = |e: &ExtendedElement| {
        let mut col = vec![Scalar::zero(); width];
        for (k, a) in e.loop_part.terms() {
            let base = (k + degree) as usize * target.dim();
            for (j, s) in a.iter().enumerate() {
                col[base + j] = s.clone();
            }
        }
        col[width - 1] = e.c.clone();
        col
    };
    for (idx, fac) in factors.iter().enumerate() {
        let empty = |i: usize| (LoopElement::zero(factors[i].dim(), m), Scalar::zero());
        for k in -degree..=degree {
            for v in fac.graded_basis(k) {
                let mut x: SplitElement = (0..factors.len()).map(empty).collect();
                x[idx].0 = LoopElement::monomial(k, v, m);
                columns.push(column_of(&split_map(target, &offsets, &x)));
            }
        }
        let mut x: SplitElement = (0..factors.len()).map(empty).collect();
        x[idx].1 = Scalar::from_int(1);
        columns.push(column_of(&split_map(target, &offsets, &x)));
    }
    let domain_dim = columns.len();
    let rank = CMatrix::from_columns(width, &columns).rank();
    let target_dim = (-degree..=degree)
        .map(|k| target.graded_basis(k).len())
        .sum::<usize>()
        + 1;

    let failures = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = trial_rng(seed, t as u64);
            let mut draw = || -> SplitElement {
                factors
                    .iter()
                    .map(|f| {
                        (
                            random_loop(f.loops(), &mut rng, degree, Reality::Complex),
                            random_scalar(&mut rng, false),
                        )
                    })
                    .collect()
            };
            let x = draw();
            let y = draw();
            let bracket: SplitElement = factors
                .iter()
                .zip(x.iter().zip(&y))
                .map(|(f, ((fx, _), (fy, _)))| {
                    let b = f.hat_bracket_unchecked(
                        &ExtendedElement::from_loop(fx.clone()),
                        &ExtendedElement::from_loop(fy.clone()),
                    );
                    (b.loop_part, b.c)
                })
                .collect();
            let lhs = split_map(target, &offsets, &bracket);
            let rhs = target.hat_bracket_unchecked(
                &split_map(target, &offsets, &x),
                &split_map(target, &offsets, &y),
            );
            lhs != rhs
        })
        .count();

    Ok(SplittingReport {
        factors: factors.len(),
        domain_dim,
        target_dim,
        rank,
        kernel_dim: domain_dim - rank,
        surjective: rank == target_dim,
        trials,
        homomorphism_failures: failures,
    })
}

/// Outcome of a batch of random Jacobi checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub trials: u64,
    /// Trial indices with a nonzero residual.
    pub failures: Vec<u64>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `trials` independent Jacobi checks on random triples of degree at most
/// `degree`; trial `t` draws from `trial_rng(seed, t)`.
pub fn jacobi_suite(km: &KmAlgebra, trials: u64, degree: i64, seed: u64) -> JacobiReport {
    let failures = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = trial_rng(seed, t);
            let x = random_extended(km.loops(), &mut rng, degree, Reality::Complex);
            let y = random_extended(km.loops(), &mut rng, degree, Reality::Complex);
            let z = random_extended(km.loops(), &mut rng, degree, Reality::Complex);
            !km.jacobi_residual(&x, &y, &z)
                .expect("same algebra")
                .is_zero()
        })
        .collect();
    JacobiReport { trials, failures }
}
