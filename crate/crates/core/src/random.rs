//! Reproducible random elements for property checks.
//!
//! Each trial draws from its own ChaCha stream keyed by `(seed, trial)`, so a
//! batch gives the same values whether it runs serially or in parallel.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::findim::Coords;
use crate::kmext::ExtendedElement;
use crate::loops::{LoopAlgebra, LoopElement};
use crate::scalar::Scalar;

/// Generator for trial number `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// How random coefficients are constrained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reality {
    /// Arbitrary Gaussian-integer coordinates.
    Complex,
    /// `a_{−k} = ā_k`: the loop takes values in the real span of the basis.
    Real,
}

const RANGE: i64 = 3;

pub fn random_scalar(rng: &mut impl Rng, real: bool) -> Scalar {
    let re = rng.gen_range(-RANGE..=RANGE);
    let im = if real {
        0
    } else {
        rng.gen_range(-RANGE..=RANGE)
    };
    Scalar::from_ints(re, im)
}

pub fn random_coords(rng: &mut impl Rng, dim: usize, real: bool) -> Coords {
    (0..dim).map(|_| random_scalar(rng, real)).collect()
}

/// Random graded element with `|k| ≤ degree`.
pub fn random_loop(
    la: &LoopAlgebra,
    rng: &mut impl Rng,
    degree: i64,
    reality: Reality,
) -> LoopElement {
    let dim = la.dim();
    let mut terms = Vec::new();
    match reality {
        Reality::Complex => {
            for k in -degree..=degree {
                let a = la.project_grade(k, &random_coords(rng, dim, false));
                terms.push((k, a));
            }
        }
        Reality::Real => {
            terms.push((0, la.project_grade(0, &random_coords(rng, dim, true))));
            for k in 1..=degree {
                let a = la.project_grade(k, &random_coords(rng, dim, false));
                let conj: Coords = a.iter().map(Scalar::conj).collect();
                terms.push((k, a));
                terms.push((-k, conj));
            }
        }
    }
    LoopElement::from_terms(dim, la.twist_order(), terms)
}

/// Random element of `L̂` with loop part of degree at most `degree`.
pub fn random_extended(
    la: &LoopAlgebra,
    rng: &mut impl Rng,
    degree: i64,
    reality: Reality,
) -> ExtendedElement {
    let deg = rng.gen_range(0..=degree);
    let real = reality == Reality::Real;
    let loop_part = random_loop(la, rng, deg, reality);
    ExtendedElement::new(
        loop_part,
        random_scalar(rng, real),
        random_scalar(rng, real),
    )
}
