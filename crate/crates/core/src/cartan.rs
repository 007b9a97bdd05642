//! Generalized Cartan matrices: validation, finite/affine classification,
//! decomposition into indecomposable blocks and realization dimensions.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CartanError;
use crate::linalg::QMatrix;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedCartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl GeneralizedCartanMatrix {
    /// Checks `a_ii = 2`, `a_ij ≤ 0` off the diagonal and the symmetric zero pattern.
    pub fn validate(entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(CartanError::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(CartanError::DiagonalNotTwo(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(CartanError::PositiveOffDiagonal(i, j));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    let (a, b) = if entries[i][j] != 0 { (j, i) } else { (i, j) };
                    return Err(CartanError::AsymmetricZero(a, b));
                }
            }
        }
        Ok(GeneralizedCartanMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn rational(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_rows(
            idx.iter()
                .map(|&i| {
                    idx.iter()
                        .map(|&j| Rational::from_integer(self.entries[i][j].into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// `P A Pᵀ` for the permutation `perm` (new index `k` is old index `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let entries = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        GeneralizedCartanMatrix { entries }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanKind {
    Finite,
    Affine,
    Neither,
    /// Decomposable matrix mixing finite and affine blocks. Only defined for
    /// composite matrices; the label is synthetic.
    Mixed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockClass {
    pub indices: Vec<usize>,
    pub kind: CartanKind,
    pub witness: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CartanClass {
    pub kind: CartanKind,
    /// Positive vector `v` with `Av > 0` (finite) or `Av = 0` (affine), indexed
    /// like the input matrix.
    pub witness: Option<Vec<Rational>>,
    pub components: Vec<Vec<usize>>,
    pub blocks: Vec<BlockClass>,
    /// True when the matrix is decomposable and `kind` is combined from blocks.
    pub synthetic: bool,
}

/// Connected components of the graph `{i, j : a_ij ≠ 0}`, ordered by smallest index.
pub fn decompose(a: &GeneralizedCartanMatrix) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && i != j && a.entries[i][j] != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn all_principal_minors_positive(m: &QMatrix) -> bool {
    let n = m.rows();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        m.minor(&idx, &idx).is_positive()
    })
}

/// Scale a rational vector to coprime integers, first nonzero entry positive.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| x.signum());
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

fn classify_block(a: &GeneralizedCartanMatrix, idx: &[usize]) -> BlockClass {
    let m = a.rational(idx);
    let n = idx.len();
    let ones = vec![Rational::one(); n];
    let positive = |v: &[Rational]| v.iter().all(Signed::is_positive);

    if all_principal_minors_positive(&m) {
        if let Some(v) = m.solve(&ones) {
            let v = primitive(&v);
            if positive(&v) && positive(&m.mul_vec(&v)) {
                return BlockClass {
                    indices: idx.to_vec(),
                    kind: CartanKind::Finite,
                    witness: Some(v),
                };
            }
        }
    }
    if m.rank() + 1 == n {
        let v = primitive(&m.nullspace()[0]);
        if positive(&v) && m.mul_vec(&v).iter().all(Zero::is_zero) {
            return BlockClass {
                indices: idx.to_vec(),
                kind: CartanKind::Affine,
                witness: Some(v),
            };
        }
    }
    BlockClass {
        indices: idx.to_vec(),
        kind: CartanKind::Neither,
        witness: None,
    }
}

/// Finite / affine / neither, decided per indecomposable block and combined.
pub fn classify(a: &GeneralizedCartanMatrix) -> CartanClass {
    let components = decompose(a);
    let blocks: Vec<BlockClass> = components.iter().map(|c| classify_block(a, c)).collect();
    let all = |k: CartanKind| blocks.iter().all(|b| b.kind == k);
    let kind = if all(CartanKind::Finite) {
        CartanKind::Finite
    } else if all(CartanKind::Affine) {
        CartanKind::Affine
    } else if blocks.iter().any(|b| b.kind == CartanKind::Neither) {
        CartanKind::Neither
    } else {
        CartanKind::Mixed
    };
    let witness = matches!(kind, CartanKind::Finite | CartanKind::Affine).then(|| {
        let mut v = vec![Rational::zero(); a.size()];
        for b in &blocks {
            for (pos, &i) in b.indices.iter().enumerate() {
                v[i] = b.witness.as_ref().expect("classified block has a witness")[pos].clone();
            }
        }
        v
    });
    CartanClass {
        kind,
        witness,
        synthetic: components.len() > 1,
        components,
        blocks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDims {
    pub n: usize,
    pub rank: usize,
    pub dim_h: usize,
}

/// `(n, l, 2n − l)` with `l` the exact rank of `A`.
pub fn realization_dims(a: &GeneralizedCartanMatrix) -> RealizationDims {
    let n = a.size();
    let idx: Vec<usize> = (0..n).collect();
    let rank = a.rational(&idx).rank();
    RealizationDims {
        n,
        rank,
        dim_h: 2 * n - rank,
    }
}

/// A named Cartan matrix, up to simultaneous permutation of rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
    /// Dimension of the associated finite-dimensional algebra, if finite.
    pub dim: Option<usize>,
}

/// The rank-two finite and affine families.
pub fn builtin_families() -> Vec<FamilyEntry> {
    let e = |name: &str, m: [[i64; 2]; 2], dim: Option<usize>| FamilyEntry {
        name: name.to_string(),
        matrix: m.iter().map(|r| r.to_vec()).collect(),
        dim,
    };
    vec![
        e("a₁×a₁", [[2, 0], [0, 2]], Some(6)),
        e("a₂", [[2, -1], [-1, 2]], Some(8)),
        e("b₂", [[2, -1], [-2, 2]], Some(10)),
        e("g₂", [[2, -1], [-3, 2]], Some(14)),
        e("ã₁", [[2, -2], [-2, 2]], None),
        e("ã₁′", [[2, -1], [-4, 2]], None),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Look `a` up in `catalog` up to simultaneous permutation.
pub fn identify(a: &GeneralizedCartanMatrix, catalog: &[FamilyEntry]) -> Option<FamilyEntry> {
    let perms = permutations(a.size());
    catalog
        .iter()
        .filter(|f| f.matrix.len() == a.size())
        .find(|f| perms.iter().any(|p| a.permuted(p).entries == f.matrix))
        .cloned()
}

/// Family name among the rank-two tables, or `None` for anything else.
pub fn identify_2x2(a: &GeneralizedCartanMatrix) -> Result<Option<FamilyEntry>, CartanError> {
    if a.size() != 2 {
        return Err(CartanError::WrongSize(a.size()));
    }
    Ok(identify(a, &builtin_families()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(GeneralizedCartanMatrix::validate(vec![vec![2]]).is_ok());
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![2, -1], vec![0, 2]]),
            Err(CartanError::AsymmetricZero(1, 0))
        );
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![2, 1], vec![1, 2]]),
            Err(CartanError::PositiveOffDiagonal(0, 1))
        );
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![1]]),
            Err(CartanError::DiagonalNotTwo(0))
        );
        assert_eq!(
            GeneralizedCartanMatrix::validate(vec![vec![2, 0]]),
            Err(CartanError::NotSquare)
        );
    }

    #[test]
    fn rank_two_examples() {
        assert_eq!(
            classify(&gcm(&[&[2, -1], &[-2, 2]])).kind,
            CartanKind::Finite
        );
        let a1 = classify(&gcm(&[&[2, -2], &[-2, 2]]));
        assert_eq!(a1.kind, CartanKind::Affine);
        assert_eq!(a1.witness, Some(vec![rat(1, 1), rat(1, 1)]));
        assert_eq!(
            classify(&gcm(&[&[2, -1], &[-4, 2]])).kind,
            CartanKind::Affine
        );
        assert_eq!(
            classify(&gcm(&[&[2, -3], &[-3, 2]])).kind,
            CartanKind::Neither
        );
    }

    #[test]
    fn decomposition() {
        assert_eq!(decompose(&gcm(&[&[2, 0], &[0, 2]])), vec![vec![0], vec![1]]);
        assert_eq!(decompose(&gcm(&[&[2, -1], &[-3, 2]])), vec![vec![0, 1]]);
        assert_eq!(decompose(&gcm(&[&[2]])), vec![vec![0]]);
        let c = classify(&gcm(&[&[2, 0, 0], &[0, 2, -2], &[0, -2, 2]]));
        assert_eq!(c.kind, CartanKind::Mixed);
        assert!(c.synthetic);
    }

    #[test]
    fn identification() {
        let b2 = identify_2x2(&gcm(&[&[2, -1], &[-2, 2]])).unwrap().unwrap();
        assert_eq!((b2.name.as_str(), b2.dim), ("b₂", Some(10)));
        // transposed b₂ is the same family after swapping the two indices
        assert_eq!(
            identify_2x2(&gcm(&[&[2, -2], &[-1, 2]]))
                .unwrap()
                .unwrap()
                .name,
            "b₂"
        );
        assert_eq!(
            identify_2x2(&gcm(&[&[2, -2], &[-2, 2]]))
                .unwrap()
                .unwrap()
                .name,
            "ã₁"
        );
        assert_eq!(identify_2x2(&gcm(&[&[2, -5], &[-1, 2]])).unwrap(), None);
        assert_eq!(identify_2x2(&gcm(&[&[2]])), Err(CartanError::WrongSize(1)));
    }

    #[test]
    fn realization() {
        assert_eq!(
            realization_dims(&gcm(&[&[2, -2], &[-2, 2]])),
            RealizationDims {
                n: 2,
                rank: 1,
                dim_h: 3
            }
        );
        assert_eq!(
            realization_dims(&gcm(&[&[2, 0], &[0, 2]])),
            RealizationDims {
                n: 2,
                rank: 2,
                dim_h: 2
            }
        );
    }
}
