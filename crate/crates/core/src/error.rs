use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse exact scalar from {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CartanError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry a[{0}][{0}] is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry a[{0}][{1}] is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("a[{0}][{1}] = 0 but a[{1}][{0}] != 0")]
    AsymmetricZero(usize, usize),
    #[error("expected a 2x2 matrix, got {0}x{0}")]
    WrongSize(usize),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("basis matrices must all be {0}x{0}")]
    ShapeMismatch(usize),
    #[error("bracket of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("real algebra has non-real structure constant at ({0},{1})")]
    NonRealStructure(usize, usize),
    #[error("algebra is not reductive (center and derived algebra do not span)")]
    NotReductive,
    #[error("coordinate vector has length {got}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not in the algebra")]
    NotInAlgebra,
    #[error("map does not preserve the bracket on basis pair ({0},{1})")]
    NotAutomorphism(usize, usize),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("declared order {declared} but the map has order {actual:?}")]
    WrongOrder { declared: u32, actual: Option<u32> },
    #[error("operation requires a real algebra")]
    ComplexField,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LoopError {
    #[error("elements belong to different algebras or twists")]
    Mismatch,
    #[error("coefficient at exponent {0} is not in the matching twist eigenspace")]
    NotGraded(i64),
    #[error("twist order {0} is not supported (only 1 and 2)")]
    UnsupportedTwist(u32),
    #[error("residue form requires an untwisted algebra")]
    TwistedResidue,
    #[error("loop Killing pairing produced a non-real value {0}")]
    NonReal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("finite part is not an involution")]
    NotInvolutive,
    #[error("map does not square to the identity on the truncation")]
    SquareNotIdentity,
    #[error("involution does not preserve the real form {0}")]
    DoesNotPreserve(String),
    #[error("real form {0} is not closed under the bracket")]
    NotClosed(String),
    #[error("incompatible coefficient maps: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KmError {
    #[error("factor decomposition does not match the target algebra")]
    BlockMismatch,
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
