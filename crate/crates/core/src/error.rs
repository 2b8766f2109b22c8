use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error names printed by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("eigenvalue iteration did not converge")]
    EigenFailure,
    #[error("matrix is not Hermitian positive semidefinite")]
    NotPsd,
    #[error("an eigenvalue lies on the branch cut (-inf, 0]")]
    SpectrumOnCut,
    #[error("matrix is not numerically diagonalizable (eigenvector condition {0:.3e})")]
    NotDiagonalizable(f64),
    #[error("exponent p must be a finite real >= 1, got {0}")]
    BadExponent(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("entry is not finite")]
    NonFinite,
    #[error("real matrix has a nonzero imaginary part")]
    ImaginaryInReal,
    #[error("matrix is singular")]
    Singular,
    #[error("tolerance values must be finite and nonnegative")]
    BadTolerance,

    #[error("the pair is not a frame")]
    NotAFrame,
    #[error("the pair is not a Bessel pair")]
    NotBessel,
    #[error("the pair is not Parseval")]
    NotParseval,
    #[error("the pairs are not orthogonal")]
    NotOrthogonal,
    #[error("parameters fail the positivity/invertibility condition")]
    ParamNotAdmissible,
    #[error("coefficients do not satisfy AC* + BD* = I")]
    BadCoefficients,
    #[error("counts differ: {0} vs {1}")]
    CountMismatch(usize, usize),
    #[error("ranges of the analysis operators differ")]
    RangesDiffer,
    #[error("frame idempotent is not an orthogonal projection")]
    IdempotentNotProjection,

    #[error("second family is not an orthonormal operator basis")]
    NotOnb,
    #[error("pair is not a weighted orthonormal family")]
    NotWeightedOnb,
    #[error("weight exceeds 2")]
    WeightTooLarge,
    #[error("lambda must exceed the largest eigenvalue of S")]
    LambdaTooSmall,
    #[error("codomain dimension is not one")]
    CodomainNotOneDim,

    #[error("radius must be nonnegative")]
    NegativeRadius,
    #[error("need k, l >= 1 and kl >= 3")]
    BadKL,
    #[error("not a group law: {0}")]
    NotAGroup(&'static str),
    #[error("matrices do not form a unitary representation")]
    NotRepresentation,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("family is not group invariant")]
    NotInvariant,

    #[error("hypothesis fails")]
    HypothesisFails,
    #[error("span enumeration limited to 20 vectors, got {0}")]
    TooManyVectors(usize),
    #[error("pair is not a self pair (x != tau)")]
    NotSelfPair,
    #[error("input is not real")]
    NotReal,
    #[error("parameters violate max condition < 1")]
    BadParams,

    #[error("vectors are linearly dependent")]
    RankDeficient,
    #[error("base is not p-orthonormal")]
    BaseNotOrthonormal,
    #[error("pair is not a p-frame")]
    NotPFrame,
    #[error("direction vector is zero")]
    ZeroDirection,
}

impl Error {
    /// Variant name without payload, e.g. `"NotAFrame"`.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            NonSquare { .. } => "NonSquare",
            EigenFailure => "EigenFailure",
            NotPsd => "NotPsd",
            SpectrumOnCut => "SpectrumOnCut",
            NotDiagonalizable(_) => "NotDiagonalizable",
            BadExponent(_) => "BadExponent",
            ShapeMismatch(_) => "ShapeMismatch",
            NonFinite => "NonFinite",
            ImaginaryInReal => "ImaginaryInReal",
            Singular => "Singular",
            BadTolerance => "BadTolerance",
            NotAFrame => "NotAFrame",
            NotBessel => "NotBessel",
            NotParseval => "NotParseval",
            NotOrthogonal => "NotOrthogonal",
            ParamNotAdmissible => "ParamNotAdmissible",
            BadCoefficients => "BadCoefficients",
            CountMismatch(..) => "CountMismatch",
            RangesDiffer => "RangesDiffer",
            IdempotentNotProjection => "IdempotentNotProjection",
            NotOnb => "NotOnb",
            NotWeightedOnb => "NotWeightedOnb",
            WeightTooLarge => "WeightTooLarge",
            LambdaTooSmall => "LambdaTooSmall",
            CodomainNotOneDim => "CodomainNotOneDim",
            NegativeRadius => "NegativeRadius",
            BadKL => "BadKL",
            NotAGroup(_) => "NotAGroup",
            NotRepresentation => "NotRepresentation",
            DimMismatch { .. } => "DimMismatch",
            NotInvariant => "NotInvariant",
            HypothesisFails => "HypothesisFails",
            TooManyVectors(_) => "TooManyVectors",
            NotSelfPair => "NotSelfPair",
            NotReal => "NotReal",
            BadParams => "BadParams",
            RankDeficient => "RankDeficient",
            BaseNotOrthonormal => "BaseNotOrthonormal",
            NotPFrame => "NotPFrame",
            ZeroDirection => "ZeroDirection",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
