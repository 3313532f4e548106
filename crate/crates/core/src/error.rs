use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial upper index must be nonnegative, got {0}")]
    NegativeUpperIndex(i64),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("partition ({mu_a},{mu_b}) is not contained in ({lambda_a},{lambda_b})")]
    NotContained {
        lambda_a: i64,
        lambda_b: i64,
        mu_a: i64,
        mu_b: i64,
    },

    #[error("ambient dimension mismatch: N={left} vs N={right}")]
    AmbientMismatch { left: u32, right: u32 },

    #[error("invalid Grassmannian instance N={n_ambient}, k={k}: need N >= 1 and 2k <= N")]
    InvalidInstance { n_ambient: u32, k: u32 },

    #[error("index {index} outside the admissible range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("Racah parameters n={n}, s={s}, T={t} make a denominator Pochhammer vanish")]
    RacahDomain { n: u32, s: u32, t: u32 },

    #[error("T must be at least 3, got {0}")]
    SmallT(u32),

    #[error("sequence has {got} values but {needed} are required")]
    SequenceTooShort { got: usize, needed: usize },

    #[error("sequence is not concave increasing")]
    NotConcave,

    #[error("sequence must be nonempty")]
    EmptySequence,

    #[error("hypothesis 1 + 2n + 2n^2 < T^2/10 fails for n={n}, T={t}")]
    DeviationHypothesis { n: u32, t: u32 },

    #[error("primitive dimension mismatch at N={n_ambient}, p={p}: betti difference {from_betti}, star of kernel {from_kernel}")]
    PrimitiveMismatch {
        n_ambient: u32,
        p: u32,
        from_betti: usize,
        from_kernel: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
