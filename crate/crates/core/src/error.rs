use thiserror::Error;

/// Crate-wide error type. Variants are grouped by the subsystem that
/// raises them; payloads carry enough context to print a usable message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("frobenius_half involution needs even extension degree, got k = {0}")]
    OddDegreeFrobenius(u32),
    #[error("field order {0} exceeds the 2^16 cap")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,

    // space construction and operations
    #[error("gram matrix must be square, got {rows}x{cols}")]
    NonSquareGram { rows: usize, cols: usize },
    #[error("dimension {0} exceeds the cap of {1}")]
    DimensionCap(usize, usize),
    #[error("vector length {got} does not match dimension {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("operation requires a nondegenerate space")]
    DegenerateSpace,
    #[error("operation requires an orthosymmetric space")]
    NotOrthosymmetric,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("operands live over different fields or involutions")]
    FieldMismatch,
    #[error("exhaustive search is infeasible: {0}")]
    Infeasible(String),
    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    EnumerationCap { count: u64, cap: u64 },

    // ring operations
    #[error("element has no quasi-inverse in this ring")]
    NotRegularElement,
    #[error("ring is not regular")]
    NotRegular,
    #[error("no projection generates this ideal (ring is not *-regular here)")]
    NotStarRegular,
    #[error("subspace is not a summand (nonzero radical)")]
    NotASummand,
    #[error("kernel element has no quasi-inverse inside the kernel")]
    KernelNotRegular,
    #[error("lifting inputs are inconsistent: {0}")]
    PreimageMismatch(String),
    #[error("idempotent is neither a projection nor *-orthogonal to its adjoint")]
    BadIdempotent,
    #[error("idempotent must have rank 1, got rank {0}")]
    RankNotOne(usize),
    #[error("map is not a homomorphism: {0}")]
    NotAHom(String),

    // lattices
    #[error("relation is not a lattice order: {0}")]
    NotALattice(String),
    #[error("congruence computation capped at {cap} (have {got})")]
    CongruenceCap { got: u64, cap: u64 },
    #[error("congruence does not commute with the prime operation")]
    PrimeIncompatibleCongruence,
    #[error("lattice size {got} exceeds the cap of {cap}")]
    SizeCap { got: u64, cap: u64 },
    #[error("lattice is not a complemented modular polarity lattice: fails {0}")]
    NotPolarityCML(String),
    #[error("lattice is not atomic")]
    NotAtomic,

    // embeddings
    #[error("no compatible field embedding exists: {0}")]
    NoCompatibleEmbedding(String),
    #[error("the two summands carry different form constants")]
    EpsilonMismatch,

    // catch-all for malformed inputs
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
