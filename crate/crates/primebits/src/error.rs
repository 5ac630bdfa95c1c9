use thiserror::Error;

/// Errors shared by all primebits modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {pos} is out of range 1..={len}")]
    PositionOutOfRange { pos: u64, len: u64 },

    #[error("bit string lengths differ: {left} != {right}")]
    LengthMismatch { left: u64, right: u64 },

    #[error("limit {limit} is below the minimum of {min}")]
    LimitTooSmall { limit: u64, min: u64 },

    #[error("index {n} is below the minimum of {min}")]
    IndexTooSmall { n: u32, min: u32 },

    #[error("at least one appended copy is required")]
    ZeroCopies,

    #[error("{n} is not an even number >= 4")]
    InvalidEvenTarget { n: u64 },

    #[error("{n} has no decomposition into two odd numbers >= 3")]
    NoOddDecomposition { n: u64 },

    #[error("primorial({n}) overflows 64-bit arithmetic")]
    PrimorialOverflow { n: u32 },

    #[error("requested bit-string length overflows 64-bit arithmetic")]
    LengthOverflow,

    #[error("{limit} is not a primorial length; nearest are {below} and {above}")]
    NotAPrimorial { limit: u64, below: u64, above: u64 },

    #[error(
        "need {required} bit positions (~{required_mib} MiB packed) but the budget allows {budget}"
    )]
    BudgetExceeded {
        required: u64,
        budget: u64,
        required_mib: u64,
    },

    #[error(
        "index {n} exceeds the verification budget (max index {max}); \
         the occurrence string for its primorial {required} would take ~{required_mib} MiB packed"
    )]
    IndexBudgetExceeded {
        n: u32,
        max: u32,
        required: u64,
        required_mib: u64,
    },

    #[error("no distracting numbers exist for index {n}; the window conjectures are vacuous below index 4")]
    VacuousWindow { n: u32 },

    #[error("empty index range: {from} > {to}")]
    EmptyRange { from: u32, to: u32 },

    #[error("segment bits have length {actual}, expected primorial {expected}")]
    SegmentLengthMismatch { expected: u64, actual: u64 },

    #[error("invalid byte {byte:#04x} at offset {at} in bit-string text")]
    InvalidAscii { byte: u8, at: usize },

    #[error("packed bit string truncated: need {expected} bytes, got {actual}")]
    TruncatedPacked { expected: usize, actual: usize },
}

/// MiB taken by a packed string of `positions` bits, rounded up.
pub(crate) fn packed_mib(positions: u64) -> u64 {
    positions.div_ceil(8).div_ceil(1024 * 1024)
}
