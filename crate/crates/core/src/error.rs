use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("invalid symbol {0:?}, expected '0' or '1'")]
    InvalidSymbol(char),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("block of width {width} at {start} does not fit in length {len}")]
    BlockOutOfRange {
        start: usize,
        width: usize,
        len: usize,
    },
    #[error("interleave ({row},{stride}) invalid for length {len}")]
    InvalidInterleave {
        row: usize,
        stride: usize,
        len: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("ball size exceeds the cap {cap}")]
    BallCap { cap: usize },
    #[error("empty input set")]
    EmptySet,
    #[error("not decodable: {0}")]
    NotDecodable(String),
    #[error("syndrome {syndrome} out of decodable range")]
    SyndromeOutOfRange { syndrome: u64 },
    #[error("decoding failed in {phase}: {detail}")]
    DecodePhase { phase: DecodePhase, detail: String },
    #[error("tensor code construction failed: {0}")]
    TensorBuild(String),
}

impl Error {
    pub fn is_decode_failure(&self) -> bool {
        matches!(
            self,
            Error::NotDecodable(_) | Error::SyndromeOutOfRange { .. } | Error::DecodePhase { .. }
        )
    }

    pub(crate) fn phase(phase: DecodePhase, detail: impl Into<String>) -> Self {
        Error::DecodePhase {
            phase,
            detail: detail.into(),
        }
    }
}

/// Stage of the multi-phase burst and block decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodePhase {
    Weight,
    Locate,
    Interleave,
    Tensor,
    Validate,
}

impl std::fmt::Display for DecodePhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecodePhase::Weight => "weight recovery",
            DecodePhase::Locate => "position estimate",
            DecodePhase::Interleave => "interleave decoding",
            DecodePhase::Tensor => "tensor correction",
            DecodePhase::Validate => "validation",
        })
    }
}
