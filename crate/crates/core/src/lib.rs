//! Construction, decoding and exhaustive verification of binary codes that
//! correct deletions, adjacent transpositions, bursts of deletions and
//! adjacent block transpositions.

pub mod bitseq;
pub mod block_td_codes;
pub mod burst_codes;
pub mod codebook;
pub mod error;
pub mod errorball;
pub mod single_edit_codes;
pub mod td_codes;
pub mod verify;

pub use bitseq::BitSeq;
pub use codebook::Codebook;
pub use error::{Error, Result};
pub use errorball::{ball, ball_contains, ball_of_set, pairwise_disjoint, BallSet, ErrorBallKind};
