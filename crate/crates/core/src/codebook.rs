use std::fmt;

use crate::bitseq::BitSeq;
use crate::error::{Error, Result};

/// Default cap on n for a single explicit enumeration.
pub const ENUMERATION_CAP: usize = 22;
/// Default cap on n for sweeps that enumerate many codes.
pub const SWEEP_CAP: usize = 14;

/// An explicitly enumerated code: sorted, deduplicated words of one length.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Codebook {
    n: usize,
    words: Vec<BitSeq>,
}

impl Codebook {
    pub fn new(n: usize, words: impl IntoIterator<Item = BitSeq>) -> Result<Self> {
        let mut words: Vec<BitSeq> = words.into_iter().collect();
        for w in &words {
            w.expect_len(n)?;
        }
        words.sort();
        words.dedup();
        Ok(Codebook { n, words })
    }

    /// Every word of length `n` satisfying `pred`, in lexicographic order.
    pub fn filter_all(n: usize, cap: usize, mut pred: impl FnMut(&BitSeq) -> bool) -> Result<Self> {
        check_cap(n, cap)?;
        let words = BitSeq::all(n).filter(|x| pred(x)).collect();
        Ok(Codebook { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BitSeq] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitSeq> {
        self.words.iter()
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        self.words.binary_search(x).is_ok()
    }

    /// n − log₂|C|, or `None` for an empty code.
    pub fn redundancy(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.n as f64 - (self.len() as f64).log2())
    }
}

impl<'a> IntoIterator for &'a Codebook {
    type Item = &'a BitSeq;
    type IntoIter = std::slice::Iter<'a, BitSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

impl fmt::Debug for Codebook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Codebook")
            .field("n", &self.n)
            .field("size", &self.words.len())
            .finish()
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 64 {
        Err(Error::EnumerationCap { n, cap })
    } else {
        Ok(())
    }
}
