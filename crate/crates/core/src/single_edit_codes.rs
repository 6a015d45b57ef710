//! Codes correcting one deletion or one adjacent transposition.
//!
//! A codeword `x` satisfies a weighted syndrome with weights
//! (1, 2, ..., n−1, 2n−1) modulo 6n−3. The integral of `x` is expected to
//! satisfy a second syndrome with weights (3, 5, ..., 2n−3, 3n−2, 2n−1) whose
//! pairwise sums and differences are all nonzero, so a single substitution in
//! the integral (which is what a transposition in `x` becomes) is correctable.

use serde::{Deserialize, Serialize};

use crate::bitseq::BitSeq;
use crate::codebook::{check_cap, Codebook, ENUMERATION_CAP};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingleEditCodeSpec {
    pub n: usize,
    pub a: u64,
    /// When set, codewords must also have their integral in the
    /// substitution code with this residue. When unset, the integral-side
    /// residue is taken to equal `a`, and only the deletion syndrome is
    /// imposed at enumeration time.
    pub integral_residue: Option<u64>,
}

impl SingleEditCodeSpec {
    pub fn new(n: usize, a: u64) -> Result<Self> {
        let spec = SingleEditCodeSpec {
            n,
            a,
            integral_residue: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_integral_residue(n: usize, a: u64, h: u64) -> Result<Self> {
        let spec = SingleEditCodeSpec {
            n,
            a,
            integral_residue: Some(h),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn modulus(&self) -> u64 {
        modulus(self.n)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let m = self.modulus();
        if self.a >= m || self.integral_residue.is_some_and(|h| h >= m) {
            return Err(Error::InvalidParameter(format!(
                "residues must lie in 0..{m}"
            )));
        }
        Ok(())
    }

    fn substitution_residue(&self) -> u64 {
        self.integral_residue.unwrap_or(self.a)
    }

    pub fn id(&self) -> String {
        match self.integral_residue {
            Some(h) => format!("t-or-d(n={}, a={}, h={h})", self.n, self.a),
            None => format!("t-or-d(n={}, a={})", self.n, self.a),
        }
    }
}

pub fn modulus(n: usize) -> u64 {
    6 * n as u64 - 3
}

/// Weight of position `i` in the deletion syndrome.
pub fn deletion_weight(n: usize, i: usize) -> u64 {
    if i == n {
        2 * n as u64 - 1
    } else {
        i as u64
    }
}

/// Weight of position `i` in the substitution syndrome.
pub fn substitution_weight(n: usize, i: usize) -> u64 {
    if i == n {
        2 * n as u64 - 1
    } else if i + 1 == n {
        3 * (n as u64 - 1) + 1
    } else {
        2 * i as u64 + 1
    }
}

fn weighted(x: &BitSeq, w: impl Fn(usize) -> u64, m: u64) -> u64 {
    (1..=x.len()).filter(|&i| x.bit(i) == 1).map(w).sum::<u64>() % m
}

pub fn xd_syndrome(x: &BitSeq) -> u64 {
    let n = x.len();
    weighted(x, |i| deletion_weight(n, i), modulus(n))
}

pub fn xh_syndrome(x: &BitSeq) -> u64 {
    let n = x.len();
    weighted(x, |i| substitution_weight(n, i), modulus(n))
}

pub fn xd_contains(x: &BitSeq, spec: &SingleEditCodeSpec) -> Result<bool> {
    x.expect_len(spec.n)?;
    Ok(xd_syndrome(x) == spec.a)
}

pub fn xh_contains(x: &BitSeq, spec: &SingleEditCodeSpec) -> Result<bool> {
    x.expect_len(spec.n)?;
    Ok(xh_syndrome(x) == spec.a)
}

/// Membership in the enumerated code.
pub fn contains(x: &BitSeq, spec: &SingleEditCodeSpec) -> Result<bool> {
    if !xd_contains(x, spec)? {
        return Ok(false);
    }
    Ok(match spec.integral_residue {
        Some(h) => xh_syndrome(&x.integral()?) == h,
        None => true,
    })
}

pub fn enumerate_t_or_d(spec: &SingleEditCodeSpec) -> Result<Codebook> {
    enumerate_t_or_d_capped(spec, ENUMERATION_CAP)
}

pub fn enumerate_t_or_d_capped(spec: &SingleEditCodeSpec, cap: usize) -> Result<Codebook> {
    check_cap(spec.n, cap)?;
    Codebook::filter_all(spec.n, cap, |x| contains(x, spec).unwrap_or(false))
}

/// Recovers a codeword from a word with at most one deletion or at most one
/// adjacent transposition.
pub fn decode_t_or_d(z: &BitSeq, spec: &SingleEditCodeSpec) -> Result<BitSeq> {
    let n = spec.n;
    if z.len() + 1 == n {
        return decode_deletion(z, spec);
    }
    z.expect_len(n)?;
    if contains(z, spec)? {
        return Ok(z.clone());
    }
    let mut bar = z.integral()?;
    let pos = substitution_position(&bar, spec.substitution_residue())
        .ok_or_else(|| Error::NotDecodable("integral syndrome matches no single flip".into()))?;
    bar.flip(pos);
    let x = bar.derivative()?;
    if !contains(&x, spec)? {
        return Err(Error::NotDecodable(
            "corrected word fails the deletion syndrome".into(),
        ));
    }
    Ok(x)
}

/// Position whose flip brings the substitution syndrome of `bar` to `target`.
fn substitution_position(bar: &BitSeq, target: u64) -> Option<usize> {
    let n = bar.len();
    let m = modulus(n);
    let diff = (xh_syndrome(bar) + m - target) % m;
    let mut hit = None;
    for i in 1..=n {
        let w = substitution_weight(n, i) % m;
        let change = if bar.bit(i) == 1 { w } else { (m - w) % m };
        if change == diff {
            if hit.is_some() {
                return None;
            }
            hit = Some(i);
        }
    }
    hit
}

fn decode_deletion(y: &BitSeq, spec: &SingleEditCodeSpec) -> Result<BitSeq> {
    let mut found: Option<BitSeq> = None;
    for k in 1..=y.len() + 1 {
        for v in 0..2 {
            let x = y.insert_bit(v, k)?;
            if contains(&x, spec)? {
                match &found {
                    Some(prev) if *prev != x => {
                        return Err(Error::NotDecodable(
                            "more than one codeword explains the deletion".into(),
                        ))
                    }
                    _ => found = Some(x),
                }
            }
        }
    }
    found.ok_or_else(|| Error::NotDecodable("no single insertion reaches a codeword".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitseq::bits;
    use crate::errorball::{ball, ErrorBallKind};

    #[test]
    fn syndrome_examples() {
        let s = SingleEditCodeSpec::new(4, 0).unwrap();
        assert!(xd_contains(&BitSeq::zeros(4), &s).unwrap());
        assert!(xh_contains(&BitSeq::zeros(4), &s).unwrap());
        assert!(xd_contains(&bits("1111"), &SingleEditCodeSpec::new(4, 13).unwrap()).unwrap());
        assert!(xh_contains(&bits("10000"), &SingleEditCodeSpec::new(5, 3).unwrap()).unwrap());
        assert!(xd_contains(&bits("111"), &s).is_err());
    }

    #[test]
    fn residue_range_is_checked() {
        assert!(SingleEditCodeSpec::new(4, 20).unwrap().a == 20);
        assert!(SingleEditCodeSpec::new(4, 21).is_err());
        assert!(SingleEditCodeSpec::new(0, 0).is_err());
    }

    #[test]
    fn length_one_codes() {
        let c0 = enumerate_t_or_d(&SingleEditCodeSpec::new(1, 0).unwrap()).unwrap();
        let c1 = enumerate_t_or_d(&SingleEditCodeSpec::new(1, 1).unwrap()).unwrap();
        assert_eq!(c0.words(), &[bits("0")]);
        assert_eq!(c1.words(), &[bits("1")]);
    }

    #[test]
    fn cosets_partition_the_space() {
        let total: usize = (0..modulus(4))
            .map(|a| {
                enumerate_t_or_d(&SingleEditCodeSpec::new(4, a).unwrap())
                    .unwrap()
                    .len()
            })
            .sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn enumeration_cap() {
        let s = SingleEditCodeSpec::new(23, 0).unwrap();
        assert_eq!(
            enumerate_t_or_d(&s),
            Err(Error::EnumerationCap { n: 23, cap: 22 })
        );
    }

    #[test]
    fn deletions_are_corrected() {
        for n in 2..=9 {
            for a in 0..modulus(n) {
                let spec = SingleEditCodeSpec::new(n, a).unwrap();
                for x in enumerate_t_or_d(&spec).unwrap().iter() {
                    assert_eq!(&decode_t_or_d(x, &spec).unwrap(), x);
                    for k in 1..=n {
                        let y = x.delete_block(1, k).unwrap();
                        assert_eq!(&decode_t_or_d(&y, &spec).unwrap(), x, "n={n} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn integral_constrained_code_corrects_transpositions() {
        for n in 3..=8 {
            let m = modulus(n);
            for a in 0..m {
                for h in 0..m {
                    let spec = SingleEditCodeSpec::with_integral_residue(n, a, h).unwrap();
                    for x in enumerate_t_or_d(&spec).unwrap().iter() {
                        for z in ball(x, ErrorBallKind::TorD).unwrap() {
                            assert_eq!(&decode_t_or_d(&z, &spec).unwrap(), x);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plain_code_transposition_miscorrection() {
        // Both words sit in X_D(6,5) and reach 010100 by one transposition.
        let spec = SingleEditCodeSpec::new(6, 5).unwrap();
        let x = bits("100100");
        let u = bits("011000");
        assert!(contains(&x, &spec).unwrap() && contains(&u, &spec).unwrap());
        assert_eq!(x.transpose(1).unwrap(), u.transpose(3).unwrap());
    }
}
