//! Codes correcting one deletion together with adjacent transpositions.
//!
//! The deletion side is a VT code with a modulus enlarged by 2ℓ, which keeps a
//! decoder that ignores the transpositions within 2ℓ transpositions of the
//! transmitted word. The transpositions are then removed by a Hamming-metric
//! code imposed on the integral.

use serde::{Deserialize, Serialize};

use crate::bitseq::BitSeq;
use crate::codebook::{check_cap, Codebook, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::errorball::{ball, ErrorBallKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VTSpec {
    pub n: usize,
    pub a: u64,
    pub ell: usize,
    pub parity: Option<u8>,
}

impl VTSpec {
    pub fn new(n: usize, a: u64, ell: usize, parity: Option<u8>) -> Result<Self> {
        let spec = VTSpec { n, a, ell, parity };
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if a >= spec.modulus() {
            return Err(Error::InvalidParameter(format!(
                "a = {a} must be below the modulus {}",
                spec.modulus()
            )));
        }
        if parity.is_some_and(|b| b > 1) {
            return Err(Error::InvalidParameter("parity must be 0 or 1".into()));
        }
        Ok(spec)
    }

    pub fn modulus(&self) -> u64 {
        (self.n + 2 * self.ell + 1) as u64
    }
}

pub fn vt_syndrome(x: &BitSeq, modulus: u64) -> u64 {
    x.weighted_sum() % modulus
}

pub fn vt_contains(x: &BitSeq, spec: &VTSpec) -> Result<bool> {
    x.expect_len(spec.n)?;
    let parity_ok = spec.parity.is_none_or(|b| (x.weight() % 2) as u8 == b);
    Ok(parity_ok && vt_syndrome(x, spec.modulus()) == spec.a)
}

fn deficiency(y: &BitSeq, spec: &VTSpec) -> u64 {
    let m = spec.modulus();
    (spec.a + m - vt_syndrome(y, m)) % m
}

/// Leftmost position where an inserted 0 has exactly `r` ones to its right.
fn zero_slot(y: &BitSeq, r: usize) -> Option<usize> {
    let mut ones_right = y.weight();
    for k in 1..=y.len() + 1 {
        if ones_right == r {
            return Some(k);
        }
        if k <= y.len() && y.bit(k) == 1 {
            ones_right -= 1;
        }
    }
    None
}

/// Leftmost position k where an inserted 1 raises the syndrome by `gain`,
/// i.e. k plus the number of ones at or after k equals `gain`.
fn one_slot(y: &BitSeq, gain: u64) -> Option<usize> {
    let mut ones_right = y.weight() as u64;
    for k in 1..=y.len() + 1 {
        if k as u64 + ones_right == gain {
            return Some(k);
        }
        if k <= y.len() && y.bit(k) == 1 {
            ones_right -= 1;
        }
    }
    None
}

/// Classic VT deletion decoding under the (possibly enlarged) modulus.
pub fn vt_decode_deletion(y: &BitSeq, spec: &VTSpec) -> Result<BitSeq> {
    y.expect_len(spec.n - 1)?;
    let d = deficiency(y, spec);
    let w = y.weight() as u64;
    let out = if d <= w {
        zero_slot(y, d as usize).map(|k| y.insert_bit(0, k))
    } else {
        one_slot(y, d).map(|k| y.insert_bit(1, k))
    };
    match out {
        Some(x) => {
            let x = x?;
            debug_assert_eq!(vt_syndrome(&x, spec.modulus()), spec.a);
            Ok(x)
        }
        None => Err(Error::SyndromeOutOfRange { syndrome: d }),
    }
}

/// True when `r` lies in the cyclic interval `lo..=hi` of Z_m, where the
/// endpoints are given as integers that may be negative or exceed m.
fn in_cyclic_range(r: u64, lo: i64, hi: i64, m: u64) -> bool {
    if hi < lo {
        return false;
    }
    let m = m as i64;
    let offset = (r as i64 - lo).rem_euclid(m);
    offset <= hi - lo
}

/// Deletion decoding that tolerates up to ℓ adjacent transpositions. The
/// deleted value comes from the parity; the insertion point from the
/// deficiency, with the out-of-range deficiencies a transposition can cause
/// sent to the first or last position.
pub fn vt_decode_mismatched(y: &BitSeq, spec: &VTSpec) -> Result<BitSeq> {
    let parity = spec
        .parity
        .ok_or_else(|| Error::InvalidParameter("mismatched decoding needs a parity".into()))?;
    y.expect_len(spec.n - 1)?;
    let n = spec.n as i64;
    let ell = spec.ell as i64;
    let m = spec.modulus();
    let n1 = y.weight() as i64;
    let deleted = ((y.weight() as u8) + parity) % 2;
    let d = deficiency(y, spec);
    let last = y.len() + 1;
    let pos = if deleted == 0 {
        if (d as i64) <= n1 {
            zero_slot(y, d as usize)
        } else if in_cyclic_range(d, n1 + 1, n1 + ell, m) {
            Some(1)
        } else if in_cyclic_range(d, n + ell + 1, n + 2 * ell, m) {
            Some(last)
        } else {
            None
        }
    } else if (d as i64) > n1 && (d as i64) <= n {
        one_slot(y, d)
    } else if in_cyclic_range(d, n + 1, n + ell, m) {
        Some(last)
    } else if in_cyclic_range(d, n1 - ell + 1, n1, m) {
        Some(1)
    } else {
        None
    };
    match pos {
        Some(k) => y.insert_bit(deleted, k),
        None => Err(Error::SyndromeOutOfRange { syndrome: d }),
    }
}

/// Greedy lexicographic code of length `n` and minimum distance `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicode {
    n: usize,
    distance: usize,
    words: Vec<u64>,
}

impl Lexicode {
    pub fn new(n: usize, distance: usize) -> Result<Self> {
        check_cap(n, ENUMERATION_CAP)?;
        let mut words: Vec<u64> = Vec::new();
        for v in 0..1u64 << n {
            if words
                .iter()
                .all(|&c| ((c ^ v).count_ones() as usize) >= distance)
            {
                words.push(v);
            }
        }
        Ok(Lexicode { n, distance, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        x.len() == self.n && self.words.binary_search(&x.to_index()).is_ok()
    }

    /// Nearest codeword when it lies within `radius`.
    pub fn correct(&self, r: &BitSeq, radius: usize) -> Option<BitSeq> {
        if r.len() != self.n {
            return None;
        }
        let v = r.to_index();
        self.words
            .iter()
            .map(|&c| (((c ^ v).count_ones()) as usize, c))
            .filter(|&(dist, _)| dist <= radius)
            .min()
            .map(|(_, c)| BitSeq::from_index(c, self.n))
    }

    pub fn words(&self) -> impl Iterator<Item = BitSeq> + '_ {
        self.words.iter().map(|&c| BitSeq::from_index(c, self.n))
    }
}

/// VT code with parity whose integrals lie in a distance-(4ℓ+1) lexicode.
#[derive(Debug, Clone)]
pub struct EllTDSpec {
    pub vt: VTSpec,
    pub hamming_d: usize,
    integral_code: Lexicode,
}

impl EllTDSpec {
    pub fn new(n: usize, a: u64, b: u8, ell: usize) -> Result<Self> {
        let vt = VTSpec::new(n, a, ell, Some(b))?;
        let hamming_d = 4 * ell + 1;
        Ok(EllTDSpec {
            vt,
            hamming_d,
            integral_code: Lexicode::new(n, hamming_d)?,
        })
    }

    /// Reuses an already built integral-side code for another (a, b).
    pub fn with_residues(&self, a: u64, b: u8) -> Result<Self> {
        Ok(EllTDSpec {
            vt: VTSpec::new(self.vt.n, a, self.vt.ell, Some(b))?,
            hamming_d: self.hamming_d,
            integral_code: self.integral_code.clone(),
        })
    }

    /// Keeps the integral-side code but sizes the VT modulus (and the
    /// decoder's search radius) for `vt_ell` transpositions instead of ℓ.
    /// With `vt_ell < ℓ` the code no longer corrects its ball.
    pub fn weakened(&self, vt_ell: usize) -> Result<Self> {
        let modulus = (self.vt.n + 2 * vt_ell + 1) as u64;
        Ok(EllTDSpec {
            vt: VTSpec::new(self.vt.n, self.vt.a % modulus, vt_ell, self.vt.parity)?,
            hamming_d: self.hamming_d,
            integral_code: self.integral_code.clone(),
        })
    }

    pub fn integral_code(&self) -> &Lexicode {
        &self.integral_code
    }

    pub fn contains(&self, x: &BitSeq) -> Result<bool> {
        Ok(vt_contains(x, &self.vt)? && self.integral_code.contains(&x.integral()?))
    }

    pub fn id(&self) -> String {
        format!(
            "ell-td(n={}, a={}, b={}, ell={}, d={})",
            self.vt.n,
            self.vt.a,
            self.vt.parity.unwrap_or(0),
            self.vt.ell,
            self.hamming_d
        )
    }
}

pub fn enumerate_ell_td(spec: &EllTDSpec) -> Result<Codebook> {
    let n = spec.vt.n;
    check_cap(n, ENUMERATION_CAP)?;
    let words = spec
        .integral_code
        .words()
        .map(|c| c.derivative())
        .collect::<Result<Vec<_>>>()?;
    let mut members = Vec::new();
    for x in words {
        if vt_contains(&x, &spec.vt)? {
            members.push(x);
        }
    }
    Codebook::new(n, members)
}

pub fn decode_ell_td(y: &BitSeq, spec: &EllTDSpec) -> Result<BitSeq> {
    let n = spec.vt.n;
    let ell = spec.vt.ell;
    let (estimate, radius) = if y.len() + 1 == n {
        (vt_decode_mismatched(y, &spec.vt)?, 2 * ell)
    } else {
        y.expect_len(n)?;
        (y.clone(), ell)
    };
    let bar = estimate.integral()?;
    let corrected = spec
        .integral_code
        .correct(&bar, radius)
        .ok_or_else(|| Error::NotDecodable("integral is too far from the component code".into()))?;
    let x = corrected.derivative()?;
    if !vt_contains(&x, &spec.vt)? {
        return Err(Error::NotDecodable(
            "corrected word fails the VT constraint".into(),
        ));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneTDParams {
    pub n: usize,
    pub offset: usize,
    pub prime: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneTDSpec {
    pub params: OneTDParams,
    pub a1: u64,
    pub a2: u64,
}

impl OneTDSpec {
    pub fn new(n: usize, a1: u64, a2: u64) -> Result<Self> {
        let params = one_td_params(n)?;
        if a1 >= params.prime || a2 >= params.prime {
            return Err(Error::InvalidParameter(format!(
                "residues must lie in 0..{}",
                params.prime
            )));
        }
        Ok(OneTDSpec { params, a1, a2 })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    /// The VT code the derivatives are expected to lie in.
    pub fn vt(&self) -> VTSpec {
        VTSpec {
            n: self.params.n,
            a: self.a1,
            ell: self.params.offset,
            parity: Some(0),
        }
    }

    pub fn id(&self) -> String {
        format!(
            "one-td(n={}, p={}, a1={}, a2={})",
            self.params.n, self.params.prime, self.a1, self.a2
        )
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Smallest offset L ≥ 1 with p = n + 2L + 1 prime and p > 2n − 1.
pub fn one_td_params(n: usize) -> Result<OneTDParams> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} must be even and at least 4"
        )));
    }
    let offset = (1..)
        .find(|&l| {
            let p = (n + 2 * l + 1) as u64;
            p > 2 * n as u64 - 1 && is_prime(p)
        })
        .expect("primes are unbounded");
    Ok(OneTDParams {
        n,
        offset,
        prime: (n + 2 * offset + 1) as u64,
    })
}

/// The two weighted syndromes of the integral-side word.
pub fn berlekamp_syndromes(w: &BitSeq, p: u64) -> (u64, u64) {
    let mut s1 = 0;
    let mut s2 = 0;
    for i in 1..w.len() {
        if w.bit(i) == 1 {
            let h = (2 * i as u64 + 1) % p;
            s1 = (s1 + h) % p;
            s2 = (s2 + h * h) % p;
        }
    }
    (s1, s2)
}

/// Membership of the integral-side word in Y(n, a1, a2).
pub fn y_contains(w: &BitSeq, spec: &OneTDSpec) -> Result<bool> {
    w.expect_len(spec.n())?;
    Ok(w.bit(spec.n()) == 0 && berlekamp_syndromes(w, spec.params.prime) == (spec.a1, spec.a2))
}

pub fn one_td_contains(x: &BitSeq, spec: &OneTDSpec) -> Result<bool> {
    y_contains(&x.integral()?, spec)
}

pub fn enumerate_one_td(spec: &OneTDSpec) -> Result<Codebook> {
    let n = spec.n();
    check_cap(n, ENUMERATION_CAP)?;
    let mut words = Vec::new();
    for w in BitSeq::all(n) {
        if y_contains(&w, spec)? {
            words.push(w.derivative()?);
        }
    }
    Codebook::new(n, words)
}

/// Mismatched VT decoding followed by a search over at most two adjacent
/// transpositions for the unique candidate whose integral satisfies both
/// syndromes.
pub fn decode_one_td(y: &BitSeq, spec: &OneTDSpec) -> Result<BitSeq> {
    let n = spec.n();
    let (estimate, budget) = if y.len() + 1 == n {
        (vt_decode_mismatched(y, &spec.vt())?, 2)
    } else {
        y.expect_len(n)?;
        (y.clone(), 1)
    };
    let mut found: Option<BitSeq> = None;
    for c in ball(&estimate, ErrorBallKind::Tl(budget))? {
        if one_td_contains(&c, spec)? {
            if found.is_some() {
                return Err(Error::NotDecodable(
                    "several candidates satisfy both syndromes".into(),
                ));
            }
            found = Some(c);
        }
    }
    found.ok_or_else(|| Error::NotDecodable("no candidate satisfies both syndromes".into()))
}
