//! Codes correcting one burst of consecutive deletions.
//!
//! Decoding runs in three phases. The weight of the deleted block comes from
//! the parities of the stride-t interleaves. A global VT constraint together
//! with the balance constraint then narrows the start of the burst down to a
//! short range. Finally each stride-t interleave, which lost exactly one bit,
//! is repaired with a shifted VT code searched around that estimate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitseq::BitSeq;
use crate::codebook::{check_cap, Codebook, ENUMERATION_CAP};
use crate::error::{DecodePhase, Error, Result};
use crate::errorball::is_burst_of;

/// ⌈log₂ n⌉, with log₂ 1 = 0.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Parities of the interleaves x^{(1,stride)}, ..., x^{(stride,stride)}.
pub fn interleave_parities(x: &BitSeq, stride: usize) -> Vec<u8> {
    let mut out = vec![0u8; stride];
    for i in 1..=x.len() {
        out[(i - 1) % stride] ^= x.bit(i);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParitySpec {
    pub n: usize,
    pub b: usize,
    pub d: Vec<u8>,
}

impl ParitySpec {
    pub fn new(n: usize, b: usize, d: Vec<u8>) -> Result<Self> {
        if b == 0 || b > n || d.len() != b || d.iter().any(|&v| v > 1) {
            return Err(Error::InvalidParameter(format!(
                "parity spec needs 1 ≤ b ≤ n and b parity bits, got b = {b}, n = {n}, {} bits",
                d.len()
            )));
        }
        Ok(ParitySpec { n, b, d })
    }
}

pub fn cpar_contains(x: &BitSeq, spec: &ParitySpec) -> Result<bool> {
    x.expect_len(spec.n)?;
    Ok(interleave_parities(x, spec.b) == spec.d)
}

/// Weight of a deleted block of length `t`. A burst of exactly `t` bits
/// removes one bit from each stride-t interleave, so the interleave
/// parities must be taken with stride `t`, which means `t` must equal the
/// stride `b` of the parity code (or be zero).
pub fn cpar_deleted_weight(y: &BitSeq, spec: &ParitySpec, t: usize) -> Result<usize> {
    y.expect_len(spec.n.checked_sub(t).ok_or_else(|| {
        Error::InvalidParameter(format!("burst length {t} exceeds n = {}", spec.n))
    })?)?;
    if t == 0 {
        return if interleave_parities(y, spec.b) == spec.d {
            Ok(0)
        } else {
            Err(Error::phase(
                DecodePhase::Weight,
                "parities inconsistent with no deletion",
            ))
        };
    }
    if t != spec.b {
        return Err(Error::InvalidParameter(format!(
            "burst length {t} must equal the interleave stride {}",
            spec.b
        )));
    }
    Ok(deleted_bits(y, &spec.d).iter().map(|&v| v as usize).sum())
}

/// The bit each stride-t interleave lost, indexed by interleave.
fn deleted_bits(y: &BitSeq, d: &[u8]) -> Vec<u8> {
    interleave_parities(y, d.len())
        .iter()
        .zip(d)
        .map(|(p, q)| p ^ q)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalSpec {
    pub n: usize,
    pub b: usize,
    pub window: usize,
}

impl BalSpec {
    /// Window threshold b⁴·⌈log₂ n⌉.
    pub fn full_window(n: usize, b: usize) -> usize {
        b.pow(4) * ceil_log2(n) as usize
    }
}

/// Every window of length B ≥ W has weight strictly between
/// B/2 − B/(3b) and B/2 + B/(3b).
pub fn bal_contains(x: &BitSeq, spec: &BalSpec) -> bool {
    balanced(x, spec.b, spec.window)
}

pub(crate) fn balanced(x: &BitSeq, b: usize, window: usize) -> bool {
    let n = x.len();
    if window > n {
        return true;
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0i64);
    for i in 1..=n {
        prefix.push(prefix[i - 1] + x.bit(i) as i64);
    }
    let b = b as i64;
    for len in window.max(1)..=n {
        let big = len as i64;
        let lo = 3 * b * big - 2 * big;
        let hi = 3 * b * big + 2 * big;
        for j in 0..=n - len {
            let w = 6 * b * (prefix[j + len] - prefix[j]);
            if w <= lo || w >= hi {
                return false;
            }
        }
    }
    true
}

/// Hoeffding-based lower bound on log₂|Bal(n,b)|.
pub fn bal_lower_bound(n: usize, b: usize) -> Result<f64> {
    if n < 10 || b < 5 {
        return Err(Error::InvalidParameter(format!(
            "the balance bound needs n ≥ 10 and b ≥ 5, got n = {n}, b = {b}"
        )));
    }
    let n = n as f64;
    let b = b as f64;
    let exponent = 2.0 - (2.0 / 9.0) * b * b * std::f64::consts::LOG2_E;
    Ok(n + (1.0 - 2.0 * n.powf(exponent)).log2())
}

/// f(M, b) = e^{−2M/(9b²)}, the single-window tail bound.
pub fn hoeffding_tail(m: f64, b: f64) -> f64 {
    (-2.0 * m / (9.0 * b * b)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SVTSpec {
    pub n: usize,
    pub c: u64,
    pub d: u8,
    pub modulus: u64,
}

pub fn svt_contains(x: &BitSeq, spec: &SVTSpec) -> bool {
    x.len() == spec.n
        && x.weighted_sum() % spec.modulus == spec.c % spec.modulus
        && (x.weight() % 2) as u8 == spec.d
}

/// Largest window P with M ≥ 2P − 1.
pub fn svt_window(modulus: u64) -> usize {
    modulus.div_ceil(2) as usize
}

/// Restores one deleted bit given an estimate `k_hat` within `p` of the
/// true position.
pub fn svt_decode_deletion(y: &BitSeq, k_hat: usize, p: usize, spec: &SVTSpec) -> Result<BitSeq> {
    if spec.modulus + 1 < 2 * p as u64 {
        return Err(Error::InvalidParameter(format!(
            "modulus {} too small for window {p}",
            spec.modulus
        )));
    }
    svt_window_search(y, k_hat, p, spec)
}

/// The unique reinsertion of the parity-determined bit at a position k'
/// with |k' − k_hat| < p whose result lies in the code.
pub(crate) fn svt_window_search(
    y: &BitSeq,
    k_hat: usize,
    p: usize,
    spec: &SVTSpec,
) -> Result<BitSeq> {
    if y.len() + 1 != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n - 1,
            found: y.len(),
        });
    }
    let bit = ((y.weight() as u8) ^ spec.d) & 1;
    let lo = (k_hat + 1).saturating_sub(p).max(1);
    let hi = (k_hat + p - 1).min(spec.n);
    let mut found: Option<BitSeq> = None;
    for k in lo..=hi {
        let z = y.insert_bit(bit, k)?;
        if svt_contains(&z, spec) {
            match &found {
                Some(prev) if *prev != z => {
                    return Err(Error::NotDecodable(
                        "two reinsertions satisfy the shifted VT constraint".into(),
                    ))
                }
                _ => found = Some(z),
            }
        }
    }
    found.ok_or_else(|| {
        Error::NotDecodable(
            "no reinsertion in the window satisfies the shifted VT constraint".into(),
        )
    })
}

/// Lower-triangular array indexed by (i1, i2) with 1 ≤ i1 ≤ i2 ≤ b.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangular<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Copy + Default> Triangular<T> {
    pub fn filled(b: usize, value: T) -> Self {
        Triangular {
            rows: (1..=b).map(|i| vec![value; i]).collect(),
        }
    }

    pub fn zeros(b: usize) -> Self {
        Self::filled(b, T::default())
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != i + 1 {
                return Err(Error::InvalidParameter(format!(
                    "row {} of a triangular array must have {} entries, found {}",
                    i + 1,
                    i + 1,
                    r.len()
                )));
            }
        }
        Ok(Triangular { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i1: usize, i2: usize) -> T {
        self.rows[i2 - 1][i1 - 1]
    }

    pub fn set(&mut self, i1: usize, i2: usize, value: T) {
        self.rows[i2 - 1][i1 - 1] = value;
    }

    pub fn row(&self, i2: usize) -> &[T] {
        &self.rows[i2 - 1]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }
}

impl<T: fmt::Display> fmt::Display for Triangular<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Triangular<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// Parses one triangular array per blank-line separated section; row i2
/// holds i2 space-separated values.
pub fn parse_triangular_levels<T>(text: &str) -> Result<Vec<Triangular<T>>>
where
    T: Copy + Default + std::str::FromStr,
{
    let mut levels = Vec::new();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !rows.is_empty() {
                levels.push(Triangular::from_rows(std::mem::take(&mut rows))?);
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::InvalidParameter(format!("bad array entry {v:?}")))
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(row);
    }
    Ok(levels)
}

/// Lengths, moduli and floors used by the constructions. The defaults
/// follow the asymptotic formulas; scaled mode substitutes small values so
/// that every constraint is active at short lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scale {
    pub scaled: bool,
    pub window: Option<usize>,
    pub svt_modulus: Option<u64>,
}

impl Scale {
    pub const FULL: Scale = Scale {
        scaled: false,
        window: None,
        svt_modulus: None,
    };

    pub const SCALED: Scale = Scale {
        scaled: true,
        window: None,
        svt_modulus: None,
    };

    pub fn with_window(mut self, w: usize) -> Self {
        self.window = Some(w);
        self
    }

    pub fn with_svt_modulus(mut self, m: u64) -> Self {
        self.svt_modulus = Some(m);
        self
    }

    /// Balance window for a code of length n and burst bound b.
    pub fn window_for(&self, n: usize, b: usize) -> usize {
        match (self.window, self.scaled) {
            (Some(w), _) => w,
            (None, true) => b * b,
            (None, false) => BalSpec::full_window(n, b),
        }
    }

    /// Shifted VT modulus for a burst code: 2b⁵⌈log₂ n⌉, or 2b+1 scaled.
    pub fn burst_svt_modulus(&self, n: usize, b: usize) -> u64 {
        match (self.svt_modulus, self.scaled) {
            (Some(m), _) => m,
            (None, true) => 2 * b as u64 + 1,
            (None, false) => 2 * (b as u64).pow(5) * ceil_log2(n) as u64,
        }
    }

    /// Smallest burst bound used at a level of the general constructions.
    pub fn level_floor(&self, full_floor: usize) -> usize {
        if self.scaled {
            3
        } else {
            full_floor
        }
    }
}

/// Code for one odd-length burst of at most b deletions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddBurstSpec {
    pub n: usize,
    pub b: usize,
    pub a: u64,
    pub c: Triangular<u64>,
    pub d: Triangular<u8>,
    pub window: usize,
    pub svt_modulus: u64,
}

impl OddBurstSpec {
    /// All-zero syndromes.
    pub fn new(n: usize, b: usize, scale: Scale) -> Result<Self> {
        let spec = OddBurstSpec {
            n,
            b,
            a: 0,
            c: Triangular::zeros(b),
            d: Triangular::zeros(b),
            window: scale.window_for(n, b),
            svt_modulus: scale.burst_svt_modulus(n, b),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_syndromes(mut self, a: u64, c: Triangular<u64>, d: Triangular<u8>) -> Result<Self> {
        self.a = a;
        self.c = c;
        self.d = d;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b == 0 || self.b > self.n {
            return Err(Error::InvalidParameter(format!(
                "burst bound {} must lie in 1..={}",
                self.b, self.n
            )));
        }
        if self.a >= self.vt_modulus() {
            return Err(Error::InvalidParameter(format!(
                "a = {} must be below {}",
                self.a,
                self.vt_modulus()
            )));
        }
        if self.c.size() != self.b || self.d.size() != self.b {
            return Err(Error::InvalidParameter(format!(
                "syndrome arrays must have {} rows",
                self.b
            )));
        }
        if self.svt_modulus < 1 {
            return Err(Error::InvalidParameter(
                "shifted VT modulus must be positive".into(),
            ));
        }
        if self
            .c
            .rows()
            .iter()
            .flatten()
            .any(|&c| c >= self.svt_modulus)
            || self.d.rows().iter().flatten().any(|&d| d > 1)
        {
            return Err(Error::InvalidParameter(
                "syndrome array entry out of range".into(),
            ));
        }
        Ok(())
    }

    pub fn vt_modulus(&self) -> u64 {
        (self.b * self.n + self.b * self.b) as u64
    }

    pub fn svt(&self, i1: usize, i2: usize) -> SVTSpec {
        SVTSpec {
            n: (self.n + 1 - i1.min(self.n + 1)).div_ceil(i2),
            c: self.c.get(i1, i2),
            d: self.d.get(i1, i2),
            modulus: self.svt_modulus,
        }
    }

    pub fn id(&self) -> String {
        format!(
            "odd-burst(n={}, b={}, a={}, c={:?}, d={:?}, W={}, M={})",
            self.n, self.b, self.a, self.c, self.d, self.window, self.svt_modulus
        )
    }

    /// The unique spec of this shape whose code contains `x`.
    pub fn for_word(&self, x: &BitSeq) -> OddBurstSpec {
        let mut s = self.clone();
        s.a = x.weighted_sum() % self.vt_modulus();
        for i2 in 1..=self.b {
            for i1 in 1..=i2 {
                let row = x.interleave_unchecked(i1, i2);
                s.c.set(i1, i2, row.weighted_sum() % self.svt_modulus);
                s.d.set(i1, i2, (row.weight() % 2) as u8);
            }
        }
        s
    }
}

/// Weight-w patterns of length t in lexicographic order.
pub(crate) fn patterns_of_weight(t: usize, w: usize) -> Vec<BitSeq> {
    (0..1u64 << t)
        .map(|v| BitSeq::from_index(v, t))
        .filter(|v| v.weight() == w)
        .collect()
}

/// Syndromes Σ i·z_i of every I(y, v, k) computed from prefix sums.
pub(crate) struct InsertionSyndromes {
    base: i64,
    ones_from: Vec<i64>,
}

impl InsertionSyndromes {
    pub(crate) fn new(y: &BitSeq) -> Self {
        let len = y.len();
        let mut ones_from = vec![0i64; len + 2];
        for k in (1..=len).rev() {
            ones_from[k] = ones_from[k + 1] + y.bit(k) as i64;
        }
        InsertionSyndromes {
            base: y.weighted_sum() as i64,
            ones_from,
        }
    }

    /// Σ i·z_i for z = I(y, v, k).
    pub(crate) fn of(&self, v: &BitSeq, k: usize) -> i64 {
        let t = v.len() as i64;
        let own: i64 = (1..=v.len())
            .filter(|&j| v.bit(j) == 1)
            .map(|j| (k + j - 1) as i64)
            .sum();
        self.base + t * self.ones_from[k] + own
    }
}

impl OddBurstSpec {
    pub fn contains(&self, x: &BitSeq) -> bool {
        x.len() == self.n
            && x.weighted_sum() % self.vt_modulus() == self.a
            && self.svt_constraints_hold(x)
            && balanced(x, self.b, self.window)
    }

    fn svt_constraints_hold(&self, x: &BitSeq) -> bool {
        (1..=self.b).all(|i2| {
            (1..=i2).all(|i1| svt_contains(&x.interleave_unchecked(i1, i2), &self.svt(i1, i2)))
        })
    }

    /// Membership in the code without the shifted VT residues: VT, balance
    /// and all interleave parities.
    fn coarse_contains(&self, x: &BitSeq) -> bool {
        balanced(x, self.b, self.window)
            && (1..=self.b).all(|i2| {
                interleave_parities(x, i2)
                    .iter()
                    .enumerate()
                    .all(|(i, &p)| p == self.d.get(i + 1, i2))
            })
    }

    /// Candidate burst starts: positions k and patterns v, in that order,
    /// with I(y, v, k) passing the coarse constraints.
    fn locate(&self, y: &BitSeq, t: usize) -> Result<Vec<usize>> {
        let w = self.deleted_weight(y, t)?;
        let syn = InsertionSyndromes::new(y);
        let m = self.vt_modulus() as i64;
        let patterns = patterns_of_weight(t, w);
        let mut hits = Vec::new();
        for k in 1..=y.len() + 1 {
            for v in &patterns {
                if syn.of(v, k).rem_euclid(m) as u64 != self.a {
                    continue;
                }
                let z = y.insert(v, k)?;
                if self.coarse_contains(&z) {
                    hits.push(k);
                    break;
                }
            }
        }
        Ok(hits)
    }

    fn deleted_weight(&self, y: &BitSeq, t: usize) -> Result<usize> {
        if t == 0 || t > self.b {
            return Err(Error::phase(
                DecodePhase::Weight,
                format!("burst length {t} outside 1..={}", self.b),
            ));
        }
        let d: Vec<u8> = self.d.row(t).to_vec();
        Ok(deleted_bits(y, &d).iter().map(|&v| v as usize).sum())
    }

    /// Repairs every stride-t interleave around the estimate `k_hat`.
    fn repair_interleaves(&self, y: &BitSeq, t: usize, k_hat: usize, p: usize) -> Result<BitSeq> {
        let k_row = k_hat.div_ceil(t);
        let rows = (1..=t)
            .map(|i| svt_window_search(&y.interleave_unchecked(i, t), k_row, p, &self.svt(i, t)))
            .collect::<Result<Vec<_>>>()?;
        BitSeq::deinterleave(&rows, self.n)
    }
}

pub fn enumerate_odd_burst(spec: &OddBurstSpec) -> Result<Codebook> {
    enumerate_odd_burst_capped(spec, ENUMERATION_CAP)
}

pub fn enumerate_odd_burst_capped(spec: &OddBurstSpec, cap: usize) -> Result<Codebook> {
    check_cap(spec.n, cap)?;
    Codebook::filter_all(spec.n, cap, |x| spec.contains(x))
}

/// Recovers a codeword from a word that lost one burst of odd length.
pub fn decode_odd_burst(y: &BitSeq, spec: &OddBurstSpec) -> Result<BitSeq> {
    let t = spec
        .n
        .checked_sub(y.len())
        .ok_or_else(|| Error::LengthMismatch {
            expected: spec.n,
            found: y.len(),
        })?;
    if t == 0 {
        return if spec.contains(y) {
            Ok(y.clone())
        } else {
            Err(Error::NotDecodable(
                "received word of full length is not a codeword".into(),
            ))
        };
    }
    if t % 2 == 0 {
        return Err(Error::phase(
            DecodePhase::Weight,
            format!("burst length {t} is even"),
        ));
    }
    let hits = spec.locate(y, t)?;
    if hits.is_empty() {
        return Err(Error::phase(
            DecodePhase::Locate,
            "no insertion satisfies the VT constraint",
        ));
    }
    let p = svt_window(spec.svt_modulus);
    let mut last_err = None;
    for k_hat in hits {
        match spec.repair_interleaves(y, t, k_hat, p) {
            Ok(x) if spec.contains(&x) && is_burst_of(&x, y, t) => return Ok(x),
            Ok(_) => {
                last_err = Some(Error::phase(
                    DecodePhase::Validate,
                    "repaired word is not a codeword",
                ))
            }
            Err(e) => last_err = Some(Error::phase(DecodePhase::Interleave, e.to_string())),
        }
    }
    Err(last_err.expect("at least one hit"))
}

/// Number of levels needed so that every burst length t ≤ b is t = 2^{j−1}·(odd) for some level j.
pub fn level_count(b: usize) -> usize {
    (usize::BITS - b.leading_zeros()) as usize
}

/// Code for one burst of at most b deletions of any parity. Level j
/// constrains the interleave x^{(1,2^{j−1})}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralBurstSpec {
    pub n: usize,
    pub b: usize,
    pub levels: Vec<OddBurstSpec>,
}

pub const BURST_LEVEL_FLOOR: usize = 5;

impl GeneralBurstSpec {
    /// All-zero syndromes at every level.
    pub fn new(n: usize, b: usize, scale: Scale) -> Result<Self> {
        if b == 0 || b > n {
            return Err(Error::InvalidParameter(format!(
                "burst bound {b} must lie in 1..={n}"
            )));
        }
        let floor = scale.level_floor(BURST_LEVEL_FLOOR);
        let levels = (1..=level_count(b))
            .map(|j| {
                let s = 1usize << (j - 1);
                let nj = n.div_ceil(s);
                let bj = b.div_ceil(s).max(floor).min(nj);
                OddBurstSpec::new(nj, bj, scale)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneralBurstSpec { n, b, levels })
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        x.len() == self.n
            && self
                .levels
                .iter()
                .enumerate()
                .all(|(j, level)| level.contains(&x.interleave_unchecked(1, 1 << j)))
    }

    pub fn for_word(&self, x: &BitSeq) -> GeneralBurstSpec {
        GeneralBurstSpec {
            n: self.n,
            b: self.b,
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(j, level)| level.for_word(&x.interleave_unchecked(1, 1 << j)))
                .collect(),
        }
    }

    pub fn id(&self) -> String {
        let parts: Vec<String> = self.levels.iter().map(|l| l.id()).collect();
        format!(
            "general-burst(n={}, b={}; {})",
            self.n,
            self.b,
            parts.join("; ")
        )
    }
}

pub fn enumerate_general_burst(spec: &GeneralBurstSpec) -> Result<Codebook> {
    check_cap(spec.n, ENUMERATION_CAP)?;
    Codebook::filter_all(spec.n, ENUMERATION_CAP, |x| spec.contains(x))
}

/// Positions k with D(x, t, k) = y.
pub(crate) fn burst_positions(x: &BitSeq, y: &BitSeq, t: usize) -> Vec<usize> {
    (1..=x.len() + 1 - t)
        .filter(|&k| x.delete_block(t, k).map(|z| z == *y).unwrap_or(false))
        .collect()
}

pub fn decode_general_burst(y: &BitSeq, spec: &GeneralBurstSpec) -> Result<BitSeq> {
    let t = spec
        .n
        .checked_sub(y.len())
        .ok_or_else(|| Error::LengthMismatch {
            expected: spec.n,
            found: y.len(),
        })?;
    if t == 0 {
        return if spec.contains(y) {
            Ok(y.clone())
        } else {
            Err(Error::NotDecodable(
                "received word of full length is not a codeword".into(),
            ))
        };
    }
    if t > spec.b {
        return Err(Error::phase(
            DecodePhase::Weight,
            format!("burst length {t} exceeds {}", spec.b),
        ));
    }
    let level = t.trailing_zeros() as usize;
    let first = &spec.levels[0];
    if level == 0 {
        let x = decode_odd_burst(y, first)?;
        return if spec.contains(&x) {
            Ok(x)
        } else {
            Err(Error::phase(
                DecodePhase::Validate,
                "decoded word misses a level constraint",
            ))
        };
    }
    let stride = 1usize << level;
    let inner = spec.levels.get(level).ok_or_else(|| {
        Error::phase(
            DecodePhase::Weight,
            format!("no level for burst length {t}"),
        )
    })?;
    let row = y.interleave_unchecked(1, stride);
    let row_t = t >> level;
    let x_row = decode_odd_burst(&row, inner)?;
    let p = svt_window(first.svt_modulus);
    let mut last_err = Error::phase(
        DecodePhase::Locate,
        "no burst position in the first interleave",
    );
    for k_row in burst_positions(&x_row, &row, row_t) {
        let k_hat = 1 + stride * (k_row - 1);
        match first.repair_interleaves(y, t, k_hat, p) {
            Ok(x) if spec.contains(&x) && is_burst_of(&x, y, t) => return Ok(x),
            Ok(_) => {
                last_err = Error::phase(DecodePhase::Validate, "repaired word is not a codeword")
            }
            Err(e) => last_err = Error::phase(DecodePhase::Interleave, e.to_string()),
        }
    }
    Err(last_err)
}
