//! Codes correcting one block deletion together with one adjacent block
//! transposition of the same length.
//!
//! Decoding first locates the deleted block up to a window using a VT
//! constraint that tolerates the syndrome drift caused by the transposition.
//! Each stride-t interleave then lost one bit and suffered at most one
//! adjacent transposition; a shifted VT decoder reinserts the bit, leaving at
//! most two stray transpositions per interleave. The leftover disagreement is
//! confined to a few short blocks and is removed by a linear code correcting
//! such block-structured errors.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitseq::BitSeq;
use crate::burst_codes::{
    balanced, ceil_log2, interleave_parities, level_count, patterns_of_weight, svt_contains,
    svt_window_search, InsertionSyndromes, SVTSpec, Scale, Triangular,
};
use crate::codebook::{check_cap, Codebook, ENUMERATION_CAP};
use crate::error::{DecodePhase, Error, Result};
use crate::errorball::{ball_contains, ErrorBallKind};

/// Shape of a block-structured error: `len` bits cut into blocks of `m`
/// (the last block may be shorter), at most `t1` nonzero blocks, each of
/// weight at most `t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorErrorSpec {
    pub n_blocks: usize,
    pub m: usize,
    pub t1: usize,
    pub t2: usize,
    pub len: usize,
}

impl TensorErrorSpec {
    pub fn new(n_blocks: usize, m: usize, t1: usize, t2: usize) -> Result<Self> {
        Self::with_len(n_blocks * m, m, t1, t2)
    }

    /// Blocks of `m` covering `len` bits.
    pub fn with_len(len: usize, m: usize, t1: usize, t2: usize) -> Result<Self> {
        if m == 0 || len == 0 {
            return Err(Error::InvalidParameter(
                "tensor blocks must be nonempty".into(),
            ));
        }
        let n_blocks = len.div_ceil(m);
        if t1 > n_blocks || t2 > m {
            return Err(Error::InvalidParameter(format!(
                "need t1 ≤ {n_blocks} and t2 ≤ {m}, got t1 = {t1}, t2 = {t2}"
            )));
        }
        Ok(TensorErrorSpec {
            n_blocks,
            m,
            t1,
            t2,
            len,
        })
    }
}

impl std::fmt::Display for TensorErrorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.n_blocks, self.m, self.t1, self.t2)?;
        if self.len != self.n_blocks * self.m {
            write!(f, "[len {}]", self.len)?;
        }
        Ok(())
    }
}

pub fn is_tp_error(e: &BitSeq, spec: &TensorErrorSpec) -> Result<bool> {
    e.expect_len(spec.len)?;
    Ok(is_pattern(mask_of(e), &block_masks(spec), spec))
}

// Patterns are stored as masks with position i at bit i−1.

fn mask_of(x: &BitSeq) -> u64 {
    (1..=x.len())
        .filter(|&i| x.bit(i) == 1)
        .fold(0, |acc, i| acc | 1 << (i - 1))
}

fn seq_of(mask: u64, len: usize) -> BitSeq {
    let mut x = BitSeq::zeros(len);
    for i in 1..=len {
        if mask >> (i - 1) & 1 == 1 {
            x.set(i, 1);
        }
    }
    x
}

fn block_masks(spec: &TensorErrorSpec) -> Vec<u64> {
    (0..spec.n_blocks)
        .map(|blk| {
            let start = blk * spec.m;
            let width = spec.m.min(spec.len - start);
            ((1u64 << width) - 1) << start
        })
        .collect()
}

fn is_pattern(e: u64, masks: &[u64], spec: &TensorErrorSpec) -> bool {
    let mut nonzero = 0;
    for &bm in masks {
        let w = (e & bm).count_ones() as usize;
        if w > spec.t2 {
            return false;
        }
        nonzero += (w > 0) as usize;
    }
    nonzero <= spec.t1
}

/// Whether `d` is the sum of two correctable patterns.
fn is_difference(d: u64, masks: &[u64], spec: &TensorErrorSpec) -> bool {
    let mut slots = 0;
    for &bm in masks {
        let w = (d & bm).count_ones() as usize;
        if w > 2 * spec.t2 {
            return false;
        }
        slots += if w > spec.t2 { 2 } else { (w > 0) as usize };
    }
    slots <= 2 * spec.t1
}

/// All correctable patterns, in increasing mask order.
fn patterns(spec: &TensorErrorSpec) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0usize)];
    while let Some((block, acc, used)) = stack.pop() {
        if block == spec.n_blocks {
            out.push(acc);
            continue;
        }
        let start = block * spec.m;
        let width = spec.m.min(spec.len - start);
        for local in 0..1u64 << width {
            let w = local.count_ones() as usize;
            if w > spec.t2 || (w > 0 && used == spec.t1) {
                continue;
            }
            stack.push((block + 1, acc | local << start, used + (w > 0) as usize));
        }
    }
    out.sort_unstable();
    out
}

pub const TP_MAX_LEN: usize = 24;

/// A linear code given by its parity-check columns, together with a table
/// from syndromes to correctable patterns.
#[derive(Debug, Clone)]
pub struct TPCode {
    pub spec: TensorErrorSpec,
    pub redundancy: usize,
    columns: Vec<u64>,
    table: HashMap<u64, u64>,
}

impl TPCode {
    /// Syndrome of `x`; position i contributes column i.
    pub fn syndrome(&self, x: &BitSeq) -> u64 {
        (1..=x.len())
            .filter(|&i| x.bit(i) == 1)
            .fold(0, |s, i| s ^ self.columns[i - 1])
    }

    fn syndrome_mask(&self, e: u64) -> u64 {
        (0..self.spec.len)
            .filter(|&i| e >> i & 1 == 1)
            .fold(0, |s, i| s ^ self.columns[i])
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// Number of syndromes, 2^r.
    pub fn coset_count(&self) -> u64 {
        1u64 << self.redundancy
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Pattern with the given syndrome, if correctable.
    pub fn lookup(&self, syndrome: u64) -> Option<BitSeq> {
        self.table.get(&syndrome).map(|&e| seq_of(e, self.spec.len))
    }
}

/// Greedy column-by-column construction: column i avoids every syndrome of
/// a difference pattern restricted to earlier positions, which makes the
/// syndrome injective on correctable patterns. The redundancy grows from
/// the counting bound until the greedy choice succeeds.
pub fn tp_build(spec: &TensorErrorSpec) -> Result<TPCode> {
    let len = spec.len;
    if len > TP_MAX_LEN {
        return Err(Error::TensorBuild(format!(
            "length {len} exceeds the table limit {TP_MAX_LEN}"
        )));
    }
    let pats = patterns(spec);
    let lower = ceil_log2(pats.len()) as usize;
    for r in lower..=len {
        if let Some(columns) = greedy_columns(spec, r) {
            let mut code = TPCode {
                spec: *spec,
                redundancy: r,
                columns,
                table: HashMap::with_capacity(pats.len()),
            };
            for &e in &pats {
                let s = code.syndrome_mask(e);
                if code.table.insert(s, e).is_some() {
                    return Err(Error::TensorBuild(format!(
                        "two patterns share syndrome {s:#x}"
                    )));
                }
            }
            return Ok(code);
        }
    }
    Err(Error::TensorBuild(format!(
        "no columns separate the patterns of {spec}"
    )))
}

fn greedy_columns(spec: &TensorErrorSpec, r: usize) -> Option<Vec<u64>> {
    let masks = block_masks(spec);
    let mut columns: Vec<u64> = Vec::with_capacity(spec.len);
    // prefix_syn[v] is the syndrome of mask v supported on the first i positions.
    let mut prefix_syn: Vec<u64> = vec![0];
    let mut forbidden = vec![false; 1usize << r];
    for i in 0..spec.len {
        forbidden.iter_mut().for_each(|f| *f = false);
        for (v, &s) in prefix_syn.iter().enumerate() {
            if is_difference(v as u64 | 1 << i, &masks, spec) {
                forbidden[s as usize] = true;
            }
        }
        let h = (1..1u64 << r).find(|&h| !forbidden[h as usize])?;
        columns.push(h);
        let shifted: Vec<u64> = prefix_syn.iter().map(|&s| s ^ h).collect();
        prefix_syn.extend(shifted);
    }
    Some(columns)
}

/// Corrects `r` to the nearest word with syndrome 0.
pub fn tp_decode(r: &BitSeq, code: &TPCode) -> Result<BitSeq> {
    tp_decode_coset(r, code, 0)
}

/// Corrects `r` to the word with syndrome `coset` differing from it by a
/// correctable pattern.
pub fn tp_decode_coset(r: &BitSeq, code: &TPCode, coset: u64) -> Result<BitSeq> {
    r.expect_len(code.spec.len)?;
    let s = code.syndrome(r) ^ coset;
    let e = code.table.get(&s).ok_or_else(|| {
        Error::phase(DecodePhase::Tensor, format!("syndrome {s:#x} not in table"))
    })?;
    let mut x = r.clone();
    for i in 1..=r.len() {
        if e >> (i - 1) & 1 == 1 {
            x.flip(i);
        }
    }
    Ok(x)
}

/// Reinserts one deleted bit into a word that also suffered at most one
/// adjacent transposition. The result lies in the shifted VT code and within
/// two adjacent transpositions of the original.
pub fn svt_decode_del_transposition(
    y: &BitSeq,
    k_hat: usize,
    p: usize,
    spec: &SVTSpec,
) -> Result<BitSeq> {
    if spec.modulus < 2 * p as u64 + 2 {
        return Err(Error::InvalidParameter(format!(
            "modulus {} too small for window {p}",
            spec.modulus
        )));
    }
    svt_window_search(y, k_hat, p, spec)
}

/// Like [`svt_decode_del_transposition`], but when no reinsertion in the
/// window meets the residue exactly, returns the unique reinsertion whose
/// residue is cyclically nearest to it. This happens when the deleted bit
/// sits in a run reaching the window edge or the word boundary, and the
/// stray transposition is left for the tensor code to remove.
pub fn svt_reinsert_nearest(y: &BitSeq, k_hat: usize, p: usize, spec: &SVTSpec) -> Result<BitSeq> {
    match svt_decode_del_transposition(y, k_hat, p, spec) {
        Err(Error::NotDecodable(msg)) if msg.starts_with("no reinsertion") => {}
        other => return other,
    }
    let bit = ((y.weight() as u8) ^ spec.d) & 1;
    let lo = (k_hat + 1).saturating_sub(p).max(1);
    let hi = (k_hat + p - 1).min(spec.n);
    let m = spec.modulus;
    let mut best: Option<(u64, BitSeq)> = None;
    let mut tied = false;
    for k in lo..=hi {
        let z = y.insert_bit(bit, k)?;
        let diff = (z.weighted_sum() + m - spec.c % m) % m;
        let dist = diff.min(m - diff);
        match &best {
            Some((d, w)) if dist > *d || (dist == *d && *w == z) => {}
            Some((d, _)) if dist == *d => tied = true,
            _ => {
                best = Some((dist, z));
                tied = false;
            }
        }
    }
    match best {
        Some((_, z)) if !tied => Ok(z),
        _ => Err(Error::NotDecodable(
            "no unique nearest reinsertion in the window".into(),
        )),
    }
}

/// Largest window P with M ≥ 2P + 2.
pub fn td_svt_window(modulus: u64) -> usize {
    (modulus.saturating_sub(2) / 2) as usize
}

pub const TD_LEVEL_FLOOR: usize = 6;

/// Shifted VT modulus for the deletion part: 2b⁵⌈log₂ n⌉ + 2, or 2b+2 scaled.
pub fn td_svt_modulus(scale: &Scale, n: usize, b: usize) -> u64 {
    match (scale.svt_modulus, scale.scaled) {
        (Some(m), _) => m,
        (None, true) => 2 * b as u64 + 2,
        (None, false) => 2 * (b as u64).pow(5) * ceil_log2(n) as u64 + 2,
    }
}

/// One level: VT modulo bn+5b², balance, and shifted VT on every interleave.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TdLevelSpec {
    pub n: usize,
    pub b: usize,
    pub a: u64,
    pub c: Triangular<u64>,
    pub d: Triangular<u8>,
    pub window: usize,
    pub svt_modulus: u64,
}

impl TdLevelSpec {
    pub fn new(n: usize, b: usize, scale: Scale) -> Result<Self> {
        let spec = TdLevelSpec {
            n,
            b,
            a: 0,
            c: Triangular::zeros(b),
            d: Triangular::zeros(b),
            window: scale.window_for(n, b),
            svt_modulus: td_svt_modulus(&scale, n, b),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b == 0 || self.b > self.n {
            return Err(Error::InvalidParameter(format!(
                "block bound {} must lie in 1..={}",
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
        if self.svt_modulus < 1
            || self
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
        (self.b * self.n + 5 * self.b * self.b) as u64
    }

    /// Largest syndrome drift tolerated while locating the block.
    pub fn drift(&self) -> u64 {
        2 * (self.b * self.b) as u64
    }

    pub fn svt(&self, i1: usize, i2: usize) -> SVTSpec {
        SVTSpec {
            n: (self.n + 1 - i1.min(self.n + 1)).div_ceil(i2),
            c: self.c.get(i1, i2),
            d: self.d.get(i1, i2),
            modulus: self.svt_modulus,
        }
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        x.len() == self.n
            && x.weighted_sum() % self.vt_modulus() == self.a
            && (1..=self.b).all(|i2| {
                (1..=i2).all(|i1| svt_contains(&x.interleave_unchecked(i1, i2), &self.svt(i1, i2)))
            })
            && balanced(x, self.b, self.window)
    }

    pub fn for_word(&self, x: &BitSeq) -> TdLevelSpec {
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

    /// Candidate starts k of a deleted block of length `t` in `y`, ordered by
    /// syndrome drift and then position. A candidate inserts a block whose
    /// bits restore the stride-t interleave parities and whose VT syndrome
    /// is within the drift bound of `a`.
    pub fn locate(&self, y: &BitSeq, t: usize) -> Result<Vec<usize>> {
        if t == 0 || t > self.b || y.len() + t != self.n {
            return Err(Error::phase(
                DecodePhase::Weight,
                format!("block length {t} infeasible for level of length {}", self.n),
            ));
        }
        let lost: Vec<u8> = interleave_parities(y, t)
            .iter()
            .zip(self.d.row(t))
            .map(|(p, q)| p ^ q)
            .collect();
        let w = lost.iter().map(|&v| v as usize).sum();
        let syn = InsertionSyndromes::new(y);
        let m = self.vt_modulus() as i64;
        let theta = self.drift() as i64;
        let mut hits: Vec<(i64, usize)> = Vec::new();
        for k in 1..=y.len() + 1 {
            let mut best: Option<i64> = None;
            for v in patterns_of_weight(t, w) {
                // Interleave i of the full word receives v_j with k + j − 1 ≡ i.
                if (1..=t).any(|j| v.bit(j) != lost[(k + j - 2) % t]) {
                    continue;
                }
                let diff = (syn.of(&v, k) - self.a as i64).rem_euclid(m);
                let drift = diff.min(m - diff);
                if drift <= theta {
                    best = Some(best.map_or(drift, |b: i64| b.min(drift)));
                }
            }
            if let Some(d) = best {
                hits.push((d, k));
            }
        }
        hits.sort();
        Ok(hits.into_iter().map(|(_, k)| k).collect())
    }
}

/// The full code: level constraints on x^{(1,2^{j−1})} plus membership in a
/// coset of the block-error correcting code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockTDSpec {
    pub n: usize,
    pub b: usize,
    pub levels: Vec<TdLevelSpec>,
    pub tensor: TensorErrorSpec,
    pub coset: u64,
    #[serde(skip)]
    code: Option<Arc<TPCode>>,
}

impl PartialEq for BlockTDSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.b == other.b
            && self.levels == other.levels
            && self.tensor == other.tensor
            && self.coset == other.coset
    }
}

impl BlockTDSpec {
    /// Default tensor parameters: blocks of b bits with up to four nonzero
    /// blocks of weight at most two. Full scale uses blocks of
    /// 2b⁵⌈log₂ n⌉ + b bits and weight up to 4b.
    pub fn default_tensor(n: usize, b: usize, scale: &Scale) -> Result<TensorErrorSpec> {
        if scale.scaled {
            let m = b.min(n);
            let blocks = n.div_ceil(m);
            TensorErrorSpec::with_len(n, m, 4.min(blocks), 2.min(m))
        } else {
            let m = (2 * b.pow(5) * ceil_log2(n) as usize + b).min(n);
            let blocks = n.div_ceil(m);
            TensorErrorSpec::with_len(n, m, 4.min(blocks), (4 * b).min(m))
        }
    }

    pub fn new(n: usize, b: usize, scale: Scale) -> Result<Self> {
        let tensor = Self::default_tensor(n, b, &scale)?;
        Self::with_tensor(n, b, scale, tensor)
    }

    pub fn with_tensor(n: usize, b: usize, scale: Scale, tensor: TensorErrorSpec) -> Result<Self> {
        if b == 0 || b > n {
            return Err(Error::InvalidParameter(format!(
                "block bound {b} must lie in 1..={n}"
            )));
        }
        if tensor.len != n {
            return Err(Error::InvalidParameter(format!(
                "tensor code covers {} bits, expected {n}",
                tensor.len
            )));
        }
        let floor = scale.level_floor(TD_LEVEL_FLOOR);
        let levels = (1..=level_count(b))
            .map(|j| {
                let s = 1usize << (j - 1);
                let nj = n.div_ceil(s);
                TdLevelSpec::new(nj, b.div_ceil(s).max(floor).min(nj), scale)
            })
            .collect::<Result<Vec<_>>>()?;
        let code = Arc::new(tp_build(&tensor)?);
        Ok(BlockTDSpec {
            n,
            b,
            levels,
            tensor,
            coset: 0,
            code: Some(code),
        })
    }

    /// Shares the tensor code of `self`.
    pub fn with_levels(&self, levels: Vec<TdLevelSpec>, coset: u64) -> Result<Self> {
        let out = BlockTDSpec {
            levels,
            coset,
            ..self.clone()
        };
        for l in &out.levels {
            l.validate()?;
        }
        if coset >= out.code()?.coset_count() {
            return Err(Error::InvalidParameter(format!(
                "tensor coset {coset} out of range"
            )));
        }
        Ok(out)
    }

    pub fn code(&self) -> Result<&TPCode> {
        self.code
            .as_deref()
            .ok_or_else(|| Error::TensorBuild("tensor code not built".into()))
    }

    /// Rebuilds the tensor code after deserialization.
    pub fn rebuild(&mut self) -> Result<()> {
        self.code = Some(Arc::new(tp_build(&self.tensor)?));
        Ok(())
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        x.len() == self.n
            && self
                .levels
                .iter()
                .enumerate()
                .all(|(j, l)| l.contains(&x.interleave_unchecked(1, 1 << j)))
            && self
                .code
                .as_ref()
                .is_some_and(|c| c.syndrome(x) == self.coset)
    }

    pub fn for_word(&self, x: &BitSeq) -> BlockTDSpec {
        BlockTDSpec {
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(j, l)| l.for_word(&x.interleave_unchecked(1, 1 << j)))
                .collect(),
            coset: self.code.as_ref().map_or(0, |c| c.syndrome(x)),
            ..self.clone()
        }
    }

    pub fn id(&self) -> String {
        let levels: Vec<String> = self
            .levels
            .iter()
            .map(|l| {
                format!(
                    "n={}, b={}, a={}, c={:?}, d={:?}, W={}, M={}",
                    l.n, l.b, l.a, l.c, l.d, l.window, l.svt_modulus
                )
            })
            .collect();
        format!(
            "block-td(n={}, b={}; [{}]; tensor {}, coset {})",
            self.n,
            self.b,
            levels.join("; "),
            self.tensor,
            self.coset
        )
    }
}

pub fn enumerate_block_td(spec: &BlockTDSpec) -> Result<Codebook> {
    check_cap(spec.n, ENUMERATION_CAP)?;
    spec.code()?;
    Codebook::filter_all(spec.n, ENUMERATION_CAP, |x| spec.contains(x))
}

/// Intermediate results of one decoding attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTDTrace {
    pub k_hat: usize,
    pub w: BitSeq,
    pub x: BitSeq,
}

pub fn decode_block_td(y: &BitSeq, spec: &BlockTDSpec) -> Result<BitSeq> {
    decode_block_td_traced(y, spec).map(|t| t.x)
}

pub fn decode_block_td_traced(y: &BitSeq, spec: &BlockTDSpec) -> Result<BlockTDTrace> {
    let code = spec.code()?;
    let t = spec.n.checked_sub(y.len()).ok_or(Error::LengthMismatch {
        expected: spec.n,
        found: y.len(),
    })?;
    if t == 0 {
        return if spec.contains(y) {
            Ok(BlockTDTrace {
                k_hat: 0,
                w: y.clone(),
                x: y.clone(),
            })
        } else {
            Err(Error::NotDecodable(
                "received word of full length is not a codeword".into(),
            ))
        };
    }
    let mut last_err = Error::phase(DecodePhase::Locate, "no estimate survived");
    for candidate in block_td_candidates(y, spec)? {
        let (k_hat, w) = match candidate {
            Ok(c) => c,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let x = match tp_decode_coset(&w, code, spec.coset) {
            Ok(x) => x,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        if spec.contains(&x) && ball_contains(&x, y, ErrorBallKind::BTandD(spec.b))? {
            return Ok(BlockTDTrace { k_hat, w, x });
        }
        last_err = Error::phase(
            DecodePhase::Validate,
            "corrected word is not a codeword reaching y",
        );
    }
    Err(last_err)
}

/// Output of the first three phases for each location estimate, in the
/// order the estimates are tried: the estimate and the word w with every
/// interleave repaired, or the interleave failure.
pub fn block_td_candidates(y: &BitSeq, spec: &BlockTDSpec) -> Result<Vec<Result<(usize, BitSeq)>>> {
    let t = spec.n.checked_sub(y.len()).ok_or(Error::LengthMismatch {
        expected: spec.n,
        found: y.len(),
    })?;
    if t == 0 || t > spec.b {
        return Err(Error::phase(
            DecodePhase::Weight,
            format!("block length {t} outside 1..={}", spec.b),
        ));
    }
    let level = t.trailing_zeros() as usize;
    let stride = 1usize << level;
    let inner = spec.levels.get(level).ok_or_else(|| {
        Error::phase(
            DecodePhase::Weight,
            format!("no level for block length {t}"),
        )
    })?;
    let estimates: Vec<usize> = if level == 0 {
        inner.locate(y, t)?
    } else {
        inner
            .locate(&y.interleave_unchecked(1, stride), t >> level)?
            .into_iter()
            .map(|k| 1 + stride * (k - 1))
            .collect()
    };
    if estimates.is_empty() {
        return Err(Error::phase(
            DecodePhase::Locate,
            "no insertion within the syndrome drift bound",
        ));
    }
    let first = &spec.levels[0];
    let p = td_svt_window(first.svt_modulus);
    Ok(estimates
        .into_iter()
        .map(|k_hat| {
            let k_row = k_hat.div_ceil(t);
            let rows = (1..=t)
                .map(|i| {
                    svt_reinsert_nearest(&y.interleave_unchecked(i, t), k_row, p, &first.svt(i, t))
                })
                .collect::<Result<Vec<BitSeq>>>()
                .map_err(|e| Error::phase(DecodePhase::Interleave, e.to_string()))?;
            Ok((k_hat, BitSeq::deinterleave(&rows, spec.n)?))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitseq::bits;
    use crate::errorball::ball;

    #[test]
    fn tensor_pattern_boundaries() {
        let spec = TensorErrorSpec::new(4, 3, 2, 2).unwrap();
        assert!(is_tp_error(&BitSeq::zeros(12), &spec).unwrap());
        assert!(is_tp_error(&bits("110000000000"), &spec).unwrap());
        assert!(!is_tp_error(&bits("111000000000"), &spec).unwrap());
        assert!(is_tp_error(&bits("100100000000"), &spec).unwrap());
        assert!(!is_tp_error(&bits("100100100000"), &spec).unwrap());
        assert!(is_tp_error(&bits("1001"), &spec).is_err());
        assert!(TensorErrorSpec::new(4, 3, 5, 2).is_err());
        assert!(TensorErrorSpec::new(4, 3, 2, 4).is_err());
    }

    #[test]
    fn pattern_count() {
        let spec = TensorErrorSpec::new(7, 3, 4, 2).unwrap();
        assert_eq!(patterns(&spec).len(), 53719);
        let short = TensorErrorSpec::with_len(10, 3, 4, 2).unwrap();
        assert_eq!(short.n_blocks, 4);
        let masks = block_masks(&short);
        assert!(patterns(&short)
            .iter()
            .all(|&e| is_pattern(e, &masks, &short)));
    }

    #[test]
    fn single_block_code_is_a_distance_code() {
        let spec = TensorErrorSpec::new(1, 7, 1, 1).unwrap();
        let code = tp_build(&spec).unwrap();
        assert_eq!(code.redundancy, 3);
        let cw: Vec<BitSeq> = BitSeq::all(7).filter(|x| code.syndrome(x) == 0).collect();
        assert_eq!(cw.len(), 16);
        for u in &cw {
            for v in &cw {
                assert!(u == v || u.hamming(v).unwrap() >= 3);
            }
        }
    }

    #[test]
    fn small_tensor_code_corrects_every_pattern() {
        let spec = TensorErrorSpec::new(4, 3, 2, 2).unwrap();
        let code = tp_build(&spec).unwrap();
        let cw: Vec<BitSeq> = BitSeq::all(12).filter(|x| code.syndrome(x) == 0).collect();
        for e in patterns(&spec) {
            let e = seq_of(e, 12);
            for c in &cw {
                let r = BitSeq::from_index(c.to_index() ^ e.to_index(), 12);
                assert_eq!(&tp_decode(&r, &code).unwrap(), c);
            }
        }
        assert_eq!(tp_decode(&cw[0], &code).unwrap(), cw[0]);
    }

    #[test]
    fn uncorrectable_pattern_is_rejected_or_miscorrected() {
        let spec = TensorErrorSpec::new(4, 3, 1, 1).unwrap();
        let code = tp_build(&spec).unwrap();
        let r = bits("111111111111");
        match tp_decode(&r, &code) {
            Ok(x) => assert!(code.syndrome(&x) == 0),
            Err(e) => assert!(e.is_decode_failure()),
        }
    }

    #[test]
    fn del_transposition_example() {
        let x = bits("1011011");
        let spec = SVTSpec {
            n: 7,
            c: x.weighted_sum() % 8,
            d: (x.weight() % 2) as u8,
            modulus: 8,
        };
        assert_eq!(spec.c, 5);
        let w = svt_decode_del_transposition(&bits("011101"), 5, 3, &spec).unwrap();
        assert_eq!(w, bits("0111101"));
        assert!(ball(&x, ErrorBallKind::Tl(2)).unwrap().contains(&w));
        assert!(svt_decode_del_transposition(&bits("011101"), 5, 4, &spec).is_err());
    }

    #[test]
    fn del_transposition_without_transposition_is_exact() {
        for n in 3..=9 {
            for x in BitSeq::all(n) {
                let spec = SVTSpec {
                    n,
                    c: x.weighted_sum() % 8,
                    d: (x.weight() % 2) as u8,
                    modulus: 8,
                };
                for k in 1..=n {
                    let y = x.delete_block(1, k).unwrap();
                    for k_hat in k.saturating_sub(2).max(1)..=(k + 2).min(n) {
                        assert_eq!(
                            svt_decode_del_transposition(&y, k_hat, 3, &spec).unwrap(),
                            x
                        );
                    }
                }
            }
        }
    }

    fn example_spec() -> (BitSeq, BlockTDSpec) {
        let x = bits("111010101101000101111");
        let tensor = TensorErrorSpec::new(7, 3, 4, 2).unwrap();
        let shape = BlockTDSpec::with_tensor(21, 3, Scale::SCALED.with_window(22), tensor).unwrap();
        let spec = shape.for_word(&x);
        (x, spec)
    }

    #[test]
    fn worked_example() {
        let (x, spec) = example_spec();
        let y = bits("010111101101000101");
        assert!(ball(&x, ErrorBallKind::BTandD(3)).unwrap().contains(&y));
        let level = &spec.levels[0];
        assert_eq!(level.vt_modulus(), 108);
        assert_eq!(level.a, 35);
        assert_eq!(level.svt_modulus, 8);
        let z = y.insert(&bits("111"), 15).unwrap();
        assert_eq!(z, bits("010111101101001110101"));
        assert_eq!(z.weighted_sum() % 108, 35);
        let hits = level.locate(&y, 3).unwrap();
        assert_eq!(hits.first(), Some(&15));
        let trace = decode_block_td_traced(&y, &spec).unwrap();
        assert_eq!(trace.k_hat, 15);
        assert_eq!(trace.w, bits("010111101101101000111"));
        assert_eq!(trace.w.interleave(1, 3).unwrap(), bits("0111101"));
        assert_eq!(trace.w.interleave(2, 3).unwrap(), bits("1100001"));
        assert_eq!(trace.w.interleave(3, 3).unwrap(), bits("0111101"));
        assert_eq!(trace.x, x);
        let e = BitSeq::from_index(trace.w.to_index() ^ x.to_index(), 21);
        assert!(is_tp_error(&e, &spec.tensor).unwrap());
    }

    #[test]
    fn example_vt_residue_is_unique_at_full_weight() {
        let y = bits("010111101101000101");
        let found: Vec<usize> = (1..=19)
            .filter(|&k| y.insert(&bits("111"), k).unwrap().weighted_sum() % 108 == 35)
            .collect();
        assert_eq!(found, vec![15]);
    }

    #[test]
    fn unedited_word_decodes_to_itself() {
        let (x, spec) = example_spec();
        assert_eq!(decode_block_td(&x, &spec).unwrap(), x);
        let mut bad = x.clone();
        bad.flip(1);
        assert!(decode_block_td(&bad, &spec).is_err());
    }
}
