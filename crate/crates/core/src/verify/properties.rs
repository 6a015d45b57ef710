//! Exhaustive checks of the structural facts the constructions rest on.
//!
//! Each check returns a report whose `codeword_count` is the number of words
//! examined and whose witness is the first violation found, together with a
//! tally of instances and violations. The meaning of `u`, `v`, `z` is given
//! per check.

use std::time::Instant;

use crate::bitseq::BitSeq;
use crate::block_td_codes::{
    is_tp_error, svt_decode_del_transposition, svt_reinsert_nearest, tp_decode, TPCode,
};
use crate::burst_codes::{bal_contains, bal_lower_bound, svt_window_search, BalSpec, SVTSpec};
use crate::codebook::{check_cap, SWEEP_CAP};
use crate::error::Result;
use crate::errorball::{ball, ball_of_set, BallSet, ErrorBallKind};
use crate::single_edit_codes::{modulus, xd_syndrome, xh_syndrome, SingleEditCodeSpec};
use crate::td_codes::{vt_decode_mismatched, VTSpec};

use super::{codes_of_shape, CodeSpec, Status, Tally, VerificationReport, Witness};

struct Run {
    name: String,
    kind: String,
    bound: Option<f64>,
    start: Instant,
    words: usize,
    tally: Tally,
    witness: Option<Witness>,
}

impl Run {
    fn new(name: String, kind: impl Into<String>, bound: Option<f64>) -> Run {
        Run {
            name,
            kind: kind.into(),
            bound,
            start: Instant::now(),
            words: 0,
            tally: Tally::default(),
            witness: None,
        }
    }

    fn check(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.tally.checked += 1;
        if !ok {
            self.tally.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(w());
            }
        }
    }

    fn finish(self) -> (VerificationReport, Tally) {
        let report = VerificationReport {
            code_id: self.name,
            ball_kind: self.kind,
            status: Status::from_ok(self.witness.is_none()),
            witness: self.witness,
            codeword_count: self.words,
            measured_redundancy: None,
            bound: self.bound,
            wall_time_ms: Some(self.start.elapsed().as_secs_f64() * 1e3),
        };
        (report, self.tally)
    }
}

fn witness(u: &BitSeq, v: &BitSeq, z: &BitSeq) -> Witness {
    Witness {
        u: u.clone(),
        v: v.clone(),
        z: z.clone(),
    }
}

/// Minimum number of adjacent transpositions turning `x` into `y`, or
/// `None` when the weights differ: the distance between the sorted
/// positions of the ones.
pub fn transposition_distance(x: &BitSeq, y: &BitSeq) -> Option<usize> {
    if x.len() != y.len() || x.weight() != y.weight() {
        return None;
    }
    let ones = |s: &BitSeq| (1..=s.len()).filter(|&i| s.bit(i) == 1).collect::<Vec<_>>();
    Some(
        ones(x)
            .into_iter()
            .zip(ones(y))
            .map(|(p, q)| p.abs_diff(q))
            .sum(),
    )
}

fn drift(x: &BitSeq, y: &BitSeq) -> u64 {
    x.weighted_sum().abs_diff(y.weighted_sum())
}

/// Whether the deletion-side residue of the derivative equals the
/// substitution-side residue of the word itself. `u = x`, `v = x'`.
pub fn derivative_residue_transfer(n: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let mut run = Run::new(format!("derivative residue transfer (n={n})"), "-", None);
    for x in BitSeq::all(n) {
        run.words += 1;
        let d = x.derivative()?;
        run.check(xd_syndrome(&d) == xh_syndrome(&x), || witness(&x, &d, &x));
    }
    Ok(run.finish())
}

/// Flipping one or two bits always changes the substitution syndrome, so
/// every X_H(n, a) has minimum Hamming distance at least 3. `u = x` and
/// `v` the flipped word.
pub fn substitution_code_distance(n: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let mut run = Run::new(format!("X_H minimum distance > 2 (n={n})"), "-", Some(3.0));
    for x in BitSeq::all(n) {
        run.words += 1;
        let s = xh_syndrome(&x);
        for i in 1..=n {
            for j in i..=n {
                let mut y = x.clone();
                y.flip(i);
                if j != i {
                    y.flip(j);
                }
                run.check(xh_syndrome(&y) != s, || witness(&x, &y, &y));
            }
        }
    }
    Ok(run.finish())
}

/// The largest X_D(n, a) has at least ⌈2^n / (6n−3)⌉ words.
pub fn pigeonhole_size(n: usize) -> Result<(VerificationReport, Tally)> {
    let need = (1usize << n).div_ceil(modulus(n) as usize);
    let mut run = Run::new(
        format!("largest X_D(n={n}, a) size"),
        "-",
        Some(need as f64),
    );
    let groups = codes_of_shape(&CodeSpec::TorD(SingleEditCodeSpec::new(n, 0)?), SWEEP_CAP)?;
    let best = groups.values().map(|(_, w)| w.len()).max().unwrap_or(0);
    run.words = best;
    run.check(best >= need, || {
        let z = BitSeq::zeros(n);
        witness(&z, &z, &z)
    });
    Ok(run.finish())
}

/// |Σ i·x_i − Σ i·y_i| ≤ ℓ for every y within ℓ adjacent transpositions.
/// `u = x`, `v = y`.
pub fn transposition_drift(n: usize, ell: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let kind = ErrorBallKind::Tl(ell);
    let mut run = Run::new(
        format!("VT drift under transpositions (n={n}, ell={ell})"),
        kind.to_string(),
        Some(ell as f64),
    );
    for x in BitSeq::all(n) {
        run.words += 1;
        for y in ball(&x, kind)? {
            run.check(drift(&x, &y) <= ell as u64, || witness(&x, &y, &y));
        }
    }
    Ok(run.finish())
}

/// Transpositions then a deletion reach the same words as a deletion then
/// transpositions, and the length-(n−1) words are exactly those of the
/// combined ball. `u = x`, `z` a word in one set but not the other.
pub fn deletion_transposition_order(n: usize, ell: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let mut run = Run::new(
        format!("deletion and transpositions commute (n={n}, ell={ell})"),
        ErrorBallKind::TlD(ell).to_string(),
        None,
    );
    for x in BitSeq::all(n) {
        run.words += 1;
        let t_first = ball_of_set(&ball(&x, ErrorBallKind::Tl(ell))?, ErrorBallKind::D)?;
        let d_first = ball_of_set(&ball(&x, ErrorBallKind::D)?, ErrorBallKind::Tl(ell))?;
        let combined: BallSet = ball(&x, ErrorBallKind::TlD(ell))?
            .iter()
            .filter(|w| w.len() + 1 == n)
            .cloned()
            .collect();
        let t_short: BallSet = t_first
            .iter()
            .filter(|w| w.len() + 1 == n)
            .cloned()
            .collect();
        let odd = t_first
            .iter()
            .find(|w| !d_first.contains(w))
            .or_else(|| d_first.iter().find(|w| !t_first.contains(w)))
            .or_else(|| combined.iter().find(|w| !t_short.contains(w)))
            .or_else(|| t_short.iter().find(|w| !combined.contains(w)))
            .cloned();
        run.check(odd.is_none(), || {
            witness(&x, &x, &odd.clone().unwrap_or_default())
        });
    }
    Ok(run.finish())
}

/// Mismatched VT decoding of any word in B_{(T,ℓ),D}(x) of length n−1
/// lands within 2ℓ transpositions of x, for x in every C_VT(n, a, b, ℓ).
/// `u = x`, `v` the decoder output (or x when it refused), `z` the input.
pub fn mismatched_decoding_containment(
    n: usize,
    ell: usize,
) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let kind = ErrorBallKind::TlD(ell);
    let mut run = Run::new(
        format!("mismatched VT estimate within 2ℓ transpositions (n={n}, ell={ell})"),
        kind.to_string(),
        Some(2.0 * ell as f64),
    );
    let m = (n + 2 * ell + 1) as u64;
    for x in BitSeq::all(n) {
        run.words += 1;
        let spec = VTSpec::new(n, x.weighted_sum() % m, ell, Some((x.weight() % 2) as u8))?;
        for y in ball(&x, kind)? {
            if y.len() == n {
                continue;
            }
            let out = vt_decode_mismatched(&y, &spec);
            let ok = out
                .as_ref()
                .ok()
                .and_then(|e| transposition_distance(&x, e))
                .is_some_and(|d| d <= 2 * ell);
            run.check(ok, || witness(&x, out.as_ref().unwrap_or(&x), &y));
        }
    }
    Ok(run.finish())
}

/// Moving an inserted block of b bits from i1 to i2 with the same weight
/// w1 changes Σ i·x_i by (i2 − i1)·w1 − b·w2 + δ with |δ| < b², where w2 is
/// the weight of y between the two positions. `u = I(y, v1, i1)`,
/// `v = I(y, v2, i2)`, `z = y`.
pub fn block_insertion_difference(n: usize, b: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let bound = (b * b) as i64;
    let mut run = Run::new(
        format!("block insertion syndrome difference (n={n}, b={b})"),
        "-",
        Some(bound as f64),
    );
    let blocks: Vec<BitSeq> = BitSeq::all(b).collect();
    for y in BitSeq::all(n - b) {
        run.words += 1;
        for v1 in &blocks {
            for v2 in blocks.iter().filter(|v| v.weight() == v1.weight()) {
                let w1 = v1.weight() as i64;
                for i1 in 1..=n - b + 1 {
                    let x = y.insert(v1, i1)?;
                    for i2 in i1 + 1..=n - b + 1 {
                        let u = y.insert(v2, i2)?;
                        let w2 = y.weight_between(i1, i2 - 1) as i64;
                        let diff = u.weighted_sum() as i64 - x.weighted_sum() as i64;
                        let delta = diff - ((i2 - i1) as i64 * w1 - b as i64 * w2);
                        run.check(delta.abs() < bound, || witness(&x, &u, &y));
                    }
                }
            }
        }
    }
    Ok(run.finish())
}

/// A shifted VT code with modulus M ≥ 2P − 1 recovers every single
/// deletion from an estimate within P of its position. The window search
/// runs without the modulus precondition so that undersized moduli show up
/// as violations. `u = x`, `v` the decoder output (x when it refused), `z`
/// the received word.
pub fn svt_deletion_recovery(n: usize, p: usize, m: u64) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let mut run = Run::new(
        format!("shifted VT deletion recovery (n={n}, P={p}, M={m})"),
        ErrorBallKind::D.to_string(),
        None,
    );
    for x in BitSeq::all(n) {
        run.words += 1;
        let spec = SVTSpec {
            n,
            c: x.weighted_sum() % m,
            d: (x.weight() % 2) as u8,
            modulus: m,
        };
        for k in 1..=n {
            let y = x.delete_block(1, k)?;
            for k_hat in (k + 1).saturating_sub(p).max(1)..=(k + p - 1).min(n) {
                let out = svt_window_search(&y, k_hat, p, &spec);
                run.check(out.as_ref().ok() == Some(&x), || {
                    witness(&x, out.as_ref().unwrap_or(&x), &y)
                });
            }
        }
    }
    Ok(run.finish())
}

/// Counting bound on balanced words versus the exact count.
/// The report's `bound` is the lower bound on log₂|Bal| and
/// `measured_redundancy` carries n − log₂|Bal|.
pub fn balanced_count_bound(
    n: usize,
    b: usize,
    window: usize,
) -> Result<(VerificationReport, Tally)> {
    check_cap(n, 16)?;
    let lower = bal_lower_bound(n, b)?;
    let spec = BalSpec { n, b, window };
    let count = BitSeq::all(n).filter(|x| bal_contains(x, &spec)).count();
    let mut run = Run::new(
        format!("balanced set size (n={n}, b={b}, W={window})"),
        "-",
        Some(lower),
    );
    run.words = count;
    let exact = (count as f64).log2();
    run.check(lower <= 0.0 || lower <= exact + 1e-9, || {
        let z = BitSeq::zeros(n);
        witness(&z, &z, &z)
    });
    let (mut report, tally) = run.finish();
    report.measured_redundancy = Some(n as f64 - exact);
    Ok((report, tally))
}

/// Length of the longest substring of `x` with period `b` (at least b when
/// |x| ≥ b).
pub fn longest_repeating_pattern(x: &BitSeq, b: usize) -> usize {
    let n = x.len();
    if n < b {
        return n;
    }
    let mut best = b;
    let mut run = 0;
    for i in 1..=n - b {
        if x.bit(i) == x.bit(i + b) {
            run += 1;
            best = best.max(run + b);
        } else {
            run = 0;
        }
    }
    best
}

/// Every b-repeating substring of a balanced word is shorter than the
/// balance window. `u = x`.
pub fn repeating_pattern_length(
    n: usize,
    b: usize,
    window: usize,
) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let spec = BalSpec { n, b, window };
    let mut run = Run::new(
        format!("b-repeating patterns in balanced words (n={n}, b={b}, W={window})"),
        "-",
        Some(window as f64),
    );
    for x in BitSeq::all(n).filter(|x| bal_contains(x, &spec)) {
        run.words += 1;
        run.check(longest_repeating_pattern(&x, b) < window, || {
            witness(&x, &x, &x)
        });
    }
    Ok(run.finish())
}

/// Every word of B_{BT∧D,b}(x) is a burst deletion of at most b bits from
/// some word within 2b² transpositions of x. `u = x`, `z` the uncovered
/// word.
pub fn block_edit_cover(n: usize, b: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let kind = ErrorBallKind::BTandD(b);
    let reach = 2 * b * b;
    let mut run = Run::new(
        format!("block edits covered by bursts after {reach} transpositions (n={n})"),
        kind.to_string(),
        Some(reach as f64),
    );
    for x in BitSeq::all(n) {
        run.words += 1;
        for y in ball(&x, kind)? {
            let t = n - y.len();
            let covered = t == 0 && transposition_distance(&x, &y).is_some_and(|d| d <= reach)
                || t > 0
                    && BitSeq::all(t).any(|v| {
                        (1..=y.len() + 1).any(|k| {
                            y.insert(&v, k)
                                .ok()
                                .and_then(|z| transposition_distance(&x, &z))
                                .is_some_and(|d| d <= reach)
                        })
                    });
            run.check(covered, || witness(&x, &x, &y));
        }
    }
    Ok(run.finish())
}

/// |Σ i·x_i − Σ i·y_i| ≤ 2b² for every y within 2b² transpositions of x,
/// checked over all equal-weight pairs at transposition distance ≤ 2b².
/// `u = x`, `v = y`.
pub fn block_transposition_drift(n: usize, b: usize) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let reach = 2 * b * b;
    let mut run = Run::new(
        format!("VT drift within {reach} transpositions (n={n})"),
        ErrorBallKind::Tl(reach).to_string(),
        Some(reach as f64),
    );
    let mut by_weight: Vec<Vec<BitSeq>> = vec![Vec::new(); n + 1];
    for x in BitSeq::all(n) {
        by_weight[x.weight()].push(x);
    }
    for class in &by_weight {
        for x in class {
            run.words += 1;
            for y in class {
                if transposition_distance(x, y).is_some_and(|d| d <= reach) {
                    run.check(drift(x, y) <= reach as u64, || witness(x, y, y));
                }
            }
        }
    }
    Ok(run.finish())
}

/// Shifted VT reinsertion after one deletion and at most one adjacent
/// transposition, with M = 2P + 2: the output lies within two
/// transpositions of x and is an insertion into y within P of the
/// estimate. With `nearest` the fallback decoder is checked instead of the
/// strict one. `u = x`, `v` the output (x when it refused), `z = y`.
pub fn svt_transposition_recovery(
    n: usize,
    p: usize,
    nearest: bool,
) -> Result<(VerificationReport, Tally)> {
    check_cap(n, SWEEP_CAP)?;
    let m = 2 * p as u64 + 2;
    let name = if nearest { "nearest-residue" } else { "strict" };
    let mut run = Run::new(
        format!("{name} shifted VT reinsertion with a transposition (n={n}, P={p}, M={m})"),
        ErrorBallKind::Tl(2).to_string(),
        Some(2.0),
    );
    for x in BitSeq::all(n) {
        run.words += 1;
        let spec = SVTSpec {
            n,
            c: x.weighted_sum() % m,
            d: (x.weight() % 2) as u8,
            modulus: m,
        };
        for k_t in 0..n {
            let u = if k_t == 0 {
                x.clone()
            } else {
                x.transpose(k_t)?
            };
            for k_d in 1..=n {
                let y = u.delete_block(1, k_d)?;
                for k_hat in (k_d + 1).saturating_sub(p).max(1)..=(k_d + p - 1).min(n) {
                    let out = if nearest {
                        svt_reinsert_nearest(&y, k_hat, p, &spec)
                    } else {
                        svt_decode_del_transposition(&y, k_hat, p, &spec)
                    };
                    let ok = out.as_ref().is_ok_and(|z| {
                        transposition_distance(&x, z).is_some_and(|d| d <= 2)
                            && ((k_hat + 1).saturating_sub(p).max(1)..=(k_hat + p - 1).min(n)).any(
                                |k| (0..2).any(|v| y.insert_bit(v, k).ok().as_ref() == Some(z)),
                            )
                    });
                    run.check(ok, || witness(&x, out.as_ref().unwrap_or(&x), &y));
                }
            }
        }
    }
    Ok(run.finish())
}

/// The tensor code maps every correctable pattern back to the all-zero
/// codeword; by linearity this covers every codeword. Patterns are found
/// by scanning all words of the code length. `u` the zero word, `v` the
/// decoder output, `z` the pattern.
pub fn tensor_correction(code: &TPCode) -> Result<(VerificationReport, Tally)> {
    let len = code.spec.len;
    let mut run = Run::new(
        format!(
            "tensor code {} corrects its patterns (r={})",
            code.spec, code.redundancy
        ),
        "-",
        None,
    );
    let zero = BitSeq::zeros(len);
    for e in BitSeq::all(len) {
        if !is_tp_error(&e, &code.spec)? {
            continue;
        }
        run.words += 1;
        let out = tp_decode(&e, code);
        run.check(out.as_ref().ok() == Some(&zero), || {
            witness(&zero, out.as_ref().unwrap_or(&zero), &e)
        });
    }
    Ok(run.finish())
}
