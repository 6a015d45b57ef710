//! Exhaustive verification: ball disjointness, decoder round trips,
//! structural properties and redundancy accounting.
//!
//! A code is checked either on its own ([`verify_correctable`]) or together
//! with every other code of the same shape ([`verify_all_assignments`]). In
//! the second mode each word of length n is assigned to the one code whose
//! syndromes it satisfies, so a single pass over {0,1}^n covers every
//! parameter choice.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bitseq::BitSeq;
use crate::block_td_codes::{decode_block_td, enumerate_block_td, BlockTDSpec};
use crate::burst_codes::{
    ceil_log2, decode_general_burst, decode_odd_burst, enumerate_general_burst,
    enumerate_odd_burst, GeneralBurstSpec, OddBurstSpec,
};
use crate::codebook::{check_cap, Codebook, SWEEP_CAP};
use crate::error::Result;
use crate::errorball::{ball, ErrorBallKind};
use crate::single_edit_codes::{
    contains as t_or_d_contains, decode_t_or_d, enumerate_t_or_d, xd_syndrome, xh_syndrome,
    SingleEditCodeSpec,
};
use crate::td_codes::{
    berlekamp_syndromes, decode_ell_td, decode_one_td, enumerate_ell_td, enumerate_one_td,
    one_td_contains, vt_syndrome, EllTDSpec, OneTDSpec,
};

pub mod properties;
pub mod suites;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Two codewords `u`, `v` and a received word `z` explaining a failure.
/// For a collision, `z` lies in both balls. For a decoding failure, `u` was
/// sent, `z` received and `v` returned; `v = u` when the decoder gave up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: BitSeq,
    pub v: BitSeq,
    pub z: BitSeq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub code_id: String,
    pub ball_kind: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub codeword_count: usize,
    pub measured_redundancy: Option<f64>,
    pub bound: Option<f64>,
    pub wall_time_ms: Option<f64>,
}

/// Counters gathered alongside a report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Distinct codes examined.
    pub codes: usize,
    /// Codewords over all codes.
    pub codewords: usize,
    /// Received words whose balls overlap another codeword's ball.
    pub collisions: u64,
    /// Decoder calls or property instances.
    pub checked: u64,
    /// Wrong decoder outputs or property violations.
    pub failed: u64,
}

/// Any code the harness knows how to enumerate and decode.
#[derive(Debug, Clone)]
pub enum CodeSpec {
    TorD(SingleEditCodeSpec),
    EllTD(EllTDSpec),
    OneTD(OneTDSpec),
    OddBurst(OddBurstSpec),
    GeneralBurst(GeneralBurstSpec),
    BlockTD(BlockTDSpec),
}

impl CodeSpec {
    pub fn n(&self) -> usize {
        match self {
            CodeSpec::TorD(s) => s.n,
            CodeSpec::EllTD(s) => s.vt.n,
            CodeSpec::OneTD(s) => s.n(),
            CodeSpec::OddBurst(s) => s.n,
            CodeSpec::GeneralBurst(s) => s.n,
            CodeSpec::BlockTD(s) => s.n,
        }
    }

    pub fn id(&self) -> String {
        match self {
            CodeSpec::TorD(s) => s.id(),
            CodeSpec::EllTD(s) => s.id(),
            CodeSpec::OneTD(s) => s.id(),
            CodeSpec::OddBurst(s) => s.id(),
            CodeSpec::GeneralBurst(s) => s.id(),
            CodeSpec::BlockTD(s) => s.id(),
        }
    }

    /// Short family name, also used by the command line.
    pub fn family(&self) -> &'static str {
        match self {
            CodeSpec::TorD(_) => "t-or-d",
            CodeSpec::EllTD(_) => "td",
            CodeSpec::OneTD(_) => "one-td",
            CodeSpec::OddBurst(_) => "odd-burst",
            CodeSpec::GeneralBurst(_) => "burst",
            CodeSpec::BlockTD(_) => "block-td",
        }
    }

    /// The error ball the family is designed for.
    pub fn design_ball(&self) -> ErrorBallKind {
        match self {
            CodeSpec::TorD(_) => ErrorBallKind::TorD,
            CodeSpec::EllTD(s) => ErrorBallKind::TlD(s.vt.ell),
            CodeSpec::OneTD(_) => ErrorBallKind::TlD(1),
            CodeSpec::OddBurst(s) => ErrorBallKind::Dexact(s.b),
            CodeSpec::GeneralBurst(s) => ErrorBallKind::Datmost(s.b),
            CodeSpec::BlockTD(s) => ErrorBallKind::BTandD(s.b),
        }
    }

    pub fn enumerate(&self) -> Result<Codebook> {
        match self {
            CodeSpec::TorD(s) => enumerate_t_or_d(s),
            CodeSpec::EllTD(s) => enumerate_ell_td(s),
            CodeSpec::OneTD(s) => enumerate_one_td(s),
            CodeSpec::OddBurst(s) => enumerate_odd_burst(s),
            CodeSpec::GeneralBurst(s) => enumerate_general_burst(s),
            CodeSpec::BlockTD(s) => enumerate_block_td(s),
        }
    }

    /// Membership without enumerating the code.
    pub fn contains(&self, x: &BitSeq) -> Result<bool> {
        x.expect_len(self.n())?;
        match self {
            CodeSpec::TorD(s) => t_or_d_contains(x, s),
            CodeSpec::EllTD(s) => s.contains(x),
            CodeSpec::OneTD(s) => one_td_contains(x, s),
            CodeSpec::OddBurst(s) => Ok(s.contains(x)),
            CodeSpec::GeneralBurst(s) => Ok(s.contains(x)),
            CodeSpec::BlockTD(s) => Ok(s.contains(x)),
        }
    }

    pub fn decode(&self, y: &BitSeq) -> Result<BitSeq> {
        match self {
            CodeSpec::TorD(s) => decode_t_or_d(y, s),
            CodeSpec::EllTD(s) => decode_ell_td(y, s),
            CodeSpec::OneTD(s) => decode_one_td(y, s),
            CodeSpec::OddBurst(s) => decode_odd_burst(y, s),
            CodeSpec::GeneralBurst(s) => decode_general_burst(y, s),
            CodeSpec::BlockTD(s) => decode_block_td(y, s),
        }
    }

    /// The code of the same shape that contains `x`, or `None` when `x`
    /// fails a constraint shared by every code of the shape.
    pub fn for_word(&self, x: &BitSeq) -> Result<Option<CodeSpec>> {
        x.expect_len(self.n())?;
        Ok(match self {
            CodeSpec::TorD(s) => Some(CodeSpec::TorD(match s.integral_residue {
                Some(_) => SingleEditCodeSpec::with_integral_residue(
                    s.n,
                    xd_syndrome(x),
                    xh_syndrome(&x.integral()?),
                )?,
                None => SingleEditCodeSpec::new(s.n, xd_syndrome(x))?,
            })),
            CodeSpec::EllTD(s) => {
                if !s.integral_code().contains(&x.integral()?) {
                    return Ok(None);
                }
                let a = vt_syndrome(x, s.vt.modulus());
                Some(CodeSpec::EllTD(s.with_residues(a, (x.weight() % 2) as u8)?))
            }
            CodeSpec::OneTD(s) => {
                let w = x.integral()?;
                if w.bit(s.n()) == 1 {
                    return Ok(None);
                }
                let (a1, a2) = berlekamp_syndromes(&w, s.params.prime);
                Some(CodeSpec::OneTD(OneTDSpec::new(s.n(), a1, a2)?))
            }
            CodeSpec::OddBurst(s) => {
                let t = s.for_word(x);
                t.contains(x).then_some(CodeSpec::OddBurst(t))
            }
            CodeSpec::GeneralBurst(s) => {
                let t = s.for_word(x);
                t.contains(x).then_some(CodeSpec::GeneralBurst(t))
            }
            CodeSpec::BlockTD(s) => {
                let t = s.for_word(x);
                t.contains(x).then_some(CodeSpec::BlockTD(t))
            }
        })
    }

    /// Redundancy guaranteed by the existence argument for this family, in bits.
    pub fn redundancy_bound(&self) -> f64 {
        let n = self.n() as f64;
        let log_n = n.log2();
        match self {
            CodeSpec::TorD(_) => (6.0 * n - 3.0).log2(),
            CodeSpec::EllTD(s) => {
                let ell = s.vt.ell as f64;
                2.0 * ell * log_n + (n + 2.0 * ell + 1.0).log2()
            }
            CodeSpec::OneTD(s) => 2.0 * (s.params.prime as f64).log2(),
            CodeSpec::OddBurst(s) => burst_level_bits(s.b, n, 1.0, 0.0) + 1.0,
            CodeSpec::GeneralBurst(s) => {
                ceil_log2(s.b).max(1) as f64 * burst_level_bits(s.b, n, 1.0, 0.0) + 1.0
            }
            CodeSpec::BlockTD(s) => {
                let b = s.b as f64;
                let levels = ceil_log2(s.b).max(1) as f64;
                levels * burst_level_bits(s.b, n, 5.0, 2.0)
                    + 8.0 * log_n
                    + 64.0 * b * (2.0 * b.powi(5) * log_n + b).log2()
                    + 1.0
            }
        }
    }
}

/// log(bn + v·b²) + b(b+1)/2·(log(2b⁵ log n + s) + 1).
fn burst_level_bits(b: usize, n: f64, vt_scale: f64, svt_shift: f64) -> f64 {
    let b = b as f64;
    (b * n + vt_scale * b * b).log2()
        + b * (b + 1.0) / 2.0 * ((2.0 * b.powi(5) * n.log2() + svt_shift).log2() + 1.0)
}

fn elapsed_ms(start: Instant) -> Option<f64> {
    Some(start.elapsed().as_secs_f64() * 1e3)
}

/// Checks one code: its balls are pairwise disjoint and the family decoder
/// returns the transmitted word for every element of every ball.
pub fn verify_correctable(spec: &CodeSpec, kind: ErrorBallKind) -> Result<VerificationReport> {
    verify_correctable_tally(spec, kind).map(|(r, _)| r)
}

pub fn verify_correctable_tally(
    spec: &CodeSpec,
    kind: ErrorBallKind,
) -> Result<(VerificationReport, Tally)> {
    let start = Instant::now();
    let code = spec.enumerate()?;
    let mut checker = Checker::default();
    checker.code(spec, &code, kind)?;
    let report = VerificationReport {
        code_id: spec.id(),
        ball_kind: kind.to_string(),
        status: Status::from_ok(checker.witness.is_none()),
        witness: checker.witness,
        codeword_count: code.len(),
        measured_redundancy: code.redundancy(),
        bound: Some(spec.redundancy_bound()),
        wall_time_ms: elapsed_ms(start),
    };
    Ok((report, checker.tally))
}

/// Every nonempty code of the given shape at its length, keyed by id.
pub fn codes_of_shape(
    shape: &CodeSpec,
    cap: usize,
) -> Result<BTreeMap<String, (CodeSpec, Vec<BitSeq>)>> {
    let n = shape.n();
    check_cap(n, cap)?;
    let mut groups: BTreeMap<String, (CodeSpec, Vec<BitSeq>)> = BTreeMap::new();
    for x in BitSeq::all(n) {
        if let Some(spec) = shape.for_word(&x)? {
            groups
                .entry(spec.id())
                .or_insert_with(|| (spec, Vec::new()))
                .1
                .push(x);
        }
    }
    Ok(groups)
}

/// Runs the check of [`verify_correctable`] on every code of the shape.
/// The report describes the largest code; the witness is the first failure
/// met with codes visited in id order.
pub fn verify_all_assignments(
    shape: &CodeSpec,
    kind: ErrorBallKind,
) -> Result<(VerificationReport, Tally)> {
    let start = Instant::now();
    let groups = codes_of_shape(shape, SWEEP_CAP)?;
    let mut checker = Checker::default();
    let mut largest = 0;
    for (spec, words) in groups.values() {
        let code = Codebook::new(shape.n(), words.iter().cloned())?;
        largest = largest.max(code.len());
        checker.code(spec, &code, kind)?;
    }
    let n = shape.n() as f64;
    let report = VerificationReport {
        code_id: format!("all {} codes of shape {}", groups.len(), shape.id()),
        ball_kind: kind.to_string(),
        status: Status::from_ok(checker.witness.is_none()),
        witness: checker.witness,
        codeword_count: largest,
        measured_redundancy: (largest > 0).then(|| n - (largest as f64).log2()),
        bound: Some(shape.redundancy_bound()),
        wall_time_ms: elapsed_ms(start),
    };
    Ok((report, checker.tally))
}

#[derive(Default)]
struct Checker {
    tally: Tally,
    witness: Option<Witness>,
}

impl Checker {
    fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    fn code(&mut self, spec: &CodeSpec, code: &Codebook, kind: ErrorBallKind) -> Result<()> {
        self.tally.codes += 1;
        self.tally.codewords += code.len();
        let mut owner: HashMap<BitSeq, usize> = HashMap::new();
        for (i, u) in code.iter().enumerate() {
            for z in ball(u, kind)? {
                match owner.get(&z) {
                    Some(&j) if j != i => {
                        self.tally.collisions += 1;
                        self.fail(Witness {
                            u: code.words()[j].clone(),
                            v: u.clone(),
                            z: z.clone(),
                        });
                    }
                    Some(_) => {}
                    None => {
                        owner.insert(z.clone(), i);
                    }
                }
                self.tally.checked += 1;
                let out = spec.decode(&z);
                if out.as_ref().ok() != Some(u) {
                    self.tally.failed += 1;
                    self.fail(Witness {
                        u: u.clone(),
                        v: out.unwrap_or_else(|_| u.clone()),
                        z,
                    });
                }
            }
        }
        Ok(())
    }
}

/// One report per nonempty code of the shape, largest first (ties by id),
/// each with its measured redundancy next to the family bound. The status
/// records whether the measured value is within the bound.
pub fn redundancy_sweep(shape: &CodeSpec) -> Result<Vec<VerificationReport>> {
    let groups = codes_of_shape(shape, SWEEP_CAP)?;
    let bound = shape.redundancy_bound();
    let n = shape.n() as f64;
    let mut reports: Vec<VerificationReport> = groups
        .into_iter()
        .map(|(id, (_, words))| {
            let measured = n - (words.len() as f64).log2();
            VerificationReport {
                code_id: id,
                ball_kind: shape.design_ball().to_string(),
                status: Status::from_ok(measured <= bound),
                witness: None,
                codeword_count: words.len(),
                measured_redundancy: Some(measured),
                bound: Some(bound),
                wall_time_ms: None,
            }
        })
        .collect();
    reports.sort_by(|a, b| {
        b.codeword_count
            .cmp(&a.codeword_count)
            .then_with(|| a.code_id.cmp(&b.code_id))
    });
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLines,
}

/// Renders reports as blank-line separated `key: value` records or as one
/// JSON object per line.
pub fn render(reports: &[VerificationReport], format: Format) -> String {
    let mut out = String::new();
    for r in reports {
        match format {
            Format::JsonLines => {
                out.push_str(&serde_json::to_string(r).expect("reports serialize"));
                out.push('\n');
            }
            Format::Text => {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&render_text(r));
            }
        }
    }
    out
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:.4}"))
}

pub fn render_text(r: &VerificationReport) -> String {
    let witness = match &r.witness {
        Some(w) => format!("u={} v={} z={}", w.u, w.v, w.z),
        None => "none".into(),
    };
    let mut s = format!(
        "code_id: {}\nball_kind: {}\nstatus: {}\nwitness: {}\ncodeword_count: {}\nmeasured_redundancy: {}\nbound: {}\n",
        r.code_id,
        r.ball_kind,
        r.status.as_str(),
        witness,
        r.codeword_count,
        opt_f64(r.measured_redundancy),
        opt_f64(r.bound),
    );
    if let Some(t) = r.wall_time_ms {
        s.push_str(&format!("wall_time_ms: {t:.1}\n"));
    }
    s
}
