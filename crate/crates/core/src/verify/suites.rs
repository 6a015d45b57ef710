//! Named groups of checks, each ending with a deliberately weakened code
//! that the harness must reject.

use serde::Serialize;

use crate::block_td_codes::{tp_build, BlockTDSpec, TensorErrorSpec};
use crate::burst_codes::{GeneralBurstSpec, OddBurstSpec, Scale};
use crate::error::{Error, Result};
use crate::errorball::ErrorBallKind;
use crate::single_edit_codes::SingleEditCodeSpec;
use crate::td_codes::{EllTDSpec, OneTDSpec};

use super::properties::*;
use super::{
    redundancy_sweep, verify_all_assignments, CodeSpec, Status, Tally, VerificationReport,
};

pub const SUITES: [&str; 5] = ["single-edit", "td", "burst", "block-td", "all"];

/// Burst bound used by the burst and block suites.
pub const SUITE_B: usize = 3;

/// One check with the status it is expected to end in.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub expect: Status,
    pub report: VerificationReport,
    pub tally: Tally,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.report.status == self.expect
    }

    pub fn is_negative_control(&self) -> bool {
        self.expect == Status::Fail
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn push(&mut self, expect: Status, r: Result<(VerificationReport, Tally)>) -> Result<()> {
        let (report, tally) = r?;
        self.checks.push(Check {
            suite: self.suite,
            expect,
            report,
            tally,
        });
        Ok(())
    }

    fn pass(&mut self, r: Result<(VerificationReport, Tally)>) -> Result<()> {
        self.push(Status::Pass, r)
    }

    fn control(&mut self, r: Result<(VerificationReport, Tally)>) -> Result<()> {
        self.push(Status::Fail, r)
    }
}

/// Runs the named suite with every length capped at `max_n`.
pub fn run_suite(name: &str, max_n: usize) -> Result<Vec<Check>> {
    match name {
        "single-edit" => single_edit(max_n),
        "td" => td(max_n),
        "burst" => burst(max_n),
        "block-td" => block_td(max_n),
        "all" => {
            let mut out = Vec::new();
            for s in &SUITES[..4] {
                out.extend(run_suite(s, max_n)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn lengths(lo: usize, hi: usize, max_n: usize) -> std::ops::RangeInclusive<usize> {
    lo..=hi.min(max_n)
}

pub fn single_edit(max_n: usize) -> Result<Vec<Check>> {
    let mut c = Collector {
        suite: "single-edit",
        checks: Vec::new(),
    };
    for n in lengths(4, 12, max_n) {
        c.pass(derivative_residue_transfer(n))?;
        c.pass(substitution_code_distance(n))?;
        let plain = CodeSpec::TorD(SingleEditCodeSpec::new(n, 0)?);
        c.pass(verify_all_assignments(&plain, ErrorBallKind::D))?;
        c.pass(verify_all_assignments(&plain, ErrorBallKind::TorD))?;
        c.pass(pigeonhole_size(n))?;
    }
    for n in lengths(4, 10, max_n) {
        let double = CodeSpec::TorD(SingleEditCodeSpec::with_integral_residue(n, 0, 0)?);
        c.pass(verify_all_assignments(&double, ErrorBallKind::TorD))?;
    }
    let n = max_n.clamp(4, 12);
    let vt_only = CodeSpec::EllTD(EllTDSpec::new(n, 0, 0, 0)?);
    c.control(verify_all_assignments(&vt_only, ErrorBallKind::TorD))?;
    Ok(c.checks)
}

pub fn td(max_n: usize) -> Result<Vec<Check>> {
    let mut c = Collector {
        suite: "td",
        checks: Vec::new(),
    };
    for n in lengths(2, 10, max_n) {
        for ell in 1..=3 {
            c.pass(transposition_drift(n, ell))?;
        }
        for ell in 1..=2 {
            c.pass(deletion_transposition_order(n, ell))?;
        }
    }
    for n in lengths(2, 11, max_n) {
        c.pass(mismatched_decoding_containment(n, 1))?;
    }
    let n = max_n.clamp(4, 10);
    let ell_td = CodeSpec::EllTD(EllTDSpec::new(n, 0, 0, 1)?);
    c.pass(verify_all_assignments(&ell_td, ErrorBallKind::TlD(1)))?;
    let even = (n / 2) * 2;
    let one_td = CodeSpec::OneTD(OneTDSpec::new(even, 0, 0)?);
    c.pass(verify_all_assignments(&one_td, ErrorBallKind::TlD(1)))?;
    c.pass(best_code_within_bound(&one_td))?;
    if let CodeSpec::EllTD(s) = &ell_td {
        let weak = CodeSpec::EllTD(s.weakened(0)?);
        c.control(verify_all_assignments(&weak, ErrorBallKind::TlD(1)))?;
    }
    Ok(c.checks)
}

/// The largest code of the shape meets the family redundancy bound.
pub fn best_code_within_bound(shape: &CodeSpec) -> Result<(VerificationReport, Tally)> {
    let sweep = redundancy_sweep(shape)?;
    let mut best = sweep.into_iter().next().ok_or_else(|| {
        Error::InvalidParameter(format!("no nonempty code of shape {}", shape.id()))
    })?;
    best.code_id = format!("largest code within the redundancy bound: {}", best.code_id);
    let tally = Tally {
        codes: 1,
        codewords: best.codeword_count,
        checked: 1,
        failed: (best.status == Status::Fail) as u64,
        ..Tally::default()
    };
    Ok((best, tally))
}

/// Scaled parameters of the burst suite: window b², SVT modulus 2b+1.
pub fn burst_scale(b: usize) -> Scale {
    Scale::SCALED
        .with_window(b * b)
        .with_svt_modulus(2 * b as u64 + 1)
}

/// Scaled parameters of the block suite: window b², SVT modulus 2b+2.
pub fn block_scale(b: usize) -> Scale {
    Scale::SCALED
        .with_window(b * b)
        .with_svt_modulus(2 * b as u64 + 2)
}

pub fn burst(max_n: usize) -> Result<Vec<Check>> {
    let b = SUITE_B;
    let scale = burst_scale(b);
    let mut c = Collector {
        suite: "burst",
        checks: Vec::new(),
    };
    for n in lengths(2 * b, 14, max_n) {
        c.pass(block_insertion_difference(n, b))?;
    }
    for n in lengths(2, 12, max_n) {
        for p in [2, 3] {
            c.pass(svt_deletion_recovery(n, p, 2 * p as u64 - 1))?;
        }
    }
    let top = max_n.clamp(2 * b, 14);
    for n in top.saturating_sub(4).max(2 * b)..=top {
        let odd = CodeSpec::OddBurst(OddBurstSpec::new(n, b, scale)?);
        for t in (1..=b).step_by(2) {
            c.pass(verify_all_assignments(&odd, ErrorBallKind::Dexact(t)))?;
        }
        let general = CodeSpec::GeneralBurst(GeneralBurstSpec::new(n, b, scale)?);
        c.pass(verify_all_assignments(&general, ErrorBallKind::Datmost(b)))?;
    }
    for n in 10..=16 {
        for wide in [5, 7] {
            c.pass(balanced_count_bound(
                n,
                wide,
                crate::burst_codes::BalSpec::full_window(n, wide),
            ))?;
        }
    }
    for n in lengths(b, 14, max_n) {
        c.pass(repeating_pattern_length(n, b, scale.window_for(n, b)))?;
    }
    let weak = CodeSpec::OddBurst(OddBurstSpec::new(top, b, scale.with_svt_modulus(1))?);
    c.control(verify_all_assignments(&weak, ErrorBallKind::Dexact(b)))?;
    Ok(c.checks)
}

pub fn block_td(max_n: usize) -> Result<Vec<Check>> {
    let b = SUITE_B;
    let scale = block_scale(b);
    let mut c = Collector {
        suite: "block-td",
        checks: Vec::new(),
    };
    for n in lengths(b, 10, max_n) {
        c.pass(block_edit_cover(n, b))?;
    }
    for n in lengths(2, 12, max_n) {
        c.pass(block_transposition_drift(n, b))?;
    }
    for n in lengths(3, 10, max_n) {
        for p in [2, 3] {
            c.pass(svt_transposition_recovery(n, p, false))?;
            c.pass(svt_transposition_recovery(n, p, true))?;
        }
    }
    c.pass(tensor_correction(&tp_build(&TensorErrorSpec::new(
        7, 3, 4, 2,
    )?)?))?;
    let n = max_n.clamp(2 * b, 12);
    let code = CodeSpec::BlockTD(BlockTDSpec::new(n, b, scale)?);
    c.pass(verify_all_assignments(&code, ErrorBallKind::BTandD(b)))?;
    let weak_tensor = TensorErrorSpec::with_len(n, b, 1, 1)?;
    let weak = CodeSpec::BlockTD(BlockTDSpec::with_tensor(n, b, scale, weak_tensor)?);
    c.control(verify_all_assignments(&weak, ErrorBallKind::BTandD(b)))?;
    Ok(c.checks)
}

pub fn render_checks(checks: &[Check], format: super::Format) -> String {
    match format {
        super::Format::JsonLines => {
            let reports: Vec<VerificationReport> =
                checks.iter().map(|c| c.report.clone()).collect();
            super::render(&reports, format)
        }
        super::Format::Text => {
            let mut out = String::new();
            for c in checks {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("suite: {}\n", c.suite));
                out.push_str(&super::render_text(&c.report));
                out.push_str(&format!(
                    "expected: {}\nchecked: {}\nfailed: {}\ncollisions: {}\n",
                    c.expect.as_str(),
                    c.tally.checked,
                    c.tally.failed,
                    c.tally.collisions
                ));
            }
            out
        }
    }
}
