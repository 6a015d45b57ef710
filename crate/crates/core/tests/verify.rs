use damerau_codes::burst_codes::{GeneralBurstSpec, Scale};
use damerau_codes::single_edit_codes::SingleEditCodeSpec;
use damerau_codes::td_codes::EllTDSpec;
use damerau_codes::verify::{
    codes_of_shape, render, verify_all_assignments, verify_correctable, CodeSpec, Format, Status,
};
use damerau_codes::{ball, ball_contains, BitSeq, ErrorBallKind};
use proptest::prelude::*;

#[test]
fn every_deletion_code_of_length_ten() {
    for a in 0..57 {
        let spec = CodeSpec::TorD(SingleEditCodeSpec::new(10, a).unwrap());
        let r = verify_correctable(&spec, ErrorBallKind::D).unwrap();
        assert_eq!(r.status, Status::Pass, "a = {a}");
    }
}

#[test]
fn ell_td_code_of_length_ten() {
    let shape = CodeSpec::EllTD(EllTDSpec::new(10, 0, 0, 1).unwrap());
    let (r, tally) = verify_all_assignments(&shape, ErrorBallKind::TlD(1)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(tally.failed, 0);
    assert_eq!(tally.collisions, 0);
}

#[test]
fn too_small_vt_modulus_is_caught() {
    let good = EllTDSpec::new(10, 0, 0, 1).unwrap();
    let shape = CodeSpec::EllTD(good.weakened(0).unwrap());
    let (r, _) = verify_all_assignments(&shape, ErrorBallKind::TlD(1)).unwrap();
    assert_eq!(r.status, Status::Fail);
    let w = r.witness.expect("failing report carries a witness");
    assert!(ball_contains(&w.u, &w.z, ErrorBallKind::TlD(1)).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let shape = CodeSpec::GeneralBurst(GeneralBurstSpec::new(9, 3, Scale::SCALED).unwrap());
    let strip = |mut r: damerau_codes::verify::VerificationReport| {
        r.wall_time_ms = None;
        r
    };
    let a = strip(
        verify_all_assignments(&shape, ErrorBallKind::Datmost(3))
            .unwrap()
            .0,
    );
    let b = strip(
        verify_all_assignments(&shape, ErrorBallKind::Datmost(3))
            .unwrap()
            .0,
    );
    assert_eq!(
        render(&[a], Format::JsonLines),
        render(&[b], Format::JsonLines)
    );
}

#[test]
fn shapes_partition_the_space() {
    let shape = CodeSpec::TorD(SingleEditCodeSpec::new(9, 0).unwrap());
    let groups = codes_of_shape(&shape, 14).unwrap();
    let total: usize = groups.values().map(|(_, words)| words.len()).sum();
    assert_eq!(total, 1 << 9);
    for (spec, words) in groups.values() {
        assert_eq!(spec.enumerate().unwrap().words(), words.as_slice());
    }
}

fn word(n: usize) -> impl Strategy<Value = BitSeq> {
    prop::collection::vec(0u8..2, n).prop_map(|v| BitSeq::from_bits(&v).unwrap())
}

proptest! {
    #[test]
    fn integral_constrained_code_round_trips(x in word(16)) {
        let shape = CodeSpec::TorD(SingleEditCodeSpec::with_integral_residue(16, 0, 0).unwrap());
        let spec = shape.for_word(&x).unwrap().unwrap();
        prop_assert!(spec.contains(&x).unwrap());
        for y in ball(&x, ErrorBallKind::TorD).unwrap() {
            prop_assert_eq!(spec.decode(&y).unwrap(), x.clone());
        }
    }

    #[test]
    fn ell_td_round_trips(x in word(14)) {
        let shape = CodeSpec::EllTD(EllTDSpec::new(14, 0, 0, 1).unwrap());
        if let Some(spec) = shape.for_word(&x).unwrap() {
            for y in ball(&x, ErrorBallKind::TlD(1)).unwrap() {
                prop_assert_eq!(spec.decode(&y).unwrap(), x.clone());
            }
        }
    }
}
