use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use damerau_codes_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn read(buf: &[c_char]) -> String {
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn t_or_d_round_trip() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(dc_code_t_or_d_new(8, 0, &mut code), DcStatus::Ok);
        assert_eq!(dc_code_length(code), 8);
        let mut size = 0;
        assert_eq!(dc_code_size(code, &mut size), DcStatus::Ok);
        assert!(size > 0);
        let mut buf = [0 as c_char; 16];
        for i in 0..size {
            assert_eq!(
                dc_code_codeword(code, i, buf.as_mut_ptr(), buf.len()),
                DcStatus::Ok
            );
            let x = read(&buf);
            let mut inside = false;
            assert_eq!(
                dc_code_contains(code, c(&x).as_ptr(), &mut inside),
                DcStatus::Ok
            );
            assert!(inside);
            let y = format!("{}{}", &x[..3], &x[4..]);
            let mut out = [0 as c_char; 16];
            assert_eq!(
                dc_code_decode(code, c(&y).as_ptr(), out.as_mut_ptr(), out.len()),
                DcStatus::Ok
            );
            assert_eq!(read(&out), x);
        }
        assert_eq!(
            dc_code_codeword(code, size, buf.as_mut_ptr(), buf.len()),
            DcStatus::OutOfRange
        );
        dc_code_free(code);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            dc_code_t_or_d_new(8, 1000, &mut code),
            DcStatus::InvalidArgument
        );
        assert!(code.is_null());
        assert_eq!(
            dc_code_one_td_new(7, 0, 0, &mut code),
            DcStatus::InvalidArgument
        );
        assert_eq!(
            dc_code_t_or_d_new(8, 0, ptr::null_mut()),
            DcStatus::NullPointer
        );

        assert_eq!(dc_code_td_new(8, 0, 0, 1, &mut code), DcStatus::Ok);
        let mut inside = false;
        assert_eq!(
            dc_code_contains(code, c("01x").as_ptr(), &mut inside),
            DcStatus::InvalidWord
        );
        assert_eq!(
            dc_code_contains(code, c("0101").as_ptr(), &mut inside),
            DcStatus::InvalidWord
        );
        let mut small = [0 as c_char; 4];
        let status = dc_code_decode(
            code,
            c("00000000").as_ptr(),
            small.as_mut_ptr(),
            small.len(),
        );
        assert!(matches!(
            status,
            DcStatus::BufferTooSmall | DcStatus::DecodeFailure
        ));
        dc_code_free(code);

        let msg = CStr::from_ptr(dc_status_message(DcStatus::DecodeFailure));
        assert_eq!(msg.to_str().unwrap(), "decoding failed");
        assert_eq!(dc_code_length(ptr::null()), 0);
        dc_code_free(ptr::null_mut());
    }
}

#[test]
fn balls() {
    unsafe {
        let mut ball = ptr::null_mut();
        assert_eq!(
            dc_ball_new(c("00110").as_ptr(), c("t-or-d").as_ptr(), 0, 0, &mut ball),
            DcStatus::Ok
        );
        assert_eq!(dc_ball_len(ball), 6);
        let mut buf = [0 as c_char; 8];
        let members: Vec<String> = (0..6)
            .map(|i| {
                assert_eq!(
                    dc_ball_get(ball, i, buf.as_mut_ptr(), buf.len()),
                    DcStatus::Ok
                );
                read(&buf)
            })
            .collect();
        assert_eq!(members, ["0010", "00101", "0011", "00110", "01010", "0110"]);
        dc_ball_free(ball);

        assert_eq!(
            dc_ball_new(
                c("100000110").as_ptr(),
                c("bt-and-d").as_ptr(),
                0,
                3,
                &mut ball
            ),
            DcStatus::Ok
        );
        assert!(dc_ball_len(ball) > 1);
        dc_ball_free(ball);
        assert_eq!(
            dc_ball_new(c("0101").as_ptr(), c("nope").as_ptr(), 0, 0, &mut ball),
            DcStatus::InvalidArgument
        );
    }
}

#[test]
fn burst_and_block_handles() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            dc_code_burst_new(10, 3, true, 9, 0, false, &mut code),
            DcStatus::Ok
        );
        let mut size = 0;
        assert_eq!(dc_code_size(code, &mut size), DcStatus::Ok);
        dc_code_free(code);
        assert_eq!(
            dc_code_block_td_new(8, 3, true, 9, 8, &mut code),
            DcStatus::Ok
        );
        let mut out = [0 as c_char; 16];
        assert_eq!(
            dc_code_decode(code, c("00000000").as_ptr(), out.as_mut_ptr(), out.len()),
            DcStatus::Ok
        );
        assert_eq!(read(&out), "00000000");
        dc_code_free(code);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/damerau_codes.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "dc_code_decode",
        "dc_ball_new",
        "DC_STATUS_DECODE_FAILURE",
        "typedef struct DcCode DcCode",
    ] {
        assert!(text.contains(name), "{name}");
    }
    match std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", header])
        .status()
    {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler found, syntax check skipped"),
    }
}
