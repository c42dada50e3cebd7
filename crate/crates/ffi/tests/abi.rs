use std::ffi::{CStr, CString};
use std::ptr;

use nuniv_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

struct Abc(*mut NunivAlphabet);

impl Abc {
    fn new(spec: &str) -> Self {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { nuniv_alphabet_new(c(spec).as_ptr(), &mut h) }, NunivStatus::Ok);
        Abc(h)
    }
}

impl Drop for Abc {
    fn drop(&mut self) {
        unsafe { nuniv_alphabet_free(self.0) }
    }
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    nuniv_string_free(s);
    out
}

#[test]
fn check_nearly_reports_absent_factor() {
    let a = Abc::new("abc");
    let mut yes = false;
    let mut absent = ptr::null_mut();
    let st = unsafe { nuniv_check_nearly(a.0, c("accbbacab").as_ptr(), 3, &mut yes, &mut absent) };
    assert_eq!(st, NunivStatus::Ok);
    assert!(yes);
    assert_eq!(unsafe { take(absent) }, "bcc");

    let st = unsafe { nuniv_check_nearly(a.0, c("acbba").as_ptr(), 2, &mut yes, &mut absent) };
    assert_eq!(st, NunivStatus::Ok);
    assert!(!yes);
    assert!(absent.is_null());
}

#[test]
fn construct_and_counts() {
    let a = Abc::new("abc");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { nuniv_construct(a.0, c("abccab").as_ptr(), &mut out) }, NunivStatus::Ok);
    assert_eq!(unsafe { take(out) }, "bcbaaccbabcabacbcbaac");

    let mut m = 0u64;
    assert_eq!(unsafe { nuniv_deficiency(a.0, c("aabcbccab").as_ptr(), 3, &mut m) }, NunivStatus::Ok);
    assert_eq!(m, 4);
    let mut iota = 0usize;
    assert_eq!(unsafe { nuniv_universality_index(a.0, c("aabcbccab").as_ptr(), &mut iota) }, NunivStatus::Ok);
    assert_eq!(iota, 2);
    assert_eq!(unsafe { nuniv_alphabet_size(a.0) }, 3);
}

#[test]
fn absent_factors_both_methods() {
    let a = Abc::new("abc");
    for structured in [false, true] {
        let mut out = ptr::null_mut();
        let st = unsafe { nuniv_absent_factors(a.0, c("aabcbccab").as_ptr(), 3, structured, 1 << 20, &mut out) };
        assert_eq!(st, NunivStatus::Ok);
        assert_eq!(unsafe { take(out) }, "baa bac caa cac");
    }
}

#[test]
fn congruence() {
    let a = Abc::new("abc");
    let mut same = true;
    let st = unsafe {
        nuniv_congruent(a.0, c("aabcbccab").as_ptr(), c("aabcbcab").as_ptr(), 3, NunivMode::ExactK as u32, 1 << 20, &mut same)
    };
    assert_eq!(st, NunivStatus::Ok);
    assert!(!same);
    let st = unsafe {
        nuniv_congruent(a.0, c("aabcbccab").as_ptr(), c("aabbcbcccab").as_ptr(), 3, NunivMode::UpToK as u32, 1 << 20, &mut same)
    };
    assert_eq!(st, NunivStatus::Ok);
    assert!(same);
    let st = unsafe { nuniv_congruent(a.0, c("a").as_ptr(), c("b").as_ptr(), 1, 7, 1 << 20, &mut same) };
    assert_eq!(st, NunivStatus::Invalid);
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { nuniv_alphabet_new(c("aab").as_ptr(), &mut h) }, NunivStatus::Invalid);
    let msg = unsafe { CStr::from_ptr(nuniv_last_error()) }.to_str().unwrap();
    assert!(msg.contains("invalid input"), "{msg}");
    assert_eq!(unsafe { nuniv_alphabet_new(ptr::null(), &mut h) }, NunivStatus::NullOrEncoding);

    let a = Abc::new("abc");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { nuniv_construct(a.0, c("abd").as_ptr(), &mut out) }, NunivStatus::Invalid);
    let st = unsafe { nuniv_absent_factors(a.0, c("abcabc").as_ptr(), 2, true, 1 << 20, &mut out) };
    assert_eq!(st, NunivStatus::Precondition);
    let st = unsafe { nuniv_absent_factors(a.0, c("ab").as_ptr(), 3, false, 4, &mut out) };
    assert_eq!(st, NunivStatus::Capacity);
    let mut m = 0u64;
    assert_eq!(unsafe { nuniv_deficiency(a.0, c("ab").as_ptr(), 41, &mut m) }, NunivStatus::Overflow);
    assert_eq!(unsafe { nuniv_deficiency(ptr::null(), c("ab").as_ptr(), 1, &mut m) }, NunivStatus::NullOrEncoding);
    unsafe { nuniv_alphabet_free(ptr::null_mut()) };
    unsafe { nuniv_string_free(ptr::null_mut()) };
}
