use std::ffi::{c_char, CStr, CString};
use std::ptr;

use goaltally_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gt_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = gt_last_error();
    (!p.is_null()).then(|| unsafe { take(p) })
}

#[test]
fn counts() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gt_count_zero_diagonal(4, 1, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "9");
        assert_eq!(last_error(), None);

        let json = CString::new(r#"{"sr": [0, 0, 0], "mask": [[0, "*", "*"], ["*", 0, "*"], ["*", "*", 0]]}"#).unwrap();
        assert_eq!(gt_count_problem_json(json.as_ptr(), 7, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "8");
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gt_count_zero_diagonal(4, -1, &mut s), GtStatus::Validation);
        assert!(last_error().unwrap().contains("negative"));
        assert_eq!(gt_count_zero_diagonal(4, 1, ptr::null_mut()), GtStatus::NullPointer);
        assert_eq!(gt_count_problem_json(ptr::null(), 1, &mut s), GtStatus::NullPointer);
        let bad = CString::new("{").unwrap();
        assert_eq!(gt_count_problem_json(bad.as_ptr(), 1, &mut s), GtStatus::InvalidInput);
        let mut p = ptr::null_mut();
        assert_eq!(gt_fit_sn(2, GtFitMode::Plain, &mut p), GtStatus::InvalidInput);
        assert!(p.is_null());
        let z = [0u64; 4];
        assert_eq!(
            gt_find_scenarios(4, z.as_ptr(), ptr::null(), ptr::null(), 3, 1, 0, &mut s),
            GtStatus::NullPointer
        );
        assert_eq!(
            gt_find_scenarios(2, z.as_ptr(), z.as_ptr(), ptr::null(), 1, 1, 1, &mut s),
            GtStatus::Validation
        );
        gt_string_free(ptr::null_mut());
        gt_polynomial_free(ptr::null_mut());
    }
}

#[test]
fn polynomial_handle() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gt_fit_sn(5, GtFitMode::Economical, &mut p), GtStatus::Ok);
        assert_eq!(gt_polynomial_degree(p), 11);
        let mut s = ptr::null_mut();
        assert_eq!(gt_polynomial_eval(p, 2, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "870");
        assert_eq!(gt_polynomial_eval(p, -2, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "0");
        gt_polynomial_free(p);
        assert_eq!(gt_polynomial_degree(ptr::null()), -1);
        assert_eq!(gt_polynomial_eval(ptr::null(), 0, &mut s), GtStatus::NullPointer);
    }
}

#[test]
fn scenarios_and_puzzles() {
    unsafe {
        let mut s = ptr::null_mut();
        let zeros = [0u64; 4];
        let (threes, none) = ([3u64; 4], [0u64; 4]);
        assert_eq!(
            gt_find_scenarios(4, zeros.as_ptr(), zeros.as_ptr(), threes.as_ptr(), 3, 1, 0, &mut s),
            GtStatus::Ok
        );
        assert_eq!(take(s), "1");
        assert_eq!(
            gt_find_scenarios(4, zeros.as_ptr(), zeros.as_ptr(), none.as_ptr(), 3, 1, 0, &mut s),
            GtStatus::Ok
        );
        assert_eq!(take(s), "0");
        let g = [1u64; 4];
        assert_eq!(
            gt_find_scenarios(4, g.as_ptr(), g.as_ptr(), ptr::null(), 3, 1, 0, &mut s),
            GtStatus::Ok
        );
        assert_eq!(take(s), "9");

        assert_eq!(gt_make_puzzle_json(4, 4, 7, true, &mut s), GtStatus::Ok);
        let first = take(s);
        let v: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["solutions_count"], 1);
        assert_eq!(gt_make_puzzle_json(4, 4, 7, true, &mut s), GtStatus::Ok);
        assert_eq!(take(s), first);
    }
}
