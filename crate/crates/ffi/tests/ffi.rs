use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use jetforge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(jf_last_error()) }.to_string_lossy().into_owned()
}

fn symbol(text: &str) -> *mut JfSymbol {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { jf_symbol_parse(c(text).as_ptr(), 0, -1, &mut out) }, JfStatus::Ok, "{}", last_error());
    out
}

fn poly(text: &str, m: usize) -> *mut JfPoly {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { jf_poly_parse(c(text).as_ptr(), m, &mut out) }, JfStatus::Ok, "{}", last_error());
    out
}

fn take_string(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { jf_string_free(s) };
    owned
}

const LEWY: &str = "d[1,0,0] + i*d[0,1,0] + (-2*i*x1 + 2*x2)*d[0,0,1]";

#[test]
fn vanishing_and_desingularization() {
    let sym = symbol("x1^2*d[1]");
    let (mut kind, mut order) = (JfVanishing::NotVanishing, 99);
    assert_eq!(unsafe { jf_vanishing_order(sym, c("0").as_ptr(), &mut kind, &mut order) }, JfStatus::Ok);
    assert_eq!((kind, order), (JfVanishing::Exactly, 1));
    let mut level = 0;
    assert_eq!(unsafe { jf_desingularization_order(sym, c("0").as_ptr(), 5, &mut level) }, JfStatus::Ok);
    assert_eq!(level, 2);
    assert_eq!(unsafe { jf_desingularization_order(sym, c("0").as_ptr(), 1, &mut level) }, JfStatus::Ok);
    assert_eq!(level, -1);
    assert_eq!(unsafe { jf_symbol_dim(sym) }, 1);
    assert_eq!(unsafe { jf_symbol_order(sym) }, 1);
    unsafe { jf_symbol_free(sym) };
}

#[test]
fn surjectivity_of_lewy() {
    let sym = symbol(LEWY);
    for (k, want) in [(0, 1), (1, 4), (2, 10), (3, 20)] {
        let (mut rank, mut full) = (0, false);
        assert_eq!(unsafe { jf_check_surjectivity(sym, c("0,0,0").as_ptr(), k, &mut rank, &mut full) }, JfStatus::Ok);
        assert_eq!((rank, full), (want, true));
    }
    unsafe { jf_symbol_free(sym) };
}

#[test]
fn solve_and_unsolvable() {
    let sym = symbol("x1*d[1]");
    let one = poly("1", 1);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { jf_solve_to_order(sym, one, c("0").as_ptr(), 0, &mut f) }, JfStatus::Unsolvable);
    assert!(f.is_null());
    let x = poly("x1", 1);
    assert_eq!(unsafe { jf_solve_to_order(sym, x, c("0").as_ptr(), 1, &mut f) }, JfStatus::Ok);
    assert_eq!(take_string(unsafe { jf_poly_to_string(f) }), "x1");
    unsafe {
        jf_poly_free(f);
        jf_poly_free(x);
        jf_poly_free(one);
        jf_symbol_free(sym);
    }
}

#[test]
fn json_report_for_several_points() {
    let sym = symbol("d[1]");
    let g = poly("1", 1);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { jf_solve_json(sym, g, c("0;1").as_ptr(), 0, &mut json) }, JfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["status"], "solved");
    assert_eq!(v["post_check"], "exact");
    assert_eq!(v["command"], "solve-multi");
    assert_eq!(unsafe { jf_solve_json(sym, g, c("0;0").as_ptr(), 0, &mut json) }, JfStatus::DuplicatePoints);
    assert!(json.is_null());
    unsafe {
        jf_poly_free(g);
        jf_symbol_free(sym);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { jf_symbol_parse(c("d[1").as_ptr(), 0, -1, &mut out) }, JfStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("1:4"), "{}", last_error());
    assert_eq!(unsafe { jf_symbol_parse(c("y[1]^2").as_ptr(), 0, -1, &mut out) }, JfStatus::InvalidInput);
    assert_eq!(unsafe { jf_symbol_parse(ptr::null(), 0, -1, &mut out) }, JfStatus::NullPointer);
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { jf_symbol_parse(bytes.as_ptr().cast(), 0, -1, &mut out) }, JfStatus::InvalidUtf8);

    let sym = symbol("d[1,0]");
    let (mut rank, mut full) = (0, false);
    assert_eq!(
        unsafe { jf_check_surjectivity(sym, c("0").as_ptr(), 0, &mut rank, &mut full) },
        JfStatus::DimensionMismatch
    );
    assert_eq!(
        unsafe { jf_check_surjectivity(sym, c("0,0").as_ptr(), 0, ptr::null_mut(), &mut full) },
        JfStatus::NullPointer
    );
    unsafe { jf_symbol_free(sym) };
    assert_eq!(unsafe { jf_symbol_dim(ptr::null()) }, 0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(jf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/jetforge.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from the header");
    }
}

/// Compiles and runs the C smoke test against the static library when a C
/// compiler is available.
#[test]
fn c_smoke_test() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // The test binary sits in target/<profile>/deps; the library one level up.
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libjetforge_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new(&cc)
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke test exited with {:?}: {}", out.status, String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).trim().is_empty());
}
