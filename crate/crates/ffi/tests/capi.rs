use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use torus_ham_ffi::*;

fn last_error() -> String {
    let p = torus_ham_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn construct(
    m: u64,
    k: usize,
    from: Option<&[u64]>,
    to: &[u64],
) -> (TorusHamStatus, *mut TorusHamPath) {
    let mut out = ptr::null_mut();
    let from = from.map_or(ptr::null(), <[u64]>::as_ptr);
    let status = unsafe { torus_ham_construct(m, k, from, to.as_ptr(), &mut out) };
    (status, out)
}

fn generators(path: *const TorusHamPath) -> Vec<u32> {
    let mut needed = 0;
    let status = unsafe { torus_ham_path_generators(path, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, TorusHamStatus::BufferTooSmall);
    let mut buf = vec![0u32; needed];
    let status =
        unsafe { torus_ham_path_generators(path, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, TorusHamStatus::Ok);
    buf
}

#[test]
fn construct_and_inspect() {
    let (status, path) = construct(3, 3, None, &[2, 0, 0]);
    assert_eq!(status, TorusHamStatus::Ok);
    assert!(!path.is_null());
    unsafe {
        assert_eq!(torus_ham_path_length(path), 26);
        assert_eq!(torus_ham_path_dims(path), 3);
        assert!(torus_ham_path_is_verified(path));
        let word = torus_ham_path_word(path);
        let text = CStr::from_ptr(word).to_str().unwrap().to_owned();
        torus_ham_string_free(word);
        let parsed: torus_ham::Word<torus_ham::Generator> = text.parse().unwrap();
        assert_eq!(parsed.flat_length(), 26);
    }
    assert_eq!(generators(path).len(), 26);
    unsafe { torus_ham_path_free(path) };
}

#[test]
fn generators_round_trip_through_verify() {
    let from = [1, 2, 3];
    let to = [1, 2, 2];
    let (status, path) = construct(4, 3, Some(&from), &to);
    assert_eq!(status, TorusHamStatus::Ok, "{}", last_error());
    let mut gens = generators(path);
    unsafe { torus_ham_path_free(path) };

    let verify = |g: &[u32], target: &[u64]| unsafe {
        torus_ham_verify(4, 3, from.as_ptr(), target.as_ptr(), g.as_ptr(), g.len())
    };
    assert_eq!(verify(&gens, &to), TorusHamStatus::Ok);
    assert_eq!(verify(&gens, &[0, 0, 0]), TorusHamStatus::NotVerified);
    assert!(
        last_error().contains("endpoint mismatch"),
        "{}",
        last_error()
    );
    gens[5] = (gens[5] + 1) % 3;
    assert_eq!(verify(&gens, &to), TorusHamStatus::NotVerified);
}

#[test]
fn refusals_and_errors() {
    let (status, path) = construct(3, 3, None, &[1, 0, 0]);
    assert_eq!(status, TorusHamStatus::Refused);
    assert!(path.is_null());
    assert!(last_error().contains("-1 (mod 3)"));

    let (status, _) = construct(3, 2, None, &[2, 0]);
    assert_eq!(status, TorusHamStatus::InvalidArgument);
    assert!(last_error().contains("k >= 3"));

    let (status, _) = construct(3, 3, None, &[3, 0, 0]);
    assert_eq!(status, TorusHamStatus::InvalidArgument);

    let status = unsafe { torus_ham_construct(3, 3, ptr::null(), ptr::null(), ptr::null_mut()) };
    assert_eq!(status, TorusHamStatus::NullPointer);
    let mut out = ptr::null_mut();
    let status = unsafe { torus_ham_construct(3, 3, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, TorusHamStatus::NullPointer);

    unsafe {
        assert_eq!(torus_ham_path_length(ptr::null()), 0);
        assert!(!torus_ham_path_is_verified(ptr::null()));
        assert!(torus_ham_path_word(ptr::null()).is_null());
        torus_ham_path_free(ptr::null_mut());
        torus_ham_string_free(ptr::null_mut());
    }

    let (status, path) = construct(2, 3, None, &[1, 0, 0]);
    assert_eq!(status, TorusHamStatus::Ok);
    assert!(torus_ham_last_error().is_null());
    unsafe { torus_ham_path_free(path) };
}

#[test]
fn oracle_answers() {
    let mut exists = false;
    let moduli = [3u64, 3];
    let status = unsafe {
        torus_ham_oracle_path_exists(moduli.as_ptr(), 2, [0u64, 2].as_ptr(), &mut exists)
    };
    assert_eq!(status, TorusHamStatus::Ok);
    assert!(exists);
    let status = unsafe {
        torus_ham_oracle_path_exists(moduli.as_ptr(), 2, [1u64, 1].as_ptr(), &mut exists)
    };
    assert_eq!(status, TorusHamStatus::Ok);
    assert!(!exists);

    let big = [9u64, 9, 9];
    let status = unsafe {
        torus_ham_oracle_path_exists(big.as_ptr(), 3, [8u64, 0, 0].as_ptr(), &mut exists)
    };
    assert_eq!(status, TorusHamStatus::SizeCapExceeded);
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(torus_ham_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(manifest_dir().join("include/torus_ham.h")).unwrap();
    for name in [
        "torus_ham_construct",
        "torus_ham_path_free",
        "torus_ham_path_generators",
        "torus_ham_verify",
        "torus_ham_oracle_path_exists",
        "torus_ham_last_error",
        "typedef struct TorusHamPath TorusHamPath",
        "TORUS_HAM_STATUS_REFUSED",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Builds the static library into a private target directory; the outer
/// cargo still holds the lock on the shared one.
fn static_lib() -> PathBuf {
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-build");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args([
            "build",
            "--quiet",
            "-p",
            "torus-ham-ffi",
            "--lib",
            "--target-dir",
        ])
        .arg(&target)
        .current_dir(manifest_dir())
        .status()
        .unwrap();
    assert!(status.success(), "building the static library failed");
    target.join("debug/libtorus_ham_ffi.a")
}

fn have(tool: &str) -> bool {
    Command::new(tool)
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success())
}

#[test]
fn c_program_links_against_the_static_library() {
    if !have("cc") {
        eprintln!("skipping: no C compiler");
        return;
    }
    let lib = static_lib();
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("torus_ham_smoke");
    let src = manifest_dir().join("tests/c/smoke.c");
    let include = manifest_dir().join("include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(Path::new(&exe))
        .env_remove("TORUS_HAM_CAP")
        .output()
        .unwrap();
    assert!(
        run.status.success(),
        "C smoke test exited {:?}: {}",
        run.status,
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(
        stdout.starts_with(&format!("{} 26 ", env!("CARGO_PKG_VERSION"))),
        "{stdout}"
    );
}
