use std::path::{Path, PathBuf};
use std::process::Command;

fn static_lib() -> PathBuf {
    // target/<profile>/deps/c_smoke-* -> target/<profile>/libhybridcomb_ffi.a
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("libhybridcomb_ffi.a")
}

#[test]
fn header_compiles_and_links_from_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler ({cc}), skipping");
        return;
    }
    let lib = static_lib();
    assert!(lib.exists(), "{} not built", lib.display());
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg("-I")
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
