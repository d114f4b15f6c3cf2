use std::path::Path;
use std::process::Command;

fn compile(lang: &str) -> std::process::Output {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    Command::new("cc")
        .args(["-x", lang, "-fsyntax-only", "-Wall", "-Wextra", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .output()
        .expect("a C compiler is installed")
}

#[test]
fn header_compiles_as_c() {
    let out = compile("c");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn header_compiles_as_cpp() {
    let out = compile("c++");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().parent().unwrap().join("libovalg_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let bin = Path::new(env!("CARGO_TARGET_TMPDIR")).join("ovalg_smoke");
    let out = Command::new("cc")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/main.c"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
}
