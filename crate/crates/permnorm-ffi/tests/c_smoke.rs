//! Compiles `tests/smoke.c` against the committed header and the static
//! library, then runs it. This is the end-to-end check that the published
//! ABI actually works from C.

use std::env;
use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_client_compiles_and_runs() {
    // target/<profile>/deps/c_smoke-<hash> -> target/<profile>
    let exe = env::current_exe().unwrap();
    let profile_dir = exe
        .parent()
        .and_then(|deps| deps.parent())
        .expect("test binary lives under target/<profile>/deps");
    let staticlib = profile_dir.join("libpermnorm_ffi.a");
    assert!(
        staticlib.exists(),
        "static library missing at {}",
        staticlib.display()
    );

    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = crate_dir.join("../../include");
    let source = crate_dir.join("tests/smoke.c");
    let client = profile_dir.join("permnorm_smoke_client");

    let compile = Command::new("cc")
        .arg(&source)
        .arg("-I")
        .arg(&include_dir)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&client)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&client).output().expect("client runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "client exited with {:?}:\n{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("\"normaliser_order\": \"42\""), "{stdout}");
}
