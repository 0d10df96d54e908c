//! `vz check` on every corpus program, compared byte-for-byte with the committed transcript.
//!
//! Set `VZ_BLESS=1` to rewrite the transcripts after reviewing a deliberate change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../tt/tests/corpus")
}

fn transcript(file: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_vz"))
        .current_dir(corpus_dir())
        .args(["check", file])
        .env_remove("VZ_BUDGET_PERM_CAP")
        .env_remove("VZ_BUDGET_CODE_BOUND")
        .env_remove("VZ_BUDGET_PI_CAP")
        .env_remove("VZ_BUDGET_DEPTH_CAP")
        .output()
        .unwrap();
    format!(
        "$ vz check {file}\nexit {}\n-- stdout\n{}-- stderr\n{}",
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_transcripts_match() {
    let bless = std::env::var_os("VZ_BLESS").is_some();
    let mut files: Vec<String> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|f| f.ends_with(".vz"))
        .collect();
    files.sort();
    assert!(files.len() >= 15);
    for file in files {
        let path = corpus_dir().join(&file).with_extension("check");
        let got = transcript(&file);
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want =
            fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "transcript of {file} changed");
    }
}
