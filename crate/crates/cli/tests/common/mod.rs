#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `vz` binary with no budget overrides from the environment.
pub fn vz(args: &[&str]) -> Run {
    vz_env(args, &[])
}

pub fn vz_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vz"));
    cmd.args(args);
    for var in ["PERM_CAP", "CODE_BOUND", "PI_CAP", "DEPTH_CAP"] {
        cmd.env_remove(format!("VZ_BUDGET_{var}"));
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("vz runs");
    Run {
        code: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus(file: &str) -> PathBuf {
    manifest_dir().join("../tt/tests/corpus").join(file)
}

pub fn schema(name: &str) -> Value {
    let path = manifest_dir().join("schema").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Validation errors of `doc` against the named in-repo schema.
pub fn schema_errors(name: &str, doc: &Value) -> Vec<String> {
    let schema = schema(name);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let errors = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errs) => errs
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    errors
}

pub fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not json ({e}): {text}"))
}
