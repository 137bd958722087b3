//! Shared fixtures and CLI helpers for the integration suites.

use std::path::Path;
use std::process::Output;

use hyperfrac::ArrangementInput;

/// The curated corpus: named small inputs exercising the 1D classical
/// case, a generic arrangement, a central one, a non-generic mix, and
/// repeated identical forms (a 1/x^2-style denominator).
pub fn curated_corpus() -> Vec<(&'static str, ArrangementInput)> {
    vec![
        (
            "pair-1d",
            ArrangementInput::from_ints(1, &[(&[1], 0), (&[1], 1)]).unwrap(),
        ),
        (
            "triangle",
            ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -1)]).unwrap(),
        ),
        (
            "central",
            ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]).unwrap(),
        ),
        (
            "four-form",
            ArrangementInput::from_ints(
                2,
                &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, 0], -1)],
            )
            .unwrap(),
        ),
        (
            "duplicated-form",
            ArrangementInput::from_ints(1, &[(&[1], 0), (&[1], 0)]).unwrap(),
        ),
    ]
}

pub fn write_input_file(dir: &Path, name: &str, input: &ArrangementInput) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(input).unwrap()).unwrap();
    path
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// Runs the CLI binary with the given arguments and returns the output.
pub fn run_cli<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    std::process::Command::new(env!("CARGO_BIN_EXE_hyperfrac"))
        .args(args)
        .output()
        .expect("failed to spawn the hyperfrac binary")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process was not terminated by a signal")
}

pub fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

pub fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}
