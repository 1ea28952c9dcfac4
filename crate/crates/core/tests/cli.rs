mod common;

use std::process::Command;

use common::{expand, ALL_SUBCOMMANDS, CLI_CASES};
use triad::cli::run;

fn run_case(args: &str) -> triad::cli::Outcome {
    run(std::iter::once("triad".to_string()).chain(expand(args)))
}

#[test]
fn every_case_exits_as_expected() {
    for case in CLI_CASES {
        let out = run_case(case.args);
        let text = if out.code <= 1 {
            &out.stdout
        } else {
            &out.stderr
        };
        assert_eq!(
            out.code, case.code,
            "{}\nstdout:{}\nstderr:{}",
            case.args, out.stdout, out.stderr
        );
        assert!(
            text.contains(case.expect),
            "{}: {text:?} lacks {:?}",
            case.args,
            case.expect
        );
    }
}

#[test]
fn every_subcommand_is_exercised() {
    let covered = common::subcommands_covered();
    for sub in ALL_SUBCOMMANDS {
        assert!(covered.contains(sub), "{sub} has no case");
    }
}

#[test]
fn reports_are_sorted_key_value_lines() {
    for args in [
        "classify @classification.triad Bij",
        "category-check @endomaps.triad",
        "run-tm @tm_eraser.triad Erase 0110 --max-steps 100",
        "validate @mixed.triad",
    ] {
        let out = run_case(args);
        let keys: Vec<&str> = out
            .stdout
            .lines()
            .map(|l| l.split_once('=').expect("key=value line").0)
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "{args}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for case in CLI_CASES {
        assert_eq!(run_case(case.args), run_case(case.args), "{}", case.args);
    }
}

#[test]
fn fmt_in_place_rewrites_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ws.triad");
    std::fs::write(&path, "set B { elements: b a; }   set A { elements: x; }\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let out = run(["triad", "fmt", &p, "--in-place"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, ""));
    let once = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        once,
        "set A {\n  elements: x;\n}\n\nset B {\n  elements: a b;\n}\n"
    );
    run(["triad", "fmt", &p, "--in-place"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), once);
}

#[test]
fn help_is_not_an_error() {
    let out = run(["triad", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("rule-as-namedset"));
}

#[test]
fn binary_exit_codes_match() {
    let bin = env!("CARGO_BIN_EXE_triad");
    for (args, code) in [
        ("subset @subsets.triad Y X", 0),
        ("subset @subsets.triad X Y", 1),
        ("validate @bad/dangling.triad", 2),
        ("validate @bad/unclosed.triad", 3),
        ("no-such-command", 4),
    ] {
        let status = Command::new(bin).args(expand(args)).output().unwrap();
        assert_eq!(status.status.code(), Some(code), "{args}");
    }
}
