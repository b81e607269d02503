//! Runs every verification suite and prints one line per suite.

use evade_core::verify::{run_suite, SUITES};

#[test]
fn all_suites_pass() {
    let mut failed = Vec::new();
    for (id, _, name) in SUITES {
        match run_suite(id) {
            Ok(r) => {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                println!("[{mark}] {id:>2} {name} ({} checks, {:.1}s): {}", r.checked, r.seconds, r.detail);
                if !r.passed {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("[FAIL] {id:>2} {name}: error: {e}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed suites: {failed:?}");
}
