//! Acceptance gate: runs every verification criterion and prints one
//! pass/fail line per criterion.

use colcodes::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(true);
    let failures: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("criterion {} ({}): {}", o.id, o.label, o.detail))
        .collect();
    assert!(
        failures.is_empty(),
        "failed criteria:\n{}",
        failures.join("\n")
    );
}
