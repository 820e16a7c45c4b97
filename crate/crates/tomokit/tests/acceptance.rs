//! Acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line (visible with `--nocapture`).

#[test]
fn acceptance_criteria() {
    let results = tomokit::selftest::run_all(0).expect("acceptance suite runs");
    assert_eq!(results.len(), 14);
    let mut all_passed = true;
    for r in &results {
        println!(
            "criterion {:2} {:26} {} ({})",
            r.index,
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.detail
        );
        all_passed &= r.passed;
    }
    assert!(all_passed, "acceptance criteria failed; see lines above");
}
