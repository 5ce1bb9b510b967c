//! Full-scale acceptance suite. Prints one line per criterion, then asserts all.

use eta_meta::verify::acceptance::{run_all, AcceptanceLimits};

#[test]
fn acceptance_criteria() {
    let limits = AcceptanceLimits::default();
    let criteria = run_all(&limits);
    assert_eq!(criteria.len(), 10);
    for c in &criteria {
        println!("{c}");
    }
    let failed: Vec<String> = criteria
        .iter()
        .filter(|c| !c.passed)
        .map(ToString::to_string)
        .collect();
    assert!(
        failed.is_empty(),
        "failing criteria:\n{}",
        failed.join("\n")
    );
}
