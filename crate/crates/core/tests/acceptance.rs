//! End-to-end acceptance: runs every check of the reproduction suite and
//! prints one verdict line per criterion. Run with --nocapture to see the
//! table on success.

use powergraph::verification::run_all;

#[test]
fn acceptance_suite() {
    let reports = run_all();
    let mut failures = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} [{} ms] {} — {}", i + 1, r.elapsed_ms, r.name, r.details);
        if !r.pass {
            failures.push(format!("criterion {} ({}): {}", i + 1, r.name, r.details));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
