//! The verification suites at their documented corpus sizes. The
//! acceptance suite already runs separable at 1e5, constraints and rank2
//! at 1e4, and avn on the 50x50 grid; this covers the remaining two.

use steerkit::scan::{self, Suite};

#[test]
fn hierarchy_suite_at_corpus_size() {
    let reports = scan::verify(Suite::Hierarchy, 10_000, 7);
    assert!(
        scan::all_passed(&reports),
        "hierarchy suite failed:\n{}",
        scan::render_report(&reports)
    );
    // Three assertions: at most one negative PT eigenvalue, the two PPT
    // forms agree off the boundary, and steering implies entanglement for
    // mu in {0.1, 1, 2}.
    assert_eq!(reports[0].assertions.len(), 3);
}

#[test]
fn identity_suite_at_corpus_size() {
    let reports = scan::verify(Suite::Identity, 10_000, 7);
    assert!(
        scan::all_passed(&reports),
        "identity suite failed:\n{}",
        scan::render_report(&reports)
    );
    let goc = &reports[0].assertions[0];
    assert_eq!(goc.name, "goc_identity_residual");
    assert!(goc.worst <= 1e-10);
}
