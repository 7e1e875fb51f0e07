//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;

use semicircle_core::verify::{criteria, CheckOutcome};

fn line(o: &CheckOutcome) -> String {
    let budget = o
        .budget_seconds
        .map(|b| format!(" / {b:.0}s"))
        .unwrap_or_default();
    format!(
        "criterion {:>2} {} [{:.2}s{budget}] {}: {}",
        o.id,
        if o.passed { "PASS" } else { "FAIL" },
        o.seconds,
        o.name,
        o.detail
    )
}

fn main() -> ExitCode {
    let mut failed = 0;
    for check in criteria() {
        let outcome = check.run();
        println!("{}", line(&outcome));
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
