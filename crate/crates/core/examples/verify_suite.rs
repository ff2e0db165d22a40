//! Run the quick self-check suite and print one line per check.

use seqmeter::verify::{verify_all, VerifyOptions};

fn main() {
    let reports = verify_all(&VerifyOptions::default());
    for r in &reports {
        println!(
            "{} {:<18} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
}
