//! Aperiodic and periodic correlation measures of order k with witnesses.

use seqmeter::bitseq::ShiftSet;
use seqmeter::correlation::{aperiodic_measure, correlation_at, periodic_measure, SearchOptions};
use seqmeter::generators::{m_sequence, LfsrSpec};

fn main() -> seqmeter::error::Result<()> {
    let m = m_sequence(&LfsrSpec::default_for(5)?)?;
    let opts = SearchOptions::default();
    let n = 2 * m.len();
    for k in 1..=4 {
        let c = aperiodic_measure(&m, n, k, &opts)?;
        let theta = periodic_measure(&m, k, &opts)?;
        println!(
            "k={k}: C_k = {:>2} (U={}, D={})   theta_k = {:>2} (D={})",
            c.value, c.window, c.shifts, theta.value, theta.shifts
        );
    }
    // the recurrence x^5 + x^2 + 1 itself is a zero-sum shift set
    let two = m.take(n)?;
    let d = ShiftSet::new(vec![0, 2, 5])?;
    println!(
        "sum over (0,2,5), U = {}: {}",
        n - 5,
        correlation_at(&two, n - 5, &d)?
    );
    Ok(())
}
