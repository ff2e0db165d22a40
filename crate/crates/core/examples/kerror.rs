//! K-error linear complexity against the certified bound from correlations.

use seqmeter::bounds::kerror_bound;
use seqmeter::complexity::kerror_linear_complexity;
use seqmeter::correlation::SearchOptions;
use seqmeter::generators::{fermat_threshold, FermatSpec};

fn main() -> seqmeter::error::Result<()> {
    let e = fermat_threshold(&FermatSpec::new(5)?)?;
    let n = 20;
    for flips in 0..=3 {
        let exact = kerror_linear_complexity(&e, n, flips)?;
        let bound = kerror_bound(&e, n, 4, flips, 0.0, &SearchOptions::default())?;
        println!(
            "F={flips}: exact {exact:>2}, bound {:>2}  [{}]",
            bound.value.unwrap_or(0.0),
            bound.commentary
        );
    }
    Ok(())
}
