//! Full periodic peaks from low-weight vectors of the dual of the cyclic span.

use seqmeter::codes::{build_span, find_periodic_peak, theorem1_threshold, PeakSearchOptions};
use seqmeter::generators::{gold_sequence_default, m_sequence, small_kasami, LfsrSpec};

fn main() -> seqmeter::error::Result<()> {
    let cases = vec![
        ("m-sequence ell=6", m_sequence(&LfsrSpec::default_for(6)?)?),
        ("small kasami ell=6", small_kasami(6, 2)?),
        ("gold ell=7", gold_sequence_default(7, 1)?),
    ];
    for (name, s) in cases {
        let span = build_span(&s)?;
        let t = theorem1_threshold(span.period(), span.dim())?;
        match find_periodic_peak(&span, t, &PeakSearchOptions::default())? {
            Some(c) => println!(
                "{name}: T={} L={} threshold {t}: order {} at {} (theta = {}, verified {})",
                span.period(),
                span.dim(),
                c.order,
                c.shifts,
                c.verified_value,
                c.verified
            ),
            None => println!("{name}: no peak up to {t}"),
        }
    }
    Ok(())
}
