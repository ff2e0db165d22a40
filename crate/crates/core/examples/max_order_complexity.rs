//! Maximum-order complexity next to linear complexity.

use seqmeter::bitseq::BitSequence;
use seqmeter::complexity::{linear_complexity, max_order_complexity, max_order_complexity_profile};

fn main() -> seqmeter::error::Result<()> {
    for text in [
        "0101010101",
        "0011001100110011",
        "0001",
        "1101001000110111010",
    ] {
        let s: BitSequence = text.parse()?;
        let n = s.len();
        println!(
            "{text:<20} M = {:>2}  L = {:>2}",
            max_order_complexity(&s, n)?,
            linear_complexity(&s, n)?.value
        );
    }
    let s: BitSequence = "1101001000110111010".parse()?;
    println!(
        "M profile: {:?}",
        max_order_complexity_profile(&s, s.len())?.values
    );
    Ok(())
}
