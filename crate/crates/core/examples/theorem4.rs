//! Small maximum-order complexity forces an order-2 half peak.

use seqmeter::bitseq::BitSequence;
use seqmeter::bounds::theorem4_check;
use seqmeter::correlation::SearchOptions;

fn main() -> seqmeter::error::Result<()> {
    for text in [
        "0110011001100110011001100110",
        "0001000100010001",
        "0110100110010110",
    ] {
        let s: BitSequence = text.parse()?;
        let c = theorem4_check(&s, s.len(), &SearchOptions::default())?;
        println!("{text}: M = {}, {}", c.moc, c.report().commentary);
    }
    Ok(())
}
