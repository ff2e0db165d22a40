//! Peak-order thresholds for the standard families, next to the published
//! column.

use seqmeter::bounds::{table1_row, Family};

fn main() -> seqmeter::error::Result<()> {
    println!(
        "{:<14} {:>3} {:>5} {:>4} {:>9}",
        "family", "ell", "L", "t", "published"
    );
    for family in Family::ALL {
        for ell in [6, 10, 12, 18] {
            if !family.is_valid_ell(ell) {
                continue;
            }
            let r = table1_row(family, ell)?;
            println!(
                "{:<14} {:>3} {:>5} {:>4} {:>9.2}{}",
                family.name(),
                ell,
                r.linear_complexity,
                r.t,
                r.published,
                if r.matches_published { "" } else { "  *" }
            );
        }
    }
    Ok(())
}
