//! Linear complexity profile and the shortest recurrence of a sequence.

use seqmeter::bitseq::BitSequence;
use seqmeter::complexity::{linear_complexity, linear_complexity_profile};

fn main() -> seqmeter::error::Result<()> {
    let s: BitSequence = "0001101011110010".parse()?;
    let n = s.len();
    let lc = linear_complexity(&s, n)?;
    println!("S = {s}");
    println!("L(S, {n}) = {}", lc.value);
    // s_{i+L} = sum_j c_j s_{i+j}
    let terms: Vec<String> = lc
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(j, _)| format!("s_(i+{j})"))
        .collect();
    println!("s_(i+{}) = {}", lc.value, terms.join(" + "));

    let profile = linear_complexity_profile(&s, n)?;
    println!("profile: {:?}", profile.values);
    Ok(())
}
