//! Generate one period of each supported family and check its linear
//! complexity against the family formula.

use seqmeter::complexity::linear_complexity;
use seqmeter::generators::{
    fermat_threshold, gold_sequence_default, hall_sextic, m_sequence, small_kasami, FermatSpec,
    HallSpec, LfsrSpec,
};

fn main() -> seqmeter::error::Result<()> {
    let m = m_sequence(&LfsrSpec::new(3, 0b011, 0b001)?)?;
    println!(
        "m-sequence x^3+x+1: {}",
        m.render().trim_end().replace('\n', " ")
    );

    for ell in [5, 6, 7] {
        let g = gold_sequence_default(ell, 3)?;
        let t = g.len();
        println!(
            "gold ell={ell}: T={t} L={}",
            linear_complexity(&g, 2 * t)?.value
        );
    }
    for ell in [4, 6, 8] {
        let k = small_kasami(ell, 1)?;
        let t = k.len();
        println!(
            "small kasami ell={ell}: T={t} L={}",
            linear_complexity(&k, 2 * t)?.value
        );
    }

    let h = hall_sextic(&HallSpec::new(13, None)?)?;
    println!(
        "hall T=13: {} (weight {})",
        h.render().trim_end().replace('\n', " "),
        h.weight()
    );
    let e = fermat_threshold(&FermatSpec::new(5)?)?;
    println!("fermat p=5: {}", e.render().trim_end().replace('\n', " "));
    Ok(())
}
