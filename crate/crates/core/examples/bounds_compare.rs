//! Lower bounds on linear and maximum-order complexity from correlation
//! data, and the Hall / Fermat corollary chains at concrete sizes.

use seqmeter::bounds::{
    bw_lower_bound, corollary3_bound, correlations_up_to, fermat_corollary_inputs,
    hall_corollary_inputs, iw_lower_bound, theorem2_threshold,
};
use seqmeter::complexity::{linear_complexity, max_order_complexity};
use seqmeter::correlation::SearchOptions;
use seqmeter::generators::{hall_sextic, HallSpec};

fn main() -> seqmeter::error::Result<()> {
    let h = hall_sextic(&HallSpec::new(37, None)?)?;
    let n = 48;
    let s = h.take(n)?;
    let corr = correlations_up_to(&s, n, 3, &SearchOptions::default())?;
    println!("Hall T=37, N={n}: C = {corr:?}");
    println!(
        "L = {}, M = {}",
        linear_complexity(&s, n)?.value,
        max_order_complexity(&s, n)?
    );
    for r in [bw_lower_bound(&corr, n)?, iw_lower_bound(&corr, n)?] {
        println!("{}: {:?} ({})", r.name, r.value, r.commentary);
    }
    if let Some(th) = theorem2_threshold(n, 5)? {
        println!("L = 5 would force a half peak at order <= {}", th.k_bound);
    }
    println!(
        "Corollary 3, K=3, N=1024: {:.3}",
        corollary3_bound(3, 1024, 0.0)?
    );

    let hall = hall_corollary_inputs(1_000_003, 0.1, None, 0.0)?;
    println!(
        "Hall chain T=1000003: N={} k<={} bound {:?}",
        hall.n, hall.verified_k_max, hall.bound
    );
    let fermat = fermat_corollary_inputs(101, 0.5, None, 0.0)?;
    println!(
        "Fermat chain p=101: {:?} ({})",
        fermat.value, fermat.commentary
    );
    Ok(())
}
