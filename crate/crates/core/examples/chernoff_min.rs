//! Smallest Chernoff information compatible with a total-variation level,
//! checked against a direct evaluation on the witness pair.

use renyi_tv::divergences::chernoff_information;
use renyi_tv::locus::chernoff_min;

fn main() -> renyi_tv::Result<()> {
    for eps in [0.5, 1.0, 1.4, 1.8, 1.98] {
        let m = chernoff_min(eps)?;
        let direct = chernoff_information(&m.witness.p1_star, &m.witness.p2_star)?;
        println!(
            "eps {eps:<5} min C = {:.6}  direct {:.6}  P1 {:?}",
            m.value,
            direct.value,
            m.witness.p1_star.probs()
        );
    }
    Ok(())
}
