//! Rényi and Hellinger divergences, tilted measures and Chernoff information
//! for a pair of distributions on four letters.

use renyi_tv::divergences::{
    chernoff_information, hellinger_divergence, relative_entropy, renyi_divergence,
    tilted_measure, total_variation, Distribution, Order,
};

fn main() -> renyi_tv::Result<()> {
    let p = Distribution::new(vec![0.4, 0.3, 0.2, 0.1])?;
    let q = Distribution::uniform(4)?;

    println!("|P - Q|      = {:.6}", total_variation(&p, &q)?);
    println!("D(P||Q)      = {:.6}", relative_entropy(&p, &q)?);
    for order in [Order::Zero, Order::new(0.5)?, Order::new(2.0)?, Order::Infinity] {
        println!("D_{:<4}(P||Q) = {:.6}", order.value(), renyi_divergence(&p, &q, order)?);
    }
    println!("H_2(P||Q)    = {:.6}", hellinger_divergence(&p, &q, 2.0)?);

    let tilted = tilted_measure(&p, &q, 0.5)?;
    println!("Q_1/2        = {:?}", tilted.probs());

    let c = chernoff_information(&p, &q)?;
    println!("C(P,Q)       = {:.6} at alpha = {:.4}", c.value, c.alpha);
    Ok(())
}
