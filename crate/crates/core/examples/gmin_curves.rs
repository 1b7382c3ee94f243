//! Minimum Rényi divergence under a total-variation constraint, compared
//! with closed forms and with the Pinsker-type lower bounds.

use renyi_tv::gmin::{
    g_alpha, g_closed_form, g_lower_bound, gilardoni_bound, GMinQuery, VariationConvention,
};

fn main() -> renyi_tv::Result<()> {
    println!("{:>5} {:>6} {:>12} {:>12} {:>8}", "alpha", "eps", "g", "closed", "method");
    for alpha in [0.25, 0.5, 0.75, 1.0, 2.0] {
        for eps in [0.5, 1.0, 1.5, 1.9] {
            let q = GMinQuery::new(alpha, eps)?;
            let g = g_alpha(q);
            let closed = g_closed_form(q).map_or("-".to_string(), |c| format!("{:.9}", c.value));
            println!(
                "{alpha:>5} {eps:>6} {:>12.9} {closed:>12} {:>8}",
                g.value,
                g.method.as_str()
            );
        }
    }

    println!("\nlower bounds at alpha = 0.5");
    for eps in [0.5, 1.0, 1.5, 1.99] {
        let g = g_alpha(GMinQuery::new(0.5, eps)?).value;
        let pinsker = gilardoni_bound(0.5, eps, VariationConvention::VALIDATED)?;
        let log_bound = g_lower_bound(0.5, eps)?;
        println!("eps {eps:<5} g {g:.6}  pinsker-type {pinsker:.6}  log-type {log_bound:.6}");
    }
    Ok(())
}
