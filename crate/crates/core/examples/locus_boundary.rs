//! Boundary of the achievable (D(Q||P1), D(Q||P2)) region for several
//! total-variation levels, and a witness triple for an interior point.

use renyi_tv::locus::{boundary_polyline, contains, envelope_y, witness_for_point};

fn main() -> renyi_tv::Result<()> {
    for eps in [1.0, 1.4, 1.8] {
        println!("eps = {eps}");
        for w in boundary_polyline(eps, 9)? {
            println!(
                "  alpha {:.6}  x {:.6}  y {:.6}",
                w.alpha, w.point.0, w.point.1
            );
        }
    }

    let (x, y) = (0.5, 0.6);
    println!("\nenvelope at x = {x} for eps = 1.4: {:.6}", envelope_y(1.4, x)?);
    println!("({x}, {y}) inside: {}", contains(1.4, x, y, 1e-9)?);
    let w = witness_for_point(1.4, x, y)?;
    println!(
        "witness: eps {:.6}, P1 {:?}, P2 {:?}, Q {:?} -> ({:.9}, {:.9})",
        w.eps,
        w.p1_star.probs(),
        w.p2_star.probs(),
        w.q_star.probs(),
        w.point.0,
        w.point.1
    );
    Ok(())
}
