//! Hamming(7,4): weight enumeration, the divergence between its normalized
//! spectrum and the binomial one, and the resulting error bounds.

use renyi_tv::coding::{
    parse_generator, partitioned_bound, renyi_bound, shulman_feder_bound, spectrum_from_generator,
    union_bhattacharyya_bound, ChannelModel,
};

fn main() -> renyi_tv::Result<()> {
    let rows = parse_generator("1000110\n0100101\n0010011\n0001111")?;
    let spec = spectrum_from_generator(&rows)?;
    println!("spectrum {:?}, rate {:.6} nats", spec.counts(), spec.rate());

    for delta in [0.001, 0.01, 0.05] {
        let ch = ChannelModel::bsc(delta)?;
        let renyi = renyi_bound(&spec, spec.rate(), ch)?;
        let sf = shulman_feder_bound(&spec, spec.rate(), ch)?;
        let union = union_bhattacharyya_bound(&spec, ch)?;
        let part = partitioned_bound(&spec, spec.rate(), ch)?;
        println!(
            "bsc {delta:<6} D_inf {:.6}  renyi {:.3e}  sf {:.3e}  union {:.3e}  partitioned {:.3e}",
            sf.d_inf.unwrap_or(f64::NAN),
            renyi.prob_bound,
            sf.prob_bound,
            union.prob_bound,
            part.prob_bound
        );
    }
    Ok(())
}
