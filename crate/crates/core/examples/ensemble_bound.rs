//! Random-coding exponents and the Rényi bound for an ensemble whose average
//! spectrum departs from binomial at low weights.

use renyi_tv::coding::{
    partitioned_bound, random_coding_exponent, renyi_bound, shulman_feder_bound, ChannelModel,
    DistanceSpectrum,
};

fn main() -> renyi_tv::Result<()> {
    let n = 64;
    let mut counts = DistanceSpectrum::random_ensemble(n, 0.3)?.counts().to_vec();
    // inflate the light tail, as happens for structured ensembles
    for c in counts.iter_mut().take(8).skip(1) {
        *c *= 30.0;
    }
    let spec = DistanceSpectrum::new(counts)?;
    let rate = spec.rate();

    for ch in ["bsc:0.02", "bsc:0.05", "biawgn:0", "biawgn:2"] {
        let ch: ChannelModel = ch.parse()?;
        let er = random_coding_exponent(ch, rate)?;
        let renyi = renyi_bound(&spec, rate, ch)?;
        let sf = shulman_feder_bound(&spec, rate, ch)?;
        let part = partitioned_bound(&spec, rate, ch)?;
        println!(
            "{ch:<10} E_r {:.5}  renyi {:.5} (r* {:.3})  sf {:.5}  partitioned P <= {:.3e} {:?}",
            er.value,
            renyi.exponent,
            renyi.r_star.unwrap_or(f64::NAN),
            sf.exponent,
            part.prob_bound,
            part.partition.and_then(|p| p.window)
        );
    }
    Ok(())
}
