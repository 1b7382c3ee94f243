use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{bhattacharyya_parameter, ChannelModel, E0Evaluator};
use super::spectrum::{binomial_pmf, spectrum_pmf, DistanceSpectrum, SpectrumPmf};
use crate::divergences::{renyi_divergence, Order};
use crate::error::{invalid, Result};
use crate::numeric;
use crate::serde_ext::{ext_real, opt_ext_real};

/// Number of log-spaced samples of `r` on `[1, R_MAX]`.
pub const R_GRID: usize = 256;
pub const R_MAX: f64 = 1e3;
/// Allowed gap between a supplied rate and `log(M)/N`.
pub const RATE_CONSISTENCY: f64 = 1e-9;
const LOG_R_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Renyi,
    ShulmanFeder,
    Union,
    Partitioned,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Renyi => "renyi",
            Self::ShulmanFeder => "shulman_feder",
            Self::Union => "union",
            Self::Partitioned => "partitioned",
        }
    }
}

/// How `partitioned_bound` split the spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Inclusive weight window assigned to the first subcode, if any.
    pub window: Option<[usize; 2]>,
    pub c1_rate: Option<f64>,
    pub c1_prob_bound: f64,
    pub c2_prob_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub n: usize,
    pub rate: f64,
    #[serde(with = "ext_real")]
    pub exponent: f64,
    pub prob_bound: f64,
    pub r_star: Option<f64>,
    pub rho_star: Option<f64>,
    #[serde(with = "opt_ext_real")]
    pub s_star: Option<f64>,
    /// `D_s(P_N‖Q_N)` at the optimum.
    #[serde(with = "opt_ext_real")]
    pub d_s: Option<f64>,
    #[serde(with = "opt_ext_real")]
    pub d_inf: Option<f64>,
    pub partition: Option<Partition>,
    pub warnings: Vec<String>,
}

fn prob_from_exponent(n: usize, exponent: f64) -> f64 {
    (-(n as f64) * exponent).exp().min(1.0)
}

struct Setup {
    e0: E0Evaluator,
    rate: f64,
    pmf: SpectrumPmf,
    binom: SpectrumPmf,
    d_inf: f64,
    warnings: Vec<String>,
}

impl Setup {
    fn new(spec: &DistanceSpectrum, rate: f64, e0: &E0Evaluator) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(invalid("rate", rate, "must be finite and nonnegative"));
        }
        let pmf = spectrum_pmf(spec)?;
        let binom = binomial_pmf(spec.n())?;
        let d_inf = renyi_divergence(&pmf.dist, &binom.dist, Order::Infinity)?;
        let mut warnings = Vec::new();
        let own = spec.rate();
        if (rate - own).abs() > RATE_CONSISTENCY {
            warnings.push(format!(
                "rate {rate} differs from log(M)/N = {own} of the spectrum"
            ));
        }
        Ok(Self {
            e0: e0.clone(),
            rate,
            pmf,
            binom,
            d_inf,
            warnings,
        })
    }

    fn n(&self) -> f64 {
        self.pmf.n as f64
    }

    fn at_r(&self, r: f64) -> RPoint {
        let (s, d_s) = if r == 1.0 {
            (f64::INFINITY, self.d_inf)
        } else {
            let s = r / (r - 1.0);
            let order = if s.is_finite() {
                Order::Finite(s)
            } else {
                Order::Infinity
            };
            let d = renyi_divergence(&self.pmf.dist, &self.binom.dist, order)
                .unwrap_or(self.d_inf);
            (s, d)
        };
        let effective = r * self.rate + d_s / self.n();
        let best = self.e0.maximize(effective, 1.0 / r);
        RPoint {
            r,
            s,
            d_s,
            exponent: best.value,
            rho: best.rho,
        }
    }

    fn report(&self, method: BoundMethod, at: RPoint) -> BoundReport {
        BoundReport {
            method,
            n: self.pmf.n,
            rate: self.rate,
            exponent: at.exponent,
            prob_bound: prob_from_exponent(self.pmf.n, at.exponent),
            r_star: Some(at.r),
            rho_star: Some(at.rho),
            s_star: Some(at.s),
            d_s: Some(at.d_s),
            d_inf: Some(self.d_inf),
            partition: None,
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct RPoint {
    r: f64,
    s: f64,
    d_s: f64,
    exponent: f64,
    rho: f64,
}

fn r_grid() -> Vec<f64> {
    let top = R_MAX.ln();
    (0..R_GRID)
        .map(|i| {
            if i == 0 {
                1.0
            } else if i == R_GRID - 1 {
                R_MAX
            } else {
                (top * i as f64 / (R_GRID - 1) as f64).exp()
            }
        })
        .collect()
}

/// Exponent of the bound with `r` held fixed (so `s = r/(r-1)`, and
/// `s = ∞` at `r = 1`).
pub fn renyi_bound_at_r(
    spec: &DistanceSpectrum,
    rate: f64,
    ch: ChannelModel,
    r: f64,
) -> Result<BoundReport> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(invalid("r", r, "must be finite and at least 1"));
    }
    let setup = Setup::new(spec, rate, &E0Evaluator::new(ch)?)?;
    Ok(setup.report(BoundMethod::Renyi, setup.at_r(r)))
}

/// Error-probability bound for ML decoding, optimized over `r ≥ 1` and
/// `ρ ∈ [0, 1/r]`.
pub fn renyi_bound(spec: &DistanceSpectrum, rate: f64, ch: ChannelModel) -> Result<BoundReport> {
    renyi_with(spec, rate, &E0Evaluator::new(ch)?)
}

fn renyi_with(spec: &DistanceSpectrum, rate: f64, e0: &E0Evaluator) -> Result<BoundReport> {
    let setup = Setup::new(spec, rate, e0)?;
    let grid = r_grid();
    let points: Vec<RPoint> = grid.par_iter().map(|&r| setup.at_r(r)).collect();
    let mut best_i = 0;
    for (i, p) in points.iter().enumerate() {
        if p.exponent > points[best_i].exponent {
            best_i = i;
        }
    }
    let mut best = points[best_i];
    let lo = grid[best_i.saturating_sub(1)].ln();
    let hi = grid[(best_i + 1).min(R_GRID - 1)].ln();
    let (u, _) = numeric::golden_max(|u| setup.at_r(u.exp()).exponent, lo, hi, LOG_R_TOL);
    let r = if u == 0.0 { 1.0 } else { u.exp() };
    let refined = setup.at_r(r);
    if refined.exponent > best.exponent {
        best = refined;
    }
    Ok(setup.report(BoundMethod::Renyi, best))
}

/// The `r = 1` specialization: `E_r(rate + D_∞(P_N‖Q_N)/N)`.
pub fn shulman_feder_bound(
    spec: &DistanceSpectrum,
    rate: f64,
    ch: ChannelModel,
) -> Result<BoundReport> {
    let setup = Setup::new(spec, rate, &E0Evaluator::new(ch)?)?;
    let best = setup.e0.maximize(setup.rate + setup.d_inf / setup.n(), 1.0);
    let at = RPoint {
        r: 1.0,
        s: f64::INFINITY,
        d_s: setup.d_inf,
        exponent: best.value,
        rho: best.rho,
    };
    Ok(setup.report(BoundMethod::ShulmanFeder, at))
}

/// `min(1, Σ_{l≥1} S_l Z^l)`.
pub fn union_bhattacharyya_bound(spec: &DistanceSpectrum, ch: ChannelModel) -> Result<BoundReport> {
    let z = bhattacharyya_parameter(ch)?;
    let total = numeric::sum(
        spec.counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, &s)| if s == 0.0 { 0.0 } else { s * z.powi(l as i32) }),
    );
    let prob_bound = total.min(1.0);
    let n = spec.n();
    let exponent = if prob_bound == 0.0 {
        f64::INFINITY
    } else {
        (-prob_bound.ln() / n as f64).max(0.0)
    };
    Ok(BoundReport {
        method: BoundMethod::Union,
        n,
        rate: spec.rate(),
        exponent,
        prob_bound,
        r_star: None,
        rho_star: None,
        s_star: None,
        d_s: None,
        d_inf: None,
        partition: None,
        warnings: Vec::new(),
    })
}

struct Candidate {
    window: Option<[usize; 2]>,
    total: f64,
    c1: Option<BoundReport>,
    c2_prob_bound: f64,
}

struct Screened {
    window: Option<[usize; 2]>,
    c1: Option<(DistanceSpectrum, f64)>,
    c2_prob_bound: f64,
    /// Lower bound on the window's total, from `E_r(rate₁)` capping the
    /// first subcode's exponent.
    floor: f64,
}

const FLOOR_SLACK: f64 = 1e-9;

fn screen_window(
    spec: &DistanceSpectrum,
    rate: f64,
    e0: &E0Evaluator,
    window: Option<[usize; 2]>,
) -> Result<Option<Screened>> {
    let Some([lo, hi]) = window else {
        let union = union_bhattacharyya_bound(spec, e0.channel())?.prob_bound;
        return Ok(Some(Screened {
            window,
            c1: None,
            c2_prob_bound: union,
            floor: union,
        }));
    };
    let inside = |l: usize| (lo..=hi).contains(&l);
    let c1 = spec.restricted(inside);
    if c1.nonzero_codewords() < 1.0 {
        return Ok(None);
    }
    let c2 = spec.restricted(|l| !inside(l));
    let rate1 = if c2.nonzero_codewords() == 0.0 {
        rate
    } else {
        c1.rate()
    };
    let b2 = union_bhattacharyya_bound(&c2, e0.channel())?.prob_bound;
    let er = e0.maximize(rate1, 1.0).value;
    let b1_floor = prob_from_exponent(spec.n(), er) * (1.0 - FLOOR_SLACK);
    Ok(Some(Screened {
        window,
        c1: Some((c1, rate1)),
        c2_prob_bound: b2,
        floor: (b1_floor + b2).min(1.0),
    }))
}

fn finish_window(s: Screened, e0: &E0Evaluator) -> Result<Candidate> {
    let Some((c1, rate1)) = s.c1 else {
        return Ok(Candidate {
            window: s.window,
            total: s.c2_prob_bound,
            c1: None,
            c2_prob_bound: s.c2_prob_bound,
        });
    };
    let b1 = renyi_with(&c1, rate1, e0)?;
    Ok(Candidate {
        window: s.window,
        total: (b1.prob_bound + s.c2_prob_bound).min(1.0),
        c1: Some(b1),
        c2_prob_bound: s.c2_prob_bound,
    })
}

/// Splits the spectrum into a contiguous weight window bounded with
/// [`renyi_bound`] and its complement bounded with
/// [`union_bhattacharyya_bound`], minimizing the summed bound over windows.
/// The empty window (pure union bound) and the full window (pure Rényi
/// bound) are always candidates.
///
/// Windows are visited in order of a cheap lower bound on their total and
/// the search stops once that bound exceeds the best total found, which
/// leaves the result identical to an exhaustive search (ties go to the
/// earliest window).
pub fn partitioned_bound(
    spec: &DistanceSpectrum,
    rate: f64,
    ch: ChannelModel,
) -> Result<BoundReport> {
    let e0 = E0Evaluator::new(ch)?;
    let setup = Setup::new(spec, rate, &e0)?;
    let n = spec.n();
    let weights: Vec<usize> = (1..=n).filter(|&l| spec.counts()[l] > 0.0).collect();
    let mut windows = vec![None];
    for (i, &lo) in weights.iter().enumerate() {
        for &hi in &weights[i..] {
            windows.push(Some([lo, hi]));
        }
    }
    let screened: Vec<Option<Screened>> = windows
        .par_iter()
        .map(|&w| screen_window(spec, rate, &e0, w))
        .collect::<Result<_>>()?;
    let mut order: Vec<(usize, Screened)> = screened
        .into_iter()
        .enumerate()
        .filter_map(|(i, s)| s.map(|s| (i, s)))
        .collect();
    order.sort_by(|a, b| a.1.floor.total_cmp(&b.1.floor).then(a.0.cmp(&b.0)));

    let mut best: Option<(usize, Candidate)> = None;
    for (i, s) in order {
        if let Some((_, b)) = &best {
            if s.floor > b.total {
                break;
            }
        }
        let c = finish_window(s, &e0)?;
        let better = match &best {
            None => true,
            Some((j, b)) => c.total < b.total || (c.total == b.total && i < *j),
        };
        if better {
            best = Some((i, c));
        }
    }
    let (_, best) = best.expect("the empty window is always evaluated");

    let mut warnings = setup.warnings.clone();
    let whole = weights.first().zip(weights.last()).map(|(&a, &b)| [a, b]);
    if best.window.is_some() && best.window != whole {
        warnings.push(
            "first subcode is a proper, generally non-linear, subset of the code".into(),
        );
    }
    let exponent = if best.total == 0.0 {
        f64::INFINITY
    } else {
        (-best.total.ln() / n as f64).max(0.0)
    };
    let c1 = best.c1.as_ref();
    Ok(BoundReport {
        method: BoundMethod::Partitioned,
        n,
        rate,
        exponent,
        prob_bound: best.total,
        r_star: c1.and_then(|b| b.r_star),
        rho_star: c1.and_then(|b| b.rho_star),
        s_star: c1.and_then(|b| b.s_star),
        d_s: c1.and_then(|b| b.d_s),
        d_inf: Some(setup.d_inf),
        partition: Some(Partition {
            window: best.window,
            c1_rate: c1.map(|b| b.rate),
            c1_prob_bound: c1.map_or(0.0, |b| b.prob_bound),
            c2_prob_bound: best.c2_prob_bound,
        }),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::channel::random_coding_exponent;
    use crate::coding::spectrum::{parse_generator, spectrum_from_generator};

    fn hamming74() -> DistanceSpectrum {
        let rows = parse_generator("1000110\n0100101\n0010011\n0001111").unwrap();
        spectrum_from_generator(&rows).unwrap()
    }

    #[test]
    fn hamming_d_inf() {
        let spec = hamming74();
        let ch = ChannelModel::bsc(0.05).unwrap();
        let sf = shulman_feder_bound(&spec, spec.rate(), ch).unwrap();
        assert!((sf.d_inf.unwrap() - (128.0f64 / 15.0).ln()).abs() < 1e-12);
        assert!(sf.warnings.is_empty());
    }

    #[test]
    fn r_one_matches_shulman_feder() {
        let spec = hamming74();
        for ch in [
            ChannelModel::bsc(0.01).unwrap(),
            ChannelModel::biawgn_db(3.0).unwrap(),
        ] {
            let at_one = renyi_bound_at_r(&spec, spec.rate(), ch, 1.0).unwrap();
            let sf = shulman_feder_bound(&spec, spec.rate(), ch).unwrap();
            assert_eq!(at_one.exponent, sf.exponent);
            let full = renyi_bound(&spec, spec.rate(), ch).unwrap();
            assert!(full.exponent >= sf.exponent - 1e-12);
        }
    }

    #[test]
    fn ensemble_reduces_to_random_coding() {
        let spec = DistanceSpectrum::random_ensemble(64, 0.15).unwrap();
        let ch = ChannelModel::bsc(0.05).unwrap();
        let bound = renyi_bound(&spec, 0.15, ch).unwrap();
        let er = random_coding_exponent(ch, 0.15).unwrap();
        assert!((bound.exponent - er.value).abs() < 1e-8);
        assert_eq!(bound.r_star, Some(1.0));
    }

    #[test]
    fn union_examples() {
        let rep = DistanceSpectrum::from_pairs(5, &[(5, 1.0)]).unwrap();
        let u = union_bhattacharyya_bound(&rep, ChannelModel::bsc(0.1).unwrap()).unwrap();
        assert!((u.prob_bound - 0.6f64.powi(5)).abs() < 1e-15);
        let u = union_bhattacharyya_bound(&rep, ChannelModel::bsc(0.0).unwrap()).unwrap();
        assert_eq!(u.prob_bound, 0.0);
        assert_eq!(u.exponent, f64::INFINITY);
    }

    #[test]
    fn partition_dominated_by_pure_bounds() {
        let spec = hamming74();
        for d in [0.001, 0.01, 0.05, 0.2] {
            let ch = ChannelModel::bsc(d).unwrap();
            let part = partitioned_bound(&spec, spec.rate(), ch).unwrap();
            let renyi = renyi_bound(&spec, spec.rate(), ch).unwrap();
            let union = union_bhattacharyya_bound(&spec, ch).unwrap();
            assert!(part.prob_bound <= renyi.prob_bound.min(union.prob_bound) + 1e-15);
        }
    }

    #[test]
    fn rate_mismatch_warns() {
        let spec = hamming74();
        let r = renyi_bound(&spec, 0.2, ChannelModel::bsc(0.01).unwrap()).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(renyi_bound(&spec, -1.0, ChannelModel::bsc(0.01).unwrap()).is_err());
        let lonely = DistanceSpectrum::new(vec![1.0, 0.0]).unwrap();
        assert!(renyi_bound(&lonely, 0.0, ChannelModel::bsc(0.01).unwrap()).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let spec = hamming74();
        let r = shulman_feder_bound(&spec, spec.rate(), ChannelModel::bsc(0.05).unwrap()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"s_star\":\"inf\""));
        let back: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
