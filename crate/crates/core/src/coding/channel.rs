use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric;

/// Absolute error target for the BIAWGN integral.
pub const QUADRATURE_TOL: f64 = 1e-13;
/// Half-width of the BIAWGN integration range, in noise standard deviations.
pub const GAUSSIAN_SPAN: f64 = 12.0;
/// Resolution of the golden-section search over `ρ`.
pub const RHO_TOL: f64 = 1e-11;

/// A memoryless binary-input output-symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelModel {
    /// Binary symmetric channel with crossover probability in `[0, 1/2]`.
    Bsc { crossover: f64 },
    /// Antipodal `±1` signaling in Gaussian noise; `es_n0` is a linear ratio.
    #[serde(rename = "biawgn")]
    BiAwgn { es_n0: f64 },
}

impl ChannelModel {
    pub fn bsc(crossover: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&crossover) {
            return Err(invalid("crossover", crossover, "must lie in [0, 1/2]"));
        }
        Ok(Self::Bsc { crossover })
    }

    pub fn biawgn(es_n0: f64) -> Result<Self> {
        if !(es_n0 > 0.0 && es_n0.is_finite()) {
            return Err(invalid("es_n0", es_n0, "must be positive and finite"));
        }
        Ok(Self::BiAwgn { es_n0 })
    }

    pub fn biawgn_db(es_n0_db: f64) -> Result<Self> {
        if !es_n0_db.is_finite() {
            return Err(invalid("es_n0_db", es_n0_db, "must be finite"));
        }
        Self::biawgn(10f64.powf(es_n0_db / 10.0))
    }

    fn validate(self) -> Result<Self> {
        match self {
            Self::Bsc { crossover } => Self::bsc(crossover),
            Self::BiAwgn { es_n0 } => Self::biawgn(es_n0),
        }
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bsc { crossover } => write!(f, "bsc:{crossover}"),
            Self::BiAwgn { es_n0 } => {
                let db = 10.0 * es_n0.log10();
                write!(f, "biawgn:{}", (db * 1e9).round() / 1e9)
            }
        }
    }
}

impl FromStr for ChannelModel {
    type Err = Error;

    /// Parses `bsc:<delta>` or `biawgn:<EsN0 in dB>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidChannel(format!(
                "`{s}`: expected bsc:<delta> or biawgn:<EsN0_dB>"
            ))
        };
        let (kind, value) = s.split_once(':').ok_or_else(bad)?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "bsc" => Self::bsc(value),
            "biawgn" => Self::biawgn_db(value),
            _ => Err(bad()),
        }
    }
}

/// Gallager's `E₀(ρ)` for the uniform input distribution, in nats.
pub fn gallager_e0(ch: ChannelModel, rho: f64) -> Result<f64> {
    let ch = ch.validate()?;
    if !(0.0..=1.0).contains(&rho) {
        return Err(invalid("rho", rho, "must lie in [0, 1]"));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    Ok(e0_unchecked(ch, rho))
}

pub(crate) fn e0_unchecked(ch: ChannelModel, rho: f64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    let a = 1.0 / (1.0 + rho);
    let value = match ch {
        ChannelModel::Bsc { crossover: d } => {
            let lse = numeric::log_sum_exp(&[a * d.ln(), a * (-d).ln_1p()]);
            rho * std::f64::consts::LN_2 - (1.0 + rho) * lse
        }
        ChannelModel::BiAwgn { es_n0 } => -biawgn_integral(es_n0, a).ln(),
    };
    value.max(0.0)
}

// ∫ [½W(y|0)^a + ½W(y|1)^a]^{1/a} dy, using symmetry about y = 0
fn biawgn_integral(es_n0: f64, a: f64) -> f64 {
    let var = 0.5 / es_n0;
    let sigma = var.sqrt();
    let log_norm = 0.5 * (2.0 * std::f64::consts::PI * var).ln();
    let integrand = |y: f64| {
        let l0 = -a * (y - 1.0).powi(2) / (2.0 * var);
        let l1 = -a * (y + 1.0).powi(2) / (2.0 * var);
        let (hi, lo) = if l0 >= l1 { (l0, l1) } else { (l1, l0) };
        let log_mix = hi + (0.5 * (1.0 + (lo - hi).exp())).ln();
        (log_mix / a - log_norm).exp()
    };
    let top = 1.0 + GAUSSIAN_SPAN * sigma;
    let inner = numeric::integrate(integrand, 0.0, 1.0, 0.25 * QUADRATURE_TOL);
    let outer = numeric::integrate(integrand, 1.0, top, 0.25 * QUADRATURE_TOL);
    2.0 * (inner + outer)
}

/// Bhattacharyya parameter `Z = Σ_y √(W(y|0)W(y|1))`.
pub fn bhattacharyya_parameter(ch: ChannelModel) -> Result<f64> {
    Ok(match ch.validate()? {
        ChannelModel::Bsc { crossover: d } => 2.0 * (d * (1.0 - d)).sqrt(),
        ChannelModel::BiAwgn { es_n0 } => (-es_n0).exp(),
    })
}

/// Number of Chebyshev nodes used to tabulate a BIAWGN `E₀` on `[0, 1]`.
pub const E0_TABLE_NODES: usize = 64;

/// Fast evaluator of `E₀(ρ)` for repeated use on one channel. BSC values
/// come from the closed form; BIAWGN values from a Chebyshev interpolant of
/// the quadrature.
#[derive(Debug, Clone)]
pub struct E0Evaluator {
    ch: ChannelModel,
    cheb: Option<Vec<f64>>,
}

impl E0Evaluator {
    pub fn new(ch: ChannelModel) -> Result<Self> {
        let ch = ch.validate()?;
        let cheb = match ch {
            ChannelModel::Bsc { .. } => None,
            ChannelModel::BiAwgn { .. } => Some(chebyshev_coefficients(|rho| {
                e0_unchecked(ch, rho)
            })),
        };
        Ok(Self { ch, cheb })
    }

    pub fn channel(&self) -> ChannelModel {
        self.ch
    }

    pub fn e0(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        match &self.cheb {
            None => e0_unchecked(self.ch, rho),
            Some(c) => clenshaw(c, 2.0 * rho - 1.0).max(0.0),
        }
    }

    /// Maximizer of `E₀(ρ) − ρ·rate` over `ρ ∈ [0, rho_max]`.
    pub fn maximize(&self, rate: f64, rho_max: f64) -> ExponentPoint {
        let (rho, value) =
            numeric::golden_max(|rho| self.e0(rho) - rho * rate, 0.0, rho_max, RHO_TOL);
        ExponentPoint {
            value: value.max(0.0),
            rho,
        }
    }
}

fn chebyshev_coefficients<F: Fn(f64) -> f64>(f: F) -> Vec<f64> {
    let m = E0_TABLE_NODES;
    let theta = |k: usize| std::f64::consts::PI * (k as f64 + 0.5) / m as f64;
    let values: Vec<f64> = (0..m).map(|k| f(0.5 * (theta(k).cos() + 1.0))).collect();
    (0..m)
        .map(|j| {
            let s = numeric::sum(
                values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * (j as f64 * theta(k)).cos()),
            );
            2.0 * s / m as f64
        })
        .collect()
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &cj in c[1..].iter().rev() {
        let b0 = 2.0 * x * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + 0.5 * c[0]
}

/// Maximizer of `E₀(ρ) − ρ·rate` over `ρ ∈ [0, rho_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPoint {
    pub value: f64,
    pub rho: f64,
}

fn maximize_direct(ch: ChannelModel, rate: f64, rho_max: f64) -> ExponentPoint {
    let (rho, value) = numeric::golden_max(
        |rho| e0_unchecked(ch, rho) - rho * rate,
        0.0,
        rho_max,
        RHO_TOL,
    );
    ExponentPoint {
        value: value.max(0.0),
        rho,
    }
}

/// Random-coding exponent `E_r(rate) = max_{ρ∈[0,1]} E₀(ρ) − ρ·rate`.
pub fn random_coding_exponent(ch: ChannelModel, rate: f64) -> Result<ExponentPoint> {
    let ch = ch.validate()?;
    if !(rate >= 0.0) {
        return Err(invalid("rate", rate, "must be nonnegative"));
    }
    Ok(maximize_direct(ch, rate, 1.0))
}
