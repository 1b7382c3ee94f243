//! Divergences between finite probability vectors, in nats.
//!
//! Conventions: `0 · log 0 = 0` and `0^0 = 1`. Sums run left to right with
//! compensation; Rényi power sums are evaluated as log-sum-exp.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::{self, golden_max, log_sum_exp};

/// Tolerance on `Σ p = 1` accepted by [`Distribution::new`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Orders within this distance of 1 are evaluated as relative entropy.
pub const ORDER_ONE_SNAP: f64 = 1e-9;

/// A probability vector over an ordered finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {bad} is not a finite nonnegative number"
            )));
        }
        let total = numeric::sum(probs.iter().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, not 1"
            )));
        }
        Ok(Self(probs))
    }

    /// Normalizes nonnegative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total = numeric::sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    /// The two-point distribution `(p, 1 - p)`.
    pub fn binary(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid("p", p, "must lie in [0, 1]"));
        }
        Ok(Self(vec![p, 1.0 - p]))
    }

    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        Ok(Self(vec![1.0 / size as f64; size]))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(i, _)| i)
    }

    /// Mutual absolute continuity on a finite alphabet: identical supports.
    pub fn same_support(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (*a > 0.0) == (*b > 0.0))
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Self {
        d.0
    }
}

/// Order of a Rényi divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Zero,
    /// Any order in `(0, 1) ∪ (1, ∞)`.
    Finite(f64),
    One,
    Infinity,
}

impl Order {
    /// Classifies `alpha`, snapping values within [`ORDER_ONE_SNAP`] of 1 to
    /// [`Order::One`].
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(invalid("alpha", alpha, "order must be nonnegative"));
        }
        Ok(if alpha == 0.0 {
            Order::Zero
        } else if alpha == f64::INFINITY {
            Order::Infinity
        } else if (alpha - 1.0).abs() < ORDER_ONE_SNAP {
            Order::One
        } else {
            Order::Finite(alpha)
        })
    }

    pub fn value(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::Finite(a) => a,
            Order::One => 1.0,
            Order::Infinity => f64::INFINITY,
        }
    }
}

fn check_sizes(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

pub fn total_variation(p: &Distribution, q: &Distribution) -> Result<f64> {
    check_sizes(p, q)?;
    Ok(numeric::sum(
        p.0.iter().zip(&q.0).map(|(a, b)| (a - b).abs()),
    ))
}

pub(crate) fn kl_slices(p: &[f64], q: &[f64]) -> f64 {
    if p == q {
        return 0.0;
    }
    let mut acc = numeric::CompensatedSum::new();
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return f64::INFINITY;
            }
            acc.add(a * (a / b).ln());
        }
    }
    acc.value().max(0.0)
}

/// `log Σ p^α q^{1-α}` over the alphabet, or `+inf` if a term is unbounded.
pub(crate) fn log_power_sum(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 0.5 {
        if let Some(v) = log_power_sum_near_one(p, q, alpha) {
            return v;
        }
    }
    let mut terms = Vec::with_capacity(p.len());
    for (&a, &b) in p.iter().zip(q) {
        if a <= 0.0 {
            // p^α = 0 for α > 0
            continue;
        }
        if b <= 0.0 {
            if alpha > 1.0 {
                return f64::INFINITY;
            }
            if alpha < 1.0 {
                continue;
            }
        }
        terms.push(alpha * a.ln() + (1.0 - alpha) * b.ln());
    }
    log_sum_exp(&terms)
}

/// Near order one, `Σ p^α q^{1-α} = 1 + Σ p·expm1((α-1)·log(p/q))` keeps the
/// small deviation from 1 without cancellation. `None` when the sum is too
/// far below 1 for `ln_1p` to be accurate.
fn log_power_sum_near_one(p: &[f64], q: &[f64], alpha: f64) -> Option<f64> {
    let mut acc = numeric::CompensatedSum::new();
    for (&a, &b) in p.iter().zip(q) {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            if alpha > 1.0 {
                return Some(f64::INFINITY);
            }
            acc.add(-a);
            continue;
        }
        acc.add(a * ((alpha - 1.0) * (a.ln() - b.ln())).exp_m1());
    }
    let s = acc.value();
    (s.is_finite() && s > -0.5).then(|| s.ln_1p())
}

pub(crate) fn renyi_slices(p: &[f64], q: &[f64], order: Order) -> f64 {
    if p == q {
        return 0.0;
    }
    match order {
        Order::Zero => {
            let mass = numeric::sum(
                p.iter()
                    .zip(q)
                    .filter(|(a, _)| **a > 0.0)
                    .map(|(_, b)| *b),
            );
            (-mass.min(1.0).ln()).max(0.0)
        }
        Order::One => kl_slices(p, q),
        Order::Infinity => {
            let mut best = f64::NEG_INFINITY;
            for (&a, &b) in p.iter().zip(q) {
                if a > 0.0 {
                    if b <= 0.0 {
                        return f64::INFINITY;
                    }
                    best = best.max(a.ln() - b.ln());
                }
            }
            best.max(0.0)
        }
        Order::Finite(alpha) => {
            let lps = log_power_sum(p, q, alpha);
            if lps.is_infinite() {
                // +inf for α > 1 (P not ≪ Q), -inf for α < 1 (disjoint supports)
                return f64::INFINITY;
            }
            (lps / (alpha - 1.0)).max(0.0)
        }
    }
}

pub fn relative_entropy(p: &Distribution, q: &Distribution) -> Result<f64> {
    check_sizes(p, q)?;
    Ok(kl_slices(&p.0, &q.0))
}

pub fn renyi_divergence(p: &Distribution, q: &Distribution, order: Order) -> Result<f64> {
    check_sizes(p, q)?;
    Ok(renyi_slices(&p.0, &q.0, order))
}

/// Hellinger divergence of order `alpha ∈ (0,1) ∪ (1,∞)`.
pub fn hellinger_divergence(p: &Distribution, q: &Distribution, alpha: f64) -> Result<f64> {
    check_sizes(p, q)?;
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(invalid("alpha", alpha, "must be positive, finite and not 1"));
    }
    let lps = log_power_sum(&p.0, &q.0, alpha);
    if lps == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(lps.exp_m1() / (alpha - 1.0))
}

/// Rényi divergence between `(p, 1-p)` and `(q, 1-q)`.
///
/// Shares the evaluation path of [`renyi_divergence`], so both agree bit for
/// bit. `alpha` is classified with [`Order::new`].
pub fn binary_renyi(p: f64, q: f64, alpha: f64) -> f64 {
    let order = Order::new(alpha).unwrap_or(Order::Finite(alpha));
    renyi_slices(&[p, 1.0 - p], &[q, 1.0 - q], order)
}

/// Binary relative entropy `d(p‖q)`.
pub fn binary_relative_entropy(p: f64, q: f64) -> f64 {
    kl_slices(&[p, 1.0 - p], &[q, 1.0 - q])
}

/// The normalized geometric mixture `Q_α ∝ P1^α P2^{1-α}`.
pub fn tilted_measure(p1: &Distribution, p2: &Distribution, alpha: f64) -> Result<Distribution> {
    check_sizes(p1, p2)?;
    if !alpha.is_finite() {
        return Err(invalid("alpha", alpha, "must be finite"));
    }
    if !p1.same_support(p2) {
        return Err(Error::SupportMismatch);
    }
    let logs: Vec<f64> =
        p1.0.iter()
            .zip(&p2.0)
            .map(|(&a, &b)| {
                if a > 0.0 {
                    alpha * a.ln() + (1.0 - alpha) * b.ln()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
    let norm = log_sum_exp(&logs);
    let probs: Vec<f64> = logs.iter().map(|l| (l - norm).exp()).collect();
    // renormalize to absorb the last ulp of rounding
    let total = numeric::sum(probs.iter().copied());
    Distribution::new(probs.into_iter().map(|x| x / total).collect())
}

/// Chernoff information together with its maximizing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chernoff {
    pub value: f64,
    pub alpha: f64,
}

/// `max_{α∈[0,1]} -log Σ P1^α P2^{1-α}`; the objective is concave in α.
pub fn chernoff_information(p1: &Distribution, p2: &Distribution) -> Result<Chernoff> {
    check_sizes(p1, p2)?;
    if !p1.same_support(p2) {
        return Err(Error::SupportMismatch);
    }
    let (alpha, value) = golden_max(|a| -log_power_sum(&p1.0, &p2.0, a), 0.0, 1.0, 1e-10);
    Ok(Chernoff {
        value: value.max(0.0),
        alpha,
    })
}

/// Two-point reduction by the sign of `P1(x) - P2(x)`: symbol 0 collects the
/// letters where `P1 ≥ P2`. Total variation is preserved exactly.
pub fn binary_reduction(p1: &Distribution, p2: &Distribution) -> Result<(Distribution, Distribution)> {
    check_sizes(p1, p2)?;
    let mut a = numeric::CompensatedSum::new();
    let mut b = numeric::CompensatedSum::new();
    for (&x, &y) in p1.0.iter().zip(&p2.0) {
        if x >= y {
            a.add(x);
            b.add(y);
        }
    }
    let (a, b) = (a.value().clamp(0.0, 1.0), b.value().clamp(0.0, 1.0));
    Ok((Distribution::binary(a)?, Distribution::binary(b)?))
}
