//! Joint range of `(D(Q‖P1), D(Q‖P2))` when `|P1 - P2| ≥ ε`.
//!
//! In the plane `x = D(Q‖P1)`, `y = D(Q‖P2)` every admissible triple satisfies
//!
//! ```text
//! y + (α/(1-α))·x ≥ g_α(ε)    for all α ∈ (0,1)
//! ```
//!
//! and the region is exactly the set of points above the pointwise maximum of
//! these lines. Each tangency point is realized by binary `P1`, `P2` minimizing
//! `D_α` under the constraint, with `Q` the tilted measure `∝ P1^α P2^{1-α}`.
//!
//! Searches over α run on `t = α/(1-α)` in log scale; α is kept inside
//! `[ALPHA_MIN, ALPHA_MAX]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergences::{relative_entropy, tilted_measure, Distribution};
use crate::error::{invalid, Error, Result};
use crate::gmin::{g_alpha, GMinQuery};
use crate::numeric::{bisect_increasing, golden_max};

pub const ALPHA_MIN: f64 = 1e-6;
pub const ALPHA_MAX: f64 = 1.0 - 1e-6;
/// Scan resolution of [`Locus::envelope`].
pub const ENVELOPE_GRID: usize = 512;
/// Scan resolution of [`Locus::contains`].
pub const CONTAINS_GRID: usize = 1024;
/// Default tolerance of [`contains`].
pub const DEFAULT_TOL: f64 = 1e-9;

fn log_t_min() -> f64 {
    (ALPHA_MIN / (1.0 - ALPHA_MIN)).ln()
}

fn log_t_max() -> f64 {
    (ALPHA_MAX / (1.0 - ALPHA_MAX)).ln()
}

fn alpha_of_log_t(u: f64) -> f64 {
    // α = t/(1+t), written to stay accurate at both ends
    1.0 / (1.0 + (-u).exp())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 2.0) {
        return Err(invalid("eps", eps, "must lie in (0, 2)"));
    }
    Ok(())
}

/// Line `y = intercept + slope·x` with `slope = -α/(1-α)` and
/// `intercept = g_α(ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryLine {
    pub alpha: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl BoundaryLine {
    pub fn y_at(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// Where the line meets `y = 0`.
    pub fn x_intercept(&self) -> f64 {
        -self.intercept / self.slope
    }
}

pub fn boundary_line(eps: f64, alpha: f64) -> Result<BoundaryLine> {
    check_eps(eps)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 1)"));
    }
    let g = g_alpha(GMinQuery::new(alpha, eps)?);
    Ok(BoundaryLine {
        alpha,
        slope: -alpha / (1.0 - alpha),
        intercept: g.value,
    })
}

/// Envelope height at some `x`, with the tangent order that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoint {
    pub y: f64,
    pub alpha: f64,
    /// A second, non-adjacent grid order reached the same height (within
    /// 1e-12); `alpha` is then the smallest such order.
    pub degenerate: bool,
}

/// The locus for one value of `ε`, with `g_α(ε)` tabulated on a log grid
/// of `t = α/(1-α)`.
#[derive(Debug, Clone)]
pub struct Locus {
    eps: f64,
    g_one: f64,
    log_t: Vec<f64>,
    g: Vec<f64>,
}

impl Locus {
    pub fn new(eps: f64) -> Result<Self> {
        Self::with_grid(eps, CONTAINS_GRID)
    }

    fn with_grid(eps: f64, n: usize) -> Result<Self> {
        check_eps(eps)?;
        let (lo, hi) = (log_t_min(), log_t_max());
        let log_t: Vec<f64> = (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect();
        let g = log_t
            .iter()
            .map(|&u| g_at(eps, alpha_of_log_t(u)))
            .collect();
        let g_one = g_alpha(GMinQuery::new(1.0, eps)?).value;
        Ok(Self {
            eps,
            g_one,
            log_t,
            g,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Minimum relative entropy `g_1(ε)`: the envelope's value at `x = 0`
    /// and its zero crossing on the x-axis.
    pub fn g_one(&self) -> f64 {
        self.g_one
    }

    /// `sup_α [g_α(ε) - (α/(1-α))·x]`, clipped at 0.
    pub fn envelope(&self, x: f64) -> EnvelopePoint {
        if x <= 0.0 {
            return EnvelopePoint {
                y: self.g_one,
                alpha: 1.0,
                degenerate: false,
            };
        }
        let (u, v, degenerate) = self.sup_lines(x);
        EnvelopePoint {
            y: v.max(0.0),
            alpha: alpha_of_log_t(u),
            degenerate,
        }
    }

    /// Whether `(x, y)` satisfies every line constraint up to `tol`.
    pub fn contains(&self, x: f64, y: f64, tol: f64) -> bool {
        if x < 0.0 || y < 0.0 {
            return false;
        }
        if x == 0.0 {
            return y >= self.g_one - tol;
        }
        let (_, v, _) = self.sup_lines(x);
        y >= v - tol
    }

    fn sup_lines(&self, x: f64) -> (f64, f64, bool) {
        let line = |i: usize| self.g[i] - self.log_t[i].exp() * x;
        let n = self.log_t.len();
        let mut best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for i in 0..n {
            let v = line(i);
            if v > best_v {
                best_v = v;
                best = i;
            }
        }
        let degenerate = (0..n)
            .filter(|i| i.abs_diff(best) > 1)
            .any(|i| line(i) >= best_v - 1e-12);
        let lo = self.log_t[best.saturating_sub(1)];
        let hi = self.log_t[(best + 1).min(n - 1)];
        let eps = self.eps;
        let (u, v) = golden_max(
            |u| g_at(eps, alpha_of_log_t(u)) - u.exp() * x,
            lo,
            hi,
            1e-12,
        );
        if v >= best_v {
            (u, v, degenerate)
        } else {
            (self.log_t[best], best_v, degenerate)
        }
    }
}

fn g_at(eps: f64, alpha: f64) -> f64 {
    g_alpha(GMinQuery::new(alpha, eps).expect("alpha and eps in range")).value
}

/// Envelope height at `x ≥ 0`.
pub fn envelope_y(eps: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(invalid("x", x, "must be nonnegative"));
    }
    Ok(Locus::with_grid(eps, ENVELOPE_GRID)?.envelope(x).y)
}

/// Membership test for the closed region.
pub fn contains(eps: f64, x: f64, y: f64, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(invalid("tol", tol, "must be positive"));
    }
    Ok(Locus::new(eps)?.contains(x, y, tol))
}

/// Binary triple attaining a point of the locus boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessTriple {
    /// Total variation of `(p1_star, p2_star)`.
    pub eps: f64,
    pub alpha: f64,
    pub p1_star: Distribution,
    pub p2_star: Distribution,
    pub q_star: Distribution,
    /// `(D(Q‖P1), D(Q‖P2))`.
    pub point: (f64, f64),
    /// The requested order fell outside `[ALPHA_MIN, ALPHA_MAX]` and was
    /// clamped, so the point only approximates the requested tangency.
    pub clamped: bool,
}

impl WitnessTriple {
    pub fn slope(&self) -> f64 {
        -self.alpha / (1.0 - self.alpha)
    }

    fn build(eps: f64, alpha: f64, p: f64, q: f64, clamped: bool) -> Result<Self> {
        let p1 = Distribution::binary(p)?;
        let p2 = Distribution::binary(q)?;
        let tilted = tilted_measure(&p1, &p2, alpha)?;
        let point = (
            relative_entropy(&tilted, &p1)?,
            relative_entropy(&tilted, &p2)?,
        );
        Ok(Self {
            eps,
            alpha,
            p1_star: p1,
            p2_star: p2,
            q_star: tilted,
            point,
            clamped,
        })
    }
}

fn witness_at_alpha(eps: f64, alpha: f64) -> Result<WitnessTriple> {
    let clamped_alpha = alpha.clamp(ALPHA_MIN, ALPHA_MAX);
    let g = g_alpha(GMinQuery::new(clamped_alpha, eps)?);
    WitnessTriple::build(
        eps,
        clamped_alpha,
        g.p_star,
        g.q_star,
        clamped_alpha != alpha,
    )
}

/// Tangency triple for the boundary line of slope `slope < 0`.
pub fn witness_triple(eps: f64, slope: f64) -> Result<WitnessTriple> {
    check_eps(eps)?;
    if !(slope < 0.0) || !slope.is_finite() {
        return Err(invalid("slope", slope, "must be negative and finite"));
    }
    witness_at_alpha(eps, -slope / (1.0 - slope))
}

/// `n_points` tangency points ordered by increasing `x`, from slopes
/// log-spaced symmetrically about -1.
pub fn boundary_polyline(eps: f64, n_points: usize) -> Result<Vec<WitnessTriple>> {
    check_eps(eps)?;
    if n_points < 2 {
        return Err(invalid("n_points", n_points as f64, "must be at least 2"));
    }
    let top = log_t_max();
    (0..n_points)
        .into_par_iter()
        .map(|i| {
            let u = top * (1.0 - 2.0 * i as f64 / (n_points - 1) as f64);
            witness_at_alpha(eps, alpha_of_log_t(u))
        })
        .collect()
}

/// Witness for an arbitrary point of the region: finds the larger
/// `ε̄ ≥ ε` whose boundary passes through `(x, y)` and the tangent order
/// there.
pub fn witness_for_point(eps: f64, x: f64, y: f64) -> Result<WitnessTriple> {
    let outside = Error::PointOutsideRegion { eps, x, y };
    if !contains(eps, x, y, DEFAULT_TOL)? {
        return Err(outside);
    }
    let height = |e: f64| -> Result<f64> { Ok(Locus::with_grid(e, ENVELOPE_GRID)?.envelope(x).y) };

    let mut lo = eps;
    let mut eps_bar = eps;
    if height(eps)? < y - DEFAULT_TOL {
        let mut hi = None;
        for k in 1..=52 {
            let cand = 2.0 - 2f64.powi(-k);
            if cand <= lo {
                continue;
            }
            if height(cand)? >= y {
                hi = Some(cand);
                break;
            }
            lo = cand;
        }
        let mut hi = hi.ok_or_else(|| {
            Error::Numerical(format!("no eps below 2 reaches height {y} at x = {x}"))
        })?;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let h = height(mid)?;
            if (h - y).abs() < DEFAULT_TOL {
                lo = mid;
                hi = mid;
                break;
            }
            if h < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eps_bar = 0.5 * (lo + hi);
    }

    // the tangency x-coordinate decreases as α increases
    if x <= 0.0 {
        return witness_at_alpha(eps_bar, 1.0);
    }
    if y <= 0.0 {
        return witness_at_alpha(eps_bar, 0.0);
    }
    let x_of = |u: f64| -> f64 {
        witness_at_alpha(eps_bar, alpha_of_log_t(u))
            .map(|w| -w.point.0)
            .unwrap_or(f64::NAN)
    };
    let u = bisect_increasing(x_of, -x, log_t_min(), log_t_max(), 1e-13);
    witness_at_alpha(eps_bar, alpha_of_log_t(u))
}

/// Minimum Chernoff information under `|P1 - P2| ≥ ε`, located where the
/// boundary meets `x = y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernoffMin {
    pub eps: f64,
    pub value: f64,
    pub witness: WitnessTriple,
}

/// `-½·log(1 - ε²/4)`, attained by `P1(0) = (2+ε)/4`, `P2(0) = (2-ε)/4` and
/// the uniform `Q`.
pub fn chernoff_min(eps: f64) -> Result<ChernoffMin> {
    check_eps(eps)?;
    let value = -0.5 * (-0.25 * eps * eps).ln_1p();
    let witness = WitnessTriple::build(eps, 0.5, (2.0 + eps) / 4.0, (2.0 - eps) / 4.0, false)?;
    Ok(ChernoffMin {
        eps,
        value,
        witness,
    })
}
