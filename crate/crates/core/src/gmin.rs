//! Minimum Rényi divergence under a total-variation constraint.
//!
//! `g_α(ε) = min { D_α(P1‖P2) : |P1 - P2| ≥ ε }`. The minimum is attained on
//! a binary alphabet, on the face `|p - q| = ε/2`, so everything here is a
//! one-dimensional problem in `q` with `p = q + ε/2`.
//!
//! * `α ∈ (0,1)`: `q` is the unique root of [`f_curve`]`(q) = (1-α)/α`.
//! * `α = 1`: golden-section search, the binary relative entropy being convex
//!   along the face.
//! * `α > 1`: dense scan plus golden-section refinement, since unimodality
//!   is not available.

use serde::{Deserialize, Serialize};

use crate::divergences::{binary_renyi, Order};
use crate::error::{invalid, Result};
use crate::numeric::{bisect_increasing, golden_min, scan_then_golden_min};

/// Scan resolution for orders above one.
pub const SCAN_POINTS: usize = 4096;
/// Bracket inset used by [`solve_f_root`].
pub const ROOT_BRACKET_INSET: f64 = 1e-15;
/// Final bracket width of [`solve_f_root`], relative to `q`.
pub const ROOT_WIDTH: f64 = 1e-13;
/// Roots in the lower half of the bracket are searched in `log q`, down to
/// this value.
pub const ROOT_FLOOR: f64 = 1e-300;

const GOLDEN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GMinQuery {
    alpha: f64,
    eps: f64,
}

impl GMinQuery {
    pub fn new(alpha: f64, eps: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(invalid("alpha", alpha, "must be positive and finite"));
        }
        if !(0.0..2.0).contains(&eps) {
            return Err(invalid("eps", eps, "must lie in [0, 2)"));
        }
        Ok(Self { alpha, eps })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Half the total variation: the gap `p - q` on the binary alphabet.
    pub fn half_eps(&self) -> f64 {
        0.5 * self.eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Root,
    Golden,
    Scan,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Root => "root",
            Method::Golden => "golden",
            Method::Scan => "scan",
            Method::Oracle => "oracle",
        }
    }
}

/// Value of `g_α(ε)` with a minimizing binary pair `P1 = (p, 1-p)`,
/// `P2 = (q, 1-q)`, `p ≥ q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GMinResult {
    pub alpha: f64,
    pub eps: f64,
    pub value: f64,
    pub p_star: f64,
    pub q_star: f64,
    pub method: Method,
}

impl GMinResult {
    fn on_face(query: &GMinQuery, q: f64, method: Method) -> Self {
        let p = (q + query.half_eps()).min(1.0);
        Self {
            alpha: query.alpha,
            eps: query.eps,
            value: binary_renyi(p, q, query.alpha),
            p_star: p,
            q_star: q,
            method,
        }
    }
}

fn ln_expm1(x: f64) -> f64 {
    // log(e^x - 1) for x > 0
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

fn f_curve_unchecked(alpha: f64, eps_prime: f64, q: f64) -> f64 {
    let la = (-eps_prime / (1.0 - q)).ln_1p();
    let lb = (eps_prime / q).ln_1p();
    let log_f = (alpha - 1.0) * lb - alpha * la + ln_expm1((alpha - 1.0) * (la - lb))
        - ln_expm1(alpha * (lb - la));
    log_f.exp()
}

/// The strictly increasing function whose level set `(1-α)/α` locates the
/// minimizing `q` for `α ∈ (0,1)`:
///
/// `f(q) = [(1 - ε'/(1-q))^{α-1} - (1 + ε'/q)^{α-1}] / [(1 + ε'/q)^α - (1 - ε'/(1-q))^α]`
/// on `q ∈ (0, 1-ε')`.
pub fn f_curve(alpha: f64, eps_prime: f64, q: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 1)"));
    }
    if !(eps_prime > 0.0 && eps_prime < 1.0) {
        return Err(invalid("eps_prime", eps_prime, "must lie in (0, 1)"));
    }
    if !(q > 0.0 && q < 1.0 - eps_prime) {
        return Err(invalid("q", q, "must lie in (0, 1 - eps_prime)"));
    }
    Ok(f_curve_unchecked(alpha, eps_prime, q))
}

/// Unique `q ∈ (0, 1-ε')` with `f_curve(q) = (1-α)/α`, by bisection.
pub fn solve_f_root(alpha: f64, eps_prime: f64) -> Result<f64> {
    f_curve(alpha, eps_prime, 0.5 * (1.0 - eps_prime))?;
    let target = (1.0 - alpha) / alpha;
    let f = |q: f64| f_curve_unchecked(alpha, eps_prime, q);
    let hi = 1.0 - eps_prime - ROOT_BRACKET_INSET;
    let switch = 0.5 * hi;
    if f(switch) > target {
        let u = bisect_increasing(
            |u| f(u.exp()),
            target,
            ROOT_FLOOR.ln(),
            switch.ln(),
            ROOT_WIDTH,
        );
        return Ok(u.exp());
    }
    Ok(bisect_increasing(f, target, switch, hi, ROOT_WIDTH * hi))
}

/// `g_α(ε)` with its minimizing binary pair.
pub fn g_alpha(query: GMinQuery) -> GMinResult {
    let order = Order::new(query.alpha).expect("validated order");
    let half = query.half_eps();
    let method = match order {
        Order::Finite(a) if a < 1.0 => Method::Root,
        Order::One => Method::Golden,
        _ => Method::Scan,
    };
    if query.eps == 0.0 {
        return GMinResult {
            alpha: query.alpha,
            eps: 0.0,
            value: 0.0,
            p_star: 0.5,
            q_star: 0.5,
            method,
        };
    }
    let upper = 1.0 - half;
    let objective = |q: f64| binary_renyi((q + half).min(1.0), q, query.alpha);
    let q = match method {
        Method::Root => solve_f_root(query.alpha, half).expect("validated root query"),
        Method::Golden => golden_min(objective, 0.0, upper, GOLDEN_TOL).0,
        _ => scan_then_golden_min(objective, 0.0, upper, SCAN_POINTS, GOLDEN_TOL).0,
    };
    GMinResult::on_face(&query, q, method)
}

/// Convenience wrapper validating `(alpha, eps)`.
pub fn g_value(alpha: f64, eps: f64) -> Result<f64> {
    Ok(g_alpha(GMinQuery::new(alpha, eps)?).value)
}

/// Brute-force minimum of the binary divergence over a uniform grid of
/// `grid_n` values of `q ∈ [0, 1 - ε/2]`.
pub fn g_alpha_oracle(query: GMinQuery, grid_n: usize) -> Result<GMinResult> {
    if grid_n < 100 {
        return Err(invalid("grid_n", grid_n as f64, "must be at least 100"));
    }
    let half = query.half_eps();
    let upper = 1.0 - half;
    let step = upper / (grid_n - 1) as f64;
    let mut best = (0.0, f64::INFINITY);
    for i in 0..grid_n {
        let q = if i == grid_n - 1 { upper } else { step * i as f64 };
        let v = binary_renyi((q + half).min(1.0), q, query.alpha);
        if v < best.1 {
            best = (q, v);
        }
    }
    let mut out = GMinResult::on_face(&query, best.0, Method::Oracle);
    if query.eps == 0.0 {
        out.value = 0.0;
    }
    Ok(out)
}

/// Closed forms for `α = 1/2` and `α = 2`; `None` for other orders.
pub fn g_closed_form(query: GMinQuery) -> Option<GMinResult> {
    let eps = query.eps;
    let (value, q) = if query.alpha == 0.5 {
        (-(-0.25 * eps * eps).ln_1p(), (2.0 - eps) / 4.0)
    } else if query.alpha == 2.0 {
        if eps <= 1.0 {
            ((eps * eps).ln_1p(), 0.5)
        } else {
            (-(-0.5 * eps).ln_1p(), 1.0 - 0.5 * eps)
        }
    } else {
        return None;
    };
    Some(GMinResult {
        alpha: query.alpha,
        eps,
        value,
        p_star: q + 0.5 * eps,
        q_star: q,
        method: Method::ClosedForm,
    })
}

/// Which quantity the `ε` argument of the Pinsker-type bound stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariationConvention {
    /// `ε` is the full L1 distance `Σ|P - Q| ∈ [0, 2]`.
    Full,
    /// `ε` is half the L1 distance, `sup_A |P(A) - Q(A)| ∈ [0, 1]`.
    Half,
}

impl VariationConvention {
    /// The convention under which the bound stays below `g_α` on every
    /// tested grid point.
    pub const VALIDATED: Self = VariationConvention::Half;

    fn argument(self, eps: f64) -> f64 {
        match self {
            VariationConvention::Full => eps,
            VariationConvention::Half => 0.5 * eps,
        }
    }
}

fn check_bound_args(alpha: f64, eps: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 1)"));
    }
    if !(0.0..2.0).contains(&eps) {
        return Err(invalid("eps", eps, "must lie in [0, 2)"));
    }
    Ok(())
}

/// Pinsker-type bound `½αv² + (1/9)α(1 + 5α - 5α²)v⁴`, where `v` is the
/// total variation under `convention`.
pub fn gilardoni_bound(alpha: f64, eps: f64, convention: VariationConvention) -> Result<f64> {
    check_bound_args(alpha, eps)?;
    let v = convention.argument(eps);
    let v2 = v * v;
    Ok(0.5 * alpha * v2 + alpha * (1.0 + 5.0 * alpha - 5.0 * alpha * alpha) * v2 * v2 / 9.0)
}

/// First-order term `½αv²` alone.
pub fn gilardoni_bound_weak(alpha: f64, eps: f64, convention: VariationConvention) -> Result<f64> {
    check_bound_args(alpha, eps)?;
    let v = convention.argument(eps);
    Ok(0.5 * alpha * v * v)
}

/// `c₁(α)·log(1/(1 - ε/2)) + c₂(α)` with `c₁ = min{1, α/(1-α)}` and
/// `c₂ = -log 2/(1-α)`.
pub fn g_lower_bound(alpha: f64, eps: f64) -> Result<f64> {
    check_bound_args(alpha, eps)?;
    let c1 = (alpha / (1.0 - alpha)).min(1.0);
    let c2 = -std::f64::consts::LN_2 / (1.0 - alpha);
    Ok(-c1 * (-0.5 * eps).ln_1p() + c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(alpha: f64, eps: f64) -> GMinQuery {
        GMinQuery::new(alpha, eps).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(GMinQuery::new(0.0, 1.0).is_err());
        assert!(GMinQuery::new(0.5, 2.0).is_err());
        assert!(GMinQuery::new(0.5, -0.1).is_err());
        assert!(GMinQuery::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn f_curve_limits_and_value() {
        assert!(f_curve(0.5, 0.4, 1e-9).unwrap() < 1e-3);
        assert!(f_curve(0.3, 0.4, 1e-15).unwrap() < 1e-3);
        assert!(f_curve(0.3, 0.4, 1.0 - 0.4 - 1e-9).unwrap() > 1e3);
        assert!((f_curve(0.5, 0.5, 0.25).unwrap() - 1.0).abs() < 1e-14);
        assert!(f_curve(0.5, 0.5, 0.5).is_err());
        assert!(f_curve(0.5, 0.5, 0.0).is_err());
        assert!(f_curve(1.0, 0.5, 0.2).is_err());
    }

    #[test]
    fn f_curve_matches_direct_formula() {
        let (a, e, x): (f64, f64, f64) = (0.37, 0.22, 0.41);
        let lo = 1.0 - e / (1.0 - x);
        let hi = 1.0 + e / x;
        let direct = (lo.powf(a - 1.0) - hi.powf(a - 1.0)) / (hi.powf(a) - lo.powf(a));
        assert!((f_curve(a, e, x).unwrap() - direct).abs() < 1e-13 * direct);
    }

    #[test]
    fn root_examples() {
        assert!((solve_f_root(0.5, 0.5).unwrap() - 0.25).abs() < 1e-12);
        assert!((solve_f_root(0.5, 0.9).unwrap() - 0.05).abs() < 1e-12);
        for (a, e) in [(0.1, 0.3), (0.8, 0.95), (0.33, 0.01)] {
            let r = solve_f_root(a, e).unwrap();
            let f = f_curve(a, e, r).unwrap();
            let target = (1.0 - a) / a;
            assert!((f - target).abs() < 1e-9 * target.max(1.0), "{a} {e}: {f}");
        }
    }

    #[test]
    fn g_alpha_examples() {
        for a in [0.3, 1.0, 2.0] {
            let r = g_alpha(q(a, 0.0));
            assert_eq!(r.value, 0.0);
            assert_eq!(r.p_star, r.q_star);
        }
        let r = g_alpha(q(0.5, 1.0));
        assert_eq!(r.method, Method::Root);
        assert!((r.value + 0.75f64.ln()).abs() < 1e-12);
        assert!((r.p_star - 0.75).abs() < 1e-10 && (r.q_star - 0.25).abs() < 1e-10);
        let r = g_alpha(q(2.0, 1.0));
        assert_eq!(r.method, Method::Scan);
        assert!((r.value - 2f64.ln()).abs() < 1e-9);
        assert!((g_alpha(q(2.0, 1.5)).value - 4f64.ln()).abs() < 1e-9);
        let lhs = g_alpha(q(0.25, 1.2)).value;
        let rhs = g_alpha(q(0.75, 1.2)).value / 3.0;
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_order_uses_golden() {
        let r = g_alpha(q(1.0, 1.0));
        assert_eq!(r.method, Method::Golden);
        let oracle = g_alpha_oracle(q(1.0, 1.0), 100_000).unwrap();
        assert!(r.value <= oracle.value + 1e-12);
        assert!((r.value - oracle.value).abs() < 1e-6);
    }

    #[test]
    fn oracle_examples() {
        let r = g_alpha_oracle(q(0.5, 1.0), 100_000).unwrap();
        assert!((r.value + 0.75f64.ln()).abs() < 1e-4);
        let r = g_alpha_oracle(q(0.9, 1.4), 100_000).unwrap();
        assert!((r.value - g_alpha(q(0.9, 1.4)).value).abs() < 1e-4);
        assert_eq!(g_alpha_oracle(q(0.9, 0.0), 100).unwrap().value, 0.0);
        assert!(g_alpha_oracle(q(0.9, 0.5), 10).is_err());
    }

    #[test]
    fn result_invariants() {
        for (a, e) in [(0.2, 0.7), (0.9, 1.9), (1.0, 0.3), (3.0, 1.2)] {
            let r = g_alpha(q(a, e));
            assert!((r.p_star - r.q_star - e / 2.0).abs() < 1e-9);
            assert!((binary_renyi(r.p_star, r.q_star, a) - r.value).abs() < 1e-8);
        }
    }

    #[test]
    fn closed_forms() {
        let c = g_closed_form(q(2.0, 0.6)).unwrap();
        assert!((binary_renyi(c.p_star, c.q_star, 2.0) - c.value).abs() < 1e-14);
        let c = g_closed_form(q(2.0, 1.6)).unwrap();
        assert!((binary_renyi(c.p_star, c.q_star, 2.0) - c.value).abs() < 1e-14);
        assert!(g_closed_form(q(0.7, 1.0)).is_none());
    }

    #[test]
    fn gilardoni_conventions() {
        use VariationConvention::*;
        assert_eq!(gilardoni_bound(0.4, 0.0, Half).unwrap(), 0.0);
        // with the full L1 distance the bound overshoots g_{1/2}(1)
        let full = gilardoni_bound(0.5, 1.0, Full).unwrap();
        assert!((full - 0.375).abs() < 1e-15);
        assert!(full > g_value(0.5, 1.0).unwrap());
        assert!(gilardoni_bound(0.5, 1.0, Half).unwrap() < g_value(0.5, 1.0).unwrap());
        assert!(gilardoni_bound_weak(0.5, 1.0, Half).unwrap() < gilardoni_bound(0.5, 1.0, Half).unwrap());
        assert!(gilardoni_bound(1.0, 1.0, Half).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let v = g_lower_bound(0.5, 1.9).unwrap();
        assert!((v - (20f64.ln() - 2.0 * 2f64.ln())).abs() < 1e-12);
        assert!(g_lower_bound(0.5, 2.0 - 1e-9).unwrap() > 10.0);
        for a in [0.1, 0.5, 0.9] {
            for e in [0.1, 1.0, 1.9] {
                assert!(g_lower_bound(a, e).unwrap() <= g_value(a, e).unwrap());
            }
        }
    }
}
