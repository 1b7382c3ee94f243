//! Scalar numerical kernels shared by the divergence, minimization and
//! bounding code: compensated summation, log-sum-exp, bisection,
//! golden-section search and adaptive quadrature.

/// Neumaier-compensated running sum. Terms are consumed strictly left to
/// right, so the result depends only on the input order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// `log Σ exp(t)` over log-domain terms. `-inf` terms are skipped; an empty
/// (or all `-inf`) input yields `-inf`. A `+inf` term yields `+inf`.
pub fn log_sum_exp(log_terms: &[f64]) -> f64 {
    let max = log_terms
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let mut acc = CompensatedSum::new();
    for &t in log_terms {
        if t > f64::NEG_INFINITY {
            acc.add((t - max).exp());
        }
    }
    max + acc.value().ln()
}

/// Bisection for the crossing of a nondecreasing function `f` with `target`
/// on `[lo, hi]`. Stops once the bracket is narrower than `width`.
pub fn bisect_increasing<F: FnMut(f64) -> f64>(
    mut f: F,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> f64 {
    for _ in 0..400 {
        if hi - lo < width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`; the endpoints are compared against the interior
/// result so that boundary optima are reported exactly.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..300 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|x| -f(x), a, b, tol);
    (x, -v)
}

/// Minimizes `f` on `[a, b]` by a uniform scan of `points` samples followed by
/// golden-section refinement on the bracket around the best sample.
pub fn scan_then_golden_min<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
) -> (f64, f64) {
    let points = points.max(3);
    let step = (b - a) / (points - 1) as f64;
    let at = |i: usize| if i == points - 1 { b } else { a + step * i as f64 };
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..points {
        let v = f(at(i));
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = at(best_i.saturating_sub(1));
    let hi = at((best_i + 1).min(points - 1));
    let (x, v) = golden_min(&mut f, lo, hi, tol);
    if v <= best_v {
        (x, v)
    } else {
        (at(best_i), best_v)
    }
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the odd-indexed Kronrod nodes
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for j in 0..7 {
        let dx = h * GK_NODES[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += KRONROD_WEIGHTS[j] * pair;
        if j % 2 == 1 {
            gauss += GAUSS_WEIGHTS[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive 15-point Gauss–Kronrod quadrature of `f` over `[a, b]` with
/// absolute error target `tol`. Subintervals are bisected depth-first and
/// summed in left-to-right order.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
        acc: &mut CompensatedSum,
    ) {
        let (value, err) = gk15(f, a, b);
        if err <= tol || depth >= 40 {
            acc.add(value);
            return;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, 0.5 * tol, depth + 1, acc);
        recurse(f, mid, b, 0.5 * tol, depth + 1, acc);
    }
    let mut acc = CompensatedSum::new();
    recurse(&f, a, b, tol, 0, &mut acc);
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let terms = [1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0];
        assert!((sum(terms) - 4e-16).abs() < 1e-30);
    }

    #[test]
    fn log_sum_exp_handles_infinities() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[0.0, f64::INFINITY]), f64::INFINITY);
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect_increasing(|x| x * x, 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn golden_reports_boundary_optimum() {
        let (x, v) = golden_max(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 1.0);
        assert_eq!(v, 1.0);
        let (x, _) = golden_min(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn quadrature_of_gaussian() {
        let v = integrate(|x| (-0.5 * x * x).exp(), -12.0, 12.0, 1e-13);
        assert!((v - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        let v = integrate(|x| x.sqrt(), 0.0, 1.0, 1e-12);
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn scan_handles_multimodal() {
        let f = |x: f64| (10.0 * x).sin() + 0.1 * x;
        let (x, _) = scan_then_golden_min(f, 0.0, 3.0, 512, 1e-12);
        // global minimum near 3pi/20 + 2pi/10 * k; smallest at k=0
        assert!((x - 0.4702).abs() < 1e-3, "{x}");
    }
}
