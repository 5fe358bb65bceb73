//! Reference computations for tests. Nothing here calls into `nigar`: every
//! value is recomputed from definitions (quadrature, brute force, dense
//! linear solves) so it can serve as an independent oracle.

use nalgebra::{DMatrix, DVector};

const ABS_TOL: f64 = 1e-14;

/// Tanh-sinh integral of `f` over `[a, b]`, split into `pieces` equal parts.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = a + i as f64 * h;
            quadrature::integrate(&f, lo, lo + h, ABS_TOL).integral
        })
        .sum()
}

/// Integral over the whole real line via `x = c + s·t/(1 − t²)`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, center: f64, scale: f64) -> f64 {
    let g = |t: f64| {
        let one_m = 1.0 - t * t;
        if one_m <= 0.0 {
            return 0.0;
        }
        let x = center + scale * t / one_m;
        let v = f(x) * scale * (1.0 + t * t) / (one_m * one_m);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, -1.0, 1.0, 16)
}

/// Integral over `(0, ∞)` via `x = s·t/(1 − t)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, scale: f64) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 || t <= 0.0 {
            return 0.0;
        }
        let x = scale * t / (1.0 - t);
        let v = f(x) * scale / ((1.0 - t) * (1.0 - t));
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, 16)
}

/// Inverse Gaussian density `δ/√(2π) e^{δγ} x^{−3/2} e^{−(δ²/x + γ²x)/2}`.
pub fn ig_pdf(x: f64, gamma: f64, delta: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    delta / (2.0 * std::f64::consts::PI).sqrt()
        * x.powf(-1.5)
        * (delta * gamma - 0.5 * (delta * delta / x + gamma * gamma * x)).exp()
}

/// `(E[G | ε], E[1/G | ε])` for `ε = μ + βG + √G Z`, `G ~ IG(γ, δ)`, by
/// quadrature of the joint density over `g`.
pub fn mixing_posterior_moments(eps: f64, alpha: f64, beta: f64, mu: f64, delta: f64) -> (f64, f64) {
    let gamma = (alpha * alpha - beta * beta).sqrt();
    let joint = |g: f64| {
        let r = eps - mu - beta * g;
        (-0.5 * r * r / g).exp() / (2.0 * std::f64::consts::PI * g).sqrt() * ig_pdf(g, gamma, delta)
    };
    let scale = delta / gamma;
    let z = integrate_half_line(joint, scale);
    let m1 = integrate_half_line(|g| g * joint(g), scale);
    let mm1 = integrate_half_line(|g| joint(g) / g, scale);
    (m1 / z, mm1 / z)
}

/// `K_ν(x)` from `∫₀^∞ e^{−x cosh u} cosh(νu) du`, integrated in the scaled
/// form `e^{x} K_ν(x)` and split at the points where `x(cosh u − 1)` reaches
/// 1, 4, 16, 64, 256 and 800.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    let f = |u: f64| (-x * (u.cosh() - 1.0)).exp() * (nu * u).cosh();
    let mut edges = vec![0.0];
    for k in [1.0, 4.0, 16.0, 64.0, 256.0, 800.0] {
        edges.push((1.0 + k / x).acosh());
    }
    let scaled: f64 = edges
        .windows(2)
        .map(|w| integrate(f, w[0], w[1], 4))
        .sum();
    scaled * (-x).exp()
}

/// NIG density with the Bessel factor from [`bessel_k`].
pub fn nig_pdf(x: f64, alpha: f64, beta: f64, mu: f64, delta: f64) -> f64 {
    let gamma = (alpha * alpha - beta * beta).sqrt();
    let q = (delta * delta + (x - mu) * (x - mu)).sqrt();
    alpha * delta / std::f64::consts::PI
        * (delta * gamma + beta * (x - mu)).exp()
        * bessel_k(1.0, alpha * q)
        / q
}

/// Quantiles at `(i + ½)/m`, `i = 0..m`, of the law with density `pdf`, from
/// a cumulative integral on a `t/(1 − t²)`-mapped grid with linear
/// interpolation between grid nodes.
pub fn pdf_quantiles<F: Fn(f64) -> f64>(pdf: F, center: f64, scale: f64, m: usize) -> Vec<f64> {
    const NODES: usize = 8000;
    let map = |t: f64| center + scale * t / (1.0 - t * t);
    let dmap = |t: f64| scale * (1.0 + t * t) / ((1.0 - t * t) * (1.0 - t * t));
    let ts: Vec<f64> = (1..NODES).map(|i| -1.0 + 2.0 * i as f64 / NODES as f64).collect();
    let mut xs = Vec::with_capacity(ts.len());
    let mut cdf = Vec::with_capacity(ts.len());
    let g = |t: f64| {
        let v = pdf(map(t)) * dmap(t);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut acc = quadrature::integrate(g, -1.0, ts[0], ABS_TOL).integral;
    xs.push(map(ts[0]));
    cdf.push(acc);
    for w in ts.windows(2) {
        acc += quadrature::integrate(g, w[0], w[1], ABS_TOL).integral;
        xs.push(map(w[1]));
        cdf.push(acc);
    }
    let total = acc + quadrature::integrate(g, ts[ts.len() - 1], 1.0, ABS_TOL).integral;
    (0..m)
        .map(|i| {
            let p = (i as f64 + 0.5) / m as f64 * total;
            let j = cdf.partition_point(|c| *c < p);
            if j == 0 {
                return xs[0];
            }
            if j >= cdf.len() {
                return xs[xs.len() - 1];
            }
            let (c0, c1) = (cdf[j - 1], cdf[j]);
            xs[j - 1] + (xs[j] - xs[j - 1]) * (p - c0) / (c1 - c0)
        })
        .collect()
}

/// Autocorrelations straight from the definition
/// `r_k = Σ_{t<n−k} (y_t − ȳ)(y_{t+k} − ȳ) / Σ (y_t − ȳ)²`.
pub fn acf_direct(y: &[f64], max_lag: usize) -> Vec<f64> {
    let n = y.len();
    let mean = y.iter().sum::<f64>() / n as f64;
    let c = |k: usize| -> f64 { (0..n - k).map(|t| (y[t] - mean) * (y[t + k] - mean)).sum() };
    let c0 = c(0);
    (0..=max_lag).map(|k| c(k) / c0).collect()
}

/// Partial autocorrelation at lag `k`: last coefficient of the order-`k`
/// Yule–Walker system, solved densely for every `k`.
pub fn pacf_direct(y: &[f64], max_lag: usize) -> Vec<f64> {
    let r = acf_direct(y, max_lag);
    let mut out = vec![1.0];
    for k in 1..=max_lag {
        let a = DMatrix::from_fn(k, k, |i, j| r[i.abs_diff(j)]);
        let b = DVector::from_fn(k, |i, _| r[i + 1]);
        let phi = a.lu().solve(&b).expect("Yule-Walker matrix is singular");
        out.push(phi[k - 1]);
    }
    out
}

/// Two-sample Kolmogorov–Smirnov distance by evaluating both empirical CDFs
/// at every pooled observation.
pub fn ks_distance_direct(a: &[f64], b: &[f64]) -> f64 {
    let ecdf = |s: &[f64], t: f64| s.iter().filter(|v| **v <= t).count() as f64 / s.len() as f64;
    a.iter()
        .chain(b)
        .map(|&t| (ecdf(a, t) - ecdf(b, t)).abs())
        .fold(0.0, f64::max)
}
