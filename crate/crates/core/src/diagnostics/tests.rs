//! Kolmogorov–Smirnov and Jarque–Bera tests.

use serde::{Deserialize, Serialize};

use crate::error::DiagnosticsError;

/// Smallest reported p-value; exact zeros would hide the magnitude.
pub const P_VALUE_FLOOR: f64 = 1e-16;

/// Terms of the Kolmogorov series.
pub const KOLMOGOROV_TERMS: usize = 100;

/// Smallest sample the normality tests accept.
pub const MIN_NORMALITY_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestName {
    Ks2Sample,
    KsNormality,
    JarqueBera,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub test_name: TestName,
}

impl TestResult {
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// `P(K > λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`, truncated at
/// [`KOLMOGOROV_TERMS`] terms, clamped to `[P_VALUE_FLOOR, 1]`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda.is_nan() {
        return f64::NAN;
    }
    // the alternating series converges too slowly below 0.2, where P = 1 to
    // double precision anyway
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=KOLMOGOROV_TERMS {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        sum += if k as usize % 2 == 1 { term } else { -term };
        if term < 1e-300 {
            break;
        }
    }
    (2.0 * sum).clamp(P_VALUE_FLOOR, 1.0)
}

fn sorted(a: &[f64]) -> Vec<f64> {
    let mut v = a.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Largest gap between the two empirical CDFs, evaluated after every tie
/// group so equal values in both samples step together.
pub fn ks_2sample_statistic(a: &[f64], b: &[f64]) -> Result<f64, DiagnosticsError> {
    if a.is_empty() || b.is_empty() {
        return Err(DiagnosticsError::EmptySample);
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    // once one sample is exhausted the gap only shrinks towards zero
    d = d.max((i as f64 / na - j as f64 / nb).abs());
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov test with the asymptotic p-value at
/// `λ = D √(n_a n_b / (n_a + n_b))`.
pub fn ks_2sample(a: &[f64], b: &[f64]) -> Result<TestResult, DiagnosticsError> {
    let d = ks_2sample_statistic(a, b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let en = (na * nb / (na + nb)).sqrt();
    Ok(TestResult {
        statistic: d,
        p_value: kolmogorov_sf(en * d),
        test_name: TestName::Ks2Sample,
    })
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

fn moments(a: &[f64]) -> Result<Moments, DiagnosticsError> {
    if a.is_empty() {
        return Err(DiagnosticsError::EmptySample);
    }
    if a.len() < MIN_NORMALITY_N {
        return Err(DiagnosticsError::TooShort {
            needed: MIN_NORMALITY_N,
            got: a.len(),
        });
    }
    let n = a.len() as f64;
    let mean = a.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for x in a {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    // a constant sample can leave rounding-level spread around its mean
    if !(m2 > (4.0 * f64::EPSILON * mean).powi(2)) {
        return Err(DiagnosticsError::ZeroVariance);
    }
    Ok(Moments { n, mean, m2, m3, m4 })
}

/// Kolmogorov–Smirnov distance of the standardized sample (sample mean,
/// `n − 1` standard deviation) from the standard normal.
pub fn ks_normality_statistic(a: &[f64]) -> Result<f64, DiagnosticsError> {
    let m = moments(a)?;
    let sd = (m.m2 * m.n / (m.n - 1.0)).sqrt();
    let z = sorted(a);
    let n = m.n;
    Ok(z.iter().enumerate().fold(0.0, |d: f64, (i, x)| {
        let f = normal_cdf((x - m.mean) / sd);
        let i = i as f64;
        d.max((i + 1.0) / n - f).max(f - i / n)
    }))
}

/// Lilliefors upper-tail probability of the normality KS statistic `d` at
/// sample size `n`: the Dallal–Wilkinson approximation below 0.1, and above
/// it interpolation in large-sample simulated critical values.
pub fn lilliefors_p_value(d: f64, n: usize) -> f64 {
    let nf = n as f64;
    let (dd, nn) = if nf > 100.0 {
        (d * (nf / 100.0).powf(0.49), 100.0)
    } else {
        (d, nf)
    };
    let p = (-7.01256 * dd * dd * (nn + 2.78019) + 2.99587 * dd * (nn + 2.78019).sqrt() - 0.122119
        + 0.974598 / nn.sqrt()
        + 1.67997 / nn)
        .exp();
    if p <= 0.1 {
        return p.clamp(P_VALUE_FLOOR, 1.0);
    }
    // (CDF percentile, intercept) of ln cv = b − 0.45068579 ln n − 0.00356741 ln²n
    const TABLE: [(f64, f64); 7] = [
        (1.0, -1.17114969),
        (5.0, -1.03298277),
        (10.0, -0.95518114),
        (25.0, -0.81912169),
        (50.0, -0.6607348),
        (75.0, -0.49861004),
        (90.0, -0.35446139),
    ];
    let ln = nf.ln();
    let cv = |b: f64| (b - 0.45068579 * ln - 0.00356741 * ln * ln).exp();
    let (lo_pct, lo_b) = TABLE[0];
    if d <= cv(lo_b) {
        return 1.0 - lo_pct / 100.0;
    }
    for w in TABLE.windows(2) {
        let ((p0, b0), (p1, b1)) = (w[0], w[1]);
        let (c0, c1) = (cv(b0), cv(b1));
        if d <= c1 {
            let pct = p0 + (p1 - p0) * (d - c0) / (c1 - c0);
            return 1.0 - pct / 100.0;
        }
    }
    0.1
}

/// Kolmogorov–Smirnov normality test with estimated mean and variance. The
/// p-value is Lilliefors-corrected; the plain Kolmogorov p-value would be
/// far too large once the parameters are estimated from the same sample.
pub fn ks_normality(a: &[f64]) -> Result<TestResult, DiagnosticsError> {
    let d = ks_normality_statistic(a)?;
    Ok(TestResult {
        statistic: d,
        p_value: lilliefors_p_value(d, a.len()),
        test_name: TestName::KsNormality,
    })
}

/// Sample skewness and (non-excess) kurtosis from the `1/n` moments.
pub fn skewness_kurtosis(a: &[f64]) -> Result<(f64, f64), DiagnosticsError> {
    let m = moments(a)?;
    Ok((m.m3 / m.m2.powf(1.5), m.m4 / (m.m2 * m.m2)))
}

/// `JB = (n/6)(S² + (K − 3)²/4)` against chi-square with two degrees of
/// freedom, whose survival function is `e^{−JB/2}`.
pub fn jarque_bera(a: &[f64]) -> Result<TestResult, DiagnosticsError> {
    let (s, k) = skewness_kurtosis(a)?;
    let jb = a.len() as f64 / 6.0 * (s * s + (k - 3.0) * (k - 3.0) / 4.0);
    Ok(TestResult {
        statistic: jb,
        p_value: (-jb / 2.0).exp().clamp(P_VALUE_FLOOR, 1.0),
        test_name: TestName::JarqueBera,
    })
}

#[cfg(test)]
mod unit {
    use super::*;

    #[test]
    fn kolmogorov_known_values() {
        // scipy.special.kolmogorov
        assert!((kolmogorov_sf(1.0) - 0.26999967167735456).abs() < 1e-14);
        assert!((kolmogorov_sf(1.3580986393225505) - 0.05).abs() < 1e-12);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
        assert_eq!(kolmogorov_sf(50.0), P_VALUE_FLOOR);
    }

    #[test]
    fn two_sample_examples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let r = ks_2sample(&a, &a).unwrap();
        assert_eq!((r.statistic, r.p_value), (0.0, 1.0));
        let d = ks_2sample_statistic(&a, &[1.5, 2.5, 3.5, 4.5]).unwrap();
        assert_eq!(d, 0.25);
        assert_eq!(ks_2sample_statistic(&[0.1, 0.5], &[2.2, 2.9, 2.5]).unwrap(), 1.0);
        assert_eq!(ks_2sample(&[], &a), Err(DiagnosticsError::EmptySample));
    }

    #[test]
    fn jarque_bera_zero_statistic() {
        // mass 1/3 on ±1 and 2/3 on 0: S = 0, K = 1/(1/3) = 3
        let mut x = vec![0.0; 12];
        x[..2].fill(-1.0);
        x[10..].fill(1.0);
        let r = jarque_bera(&x).unwrap();
        assert!(r.statistic.abs() < 1e-12);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normality_errors() {
        assert_eq!(ks_normality(&[1.0; 10]), Err(DiagnosticsError::ZeroVariance));
        assert_eq!(jarque_bera(&[1.0; 10]), Err(DiagnosticsError::ZeroVariance));
        assert!(matches!(ks_normality(&[1.0, 2.0]), Err(DiagnosticsError::TooShort { .. })));
    }

    #[test]
    fn lilliefors_branches() {
        assert!(lilliefors_p_value(0.2, 1000) < 1e-10);
        assert_eq!(lilliefors_p_value(0.001, 1000), 0.99);
        let p = lilliefors_p_value(0.02, 1000);
        assert!(p > 0.1 && p < 0.99);
    }
}
