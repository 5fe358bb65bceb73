use crate::error::DiagnosticsError;

/// Linear-interpolation quantile of an ascending sample at probability `p`
/// (position `p·(n − 1)`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = p.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// QQ pairs `(quantile_a, quantile_b)`: the order statistics of the smaller
/// sample, at plotting positions `i/(m − 1)`, against interpolated quantiles
/// of the larger one.
pub fn qq_points(a: &[f64], b: &[f64]) -> Result<Vec<(f64, f64)>, DiagnosticsError> {
    if a.is_empty() || b.is_empty() {
        return Err(DiagnosticsError::EmptySample);
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(f64::total_cmp);
    sb.sort_by(f64::total_cmp);
    let a_smaller = sa.len() <= sb.len();
    let (small, large) = if a_smaller { (&sa, &sb) } else { (&sb, &sa) };
    let m = small.len();
    Ok(small
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let p = if m == 1 { 0.5 } else { i as f64 / (m - 1) as f64 };
            let q = quantile_sorted(large, p);
            if a_smaller {
                (x, q)
            } else {
                (q, x)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_on_diagonal() {
        let a = [3.0, -1.0, 2.5, 0.0, 7.0];
        assert!(qq_points(&a, &a).unwrap().iter().all(|(x, y)| x == y));
    }

    #[test]
    fn scaled_sample_on_slope_two() {
        let b = [0.5, -1.0, 2.0, 4.0];
        let a: Vec<f64> = b.iter().map(|v| 2.0 * v).collect();
        assert!(qq_points(&a, &b).unwrap().iter().all(|(x, y)| *x == 2.0 * y));
    }

    #[test]
    fn larger_first_argument_keeps_order() {
        let a = [0.0, 1.0, 2.0, 3.0, 4.0];
        let b = [10.0, 20.0];
        assert_eq!(qq_points(&a, &b).unwrap(), vec![(0.0, 10.0), (4.0, 20.0)]);
        assert_eq!(qq_points(&a, &[]), Err(DiagnosticsError::EmptySample));
    }

    #[test]
    fn interpolated_quantiles() {
        let s = [0.0, 10.0, 20.0];
        assert_eq!(quantile_sorted(&s, 0.25), 5.0);
        assert_eq!(quantile_sorted(&s, 1.0), 20.0);
    }
}
