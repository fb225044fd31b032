//! Small estimators shared by the Lyapunov modules.

use statrs::distribution::{ContinuousCDF, StudentsT};

/// Growth rate per unit time of each of `n_batches` contiguous blocks of
/// per-period log increments.
pub fn batch_rates(increments: &[f64], n_batches: usize, period: f64) -> Vec<f64> {
    let len = increments.len() / n_batches;
    increments
        .chunks_exact(len)
        .take(n_batches)
        .map(|b| b.iter().sum::<f64>() / (len as f64 * period))
        .collect()
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator).
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Standard error of the mean of `xs`.
pub fn std_error(xs: &[f64]) -> f64 {
    sample_std(xs) / (xs.len() as f64).sqrt()
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    let (num, den) = xs.iter().zip(ys).fold((0.0, 0.0), |(n, d), (x, y)| {
        (n + (x - mx) * (y - my), d + (x - mx).powi(2))
    });
    num / den
}

/// One-sided Student-t quantile `t_{p, dof}`.
pub fn student_t_quantile(p: f64, dof: usize) -> f64 {
    StudentsT::new(0.0, 1.0, dof as f64)
        .expect("dof >= 1")
        .inverse_cdf(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_rates_split_evenly() {
        let inc = [1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        assert_eq!(batch_rates(&inc, 3, 0.5), vec![2.0, 4.0, 6.0]);
    }

    #[test]
    fn slope_of_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        assert!((ls_slope(&xs, &ys) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn t_quantile_reference() {
        // t_{0.95, 19} = 1.729133 (standard tables)
        assert!((student_t_quantile(0.95, 19) - 1.729133).abs() < 1e-5);
    }

    #[test]
    fn std_of_constant_is_zero() {
        assert_eq!(sample_std(&[2.0, 2.0, 2.0]), 0.0);
        assert_eq!(std_error(&[1.0]), 0.0);
    }
}
