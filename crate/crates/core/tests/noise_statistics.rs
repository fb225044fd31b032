use floquet_noise::coeffs::{NoiseDistribution, NoiseSpec};

fn draws(spec: &NoiseSpec, total: usize) -> Vec<f64> {
    let m = spec.segments_per_period;
    (0..(total / m) as u64)
        .flat_map(|j| spec.sample_channel(j, 0).values)
        .collect()
}

fn moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn uniform_million_draws() {
    let sigma = 0.8;
    let spec = NoiseSpec::uniform(sigma, 2024);
    let xs = draws(&spec, 1_000_000);
    assert_eq!(xs.len(), 1_000_000);
    let (mean, var) = moments(&xs);
    let n = xs.len() as f64;
    assert!(mean.abs() < 4.0 * sigma / (12.0 * n).sqrt(), "mean {mean}");
    assert!(
        (var / (sigma * sigma / 3.0) - 1.0).abs() < 0.05,
        "var {var}"
    );
    assert!(xs.iter().all(|x| x.abs() <= sigma));
}

#[test]
fn gaussian_million_draws() {
    let sigma = 0.3;
    let spec = NoiseSpec::gaussian(sigma, 7);
    assert_eq!(spec.distribution, NoiseDistribution::Gaussian);
    let xs = draws(&spec, 1_000_000);
    let (mean, var) = moments(&xs);
    let n = xs.len() as f64;
    assert!(mean.abs() < 4.0 * sigma / n.sqrt(), "mean {mean}");
    assert!((var / (sigma * sigma) - 1.0).abs() < 0.05, "var {var}");
    assert!(xs.iter().all(|x| x.abs() <= 6.0 * sigma));
}

#[test]
fn segments_within_a_period_are_uncorrelated() {
    let spec = NoiseSpec::uniform(1.0, 3).with_segments(4);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    let periods = 10_000;
    for j in 0..periods {
        let v = spec.sample_channel(j, 0).values;
        sxy += v[0] * v[1];
        sxx += v[0] * v[0];
    }
    // both segments have the same variance, so this is the correlation
    let rho = sxy / sxx;
    assert!(rho.abs() < 3.0 / (periods as f64).sqrt(), "rho {rho}");
}
