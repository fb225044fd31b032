use floquet_noise::coeffs::{DriveSpec, NoiseSpec};
use floquet_noise::monodromy::{noiseless_exponent, IntegratorCfg};
use floquet_noise::randprod::{
    estimate_lyapunov, estimate_lyapunov_with, furstenberg_estimate, theorem1_test,
    LyapunovOptions, VectorNorm,
};

const STABLE_W2: f64 = 2.25;
const RESONANT_W2: f64 = 1.0;

fn drive() -> DriveSpec {
    DriveSpec::cosine(0.2, 2.0)
}

#[test]
fn norm_choice_only_shifts_the_total_by_a_bounded_amount() {
    // the two accumulations telescope to ln of a norm ratio at the ends, and
    // ‖v‖₂/‖v‖∞ ∈ [1, √2], so N·T·|Δμ| ≤ ln 2 for every N
    let cfg = IntegratorCfg::default();
    let period = drive().period();
    for &n in &[100, 1000, 10_000] {
        let noise = NoiseSpec::uniform(0.5, 11);
        let euc = estimate_lyapunov(STABLE_W2, &drive(), &noise, n, cfg).unwrap();
        let opts = LyapunovOptions {
            norm: VectorNorm::Max,
            ..LyapunovOptions::default()
        };
        let max = estimate_lyapunov_with(STABLE_W2, &drive(), &noise, n, cfg, &opts).unwrap();
        let c = (euc.mu_hat - max.mu_hat).abs() * n as f64 * period;
        assert!(
            c <= std::f64::consts::LN_2 + 1e-9,
            "N = {n}: N·T·|Δμ| = {c}"
        );
    }
}

#[test]
fn std_err_falls_like_inverse_root_n() {
    let cfg = IntegratorCfg::default();
    let avg_se = |n: usize| {
        (0..4)
            .map(|s| {
                let noise = NoiseSpec::uniform(0.5, 100 + s);
                estimate_lyapunov(STABLE_W2, &drive(), &noise, n, cfg)
                    .unwrap()
                    .std_err
            })
            .sum::<f64>()
            / 4.0
    };
    let ratio = avg_se(2000) / avg_se(8000);
    // √4 = 2, allowed within a factor 2 either way
    assert!((1.0..=4.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn estimates_are_bitwise_reproducible() {
    let cfg = IntegratorCfg::default();
    let noise = NoiseSpec::gaussian(0.4, 5);
    let a = estimate_lyapunov(RESONANT_W2, &drive(), &noise, 500, cfg).unwrap();
    let b = estimate_lyapunov(RESONANT_W2, &drive(), &noise, 500, cfg).unwrap();
    assert_eq!(a.mu_hat.to_bits(), b.mu_hat.to_bits());
    assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
}

#[test]
fn furstenberg_matches_direct_estimate_in_the_stable_band() {
    let cfg = IntegratorCfg::default();
    let noise = NoiseSpec::uniform(0.5, 21);
    let n = 10_000;
    let direct = estimate_lyapunov(STABLE_W2, &drive(), &noise, n, cfg).unwrap();
    let f = furstenberg_estimate(STABLE_W2, &drive(), &noise, n, None, None, cfg).unwrap();
    let tol = 2.0 * direct.std_err.hypot(f.std_err);
    assert!(
        (f.lambda - direct.mu_hat).abs() < tol,
        "λ = {} vs μ̂ = {} (tol {tol})",
        f.lambda,
        direct.mu_hat
    );
}

#[test]
fn furstenberg_rate_is_insensitive_to_v2() {
    let cfg = IntegratorCfg::default();
    let noise = NoiseSpec::uniform(0.5, 33);
    let mut lambdas = Vec::new();
    let mut worst_se = 0.0_f64;
    for i in 0..5 {
        let a = 0.4 + 1.1 * i as f64;
        let f = furstenberg_estimate(
            STABLE_W2,
            &drive(),
            &noise,
            5000,
            None,
            Some([a.cos(), a.sin()]),
            cfg,
        )
        .unwrap();
        lambdas.push(f.lambda);
        worst_se = worst_se.max(f.std_err);
    }
    let spread = lambdas.iter().cloned().fold(f64::MIN, f64::max)
        - lambdas.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread < 2.0 * worst_se, "spread {spread}, se {worst_se}");
}

#[test]
fn noiseless_theorem1_reports_no_excess() {
    let cfg = IntegratorCfg::default();
    let noise = NoiseSpec::uniform(0.0, 3);
    let r = theorem1_test(
        RESONANT_W2,
        &drive(),
        &noise,
        1000,
        20,
        cfg,
        &LyapunovOptions::default(),
    )
    .unwrap();
    assert!(
        (r.mean_muq - r.mu0).abs() < 1e-6,
        "{} vs {}",
        r.mean_muq,
        r.mu0
    );
    assert!(r.fraction_exceeding <= 0.05, "{}", r.fraction_exceeding);
}

#[test]
fn noise_raises_the_exponent_in_the_stable_band() {
    let cfg = IntegratorCfg::default();
    let mu0 = noiseless_exponent(STABLE_W2, &drive(), cfg).unwrap().mu;
    assert_eq!(mu0, 0.0);
    let noise = NoiseSpec::uniform(0.5, 1);
    let e = estimate_lyapunov(STABLE_W2, &drive(), &noise, 10_000, cfg).unwrap();
    assert!(
        e.mu_hat - 2.0 * e.std_err > 0.0,
        "{} ± {}",
        e.mu_hat,
        e.std_err
    );
}

fn resonant_report() -> floquet_noise::randprod::Theorem1Report {
    let noise = NoiseSpec::uniform(0.5, 7);
    theorem1_test(
        RESONANT_W2,
        &drive(),
        &noise,
        10_000,
        20,
        IntegratorCfg::default(),
        &LyapunovOptions::default(),
    )
    .unwrap()
}

#[test]
#[ignore = "noise lowers μ below μ(0) at the centre of the first tongue; see resonant_point_shows_a_deficit"]
fn resonant_point_mostly_exceeds_noiseless() {
    let r = resonant_report();
    assert!(r.fraction_exceeding >= 0.9, "{}", r.fraction_exceeding);
}

#[test]
fn resonant_point_shows_a_deficit() {
    // the inequality is only proved for μ(0) = 0; inside the tongue the
    // measured effect has the opposite sign
    let r = resonant_report();
    println!(
        "resonant point: mu0 = {:.6e}, mean = {:.6e}, fraction exceeding = {}",
        r.mu0, r.mean_muq, r.fraction_exceeding
    );
    assert!(r.mu0 > 0.0);
    assert!(r.mean_muq < r.mu0);
}
