mod common;

use floquet_noise::anderson::{band_scan, localization_length, SchrodingerParams, Spectrum};
use floquet_noise::coeffs::{DriveSpec, NoiseSpec};
use floquet_noise::monodromy::{linspace, IntegratorCfg};

fn in_band_point(seed: u64) -> SchrodingerParams {
    SchrodingerParams::new(
        0.25,
        DriveSpec::cosine(0.1, 2.0),
        NoiseSpec::uniform(0.3, seed),
    )
}

#[test]
fn decay_rate_matches_spatial_envelope() {
    let sp = in_band_point(1);
    let r = localization_length(&sp, 10_000, IntegratorCfg::default()).unwrap();
    let oracle = common::envelope_decay_rate(&sp, 10_000, 32);
    println!(
        "mu = {:.5e} ± {:.1e}, envelope = {oracle:.5e}",
        r.mu, r.std_err
    );
    assert!(r.mu - 2.0 * r.std_err > 0.0);
    assert!((oracle / r.mu - 1.0).abs() < 0.1);
    let xi = r.xi.expect("significant decay reports a length");
    assert!((xi * r.mu - 1.0).abs() < 1e-12);
}

#[test]
fn gaps_grow_without_noise_and_everything_localizes_with_it() {
    let template =
        SchrodingerParams::new(0.0, DriveSpec::cosine(0.3, 2.0), NoiseSpec::uniform(0.3, 4));
    let energies = linspace(0.1, 1.5, 15);
    let rows = band_scan(&energies, &template, 20_000, IntegratorCfg::default()).unwrap();
    let gaps = rows.iter().filter(|r| r.spectrum == Spectrum::Gap).count();
    assert!(gaps > 0 && gaps < rows.len(), "{gaps} gap points");
    for r in &rows {
        println!(
            "E = {:.2} {}: mu0 = {:.4e}, mu = {:.4e} ± {:.1e}",
            r.energy,
            r.spectrum.as_str(),
            r.mu_noiseless,
            r.mu_noisy,
            r.std_err
        );
        if r.spectrum == Spectrum::Gap {
            assert!(r.mu_noiseless > 0.0);
        }
        assert!(r.mu_noisy - 2.0 * r.std_err > 0.0, "E = {}", r.energy);
        assert!(r.xi.is_some());
    }
}
