#![allow(dead_code)]

use floquet_noise::anderson::{map_to_oscillator, SchrodingerParams};
use floquet_noise::stats::ls_slope;

/// Decay rate of a generic solution of the Schrödinger problem, measured
/// directly in space.
///
/// Integrates `ψ'' = -2m(E - V_p(ωx) - V_R(x)) ψ` with a drift-kick-drift
/// Störmer–Verlet recursion (`sub` steps per noise segment, potential sampled
/// at step midpoints so segment jumps are never straddled), starting from
/// `(ψ, ψ') = (1, 0.3)`, and fits the least-squares slope of
/// `log ‖(ψ, ψ')‖` against `x` at the end of every period.
pub fn envelope_decay_rate(sp: &SchrodingerParams, n_periods: usize, sub: usize) -> f64 {
    // the realization of V_R: -q/(2m) for the mapped noise process
    let osc = map_to_oscillator(sp).unwrap();
    let m = sp.random.segments_per_period;
    let period = sp.period();
    let h = period / (m * sub) as f64;
    let two_m = 2.0 * sp.mass;
    let (mut psi, mut dpsi) = (1.0_f64, 0.3_f64);
    let mut log_scale = 0.0;
    let mut xs = Vec::with_capacity(n_periods);
    let mut ys = Vec::with_capacity(n_periods);
    for j in 0..n_periods {
        let q = osc.noise.sample_channel(j as u64, 0);
        for s in 0..m {
            let v_r = -q.values[s] / two_m;
            for i in 0..sub {
                let x = j as f64 * period + ((s * sub + i) as f64 + 0.5) * h;
                let v_p = sp.potential.eval_phase(sp.potential.omega * x);
                let f = two_m * (sp.energy - v_p - v_r);
                psi += 0.5 * h * dpsi;
                dpsi -= h * f * psi;
                psi += 0.5 * h * dpsi;
            }
        }
        let r = psi.hypot(dpsi);
        log_scale += r.ln();
        psi /= r;
        dpsi /= r;
        xs.push((j + 1) as f64 * period);
        ys.push(log_scale);
    }
    ls_slope(&xs, &ys)
}

/// Square-matrix product and Euclidean norm on plain row-major storage, kept
/// separate from the library's linear algebra.
pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

pub fn matvec_norm(a: &[f64], v: &[f64]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum::<f64>().powi(2))
        .sum::<f64>()
        .sqrt()
}
