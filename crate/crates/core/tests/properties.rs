//! Randomized invariant checks over parameter ranges the example-based tests
//! do not enumerate.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use sagnac_sim::constants::gamma_from_mfd;
use sagnac_sim::grid::Spectral;
use sagnac_sim::phase::xpm_phase_gaussian;
use sagnac_sim::raman::{raman_spectrum, thermal_occupancy};
use sagnac_sim::switch::{energy_sweep, io_transform};
use sagnac_sim::{
    Direction, FiberParams, PumpConfig, RamanModelParams, SolverSettings, SweepMode, TemporalGrid,
};

fn fiber(beta_plus: f64, beta_minus: f64, alpha: f64, length: f64) -> FiberParams {
    FiberParams {
        alpha_per_m: alpha,
        beta_plus_ps_per_m: beta_plus,
        beta_minus_ps_per_m: beta_minus,
        beta2_ps2_per_m: 0.0,
        gamma_per_w_m: gamma_from_mfd(1550.0, 10.0),
        f_raman: 0.18,
        length_m: length,
        mode_field_diameter_um: Some(10.0),
        raman_model: RamanModelParams::default(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The loop transform conserves the two-port norm for any angles.
    #[test]
    fn loop_transform_preserves_norm(
        theta in 0.0..std::f64::consts::TAU,
        phi in 0.0..std::f64::consts::TAU,
        re1 in -2.0..2.0f64, im1 in -2.0..2.0f64,
        re2 in -2.0..2.0f64, im2 in -2.0..2.0f64,
    ) {
        let a1 = Complex64::new(re1, im1);
        let a2 = Complex64::new(re2, im2);
        let (b1, b2) = io_transform(theta, phi, 0.0, a1, a2);
        let input = a1.norm_sqr() + a2.norm_sqr();
        let output = b1.norm_sqr() + b2.norm_sqr();
        prop_assert!((output - input).abs() <= 1e-12 * input.max(1.0));
    }

    /// Lossless analytic sweeps keep T + R = 1 with both in [0, 1].
    #[test]
    fn analytic_sweep_is_a_probability_split(
        beta_plus in 0.5..5.0f64,
        ratio in 1.5..8.0f64,
        e_max in 100.0..20_000.0f64,
    ) {
        let f = fiber(beta_plus, beta_plus * ratio, 0.0, 100.0);
        let grid = TemporalGrid::new(1024, 8192.0).unwrap();
        let cfg = PumpConfig::gaussian_energy(1.0, 5.0, 1550.0);
        let energies: Vec<f64> = (0..16).map(|k| e_max * k as f64 / 15.0).collect();
        let pts = energy_sweep(
            &f, &cfg, 2.0e-3, 1.0e-3, 0.0, &energies, SweepMode::Analytic, &grid,
            &SolverSettings::default(),
        ).unwrap();
        for p in pts {
            prop_assert!((p.t_peak + p.r_peak - 1.0).abs() < 1e-12);
            prop_assert!((-1e-15..=1.0 + 1e-15).contains(&p.t_peak));
        }
    }

    /// Closed-form phases are nonnegative and linear in pump energy.
    #[test]
    fn gaussian_phase_linear_in_energy(
        energy in 10.0..10_000.0f64,
        scale in 2.0..8.0f64,
        alpha in 0.0..1e-4f64,
    ) {
        let f = fiber(2.1, 9.8, alpha, 100.0);
        let grid = TemporalGrid::new(1024, 4096.0).unwrap();
        let phi = |e: f64| {
            let cfg = PumpConfig::gaussian_energy(e, 5.0, 1550.0);
            xpm_phase_gaussian(&f, &cfg, 2.0e-3, 1.0e-3, Direction::Co, &grid).unwrap()
        };
        let base = phi(energy);
        prop_assert!(base.phi.iter().all(|&v| v >= 0.0));
        let scaled = phi(energy * scale);
        let k = grid.index_of(490.0).unwrap();
        prop_assert!((scaled.phi[k] / (scale * base.phi[k]) - 1.0).abs() < 1e-9);
    }

    /// Phonon occupancy falls with detuning and rises with temperature.
    #[test]
    fn occupancy_monotonic(
        om in 1.0..500.0f64,
        d_om in 1.0..100.0f64,
        temp in 10.0..400.0f64,
        d_temp in 1.0..100.0f64,
    ) {
        let n = thermal_occupancy(om, temp).unwrap();
        prop_assert!(thermal_occupancy(om + d_om, temp).unwrap() < n);
        prop_assert!(thermal_occupancy(om, temp + d_temp).unwrap() > n);
    }

    /// Raman spectra obey the symmetries g(-omega) = -g(omega) and
    /// Re xi(-omega) = Re xi(omega).
    #[test]
    fn raman_spectrum_symmetries(om in 0.1..1000.0f64) {
        let model = RamanModelParams::default();
        let p = raman_spectrum(&model, 1.3e-3, 0.18, om);
        let m = raman_spectrum(&model, 1.3e-3, 0.18, -om);
        prop_assert!((p.g_a + m.g_a).abs() < 1e-14);
        prop_assert!((p.g_b + m.g_b).abs() < 1e-14);
        prop_assert!((p.xi_parallel.re - m.xi_parallel.re).abs() < 1e-16);
        prop_assert!((p.xi_perp.re - m.xi_perp.re).abs() < 1e-16);
    }

    /// A band-limited shift forward then backward reproduces the samples.
    /// sigma >= 4 dt keeps the Gaussian spectrum below 1e-17 at the Nyquist
    /// edge, so the round trip is exact to rounding.
    #[test]
    fn spectral_shift_round_trips(delta in -200.0..200.0f64, sigma in 4.0..20.0f64) {
        let grid: Arc<TemporalGrid> = TemporalGrid::new(2048, 2048.0).unwrap();
        let spectral = Spectral::new(grid.n_samples());
        let input: Vec<f64> = grid
            .t_axis()
            .iter()
            .map(|&t| (-t * t / (sigma * sigma)).exp())
            .collect();
        let mut shifted = vec![0.0; input.len()];
        let mut back = vec![0.0; input.len()];
        spectral.shift_real(&input, delta, grid.omega_axis(), &mut shifted);
        spectral.shift_real(&shifted, -delta, grid.omega_axis(), &mut back);
        for (a, b) in input.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
