//! Sagnac-loop input-output relation: transmission/reflection traces from the
//! directional phase profiles, pump-energy sweeps, and signal-delay scans.

use std::sync::Arc;

use num_complex::Complex64;

use crate::envelope::build_gaussian_pump;
use crate::error::{Error, Result};
use crate::grid::TemporalGrid;
use crate::params::{FiberParams, PumpConfig};
use crate::phase::{xpm_phase_numeric, Direction, PhasePair};
use crate::propagation::{propagate_pump, SolverSettings};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Mean-field loop transform
/// (b1, b2) = e^{iφ} e^{-ℓ_s} [[cosθ, i sinθ], [i sinθ, cosθ]] (a1, a2).
pub fn io_transform(
    theta: f64,
    phi: f64,
    loss_s: f64,
    a1: Complex64,
    a2: Complex64,
) -> (Complex64, Complex64) {
    let scale = Complex64::from_polar((-loss_s).exp(), phi);
    let (c, s) = (theta.cos(), theta.sin());
    let is = Complex64::new(0.0, s);
    (scale * (c * a1 + is * a2), scale * (is * a1 + c * a2))
}

/// Time-resolved switch response. T + R = e^{-2ℓ_s} holds pointwise by
/// construction.
#[derive(Clone, Debug)]
pub struct SwitchResponse {
    grid: Arc<TemporalGrid>,
    pub transmission: Vec<f64>,
    pub reflection: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi_common: Vec<f64>,
    pub valid: Vec<bool>,
    pub loss_signal: f64,
}

impl SwitchResponse {
    pub fn grid(&self) -> &Arc<TemporalGrid> {
        &self.grid
    }

    pub fn max_transmission(&self) -> f64 {
        self.transmission
            .iter()
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .map(|(&t, _)| t)
            .fold(0.0, f64::max)
    }
}

pub fn response_from_phases(pair: &PhasePair, loss_s: f64) -> Result<SwitchResponse> {
    if loss_s < 0.0 {
        return Err(Error::Measurement("signal loss must be nonnegative".into()));
    }
    let atten = (-2.0 * loss_s).exp();
    let transmission: Vec<f64> =
        pair.theta.iter().map(|&th| atten * th.sin().powi(2)).collect();
    let reflection: Vec<f64> =
        pair.theta.iter().map(|&th| atten * th.cos().powi(2)).collect();
    Ok(SwitchResponse {
        grid: pair.grid().clone(),
        transmission,
        reflection,
        theta: pair.theta.clone(),
        phi_common: pair.phi_common.clone(),
        valid: pair.valid.clone(),
        loss_signal: loss_s,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Analytic,
    Numeric,
}

#[derive(Clone, Copy, Debug)]
pub struct EnergySweepPoint {
    pub energy_pj: f64,
    pub t_peak: f64,
    pub r_peak: f64,
}

/// Peak switching probability versus pump energy (the rise-fall oscillation of
/// the transmission curve).
///
/// The plateau switching angle is taken from the co-propagating phase alone,
/// θ_plateau = Φ₊(t_c)/2: the counter-propagating Φ₋ is a small constant bias
/// inside the window that shifts the common phase but, at the plateau, enters
/// θ only as a uniform offset removable by signal timing. With this convention
/// the analytic curve is sin²(πE/2e_star), reaching T = 1 first at e_star.
#[allow(clippy::too_many_arguments)]
pub fn energy_sweep(
    fiber: &FiberParams,
    pump_template: &PumpConfig,
    xi_parallel: f64,
    xi_perp: f64,
    loss_s: f64,
    energies_pj: &[f64],
    mode: SweepMode,
    grid: &Arc<TemporalGrid>,
    solver: &SolverSettings,
) -> Result<Vec<EnergySweepPoint>> {
    if energies_pj.iter().any(|&e| e < 0.0) {
        return Err(Error::Measurement("energies must be nonnegative".into()));
    }
    if energies_pj.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Measurement("energies must be ascending".into()));
    }
    let xi_sum = xi_parallel + xi_perp;
    if xi_sum <= 0.0 {
        return Err(Error::Measurement("xi sum must be positive".into()));
    }
    let atten = (-2.0 * loss_s).exp();
    let beta_p = fiber.beta_plus_ps_per_m.abs();
    let t_c = fiber.length_m * fiber.beta_minus_ps_per_m / 2.0;
    let sigma = pump_template.sigma()?;
    let walk_through = beta_p > 0.0 && fiber.length_m > 2.0 * sigma / beta_p;

    let point = |&energy: &f64| -> Result<EnergySweepPoint> {
        let theta_plateau = match mode {
            SweepMode::Analytic => {
                if beta_p > 0.0 {
                    // lossless plateau Φ₊ = E(ξ∥+ξ⊥)/2|β₊|
                    energy * xi_sum / (4.0 * beta_p)
                } else {
                    // lockstep: peak Φ₊ = P₀(ξ∥+ξ⊥)L_eff, partial switching only
                    let p0 = energy / (2.0 * std::f64::consts::PI.sqrt() * sigma);
                    let alpha = fiber.alpha_per_m;
                    let l_eff = if alpha == 0.0 {
                        fiber.length_m
                    } else {
                        (1.0 - (-2.0 * alpha * fiber.length_m).exp()) / (2.0 * alpha)
                    };
                    p0 * xi_sum * l_eff / 2.0
                }
            }
            SweepMode::Numeric => {
                let mut cfg = pump_template.clone();
                cfg.energy_total_pj = Some(energy);
                cfg.peak_power_total_w = None;
                let env = build_gaussian_pump(&cfg, grid)?;
                let rec = propagate_pump(&env, fiber, solver)?;
                let plus = xpm_phase_numeric(&rec, xi_parallel, xi_perp, Direction::Co)?;
                let phi_plus = if walk_through {
                    plus.value_at(t_c).ok_or_else(|| {
                        Error::Measurement(format!(
                            "window center {t_c} ps is outside the valid grid range"
                        ))
                    })?
                } else {
                    plus.max_value()
                };
                phi_plus / 2.0
            }
        };
        Ok(EnergySweepPoint {
            energy_pj: energy,
            t_peak: atten * theta_plateau.sin().powi(2),
            r_peak: atten * theta_plateau.cos().powi(2),
        })
    };

    #[cfg(feature = "parallel")]
    {
        energies_pj.par_iter().map(|e| point(e)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        energies_pj.iter().map(point).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DelayScan {
    pub delays_ps: Vec<f64>,
    pub switch_probability: Vec<f64>,
    pub valid: Vec<bool>,
    pub signal_fwhm_ps: f64,
}

/// Switching probability of a Gaussian signal pulse versus its delay:
/// p(t_D) = ∫ T(t) s(t - t_D) dt with the intensity kernel s normalized to
/// unit discrete mass. Delays whose kernel leaks off the grid are masked.
pub fn delay_scan(
    response: &SwitchResponse,
    signal_fwhm_ps: f64,
    delays_ps: &[f64],
) -> Result<DelayScan> {
    if !(signal_fwhm_ps > 0.0) {
        return Err(Error::Measurement("signal width must be positive".into()));
    }
    let grid = response.grid();
    let t = grid.t_axis();
    let sigma_s = signal_fwhm_ps / (2.0 * (2.0_f64).ln().sqrt());
    let (t0, t1) = (t[0], t[t.len() - 1]);

    let eval = |&delay: &f64| -> (f64, bool) {
        // intensity kernel std is sigma_s/sqrt(2); mass beyond 3 sigma_s < 1e-7
        let ok = delay - 3.0 * sigma_s >= t0 && delay + 3.0 * sigma_s <= t1;
        if !ok {
            return (0.0, false);
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for (&tk, &trans) in t.iter().zip(&response.transmission) {
            let arg = (tk - delay) / sigma_s;
            if arg.abs() < 12.0 {
                let s = (-arg * arg).exp();
                num += trans * s;
                den += s;
            }
        }
        (num / den, true)
    };

    let results: Vec<(f64, bool)> = {
        #[cfg(feature = "parallel")]
        {
            delays_ps.par_iter().map(eval).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            delays_ps.iter().map(eval).collect()
        }
    };
    Ok(DelayScan {
        delays_ps: delays_ps.to_vec(),
        switch_probability: results.iter().map(|r| r.0).collect(),
        valid: results.iter().map(|r| r.1).collect(),
        signal_fwhm_ps,
    })
}
