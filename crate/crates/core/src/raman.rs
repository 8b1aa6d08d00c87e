//! Delayed Raman response of silica fiber: complex XPM coefficients ξ∥/ξ⊥,
//! gain spectra, thermal phonon occupancy, spontaneous-photon flux in the
//! signal band, and the per-window noise photon number with its fidelity
//! penalty.
//!
//! Closed-form response model: isotropic damped oscillator
//! `R_a(t) ∝ e^{-t/τ₂} sin(t/τ₁)` and anisotropic boson-peak form
//! `R_b(t) ∝ (2τ_b - t) e^{-t/τ_b}`, each unit-normalized and then scaled by
//! its fractional weight, so R̃_a(0) + R̃_b(0) = f_a + f_b = 1 and the
//! zero-detuning XPM coefficients reduce to the pure Kerr values 2γ and 2γ/3.

use num_complex::Complex64;

use crate::constants::{HBAR_J_S, K_B_J_PER_K};
use crate::error::{Error, Result};
use crate::params::RamanModelParams;

/// Raman-dressed quantities at one signal-pump detuning.
#[derive(Clone, Copy, Debug)]
pub struct RamanSpectra {
    /// Detuning Ω [rad/ps]; positive for a signal blue of the pump.
    pub omega_detuning: f64,
    /// Weighted transforms f_a·h̃_a(Ω), f_b·h̃_b(Ω); sum to 1 at Ω = 0.
    pub r_a: Complex64,
    pub r_b: Complex64,
    /// Gain coefficients g = 2·Im R̃ [dimensionless].
    pub g_a: f64,
    pub g_b: f64,
    /// Complex XPM coefficients [1/(W·m)].
    pub xi_parallel: Complex64,
    pub xi_perp: Complex64,
}

impl RamanSpectra {
    /// Real part of ξ∥ + ξ⊥, the quantity entering phases and e_star.
    pub fn xi_sum_re(&self) -> f64 {
        (self.xi_parallel + self.xi_perp).re
    }
}

/// Evaluate the response model at detuning `omega` [rad/ps]:
/// ξ∥ = 2γ + f_Rγ[R̃_a + R̃_b - 1], ξ⊥ = 2γ/3 + f_Rγ[R̃_a + R̃_b/2 - 2/3].
pub fn raman_spectrum(
    model: &RamanModelParams,
    gamma_per_w_m: f64,
    f_raman: f64,
    omega_rad_per_ps: f64,
) -> RamanSpectra {
    let om = omega_rad_per_ps;
    // time constants in ps
    let tau1 = model.tau1_fs * 1e-3;
    let tau2 = model.tau2_fs * 1e-3;
    let tau_b = model.tau_b_fs * 1e-3;
    let (w1, g) = (1.0 / tau1, 1.0 / tau2);

    // unit-normalized transform of e^{-t/tau2} sin(t/tau1), analytic
    let denom = (Complex64::new(g, -om)).powi(2) + w1 * w1;
    let h_a = Complex64::new(w1 * w1 + g * g, 0.0) / denom;
    // unit-normalized transform of (2 tau_b - t) e^{-t/tau_b}
    let s = Complex64::new(1.0 / tau_b, -om);
    let h_b = (2.0 * tau_b * s - 1.0) / (tau_b * tau_b * s * s);

    let r_a = model.f_a * h_a;
    let r_b = model.f_b * h_b;
    let gamma = gamma_per_w_m;
    let xi_parallel = 2.0 * gamma + f_raman * gamma * (r_a + r_b - 1.0);
    let xi_perp = 2.0 * gamma / 3.0 + f_raman * gamma * (r_a + r_b / 2.0 - 2.0 / 3.0);
    RamanSpectra {
        omega_detuning: om,
        r_a,
        r_b,
        g_a: 2.0 * r_a.im,
        g_b: 2.0 * r_b.im,
        xi_parallel,
        xi_perp,
    }
}

/// Bose-Einstein phonon occupancy n_th = 1/(e^{ħ|Ω|/k_BT} - 1) at detuning
/// Ω [rad/ps] and temperature [K].
pub fn thermal_occupancy(omega_rad_per_ps: f64, temperature_k: f64) -> Result<f64> {
    if omega_rad_per_ps == 0.0 {
        return Err(Error::Noise("occupancy diverges at zero detuning".into()));
    }
    if !(temperature_k >= 0.0) {
        return Err(Error::Noise("temperature must be nonnegative".into()));
    }
    if temperature_k == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR_J_S * omega_rad_per_ps.abs() * 1e12 / (K_B_J_PER_K * temperature_k);
    Ok(1.0 / x.exp_m1())
}

/// Spontaneous-Raman photon flux into the signal band [photons/s],
/// I_R(t) = γ f_R P₀ B μ₊(t) n_th (g_a + 3g_b/2) e^{-2ℓ_r},
/// with μ₊ in m (the phase profile divided by P₀(ξ∥+ξ⊥)) and B in Hz.
#[allow(clippy::too_many_arguments)]
pub fn raman_flux(
    gamma_per_w_m: f64,
    f_raman: f64,
    p0_per_pol_w: f64,
    bandwidth_hz: f64,
    mu_plus_m: &[f64],
    n_th: f64,
    spectra: &RamanSpectra,
    loss_r: f64,
) -> Result<Vec<f64>> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::Noise("bandwidth must be positive".into()));
    }
    let scale = gamma_per_w_m
        * f_raman
        * p0_per_pol_w
        * bandwidth_hz
        * n_th
        * (spectra.g_a + 1.5 * spectra.g_b)
        * (-2.0 * loss_r).exp();
    Ok(mu_plus_m.iter().map(|&mu| scale * mu).collect())
}

/// Expected spontaneous-Raman photons per switching window at the
/// total-switching operating point,
/// N_R = γ f_R (Bτ_w) n_th (π/4)(2g_a + 3g_b) / Re(ξ∥+ξ⊥),
/// with `b_tau_w` the dimensionless bandwidth-window product.
pub fn raman_photon_number(
    gamma_per_w_m: f64,
    f_raman: f64,
    b_tau_w: f64,
    n_th: f64,
    spectra: &RamanSpectra,
) -> Result<f64> {
    if b_tau_w < 0.0 {
        return Err(Error::Noise("bandwidth-window product must be nonnegative".into()));
    }
    let xi_sum = spectra.xi_sum_re();
    if xi_sum <= 0.0 {
        return Err(Error::Noise("Re(xi_par + xi_perp) must be positive".into()));
    }
    Ok(gamma_per_w_m
        * f_raman
        * b_tau_w
        * n_th
        * std::f64::consts::FRAC_PI_4
        * (2.0 * spectra.g_a + 3.0 * spectra.g_b)
        / xi_sum)
}

/// Per-scenario noise summary.
#[derive(Clone, Debug)]
pub struct NoiseReport {
    pub n_th: f64,
    /// Time-resolved flux across the window [photons/s].
    pub flux_photons_per_s: Vec<f64>,
    /// Expected photons per switching window.
    pub n_r: f64,
    /// Entanglement fidelity 1 - N_R/2, valid for N_R << 1.
    pub fidelity: f64,
}

impl NoiseReport {
    pub fn new(n_th: f64, flux_photons_per_s: Vec<f64>, n_r: f64) -> Self {
        Self { n_th, flux_photons_per_s, n_r, fidelity: 1.0 - n_r / 2.0 }
    }
}
