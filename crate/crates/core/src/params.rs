//! Fiber, pump, and Raman-model parameter types.

use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};

/// Two-Lorentzian model of the delayed Raman response: a damped oscillator for
/// the isotropic part and a boson-peak form for the anisotropic part, with
/// fractional weights `f_a + f_b = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RamanModelParams {
    pub tau1_fs: f64,
    pub tau2_fs: f64,
    pub tau_b_fs: f64,
    pub f_a: f64,
    pub f_b: f64,
}

impl Default for RamanModelParams {
    fn default() -> Self {
        Self { tau1_fs: 12.2, tau2_fs: 32.0, tau_b_fs: 96.0, f_a: 0.79, f_b: 0.21 }
    }
}

impl RamanModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau1_fs > 0.0 && self.tau2_fs > 0.0 && self.tau_b_fs > 0.0) {
            return Err(Error::Params("Raman time constants must be positive".into()));
        }
        if (self.f_a + self.f_b - 1.0).abs() > 1e-12 {
            return Err(Error::Params(format!(
                "Raman weights must satisfy f_a + f_b = 1, got {} + {}",
                self.f_a, self.f_b
            )));
        }
        Ok(())
    }
}

/// Fiber parameters. Walk-off is carried as the co-propagating difference
/// `beta_plus = 1/v_s - 1/v_p` and the counter-propagating sum
/// `beta_minus = 1/v_s + 1/v_p`, both in ps/m.
#[derive(Clone, Debug)]
pub struct FiberParams {
    /// Field loss coefficient [1/m]; power decays as exp(-2*alpha*z).
    pub alpha_per_m: f64,
    pub beta_plus_ps_per_m: f64,
    pub beta_minus_ps_per_m: f64,
    /// Pump group-velocity dispersion [ps²/m].
    pub beta2_ps2_per_m: f64,
    /// Nonlinear coefficient [1/(W·m)].
    pub gamma_per_w_m: f64,
    /// Fractional Raman contribution to the nonlinearity.
    pub f_raman: f64,
    pub length_m: f64,
    /// Documentation only; gamma can be derived from it via
    /// [`crate::constants::gamma_from_mfd`].
    pub mode_field_diameter_um: Option<f64>,
    pub raman_model: RamanModelParams,
}

impl FiberParams {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_per_m < 0.0 {
            return Err(Error::Params("alpha must be nonnegative".into()));
        }
        if !(self.gamma_per_w_m > 0.0) {
            return Err(Error::Params("gamma must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.f_raman) {
            return Err(Error::Params("f_raman must lie in [0, 1)".into()));
        }
        if !(self.length_m > 0.0) {
            return Err(Error::Params("length must be positive".into()));
        }
        if self.beta_minus_ps_per_m <= self.beta_plus_ps_per_m.abs() {
            return Err(Error::Params(
                "beta_minus must exceed |beta_plus| (group velocities finite and positive)".into(),
            ));
        }
        self.raman_model.validate()
    }

    /// Inverse signal group velocity [ps/m].
    pub fn inv_v_s(&self) -> f64 {
        (self.beta_minus_ps_per_m + self.beta_plus_ps_per_m) / 2.0
    }

    /// Inverse pump group velocity [ps/m].
    pub fn inv_v_p(&self) -> f64 {
        (self.beta_minus_ps_per_m - self.beta_plus_ps_per_m) / 2.0
    }

    pub fn walk_off(&self, direction: crate::phase::Direction) -> f64 {
        match direction {
            crate::phase::Direction::Co => self.beta_plus_ps_per_m,
            crate::phase::Direction::Counter => self.beta_minus_ps_per_m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumpShape {
    Gaussian,
    Sampled,
}

/// Pump-pulse description. For a Gaussian pump exactly one of the total peak
/// power and the total energy is given; the other follows from
/// `E = 2*sqrt(pi)*sigma*P0` with `P0` the per-polarization peak power (the
/// pump is split equally between the two orthogonal polarizations, so the
/// total peak power is `2*P0`).
#[derive(Clone, Debug)]
pub struct PumpConfig {
    pub shape: PumpShape,
    /// Peak power summed over both polarizations [W].
    pub peak_power_total_w: Option<f64>,
    /// Energy summed over both polarizations [pJ].
    pub energy_total_pj: Option<f64>,
    /// Gaussian amplitude width [ps].
    pub sigma_ps: Option<f64>,
    /// Intensity FWHM [ps]; `sigma = fwhm / (2*sqrt(ln 2))`.
    pub intensity_fwhm_ps: Option<f64>,
    pub wavelength_nm: f64,
    pub custom_samples: Option<ComplexEnvelope>,
}

impl PumpConfig {
    pub fn gaussian_energy(energy_total_pj: f64, intensity_fwhm_ps: f64, wavelength_nm: f64) -> Self {
        Self {
            shape: PumpShape::Gaussian,
            peak_power_total_w: None,
            energy_total_pj: Some(energy_total_pj),
            sigma_ps: None,
            intensity_fwhm_ps: Some(intensity_fwhm_ps),
            wavelength_nm,
            custom_samples: None,
        }
    }

    /// Gaussian amplitude width sigma [ps].
    pub fn sigma(&self) -> Result<f64> {
        match (self.sigma_ps, self.intensity_fwhm_ps) {
            (Some(s), None) => Ok(s),
            (None, Some(f)) => Ok(f / (2.0 * (2.0_f64).ln().sqrt())),
            (Some(s), Some(f)) => {
                let derived = f / (2.0 * (2.0_f64).ln().sqrt());
                if (derived - s).abs() > 1e-9 * s.max(1.0) {
                    return Err(Error::Pump(format!(
                        "sigma = {s} ps and intensity FWHM = {f} ps are inconsistent"
                    )));
                }
                Ok(s)
            }
            (None, None) => Err(Error::Pump("no pump width given".into())),
        }
    }

    /// Total pump energy over both polarizations [pJ].
    pub fn energy_total(&self) -> Result<f64> {
        match (self.energy_total_pj, self.peak_power_total_w) {
            (Some(e), None) => Ok(e),
            (None, Some(p)) => Ok(std::f64::consts::PI.sqrt() * self.sigma()? * p),
            (Some(_), Some(_)) => {
                Err(Error::Pump("give either pump energy or peak power, not both".into()))
            }
            (None, None) => Err(Error::Pump("no pump energy or peak power given".into())),
        }
    }

    /// Per-polarization peak power P0 = E / (2*sqrt(pi)*sigma) [W].
    pub fn peak_power_per_pol(&self) -> Result<f64> {
        Ok(self.energy_total()? / (2.0 * std::f64::consts::PI.sqrt() * self.sigma()?))
    }

    pub fn validate(&self) -> Result<()> {
        match self.shape {
            PumpShape::Gaussian => {
                let e = self.energy_total()?;
                if e < 0.0 {
                    return Err(Error::Pump("pump energy must be nonnegative".into()));
                }
                let _ = self.sigma()?;
                Ok(())
            }
            PumpShape::Sampled => {
                if self.custom_samples.is_none() {
                    return Err(Error::Pump("sampled pump needs custom_samples".into()));
                }
                Ok(())
            }
        }
    }
}
