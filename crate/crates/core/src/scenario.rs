//! A complete switch configuration (fiber, pump, signal, environment, grid,
//! solver) plus the derived quantities the studies and the CLI need.

use std::sync::Arc;

use crate::constants::detuning_rad_per_ps;
use crate::envelope::build_gaussian_pump;
use crate::error::{Error, Result};
use crate::grid::TemporalGrid;
use crate::params::{FiberParams, PumpConfig, PumpShape};
use crate::phase::{
    window_metrics, xpm_phase_gaussian, xpm_phase_numeric, Direction, PhasePair, WindowMetrics,
};
use crate::propagation::{propagate_pump, SolverSettings};
use crate::raman::{
    raman_flux, raman_photon_number, raman_spectrum, thermal_occupancy, NoiseReport, RamanSpectra,
};
use crate::switch::{response_from_phases, SweepMode, SwitchResponse};

#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub n_samples: usize,
    pub t_span_ps: f64,
}

#[derive(Clone, Debug)]
pub struct SwitchScenario {
    pub fiber: FiberParams,
    pub pump: PumpConfig,
    pub signal_wavelength_nm: f64,
    /// Signal intensity FWHM for delay scans [ps].
    pub signal_fwhm_ps: Option<f64>,
    pub temperature_k: f64,
    /// Signal detection bandwidth [GHz].
    pub bandwidth_ghz: f64,
    /// Signal path loss exponent ℓ_s (amplitude attenuates by e^{-ℓ_s}).
    pub loss_signal: f64,
    /// Raman-photon path loss exponent ℓ_r.
    pub loss_raman: f64,
    pub grid: GridSpec,
    pub solver: SolverSettings,
}

impl SwitchScenario {
    pub fn validate(&self) -> Result<()> {
        self.fiber.validate()?;
        self.pump.validate()?;
        if !(self.temperature_k > 0.0) {
            return Err(Error::Scenario("temperature must be positive".into()));
        }
        if !(self.bandwidth_ghz > 0.0) {
            return Err(Error::Scenario("bandwidth must be positive".into()));
        }
        if self.loss_signal < 0.0 || self.loss_raman < 0.0 {
            return Err(Error::Scenario("loss exponents must be nonnegative".into()));
        }
        if !(self.signal_wavelength_nm > 0.0) {
            return Err(Error::Scenario("signal wavelength must be positive".into()));
        }
        if self.signal_wavelength_nm == self.pump.wavelength_nm {
            return Err(Error::Scenario(
                "signal and pump wavelengths must differ (thermal occupancy diverges)".into(),
            ));
        }
        if let Some(f) = self.signal_fwhm_ps {
            if !(f > 0.0) {
                return Err(Error::Scenario("signal width must be positive".into()));
            }
        }
        self.temporal_grid()?;
        self.solver.validate(self.fiber.length_m)?;
        Ok(())
    }

    pub fn temporal_grid(&self) -> Result<Arc<TemporalGrid>> {
        TemporalGrid::new(self.grid.n_samples, self.grid.t_span_ps)
    }

    /// Signal-pump detuning Ω [rad/ps]; positive for a signal blue of the pump.
    pub fn detuning(&self) -> f64 {
        detuning_rad_per_ps(self.signal_wavelength_nm, self.pump.wavelength_nm)
    }

    /// Raman-dressed coefficients at the detuning magnitude.
    pub fn spectra(&self) -> RamanSpectra {
        raman_spectrum(
            &self.fiber.raman_model,
            self.fiber.gamma_per_w_m,
            self.fiber.f_raman,
            self.detuning().abs(),
        )
    }

    /// Real XPM coefficients (ξ∥, ξ⊥) entering the phase formulas.
    pub fn xi_real(&self) -> (f64, f64) {
        let s = self.spectra();
        (s.xi_parallel.re, s.xi_perp.re)
    }

    pub fn window(&self) -> Result<WindowMetrics> {
        let (xp, xq) = self.xi_real();
        window_metrics(&self.fiber, &self.pump, xp, xq)
    }

    /// Directional phase profiles on the scenario grid.
    pub fn phase_pair(&self, mode: SweepMode) -> Result<PhasePair> {
        let grid = self.temporal_grid()?;
        let (xp, xq) = self.xi_real();
        match mode {
            SweepMode::Analytic => {
                if self.pump.shape != PumpShape::Gaussian {
                    return Err(Error::Scenario(
                        "analytic phases require a Gaussian pump".into(),
                    ));
                }
                let plus =
                    xpm_phase_gaussian(&self.fiber, &self.pump, xp, xq, Direction::Co, &grid)?;
                let minus =
                    xpm_phase_gaussian(&self.fiber, &self.pump, xp, xq, Direction::Counter, &grid)?;
                PhasePair::from_profiles(&plus, &minus)
            }
            SweepMode::Numeric => {
                let env = build_gaussian_pump(&self.pump, &grid)?;
                let rec = propagate_pump(&env, &self.fiber, &self.solver)?;
                let plus = xpm_phase_numeric(&rec, xp, xq, Direction::Co)?;
                let minus = xpm_phase_numeric(&rec, xp, xq, Direction::Counter)?;
                PhasePair::from_profiles(&plus, &minus)
            }
        }
    }

    /// Time-resolved switch response (the switching window).
    pub fn response(&self, mode: SweepMode) -> Result<SwitchResponse> {
        response_from_phases(&self.phase_pair(mode)?, self.loss_signal)
    }

    /// Noise summary at the total-switching operating point. N_R follows the
    /// closed formula (independent of pump energy and length except through
    /// τ_w); the time-resolved flux uses the analytic μ₊ of the configured
    /// pump.
    pub fn noise_report(&self) -> Result<NoiseReport> {
        let win = self.window()?;
        if !win.walk_through_ok {
            return Err(Error::Noise(
                "switching window undefined: pump does not walk through the signal".into(),
            ));
        }
        let spectra = self.spectra();
        let n_th = thermal_occupancy(self.detuning(), self.temperature_k)?;
        let b_tau_w = self.bandwidth_ghz * 1e9 * win.tau_w_ps * 1e-12;
        let n_r = raman_photon_number(
            self.fiber.gamma_per_w_m,
            self.fiber.f_raman,
            b_tau_w,
            n_th,
            &spectra,
        )?;
        // mu_plus(t) = Phi_plus(t) / (P0 (xi_par + xi_perp))
        let grid = self.temporal_grid()?;
        let (xp, xq) = self.xi_real();
        let plus = xpm_phase_gaussian(&self.fiber, &self.pump, xp, xq, Direction::Co, &grid)?;
        let p0 = self.pump.peak_power_per_pol()?;
        let mu: Vec<f64> = if p0 == 0.0 {
            vec![0.0; grid.n_samples()]
        } else {
            plus.phi.iter().map(|&phi| phi / (p0 * (xp + xq))).collect()
        };
        let flux = raman_flux(
            self.fiber.gamma_per_w_m,
            self.fiber.f_raman,
            p0,
            self.bandwidth_ghz * 1e9,
            &mu,
            n_th,
            &spectra,
            self.loss_raman,
        )?;
        Ok(NoiseReport::new(n_th, flux, n_r))
    }

    /// Physics precondition report: hard failures and advisory warnings for
    /// the configured grid and window geometry.
    pub fn preconditions(&self) -> (Vec<String>, Vec<String>) {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();
        let l = self.fiber.length_m;
        let sweep_minus = l * self.fiber.beta_minus_ps_per_m;
        if self.grid.t_span_ps <= sweep_minus {
            errors.push(format!(
                "grid span {} ps cannot hold the counter-propagating walk-off {} ps; \
                 numeric phase profiles would be fully masked",
                self.grid.t_span_ps, sweep_minus
            ));
        }
        let t_c = l * self.fiber.beta_minus_ps_per_m / 2.0;
        if self.grid.t_span_ps / 2.0 <= t_c {
            errors.push(format!(
                "window center t_c = {t_c} ps lies beyond the grid half-span {}",
                self.grid.t_span_ps / 2.0
            ));
        }
        if let Ok(sigma) = self.pump.sigma() {
            let bp = self.fiber.beta_plus_ps_per_m.abs();
            if bp == 0.0 || l <= 2.0 * sigma / bp {
                warnings.push(
                    "walk-through condition violated: only partial switching is possible"
                        .to_string(),
                );
            }
            let dt = self.grid.t_span_ps / self.grid.n_samples as f64;
            if dt > sigma {
                warnings.push(format!(
                    "grid step {dt} ps undersamples the pump (sigma = {sigma:.3} ps); \
                     numeric phase profiles will ring"
                ));
            }
        }
        (errors, warnings)
    }
}
