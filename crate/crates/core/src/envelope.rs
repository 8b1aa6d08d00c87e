//! Complex field envelopes and pulse construction/measurement primitives.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Spectral, TemporalGrid};
use crate::params::PumpConfig;

/// Sampled slowly-varying field amplitude for the two orthogonal pump
/// polarizations; |samples|² is the instantaneous power in W.
#[derive(Clone, Debug)]
pub struct ComplexEnvelope {
    grid: Arc<TemporalGrid>,
    pub samples_x: Vec<Complex64>,
    pub samples_y: Vec<Complex64>,
    pub carrier_wavelength_nm: f64,
}

impl ComplexEnvelope {
    pub fn new(
        grid: Arc<TemporalGrid>,
        samples_x: Vec<Complex64>,
        samples_y: Vec<Complex64>,
        carrier_wavelength_nm: f64,
    ) -> Result<Self> {
        if samples_x.len() != grid.n_samples() || samples_y.len() != grid.n_samples() {
            return Err(Error::Pump(format!(
                "sample count ({}, {}) does not match grid ({})",
                samples_x.len(),
                samples_y.len(),
                grid.n_samples()
            )));
        }
        Ok(Self { grid, samples_x, samples_y, carrier_wavelength_nm })
    }

    pub fn grid(&self) -> &Arc<TemporalGrid> {
        &self.grid
    }

    /// Instantaneous total power profile |A_x|² + |A_y|² [W].
    pub fn total_power(&self) -> Vec<f64> {
        self.samples_x
            .iter()
            .zip(&self.samples_y)
            .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
            .collect()
    }

    pub fn power_x(&self) -> Vec<f64> {
        self.samples_x.iter().map(|x| x.norm_sqr()).collect()
    }

    pub fn power_y(&self) -> Vec<f64> {
        self.samples_y.iter().map(|y| y.norm_sqr()).collect()
    }
}

/// Build the equal-split two-polarization Gaussian pump
/// `A_j(t) = sqrt(P0) * exp(-t²/2σ²)` on the given grid.
///
/// Fails when the grid is narrower than 20σ, where the truncated tails would
/// exceed 10⁻⁶ of the pulse energy.
pub fn build_gaussian_pump(cfg: &PumpConfig, grid: &Arc<TemporalGrid>) -> Result<ComplexEnvelope> {
    cfg.validate()?;
    let energy = cfg.energy_total()?;
    if energy == 0.0 {
        let zeros = vec![Complex64::new(0.0, 0.0); grid.n_samples()];
        return ComplexEnvelope::new(grid.clone(), zeros.clone(), zeros, cfg.wavelength_nm);
    }
    let sigma = cfg.sigma()?;
    if grid.t_span() < 20.0 * sigma {
        return Err(Error::Pump(format!(
            "grid span {} ps is below 20 sigma = {} ps; Gaussian tail truncation would exceed 1e-6",
            grid.t_span(),
            20.0 * sigma
        )));
    }
    let p0 = cfg.peak_power_per_pol()?;
    let amp = p0.sqrt();
    let samples: Vec<Complex64> = grid
        .t_axis()
        .iter()
        .map(|&t| Complex64::new(amp * (-t * t / (2.0 * sigma * sigma)).exp(), 0.0))
        .collect();
    ComplexEnvelope::new(grid.clone(), samples.clone(), samples, cfg.wavelength_nm)
}

/// Gaussian pulse in a single polarization (x) with the given peak power;
/// used for per-pulse shape studies where the orthogonal pump evolves
/// independently.
pub fn build_single_pol_gaussian(
    peak_power_w: f64,
    sigma_ps: f64,
    wavelength_nm: f64,
    grid: &Arc<TemporalGrid>,
) -> Result<ComplexEnvelope> {
    if !(peak_power_w >= 0.0 && sigma_ps > 0.0) {
        return Err(Error::Pump("peak power and width must be nonnegative/positive".into()));
    }
    if grid.t_span() < 20.0 * sigma_ps {
        return Err(Error::Pump(format!(
            "grid span {} ps is below 20 sigma = {} ps",
            grid.t_span(),
            20.0 * sigma_ps
        )));
    }
    let amp = peak_power_w.sqrt();
    let x: Vec<Complex64> = grid
        .t_axis()
        .iter()
        .map(|&t| Complex64::new(amp * (-t * t / (2.0 * sigma_ps * sigma_ps)).exp(), 0.0))
        .collect();
    let zeros = vec![Complex64::new(0.0, 0.0); grid.n_samples()];
    ComplexEnvelope::new(grid.clone(), x, zeros, wavelength_nm)
}

/// Equal-split sech² pump of the given total energy and per-polarization
/// amplitude `sqrt(P0) sech(t/tau0)`; total energy is `4 P0 tau0`.
pub fn build_sech2_pump(
    energy_total_pj: f64,
    tau0_ps: f64,
    wavelength_nm: f64,
    grid: &Arc<TemporalGrid>,
) -> Result<ComplexEnvelope> {
    if !(tau0_ps > 0.0) {
        return Err(Error::Pump("sech2 width must be positive".into()));
    }
    let p0 = energy_total_pj / (4.0 * tau0_ps);
    let amp = p0.sqrt();
    let samples: Vec<Complex64> = grid
        .t_axis()
        .iter()
        .map(|&t| Complex64::new(amp / (t / tau0_ps).cosh(), 0.0))
        .collect();
    ComplexEnvelope::new(grid.clone(), samples.clone(), samples, wavelength_nm)
}

/// Time-integrated energy over both polarizations by the trapezoidal rule [pJ].
pub fn measure_energy(env: &ComplexEnvelope) -> f64 {
    let p = env.total_power();
    let dt = env.grid().dt();
    let sum: f64 = p.iter().sum();
    let ends = (p[0] + p[p.len() - 1]) / 2.0;
    (sum - ends) * dt
}

/// Energy of the total spectral power, for Parseval checks [pJ].
pub fn spectral_energy(env: &ComplexEnvelope) -> f64 {
    let n = env.grid().n_samples();
    let sp = Spectral::new(n);
    let mut total = 0.0;
    for samples in [&env.samples_x, &env.samples_y] {
        let mut buf = samples.clone();
        sp.forward(&mut buf);
        let s: f64 = buf.iter().map(|v| v.norm_sqr()).sum();
        total += s / n as f64;
    }
    total * env.grid().dt()
}

#[derive(Clone, Copy, Debug)]
pub struct FwhmMeasurement {
    pub fwhm_ps: f64,
    /// True when the half-max level is crossed more than twice; the width then
    /// spans the outermost crossing pair.
    pub multimodal: bool,
}

/// Linear-interpolated full width at half of the maximum total power.
pub fn measure_intensity_fwhm(env: &ComplexEnvelope) -> Result<FwhmMeasurement> {
    let p = env.total_power();
    let t = env.grid().t_axis();
    let max = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return Err(Error::Measurement("envelope has no power maximum".into()));
    }
    let half = max / 2.0;
    let mut crossings: Vec<f64> = Vec::new();
    for k in 1..p.len() {
        let (a, b) = (p[k - 1], p[k]);
        if (a < half && b >= half) || (a >= half && b < half) {
            crossings.push(t[k - 1] + (half - a) * (t[k] - t[k - 1]) / (b - a));
        }
    }
    if crossings.len() < 2 {
        return Err(Error::Measurement(
            "half-maximum level is not bracketed on the grid".into(),
        ));
    }
    let first = crossings[0];
    let last = crossings[crossings.len() - 1];
    Ok(FwhmMeasurement { fwhm_ps: last - first, multimodal: crossings.len() > 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::PumpShape;

    fn grid() -> Arc<TemporalGrid> {
        TemporalGrid::new(4096, 1024.0).unwrap()
    }

    fn gaussian_cfg(energy: f64) -> PumpConfig {
        PumpConfig::gaussian_energy(energy, 5.0, 1550.0)
    }

    #[test]
    fn gaussian_pump_energy_round_trip() {
        let g = grid();
        let env = build_gaussian_pump(&gaussian_cfg(2500.0), &g).unwrap();
        let e = measure_energy(&env);
        assert!((e - 2500.0).abs() / 2500.0 < 1e-6, "E = {e}");
        // per-polarization peak power
        let p0 = env.power_x().iter().cloned().fold(0.0, f64::max);
        assert!((p0 - 234.8).abs() < 0.5, "P0 = {p0}");
    }

    #[test]
    fn zero_energy_pump_is_zero() {
        let g = grid();
        let env = build_gaussian_pump(&gaussian_cfg(0.0), &g).unwrap();
        assert!(env.total_power().iter().all(|&p| p == 0.0));
        assert_eq!(measure_energy(&env), 0.0);
    }

    #[test]
    fn narrow_grid_rejected() {
        let g = TemporalGrid::new(1024, 50.0).unwrap();
        assert!(build_gaussian_pump(&gaussian_cfg(1.0), &g).is_err());
    }

    #[test]
    fn square_pulse_energy_and_fwhm() {
        let g = grid();
        let n = g.n_samples();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (k, &t) in g.t_axis().iter().enumerate() {
            if t.abs() <= 5.0 {
                x[k] = Complex64::new(10.0, 0.0); // 100 W
            }
        }
        let env =
            ComplexEnvelope::new(g.clone(), x, vec![Complex64::new(0.0, 0.0); n], 1550.0).unwrap();
        let e = measure_energy(&env);
        // 100 W x ~10 ps single polarization
        assert!((e - 1000.0).abs() <= 100.0 * g.dt() * 2.0, "E = {e}");
        let w = measure_intensity_fwhm(&env).unwrap();
        assert!((w.fwhm_ps - 10.0).abs() <= 2.0 * g.dt(), "fwhm = {}", w.fwhm_ps);
    }

    #[test]
    fn gaussian_fwhm_matches_sigma() {
        let g = grid();
        let env = build_gaussian_pump(&gaussian_cfg(2500.0), &g).unwrap();
        let w = measure_intensity_fwhm(&env).unwrap();
        assert!(!w.multimodal);
        assert!((w.fwhm_ps - 5.0).abs() < g.dt(), "fwhm = {}", w.fwhm_ps);
    }

    #[test]
    fn zero_envelope_has_no_fwhm() {
        let g = grid();
        let env = build_gaussian_pump(&gaussian_cfg(0.0), &g).unwrap();
        assert!(measure_intensity_fwhm(&env).is_err());
    }

    #[test]
    fn parseval_energy_identity() {
        let g = grid();
        let env = build_gaussian_pump(&gaussian_cfg(2500.0), &g).unwrap();
        let et = measure_energy(&env);
        let ew = spectral_energy(&env);
        // trapezoid end correction is zero for the decayed Gaussian
        assert!((et - ew).abs() / et < 1e-10, "time {et} vs spectral {ew}");
    }

    #[test]
    fn grid_refinement_leaves_energy_unchanged() {
        let coarse = TemporalGrid::new(2048, 1024.0).unwrap();
        let fine = TemporalGrid::new(4096, 1024.0).unwrap();
        let cfg = gaussian_cfg(2500.0);
        let a = measure_energy(&build_gaussian_pump(&cfg, &coarse).unwrap());
        let b = measure_energy(&build_gaussian_pump(&cfg, &fine).unwrap());
        assert!((a - b).abs() / a < 1e-8);
    }

    #[test]
    fn sampled_pump_without_samples_rejected() {
        let cfg = PumpConfig {
            shape: PumpShape::Sampled,
            peak_power_total_w: None,
            energy_total_pj: None,
            sigma_ps: None,
            intensity_fwhm_ps: None,
            wavelength_nm: 1550.0,
            custom_samples: None,
        };
        assert!(cfg.validate().is_err());
    }
}
