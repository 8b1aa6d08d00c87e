//! The five study types exposed by the CLI, each reproducing one figure-level
//! result: energy sweeps, switching-window traces, signal delay scans, pump
//! pulse-shape evolution, and Raman-noise curves.

use crate::envelope::{build_single_pol_gaussian, measure_intensity_fwhm};
use crate::error::{Error, Result};
use crate::propagation::propagate_pump;
use crate::raman::{raman_photon_number, raman_spectrum, thermal_occupancy};
use crate::scenario::SwitchScenario;
use crate::switch::{delay_scan, energy_sweep, SweepMode};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq)]
pub enum Study {
    /// Peak transmission/reflection versus pump energy.
    EnergySweep { energies_pj: Vec<f64>, mode: SweepMode },
    /// Analytic and numeric switching-window traces T(t), aligned on the grid.
    WindowTrace,
    /// Switching probability of a Gaussian signal pulse versus its delay.
    DelayScan { delays_ps: Vec<f64>, signal_fwhm_ps: Option<f64>, mode: SweepMode },
    /// Output pump FWHM after each fiber length. Each orthogonally polarized
    /// pump pulse rides its own carrier and evolves independently, with peak
    /// power P0/2; cross-polarized XPM contributes no shape-driving chirp.
    PumpBroadening { lengths_m: Vec<f64> },
    /// N_R and fidelity over signal wavelengths and bandwidth-window products.
    NoiseCurve { signal_wavelengths_nm: Vec<f64>, b_tau_w: Vec<f64> },
}

impl Study {
    pub fn name(&self) -> &'static str {
        match self {
            Study::EnergySweep { .. } => "energy_sweep",
            Study::WindowTrace => "window_trace",
            Study::DelayScan { .. } => "delay_scan",
            Study::PumpBroadening { .. } => "pump_broadening",
            Study::NoiseCurve { .. } => "noise_curve",
        }
    }

    /// Figure of the source publication this study reproduces.
    pub fn figure(&self) -> &'static str {
        match self {
            Study::EnergySweep { .. } => "fig2",
            Study::WindowTrace => "fig4a",
            Study::DelayScan { .. } => "fig4b",
            Study::PumpBroadening { .. } => "fig5",
            Study::NoiseCurve { .. } => "fig3",
        }
    }
}

/// Plain numeric table with a fixed header; the CLI serializes it as CSV.
#[derive(Clone, Debug)]
pub struct ResultTable {
    pub study: &'static str,
    pub figure: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub fn run_study(scenario: &SwitchScenario, study: &Study) -> Result<ResultTable> {
    scenario.validate()?;
    match study {
        Study::EnergySweep { energies_pj, mode } => {
            let grid = scenario.temporal_grid()?;
            let (xp, xq) = scenario.xi_real();
            let points = energy_sweep(
                &scenario.fiber,
                &scenario.pump,
                xp,
                xq,
                scenario.loss_signal,
                energies_pj,
                *mode,
                &grid,
                &scenario.solver,
            )?;
            Ok(ResultTable {
                study: study.name(),
                figure: study.figure(),
                columns: vec!["E_pJ", "T_peak", "R_peak"],
                rows: points
                    .iter()
                    .map(|p| vec![p.energy_pj, p.t_peak, p.r_peak])
                    .collect(),
            })
        }
        Study::WindowTrace => {
            let analytic = scenario.response(SweepMode::Analytic)?;
            let numeric = scenario.response(SweepMode::Numeric)?;
            let grid = analytic.grid();
            let rows = grid
                .t_axis()
                .iter()
                .enumerate()
                .map(|(k, &t)| {
                    vec![
                        t,
                        analytic.transmission[k],
                        numeric.transmission[k],
                        if numeric.valid[k] { 1.0 } else { 0.0 },
                    ]
                })
                .collect();
            Ok(ResultTable {
                study: study.name(),
                figure: study.figure(),
                columns: vec!["t_ps", "T_analytic", "T_numeric", "numeric_valid"],
                rows,
            })
        }
        Study::DelayScan { delays_ps, signal_fwhm_ps, mode } => {
            let fwhm = signal_fwhm_ps.or(scenario.signal_fwhm_ps).ok_or_else(|| {
                Error::Scenario("delay scan needs a signal pulse width".into())
            })?;
            let response = scenario.response(*mode)?;
            let scan = delay_scan(&response, fwhm, delays_ps)?;
            Ok(ResultTable {
                study: study.name(),
                figure: study.figure(),
                columns: vec!["delay_ps", "switch_probability", "valid"],
                rows: scan
                    .delays_ps
                    .iter()
                    .zip(&scan.switch_probability)
                    .zip(&scan.valid)
                    .map(|((&d, &p), &v)| vec![d, p, if v { 1.0 } else { 0.0 }])
                    .collect(),
            })
        }
        Study::PumpBroadening { lengths_m } => {
            if lengths_m.iter().any(|&l| !(l > 0.0)) {
                return Err(Error::Scenario("fiber lengths must be positive".into()));
            }
            let grid = scenario.temporal_grid()?;
            let sigma = scenario.pump.sigma()?;
            // per-pulse peak P0/2: half the per-polarization peak power
            let peak = scenario.pump.peak_power_per_pol()? / 2.0;
            let run_one = |&length: &f64| -> Result<Vec<f64>> {
                let env =
                    build_single_pol_gaussian(peak, sigma, scenario.pump.wavelength_nm, &grid)?;
                let mut fiber = scenario.fiber.clone();
                fiber.length_m = length;
                let rec = propagate_pump(&env, &fiber, &scenario.solver)?;
                let w = measure_intensity_fwhm(&rec.final_envelope)?;
                Ok(vec![length, w.fwhm_ps, if w.multimodal { 1.0 } else { 0.0 }])
            };
            let rows: Result<Vec<Vec<f64>>> = {
                #[cfg(feature = "parallel")]
                {
                    lengths_m.par_iter().map(|l| run_one(l)).collect()
                }
                #[cfg(not(feature = "parallel"))]
                {
                    lengths_m.iter().map(run_one).collect()
                }
            };
            Ok(ResultTable {
                study: study.name(),
                figure: study.figure(),
                columns: vec!["length_m", "fwhm_ps", "multimodal"],
                rows: rows?,
            })
        }
        Study::NoiseCurve { signal_wavelengths_nm, b_tau_w } => {
            if signal_wavelengths_nm
                .iter()
                .any(|&w| !(w > 0.0) || w == scenario.pump.wavelength_nm)
            {
                return Err(Error::Scenario(
                    "signal wavelengths must be positive and differ from the pump".into(),
                ));
            }
            let mut rows = Vec::new();
            for &wl in signal_wavelengths_nm {
                let om = crate::constants::detuning_rad_per_ps(wl, scenario.pump.wavelength_nm);
                let spectra = raman_spectrum(
                    &scenario.fiber.raman_model,
                    scenario.fiber.gamma_per_w_m,
                    scenario.fiber.f_raman,
                    om.abs(),
                );
                let n_th = thermal_occupancy(om, scenario.temperature_k)?;
                for &bt in b_tau_w {
                    let n_r = raman_photon_number(
                        scenario.fiber.gamma_per_w_m,
                        scenario.fiber.f_raman,
                        bt,
                        n_th,
                        &spectra,
                    )?;
                    rows.push(vec![wl, bt, n_r, 1.0 - n_r / 2.0]);
                }
            }
            Ok(ResultTable {
                study: study.name(),
                figure: study.figure(),
                columns: vec!["signal_wavelength_nm", "b_tau_w", "n_r", "fidelity"],
                rows,
            })
        }
    }
}
