//! Strict JSON scenario schema and its mapping onto the simulator types.
//! Unknown keys are rejected; physical quantities carry unit-suffixed keys.

use serde::Deserialize;

use sagnac_sim::constants::gamma_from_mfd;
use sagnac_sim::{
    FiberParams, GridSpec, PumpConfig, PumpShape, RamanModelParams, SolverSettings, StepMode,
    Study, SweepMode, SwitchScenario,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub fiber: FiberSection,
    pub pump: PumpSection,
    pub signal: SignalSection,
    pub environment: EnvironmentSection,
    pub grid: GridSection,
    #[serde(default)]
    pub solver: SolverSection,
    pub study: StudySection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSection {
    pub length_m: f64,
    #[serde(default)]
    pub alpha_per_m: f64,
    pub beta_plus_ps_per_m: f64,
    pub beta_minus_ps_per_m: f64,
    #[serde(default)]
    pub beta2_ps2_per_m: f64,
    /// Either the nonlinear coefficient directly or a mode-field diameter to
    /// derive it from; exactly one is required.
    pub gamma_per_w_m: Option<f64>,
    pub mode_field_diameter_um: Option<f64>,
    #[serde(default = "default_f_raman")]
    pub f_raman: f64,
    pub raman_model: Option<RamanModelSection>,
}

fn default_f_raman() -> f64 {
    0.18
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamanModelSection {
    pub tau1_fs: f64,
    pub tau2_fs: f64,
    pub tau_b_fs: f64,
    pub f_a: f64,
    pub f_b: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSection {
    pub energy_total_pj: f64,
    /// Intensity FWHM or the Gaussian sigma of the power profile; exactly one.
    pub intensity_fwhm_ps: Option<f64>,
    pub sigma_ps: Option<f64>,
    pub wavelength_nm: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSection {
    pub wavelength_nm: f64,
    pub fwhm_ps: Option<f64>,
    /// Path loss exponent; amplitude attenuates by e^{-loss}.
    #[serde(default)]
    pub loss: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSection {
    pub temperature_k: f64,
    pub bandwidth_ghz: f64,
    #[serde(default)]
    pub loss_raman: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_samples: usize,
    pub t_span_ps: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default = "default_step_mode")]
    pub step_mode: String,
    #[serde(default = "default_dz")]
    pub dz_fixed_m: f64,
    #[serde(default = "default_max_phase")]
    pub max_phase_step_rad: f64,
}

fn default_step_mode() -> String {
    "phase_bounded".to_string()
}
fn default_dz() -> f64 {
    1.0
}
fn default_max_phase() -> f64 {
    0.05
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            step_mode: default_step_mode(),
            dz_fixed_m: default_dz(),
            max_phase_step_rad: default_max_phase(),
        }
    }
}

/// One flat section with a `kind` discriminator; fields that do not belong to
/// the selected kind are rejected with a path-qualified message.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudySection {
    pub kind: String,
    pub energies_pj: Option<Vec<f64>>,
    pub delays_ps: Option<Vec<f64>>,
    pub signal_fwhm_ps: Option<f64>,
    pub lengths_m: Option<Vec<f64>>,
    pub signal_wavelengths_nm: Option<Vec<f64>>,
    pub b_tau_w: Option<Vec<f64>>,
    pub mode: Option<String>,
}

pub const STUDY_KINDS: [(&str, &str); 5] = [
    ("energy_sweep", "fig2"),
    ("window_trace", "fig4a"),
    ("delay_scan", "fig4b"),
    ("pump_broadening", "fig5"),
    ("noise_curve", "fig3"),
];

fn parse_mode(mode: &Option<String>) -> Result<SweepMode, String> {
    match mode.as_deref() {
        None | Some("analytic") => Ok(SweepMode::Analytic),
        Some("numeric") => Ok(SweepMode::Numeric),
        Some(other) => Err(format!("study.mode: unknown mode '{other}' (analytic | numeric)")),
    }
}

impl StudySection {
    /// Reject fields that the selected kind does not use.
    fn forbid(&self, kind: &str) -> Result<(), String> {
        let mut stray = Vec::new();
        let allowed: &[&str] = match kind {
            "energy_sweep" => &["energies_pj", "mode"],
            "window_trace" => &[],
            "delay_scan" => &["delays_ps", "signal_fwhm_ps", "mode"],
            "pump_broadening" => &["lengths_m"],
            "noise_curve" => &["signal_wavelengths_nm", "b_tau_w"],
            _ => unreachable!(),
        };
        let present: [(&str, bool); 7] = [
            ("energies_pj", self.energies_pj.is_some()),
            ("delays_ps", self.delays_ps.is_some()),
            ("signal_fwhm_ps", self.signal_fwhm_ps.is_some()),
            ("lengths_m", self.lengths_m.is_some()),
            ("signal_wavelengths_nm", self.signal_wavelengths_nm.is_some()),
            ("b_tau_w", self.b_tau_w.is_some()),
            ("mode", self.mode.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                stray.push(name);
            }
        }
        if stray.is_empty() {
            Ok(())
        } else {
            Err(format!("study: fields {stray:?} do not apply to kind '{kind}'"))
        }
    }

    pub fn to_study(&self) -> Result<Study, String> {
        let need = |field: &str| format!("study.{field}: required for kind '{}'", self.kind);
        match self.kind.as_str() {
            "energy_sweep" => {
                self.forbid("energy_sweep")?;
                Ok(Study::EnergySweep {
                    energies_pj: self.energies_pj.clone().ok_or_else(|| need("energies_pj"))?,
                    mode: parse_mode(&self.mode)?,
                })
            }
            "window_trace" => {
                self.forbid("window_trace")?;
                Ok(Study::WindowTrace)
            }
            "delay_scan" => {
                self.forbid("delay_scan")?;
                Ok(Study::DelayScan {
                    delays_ps: self.delays_ps.clone().ok_or_else(|| need("delays_ps"))?,
                    signal_fwhm_ps: self.signal_fwhm_ps,
                    mode: parse_mode(&self.mode)?,
                })
            }
            "pump_broadening" => {
                self.forbid("pump_broadening")?;
                Ok(Study::PumpBroadening {
                    lengths_m: self.lengths_m.clone().ok_or_else(|| need("lengths_m"))?,
                })
            }
            "noise_curve" => {
                self.forbid("noise_curve")?;
                Ok(Study::NoiseCurve {
                    signal_wavelengths_nm: self
                        .signal_wavelengths_nm
                        .clone()
                        .ok_or_else(|| need("signal_wavelengths_nm"))?,
                    b_tau_w: self.b_tau_w.clone().ok_or_else(|| need("b_tau_w"))?,
                })
            }
            other => Err(format!(
                "study.kind: unknown kind '{other}' (energy_sweep | window_trace | delay_scan \
                 | pump_broadening | noise_curve)"
            )),
        }
    }
}

impl ScenarioFile {
    pub fn to_scenario(&self) -> Result<SwitchScenario, String> {
        let gamma = match (self.fiber.gamma_per_w_m, self.fiber.mode_field_diameter_um) {
            (Some(g), _) => g,
            (None, Some(mfd)) => gamma_from_mfd(self.pump.wavelength_nm, mfd),
            (None, None) => {
                return Err(
                    "fiber: one of gamma_per_w_m or mode_field_diameter_um is required".into()
                )
            }
        };
        let raman_model = match &self.fiber.raman_model {
            Some(m) => RamanModelParams {
                tau1_fs: m.tau1_fs,
                tau2_fs: m.tau2_fs,
                tau_b_fs: m.tau_b_fs,
                f_a: m.f_a,
                f_b: m.f_b,
            },
            None => RamanModelParams::default(),
        };
        let pump = match (self.pump.intensity_fwhm_ps, self.pump.sigma_ps) {
            (Some(_), Some(_)) => {
                return Err("pump: give intensity_fwhm_ps or sigma_ps, not both".into())
            }
            (None, None) => {
                return Err("pump: one of intensity_fwhm_ps or sigma_ps is required".into())
            }
            (fwhm, sigma) => PumpConfig {
                shape: PumpShape::Gaussian,
                peak_power_total_w: None,
                energy_total_pj: Some(self.pump.energy_total_pj),
                sigma_ps: sigma,
                intensity_fwhm_ps: fwhm,
                wavelength_nm: self.pump.wavelength_nm,
                custom_samples: None,
            },
        };
        let step_mode = match self.solver.step_mode.as_str() {
            "fixed" => StepMode::Fixed,
            "phase_bounded" => StepMode::PhaseBounded,
            other => {
                return Err(format!(
                    "solver.step_mode: unknown mode '{other}' (fixed | phase_bounded)"
                ))
            }
        };
        Ok(SwitchScenario {
            fiber: FiberParams {
                alpha_per_m: self.fiber.alpha_per_m,
                beta_plus_ps_per_m: self.fiber.beta_plus_ps_per_m,
                beta_minus_ps_per_m: self.fiber.beta_minus_ps_per_m,
                beta2_ps2_per_m: self.fiber.beta2_ps2_per_m,
                gamma_per_w_m: gamma,
                f_raman: self.fiber.f_raman,
                length_m: self.fiber.length_m,
                mode_field_diameter_um: self.fiber.mode_field_diameter_um,
                raman_model,
            },
            pump,
            signal_wavelength_nm: self.signal.wavelength_nm,
            signal_fwhm_ps: self.signal.fwhm_ps,
            temperature_k: self.environment.temperature_k,
            bandwidth_ghz: self.environment.bandwidth_ghz,
            loss_signal: self.signal.loss,
            loss_raman: self.environment.loss_raman,
            grid: GridSpec { n_samples: self.grid.n_samples, t_span_ps: self.grid.t_span_ps },
            solver: SolverSettings {
                step_mode,
                dz_fixed_m: self.solver.dz_fixed_m,
                max_phase_step_rad: self.solver.max_phase_step_rad,
                ..Default::default()
            },
        })
    }
}
