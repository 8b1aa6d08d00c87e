//! Directional XPM phase profiles Φ±(t) for the co- and counter-propagating
//! signal, the switching angle θ and common phase φ, and the closed-form
//! Gaussian predictions (total-switching energy, window center and width).
//!
//! Time convention: t is the signal arrival time measured from the pump
//! launch, so the pump sample entering the integral at position z is taken at
//! the retarded time τ = t - L/v_s + z·β±. The total-transmission window of
//! the co-propagating signal is then centered at t_c = L·β₋/2.

use std::sync::Arc;

use statrs::function::erf::erf;

use crate::envelope::measure_intensity_fwhm;
use crate::error::{Error, Result};
use crate::grid::{Spectral, TemporalGrid};
use crate::params::{FiberParams, PumpConfig};
use crate::propagation::PropagationRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Signal travels with the pump; walk-off β₊ = 1/v_s - 1/v_p.
    Co,
    /// Signal travels against the pump; walk-off β₋ = 1/v_s + 1/v_p.
    Counter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseProvenance {
    Numeric,
    GaussianAnalytic,
}

/// Single-direction XPM phase profile on a time grid. Samples whose retarded
/// time would leave the grid for some z are masked invalid and set to zero.
#[derive(Clone, Debug)]
pub struct PhaseProfile {
    grid: Arc<TemporalGrid>,
    pub direction: Direction,
    pub provenance: PhaseProvenance,
    pub phi: Vec<f64>,
    pub valid: Vec<bool>,
}

impl PhaseProfile {
    /// Assemble a profile from raw samples; lengths must match the grid.
    pub fn from_parts(
        grid: Arc<TemporalGrid>,
        direction: Direction,
        provenance: PhaseProvenance,
        phi: Vec<f64>,
        valid: Vec<bool>,
    ) -> Result<Self> {
        if phi.len() != grid.n_samples() || valid.len() != grid.n_samples() {
            return Err(Error::Phase("sample count does not match grid".into()));
        }
        Ok(Self { grid, direction, provenance, phi, valid })
    }

    pub fn grid(&self) -> &Arc<TemporalGrid> {
        &self.grid
    }

    /// Phase at the grid sample nearest `t_ps`; `None` off-grid or masked.
    pub fn value_at(&self, t_ps: f64) -> Option<f64> {
        let k = self.grid.index_of(t_ps)?;
        if self.valid[k] {
            Some(self.phi[k])
        } else {
            None
        }
    }

    pub fn max_value(&self) -> f64 {
        self.phi
            .iter()
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .map(|(&p, _)| p)
            .fold(0.0, f64::max)
    }
}

/// Both directional phases with the derived switching angle
/// θ = (Φ₊-Φ₋)/2 and common phase φ = (Φ₊+Φ₋)/2.
#[derive(Clone, Debug)]
pub struct PhasePair {
    grid: Arc<TemporalGrid>,
    pub provenance: PhaseProvenance,
    pub phi_plus: Vec<f64>,
    pub phi_minus: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi_common: Vec<f64>,
    pub valid: Vec<bool>,
}

impl PhasePair {
    pub fn from_profiles(plus: &PhaseProfile, minus: &PhaseProfile) -> Result<Self> {
        if plus.direction != Direction::Co || minus.direction != Direction::Counter {
            return Err(Error::Phase("pair needs a co and a counter profile".into()));
        }
        if plus.provenance != minus.provenance {
            return Err(Error::Phase("pair mixes numeric and analytic profiles".into()));
        }
        if !Arc::ptr_eq(&plus.grid, &minus.grid)
            && (plus.grid.n_samples() != minus.grid.n_samples()
                || plus.grid.t_span() != minus.grid.t_span())
        {
            return Err(Error::Phase("profiles are on different grids".into()));
        }
        for (&p, &m) in plus.phi.iter().zip(&minus.phi) {
            if p < 0.0 || m < 0.0 {
                return Err(Error::Phase(format!("negative phase ({p}, {m})")));
            }
        }
        let theta: Vec<f64> =
            plus.phi.iter().zip(&minus.phi).map(|(p, m)| (p - m) / 2.0).collect();
        let phi_common: Vec<f64> =
            plus.phi.iter().zip(&minus.phi).map(|(p, m)| (p + m) / 2.0).collect();
        let valid: Vec<bool> =
            plus.valid.iter().zip(&minus.valid).map(|(&a, &b)| a && b).collect();
        Ok(Self {
            grid: plus.grid.clone(),
            provenance: plus.provenance,
            phi_plus: plus.phi.clone(),
            phi_minus: minus.phi.clone(),
            theta,
            phi_common,
            valid,
        })
    }

    pub fn grid(&self) -> &Arc<TemporalGrid> {
        &self.grid
    }

    pub fn switching_angle(&self) -> (&[f64], &[f64]) {
        (&self.theta, &self.phi_common)
    }
}

const GL6_NODES: [f64; 6] = [
    -0.932_469_514_203_152_1,
    -0.661_209_386_466_264_5,
    -0.238_619_186_083_196_9,
    0.238_619_186_083_196_9,
    0.661_209_386_466_264_5,
    0.932_469_514_203_152_1,
];
const GL6_WEIGHTS: [f64; 6] = [
    0.171_324_492_379_170_4,
    0.360_761_573_048_138_6,
    0.467_913_934_572_691_0,
    0.467_913_934_572_691_0,
    0.360_761_573_048_138_6,
    0.171_324_492_379_170_4,
];

fn gl6() -> ([f64; 6], [f64; 6]) {
    (GL6_NODES, GL6_WEIGHTS)
}

/// Φ(t) = ∫₀ᴸ [ξ∥·P∥ + ξ⊥·P⊥](z, t - L/v_s + z·β) dz, accumulated with
/// composite 6-point Gauss-Legendre quadrature in z; the pump power at the
/// retarded time comes from an FFT fractional time shift of the propagated
/// profile, exact for band-limited data.
pub fn xpm_phase_numeric(
    record: &PropagationRecord,
    xi_parallel: f64,
    xi_perp: f64,
    direction: Direction,
) -> Result<PhaseProfile> {
    if xi_parallel + xi_perp <= 0.0 {
        return Err(Error::Phase("xi sum must be positive".into()));
    }
    let fiber = record.fiber();
    let grid = record.input().grid().clone();
    let n = grid.n_samples();
    let l = fiber.length_m;
    let beta = fiber.walk_off(direction);
    let offset = -l * fiber.inv_v_s();

    let width = match measure_intensity_fwhm(record.input()) {
        Ok(m) => m.fwhm_ps,
        // zero pump: nothing to integrate
        Err(_) => {
            return Ok(PhaseProfile {
                grid,
                direction,
                provenance: PhaseProvenance::Numeric,
                phi: vec![0.0; n],
                valid: vec![true; n],
            });
        }
    };

    // resolve the pump transit through each retarded-time sample: a few
    // quadrature panels per pulse width, with a floor for the loss envelope
    let sweep = l * beta.abs();
    let n_panels = ((4.0 * sweep / width).ceil() as usize).clamp(64, 8192);
    let (nodes, weights) = gl6();
    let h = l / n_panels as f64;
    let mut z_nodes = Vec::with_capacity(6 * n_panels);
    let mut z_weights = Vec::with_capacity(6 * n_panels);
    for p in 0..n_panels {
        let z0 = p as f64 * h;
        for (x, w) in nodes.iter().zip(&weights) {
            z_nodes.push(z0 + (x + 1.0) / 2.0 * h);
            z_weights.push(w * h / 2.0);
        }
    }

    let sp = Spectral::new(n);
    let mut phi = vec![0.0_f64; n];
    let mut shifted_x = vec![0.0_f64; n];
    let mut shifted_y = vec![0.0_f64; n];
    record.scan_powers(&z_nodes, |k, px, py| {
        let delta = offset + z_nodes[k] * beta;
        sp.shift_real(px, delta, grid.omega_axis(), &mut shifted_x);
        sp.shift_real(py, delta, grid.omega_axis(), &mut shifted_y);
        let w = z_weights[k];
        for ((acc, &sx), &sy) in phi.iter_mut().zip(&shifted_x).zip(&shifted_y) {
            *acc += w * (xi_parallel * sx + xi_perp * sy);
        }
    })?;

    // retarded time must stay on-grid at both fiber ends
    let (t0, t1) = (grid.t_axis()[0], grid.t_axis()[n - 1]);
    let mut valid = vec![false; n];
    for (k, &t) in grid.t_axis().iter().enumerate() {
        let tau_start = t + offset;
        let tau_end = t + offset + l * beta;
        valid[k] = (t0..=t1).contains(&tau_start) && (t0..=t1).contains(&tau_end);
        if !valid[k] {
            phi[k] = 0.0;
        }
    }
    // band-limited interpolation rings slightly below zero outside the pump
    // (more so on coarse grids, where the pump spectrum nears the Nyquist
    // edge); clamp it, but treat excursions beyond 1e-4 of the peak as a real
    // error, since a sign mistake would show up at the scale of the peak
    let peak = phi.iter().cloned().fold(0.0, f64::max);
    let floor = -(1e-4 * peak).max(1e-12);
    for p in phi.iter_mut() {
        if *p < 0.0 {
            if *p < floor {
                return Err(Error::Phase(format!("phase integral went negative: {p}")));
            }
            *p = 0.0;
        }
    }
    Ok(PhaseProfile { grid, direction, provenance: PhaseProvenance::Numeric, phi, valid })
}

/// Closed-form Φᴳ(t) for a Gaussian pump with loss. For nonzero walk-off β,
///
///   μ(t) = (√π σ / 2β) · exp(2αu/β + α²σ²/β²)
///          · [Erf((u+Lβ)/σ + ασ/β) - Erf(u/σ + ασ/β)],   u = t - L/v_s,
///
/// and in the lockstep case β = 0 (signal and pump at the same velocity)
///
///   μ(t) = [(1 - e^{-2αL}) / 2α] · e^{-u²/σ²}.
///
/// Φ = P₀ (ξ∥+ξ⊥) μ with P₀ the per-polarization peak power.
pub fn xpm_phase_gaussian(
    fiber: &FiberParams,
    pump: &PumpConfig,
    xi_parallel: f64,
    xi_perp: f64,
    direction: Direction,
    grid: &Arc<TemporalGrid>,
) -> Result<PhaseProfile> {
    if xi_parallel + xi_perp <= 0.0 {
        return Err(Error::Phase("xi sum must be positive".into()));
    }
    let sigma = pump.sigma()?;
    let p0 = pump.peak_power_per_pol()?;
    let scale = p0 * (xi_parallel + xi_perp);
    let alpha = fiber.alpha_per_m;
    let l = fiber.length_m;
    let beta = fiber.walk_off(direction);
    let offset = -l * fiber.inv_v_s();
    let n = grid.n_samples();

    let mut phi = Vec::with_capacity(n);
    if beta == 0.0 {
        let l_eff = if alpha == 0.0 { l } else { (1.0 - (-2.0 * alpha * l).exp()) / (2.0 * alpha) };
        for &t in grid.t_axis() {
            let u = t + offset;
            phi.push(scale * l_eff * (-u * u / (sigma * sigma)).exp());
        }
    } else {
        let pref = std::f64::consts::PI.sqrt() * sigma / (2.0 * beta);
        let a_over_b = alpha * sigma / beta;
        for &t in grid.t_axis() {
            let u = t + offset;
            let e1 = erf((u + l * beta) / sigma + a_over_b);
            let e0 = erf(u / sigma + a_over_b);
            let mu = if e1 == e0 {
                0.0 // both tails saturated; avoid 0 times a large exponential
            } else {
                pref * (2.0 * alpha * u / beta + a_over_b * a_over_b).exp() * (e1 - e0)
            };
            phi.push(scale * mu.max(0.0));
        }
    }
    Ok(PhaseProfile {
        grid: grid.clone(),
        direction,
        provenance: PhaseProvenance::GaussianAnalytic,
        phi,
        valid: vec![true; n],
    })
}

/// Pump energy at which the differential phase reaches π and the switch is
/// fully cross: E = 2π|β₊| / (ξ∥+ξ⊥), in pJ for β in ps/m and ξ in 1/(W·m).
/// Shape-independent; valid for negligible loss.
pub fn total_switch_energy(fiber: &FiberParams, xi_parallel: f64, xi_perp: f64) -> Result<f64> {
    let xi_sum = xi_parallel + xi_perp;
    if xi_sum <= 0.0 {
        return Err(Error::Phase("xi sum must be positive".into()));
    }
    Ok(2.0 * std::f64::consts::PI * fiber.beta_plus_ps_per_m.abs() / xi_sum)
}

#[derive(Clone, Copy, Debug)]
pub struct WindowMetrics {
    /// Total-switching pump energy [pJ]; absent in the lockstep case β₊ = 0,
    /// where only partial switching is possible.
    pub e_star_pj: Option<f64>,
    /// Window center, measured from pump launch: t_c = L·β₋/2 [ps].
    pub t_center_ps: f64,
    /// Window FWHM τ_w = L|β₊| - 2σ·Erf⁻¹(π/4) [ps]; 0 when not walked through.
    pub tau_w_ps: f64,
    /// Whether the pump walks fully through the signal: L > 2σ/|β₊|.
    pub walk_through_ok: bool,
}

/// Inverse error function by bisection on the monotone Erf, to 1e-12 in x.
pub fn erf_inv_bracketed(y: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&y) || y.abs() == 1.0 {
        return Err(Error::Phase(format!("erf_inv argument {y} outside (-1, 1)")));
    }
    let (mut lo, mut hi) = (-8.0_f64, 8.0_f64);
    while hi - lo > 1e-13 {
        let mid = (lo + hi) / 2.0;
        if erf(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

pub fn window_metrics(
    fiber: &FiberParams,
    pump: &PumpConfig,
    xi_parallel: f64,
    xi_perp: f64,
) -> Result<WindowMetrics> {
    let sigma = pump.sigma()?;
    let beta_p = fiber.beta_plus_ps_per_m;
    let t_center_ps = fiber.length_m * fiber.beta_minus_ps_per_m / 2.0;
    if beta_p == 0.0 {
        return Ok(WindowMetrics {
            e_star_pj: None,
            t_center_ps,
            tau_w_ps: 0.0,
            walk_through_ok: false,
        });
    }
    let e_star = total_switch_energy(fiber, xi_parallel, xi_perp)?;
    let tau_raw = fiber.length_m * beta_p.abs()
        - 2.0 * sigma * erf_inv_bracketed(std::f64::consts::FRAC_PI_4)?;
    let walk_through_ok =
        fiber.length_m > 2.0 * sigma / beta_p.abs() && tau_raw > 0.0;
    Ok(WindowMetrics {
        e_star_pj: Some(e_star),
        t_center_ps,
        tau_w_ps: if walk_through_ok { tau_raw } else { 0.0 },
        walk_through_ok,
    })
}
