//! Uniform time grid and its conjugate angular-frequency axis, plus FFT
//! helpers shared by the solver and the phase engine.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform time axis centered on t = 0 together with the conjugate
/// angular-frequency axis in FFT ordering.
#[derive(Clone, Debug)]
pub struct TemporalGrid {
    n_samples: usize,
    t_span: f64,
    dt: f64,
    t_axis: Vec<f64>,
    omega_axis: Vec<f64>,
}

pub const MIN_SAMPLES: usize = 1 << 10;

impl TemporalGrid {
    /// Build a grid with `n_samples` points (power of two, >= 1024) spanning
    /// `t_span_ps` picoseconds.
    pub fn new(n_samples: usize, t_span_ps: f64) -> Result<Arc<Self>> {
        if !n_samples.is_power_of_two() {
            return Err(Error::Grid(format!(
                "n_samples = {n_samples} is not a power of two"
            )));
        }
        if n_samples < MIN_SAMPLES {
            return Err(Error::Grid(format!(
                "n_samples = {n_samples} is below the minimum of {MIN_SAMPLES}"
            )));
        }
        if !(t_span_ps > 0.0) {
            return Err(Error::Grid(format!("t_span = {t_span_ps} ps must be positive")));
        }
        let n = n_samples;
        let dt = t_span_ps / n as f64;
        let t_axis: Vec<f64> = (0..n).map(|k| (k as f64 - (n / 2) as f64) * dt).collect();
        let domega = 2.0 * std::f64::consts::PI / t_span_ps;
        let omega_axis: Vec<f64> = (0..n)
            .map(|k| {
                if k < n / 2 {
                    domega * k as f64
                } else {
                    domega * (k as f64 - n as f64)
                }
            })
            .collect();
        Ok(Arc::new(Self { n_samples: n, t_span: t_span_ps, dt, t_axis, omega_axis }))
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn t_span(&self) -> f64 {
        self.t_span
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_axis(&self) -> &[f64] {
        &self.t_axis
    }

    pub fn omega_axis(&self) -> &[f64] {
        &self.omega_axis
    }

    /// Index of the grid sample closest to `t_ps`, if it lies on the axis.
    pub fn index_of(&self, t_ps: f64) -> Option<usize> {
        let idx = ((t_ps - self.t_axis[0]) / self.dt).round();
        if idx >= 0.0 && (idx as usize) < self.n_samples {
            Some(idx as usize)
        } else {
            None
        }
    }
}

/// Forward/inverse FFT pair on a fixed length, with the inverse carrying the
/// 1/n normalization so that a round trip is the identity.
pub struct Spectral {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Spectral {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        Self { n, forward, inverse }
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.forward.process(buf);
    }

    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inverse.process(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }

    /// Evaluate the band-limited interpolant of a real sequence at every grid
    /// point shifted by `delta` in time units: out[k] = f(t_k + delta).
    ///
    /// The shift is circular in the grid period; callers mask samples whose
    /// true argument falls off the grid.
    pub fn shift_real(&self, samples: &[f64], delta: f64, omega_axis: &[f64], out: &mut [f64]) {
        let mut buf: Vec<Complex64> =
            samples.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        self.forward(&mut buf);
        for (v, &om) in buf.iter_mut().zip(omega_axis) {
            // f(t + delta) <-> F(omega) * exp(i omega delta)
            *v *= Complex64::from_polar(1.0, om * delta);
        }
        // Zero the Nyquist bin's rotated phase residual by symmetrizing: for a
        // real output only the real part is kept below.
        self.inverse(&mut buf);
        for (o, v) in out.iter_mut().zip(&buf) {
            *o = v.re;
        }
    }
}
