//! Physical constants in the crate's unit system.

/// Reduced Planck constant [J·s].
pub const HBAR_J_S: f64 = 1.054571817e-34;

/// Boltzmann constant [J/K].
pub const K_B_J_PER_K: f64 = 1.380649e-23;

/// Speed of light [nm/ps].
pub const C_NM_PER_PS: f64 = 2.99792458e5;

/// Nonlinear refractive index of fused silica [m²/W].
pub const N2_SILICA_M2_PER_W: f64 = 2.6e-20;

/// Angular detuning between two carriers given by their vacuum wavelengths
/// [rad/ps]. Positive when `lambda_a` is blue of `lambda_b`.
pub fn detuning_rad_per_ps(lambda_a_nm: f64, lambda_b_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI * C_NM_PER_PS * (1.0 / lambda_a_nm - 1.0 / lambda_b_nm)
}

/// Fiber nonlinear coefficient from the mode-field diameter,
/// gamma = 2*pi*n2 / (lambda * A_eff) [1/(W·m)].
pub fn gamma_from_mfd(wavelength_nm: f64, mfd_um: f64) -> f64 {
    let lambda_m = wavelength_nm * 1e-9;
    let radius_m = mfd_um * 1e-6 / 2.0;
    let a_eff = std::f64::consts::PI * radius_m * radius_m;
    2.0 * std::f64::consts::PI * N2_SILICA_M2_PER_W / (lambda_m * a_eff)
}
