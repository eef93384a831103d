use std::f64::consts::{PI, TAU};

use super::{ModelError, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 6.62607015e-34 / TAU;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380649e-23;
/// Gyromagnetic ratio of the YIG magnon, rad/(s T).
pub const GYROMAGNETIC_GAMMA: f64 = TAU * 28e9;
/// Spin density of YIG, m^-3.
pub const SPIN_DENSITY_RHO: f64 = 4.22e27;

/// Model rates, couplings and detunings in angular units (rad/s).
///
/// Detunings are signed. `g_mb` is the real, nonnegative effective
/// magnomechanical coupling and `kerr_shift_k` is the linearized Kerr shift
/// that enters the drift matrix directly. The absolute frequencies
/// `omega_c`, `omega_m1`, `omega_m2` only feed the thermal occupations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub omega_b: f64,
    pub delta_c: f64,
    pub delta_1: f64,
    pub delta_2: f64,
    pub kappa_c: f64,
    pub kappa_1: f64,
    pub kappa_2: f64,
    pub gamma_b: f64,
    pub g_1: f64,
    pub g_2: f64,
    pub g_mb: f64,
    pub g_pa: f64,
    /// Parametric-amplifier phase, radians in `[0, 2pi)`.
    pub theta: f64,
    pub kerr_shift_k: f64,
    /// Kelvin.
    pub temperature: f64,
    pub omega_c: f64,
    pub omega_m1: f64,
    pub omega_m2: f64,
}

impl PhysicalParams {
    /// Experimentally motivated operating point: 12 GHz cavity, 10 MHz
    /// mechanics with 100 Hz damping, 1 MHz cavity and magnon linewidths,
    /// g1 = 3.2 MHz, g2 = 2.6 MHz, G_mb = 4.8 MHz, 1 MHz PA gain at phase 0,
    /// 10 mK. All quoted as ordinary frequencies and stored as `2pi` times.
    ///
    /// Detunings default to the sideband configuration
    /// `Delta_c = Delta_2 = -0.9 omega_b`, `Delta_1 = 0.85 omega_b`.
    pub fn baseline() -> Self {
        let omega_b = TAU * 10e6;
        Self {
            omega_b,
            delta_c: -0.9 * omega_b,
            delta_1: 0.85 * omega_b,
            delta_2: -0.9 * omega_b,
            kappa_c: TAU * 1e6,
            kappa_1: TAU * 1e6,
            kappa_2: TAU * 1e6,
            gamma_b: TAU * 100.0,
            g_1: TAU * 3.2e6,
            g_2: TAU * 2.6e6,
            g_mb: TAU * 4.8e6,
            g_pa: TAU * 1e6,
            theta: 0.0,
            kerr_shift_k: 0.0,
            temperature: 0.01,
            omega_c: TAU * 12e9,
            omega_m1: TAU * 12e9,
            omega_m2: TAU * 12e9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_b", self.omega_b),
            ("delta_c", self.delta_c),
            ("delta_1", self.delta_1),
            ("delta_2", self.delta_2),
            ("kappa_c", self.kappa_c),
            ("kappa_1", self.kappa_1),
            ("kappa_2", self.kappa_2),
            ("gamma_b", self.gamma_b),
            ("g_1", self.g_1),
            ("g_2", self.g_2),
            ("g_mb", self.g_mb),
            ("g_pa", self.g_pa),
            ("theta", self.theta),
            ("kerr_shift_k", self.kerr_shift_k),
            ("temperature", self.temperature),
            ("omega_c", self.omega_c),
            ("omega_m1", self.omega_m1),
            ("omega_m2", self.omega_m2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(ModelError::invalid(name, "must be finite"));
            }
        }
        let positive = [
            ("omega_b", self.omega_b),
            ("kappa_c", self.kappa_c),
            ("kappa_1", self.kappa_1),
            ("kappa_2", self.kappa_2),
            ("gamma_b", self.gamma_b),
            ("omega_c", self.omega_c),
            ("omega_m1", self.omega_m1),
            ("omega_m2", self.omega_m2),
        ];
        for (name, v) in positive {
            if v <= 0.0 {
                return Err(ModelError::invalid(name, "must be > 0"));
            }
        }
        let nonnegative = [
            ("g_1", self.g_1),
            ("g_2", self.g_2),
            ("g_mb", self.g_mb),
            ("g_pa", self.g_pa),
            ("temperature", self.temperature),
        ];
        for (name, v) in nonnegative {
            if v < 0.0 {
                return Err(ModelError::invalid(name, "must be >= 0"));
            }
        }
        if !(0.0..TAU).contains(&self.theta) {
            return Err(ModelError::invalid("theta", "must lie in [0, 2pi)"));
        }
        Ok(())
    }
}

/// Drive and bare nonlinear couplings, used only by the mean-field solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Rabi frequency of the magnon-1 drive, rad/s.
    pub rabi_omega: f64,
    /// Drive field amplitude, tesla.
    pub drive_field_b0: f64,
    /// Bare magnomechanical coupling G0, rad/s.
    pub single_magnon_g0: f64,
    /// Bare self-Kerr coefficient K, rad/s.
    pub kerr_k: f64,
    /// YIG sphere diameter, meters.
    pub sphere_diameter: f64,
}

impl DriveParams {
    /// Derives the Rabi frequency from the drive field and sphere size.
    pub fn from_field(b0: f64, diameter: f64, g0: f64, kerr_k: f64) -> Result<Self> {
        Ok(Self {
            rabi_omega: rabi_frequency(b0, diameter)?,
            drive_field_b0: b0,
            single_magnon_g0: g0,
            kerr_k,
            sphere_diameter: diameter,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rabi_omega", self.rabi_omega),
            ("drive_field_b0", self.drive_field_b0),
            ("single_magnon_g0", self.single_magnon_g0),
            ("kerr_k", self.kerr_k),
            ("sphere_diameter", self.sphere_diameter),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(ModelError::invalid(name, "must be finite and >= 0"));
            }
        }
        Ok(())
    }
}

/// Bose-Einstein occupation `1 / (exp(hbar omega / k_B T) - 1)`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(ModelError::invalid("omega", "must be finite and > 0"));
    }
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(ModelError::invalid("temperature", "must be finite and >= 0"));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega / (K_B * temperature);
    Ok(1.0 / x.exp_m1())
}

/// Number of spins `rho V` in a sphere of the given diameter.
pub fn spin_number(diameter: f64) -> f64 {
    let r = 0.5 * diameter;
    SPIN_DENSITY_RHO * 4.0 / 3.0 * PI * r * r * r
}

/// `Omega = (sqrt 5 / 4) gamma sqrt(N) B0`.
pub fn rabi_frequency(b0: f64, diameter: f64) -> Result<f64> {
    if !b0.is_finite() || b0 < 0.0 {
        return Err(ModelError::invalid("drive_field_b0", "must be finite and >= 0"));
    }
    if !diameter.is_finite() || diameter <= 0.0 {
        return Err(ModelError::invalid("sphere_diameter", "must be finite and > 0"));
    }
    Ok(5f64.sqrt() / 4.0 * GYROMAGNETIC_GAMMA * spin_number(diameter).sqrt() * b0)
}
