//! Physical parameters and shared domain types.
//!
//! All rates and frequencies are expressed in one consistent unit system;
//! the canonical convention is kappa = 1 with every other rate given as a
//! multiple of the cavity leakage rate. Only differences k - k_c enter the
//! scattering formulas, so k_c defaults to 0 and is kept for I/O clarity.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for qubit normalization checks.
pub const NORM_TOL: f64 = 1e-12;

/// All physical parameters of the atom-cavity system.
///
/// A single quasi-mode of the cavity mediates the atom-continuum coupling;
/// parameters with coupling strength comparable to the free spectral range
/// are accepted numerically but are outside the single-quasi-mode model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Quasi-mode resonance frequency (rad/time).
    pub k_c: f64,
    /// Atom-cavity detuning delta_e = omega_e - k_c (rad/time).
    pub delta_e: f64,
    /// Cavity leakage rate kappa (rad/time).
    pub kappa: f64,
    /// Spontaneous decay rate gamma into side modes (rad/time).
    pub gamma: f64,
    /// Coupling strength lambda_L (rad/time).
    pub lambda_l: f64,
    /// Coupling strength lambda_R (rad/time).
    pub lambda_r: f64,
    /// Dipole phase angle theta_L (radians).
    pub theta_l: f64,
    /// Dipole phase angle theta_R (radians).
    pub theta_r: f64,
}

impl SystemParams {
    /// Checks all parameter invariants and returns the value unchanged.
    pub fn validate(self) -> Result<Self> {
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return Err(Error::InvalidParam {
                name: "kappa",
                reason: format!("must be positive (got {})", self.kappa),
            });
        }
        for (name, v) in [
            ("gamma", self.gamma),
            ("lambda_L", self.lambda_l),
            ("lambda_R", self.lambda_r),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    reason: format!("must be non-negative (got {v})"),
                });
            }
        }
        for (name, v) in [
            ("k_c", self.k_c),
            ("delta_e", self.delta_e),
            ("theta_L", self.theta_l),
            ("theta_R", self.theta_r),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    reason: format!("must be finite (got {v})"),
                });
            }
        }
        Ok(self)
    }

    /// Detuning of a photon frequency from the quasi-mode resonance.
    pub fn delta_k(&self, k: f64) -> f64 {
        k - self.k_c
    }

    /// Total coupling weight Lambda = lambda_L^2 + lambda_R^2.
    pub fn lambda_total_sq(&self) -> f64 {
        self.lambda_l * self.lambda_l + self.lambda_r * self.lambda_r
    }

    /// Atomic transition frequency omega_e = k_c + delta_e.
    pub fn omega_e(&self) -> f64 {
        self.k_c + self.delta_e
    }

    /// Atomic detuning with the decay folded in as a negative imaginary part.
    pub fn detuning_lossy(&self) -> Complex64 {
        Complex64::new(self.delta_e, -self.gamma)
    }

    /// True when g_L(k) = -g_R(k) at every k, i.e. equal coupling strengths
    /// and opposite dipole phases. The degenerate case lambda_L = lambda_R = 0
    /// also counts (the transfer block is the identity there).
    pub fn is_swap_configuration(&self) -> bool {
        let scale = self.lambda_l.abs().max(self.lambda_r.abs());
        if scale == 0.0 {
            return true;
        }
        if (self.lambda_l - self.lambda_r).abs() > 1e-12 * scale {
            return false;
        }
        // e^{i theta_L} = -e^{i theta_R}
        let d = self.theta_l - self.theta_r;
        let residual = Complex64::new(0.0, d).exp() + 1.0;
        residual.norm() < 1e-12
    }
}

/// Swap-ready parameters: lambda_L = lambda_R = lambda with theta_L = pi,
/// theta_R = 0, so that g_L(k) = -g_R(k) at every frequency.
pub fn swap_configuration(
    lambda: f64,
    k_c: f64,
    delta_e: f64,
    kappa: f64,
    gamma: f64,
) -> Result<SystemParams> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParam {
            name: "lambda",
            reason: format!("swap configuration needs lambda > 0 (got {lambda})"),
        });
    }
    SystemParams {
        k_c,
        delta_e,
        kappa,
        gamma,
        lambda_l: lambda,
        lambda_r: lambda,
        theta_l: std::f64::consts::PI,
        theta_r: 0.0,
    }
    .validate()
}

/// Partially transparent mirror of a one-sided cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorSpec {
    /// Amplitude reflection coefficient, 0 < |r| <= 1.
    pub r: f64,
    /// Cavity length (c = 1, so length and time share a unit).
    pub l: f64,
}

/// Leakage rate of the cavity, kappa = -ln|r| / (2 l).
pub fn kappa_from_mirror(m: &MirrorSpec) -> Result<f64> {
    if m.r == 0.0 {
        return Err(Error::InvalidParam {
            name: "r",
            reason: "r = 0 gives a divergent leakage rate (out of model)".into(),
        });
    }
    if !(m.r.abs() > 0.0 && m.r.abs() <= 1.0) {
        return Err(Error::InvalidParam {
            name: "r",
            reason: format!("need 0 < |r| <= 1 (got {})", m.r),
        });
    }
    if !(m.l > 0.0) {
        return Err(Error::InvalidParam {
            name: "l",
            reason: format!("cavity length must be positive (got {})", m.l),
        });
    }
    Ok(-m.r.abs().ln() / (2.0 * m.l))
}

fn check_normalized(norm_sq: f64) -> Result<()> {
    let deviation = (norm_sq - 1.0).abs();
    if deviation > NORM_TOL {
        // Rejecting instead of renormalizing: silent renormalization would
        // hide caller bugs.
        return Err(Error::NotNormalized { deviation });
    }
    Ok(())
}

/// Atomic qubit on the two ground states |L>, |R>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomQubit {
    /// Amplitude on |L>.
    pub a_l: Complex64,
    /// Amplitude on |R>.
    pub a_r: Complex64,
}

impl AtomQubit {
    pub fn new(a_l: Complex64, a_r: Complex64) -> Result<Self> {
        check_normalized(a_l.norm_sqr() + a_r.norm_sqr())?;
        Ok(Self { a_l, a_r })
    }
}

/// Photonic qubit on the two polarizations k_L, k_R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationQubit {
    /// Amplitude on polarization k_L.
    pub c_l: Complex64,
    /// Amplitude on polarization k_R.
    pub c_r: Complex64,
}

impl PolarizationQubit {
    pub fn new(c_l: Complex64, c_r: Complex64) -> Result<Self> {
        check_normalized(c_l.norm_sqr() + c_r.norm_sqr())?;
        Ok(Self { c_l, c_r })
    }
}

/// Joint photon-atom amplitudes at a fixed frequency k, on the ordered basis
/// {|L;k_L>, |R;k_R>, |L;k_R>, |R;k_L>}. The first two components form the
/// interacting block; the last two are scattering invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointKState {
    pub alpha: [Complex64; 4],
    /// Frequency (rad/time).
    pub k: f64,
}

impl JointKState {
    /// Total norm may shrink under lossy scattering but never exceed 1.
    pub fn new(alpha: [Complex64; 4], k: f64) -> Result<Self> {
        let norm_sq: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq > 1.0 + NORM_TOL {
            return Err(Error::NotNormalized {
                deviation: norm_sq - 1.0,
            });
        }
        Ok(Self { alpha, k })
    }

    pub fn norm_sq(&self) -> f64 {
        self.alpha.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// The two complex poles of the dressed atom-cavity resolvent
/// (vacuum Rabi doublet).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiPoles {
    pub omega_plus: Complex64,
    pub omega_minus: Complex64,
}
