//! Closed-form single-photon scattering kernel.
//!
//! The atom couples to one Lorentzian quasi-mode channel per polarization.
//! At each frequency k the four-dimensional photon-atom subspace splits into
//! a bright direction that scatters with a complex phase factor, an
//! orthogonal dark direction, and two trivial invariants. Everything here is
//! a pure function of (k, parameters).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{JointKState, RabiPoles, SystemParams};

/// Photon polarization label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    L,
    R,
}

/// Coupling amplitude g_mu(k) = lambda_mu sqrt(kappa/pi) e^{i theta_mu} / (dk + i kappa).
pub fn coupling_amplitude(k: f64, p: &SystemParams, pol: Polarization) -> Complex64 {
    let (lambda, theta) = match pol {
        Polarization::L => (p.lambda_l, p.theta_l),
        Polarization::R => (p.lambda_r, p.theta_r),
    };
    let dk = p.delta_k(k);
    let numerator = lambda * (p.kappa / std::f64::consts::PI).sqrt() * Complex64::cis(theta);
    numerator / Complex64::new(dk, p.kappa)
}

/// Bright-state coupling strength V(k) = sqrt(|g_L|^2 + |g_R|^2).
///
/// The ratio |g_mu(k)|^2 / V(k)^2 is k-independent: the Lorentzian factor
/// cancels, leaving lambda_mu^2 / (lambda_L^2 + lambda_R^2).
pub fn interaction_strength(k: f64, p: &SystemParams) -> f64 {
    let dk = p.delta_k(k);
    let lorentzian = (p.kappa / std::f64::consts::PI) / (dk * dk + p.kappa * p.kappa);
    (p.lambda_total_sq() * lorentzian).sqrt()
}

/// Amplitudes of a joint state on the bright/dark/trivial directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightDarkSplit {
    /// Amplitude on the bright state (g_L^*, g_R^*)/V.
    pub bright: Complex64,
    /// Amplitude on the orthogonal dark combination.
    pub dark: Complex64,
    /// Amplitude on |L;k_R>.
    pub trivial_lr: Complex64,
    /// Amplitude on |R;k_L>.
    pub trivial_rl: Complex64,
}

impl BrightDarkSplit {
    pub fn norm_sq(&self) -> f64 {
        self.bright.norm_sqr() + self.dark.norm_sqr() + self.trivial_lr.norm_sqr()
            + self.trivial_rl.norm_sqr()
    }
}

/// Projects the interacting block onto the bright direction and its
/// orthogonal complement; the trivial sector passes through.
pub fn bright_dark_decompose(s: &JointKState, p: &SystemParams) -> Result<BrightDarkSplit> {
    let v = interaction_strength(s.k, p);
    if v == 0.0 {
        return Err(Error::NonInteracting);
    }
    let g_l = coupling_amplitude(s.k, p, Polarization::L);
    let g_r = coupling_amplitude(s.k, p, Polarization::R);
    // Orthonormal bright vector (g_L^*, g_R^*)/V; dark vector (g_R, -g_L)/V.
    let bright = (g_l * s.alpha[0] + g_r * s.alpha[1]) / v;
    let dark = (g_r.conj() * s.alpha[0] - g_l.conj() * s.alpha[1]) / v;
    Ok(BrightDarkSplit {
        bright,
        dark,
        trivial_lr: s.alpha[2],
        trivial_rl: s.alpha[3],
    })
}

/// Complex poles of the dressed resolvent,
/// omega_pm = (d - i kappa)/2 +- sqrt((d + i kappa)^2/4 + Lambda),
/// with d = delta_e - i gamma carrying the decay shift.
pub fn rabi_poles(p: &SystemParams) -> RabiPoles {
    let d = p.detuning_lossy();
    let ik = Complex64::new(0.0, p.kappa);
    let half = (d - ik) * 0.5;
    let radical = ((d + ik) * (d + ik) * 0.25 + p.lambda_total_sq()).sqrt();
    RabiPoles {
        omega_plus: half + radical,
        omega_minus: half - radical,
    }
}

/// Excited-state resolvent matrix element
/// (dk + i kappa) / ((dk - omega_+)(dk - omega_-)).
pub fn resolvent_ee(k: f64, p: &SystemParams) -> Result<Complex64> {
    let dk = Complex64::new(p.delta_k(k), 0.0);
    let poles = rabi_poles(p);
    let denom = (dk - poles.omega_plus) * (dk - poles.omega_minus);
    if denom.norm() == 0.0 {
        return Err(Error::SingularResolvent { k });
    }
    Ok((dk + Complex64::new(0.0, p.kappa)) / denom)
}

/// Bright-state scattering factor e^{i delta_s(k)}.
///
/// Unimodular for gamma = 0; strictly inside the unit circle for gamma > 0,
/// where the decay enters as delta_e -> delta_e - i gamma. The phase angle
/// itself is never extracted: consumers use the complex factor.
pub fn phase_factor(k: f64, p: &SystemParams) -> Complex64 {
    let dk = p.delta_k(k);
    let d = p.detuning_lossy();
    let lambda_sq = p.lambda_total_sq();
    let lorentz = dk * dk + p.kappa * p.kappa;
    let common = (dk - d) * lorentz;
    let num = common - Complex64::new(dk, p.kappa) * lambda_sq;
    let den = common - Complex64::new(dk, -p.kappa) * lambda_sq;
    if lambda_sq == 0.0 {
        // num == den; avoid 0/0 at the bare resonance.
        return Complex64::new(1.0, 0.0);
    }
    num / den
}

/// The 2x2 interacting block of the input-output relation at fixed k;
/// identity on the trivial sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub t_ll: Complex64,
    pub t_lr: Complex64,
    pub t_rl: Complex64,
    pub t_rr: Complex64,
    /// Frequency this block was evaluated at (rad/time).
    pub k: f64,
    /// True iff gamma > 0 (the block contracts the bright direction).
    pub lossy: bool,
}

impl TransferMatrix {
    pub fn identity(k: f64) -> Self {
        TransferMatrix {
            t_ll: Complex64::new(1.0, 0.0),
            t_lr: Complex64::new(0.0, 0.0),
            t_rl: Complex64::new(0.0, 0.0),
            t_rr: Complex64::new(1.0, 0.0),
            k,
            lossy: false,
        }
    }

    /// Applies the block to interacting-sector amplitudes (alpha_1, alpha_2).
    pub fn apply(&self, a: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.t_ll * a[0] + self.t_lr * a[1],
            self.t_rl * a[0] + self.t_rr * a[1],
        ]
    }

    /// Singular values of the block, largest first.
    ///
    /// Analytically these are {1, |e^{i delta_s}|}: the dark direction is
    /// always lossless.
    pub fn singular_values(&self) -> (f64, f64) {
        // Eigenvalues of the Hermitian Gram matrix T^dagger T; the radicand
        // is a sum of squares, so nearly degenerate values do not cancel.
        let p = self.t_ll.norm_sqr() + self.t_rl.norm_sqr();
        let q = self.t_lr.norm_sqr() + self.t_rr.norm_sqr();
        let r = self.t_ll.conj() * self.t_lr + self.t_rl.conj() * self.t_rr;
        let mid = 0.5 * (p + q);
        let gap = (0.25 * (p - q) * (p - q) + r.norm_sqr()).sqrt();
        ((mid + gap).max(0.0).sqrt(), (mid - gap).max(0.0).sqrt())
    }

    /// Max-norm deviation of T^dagger T from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let c11 = self.t_ll.norm_sqr() + self.t_rl.norm_sqr() - 1.0;
        let c22 = self.t_lr.norm_sqr() + self.t_rr.norm_sqr() - 1.0;
        let c12 = self.t_ll.conj() * self.t_lr + self.t_rl.conj() * self.t_rr;
        c11.abs().max(c22.abs()).max(c12.norm())
    }
}

/// Transfer block in projector form:
/// T = e^{i delta_s} |psi><psi| + (1 - |psi><psi|) with |psi> the bright
/// vector. Non-interacting parameters give the identity block.
pub fn transfer_matrix(k: f64, p: &SystemParams) -> TransferMatrix {
    let v = interaction_strength(k, p);
    if v == 0.0 {
        return TransferMatrix::identity(k);
    }
    let v_sq = v * v;
    let g_l = coupling_amplitude(k, p, Polarization::L);
    let g_r = coupling_amplitude(k, p, Polarization::R);
    let phase = phase_factor(k, p);
    let shifted = phase - 1.0;
    TransferMatrix {
        t_ll: (phase * g_l.norm_sqr() + g_r.norm_sqr()) / v_sq,
        t_rr: (phase * g_r.norm_sqr() + g_l.norm_sqr()) / v_sq,
        t_lr: g_l.conj() * g_r * shifted / v_sq,
        t_rl: g_r.conj() * g_l * shifted / v_sq,
        k,
        lossy: p.gamma > 0.0,
    }
}

/// Scatters a joint state: beta = T alpha on the interacting block, identity
/// on the trivial sector. The free-evolution phase e^{-ikt} is omitted.
pub fn apply_scattering(s: &JointKState, p: &SystemParams) -> JointKState {
    let t = transfer_matrix(s.k, p);
    let [b1, b2] = t.apply([s.alpha[0], s.alpha[1]]);
    JointKState {
        alpha: [b1, b2, s.alpha[2], s.alpha[3]],
        k: s.k,
    }
}
