//! Protocol layer: swap frequencies, swap fidelity, entangling points, Bell
//! generation probability, and the coupling-strength sweep.
//!
//! Everything funnels through two scalars: eta, the overlap of the initial
//! product state with the interacting sector, and xi, the spectral average
//! of T_LL over the photon power spectrum.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{swap_configuration, AtomQubit, PolarizationQubit, SystemParams};
use crate::rootfind::{bisect, golden_section_min};
use crate::scattering::transfer_matrix;
use crate::spectra::{gaussian_spectrum, xi_integral, Wavepacket};

/// How a set of swap roots was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    /// Real roots of the closed-form cubic (gamma = 0, delta_e = 0).
    ExactCubic,
    /// Golden-section minimizers of |T_LL| seeded at the lossless roots.
    NumericMinimization,
}

/// Frequencies where the swap condition holds (or is closest to holding).
#[derive(Debug, Clone, PartialEq)]
pub struct SwapRoots {
    /// Ascending absolute frequencies k.
    pub roots: Vec<f64>,
    pub method: RootMethod,
    /// True when the off-resonant root pair moved off the real axis
    /// (2 lambda^2 < kappa^2) and only the central root is reported.
    pub complex_pair_omitted: bool,
}

/// A frequency where |T_LL| = |T_RL|, scattering a product input into a
/// maximally entangled pair with relative phase theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglePoint {
    pub k: f64,
    /// Bell phase theta = arg(T_RL / T_LL) in (-pi, pi].
    pub theta: f64,
    /// | |T_LL| - |T_RL| | at the returned root.
    pub balance_residual: f64,
}

/// A scalar protocol score together with the xi (and eta, for fidelities)
/// it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOfMerit {
    pub value: f64,
    pub xi: Complex64,
    /// Bright-sector overlap of the input; `None` for the Bell probability.
    pub eta: Option<f64>,
}

/// Overlap eta = |A_L C_L - A_R C_R|^2 of a product input with the
/// interacting sector. Valid in swap configuration, where the bright
/// direction is the same at every k.
pub fn eta_overlap(a: &AtomQubit, c: &PolarizationQubit) -> f64 {
    (a.a_l * c.c_l - a.a_r * c.c_r).norm_sqr()
}

/// Swap fidelity F = |1 - xi eta|^2 = 1 - 2 Re(xi) eta + |xi|^2 eta^2.
pub fn swap_fidelity_from_xi(xi: Complex64, eta: f64) -> f64 {
    (Complex64::new(1.0, 0.0) - xi * eta).norm_sqr()
}

/// Bell-generation probability P = 1/2 + |xi|^2 - Re(xi) + Im(xi).
pub fn bell_probability_from_xi(xi: Complex64) -> f64 {
    0.5 + xi.norm_sqr() - xi.re + xi.im
}

fn require_swap_configuration(p: &SystemParams) -> Result<()> {
    if !p.is_swap_configuration() {
        return Err(Error::NotSwapConfiguration(format!(
            "lambda_L = {}, lambda_R = {}, theta_L - theta_R = {}",
            p.lambda_l,
            p.lambda_r,
            p.theta_l - p.theta_r
        )));
    }
    Ok(())
}

/// Frequencies satisfying the pi-phase-shift swap condition.
///
/// For gamma = 0 and delta_e = 0 these are the real roots of
/// dk (dk^2 + kappa^2 - 2 lambda^2) = 0 in closed form. Otherwise the
/// lossless roots seed a golden-section search for local minimizers of
/// |T_LL(k)|.
pub fn swap_frequencies(p: &SystemParams) -> Result<SwapRoots> {
    require_swap_configuration(p)?;
    let lambda_sq = p.lambda_total_sq();
    if lambda_sq == 0.0 {
        return Err(Error::NonInteracting);
    }
    let scale = lambda_sq + p.kappa * p.kappa;
    let radical_sq = lambda_sq - p.kappa * p.kappa; // 2 lambda^2 - kappa^2
    let collapse_tol = 1e-12 * scale;

    if p.gamma == 0.0 && p.delta_e == 0.0 {
        let mut roots = vec![p.k_c];
        let mut omitted = false;
        if radical_sq > collapse_tol {
            let r = radical_sq.sqrt();
            roots = vec![p.k_c - r, p.k_c, p.k_c + r];
        } else if radical_sq < -collapse_tol {
            omitted = true;
        }
        return Ok(SwapRoots {
            roots,
            method: RootMethod::ExactCubic,
            complex_pair_omitted: omitted,
        });
    }

    // Lossless seeds: real roots of (dk - delta_e)(dk^2 + kappa^2) - Lambda dk.
    let cubic = |dk: f64| (dk - p.delta_e) * (dk * dk + p.kappa * p.kappa) - lambda_sq * dk;
    let reach = 2.0 * (lambda_sq.sqrt() + p.delta_e.abs() + p.kappa);
    let mut seeds = Vec::new();
    let n_scan = 4000;
    let mut prev_x = -reach;
    let mut prev_f = cubic(prev_x);
    for j in 1..=n_scan {
        let x = -reach + 2.0 * reach * (j as f64) / (n_scan as f64);
        let f = cubic(x);
        if prev_f == 0.0 {
            seeds.push(prev_x);
        } else if prev_f.signum() != f.signum() {
            seeds.push(bisect(prev_x, x, 1e-13 * p.kappa, cubic)?);
        }
        prev_x = x;
        prev_f = f;
    }
    let omitted = seeds.len() < 3;

    let mut roots: Vec<f64> = seeds
        .iter()
        .map(|&dk| {
            let lo = dk - 0.5 * p.kappa;
            let hi = dk + 0.5 * p.kappa;
            let dk_min = golden_section_min(lo, hi, 1e-12 * p.kappa, |x| {
                transfer_matrix(p.k_c + x, p).t_ll.norm()
            });
            p.k_c + dk_min
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * p.kappa);
    Ok(SwapRoots {
        roots,
        method: RootMethod::NumericMinimization,
        complex_pair_omitted: omitted,
    })
}

/// Swap fidelity for a product input (atom qubit, polarization qubit) and a
/// spectral packet.
pub fn swap_fidelity(
    a: &AtomQubit,
    c: &PolarizationQubit,
    w: &Wavepacket,
    p: &SystemParams,
) -> Result<FigureOfMerit> {
    require_swap_configuration(p)?;
    let eta = eta_overlap(a, c);
    let xi = xi_integral(w, p)?;
    Ok(FigureOfMerit {
        value: swap_fidelity_from_xi(xi, eta),
        xi,
        eta: Some(eta),
    })
}

/// Worst-case swap fidelity F_min = |1 - xi|^2, attained at eta = 1.
pub fn min_swap_fidelity(w: &Wavepacket, p: &SystemParams) -> Result<FigureOfMerit> {
    require_swap_configuration(p)?;
    let xi = xi_integral(w, p)?;
    Ok(FigureOfMerit {
        value: swap_fidelity_from_xi(xi, 1.0),
        xi,
        eta: Some(1.0),
    })
}

/// Balance bracket half-decades around the predicted |dk| = kappa points:
/// generous, while excluding the dk = 0 pi-shift root.
const BALANCE_BRACKET: (f64, f64) = (0.25, 4.0);

/// Frequencies where |T_LL| = |T_RL|, found by bisection on the magnitude
/// balance in brackets around dk = +-kappa. Returns ascending points; errors
/// if neither bracket holds a sign change (weak coupling).
pub fn entangle_frequencies(p: &SystemParams) -> Result<Vec<EntanglePoint>> {
    require_swap_configuration(p)?;
    let balance = |k: f64| {
        let t = transfer_matrix(k, p);
        t.t_ll.norm() - t.t_rl.norm()
    };
    let mut points = Vec::new();
    let brackets = [
        (p.k_c - BALANCE_BRACKET.1 * p.kappa, p.k_c - BALANCE_BRACKET.0 * p.kappa),
        (p.k_c + BALANCE_BRACKET.0 * p.kappa, p.k_c + BALANCE_BRACKET.1 * p.kappa),
    ];
    for (lo, hi) in brackets {
        match bisect(lo, hi, 1e-13 * p.kappa, balance) {
            Ok(k) => {
                let t = transfer_matrix(k, p);
                points.push(EntanglePoint {
                    k,
                    theta: (t.t_rl / t.t_ll).arg(),
                    balance_residual: (t.t_ll.norm() - t.t_rl.norm()).abs(),
                });
            }
            Err(Error::NoBalancedPoint { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::NoBalancedPoint {
            lo: brackets[0].0,
            hi: brackets[1].1,
        });
    }
    Ok(points)
}

/// Bell-state generation probability for input |L> x packet in polarization
/// L. The packet is meant to peak at k_c + kappa; xi is averaged over this
/// packet. The overlap is taken with the unnormalized scattered state, so
/// decay loss lowers P directly.
pub fn bell_probability(w: &Wavepacket, p: &SystemParams) -> Result<FigureOfMerit> {
    require_swap_configuration(p)?;
    let xi = xi_integral(w, p)?;
    Ok(FigureOfMerit {
        value: bell_probability_from_xi(xi),
        xi,
        eta: None,
    })
}

/// One row of the coupling-strength sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda_over_kappa: f64,
    pub f_min: f64,
    pub p_bell: f64,
}

/// Sweeps lambda/kappa with delta_e = 0: F_min with a Gaussian packet at
/// k_c, and P with the same packet moved to k_c + kappa. Rows are returned
/// in input order.
pub fn sweep_swap_and_bell(
    lambda_over_kappa: &[f64],
    gamma: f64,
    kappa_in: f64,
    kappa: f64,
    k_c: f64,
) -> Result<Vec<SweepRow>> {
    for pair in lambda_over_kappa.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::InvalidParam {
                name: "lambda_over_kappa",
                reason: format!("list must be ascending ({} -> {})", pair[0], pair[1]),
            });
        }
    }
    let swap_packet = gaussian_spectrum(k_c, kappa_in, 0.0)?;
    let bell_packet = gaussian_spectrum(k_c + kappa, kappa_in, 0.0)?;
    lambda_over_kappa
        .iter()
        .map(|&l| {
            let p = swap_configuration(l * kappa, k_c, 0.0, kappa, gamma)?;
            Ok(SweepRow {
                lambda_over_kappa: l,
                f_min: min_swap_fidelity(&swap_packet, &p)?.value,
                p_bell: bell_probability(&bell_packet, &p)?.value,
            })
        })
        .collect()
}

/// Writes sweep rows as CSV with the stable header
/// `lambda_over_kappa,F_min,P` at full round-trip precision.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> Result<()> {
    writeln!(out, "lambda_over_kappa,F_min,P")?;
    for row in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e}",
            row.lambda_over_kappa, row.f_min, row.p_bell
        )?;
    }
    Ok(())
}
