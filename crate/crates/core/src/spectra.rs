//! Single-photon spectral wavepackets and the spectral average xi that feeds
//! every protocol figure of merit.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::quadrature;
use crate::scattering::transfer_matrix;

/// Integration window half-width in units of kappa_in. The Gaussian mass
/// outside +-8 kappa_in is below 1e-28, far under every tolerance in use.
pub const GAUSSIAN_WINDOW: f64 = 8.0;

/// Normalized spectral amplitude of a single photon.
#[derive(Debug, Clone, PartialEq)]
pub enum Wavepacket {
    /// f(k) = pi^{-1/4} kappa_in^{-1/2} exp[-(k-k_peak)^2/(2 kappa_in^2) + i k x_0].
    ///
    /// x_0 is the initial distance of the packet from the cavity (c = 1); it
    /// enters only as a spectral phase, so every figure of merit is
    /// independent of it. It does matter for time-domain oracle runs.
    Analytic { k_peak: f64, kappa_in: f64, x_0: f64 },
    /// Amplitudes sampled on a strictly ascending frequency grid, integrated
    /// with trapezoid weights.
    Sampled { k: Vec<f64>, f: Vec<Complex64> },
}

/// Gaussian packet centered at `k_peak` with spectral width `kappa_in`,
/// carrying the travel phase e^{i k x_0}. Exactly normalized by construction;
/// |f(k_peak)|^2 = 1/(sqrt(pi) kappa_in).
pub fn gaussian_spectrum(k_peak: f64, kappa_in: f64, x_0: f64) -> Result<Wavepacket> {
    if !(kappa_in > 0.0) || !kappa_in.is_finite() {
        return Err(Error::InvalidParam {
            name: "kappa_in",
            reason: format!("spectral width must be positive (got {kappa_in})"),
        });
    }
    Ok(Wavepacket::Analytic { k_peak, kappa_in, x_0 })
}

impl Wavepacket {
    /// Sampled packet on an ascending grid; the grid is validated here.
    pub fn sampled(k: Vec<f64>, f: Vec<Complex64>) -> Result<Self> {
        if k.len() != f.len() {
            return Err(Error::InvalidGrid(format!(
                "grid and amplitude lengths differ ({} vs {})",
                k.len(),
                f.len()
            )));
        }
        quadrature::trapezoid_weights(&k)?;
        Ok(Wavepacket::Sampled { k, f })
    }

    /// Spectral amplitude at an arbitrary frequency. Sampled packets are
    /// linearly interpolated and vanish outside their grid.
    pub fn amplitude_at(&self, k: f64) -> Complex64 {
        match self {
            Wavepacket::Analytic { k_peak, kappa_in, x_0 } => {
                let d = (k - k_peak) / kappa_in;
                let modulus = std::f64::consts::PI.powf(-0.25) / kappa_in.sqrt()
                    * (-0.5 * d * d).exp();
                modulus * Complex64::cis(k * x_0)
            }
            Wavepacket::Sampled { k: grid, f } => {
                if grid.is_empty() || k < grid[0] || k > *grid.last().unwrap() {
                    return Complex64::new(0.0, 0.0);
                }
                let j = match grid.binary_search_by(|x| x.partial_cmp(&k).unwrap()) {
                    Ok(j) => return f[j],
                    Err(j) => j,
                };
                let t = (k - grid[j - 1]) / (grid[j] - grid[j - 1]);
                f[j - 1] * (1.0 - t) + f[j] * t
            }
        }
    }

    /// Spectral average of an arbitrary complex-valued function over |f|^2.
    ///
    /// Analytic packets use the Gauss-Legendre ladder on the +-8 kappa_in
    /// window, refined until successive orders differ by less than 1e-10;
    /// sampled packets use trapezoid weights on their own grid.
    pub fn spectral_average<F: FnMut(f64) -> Complex64>(
        &self,
        mut func: F,
    ) -> Result<Complex64> {
        match self {
            Wavepacket::Analytic { k_peak, kappa_in, .. } => {
                let a = k_peak - GAUSSIAN_WINDOW * kappa_in;
                let b = k_peak + GAUSSIAN_WINDOW * kappa_in;
                quadrature::integrate_complex_adaptive(a, b, 1e-10, |k| {
                    func(k) * self.amplitude_at(k).norm_sqr()
                })
            }
            Wavepacket::Sampled { k, f } => {
                let g: Vec<Complex64> = k
                    .iter()
                    .zip(f)
                    .map(|(&kj, fj)| func(kj) * fj.norm_sqr())
                    .collect();
                quadrature::trapezoid_complex(k, &g)
            }
        }
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self, Wavepacket::Analytic { .. })
    }
}

/// Norm integral of |f|^2: closed form for analytic packets, trapezoid rule
/// for sampled ones.
pub fn packet_norm(w: &Wavepacket) -> Result<f64> {
    match w {
        Wavepacket::Analytic { .. } => Ok(1.0),
        Wavepacket::Sampled { k, f } => {
            let g: Vec<Complex64> = f.iter().map(|a| Complex64::new(a.norm_sqr(), 0.0)).collect();
            Ok(quadrature::trapezoid_complex(k, &g)?.re)
        }
    }
}

/// Spectral average xi = integral of T_LL(k) |f(k)|^2 dk.
///
/// Only |f|^2 enters, so xi is invariant under any spectral phase applied to
/// the packet.
pub fn xi_integral(w: &Wavepacket, p: &SystemParams) -> Result<Complex64> {
    w.spectral_average(|k| transfer_matrix(k, p).t_ll)
}

/// Writes a sampled (or sampled copy of an analytic) packet as
/// `k,re_f,im_f` rows.
pub fn write_packet_csv<W: Write>(w: &Wavepacket, out: &mut W) -> Result<()> {
    writeln!(out, "k,re_f,im_f")?;
    match w {
        Wavepacket::Sampled { k, f } => {
            for (kj, fj) in k.iter().zip(f) {
                writeln!(out, "{:.16e},{:.16e},{:.16e}", kj, fj.re, fj.im)?;
            }
        }
        Wavepacket::Analytic { k_peak, kappa_in, .. } => {
            let n = 2001;
            for j in 0..n {
                let k = k_peak - GAUSSIAN_WINDOW * kappa_in
                    + 2.0 * GAUSSIAN_WINDOW * kappa_in * (j as f64) / ((n - 1) as f64);
                let f = w.amplitude_at(k);
                writeln!(out, "{:.16e},{:.16e},{:.16e}", k, f.re, f.im)?;
            }
        }
    }
    Ok(())
}

/// Reads a sampled packet from `k,re_f,im_f` rows; a header line is skipped
/// if present.
pub fn read_packet_csv<R: BufRead>(input: R) -> Result<Wavepacket> {
    let mut k = Vec::new();
    let mut f = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected 3 comma-separated fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        if lineno == 0 && fields[0].parse::<f64>().is_err() {
            continue; // header
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
        };
        k.push(parse(fields[0])?);
        f.push(Complex64::new(parse(fields[1])?, parse(fields[2])?));
    }
    Wavepacket::sampled(k, f)
}

/// Uniformly sampled copy of a packet on [k_lo, k_hi].
pub fn sample_packet(w: &Wavepacket, k_lo: f64, k_hi: f64, n: usize) -> Result<Wavepacket> {
    if n < 2 || !(k_hi > k_lo) {
        return Err(Error::InvalidGrid("need n >= 2 and k_hi > k_lo".into()));
    }
    let k: Vec<f64> = (0..n)
        .map(|j| k_lo + (k_hi - k_lo) * (j as f64) / ((n - 1) as f64))
        .collect();
    let f: Vec<Complex64> = k.iter().map(|&kj| w.amplitude_at(kj)).collect();
    Wavepacket::sampled(k, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::swap_configuration;
    use crate::quadrature::integrate_complex_adaptive;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_is_normalized() {
        let w = gaussian_spectrum(0.3, 0.1, 40.0).unwrap();
        assert_eq!(packet_norm(&w).unwrap(), 1.0);
        // numerical cross-check of the closed form
        let num = integrate_complex_adaptive(0.3 - 0.8, 0.3 + 0.8, 1e-12, |k| {
            Complex64::new(w.amplitude_at(k).norm_sqr(), 0.0)
        })
        .unwrap();
        assert_abs_diff_eq!(num.re, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn gaussian_peak_intensity() {
        let w = gaussian_spectrum(0.0, 0.1, 0.0).unwrap();
        let peak = w.amplitude_at(0.0).norm_sqr();
        assert_abs_diff_eq!(peak, 1.0 / (std::f64::consts::PI.sqrt() * 0.1), epsilon = 1e-12);
        assert_abs_diff_eq!(peak, 5.64190, epsilon = 1e-5);
    }

    #[test]
    fn x0_is_pure_phase() {
        let a = gaussian_spectrum(0.0, 0.2, 0.0).unwrap();
        let b = gaussian_spectrum(0.0, 0.2, 137.0).unwrap();
        for k in [-0.5, 0.0, 0.3] {
            assert_abs_diff_eq!(a.amplitude_at(k).norm(), b.amplitude_at(k).norm(), epsilon = 1e-15);
        }
    }

    #[test]
    fn gaussian_rejects_bad_width() {
        assert!(gaussian_spectrum(0.0, 0.0, 0.0).is_err());
        assert!(gaussian_spectrum(0.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn sampled_norm_converges() {
        let w = gaussian_spectrum(0.0, 0.1, 25.0).unwrap();
        let s = sample_packet(&w, -0.8, 0.8, 2001).unwrap();
        let norm = packet_norm(&s).unwrap();
        assert!((norm - 1.0).abs() < 1e-6, "norm = {norm}");
    }

    #[test]
    fn degenerate_grid_rejected() {
        let z = Complex64::new(1.0, 0.0);
        assert!(Wavepacket::sampled(vec![0.5, 0.5], vec![z, z]).is_err());
        assert!(Wavepacket::sampled(vec![0.5], vec![z]).is_err());
    }

    #[test]
    fn xi_delta_spectrum_limit() {
        let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();
        let w = gaussian_spectrum(0.4, 1e-6, 0.0).unwrap();
        let xi = xi_integral(&w, &p).unwrap();
        let t = transfer_matrix(0.4, &p).t_ll;
        assert!((xi - t).norm() < 1e-6);
    }

    #[test]
    fn xi_without_coupling_is_one() {
        let p = swap_configuration(1.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        let p = crate::params::SystemParams { lambda_l: 0.0, lambda_r: 0.0, ..p };
        let w = gaussian_spectrum(0.0, 0.1, 0.0).unwrap();
        let xi = xi_integral(&w, &p).unwrap();
        assert!((xi - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn xi_showcase_value() {
        // lambda = 10 kappa, gamma = 0.5 kappa, packet at k_c with
        // kappa_in = 0.1 kappa; frozen against an independent fixed-order
        // quadrature of the same integrand.
        let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();
        let w = gaussian_spectrum(0.0, 0.1, 0.0).unwrap();
        let xi = xi_integral(&w, &p).unwrap();
        let brute = crate::quadrature::integrate_complex(-0.8, 0.8, 500, |k| {
            transfer_matrix(k, &p).t_ll * w.amplitude_at(k).norm_sqr()
        });
        assert!((xi - brute).norm() < 1e-10);
        assert_abs_diff_eq!((Complex64::new(1.0, 0.0) - xi).norm_sqr(), 0.985359, epsilon = 1e-6);
    }

    #[test]
    fn sampled_and_analytic_xi_agree() {
        let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();
        let w = gaussian_spectrum(0.0, 0.1, 12.0).unwrap();
        let s = sample_packet(&w, -0.8, 0.8, 4001).unwrap();
        let xa = xi_integral(&w, &p).unwrap();
        let xs = xi_integral(&s, &p).unwrap();
        assert!((xa - xs).norm() < 1e-6, "{xa} vs {xs}");
    }

    #[test]
    fn xi_ignores_spectral_phase() {
        let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();
        let w = gaussian_spectrum(0.0, 0.1, 0.0).unwrap();
        let plain = sample_packet(&w, -0.8, 0.8, 1001).unwrap();
        let (k, f) = match &plain {
            Wavepacket::Sampled { k, f } => (k.clone(), f.clone()),
            _ => unreachable!(),
        };
        let twisted: Vec<Complex64> = k
            .iter()
            .zip(&f)
            .map(|(&kj, fj)| fj * Complex64::cis(1.3 + 7.0 * kj + (2.0 * kj).sin()))
            .collect();
        let tw = Wavepacket::sampled(k, twisted).unwrap();
        let a = xi_integral(&plain, &p).unwrap();
        let b = xi_integral(&tw, &p).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn packet_csv_round_trip() {
        let w = gaussian_spectrum(0.2, 0.15, 9.0).unwrap();
        let s = sample_packet(&w, -1.0, 1.4, 101).unwrap();
        let mut buf = Vec::new();
        write_packet_csv(&s, &mut buf).unwrap();
        let back = read_packet_csv(std::io::Cursor::new(buf)).unwrap();
        match (&s, &back) {
            (Wavepacket::Sampled { k: ka, f: fa }, Wavepacket::Sampled { k: kb, f: fb }) => {
                assert_eq!(ka.len(), kb.len());
                for j in 0..ka.len() {
                    assert_abs_diff_eq!(ka[j], kb[j], epsilon = 1e-15);
                    assert!((fa[j] - fb[j]).norm() < 1e-15);
                }
            }
            _ => panic!("expected sampled packets"),
        }
    }
}
