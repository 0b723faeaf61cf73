//! Cross-module invariants checked over randomized inputs.

use lambda_qed::{
    bell_probability, eta_overlap, gaussian_spectrum, min_swap_fidelity, phase_factor,
    swap_configuration, transfer_matrix, xi_integral, AtomQubit, Complex64, PolarizationQubit,
    SystemParams,
};
use proptest::prelude::*;

fn rescale(p: &SystemParams, s: f64) -> SystemParams {
    SystemParams {
        k_c: p.k_c * s,
        delta_e: p.delta_e * s,
        kappa: p.kappa * s,
        gamma: p.gamma * s,
        lambda_l: p.lambda_l * s,
        lambda_r: p.lambda_r * s,
        theta_l: p.theta_l,
        theta_r: p.theta_r,
    }
}

proptest! {
    /// Rescaling every rate and frequency by a common factor leaves all
    /// dimensionless outputs unchanged.
    #[test]
    fn unit_convention_round_trip(
        s in 0.1f64..10.0,
        lambda in 0.5f64..12.0,
        gamma in 0.0f64..1.5,
        delta_e in -2.0f64..2.0,
        dk in -15.0f64..15.0,
        kappa_in in 0.02f64..0.5,
    ) {
        let p = swap_configuration(lambda, 0.3, delta_e, 1.0, gamma).unwrap();
        let q = rescale(&p, s);

        let e1 = phase_factor(p.k_c + dk, &p);
        let e2 = phase_factor(q.k_c + s * dk, &q);
        prop_assert!((e1 - e2).norm() < 1e-12);

        let t1 = transfer_matrix(p.k_c + dk, &p);
        let t2 = transfer_matrix(q.k_c + s * dk, &q);
        for (a, b) in [
            (t1.t_ll, t2.t_ll),
            (t1.t_lr, t2.t_lr),
            (t1.t_rl, t2.t_rl),
            (t1.t_rr, t2.t_rr),
        ] {
            prop_assert!((a - b).norm() < 1e-12);
        }

        let w1 = gaussian_spectrum(p.k_c, kappa_in, 7.0).unwrap();
        let w2 = gaussian_spectrum(q.k_c, kappa_in * s, 7.0 / s).unwrap();
        let x1 = xi_integral(&w1, &p).unwrap();
        let x2 = xi_integral(&w2, &q).unwrap();
        prop_assert!((x1 - x2).norm() < 1e-10);

        let f1 = min_swap_fidelity(&w1, &p).unwrap().value;
        let f2 = min_swap_fidelity(&w2, &q).unwrap().value;
        prop_assert!((f1 - f2).abs() < 1e-10);

        let b1 = bell_probability(&w1, &p).unwrap().value;
        let b2 = bell_probability(&w2, &q).unwrap().value;
        prop_assert!((b1 - b2).abs() < 1e-10);
    }

    /// xi stays in the unit disk, and in swap configuration it satisfies
    /// Re(xi) >= |xi|^2 (every T_LL value lies in the disk of radius 1/2
    /// around 1/2, which averaging preserves).
    #[test]
    fn xi_stays_in_swap_disk(
        lambda in 0.2f64..12.0,
        gamma in 0.0f64..1.5,
        peak_offset in -3.0f64..3.0,
        kappa_in in 0.02f64..0.8,
    ) {
        let p = swap_configuration(lambda, 0.0, 0.0, 1.0, gamma).unwrap();
        let w = gaussian_spectrum(peak_offset, kappa_in, 0.0).unwrap();
        let xi = xi_integral(&w, &p).unwrap();
        prop_assert!(xi.norm() <= 1.0 + 1e-12);
        prop_assert!(xi.re >= xi.norm_sqr() - 1e-12);
    }

    /// eta is a probability for normalized qubit pairs.
    #[test]
    fn eta_is_a_probability(
        ar in -1.0f64..1.0, ai in -1.0f64..1.0,
        cr in -1.0f64..1.0, ci in -1.0f64..1.0,
    ) {
        let a_l = Complex64::new(ar, ai);
        let c_l = Complex64::new(cr, ci);
        prop_assume!(a_l.norm() <= 1.0 && c_l.norm() <= 1.0);
        let a_r = Complex64::new((1.0 - a_l.norm_sqr()).sqrt(), 0.0);
        let c_r = Complex64::new(0.0, (1.0 - c_l.norm_sqr()).sqrt());
        let a = AtomQubit::new(a_l, a_r).unwrap();
        let c = PolarizationQubit::new(c_l, c_r).unwrap();
        let eta = eta_overlap(&a, &c);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&eta));
    }
}
