use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use lambda_qed::oracle::{build_hamiltonian, propagate, OracleGrid};
use lambda_qed::{
    gaussian_spectrum, min_swap_fidelity, phase_factor, swap_configuration, transfer_matrix,
    xi_integral,
};

fn bench_closed_forms(c: &mut Criterion) {
    let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();

    c.bench_function("phase_factor", |b| {
        let mut k = -20.0;
        b.iter(|| {
            k = if k > 20.0 { -20.0 } else { k + 1e-3 };
            black_box(phase_factor(black_box(k), &p))
        })
    });

    c.bench_function("transfer_matrix", |b| {
        let mut k = -20.0;
        b.iter(|| {
            k = if k > 20.0 { -20.0 } else { k + 1e-3 };
            black_box(transfer_matrix(black_box(k), &p))
        })
    });
}

fn bench_spectral_average(c: &mut Criterion) {
    let p = swap_configuration(10.0, 0.0, 0.0, 1.0, 0.5).unwrap();
    let w = gaussian_spectrum(0.0, 0.1, 0.0).unwrap();

    c.bench_function("xi_integral_gaussian", |b| {
        b.iter(|| black_box(xi_integral(&w, &p).unwrap()))
    });

    c.bench_function("min_swap_fidelity", |b| {
        b.iter(|| black_box(min_swap_fidelity(&w, &p).unwrap().value))
    });
}

fn bench_oracle_propagation(c: &mut Criterion) {
    let p = swap_configuration(3.0, 0.0, 0.0, 1.0, 0.0).unwrap();
    let grid = OracleGrid::centered(0.0, 10.0, 501, 0.004, 5.0).unwrap();
    let h = build_hamiltonian(&p, &grid).unwrap();
    let n = grid.n_modes;
    let amp = Complex64::new((n as f64).sqrt().recip(), 0.0);
    let mut psi0 = vec![Complex64::new(0.0, 0.0); n + 1];
    for slot in psi0.iter_mut().skip(1) {
        *slot = amp;
    }

    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("propagate_501_modes_5kappa_time", |b| {
        b.iter(|| black_box(propagate(&psi0, &h, &grid).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_closed_forms,
    bench_spectral_average,
    bench_oracle_propagation
);
criterion_main!(benches);
