//! End-to-end acceptance checks for the fitting operator and the benchmark
//! harness. Each test prints one `[PASS]`/`[FAIL]` verdict line; run with
//! `cargo test -p mockcheb-bench --test acceptance -- --nocapture` to see
//! them all.

use mockcheb::basis::{eval_basis_derivatives, GradedBasis};
use mockcheb::classical::{hermite_interpolant, lagrange_interpolant};
use mockcheb::linalg::{numerical_rank, DenseMatrix, PivotedLu, DEFAULT_RANK_TOL};
use mockcheb::nodes::select_mock_chebyshev;
use mockcheb::operator::{assemble, empirical_operator_norm, fit, norm_bound, HermiteSamples};
use mockcheb_bench::config::SweepConfig;
use mockcheb_bench::records::{render_error_csv, Method, ReconstructionTrace};
use mockcheb_bench::runner::{
    eval_grid, fit_for, run_cond_sweep, run_error_sweep, run_reconstruction,
};
use mockcheb_bench::testfn::TestFunctionId;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

/// Runs one acceptance criterion and prints its verdict line.
fn criterion<F: FnOnce() + UnwindSafe>(number: usize, name: &str, body: F) {
    match catch_unwind(body) {
        Ok(()) => println!("[PASS] criterion {number}: {name}"),
        Err(cause) => {
            println!("[FAIL] criterion {number}: {name}");
            resume_unwind(cause);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sup_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

#[test]
fn criterion_01_fits_satisfy_the_interpolation_constraints() {
    criterion(1, "fits satisfy the Hermite interpolation constraints", || {
        for function in TestFunctionId::ALL {
            for n in [100usize, 500] {
                let (params, grid) = select_mock_chebyshev::<f64>(n, 1).unwrap();
                let basis = GradedBasis::chebyshev(params.r_tilde);
                let samples =
                    HermiteSamples::from_function(params, &grid, |l, x| function.eval(l, x))
                        .unwrap();
                let system = assemble(&samples, &basis).unwrap();
                let approx = fit(&samples, &basis).unwrap();
                let d = samples.constraint_vector();
                let xi_c = system.xi.matvec(approx.coefficients()).unwrap();
                let violation = sup_abs(xi_c.iter().zip(&d).map(|(a, b)| a - b));
                let tol = 1e-6 * (1.0 + sup_abs(d.iter().copied()));
                assert!(
                    violation <= tol,
                    "{} at n = {n}: constraint violation {violation:.3e} exceeds {tol:.3e}",
                    function.name()
                );
            }
        }
    });
}

#[test]
fn criterion_02_polynomials_of_the_fit_degree_are_reproduced() {
    criterion(2, "polynomials of the fit degree are reproduced", || {
        let (params, grid) = select_mock_chebyshev::<f64>(100, 1).unwrap();
        let basis = GradedBasis::chebyshev(params.r_tilde);
        let node_table = eval_basis_derivatives(&basis, grid.nodes(), 1);
        let xs = eval_grid(1000);
        let eval_table = eval_basis_derivatives(&basis, &xs, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..20 {
            let coeffs: Vec<f64> = (0..=params.r_tilde)
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let values: Vec<Vec<f64>> = (0..=1)
                .map(|l| {
                    (0..grid.len())
                        .map(|i| dot(node_table.row(l, i), &coeffs))
                        .collect()
                })
                .collect();
            let samples = HermiteSamples::from_values(params, &grid, values).unwrap();
            let approx = fit(&samples, &basis).unwrap();
            let scale = sup_abs(coeffs.iter().copied());
            let worst = (0..xs.len())
                .map(|i| {
                    (dot(eval_table.row(0, i), &coeffs)
                        - dot(eval_table.row(0, i), approx.coefficients()))
                    .abs()
                })
                .fold(0.0f64, f64::max);
            assert!(
                worst <= 1e-7 * scale,
                "trial {trial}: sup deviation {worst:.3e} at coefficient scale {scale:.3e}"
            );
        }
    });
}

// Householder QR with stored reflectors, local to the nullspace oracle of
// criterion 3. Reflectors are applied one by one, so the full Q never has
// to be formed.
struct Qr {
    cols: usize,
    reflectors: Vec<Vec<f64>>,
    r: Vec<Vec<f64>>,
}

fn householder_qr(a: &DenseMatrix<f64>) -> Qr {
    let rows = a.rows();
    let cols = a.cols();
    let mut work: Vec<Vec<f64>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut reflectors = Vec::new();
    for s in 0..cols.min(rows) {
        let norm2: f64 = (s..rows).map(|i| work[i][s] * work[i][s]).sum();
        let norm = norm2.sqrt();
        let alpha = if work[s][s] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; rows];
        for (i, vi) in v.iter_mut().enumerate().skip(s) {
            *vi = work[i][s];
        }
        v[s] -= alpha;
        let beta: f64 = v.iter().map(|x| x * x).sum();
        if beta > 0.0 {
            for j in s..cols {
                let dot: f64 = (s..rows).map(|i| v[i] * work[i][j]).sum();
                let c = 2.0 * dot / beta;
                for i in s..rows {
                    work[i][j] -= c * v[i];
                }
            }
        }
        reflectors.push(v);
    }
    Qr {
        cols,
        reflectors,
        r: work,
    }
}

impl Qr {
    fn reflect(v: &[f64], x: &mut [f64]) {
        let beta: f64 = v.iter().map(|a| a * a).sum();
        if beta == 0.0 {
            return;
        }
        let dot: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        let c = 2.0 * dot / beta;
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi -= c * vi;
        }
    }

    fn apply_q_transpose(&self, x: &mut [f64]) {
        for v in &self.reflectors {
            Self::reflect(v, x);
        }
    }

    fn apply_q(&self, x: &mut [f64]) {
        for v in self.reflectors.iter().rev() {
            Self::reflect(v, x);
        }
    }

    fn back_substitute(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.cols;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            for j in (i + 1)..n {
                acc -= self.r[i][j] * x[j];
            }
            x[i] = acc / self.r[i][i];
        }
        x
    }
}

/// Equality-constrained least squares by the nullspace method, entirely
/// independent of the KKT path under test.
fn constrained_ls_by_nullspace(
    lambda: &DenseMatrix<f64>,
    xi: &DenseMatrix<f64>,
    b: &[f64],
    d: &[f64],
) -> Vec<f64> {
    let width = lambda.cols();
    let m_rows = xi.rows();
    let qr1 = householder_qr(&xi.transpose());

    // Particular solution: solve R1^T y = d, then c_p = Q [y; 0].
    let mut y = vec![0.0; m_rows];
    for i in 0..m_rows {
        let mut acc = d[i];
        for j in 0..i {
            acc -= qr1.r[j][i] * y[j];
        }
        y[i] = acc / qr1.r[i][i];
    }
    let mut c_p = vec![0.0; width];
    c_p[..m_rows].copy_from_slice(&y);
    qr1.apply_q(&mut c_p);

    // Free directions are the trailing Q columns; assemble lambda * Q2.
    let free = width - m_rows;
    let mut q2_cols: Vec<Vec<f64>> = Vec::with_capacity(free);
    for t in 0..free {
        let mut e = vec![0.0; width];
        e[m_rows + t] = 1.0;
        qr1.apply_q(&mut e);
        q2_cols.push(e);
    }
    let a2 = DenseMatrix::from_fn(lambda.rows(), free, |i, j| {
        lambda
            .row(i)
            .iter()
            .zip(&q2_cols[j])
            .map(|(&l, &q)| l * q)
            .sum()
    })
    .unwrap();
    let lam_cp = lambda.matvec(&c_p).unwrap();
    let mut b2: Vec<f64> = b.iter().zip(&lam_cp).map(|(&bi, &ci)| bi - ci).collect();

    let qr2 = householder_qr(&a2);
    qr2.apply_q_transpose(&mut b2);
    let z = qr2.back_substitute(&b2[..free]);

    let mut c = c_p;
    for (t, col) in q2_cols.iter().enumerate() {
        for (ci, &qi) in c.iter_mut().zip(col) {
            *ci += z[t] * qi;
        }
    }
    c
}

#[test]
fn criterion_03_the_kkt_path_matches_a_nullspace_oracle() {
    criterion(3, "KKT solutions match an independent nullspace solver", || {
        for function in [TestFunctionId::F1, TestFunctionId::F3] {
            for n in [100usize, 300] {
                let (params, grid) = select_mock_chebyshev::<f64>(n, 0).unwrap();
                let basis = GradedBasis::chebyshev(params.r_tilde);
                let samples =
                    HermiteSamples::from_function(params, &grid, |_, x| function.eval(0, x))
                        .unwrap();
                let system = assemble(&samples, &basis).unwrap();
                let approx = fit(&samples, &basis).unwrap();
                let oracle = constrained_ls_by_nullspace(
                    &system.lambda,
                    &system.xi,
                    &samples.data_vector(),
                    &samples.constraint_vector(),
                );
                let scale = sup_abs(oracle.iter().copied());
                for (j, (a, b)) in approx.coefficients().iter().zip(&oracle).enumerate() {
                    assert!(
                        (a - b).abs() <= 1e-8 * scale,
                        "{} at n = {n}: coefficient {j} differs, {a:.12e} vs {b:.12e}",
                        function.name()
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_04_system_blocks_keep_full_rank_across_the_sweep() {
    criterion(4, "interpolation and constraint blocks keep full rank", || {
        for k in [0usize, 1] {
            for n in (100..=1000).step_by(50) {
                let (params, grid) = select_mock_chebyshev::<f64>(n, k).unwrap();
                let basis = GradedBasis::chebyshev(params.r_tilde);
                let system = assemble(&HermiteSamples::zero(params, &grid), &basis).unwrap();
                assert_eq!(
                    numerical_rank(&system.lambda, DEFAULT_RANK_TOL),
                    params.r_tilde + 1,
                    "interpolation matrix rank deficient at n = {n}, k = {k}"
                );
                assert_eq!(
                    numerical_rank(&system.xi, DEFAULT_RANK_TOL),
                    params.m_star + 1,
                    "constraint matrix rank deficient at n = {n}, k = {k}"
                );
                assert!(
                    PivotedLu::factor_equilibrated(&system.kkt).is_ok(),
                    "equilibrated factorization failed at n = {n}, k = {k}"
                );
            }
        }
    });
}

#[test]
fn criterion_05_kkt_conditioning_grows_monotonically_into_the_expected_range() {
    criterion(5, "KKT conditioning grows into the expected range", || {
        let config = SweepConfig {
            functions: vec![TestFunctionId::F1],
            ..SweepConfig::default()
        };
        let records = run_cond_sweep(&config).unwrap();
        assert_eq!(records.len(), 19);
        let conds: Vec<f64> = records.iter().map(|r| r.kkt_cond).collect();
        for (i, pair) in conds.windows(2).enumerate() {
            assert!(
                pair[1] >= 0.1 * pair[0],
                "conditioning dropped sharply between sweep steps {i} and {}: {:.3e} to {:.3e}",
                i + 1,
                pair[0],
                pair[1]
            );
        }
        assert!(conds.last().unwrap() > conds.first().unwrap());
        let last = *conds.last().unwrap();
        assert!(
            (1e15..=1e19).contains(&last),
            "conditioning at the sweep end is {last:.3e}, outside [1e15, 1e19]"
        );
    });
}

#[test]
fn criterion_06_errors_decay_and_plateau_near_machine_precision() {
    criterion(6, "mean errors decay and stabilize at large orders", || {
        let config = SweepConfig {
            functions: vec![TestFunctionId::F1, TestFunctionId::F2],
            ..SweepConfig::default()
        };
        let outputs = run_error_sweep(&config).unwrap();
        for function in [TestFunctionId::F1, TestFunctionId::F2] {
            let means: Vec<(usize, f64)> = outputs
                .records
                .iter()
                .filter(|r| r.function == function && r.method == Method::Hermite)
                .map(|r| (r.n, r.mean_error))
                .collect();
            assert_eq!(means.len(), 19);
            let first = means.first().unwrap().1;
            let last = means.last().unwrap().1;
            assert!(
                last < first,
                "{}: mean error grew from {first:.3e} to {last:.3e}",
                function.name()
            );
            let tail = &means[means.len() - 3..];
            let t_max = tail.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let t_min = tail.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            assert!(
                t_max <= 10.0 * t_min,
                "{}: converged errors still vary by more than 10x: {t_min:.3e} to {t_max:.3e}",
                function.name()
            );
        }
    });
}

#[test]
fn criterion_07_hermite_fits_beat_the_value_only_baseline() {
    criterion(7, "Hermite fits beat the value-only baseline", || {
        let config = SweepConfig {
            n_start: 300,
            n_end: 500,
            n_step: 200,
            functions: vec![TestFunctionId::F1],
            baseline: true,
            ..SweepConfig::default()
        };
        let outputs = run_error_sweep(&config).unwrap();
        for n in [300usize, 500] {
            let mean_of = |method: Method| {
                outputs
                    .records
                    .iter()
                    .find(|r| r.n == n && r.method == method)
                    .unwrap()
                    .mean_error
            };
            let hermite = mean_of(Method::Hermite);
            let baseline = mean_of(Method::MockChebLs);
            assert!(
                hermite < baseline,
                "at n = {n} the Hermite fit ({hermite:.3e}) does not beat the baseline ({baseline:.3e})"
            );
        }
    });
}

#[test]
fn criterion_08_the_operator_norm_bound_dominates_empirical_estimates() {
    criterion(8, "the operator norm bound dominates empirical estimates", || {
        for (n, k) in [(100usize, 1usize), (200, 1), (100, 2)] {
            let (params, grid) = select_mock_chebyshev::<f64>(n, k).unwrap();
            let basis = GradedBasis::chebyshev(params.r_tilde);
            let system = assemble(&HermiteSamples::zero(params, &grid), &basis).unwrap();
            let bound = norm_bound(&system, &basis).unwrap();
            let empirical = empirical_operator_norm::<f64>(&params, &basis, 25).unwrap();
            assert!(empirical.is_finite() && empirical > 0.0);
            assert!(
                empirical <= bound.bound,
                "at n = {n}, k = {k}: empirical norm {empirical:.3e} exceeds bound {:.3e}",
                bound.bound
            );
        }
    });
}

#[test]
fn criterion_09_the_newton_hermite_oracle_interpolates_and_reproduces() {
    criterion(9, "the Newton-Hermite oracle interpolates its data", || {
        let g = |l: usize, x: f64| -> f64 {
            let e = (0.7 * x).exp();
            let (s, c) = (3.0 * x).sin_cos();
            match l {
                0 => e * s,
                1 => e * (0.7 * s + 3.0 * c),
                2 => e * (-8.51 * s + 4.2 * c),
                _ => unreachable!(),
            }
        };
        for (n, k) in [(5usize, 0usize), (8, 1), (12, 2)] {
            let nodes: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect();
            let values: Vec<Vec<f64>> = (0..=k)
                .map(|l| nodes.iter().map(|&x| g(l, x)).collect())
                .collect();
            let form = hermite_interpolant(&nodes, &values).unwrap();
            for (i, &x) in nodes.iter().enumerate() {
                for l in 0..=k {
                    let truth = values[l][i];
                    let got = form.evaluate(x, l);
                    assert!(
                        (got - truth).abs() <= 1e-8 * (1.0 + truth.abs()),
                        "n = {n}, k = {k}: order-{l} condition missed at node {i}"
                    );
                }
            }
        }

        // Degree 14 equals the full Hermite degree of n = 4, k = 2, so the
        // interpolant must reproduce the polynomial everywhere.
        let p = |l: usize, x: f64| -> f64 {
            match l {
                0 => x.powi(14) - 2.0 * x.powi(7) + 0.5 * x.powi(3) - 1.0,
                1 => 14.0 * x.powi(13) - 14.0 * x.powi(6) + 1.5 * x * x,
                2 => 182.0 * x.powi(12) - 84.0 * x.powi(5) + 3.0 * x,
                _ => unreachable!(),
            }
        };
        let nodes: Vec<f64> = (0..=4).map(|i| -1.0 + 0.5 * i as f64).collect();
        let values: Vec<Vec<f64>> = (0..=2)
            .map(|l| nodes.iter().map(|&x| p(l, x)).collect())
            .collect();
        let form = hermite_interpolant(&nodes, &values).unwrap();
        for x in eval_grid(400) {
            let truth = p(0, x);
            assert!(
                (form.evaluate(x, 0) - truth).abs() <= 1e-9 * (1.0 + truth.abs()),
                "degree-14 reproduction missed at x = {x}"
            );
        }
    });
}

#[test]
fn criterion_10_the_constrained_fit_tames_the_runge_blowup() {
    criterion(10, "the constrained fit tames the Runge blowup", || {
        let n = 40usize;
        let nodes: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect();
        let values: Vec<f64> = nodes
            .iter()
            .map(|&x| TestFunctionId::F1.eval(0, x))
            .collect();
        let lagrange = lagrange_interpolant(&nodes, &values).unwrap();
        let xs = eval_grid(1000);
        let lagrange_err = sup_abs(
            xs.iter()
                .map(|&x| lagrange.evaluate(x) - TestFunctionId::F1.eval(0, x)),
        );
        assert!(
            lagrange_err > 10.0,
            "equispaced interpolation unexpectedly stayed bounded: {lagrange_err:.3e}"
        );

        let approx = fit_for(n, 1, true, TestFunctionId::F1).unwrap();
        let fitted = approx.evaluate_many(&xs, 0);
        let fit_err = sup_abs(
            xs.iter()
                .zip(&fitted)
                .map(|(&x, &v)| v - TestFunctionId::F1.eval(0, x)),
        );
        assert!(
            fit_err < 1.0,
            "constrained fit blew up on the same data: {fit_err:.3e}"
        );
    });
}

#[test]
fn criterion_11_reconstructions_localize_error_at_the_boundary() {
    criterion(11, "reconstruction error concentrates at the boundary", || {
        let config = SweepConfig {
            n_start: 25,
            n_end: 100,
            n_step: 75,
            functions: vec![TestFunctionId::F1],
            ..SweepConfig::default()
        };
        let traces = run_reconstruction(&config).unwrap();
        assert_eq!(traces.len(), 2);

        let region_err = |trace: &ReconstructionTrace, keep: &dyn Fn(f64) -> bool| {
            sup_abs(
                trace
                    .xs
                    .iter()
                    .zip(trace.f_values.iter().zip(&trace.approx_values))
                    .filter(|(x, _)| keep(**x))
                    .map(|(_, (f, a))| f - a),
            )
        };

        let coarse = &traces[0];
        assert_eq!(coarse.n, 25);
        let boundary = region_err(coarse, &|x: f64| x.abs() >= 0.9);
        let center = region_err(coarse, &|x: f64| x.abs() <= 0.5);
        assert!(
            boundary > center,
            "n = 25: boundary error {boundary:.3e} not above center error {center:.3e}"
        );

        let fine = &traces[1];
        assert_eq!(fine.n, 100);
        let global = region_err(fine, &|_| true);
        assert!(
            global <= 1e-2,
            "n = 100: global reconstruction error {global:.3e} above 1e-2"
        );
    });
}

#[test]
fn criterion_12_sweeps_are_bitwise_reproducible() {
    criterion(12, "repeated sweeps produce identical CSV bytes", || {
        let config = SweepConfig {
            n_start: 100,
            n_end: 200,
            n_step: 50,
            eval_grid_size: 64,
            functions: vec![TestFunctionId::F1, TestFunctionId::F3],
            baseline: true,
            ..SweepConfig::default()
        };
        let first = render_error_csv(&run_error_sweep(&config).unwrap().records);
        let second = render_error_csv(&run_error_sweep(&config).unwrap().records);
        assert_eq!(first, second);
        assert_eq!(first.lines().count(), 1 + 3 * 2 * 3);
    });
}
