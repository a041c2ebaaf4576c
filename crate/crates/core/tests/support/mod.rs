//! Independent reference implementations used as test oracles.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigfloat::BigFloat;
use speedlimit::ComplexMatrix;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>().max(1e-300);
        if off <= 1e-32 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// `[[Re, −Im], [Im, Re]]`, the real form of a complex matrix.
fn real_embedding(m: &ComplexMatrix) -> Vec<Vec<f64>> {
    let n = m.nrows();
    let mut out = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            out[i][j] = z.re;
            out[i][j + n] = -z.im;
            out[i + n][j] = z.im;
            out[i + n][j + n] = z.re;
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix via its real embedding, where each
/// appears twice.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    jacobi_eigenvalues(real_embedding(m)).into_iter().step_by(2).collect()
}

/// `tr|A|` from the Hermitian dilation `[[0, A], [A†, 0]]`, whose spectrum
/// is `±σᵢ`; the real embedding doubles it again.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut dilation = ComplexMatrix::zeros(2 * n, 2 * n);
    dilation.view_mut((0, n), (n, n)).copy_from(a);
    dilation.view_mut((n, 0), (n, n)).copy_from(&a.adjoint());
    jacobi_eigenvalues(real_embedding(&dilation)).iter().map(|x| x.abs()).sum::<f64>() / 4.0
}

/// `√A` by Denman–Beavers iteration. Needs a well-conditioned, full-rank
/// PSD input.
pub fn sqrt_denman_beavers(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = ComplexMatrix::identity(n, n);
    for _ in 0..100 {
        let yi = y.clone().try_inverse().expect("invertible");
        let zi = z.clone().try_inverse().expect("invertible");
        let y_next = (&y + zi) * num_complex::Complex64::new(0.5, 0.0);
        let z_next = (&z + yi) * num_complex::Complex64::new(0.5, 0.0);
        let done = (&y_next - &y).norm() < 1e-15 * y.norm();
        y = y_next;
        z = z_next;
        if done {
            break;
        }
    }
    y
}

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x)
}

/// `f_δ(z)` in ~40-digit arithmetic.
pub fn objective_big(delta: f64, z: &BigFloat) -> BigFloat {
    let one = BigFloat::from_f64(1.0);
    let ratio = (one - big(delta)) / (one - *z * *z);
    let ratio = ratio.min(&one);
    (one + *z) * ratio.sqrt().asin()
}

/// `f_{δ,℘}(z)` in ~40-digit arithmetic.
pub fn qubit_objective_big(delta: f64, purity: f64, z: &BigFloat) -> BigFloat {
    let one = BigFloat::from_f64(1.0);
    let planar = big(2.0) * big(purity) - one - *z * *z;
    let ratio = ((one - big(delta)) / planar).min(&one);
    (one + *z) * ratio.sqrt().asin()
}

/// Golden-section minimization in extended precision.
pub fn golden_big(f: impl Fn(&BigFloat) -> BigFloat, lo: f64, hi: f64, width: f64) -> (f64, f64) {
    let inv_phi = BigFloat::parse("0.6180339887498948482045868343656381177203").expect("literal");
    let width = big(width);
    let (mut a, mut b) = (big(lo), big(hi));
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(&x1), f(&x2));
    while b - a > width {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(&x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(&x2);
        }
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    (x.to_f64(), fx.to_f64())
}

/// Minimizer found by the dense-grid oracle, with the number of sign
/// changes of the grid's forward differences.
pub struct GridMinimum {
    pub z: f64,
    pub value: f64,
    pub sign_changes: usize,
}

fn grid_then_refine(
    f64_objective: impl Fn(f64) -> f64,
    big_objective: impl Fn(&BigFloat) -> BigFloat,
    lo: f64,
    hi: f64,
    samples: usize,
) -> GridMinimum {
    let step = (hi - lo) / (samples - 1) as f64;
    let zs: Vec<f64> = (0..samples).map(|k| (lo + k as f64 * step).min(hi)).collect();
    let fs: Vec<f64> = zs.iter().map(|&z| f64_objective(z)).collect();
    let best = (0..samples).min_by(|&i, &j| fs[i].total_cmp(&fs[j])).expect("nonempty");
    let mut sign_changes = 0;
    let mut last_sign = 0i8;
    for w in fs.windows(2) {
        let d = w[1] - w[0];
        let s = if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if last_sign != 0 && s != last_sign {
                sign_changes += 1;
            }
            last_sign = s;
        }
    }
    let a = zs[best.saturating_sub(1)];
    let b = zs[(best + 1).min(samples - 1)];
    let (z, value) = golden_big(big_objective, a, b, 1e-13);
    GridMinimum {
        z,
        value,
        sign_changes,
    }
}

/// Oracle for `z_δ` and `α(δ)`: `samples` points of `f_δ` on `[−√δ, √δ]`,
/// then golden-section refinement around the best one in extended precision.
pub fn alpha_oracle(delta: f64, samples: usize) -> GridMinimum {
    let edge = delta.sqrt();
    let f = |z: f64| (1.0 + z) * ((1.0 - delta) / (1.0 - z * z)).min(1.0).sqrt().asin();
    grid_then_refine(f, |z| objective_big(delta, z), -edge, edge, samples)
}

/// Same oracle for `α(δ,℘)` on `z² ≤ δ + 2℘ − 2`.
pub fn qubit_alpha_oracle(delta: f64, purity: f64, samples: usize) -> GridMinimum {
    let edge = (delta + 2.0 * purity - 2.0).max(0.0).sqrt();
    let f = |z: f64| {
        (1.0 + z) * ((1.0 - delta) / (2.0 * purity - 1.0 - z * z)).min(1.0).sqrt().asin()
    };
    grid_then_refine(f, |z| qubit_objective_big(delta, purity, z), -edge, edge, samples)
}

/// Central difference.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}
