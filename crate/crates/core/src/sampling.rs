//! Seedable random states, Hamiltonians and unitaries.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::matcore::{c, ComplexMatrix, ComplexVector};
use crate::saturation::SaturatingSpec;
use crate::states::{DensityMatrix, Hamiltonian};

/// Generator for sample `index` of a campaign seeded with `seed`. Each sample
/// gets its own stream so results do not depend on evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(gaussian(rng), gaussian(rng)))
}

/// Haar-random unitary: QR of a Ginibre matrix, with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let col = q.column(k) * phase;
        q.set_column(k, &col);
    }
    q
}

/// Uniform point on the probability simplex.
pub fn dirichlet_weights(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Random state of the given rank: Dirichlet(1) spectrum, Haar eigenvectors.
pub fn random_density_matrix_of_rank(rng: &mut impl Rng, dim: usize, rank: usize) -> Result<DensityMatrix> {
    let u = random_unitary(rng, dim);
    let weights = dirichlet_weights(rng, rank);
    let vectors: Vec<ComplexVector> = (0..rank).map(|k| u.column(k).into_owned()).collect();
    DensityMatrix::from_ensemble(&weights, &vectors)
}

/// Random state whose rank is uniform on `1..=dim`.
pub fn random_density_matrix(rng: &mut impl Rng, dim: usize) -> Result<DensityMatrix> {
    let rank = rng.random_range(1..=dim);
    random_density_matrix_of_rank(rng, dim, rank)
}

pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    let v = ComplexVector::from_fn(dim, |_, _| c(gaussian(rng), gaussian(rng)));
    let n = v.norm();
    v.unscale(n)
}

/// Random Hamiltonian with energies uniform on `[-scale, scale]` in a Haar
/// basis. Occasionally a pair of energies is merged to exercise degenerate
/// levels.
pub fn random_hamiltonian(rng: &mut impl Rng, dim: usize, scale: f64) -> Result<Hamiltonian> {
    let mut energies: Vec<f64> = (0..dim).map(|_| rng.random_range(-scale..=scale)).collect();
    if dim > 2 && rng.random_bool(0.25) {
        energies[1] = energies[0];
    }
    Hamiltonian::from_spectrum(&energies, &random_unitary(rng, dim))
}

/// Random [`SaturatingSpec`] of the given rank in dimension `dim`.
///
/// The two populated levels get random multiplicities of at least `rank`;
/// the remaining dimensions get random energies elsewhere in the spectrum.
/// The eigenbasis is Haar random and each pairing is a random orthonormal
/// frame inside its eigenspace.
pub fn random_saturating_spec(rng: &mut impl Rng, dim: usize, rank: usize, delta: f64) -> Result<SaturatingSpec> {
    if rank == 0 || dim < 2 * rank {
        return Err(Error::Domain(format!("rank {rank} needs dimension at least {}, got {dim}", 2 * rank)));
    }
    let spare = dim - 2 * rank;
    let extra0 = rng.random_range(0..=spare);
    let extra1 = rng.random_range(0..=spare - extra0);
    let (m0, m1) = (rank + extra0, rank + extra1);
    let e0: f64 = rng.random_range(-1.0..0.0);
    let e1 = e0 + rng.random_range(0.5..2.0);
    let mut energies = vec![e0; m0];
    energies.extend(std::iter::repeat_n(e1, m1));
    while energies.len() < dim {
        let e: f64 = rng.random_range(-2.0..3.0);
        if (e - e0).abs() > 1e-2 && (e - e1).abs() > 1e-2 {
            energies.push(e);
        }
    }
    let v = random_unitary(rng, dim);
    let f0 = v.columns(0, m0) * random_unitary(rng, m0);
    let f1 = v.columns(m0, m1) * random_unitary(rng, m1);
    let hamiltonian = Hamiltonian::from_spectrum(&energies, &v)?;
    let index_of = |e: f64| {
        hamiltonian
            .levels()
            .iter()
            .position(|l| (l.energy - e).abs() < 1e-9)
            .ok_or_else(|| Error::Numerical(format!("level at energy {e} was not resolved")))
    };
    let level0 = index_of(e0)?;
    let level1 = index_of(e1)?;
    let pairing = (0..rank)
        .map(|j| (f0.column(j).into_owned(), f1.column(j).into_owned()))
        .collect();
    Ok(SaturatingSpec {
        hamiltonian,
        level0,
        level1,
        delta,
        weights: dirichlet_weights(rng, rank),
        pairing,
    })
}
