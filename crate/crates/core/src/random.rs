//! Random matrices and channel parameters for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::ChannelParams;
use crate::linalg::ComplexMatrix;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_vec(dim, (0..dim * dim).map(|_| gaussian(rng)).collect())
}

/// Exactly Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim).hermitian_part()
}

/// Unitary from Gram–Schmidt on the columns of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.column(j);
        for u in &cols {
            let ip: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= ip * ui;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            u[(i, j)] = *x;
        }
    }
    u
}

/// Full-rank density matrix `GG†/tr(GG†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr).hermitian_part()
}

/// Random pure state `|v⟩⟨v|`.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    ComplexMatrix::outer(&v)
}

/// Channel parameters spanning Markovian and non-Markovian regimes:
/// γ₁, γ₂ ∈ [0.1, 5], θ ∈ [−1, 1], λ log-uniform on [10⁻³, 10³].
pub fn random_channel_params<R: Rng + ?Sized>(rng: &mut R) -> ChannelParams {
    ChannelParams {
        gamma1: rng.gen_range(0.1..5.0),
        gamma2: rng.gen_range(0.1..5.0),
        theta: rng.gen_range(-1.0..=1.0),
        lambda: 10f64.powf(rng.gen_range(-3.0..3.0)),
    }
}
