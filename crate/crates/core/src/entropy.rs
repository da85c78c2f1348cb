//! Entropies (in bits), the two sides of the memory-assisted entropic
//! uncertainty relation, and negativity.

use crate::error::{Error, Result};
use crate::linalg::{
    eigvals_hermitian, partial_trace_a, partial_transpose_a, trace_norm_hermitian, ComplexMatrix,
};
use crate::states::{
    check_density_matrix, max_overlap_c, measure_unchecked, spin1_observable, Observable, SpinAxis,
    EIGEN_FLOOR,
};

/// `−Σ λ log₂ λ`. Eigenvalues in `[EIGEN_FLOOR, 0)` count as zero.
pub fn vn_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let mut s = 0.0;
    for lam in eigvals_hermitian(rho)? {
        if lam < EIGEN_FLOOR {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lam:.3e}"
            )));
        }
        if lam > 0.0 {
            s -= lam * lam.log2();
        }
    }
    Ok(s)
}

/// `S(A|B) = S(ρ_AB) − S(ρ_B)`
pub fn conditional_entropy(rho_ab: &ComplexMatrix) -> Result<f64> {
    let rho_b = partial_trace_a(rho_ab)?;
    Ok(vn_entropy(rho_ab)? - vn_entropy(&rho_b)?)
}

/// Left side of the relation: `S(R|B) + S(Q|B)` for the measurements on A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EurLeft {
    pub u_l: f64,
    /// `S(R|B)`, by default R = S_x
    pub sxb: f64,
    /// `S(Q|B)`, by default Q = S_z
    pub szb: f64,
}

/// One evaluation of both sides of the relation plus negativity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EurSample {
    pub u_l: f64,
    pub u_b: f64,
    pub sxb: f64,
    pub szb: f64,
    pub negativity: f64,
}

/// The two measurements Alice chooses between, with their overlap constant.
#[derive(Debug, Clone)]
pub struct MeasurementPair {
    pub r: Observable,
    pub q: Observable,
    pub c: f64,
}

impl MeasurementPair {
    pub fn new(r: Observable, q: Observable) -> Self {
        let c = max_overlap_c(&r, &q);
        Self { r, q, c }
    }

    /// Spin-1 `S_x` and `S_z`.
    pub fn spin1_xz() -> Self {
        Self::new(spin1_observable(SpinAxis::X), spin1_observable(SpinAxis::Z))
    }

    /// `log₂(1/c)`
    pub fn bound_constant(&self) -> f64 {
        -self.c.log2()
    }
}

pub fn eur_left(rho_ab: &ComplexMatrix) -> Result<EurLeft> {
    eur_left_with(rho_ab, &MeasurementPair::spin1_xz())
}

pub fn eur_left_with(rho_ab: &ComplexMatrix, pair: &MeasurementPair) -> Result<EurLeft> {
    rho_ab.expect_dim(9)?;
    check_density_matrix(rho_ab)?;
    let s_b = vn_entropy(&partial_trace_a(rho_ab)?)?;
    left_given_marginal(rho_ab, pair, s_b)
}

fn left_given_marginal(
    rho_ab: &ComplexMatrix,
    pair: &MeasurementPair,
    s_b: f64,
) -> Result<EurLeft> {
    let sxb = vn_entropy(&measure_unchecked(rho_ab, &pair.r))? - s_b;
    let szb = vn_entropy(&measure_unchecked(rho_ab, &pair.q))? - s_b;
    Ok(EurLeft {
        u_l: sxb + szb,
        sxb,
        szb,
    })
}

/// Right side of the relation: `log₂(1/c) + S(A|B)`.
pub fn eur_right(rho_ab: &ComplexMatrix, c: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::param("c", format!("must lie in (0, 1], got {c}")));
    }
    rho_ab.expect_dim(9)?;
    Ok(-c.log2() + conditional_entropy(rho_ab)?)
}

/// `(‖ρ^{T_A}‖₁ − 1)/2`, floored at zero.
pub fn negativity(rho_ab: &ComplexMatrix) -> Result<f64> {
    let norm = trace_norm_hermitian(&partial_transpose_a(rho_ab)?)?;
    Ok(((norm - 1.0) / 2.0).max(0.0))
}

/// Both sides of the relation and the negativity of `rho_ab`.
pub fn eur_sample(rho_ab: &ComplexMatrix, pair: &MeasurementPair) -> Result<EurSample> {
    rho_ab.expect_dim(9)?;
    check_density_matrix(rho_ab)?;
    let s_b = vn_entropy(&partial_trace_a(rho_ab)?)?;
    let left = left_given_marginal(rho_ab, pair, s_b)?;
    let u_b = pair.bound_constant() + vn_entropy(rho_ab)? - s_b;
    Ok(EurSample {
        u_l: left.u_l,
        u_b,
        sxb: left.sxb,
        szb: left.szb,
        negativity: negativity(rho_ab)?,
    })
}
