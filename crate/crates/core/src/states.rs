//! Initial two-qutrit states, spin-1 observables and projective measurement
//! on qutrit A.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, kron, ComplexMatrix};

/// Trace deviation accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted for a density matrix.
pub const EIGEN_FLOOR: f64 = -1e-10;

/// Checks Hermiticity, unit trace and positivity (down to [`EIGEN_FLOOR`]).
pub fn check_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
    }
    let eig = eig_hermitian(rho).map_err(|e| Error::InvalidState(e.to_string()))?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < EIGEN_FLOOR {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Mixing weight `k` of the isotropic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicStateSpec {
    pub k: f64,
}

impl IsotropicStateSpec {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::param("k", format!("must lie in [0, 1], got {k}")));
        }
        Ok(Self { k })
    }
}

/// `(|00⟩ + |11⟩ + |22⟩)/√3`
pub fn psi_plus() -> Vec<Complex64> {
    let s = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); 9];
    for i in 0..3 {
        v[4 * i] = s;
    }
    v
}

/// `(1−k)/9·I + k|ψ₊⟩⟨ψ₊|`
pub fn isotropic_state(spec: IsotropicStateSpec) -> Result<ComplexMatrix> {
    let IsotropicStateSpec { k } = IsotropicStateSpec::new(spec.k)?;
    let mixed = ComplexMatrix::identity(9).scale_real((1.0 - k) / 9.0);
    let entangled = ComplexMatrix::outer(&psi_plus()).scale_real(k);
    Ok(&mixed + &entangled)
}

/// A nondegenerate Hermitian operator with its eigenbasis.
///
/// Eigenvalues are descending. Each eigenvector's first nonzero component is
/// real and positive.
#[derive(Debug, Clone)]
pub struct Observable {
    pub matrix: ComplexMatrix,
    pub eigenvalues: Vec<f64>,
    pub eigenbasis: Vec<Vec<Complex64>>,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let eig = eig_hermitian(&matrix)?;
        for w in eig.eigenvalues.windows(2) {
            if (w[0] - w[1]).abs() < 1e-8 {
                return Err(Error::param(
                    "observable",
                    format!("degenerate eigenvalue {}", w[0]),
                ));
            }
        }
        let eigenbasis = eig.eigenvectors.into_iter().map(fix_phase).collect();
        Ok(Self {
            matrix,
            eigenvalues: eig.eigenvalues,
            eigenbasis,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `|ψᵢ⟩⟨ψᵢ|` for every eigenvector.
    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.eigenbasis
            .iter()
            .map(|v| ComplexMatrix::outer(v))
            .collect()
    }
}

fn fix_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(first) = v.iter().copied().find(|x| x.norm() > 1e-12) {
        let phase = first.conj() / first.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Z,
}

/// Spin-1 angular momentum component (ħ = 1) in the S_z eigenbasis.
pub fn spin1_observable(axis: SpinAxis) -> Observable {
    let matrix = match axis {
        SpinAxis::Z => ComplexMatrix::from_diag(&[1.0, 0.0, -1.0]),
        SpinAxis::X => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            ComplexMatrix::from_real_rows([[0.0, h, 0.0], [h, 0.0, h], [0.0, h, 0.0]])
        }
    };
    Observable::new(matrix).expect("spin-1 components are Hermitian and nondegenerate")
}

/// `c = max_{i,j} |⟨rᵢ|qⱼ⟩|²`
pub fn max_overlap_c(r: &Observable, q: &Observable) -> f64 {
    let mut c: f64 = 0.0;
    for u in &r.eigenbasis {
        for v in &q.eigenbasis {
            let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
            c = c.max(ip.norm_sqr());
        }
    }
    c
}

/// Post-measurement state `Σᵢ (Pᵢ⊗I) ρ (Pᵢ⊗I)` after measuring `obs` on A.
pub fn measure_post_state(rho_ab: &ComplexMatrix, obs: &Observable) -> Result<ComplexMatrix> {
    rho_ab.expect_dim(9)?;
    obs.matrix.expect_dim(3)?;
    check_density_matrix(rho_ab)?;
    Ok(measure_unchecked(rho_ab, obs))
}

pub(crate) fn measure_unchecked(rho_ab: &ComplexMatrix, obs: &Observable) -> ComplexMatrix {
    let id = ComplexMatrix::identity(3);
    obs.projectors()
        .iter()
        .map(|p| kron(p, &id).sandwich(rho_ab))
        .fold(ComplexMatrix::zeros(9), |acc, m| &acc + &m)
        .hermitian_part()
}
