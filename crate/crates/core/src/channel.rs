//! Non-Markovian amplitude damping of a V-type three-level atom.
//!
//! Both excited levels decay to a common ground level through a reservoir
//! with a Lorentzian spectral density of width `lambda`. Cross-coupling of the
//! two transition dipoles (strength `theta`, spontaneously generated
//! interference) mixes the excited levels into two dressed decay branches
//! with rates `gamma_plus` and `gamma_minus`. Each branch decoheres with the
//! amplitude `G±(t)`, and the channel acts through three Kraus operators.
//!
//! Unless converted with [`KrausSet::in_basis`], basis index 0 is excited
//! level |1⟩, index 1 is excited level |2⟩ and index 2 is the ground level.
//! Rates are in units of a reference decay rate γ and times in units of 1/γ.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::states::check_density_matrix;

const DEGENERATE_Q: f64 = 1e-12;
const DEGENERATE_D: f64 = 1e-12;

/// Physical inputs of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub gamma1: f64,
    pub gamma2: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl ChannelParams {
    /// Equal decay rates `γ₁ = γ₂ = 1`.
    pub fn symmetric(theta: f64, lambda: f64) -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            theta,
            lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::param(
                    field,
                    format!("must be finite and > 0, got {x}"),
                ))
            }
        };
        positive("gamma1", self.gamma1)?;
        positive("gamma2", self.gamma2)?;
        positive("lambda", self.lambda)?;
        if self.theta.is_nan() || self.theta.abs() > 1.0 {
            return Err(Error::param(
                "theta",
                format!("must satisfy |theta| <= 1, got {}", self.theta),
            ));
        }
        Ok(())
    }
}

/// Dressed-branch rates and the mixing amplitudes of the excited levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub q: f64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub a: f64,
    pub b: f64,
}

impl DerivedParams {
    pub fn rate(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.gamma_plus,
            Branch::Minus => self.gamma_minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

pub fn derive_params(p: &ChannelParams) -> Result<DerivedParams> {
    p.validate()?;
    let ChannelParams {
        gamma1: g1,
        gamma2: g2,
        theta,
        ..
    } = *p;
    let cross = (g1 * g2).sqrt() * theta;
    let q = ((g1 - g2).powi(2) + 4.0 * cross * cross).sqrt();
    let (a, b) = if q < DEGENERATE_Q {
        // G₊ = G₋ here, so any A² + B² = 1 gives the same channel.
        (
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        )
    } else {
        (
            ((q + g1 - g2) / (2.0 * q)).max(0.0).sqrt(),
            ((q - g1 + g2) / (2.0 * q)).max(0.0).sqrt(),
        )
    };
    Ok(DerivedParams {
        q,
        gamma_plus: (g1 + g2 + q) / 2.0,
        gamma_minus: (g1 + g2 - q) / 2.0,
        a,
        b,
    })
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

/// Closed-form decoherence amplitude for a branch of decay rate `rate`:
/// `G(t) = e^{−λt/2}[cosh(dt/2) + (λ/d)sinh(dt/2)]`, `d = √(λ² − 2λ·rate)`.
///
/// `d` is taken complex, so the oscillatory regime `λ < 2·rate` needs no
/// separate branch.
pub fn decoherence_amplitude(lambda: f64, rate: f64, t: f64) -> f64 {
    let d = Complex64::new(lambda * lambda - 2.0 * lambda * rate, 0.0).sqrt();
    if d.norm() < DEGENERATE_D * lambda {
        return (-lambda * t / 2.0).exp() * (1.0 + lambda * t / 2.0);
    }
    let z = d * (t / 2.0);
    let g = if z.re < 20.0 {
        (z.cosh() + z.sinh() * lambda / d) * (-lambda * t / 2.0).exp()
    } else {
        // e^{−λt/2}cosh(z) overflows in the intermediate; use the two modes.
        let fast = (1.0 - lambda / d) * ((-d - lambda) * (t / 2.0)).exp();
        let slow = (1.0 + lambda / d) * ((d - lambda) * (t / 2.0)).exp();
        (slow + fast) * 0.5
    };
    assert!(
        g.im.abs() <= 1e-12,
        "decoherence amplitude has imaginary part {}",
        g.im
    );
    g.re
}

/// `G±(t)` for the given branch.
pub fn g_factor(p: &ChannelParams, branch: Branch, t: f64) -> Result<f64> {
    check_time(t)?;
    let dp = derive_params(p)?;
    Ok(decoherence_amplitude(p.lambda, dp.rate(branch), t))
}

/// Integrates `G'' + λG' + (λ·rate/2)G = 0`, `G(0) = 1`, `G'(0) = 0` with
/// classical RK4. Independent of [`decoherence_amplitude`].
pub fn decoherence_amplitude_ode(lambda: f64, rate: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    let h_max = (0.01 / lambda).min(0.01 / rate).min(t / 1000.0);
    let steps = (t / h_max).ceil() as usize;
    let h = t / steps as f64;
    let k = lambda * rate / 2.0;
    let deriv = |g: f64, v: f64| (v, -lambda * v - k * g);

    let (mut g, mut v) = (1.0, 0.0);
    for _ in 0..steps {
        let (k1g, k1v) = deriv(g, v);
        let (k2g, k2v) = deriv(g + 0.5 * h * k1g, v + 0.5 * h * k1v);
        let (k3g, k3v) = deriv(g + 0.5 * h * k2g, v + 0.5 * h * k2v);
        let (k4g, k4v) = deriv(g + h * k3g, v + h * k3v);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    g
}

/// ODE oracle for [`g_factor`].
pub fn g_factor_ode(p: &ChannelParams, branch: Branch, t: f64) -> Result<f64> {
    check_time(t)?;
    let dp = derive_params(p)?;
    Ok(decoherence_amplitude_ode(p.lambda, dp.rate(branch), t))
}

/// Ordering of the single-qutrit basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisConvention {
    /// (excited |1⟩, excited |2⟩, ground), the layout of the Kraus matrices.
    #[default]
    KrausOrder,
    /// (ground, excited |1⟩, excited |2⟩).
    GroundFirst,
}

impl BasisConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisConvention::KrausOrder => "kraus-order",
            BasisConvention::GroundFirst => "ground-first",
        }
    }
}

impl fmt::Display for BasisConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kraus-order" => Ok(BasisConvention::KrausOrder),
            "ground-first" => Ok(BasisConvention::GroundFirst),
            other => Err(Error::param(
                "basis",
                format!("expected `kraus-order` or `ground-first`, got `{other}`"),
            )),
        }
    }
}

/// The three Kraus operators of the channel at time `t`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub k1: ComplexMatrix,
    pub k2: ComplexMatrix,
    pub k3: ComplexMatrix,
    pub t: f64,
    pub g_plus: f64,
    pub g_minus: f64,
}

impl KrausSet {
    pub fn operators(&self) -> [&ComplexMatrix; 3] {
        [&self.k1, &self.k2, &self.k3]
    }

    /// `max |Σ Kᵢ†Kᵢ − I|`
    pub fn completeness_error(&self) -> f64 {
        let sum = self
            .operators()
            .iter()
            .map(|k| &k.adjoint() * k)
            .fold(ComplexMatrix::zeros(3), |acc, m| &acc + &m);
        sum.max_abs_diff(&ComplexMatrix::identity(3))
    }

    /// Re-expresses the operators in another basis ordering.
    pub fn in_basis(&self, basis: BasisConvention) -> KrausSet {
        match basis {
            BasisConvention::KrausOrder => self.clone(),
            BasisConvention::GroundFirst => {
                // old index -> new index: e1 0->1, e2 1->2, ground 2->0
                let mut p = ComplexMatrix::zeros(3);
                for (old, new) in [(0, 1), (1, 2), (2, 0)] {
                    p[(new, old)] = Complex64::new(1.0, 0.0);
                }
                KrausSet {
                    k1: p.sandwich(&self.k1),
                    k2: p.sandwich(&self.k2),
                    k3: p.sandwich(&self.k3),
                    ..self.clone()
                }
            }
        }
    }
}

pub fn kraus_set(p: &ChannelParams, t: f64) -> Result<KrausSet> {
    check_time(t)?;
    let dp = derive_params(p)?;
    let gp = decoherence_amplitude(p.lambda, dp.gamma_plus, t);
    let gm = decoherence_amplitude(p.lambda, dp.gamma_minus, t);
    let (a, b) = (dp.a, dp.b);

    let off = (gm - gp) * a * b;
    let k1 = ComplexMatrix::from_real_rows([
        [gp * a * a + gm * b * b, off, 0.0],
        [off, gp * b * b + gm * a * a, 0.0],
        [0.0, 0.0, 1.0],
    ]);
    let sp = (1.0 - gp * gp).max(0.0).sqrt();
    let sm = (1.0 - gm * gm).max(0.0).sqrt();
    let k2 =
        ComplexMatrix::from_real_rows([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [sp * a, -sp * b, 0.0]]);
    let k3 =
        ComplexMatrix::from_real_rows([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [sm * b, sm * a, 0.0]]);
    Ok(KrausSet {
        k1,
        k2,
        k3,
        t,
        g_plus: gp,
        g_minus: gm,
    })
}

/// `Σᵢ Kᵢ ρ Kᵢ†` on a single qutrit.
pub fn apply_channel(rho: &ComplexMatrix, ks: &KrausSet) -> Result<ComplexMatrix> {
    rho.expect_dim(3)?;
    check_density_matrix(rho)?;
    Ok(apply_kraus(rho, &ks.operators()))
}

/// `Σᵢⱼ (Kᵢ⊗Kⱼ) ρ (Kᵢ⊗Kⱼ)†`: both qutrits damped by independent, identical
/// reservoirs.
pub fn apply_product_channel(rho_ab: &ComplexMatrix, ks: &KrausSet) -> Result<ComplexMatrix> {
    rho_ab.expect_dim(9)?;
    check_density_matrix(rho_ab)?;
    let ops = ks.operators();
    let pairs: Vec<ComplexMatrix> = ops
        .iter()
        .flat_map(|ka| ops.iter().map(move |kb| kron(ka, kb)))
        .collect();
    let refs: Vec<&ComplexMatrix> = pairs.iter().collect();
    Ok(apply_kraus(rho_ab, &refs))
}

fn apply_kraus(rho: &ComplexMatrix, ops: &[&ComplexMatrix]) -> ComplexMatrix {
    let out = ops
        .iter()
        .filter(|k| k.max_abs() > 0.0)
        .map(|k| k.sandwich(rho))
        .fold(ComplexMatrix::zeros(rho.dim()), |acc, m| &acc + &m);
    out.hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_channel_params, random_density};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn derive_params_examples() {
        let sgi = derive_params(&ChannelParams::symmetric(1.0, 0.001)).unwrap();
        assert!(close(sgi.q, 2.0, 1e-15));
        assert!(close(sgi.gamma_plus, 2.0, 1e-15));
        assert!(close(sgi.gamma_minus, 0.0, 1e-15));
        assert!(close(sgi.a, 0.5f64.sqrt(), 1e-15) && close(sgi.b, 0.5f64.sqrt(), 1e-15));

        let free = derive_params(&ChannelParams::symmetric(0.0, 0.001)).unwrap();
        assert_eq!(free.q, 0.0);
        assert_eq!((free.gamma_plus, free.gamma_minus), (1.0, 1.0));
        assert_eq!((free.a, free.b), (0.5f64.sqrt(), 0.5f64.sqrt()));

        let p = ChannelParams {
            gamma1: 2.0,
            gamma2: 1.0,
            theta: 0.5,
            lambda: 1.0,
        };
        let d = derive_params(&p).unwrap();
        let s3 = 3f64.sqrt();
        assert!(close(d.q, s3, 1e-15));
        assert!(close(d.gamma_plus, 2.3660254037844384, 1e-15));
        assert!(close(d.gamma_minus, 0.6339745962155614, 1e-15));
        assert!(close(d.a * d.a, (s3 + 1.0) / (2.0 * s3), 1e-15));
        assert!(close(d.a * d.a + d.b * d.b, 1.0, 1e-12));
        assert!(close(d.gamma_plus + d.gamma_minus, 3.0, 1e-12));
    }

    #[test]
    fn invalid_params_rejected() {
        let base = ChannelParams::symmetric(0.0, 1.0);
        for (bad, field) in [
            (
                ChannelParams {
                    gamma1: 0.0,
                    ..base
                },
                "gamma1",
            ),
            (
                ChannelParams {
                    gamma2: -1.0,
                    ..base
                },
                "gamma2",
            ),
            (
                ChannelParams {
                    lambda: 0.0,
                    ..base
                },
                "lambda",
            ),
            (ChannelParams { theta: 1.5, ..base }, "theta"),
            (
                ChannelParams {
                    theta: f64::NAN,
                    ..base
                },
                "theta",
            ),
        ] {
            match derive_params(&bad) {
                Err(Error::InvalidParameter { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected rejection of {field}, got {other:?}"),
            }
        }
    }

    #[test]
    fn negative_time_rejected() {
        let p = ChannelParams::symmetric(0.0, 1.0);
        assert!(matches!(
            g_factor(&p, Branch::Plus, -1.0),
            Err(Error::NegativeTime(_))
        ));
        assert!(matches!(
            g_factor_ode(&p, Branch::Plus, -1.0),
            Err(Error::NegativeTime(_))
        ));
        assert!(kraus_set(&p, -0.5).is_err());
    }

    #[test]
    fn g_factor_at_zero_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = random_channel_params(&mut rng);
            for branch in [Branch::Plus, Branch::Minus] {
                assert_eq!(g_factor(&p, branch, 0.0).unwrap(), 1.0);
                assert_eq!(g_factor_ode(&p, branch, 0.0).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn decoherence_free_branch_with_full_sgi() {
        for lambda in [0.001, 1.0, 1000.0] {
            let p = ChannelParams::symmetric(1.0, lambda);
            for t in [0.0, 1.0, 70.0, 600.0] {
                assert!(close(g_factor(&p, Branch::Minus, t).unwrap(), 1.0, 1e-12));
            }
        }
    }

    #[test]
    fn closed_form_matches_ode_in_oscillatory_regime() {
        let p = ChannelParams::symmetric(0.0, 0.001);
        let closed = g_factor(&p, Branch::Plus, 70.2).unwrap();
        let ode = g_factor_ode(&p, Branch::Plus, 70.2).unwrap();
        assert!(close(closed, ode, 1e-8), "{closed} vs {ode}");
    }

    #[test]
    fn degenerate_d_uses_limit() {
        // λ = 2·rate makes d vanish exactly.
        let g = decoherence_amplitude(2.0, 1.0, 1.5);
        let limit = (-1.5f64).exp() * (1.0 + 1.5);
        assert_eq!(g, limit);
        assert!(close(decoherence_amplitude_ode(2.0, 1.0, 1.5), limit, 1e-9));
    }

    #[test]
    fn no_overflow_for_wide_reservoir() {
        let g = decoherence_amplitude(1000.0, 1.0, 600.0);
        assert!(g.is_finite() && (0.0..1e-100).contains(&g));
    }

    #[test]
    fn kraus_identity_at_zero() {
        let ks = kraus_set(&ChannelParams::symmetric(0.3, 0.1), 0.0).unwrap();
        assert!(ks.k1.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert_eq!(ks.k2.max_abs(), 0.0);
        assert_eq!(ks.k3.max_abs(), 0.0);
    }

    #[test]
    fn symmetric_no_sgi_kraus_is_diagonal() {
        let ks = kraus_set(&ChannelParams::symmetric(0.0, 0.001), 37.0).unwrap();
        assert_eq!(ks.k1[(0, 1)].norm(), 0.0);
        assert_eq!(ks.k1[(1, 0)].norm(), 0.0);
        assert_eq!(ks.g_plus, ks.g_minus);
        assert!(close(ks.k1[(0, 0)].re, ks.g_plus, 1e-15));
        assert!(close(ks.k1[(1, 1)].re, ks.g_plus, 1e-15));
    }

    #[test]
    fn degenerate_mixing_choice_does_not_change_channel() {
        // With G₊ = G₋ the channel is the same for any unit (A, B).
        let p = ChannelParams::symmetric(0.0, 0.01);
        let ks = kraus_set(&p, 50.0).unwrap();
        let g = ks.g_plus;
        let s = (1.0 - g * g).sqrt();
        let (a, b) = (0.6, 0.8);
        let alt = [
            ComplexMatrix::from_real_rows([[g, 0.0, 0.0], [0.0, g, 0.0], [0.0, 0.0, 1.0]]),
            ComplexMatrix::from_real_rows([[0.0; 3], [0.0; 3], [s * a, -s * b, 0.0]]),
            ComplexMatrix::from_real_rows([[0.0; 3], [0.0; 3], [s * b, s * a, 0.0]]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let rho = random_density(&mut rng, 3);
            let ours = apply_channel(&rho, &ks).unwrap();
            let theirs = apply_kraus(&rho, &[&alt[0], &alt[1], &alt[2]]);
            assert!(ours.max_abs_diff(&theirs) < 1e-14);
        }
    }

    #[test]
    fn ground_state_is_fixed() {
        let ground = ComplexMatrix::unit(3, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let p = random_channel_params(&mut rng);
            let ks = kraus_set(&p, 13.7).unwrap();
            let out = apply_channel(&ground, &ks).unwrap();
            assert!(out.max_abs_diff(&ground) < 1e-15);
        }
    }

    #[test]
    fn excited_population_decays_as_g_squared() {
        let p = ChannelParams::symmetric(0.0, 0.001);
        let ks = kraus_set(&p, 140.0).unwrap();
        let out = apply_channel(&ComplexMatrix::unit(3, 0, 0), &ks).unwrap();
        let g = g_factor_ode(&p, Branch::Plus, 140.0).unwrap();
        assert!(close(out[(0, 0)].re, g * g, 1e-8));
        assert!(close(out[(2, 2)].re, 1.0 - g * g, 1e-8));
    }

    #[test]
    fn channel_rejects_invalid_state() {
        let ks = kraus_set(&ChannelParams::symmetric(0.0, 1.0), 1.0).unwrap();
        let bad = ComplexMatrix::from_diag(&[1.5, -0.5, 0.0]);
        assert!(matches!(
            apply_channel(&bad, &ks),
            Err(Error::InvalidState(_))
        ));
        let wrong_dim = ComplexMatrix::identity(9).scale_real(1.0 / 9.0);
        assert!(apply_channel(&wrong_dim, &ks).is_err());
        assert!(apply_product_channel(&ComplexMatrix::identity(3), &ks).is_err());
    }

    #[test]
    fn product_channel_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let p = ChannelParams {
            gamma1: 1.3,
            gamma2: 0.7,
            theta: -0.4,
            lambda: 0.05,
        };
        let ks = kraus_set(&p, 12.0).unwrap();
        let rho = random_density(&mut rng, 3);
        let sigma = random_density(&mut rng, 3);
        let joint = apply_product_channel(&kron(&rho, &sigma), &ks).unwrap();
        let separate = kron(
            &apply_channel(&rho, &ks).unwrap(),
            &apply_channel(&sigma, &ks).unwrap(),
        );
        assert!(joint.max_abs_diff(&separate) < 1e-14);

        let at_zero = kraus_set(&p, 0.0).unwrap();
        let input = kron(&rho, &sigma);
        assert!(
            apply_product_channel(&input, &at_zero)
                .unwrap()
                .max_abs_diff(&input)
                < 1e-15
        );
    }

    #[test]
    fn ground_first_basis_moves_ground_to_index_zero() {
        let ks = kraus_set(&ChannelParams::symmetric(0.5, 0.2), 3.0)
            .unwrap()
            .in_basis(BasisConvention::GroundFirst);
        let ground = ComplexMatrix::unit(3, 0, 0);
        let out = apply_kraus(&ground, &ks.operators());
        assert!(out.max_abs_diff(&ground) < 1e-15);
        assert!(ks.completeness_error() < 1e-12);
        assert_eq!(
            "ground-first".parse::<BasisConvention>().unwrap(),
            BasisConvention::GroundFirst
        );
        assert!("excited-first".parse::<BasisConvention>().is_err());
    }
}
