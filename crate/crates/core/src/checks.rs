//! Self-checks run by the `check` subcommand: channel complete positivity and
//! trace preservation, closed-form vs. ODE decoherence amplitudes, and the
//! memory-assisted uncertainty inequality on random evolved states.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{
    apply_channel, apply_product_channel, decoherence_amplitude, decoherence_amplitude_ode,
    kraus_set,
};
use crate::entropy::{eur_sample, MeasurementPair};
use crate::error::Result;
use crate::linalg::eigvals_hermitian;
use crate::random::{random_channel_params, random_density};
use crate::states::{isotropic_state, IsotropicStateSpec};

pub const COMPLETENESS_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-12;
pub const MIN_EIGENVALUE: f64 = -1e-10;
pub const ORACLE_TOL: f64 = 1e-8;
pub const BERTA_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {}: {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

/// Random (γ₁, γ₂, θ, λ, t) draws; checks Kraus completeness and that single-
/// and two-qutrit channel outputs are density matrices.
pub fn cptp_suite(draws: usize, seed: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_completeness: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    for _ in 0..draws {
        let p = random_channel_params(&mut rng);
        let t = rng.gen_range(0.0..600.0);
        let ks = kraus_set(&p, t)?;
        worst_completeness = worst_completeness.max(ks.completeness_error());

        let single = apply_channel(&random_density(&mut rng, 3), &ks)?;
        let joint = apply_product_channel(&random_density(&mut rng, 9), &ks)?;
        for out in [&single, &joint] {
            worst_trace = worst_trace.max((out.trace().re - 1.0).abs());
            let ev = eigvals_hermitian(out)?;
            min_eig = min_eig.min(*ev.last().expect("nonempty spectrum"));
        }
    }
    let passed = worst_completeness <= COMPLETENESS_TOL
        && worst_trace <= TRACE_TOL
        && min_eig >= MIN_EIGENVALUE;
    Ok(CheckReport {
        name: "cptp",
        passed,
        detail: format!(
            "{draws} draws, max completeness error {worst_completeness:.2e}, \
             max trace error {worst_trace:.2e}, min eigenvalue {min_eig:.2e}"
        ),
        elapsed: start.elapsed(),
    })
}

/// The 100 (λ, rate, t) triples used for the closed-form/ODE comparison.
///
/// Ten reservoir widths from 10⁻³ to 10³ against five branch rates, each at
/// two times scaled to the slowest relevant timescale. Both λ < 2·rate
/// (oscillatory) and λ > 2·rate (overdamped) occur, as does λ = 2·rate.
pub fn oracle_grid() -> Vec<(f64, f64, f64)> {
    let lambdas = [0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 10.0, 100.0, 1000.0];
    let rates = [0.25, 0.5, 1.0, 1.5, 2.0];
    let mut grid = Vec::with_capacity(100);
    for &lambda in &lambdas {
        for &rate in &rates {
            let tau = 1.0 / f64::min(rate, (lambda * rate).sqrt());
            for scale in [0.7, 2.3] {
                grid.push((lambda, rate, scale * tau));
            }
        }
    }
    grid
}

pub fn oracle_suite() -> CheckReport {
    let start = Instant::now();
    let grid = oracle_grid();
    let mut worst: f64 = 0.0;
    let mut oscillatory = 0;
    for &(lambda, rate, t) in &grid {
        if lambda < 2.0 * rate {
            oscillatory += 1;
        }
        let diff = (decoherence_amplitude(lambda, rate, t)
            - decoherence_amplitude_ode(lambda, rate, t))
        .abs();
        worst = worst.max(diff);
    }
    CheckReport {
        name: "oracle",
        passed: worst <= ORACLE_TOL,
        detail: format!(
            "{} points ({oscillatory} oscillatory), max |closed form - RK4| {worst:.2e}",
            grid.len()
        ),
        elapsed: start.elapsed(),
    }
}

/// `u_L ≥ u_b` on isotropic states evolved to random times under random
/// channels.
pub fn berta_suite(draws: usize, seed: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = MeasurementPair::spin1_xz();
    let mut worst_gap = f64::INFINITY;
    for _ in 0..draws {
        let p = random_channel_params(&mut rng);
        let k = rng.gen_range(0.0..=1.0);
        let t = rng.gen_range(0.0..600.0);
        let rho = apply_product_channel(
            &isotropic_state(IsotropicStateSpec { k })?,
            &kraus_set(&p, t)?,
        )?;
        let s = eur_sample(&rho, &pair)?;
        worst_gap = worst_gap.min(s.u_l - s.u_b);
    }
    Ok(CheckReport {
        name: "berta",
        passed: worst_gap >= -BERTA_TOL,
        detail: format!("{draws} evolved states, min u_l - u_b {worst_gap:.3e}"),
        elapsed: start.elapsed(),
    })
}

pub fn run_all(seed: u64) -> Result<Vec<CheckReport>> {
    Ok(vec![
        cptp_suite(1000, seed)?,
        oracle_suite(),
        berta_suite(1000, seed.wrapping_add(1))?,
    ])
}
