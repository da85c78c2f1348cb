use rayon::prelude::*;

use crate::channel::{apply_product_channel, kraus_set, BasisConvention, ChannelParams};
use crate::entropy::{eur_sample, MeasurementPair};
use crate::error::{Error, Result};
use crate::states::{isotropic_state, IsotropicStateSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub channel: ChannelParams,
    pub k: f64,
    pub t_max: f64,
    pub steps: usize,
    pub basis: BasisConvention,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        IsotropicStateSpec::new(self.k)?;
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::param(
                "t_max",
                format!("must be finite and > 0, got {}", self.t_max),
            ));
        }
        if self.steps < 2 {
            return Err(Error::param(
                "steps",
                format!("must be >= 2, got {}", self.steps),
            ));
        }
        Ok(())
    }

    /// Sample times `i·t_max/(steps−1)`, ending exactly at `t_max`.
    pub fn times(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.t_max
                } else {
                    i as f64 * self.t_max / last as f64
                }
            })
            .collect()
    }

    /// `key=value` pairs identifying the run.
    pub fn canonical_params(&self) -> String {
        let ChannelParams {
            gamma1,
            gamma2,
            theta,
            lambda,
        } = self.channel;
        format!(
            "gamma1={gamma1} gamma2={gamma2} theta={theta} lambda={lambda} k={} t_max={} steps={} basis={}",
            self.k, self.t_max, self.steps, self.basis
        )
    }
}

/// One time sample of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub t_gamma: f64,
    pub u_l: f64,
    pub u_b: f64,
    pub sxb: f64,
    pub szb: f64,
    pub negativity: f64,
    pub g_plus: f64,
    pub g_minus: f64,
}

/// Evolves the isotropic state under the product channel and evaluates the
/// relation at every grid time. Samples are computed in parallel and returned
/// in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let rho0 = isotropic_state(IsotropicStateSpec { k: cfg.k })?;
    let pair = MeasurementPair::spin1_xz();
    cfg.times()
        .into_par_iter()
        .map(|t| {
            let ks = kraus_set(&cfg.channel, t)?.in_basis(cfg.basis);
            let rho = apply_product_channel(&rho0, &ks)?;
            let s = eur_sample(&rho, &pair)?;
            Ok(SweepRecord {
                t_gamma: t,
                u_l: s.u_l,
                u_b: s.u_b,
                sxb: s.sxb,
                szb: s.szb,
                negativity: s.negativity,
                g_plus: ks.g_plus,
                g_minus: ks.g_minus,
            })
        })
        .collect()
}
