use std::fmt;

use crate::channel::{BasisConvention, ChannelParams};
use crate::error::{Error, Result};

use super::SweepConfig;

pub const PRESET_T_MAX: f64 = 600.0;
pub const PRESET_STEPS: usize = 4800;

pub const PRESET_NAMES: [&str; 12] = [
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b",
    "fig4c", "fig4d",
];

const PANEL_K: [f64; 4] = [0.0, 0.4, 0.6, 1.0];
const FIG4_LAMBDA: [f64; 4] = [1.0, 0.1, 0.01, 0.001];

/// How the reservoir width quoted for the θ-comparison figures is read.
///
/// `Inferred` uses λ = 0.001γ, the narrow-reservoir value under which the
/// printed oscillation period is reproduced. `Literal` uses λ = 1000γ as
/// printed in the figure captions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LambdaReading {
    #[default]
    Inferred,
    Literal,
}

impl LambdaReading {
    fn lambda(self) -> f64 {
        match self {
            LambdaReading::Inferred => 0.001,
            LambdaReading::Literal => 1000.0,
        }
    }
}

impl fmt::Display for LambdaReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaReading::Inferred => "inferred",
            LambdaReading::Literal => "literal",
        })
    }
}

/// Sweep configuration for a named figure panel.
///
/// `fig2*`/`fig3*` step k through {0, 0.4, 0.6, 1} without and with full
/// interference (θ = 0, 1); `fig4*` fix k = 1, θ = 0 and step
/// λ through {1, 0.1, 0.01, 0.001}.
pub fn figure_preset(name: &str, reading: LambdaReading) -> Result<SweepConfig> {
    let unknown = || Error::UnknownPreset {
        name: name.to_string(),
        valid: PRESET_NAMES.join(", "),
    };
    let rest = name.strip_prefix("fig").ok_or_else(unknown)?;
    let mut chars = rest.chars();
    let (figure, panel) = match (chars.next(), chars.next(), chars.next()) {
        (Some(f), Some(p), None) => (f, p),
        _ => return Err(unknown()),
    };
    let idx = match panel {
        'a' => 0,
        'b' => 1,
        'c' => 2,
        'd' => 3,
        _ => return Err(unknown()),
    };
    let (k, theta, lambda) = match figure {
        '2' => (PANEL_K[idx], 0.0, reading.lambda()),
        '3' => (PANEL_K[idx], 1.0, reading.lambda()),
        '4' => (1.0, 0.0, FIG4_LAMBDA[idx]),
        _ => return Err(unknown()),
    };
    Ok(SweepConfig {
        channel: ChannelParams::symmetric(theta, lambda),
        k,
        t_max: PRESET_T_MAX,
        steps: PRESET_STEPS,
        basis: BasisConvention::KrausOrder,
    })
}
