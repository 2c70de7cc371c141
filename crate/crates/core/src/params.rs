//! Cavity parameters and their reduction to the three numbers that matter.
//!
//! At large pump detuning the pump mode follows the signal adiabatically and
//! the whole device collapses to the parameter set {sigma, mu, delta1} plus
//! two scale factors: kappa (inverse noise strength) and the rate/length
//! units gamma1, l1. All numerics downstream run in units gamma1 = l1 = 1.

use crate::error::{Error, Result};

/// Sign of the pump detuning, sigma = sign(Delta0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if v > 0.0 {
            Ok(Sign::Plus)
        } else if v < 0.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::InvalidParameter("sign of zero is undefined".into()))
        }
    }
}

/// Full two-mode cavity constants before adiabatic elimination of the pump.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    /// Pump-mode damping rate (1/time).
    pub gamma0: f64,
    /// Signal-mode damping rate (1/time).
    pub gamma1: f64,
    /// Dimensionless pump detuning.
    pub delta0: f64,
    /// Dimensionless signal detuning.
    pub delta1: f64,
    /// Nonlinear coupling coefficient.
    pub g: f64,
    /// Magnitude of the driving field |E_in|.
    pub pump_amplitude: f64,
    /// Diffraction length (space).
    pub l1: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma0 > 0.0) {
            return Err(Error::InvalidParameter(format!("gamma0 = {}", self.gamma0)));
        }
        if !(self.gamma1 > 0.0) {
            return Err(Error::InvalidParameter(format!("gamma1 = {}", self.gamma1)));
        }
        if !(self.g > 0.0) {
            return Err(Error::InvalidParameter(format!("g = {}", self.g)));
        }
        if self.delta0 == 0.0 || !self.delta0.is_finite() {
            return Err(Error::InvalidParameter(format!("delta0 = {}", self.delta0)));
        }
        if !(self.pump_amplitude >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pump_amplitude = {}",
                self.pump_amplitude
            )));
        }
        if !(self.l1 > 0.0) {
            return Err(Error::InvalidParameter(format!("l1 = {}", self.l1)));
        }
        Ok(())
    }
}

/// Reduced parameter set after pump elimination.
#[derive(Debug, Clone, Copy)]
pub struct ReducedParams {
    pub sigma: Sign,
    /// Dimensionless pump parameter, >= 0.
    pub mu: f64,
    /// Signal detuning.
    pub delta1: f64,
    /// Field scale kappa; noise terms carry 1/kappa.
    pub kappa: f64,
    /// Signal damping rate; 1 in internal units.
    pub gamma1: f64,
    /// Diffraction length; 1 in internal units.
    pub l1: f64,
}

pub const DEFAULT_REGIME_THRESHOLD: f64 = 10.0;

impl ReducedParams {
    /// Parameters directly in internal units (gamma1 = l1 = 1).
    pub fn nondimensional(sigma: Sign, mu: f64, delta1: f64, kappa: f64) -> Result<Self> {
        if !(mu >= 0.0) {
            return Err(Error::InvalidParameter(format!("mu = {mu}")));
        }
        if !(kappa > 0.0) {
            return Err(Error::InvalidParameter(format!("kappa = {kappa}")));
        }
        Ok(ReducedParams {
            sigma,
            mu,
            delta1,
            kappa,
            gamma1: 1.0,
            l1: 1.0,
        })
    }

    /// Same physics expressed in internal units, dropping the dimensional scales.
    pub fn nondimensionalized(&self) -> Self {
        ReducedParams {
            gamma1: 1.0,
            l1: 1.0,
            ..*self
        }
    }
}

/// Adiabatic pump elimination with the large-detuning regime check
/// gamma0 |delta0| >= threshold * max(gamma1 |delta1|, gamma0, gamma1).
pub fn reduce_parameters(full: &ModelParams, threshold: f64) -> Result<ReducedParams> {
    full.validate()?;
    let lhs = full.gamma0 * full.delta0.abs();
    let candidates = [
        (full.gamma1 * full.delta1.abs(), "gamma1*|delta1|"),
        (full.gamma0, "gamma0"),
        (full.gamma1, "gamma1"),
    ];
    let (limit, limiting) = candidates
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    if lhs < threshold * limit {
        return Err(Error::RegimeViolation {
            lhs,
            rhs: threshold * limit,
            threshold,
            limiting,
        });
    }
    let kappa = full.gamma1 * (2.0 * full.delta0.abs()).sqrt() / full.g;
    let mu = full.g * full.pump_amplitude / (full.gamma1.powi(2) * full.delta0.abs());
    Ok(ReducedParams {
        sigma: Sign::from_value(full.delta0)?,
        mu,
        delta1: full.delta1,
        kappa,
        gamma1: full.gamma1,
        l1: full.l1,
    })
}
