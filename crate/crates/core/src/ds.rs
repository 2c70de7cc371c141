//! Classical stationary dissipative structures of the reduced signal equation.
//!
//! Every stationary state has the form A1 = kappa e^{i sigma theta} F(x - r1)
//! with real F solving (sigma d2/dx2 - beta^2 + F^2) F = 0 in internal units.

use std::io::{BufRead, Write};
use std::sync::Arc;

use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::RealField;
use crate::grid::Grid1D;
use crate::params::{ReducedParams, Sign};

/// A stationary profile together with its phase and width parameters.
#[derive(Debug, Clone)]
pub struct DsSolution {
    /// Real envelope F on the grid.
    pub profile: RealField,
    /// Pump phase theta in [0, pi/2).
    pub theta: f64,
    /// beta^2 = sigma delta1 + sqrt(mu^2 - 1).
    pub beta_sq: f64,
    pub params: ReducedParams,
    /// Structure position r1 (intensity centroid).
    pub position: f64,
    /// Set when the solver landed on F = 0.
    pub trivial: bool,
}

/// beta^2 = sigma delta1 + sqrt(mu^2 - 1); requires mu >= 1.
pub fn beta_squared(p: &ReducedParams) -> Result<f64> {
    if p.mu < 1.0 {
        return Err(Error::BelowThreshold { mu: p.mu });
    }
    Ok(p.sigma.value() * p.delta1 + (p.mu * p.mu - 1.0).sqrt())
}

/// Pump phase from e^{2 i sigma theta} = (1 + i sigma sqrt(mu^2-1)) / mu.
pub fn pump_phase(p: &ReducedParams) -> Result<f64> {
    if p.mu < 1.0 {
        return Err(Error::BelowThreshold { mu: p.mu });
    }
    Ok(0.5 * (p.mu * p.mu - 1.0).sqrt().atan())
}

/// e^{2 i sigma theta}, unit modulus times mu^{-1}(1 + i sigma sqrt(mu^2-1)).
pub fn pump_phase_factor(p: &ReducedParams) -> Result<Complex64> {
    if p.mu < 1.0 {
        return Err(Error::BelowThreshold { mu: p.mu });
    }
    Ok(Complex64::new(1.0, p.sigma.value() * (p.mu * p.mu - 1.0).sqrt()) / p.mu)
}

impl DsSolution {
    /// Max-norm residual of (sigma d2 - beta^2 + F^2) F on the grid.
    pub fn residual(&self) -> f64 {
        stationarity_residual(&self.profile, self.params.sigma, self.beta_sq)
    }

    pub fn grid(&self) -> &Arc<Grid1D> {
        &self.profile.grid
    }

    /// Background with the profile translated by `shift`.
    pub fn translated(&self, shift: f64) -> DsSolution {
        let mut c = self.profile.to_complex();
        c = c.translated(shift);
        DsSolution {
            profile: RealField {
                values: c.values.mapv(|v| v.re),
                grid: self.profile.grid.clone(),
            },
            position: self.position + shift,
            ..self.clone()
        }
    }

    /// Complex classical envelope in f = A1/kappa units: e^{i sigma theta} F.
    pub fn envelope(&self) -> Array1<Complex64> {
        let phase = Complex64::from_polar(1.0, self.params.sigma.value() * self.theta);
        self.profile.values.mapv(|v| phase * v)
    }

    /// Write `x, F` rows preceded by a `# key=value` header record.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "# sigma={} mu={} delta1={} theta={:.17e} beta_sq={:.17e} residual={:.3e}",
            self.params.sigma.value(),
            self.params.mu,
            self.params.delta1,
            self.theta,
            self.beta_sq,
            self.residual()
        )?;
        writeln!(w, "x,F")?;
        for (x, f) in self.grid().x().iter().zip(self.profile.values.iter()) {
            writeln!(w, "{x:.17e},{f:.17e}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R, params: ReducedParams) -> Result<DsSolution> {
        let mut theta = None;
        let mut beta_sq = None;
        let mut xs = Vec::new();
        let mut fs = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line == "x,F" {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                for tok in header.split_whitespace() {
                    if let Some((key, val)) = tok.split_once('=') {
                        match key {
                            "theta" => theta = val.parse::<f64>().ok(),
                            "beta_sq" => beta_sq = val.parse::<f64>().ok(),
                            _ => {}
                        }
                    }
                }
                continue;
            }
            let mut cols = line.split(',');
            let x = cols.next().and_then(|s| s.parse::<f64>().ok());
            let f = cols.next().and_then(|s| s.parse::<f64>().ok());
            match (x, f) {
                (Some(x), Some(f)) => {
                    xs.push(x);
                    fs.push(f);
                }
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "unparseable profile row: {line}"
                    )))
                }
            }
        }
        let n = fs.len();
        if n < 2 {
            return Err(Error::InvalidParameter("profile file too short".into()));
        }
        let length = (xs[1] - xs[0]) * n as f64;
        let grid = Grid1D::new(n, length)?;
        let profile = RealField::new(Array1::from(fs), grid)?;
        let (theta, beta_sq) = match (theta, beta_sq) {
            (Some(t), Some(b)) => (t, b),
            _ => (pump_phase(&params)?, beta_squared(&params)?),
        };
        let position = intensity_centroid(&profile);
        Ok(DsSolution {
            profile,
            theta,
            beta_sq,
            params,
            position,
            trivial: false,
        })
    }
}

pub fn stationarity_residual(profile: &RealField, sigma: Sign, beta_sq: f64) -> f64 {
    let c = profile.to_complex();
    let lap = c.laplacian();
    profile
        .values
        .iter()
        .zip(lap.values.iter())
        .map(|(&f, l)| (sigma.value() * l.re - beta_sq * f + f.powi(3)).abs())
        .fold(0.0, f64::max)
}

/// Intensity centroid via the circular mean, well defined across the
/// periodic boundary. Returns a position in [-L/2, L/2).
pub fn intensity_centroid(profile: &RealField) -> f64 {
    let grid = &profile.grid;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut z = Complex64::default();
    for (&x, &f) in grid.x().iter().zip(profile.values.iter()) {
        z += Complex64::from_polar(f * f, two_pi * x / grid.length());
    }
    z.arg() * grid.length() / two_pi
}

/// Analytic 1D bright cavity soliton F = sqrt(2) beta sech(beta x), periodised
/// over the domain so the discrete profile is smooth across the boundary.
pub fn bright_soliton(p: &ReducedParams, grid: Arc<Grid1D>) -> Result<DsSolution> {
    if p.sigma != Sign::Plus {
        return Err(Error::UnsupportedBranch);
    }
    let beta_sq = beta_squared(p)?;
    if beta_sq <= 0.0 {
        return Err(Error::NoLocalizedSolution { beta_sq });
    }
    let beta = beta_sq.sqrt();
    let amp = std::f64::consts::SQRT_2 * beta;
    let length = grid.length();
    let profile = RealField::from_fn(grid, |x| {
        (-4..=4i32)
            .map(|m| amp / (beta * (x + m as f64 * length)).cosh())
            .sum()
    });
    Ok(DsSolution {
        profile,
        theta: pump_phase(p)?,
        beta_sq,
        params: *p,
        position: 0.0,
        trivial: false,
    })
}

/// Constant solutions: F = sqrt(beta^2) when beta^2 >= 0, otherwise only F = 0.
pub fn homogeneous_solution(p: &ReducedParams, grid: Arc<Grid1D>, nonzero: bool) -> Result<DsSolution> {
    let (beta_sq, theta) = if p.mu >= 1.0 {
        (beta_squared(p)?, pump_phase(p)?)
    } else if nonzero {
        return Err(Error::BelowThreshold { mu: p.mu });
    } else {
        (0.0, 0.0)
    };
    let value = if nonzero {
        if beta_sq < 0.0 {
            return Err(Error::NoLocalizedSolution { beta_sq });
        }
        beta_sq.sqrt()
    } else {
        0.0
    };
    Ok(DsSolution {
        profile: RealField::from_fn(grid, |_| value),
        theta,
        beta_sq,
        params: *p,
        position: 0.0,
        trivial: !nonzero,
    })
}

/// Newton iteration report.
#[derive(Debug, Clone, Copy)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual: f64,
}

pub struct NewtonOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Re-center the converged profile so the intensity centroid sits at x=0.
    pub recenter: bool,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 50,
            tolerance: 1e-11,
            recenter: true,
        }
    }
}

/// Newton solver for (sigma d2 - beta^2 + F^2) F = 0 with a dense
/// Fourier-collocation Jacobian. Translation invariance makes the Jacobian
/// singular along dF/dx at a solution, so the linear solve is bordered with
/// the constraint <dF/dx, delta> = 0 whenever the profile is non-constant.
pub fn newton_stationary(
    p: &ReducedParams,
    grid: Arc<Grid1D>,
    initial_guess: &RealField,
    opts: &NewtonOptions,
) -> Result<(DsSolution, NewtonReport)> {
    if p.mu < 1.0 {
        return Err(Error::BelowThreshold { mu: p.mu });
    }
    let beta_sq = beta_squared(p)?;
    let sigma = p.sigma.value();
    let n = grid.n();
    if initial_guess.values.len() != n {
        return Err(Error::GridMismatch(initial_guess.values.len(), n));
    }
    let d2 = grid.dense_operator_matrix(|k| -k * k);
    let mut f = initial_guess.values.clone();
    let mut last_residual = f64::INFINITY;
    for it in 0..=opts.max_iterations {
        let mut rhs = Array1::<f64>::zeros(n);
        {
            let mut lap = f.mapv(|v| Complex64::new(v, 0.0));
            grid.laplacian(lap.as_slice_mut().expect("contiguous"));
            for i in 0..n {
                rhs[i] = sigma * lap[i].re - beta_sq * f[i] + f[i].powi(3);
            }
        }
        last_residual = rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if last_residual < opts.tolerance {
            let mut profile = RealField::new(f, grid)?;
            let trivial = profile.values.iter().all(|v| v.abs() < 1e-8);
            let mut position = 0.0;
            if !trivial && opts.recenter {
                let centroid = intensity_centroid(&profile);
                let c = profile.to_complex().translated(-centroid);
                profile = RealField {
                    values: c.values.mapv(|v| v.re),
                    grid: profile.grid,
                };
            } else if !trivial {
                position = intensity_centroid(&profile);
            }
            return Ok((
                DsSolution {
                    profile,
                    theta: pump_phase(p)?,
                    beta_sq,
                    params: *p,
                    position,
                    trivial,
                },
                NewtonReport {
                    iterations: it,
                    residual: last_residual,
                },
            ));
        }
        if it == opts.max_iterations {
            break;
        }
        // translation tangent
        let mut tangent = f.mapv(|v| Complex64::new(v, 0.0));
        grid.derivative(tangent.as_slice_mut().expect("contiguous"));
        let tangent: Array1<f64> = tangent.mapv(|v| v.re);
        let tangent_norm = tangent.iter().map(|v| v * v).sum::<f64>().sqrt();

        let delta = if tangent_norm > 1e-8 {
            // bordered system [[J, t],[t^T, 0]]
            let mut a = Array2::<f64>::zeros((n + 1, n + 1));
            for i in 0..n {
                for j in 0..n {
                    a[[i, j]] = sigma * d2[[i, j]];
                }
                a[[i, i]] += -beta_sq + 3.0 * f[i] * f[i];
                a[[i, n]] = tangent[i];
                a[[n, i]] = tangent[i];
            }
            let mut b = Array1::<f64>::zeros(n + 1);
            for i in 0..n {
                b[i] = -rhs[i];
            }
            let sol = a.solve_into(b)?;
            sol.slice(ndarray::s![..n]).to_owned()
        } else {
            let mut a = Array2::<f64>::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    a[[i, j]] = sigma * d2[[i, j]];
                }
                a[[i, i]] += -beta_sq + 3.0 * f[i] * f[i];
            }
            a.solve_into(rhs.mapv(|v| -v))?
        };
        f = &f + &delta;
    }
    Err(Error::NewtonDidNotConverge {
        iterations: opts.max_iterations,
        residual: last_residual,
    })
}

/// Natural continuation in mu: step the pump from `from.params.mu` to
/// `target_mu`, re-solving with the previous profile as the guess.
pub fn continue_in_mu(
    from: &DsSolution,
    target_mu: f64,
    step: f64,
    opts: &NewtonOptions,
) -> Result<DsSolution> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("continuation step {step}")));
    }
    let mut current = from.clone();
    let mut mu = from.params.mu;
    while (mu - target_mu).abs() > 1e-12 {
        mu = if target_mu > mu {
            (mu + step).min(target_mu)
        } else {
            (mu - step).max(target_mu)
        };
        let p = ReducedParams {
            mu,
            ..from.params
        };
        let (next, _) = newton_stationary(&p, current.grid().clone(), &current.profile, opts)?;
        current = next;
    }
    Ok(current)
}
