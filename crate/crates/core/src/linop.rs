//! Linearised fluctuation operator around a stationary structure.
//!
//! Writing the positive-P field as the classical structure plus fluctuations
//! a = (a1, a1+)^T, the drift Jacobian acting on a is
//!
//!   L = [ -1 + i L1      alpha0     ]        L1 = d2/dx2 - delta1 + 2 sigma F^2
//!       [ conj(alpha0)   -1 - i L1  ]
//!
//! with alpha0 = mu + i sigma e^{2 i sigma theta} F^2 the eliminated pump over
//! the structure. The F^2 term in L1 comes from differentiating the cubic
//! nonlinearity; it is what makes the translation mode an exact null vector.
//! The adjoint with respect to <b|c> = dx sum b^dag c swaps the sign of the
//! diagonal i L1 blocks and is assembled (and cross-checked) independently.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::ds::{pump_phase_factor, DsSolution};
use crate::error::{Error, Result};
use crate::field::{ComplexField, FluctuationField};

/// Dense discretisation of the fluctuation operator and its adjoint.
pub struct LinearOperator {
    pub matrix: Array2<Complex64>,
    pub adjoint: Array2<Complex64>,
    pub background: DsSolution,
    /// Eliminated pump over the structure, alpha0 = mu + i sigma e^{2 i sigma theta} F^2.
    pub alpha0_bar: ComplexField,
}

impl LinearOperator {
    pub fn n(&self) -> usize {
        self.background.grid().n()
    }
}

/// Apply the operator (or its adjoint) directly through FFTs, without the
/// dense matrix. `adjoint` flips the sign of the i L1 diagonal blocks.
pub fn apply_operator(
    ds: &DsSolution,
    alpha0: &Array1<Complex64>,
    field: &FluctuationField,
    adjoint: bool,
) -> FluctuationField {
    let grid = ds.grid().clone();
    let sigma = ds.params.sigma.value();
    let delta1 = ds.params.delta1;
    let n = grid.n();
    let sign = if adjoint { -1.0 } else { 1.0 };

    let mut lap1 = field.component1.values.clone();
    grid.laplacian(lap1.as_slice_mut().expect("contiguous"));
    let mut lap2 = field.component2.values.clone();
    grid.laplacian(lap2.as_slice_mut().expect("contiguous"));

    let mut out1 = Array1::<Complex64>::default(n);
    let mut out2 = Array1::<Complex64>::default(n);
    for j in 0..n {
        let f_sq = ds.profile.values[j] * ds.profile.values[j];
        let l1_a1 = lap1[j] + (2.0 * sigma * f_sq - delta1) * field.component1.values[j];
        let l1_a2 = lap2[j] + (2.0 * sigma * f_sq - delta1) * field.component2.values[j];
        let i_sign = Complex64::new(0.0, sign);
        out1[j] = -field.component1.values[j] + i_sign * l1_a1 + alpha0[j] * field.component2.values[j];
        out2[j] = -field.component2.values[j] - i_sign * l1_a2 + alpha0[j].conj() * field.component1.values[j];
    }
    FluctuationField {
        component1: ComplexField {
            values: out1,
            grid: grid.clone(),
        },
        component2: ComplexField {
            values: out2,
            grid,
        },
    }
}

/// Eliminated pump field over the structure.
pub fn alpha0_bar(ds: &DsSolution) -> Result<ComplexField> {
    let e2 = pump_phase_factor(&ds.params)?;
    let sigma = ds.params.sigma.value();
    let mu = ds.params.mu;
    let values = ds
        .profile
        .values
        .mapv(|f| Complex64::new(mu, 0.0) + Complex64::new(0.0, sigma) * e2 * f * f);
    Ok(ComplexField {
        values,
        grid: ds.grid().clone(),
    })
}

/// Assemble the dense 2N x 2N matrices for L and its adjoint column by
/// column, applying the operator to collocation basis vectors, and verify
/// the adjoint against the structural relation adjoint = matrix^H.
pub fn build_operator(ds: &DsSolution) -> Result<LinearOperator> {
    let residual = ds.residual();
    if residual > 1e-8 && !ds.trivial {
        return Err(Error::InternalConsistency(format!(
            "background residual {residual:.3e} exceeds 1e-8"
        )));
    }
    let grid = ds.grid().clone();
    let n = grid.n();
    let alpha0 = alpha0_bar(ds)?;
    let mut matrix = Array2::<Complex64>::default((2 * n, 2 * n));
    let mut adjoint = Array2::<Complex64>::default((2 * n, 2 * n));
    let mut basis = FluctuationField::new(
        ComplexField::zeros(grid.clone()),
        ComplexField::zeros(grid.clone()),
    )?;
    for col in 0..2 * n {
        basis.component1.values.fill(Complex64::default());
        basis.component2.values.fill(Complex64::default());
        if col < n {
            basis.component1.values[col] = Complex64::new(1.0, 0.0);
        } else {
            basis.component2.values[col - n] = Complex64::new(1.0, 0.0);
        }
        let fwd = apply_operator(ds, &alpha0.values, &basis, false);
        let adj = apply_operator(ds, &alpha0.values, &basis, true);
        for row in 0..n {
            matrix[[row, col]] = fwd.component1.values[row];
            matrix[[row + n, col]] = fwd.component2.values[row];
            adjoint[[row, col]] = adj.component1.values[row];
            adjoint[[row + n, col]] = adj.component2.values[row];
        }
    }
    // structural check: the discrete adjoint must equal the conjugate transpose
    let mut dev = 0.0f64;
    for i in 0..2 * n {
        for j in 0..2 * n {
            dev = dev.max((adjoint[[i, j]] - matrix[[j, i]].conj()).norm());
        }
    }
    if dev > 1e-10 {
        return Err(Error::InternalConsistency(format!(
            "adjoint assembly deviates from matrix^H by {dev:.3e}"
        )));
    }
    Ok(LinearOperator {
        matrix,
        adjoint,
        background: ds.clone(),
        alpha0_bar: alpha0,
    })
}

/// Goldstone vector G_x = (e^{i sigma theta} dF/dx, conj) of the structure.
pub fn goldstone_mode(ds: &DsSolution) -> Result<FluctuationField> {
    let phase = Complex64::from_polar(1.0, ds.params.sigma.value() * ds.theta);
    let deriv = ds.profile.to_complex().derivative();
    let scalar = ComplexField {
        values: deriv.values.mapv(|v| phase * v),
        grid: ds.grid().clone(),
    };
    Ok(FluctuationField::conjugate_pair(&scalar))
}

/// The adjoint eigenvector w2 = (i G_x, conj(i G_x)) at eigenvalue -2.
pub fn w2_mode(ds: &DsSolution) -> Result<FluctuationField> {
    let g = goldstone_mode(ds)?;
    let scalar = ComplexField {
        values: g.component1.values.mapv(|v| Complex64::new(0.0, 1.0) * v),
        grid: ds.grid().clone(),
    };
    Ok(FluctuationField::conjugate_pair(&scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::{bright_soliton, homogeneous_solution};
    use crate::field::inner_product;
    use crate::grid::Grid1D;
    use crate::params::{ReducedParams, Sign};

    fn fig1() -> DsSolution {
        let p = ReducedParams::nondimensional(Sign::Plus, 1.2, 1.0, 1.0e3).unwrap();
        bright_soliton(&p, Grid1D::default_grid()).unwrap()
    }

    #[test]
    fn goldstone_is_null_vector() {
        let ds = fig1();
        let alpha0 = alpha0_bar(&ds).unwrap();
        let g = goldstone_mode(&ds).unwrap();
        let lg = apply_operator(&ds, &alpha0.values, &g, false);
        let ratio = lg.norm() / g.norm();
        assert!(ratio < 1e-8, "|LG|/|G| = {ratio:.3e}");
    }

    #[test]
    fn w2_is_adjoint_eigenvector_at_minus_two() {
        let ds = fig1();
        let alpha0 = alpha0_bar(&ds).unwrap();
        let w2 = w2_mode(&ds).unwrap();
        let lw = apply_operator(&ds, &alpha0.values, &w2, true);
        // || L^dag w2 + 2 w2 || / ||w2||
        let mut dev = 0.0f64;
        let mut nrm = 0.0f64;
        for (a, b) in lw
            .component1
            .values
            .iter()
            .chain(lw.component2.values.iter())
            .zip(w2.component1.values.iter().chain(w2.component2.values.iter()))
        {
            dev += (a + 2.0 * b).norm_sqr();
            nrm += b.norm_sqr();
        }
        let ratio = (dev / nrm).sqrt();
        assert!(ratio < 1e-8, "residual ratio {ratio:.3e}");
    }

    #[test]
    fn dense_matrix_agrees_with_direct_application() {
        let p = ReducedParams::nondimensional(Sign::Plus, 1.2, 1.0, 1.0e3).unwrap();
        let ds = bright_soliton(&p, Grid1D::new(128, 40.0).unwrap()).unwrap();
        let op = build_operator(&ds).unwrap();
        let grid = ds.grid().clone();
        // a smooth two-component test field
        let f = FluctuationField::new(
            ComplexField::from_fn(grid.clone(), |x| {
                Complex64::new((-0.3 * x * x).exp(), 0.2 * (0.7 * x).sin())
            }),
            ComplexField::from_fn(grid.clone(), |x| {
                Complex64::new(0.5 * (0.4 * x).cos(), (-0.2 * x * x).exp())
            }),
        )
        .unwrap();
        let direct = apply_operator(&ds, &op.alpha0_bar.values, &f, false);
        let stacked = op.matrix.dot(&f.to_stacked());
        let via_matrix = FluctuationField::from_stacked(&stacked.view(), grid).unwrap();
        let mut dev = 0.0f64;
        for (a, b) in direct
            .component1
            .values
            .iter()
            .chain(direct.component2.values.iter())
            .zip(
                via_matrix
                    .component1
                    .values
                    .iter()
                    .chain(via_matrix.component2.values.iter()),
            )
        {
            dev = dev.max((a - b).norm());
        }
        assert!(dev < 1e-10, "max deviation {dev:.3e}");
    }

    #[test]
    fn adjoint_consistent_with_inner_product() {
        // <w | L c> = <L^dag w | c> for random-ish smooth fields
        let p = ReducedParams::nondimensional(Sign::Plus, 1.2, 1.0, 1.0e3).unwrap();
        let ds = bright_soliton(&p, Grid1D::new(128, 40.0).unwrap()).unwrap();
        let alpha0 = alpha0_bar(&ds).unwrap();
        let grid = ds.grid().clone();
        let w = FluctuationField::new(
            ComplexField::from_fn(grid.clone(), |x| Complex64::new((0.5 * x).sin(), (0.3 * x).cos())),
            ComplexField::from_fn(grid.clone(), |x| Complex64::new((-0.1 * x * x).exp(), 0.1 * x.sin())),
        )
        .unwrap();
        let c = FluctuationField::new(
            ComplexField::from_fn(grid.clone(), |x| Complex64::new((0.2 * x).cos(), -0.4 * (0.9 * x).sin())),
            ComplexField::from_fn(grid, |x| Complex64::new(0.3 * (0.6 * x).sin(), (-0.2 * x * x).exp())),
        )
        .unwrap();
        let lc = apply_operator(&ds, &alpha0.values, &c, false);
        let ldw = apply_operator(&ds, &alpha0.values, &w, true);
        let lhs = inner_product(&w, &lc).unwrap();
        let rhs = inner_product(&ldw, &c).unwrap();
        assert!(
            (lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()),
            "{lhs} vs {rhs}"
        );
    }

    #[test]
    fn goldstone_vanishes_on_homogeneous_background() {
        let p = ReducedParams::nondimensional(Sign::Plus, 1.2, 1.0, 1.0e3).unwrap();
        let ds = homogeneous_solution(&p, Grid1D::new(128, 40.0).unwrap(), true).unwrap();
        let g = goldstone_mode(&ds).unwrap();
        assert!(g.norm() < 1e-10);
    }
}
