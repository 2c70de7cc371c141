//! Field containers on the periodic grid.
//!
//! Two-component fluctuation fields are stored as two flat complex arrays,
//! never interleaved, so spectral transforms act per component.

use std::sync::Arc;

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Complex scalar field sampled on a [`Grid1D`].
#[derive(Debug, Clone)]
pub struct ComplexField {
    pub values: Array1<Complex64>,
    pub grid: Arc<Grid1D>,
}

impl ComplexField {
    pub fn new(values: Array1<Complex64>, grid: Arc<Grid1D>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::GridMismatch(values.len(), grid.n()));
        }
        Ok(ComplexField { values, grid })
    }

    pub fn zeros(grid: Arc<Grid1D>) -> Self {
        ComplexField {
            values: Array1::default(grid.n()),
            grid,
        }
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Arc<Grid1D>, f: F) -> Self {
        let values = grid.x().iter().map(|&x| f(x)).collect::<Array1<_>>();
        ComplexField { values, grid }
    }

    pub fn laplacian(&self) -> ComplexField {
        let mut out = self.clone();
        out.grid
            .laplacian(out.values.as_slice_mut().expect("contiguous"));
        out
    }

    pub fn derivative(&self) -> ComplexField {
        let mut out = self.clone();
        out.grid
            .derivative(out.values.as_slice_mut().expect("contiguous"));
        out
    }

    pub fn translated(&self, shift: f64) -> ComplexField {
        let mut out = self.clone();
        out.grid
            .translate(out.values.as_slice_mut().expect("contiguous"), shift);
        out
    }

    /// Discrete L2 norm, sqrt(dx * sum |f|^2).
    pub fn norm(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Real scalar field; imaginary content identically zero by construction.
#[derive(Debug, Clone)]
pub struct RealField {
    pub values: Array1<f64>,
    pub grid: Arc<Grid1D>,
}

impl RealField {
    pub fn new(values: Array1<f64>, grid: Arc<Grid1D>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::GridMismatch(values.len(), grid.n()));
        }
        Ok(RealField { values, grid })
    }

    pub fn zeros(grid: Arc<Grid1D>) -> Self {
        RealField {
            values: Array1::zeros(grid.n()),
            grid,
        }
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: Arc<Grid1D>, f: F) -> Self {
        let values = grid.x().iter().map(|&x| f(x)).collect::<Array1<_>>();
        RealField { values, grid }
    }

    pub fn to_complex(&self) -> ComplexField {
        ComplexField {
            values: self.values.mapv(|v| Complex64::new(v, 0.0)),
            grid: self.grid.clone(),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }
}

/// Two-component fluctuation field a = (a1, a1+)^T.
#[derive(Debug, Clone)]
pub struct FluctuationField {
    pub component1: ComplexField,
    pub component2: ComplexField,
}

impl FluctuationField {
    pub fn new(component1: ComplexField, component2: ComplexField) -> Result<Self> {
        if !component1.grid.same_grid(&component2.grid) {
            return Err(Error::GridMismatch(component1.grid.n(), component2.grid.n()));
        }
        Ok(FluctuationField {
            component1,
            component2,
        })
    }

    /// Build the hermitian-structured vector (f, conj f) from a scalar envelope.
    pub fn conjugate_pair(scalar: &ComplexField) -> Self {
        FluctuationField {
            component1: scalar.clone(),
            component2: ComplexField {
                values: scalar.values.mapv(|v| v.conj()),
                grid: scalar.grid.clone(),
            },
        }
    }

    pub fn grid(&self) -> &Arc<Grid1D> {
        &self.component1.grid
    }

    pub fn norm(&self) -> f64 {
        inner_product(self, self).expect("same grid").re.sqrt()
    }

    /// Concatenated (2n) view used by the dense operator algebra.
    pub fn to_stacked(&self) -> Array1<Complex64> {
        let n = self.component1.values.len();
        let mut out = Array1::default(2 * n);
        out.slice_mut(ndarray::s![..n]).assign(&self.component1.values);
        out.slice_mut(ndarray::s![n..]).assign(&self.component2.values);
        out
    }

    pub fn from_stacked(values: &ndarray::ArrayView1<Complex64>, grid: Arc<Grid1D>) -> Result<Self> {
        let n = grid.n();
        if values.len() != 2 * n {
            return Err(Error::GridMismatch(values.len(), 2 * n));
        }
        Ok(FluctuationField {
            component1: ComplexField::new(values.slice(ndarray::s![..n]).to_owned(), grid.clone())?,
            component2: ComplexField::new(values.slice(ndarray::s![n..]).to_owned(), grid)?,
        })
    }
}

/// <b|c> = dx * sum over points of (conj(b1) c1 + conj(b2) c2).
pub fn inner_product(b: &FluctuationField, c: &FluctuationField) -> Result<Complex64> {
    if !b.grid().same_grid(c.grid()) {
        return Err(Error::GridMismatch(b.grid().n(), c.grid().n()));
    }
    let mut acc = Complex64::default();
    for (x, y) in b.component1.values.iter().zip(c.component1.values.iter()) {
        acc += x.conj() * y;
    }
    for (x, y) in b.component2.values.iter().zip(c.component2.values.iter()) {
        acc += x.conj() * y;
    }
    Ok(acc * b.grid().spacing())
}

/// Scalar-field inner product dx * sum conj(b) c.
pub fn scalar_inner_product(b: &ComplexField, c: &ComplexField) -> Result<Complex64> {
    if !b.grid.same_grid(&c.grid) {
        return Err(Error::GridMismatch(b.grid.n(), c.grid.n()));
    }
    let mut acc = Complex64::default();
    for (x, y) in b.values.iter().zip(c.values.iter()) {
        acc += x.conj() * y;
    }
    Ok(acc * b.grid.spacing())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Arc<Grid1D> {
        Grid1D::new(64, 16.0).unwrap()
    }

    fn random_field(grid: &Arc<Grid1D>, seed: u64) -> FluctuationField {
        // cheap deterministic pseudo-random values, good enough for algebra tests
        let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s as f64 / u64::MAX as f64) - 0.5
        };
        let c1 = ComplexField::new(
            (0..grid.n())
                .map(|_| Complex64::new(next(), next()))
                .collect(),
            grid.clone(),
        )
        .unwrap();
        let c2 = ComplexField::new(
            (0..grid.n())
                .map(|_| Complex64::new(next(), next()))
                .collect(),
            grid.clone(),
        )
        .unwrap();
        FluctuationField::new(c1, c2).unwrap()
    }

    #[test]
    fn self_inner_product_real_nonnegative() {
        let g = grid();
        let b = random_field(&g, 3);
        let ip = inner_product(&b, &b).unwrap();
        assert!(ip.im.abs() < 1e-14 * ip.re.abs());
        assert!(ip.re >= 0.0);
    }

    #[test]
    fn orthogonal_fourier_modes() {
        let g = grid();
        let k1 = g.wavenumbers()[3];
        let k2 = g.wavenumbers()[7];
        let f1 = FluctuationField::conjugate_pair(&ComplexField::from_fn(g.clone(), |x| {
            Complex64::from_polar(1.0, k1 * x)
        }));
        let f2 = FluctuationField::conjugate_pair(&ComplexField::from_fn(g.clone(), |x| {
            Complex64::from_polar(1.0, k2 * x)
        }));
        // conjugate-pair vectors are not orthogonal in general; use bare components
        let ip = scalar_inner_product(&f1.component1, &f2.component1).unwrap();
        assert!(ip.norm() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry() {
        let g = grid();
        let b = random_field(&g, 11);
        let c = random_field(&g, 29);
        let ip1 = inner_product(&b, &c).unwrap();
        let ip2 = inner_product(&c, &b).unwrap();
        assert!((ip1 - ip2.conj()).norm() < 1e-13 * (1.0 + ip1.norm()));
    }

    #[test]
    fn grid_mismatch_detected() {
        let b = random_field(&grid(), 1);
        let c = random_field(&Grid1D::new(128, 16.0).unwrap(), 1);
        assert!(inner_product(&b, &c).is_err());
    }

    #[test]
    fn stacked_roundtrip() {
        let g = grid();
        let b = random_field(&g, 5);
        let s = b.to_stacked();
        let r = FluctuationField::from_stacked(&s.view(), g).unwrap();
        for (a, b) in b.component1.values.iter().zip(r.component1.values.iter()) {
            assert_eq!(a, b);
        }
    }
}
