//! Periodic 1D Fourier collocation grid and spectral operators.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform periodic grid on [-length/2, length/2).
///
/// Immutable after construction; FFT plans are shared and thread-safe.
pub struct Grid1D {
    n: usize,
    length: f64,
    spacing: f64,
    x: Vec<f64>,
    wavenumbers: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Grid1D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Grid1D")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

pub const DEFAULT_N_POINTS: usize = 512;
pub const DEFAULT_LENGTH: f64 = 40.0;

impl Grid1D {
    pub fn new(n: usize, length: f64) -> Result<Arc<Self>> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "n_points must be a power of two, got {n}"
            )));
        }
        if !(length > 0.0) {
            return Err(Error::InvalidParameter(format!("length = {length}")));
        }
        let spacing = length / n as f64;
        let x: Vec<f64> = (0..n)
            .map(|j| (j as isize - (n / 2) as isize) as f64 * spacing)
            .collect();
        // standard DFT wavenumber set: 0, 1, ..., n/2-1, -n/2, ..., -1 times 2 pi / L
        let dk = 2.0 * std::f64::consts::PI / length;
        let wavenumbers: Vec<f64> = (0..n)
            .map(|j| {
                let m = if j < n / 2 {
                    j as isize
                } else {
                    j as isize - n as isize
                };
                m as f64 * dk
            })
            .collect();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Arc::new(Grid1D {
            n,
            length,
            spacing,
            x,
            wavenumbers,
            fwd,
            inv,
        }))
    }

    pub fn default_grid() -> Arc<Self> {
        Self::new(DEFAULT_N_POINTS, DEFAULT_LENGTH).expect("default grid is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Largest resolved wavenumber magnitude.
    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI / self.spacing
    }

    /// In-place forward DFT (unnormalised).
    pub fn fft(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.fwd.process(buf);
    }

    /// In-place inverse DFT including the 1/n normalisation.
    pub fn ifft(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inv.process(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }

    /// Apply a diagonal-in-k multiplier: buf <- ifft(m(k) * fft(buf)).
    pub fn apply_spectral<Fm>(&self, buf: &mut [Complex64], m: Fm)
    where
        Fm: Fn(f64) -> Complex64,
    {
        self.fft(buf);
        for (v, &k) in buf.iter_mut().zip(&self.wavenumbers) {
            *v *= m(k);
        }
        self.ifft(buf);
    }

    /// Spectral second derivative under periodic boundary conditions.
    pub fn laplacian(&self, buf: &mut [Complex64]) {
        self.apply_spectral(buf, |k| Complex64::new(-k * k, 0.0));
    }

    /// Spectral first derivative.
    pub fn derivative(&self, buf: &mut [Complex64]) {
        self.apply_spectral(buf, |k| Complex64::new(0.0, k));
    }

    /// Translate a field by `shift` (positive moves the profile towards +x),
    /// exact for the band-limited interpolant.
    pub fn translate(&self, buf: &mut [Complex64], shift: f64) {
        self.apply_spectral(buf, |k| Complex64::from_polar(1.0, -k * shift));
    }

    /// Dense real matrix of a spectral operator with real-even symbol,
    /// built column-by-column through the FFT.
    pub fn dense_operator_matrix<Fm>(&self, m: Fm) -> ndarray::Array2<f64>
    where
        Fm: Fn(f64) -> f64,
    {
        let n = self.n;
        let mut out = ndarray::Array2::<f64>::zeros((n, n));
        let mut col = vec![Complex64::default(); n];
        for j in 0..n {
            col.iter_mut().for_each(|v| *v = Complex64::default());
            col[j] = Complex64::new(1.0, 0.0);
            self.apply_spectral(&mut col, |k| Complex64::new(m(k), 0.0));
            for i in 0..n {
                out[[i, j]] = col[i].re;
            }
        }
        out
    }

    pub fn same_grid(&self, other: &Grid1D) -> bool {
        std::ptr::eq(self, other) || (self.n == other.n && self.length == other.length)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_non_power_of_two() {
        assert!(Grid1D::new(100, 40.0).is_err());
        assert!(Grid1D::new(0, 40.0).is_err());
    }

    #[test]
    fn spacing_and_wavenumbers() {
        let g = Grid1D::new(8, 4.0).unwrap();
        assert_relative_eq!(g.spacing(), 0.5);
        let dk = 2.0 * std::f64::consts::PI / 4.0;
        let expect = [0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0];
        for (k, e) in g.wavenumbers().iter().zip(expect) {
            assert_relative_eq!(*k, e * dk, max_relative = 1e-15);
        }
    }

    #[test]
    fn laplacian_of_constant_is_zero() {
        let g = Grid1D::new(64, 10.0).unwrap();
        let mut f = vec![Complex64::new(3.5, -1.0); 64];
        g.laplacian(&mut f);
        for v in f {
            assert!(v.norm() < 1e-13);
        }
    }

    #[test]
    fn laplacian_of_plane_wave() {
        let g = Grid1D::new(64, 10.0).unwrap();
        let k = g.wavenumbers()[5];
        let mut f: Vec<Complex64> = g
            .x()
            .iter()
            .map(|&x| Complex64::from_polar(1.0, k * x))
            .collect();
        let expect: Vec<Complex64> = f.iter().map(|v| -k * k * v).collect();
        g.laplacian(&mut f);
        for (a, b) in f.iter().zip(expect) {
            assert!((a - b).norm() < 1e-10 * k * k);
        }
    }

    #[test]
    fn laplacian_of_sech_matches_analytic() {
        // sech'' = sech - 2 sech^3
        let g = Grid1D::new(512, 40.0).unwrap();
        let mut f: Vec<Complex64> = g
            .x()
            .iter()
            .map(|&x| Complex64::new(1.0 / x.cosh(), 0.0))
            .collect();
        let exact: Vec<f64> = g
            .x()
            .iter()
            .map(|&x| {
                let s = 1.0 / x.cosh();
                s - 2.0 * s.powi(3)
            })
            .collect();
        g.laplacian(&mut f);
        let err = f
            .iter()
            .zip(exact)
            .map(|(a, b)| (a.re - b).abs().max(a.im.abs()))
            .fold(0.0f64, f64::max);
        assert!(err < 1e-10, "max err {err:.3e}");
    }

    #[test]
    fn translate_shifts_grid_points_exactly() {
        let g = Grid1D::new(64, 16.0).unwrap();
        let mut f: Vec<Complex64> = g
            .x()
            .iter()
            .map(|&x| Complex64::new((-x * x / 2.0).exp(), 0.0))
            .collect();
        let orig = f.clone();
        g.translate(&mut f, 3.0 * g.spacing());
        for j in 0..64 {
            let src = (j + 64 - 3) % 64;
            assert!((f[j] - orig[src]).norm() < 1e-12);
        }
    }
}
