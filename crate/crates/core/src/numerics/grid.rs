//! Square sampling grids, Wigner fields and one-parameter scans.

use num_complex::Complex64;
use rayon::prelude::*;

use super::sum::CompensatedSum;
use crate::error::{validation, Result};

/// Uniform `resolution x resolution` grid on `[-extent, extent]^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub extent: f64,
    pub resolution: usize,
}

impl Grid2D {
    pub fn new(extent: f64, resolution: usize) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(validation(format!("grid extent {extent} must be positive")));
        }
        if resolution < 16 {
            return Err(validation(format!("grid resolution {resolution} below 16")));
        }
        Ok(Self { extent, resolution })
    }

    /// Extent wide enough for a field whose narrowest Gaussian decay is `damping`.
    pub fn for_damping(damping: f64, resolution: usize) -> Result<Self> {
        if !(damping.is_finite() && damping > 0.0) {
            return Err(validation(format!("damping {damping} must be positive")));
        }
        Self::new((8.0 / damping.sqrt()).max(6.0), resolution)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.resolution - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.resolution).map(|i| self.coordinate(i)).collect()
    }

    /// Point for row `i` (imaginary part) and column `j` (real part).
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.coordinate(j), self.coordinate(i))
    }
}

/// Real field sampled on a [`Grid2D`], stored row-major with rows indexed by
/// the imaginary coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub grid: Grid2D,
    pub values: Vec<f64>,
}

/// Grid minimum, possibly refined off-grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMinimum {
    pub value: f64,
    pub location: Complex64,
}

impl WignerField {
    /// Samples `f` at every grid point. Rows run in parallel.
    pub fn sample<F>(grid: Grid2D, f: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<f64> + Sync,
    {
        let rows: Vec<Result<Vec<f64>>> = (0..grid.resolution)
            .into_par_iter()
            .map(|i| (0..grid.resolution).map(|j| f(grid.point(i, j))).collect())
            .collect();
        let mut values = Vec::with_capacity(grid.resolution * grid.resolution);
        for row in rows {
            values.extend(row?);
        }
        Ok(Self { grid, values })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.resolution + j]
    }

    /// Trapezoid-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        let n = self.grid.resolution;
        let edge = |k: usize| if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        let mut acc = CompensatedSum::default();
        for i in 0..n {
            for j in 0..n {
                acc.add(edge(i) * edge(j) * self.at(i, j));
            }
        }
        acc.value() * self.grid.spacing().powi(2)
    }

    /// Smallest sampled value.
    pub fn grid_minimum(&self) -> FieldMinimum {
        let n = self.grid.resolution;
        let (k, &value) = self
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("grid has at least nine points");
        FieldMinimum {
            value,
            location: self.grid.point(k / n, k % n),
        }
    }

    /// Grid minimum refined by a separable quadratic fit through its
    /// neighbours, re-evaluated with `f`. The refined point is kept only when
    /// it improves on the grid value.
    pub fn refined_minimum<F>(&self, f: F) -> Result<FieldMinimum>
    where
        F: Fn(Complex64) -> Result<f64>,
    {
        let best = self.grid_minimum();
        let n = self.grid.resolution;
        let h = self.grid.spacing();
        let k = self
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .expect("non-empty field");
        let (i, j) = (k / n, k % n);
        if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
            return Ok(best);
        }
        let vertex = |lo: f64, mid: f64, hi: f64| {
            let curvature = lo - 2.0 * mid + hi;
            if curvature > 0.0 {
                0.5 * (lo - hi) / curvature
            } else {
                0.0
            }
        };
        let dx = vertex(self.at(i, j - 1), self.at(i, j), self.at(i, j + 1));
        let dy = vertex(self.at(i - 1, j), self.at(i, j), self.at(i + 1, j));
        let location = best.location + Complex64::new(dx * h, dy * h);
        let value = f(location)?;
        Ok(if value < best.value {
            FieldMinimum { value, location }
        } else {
            best
        })
    }
}

/// Values of one quantity across a swept parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSeries {
    pub label: String,
    pub parameter: Vec<f64>,
    pub values: Vec<f64>,
}

impl ScanSeries {
    pub fn new(label: impl Into<String>, parameter: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if parameter.len() != values.len() {
            return Err(validation("scan parameter and value lengths differ"));
        }
        Ok(Self {
            label: label.into(),
            parameter,
            values,
        })
    }

    /// Samples `f` on `steps` equally spaced points of `[start, end]`.
    pub fn sample<F>(label: impl Into<String>, start: f64, end: f64, steps: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        if steps < 2 || !(start.is_finite() && end.is_finite()) {
            return Err(validation("a scan needs at least two finite points"));
        }
        let parameter: Vec<f64> = (0..steps)
            .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
            .collect();
        let values = parameter.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(label, parameter, values)
    }

    /// Bracket of the first sign change from non-negative to negative.
    pub fn first_descent_through_zero(&self) -> Option<(f64, f64)> {
        self.values
            .windows(2)
            .zip(self.parameter.windows(2))
            .find(|(v, _)| v[0] >= 0.0 && v[1] < 0.0)
            .map(|(_, p)| (p[0], p[1]))
    }
}

/// Root of `f` in a sign-changing bracket, by bisection to `tolerance`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tolerance: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(validation(format!("[{lo}, {hi}] does not bracket a root")));
    }
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
