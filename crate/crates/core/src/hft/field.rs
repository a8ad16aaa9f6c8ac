use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{BoundaryPoint, DiskPoint};
use crate::quadrature::trapezoid_weights;

/// How geodesic radii are laid out on `[0, R]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialLayout {
    /// `t_j = jR/J`, `j = 1..=J`: the quadrature grid on `(0, R]`.
    Open,
    /// `t_j = jR/(J−1)`, `j = 0..J`: rendering grid including the center ring.
    Closed,
}

/// Polar sampling of the disk, uniform in geodesic radius and in angle.
/// Node `(j, k)` sits at index `j * angular + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    radial: usize,
    angular: usize,
    radius: f64,
    layout: RadialLayout,
}

impl Default for PolarGrid {
    fn default() -> Self {
        PolarGrid {
            radial: 200,
            angular: 256,
            radius: 4.0,
            layout: RadialLayout::Open,
        }
    }
}

impl PolarGrid {
    pub fn new(radial: usize, angular: usize, radius: f64) -> Result<Self> {
        Self::with_layout(radial, angular, radius, RadialLayout::Open)
    }

    pub fn closed(radial: usize, angular: usize, radius: f64) -> Result<Self> {
        Self::with_layout(radial, angular, radius, RadialLayout::Closed)
    }

    pub fn with_layout(radial: usize, angular: usize, radius: f64, layout: RadialLayout) -> Result<Self> {
        if radial < 2 {
            return Err(invalid("grid", "need at least 2 radial nodes"));
        }
        if angular < 2 {
            return Err(invalid("grid", "need at least 2 angular nodes"));
        }
        if !(radius.is_finite() && radius > 0.0 && radius < 36.0) {
            return Err(invalid("radius", "must lie in (0, 36)"));
        }
        Ok(PolarGrid {
            radial,
            angular,
            radius,
            layout,
        })
    }

    pub fn radial(&self) -> usize {
        self.radial
    }

    pub fn angular(&self) -> usize {
        self.angular
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn layout(&self) -> RadialLayout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.radial * self.angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn radial_step(&self) -> f64 {
        match self.layout {
            RadialLayout::Open => self.radius / self.radial as f64,
            RadialLayout::Closed => self.radius / (self.radial - 1) as f64,
        }
    }

    /// Geodesic radius of ring `j`.
    pub fn radius_at(&self, j: usize) -> f64 {
        match self.layout {
            RadialLayout::Open => (j + 1) as f64 * self.radial_step(),
            RadialLayout::Closed => j as f64 * self.radial_step(),
        }
    }

    pub fn angle_at(&self, k: usize) -> f64 {
        TAU * k as f64 / self.angular as f64
    }

    pub fn node(&self, j: usize, k: usize) -> DiskPoint {
        DiskPoint::from_geodesic_polar(self.radius_at(j), self.angle_at(k))
    }

    pub fn node_at(&self, index: usize) -> DiskPoint {
        self.node(index / self.angular, index % self.angular)
    }

    pub fn nodes(&self) -> Vec<DiskPoint> {
        (0..self.len()).map(|i| self.node_at(i)).collect()
    }

    /// Radial trapezoid weights times `sinh t`, per ring (angular factor excluded).
    pub fn ring_weights(&self) -> Vec<f64> {
        let h = self.radial_step();
        let mut w = match self.layout {
            // the implicit node at t = 0 carries weight sinh(0) = 0
            RadialLayout::Open => {
                let mut w = vec![h; self.radial];
                w[self.radial - 1] *= 0.5;
                w
            }
            RadialLayout::Closed => trapezoid_weights(self.radial, h),
        };
        for (j, wj) in w.iter_mut().enumerate() {
            *wj *= self.radius_at(j).sinh();
        }
        w
    }

    /// Hyperbolic area weight of every node.
    pub fn weights(&self) -> Vec<f64> {
        let dtheta = TAU / self.angular as f64;
        let ring = self.ring_weights();
        (0..self.len()).map(|i| ring[i / self.angular] * dtheta).collect()
    }

    /// Exact hyperbolic area `2π(cosh R − 1)` of the sampled disk.
    pub fn area(&self) -> f64 {
        TAU * (self.radius.cosh() - 1.0)
    }
}

/// Complex samples of a function on the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: PolarGrid,
    values: Vec<Complex64>,
}

impl SampledField {
    pub fn new(grid: PolarGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledField { grid, values })
    }

    pub fn zeros(grid: PolarGrid) -> Self {
        SampledField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn<F>(grid: PolarGrid, f: F) -> Self
    where
        F: Fn(DiskPoint) -> Complex64 + Sync,
    {
        let values = (0..grid.len()).into_par_iter().map(|i| f(grid.node_at(i))).collect();
        SampledField { grid, values }
    }

    pub fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn weights(&self) -> Vec<f64> {
        self.grid.weights()
    }

    pub fn ring(&self, j: usize) -> &[Complex64] {
        let n = self.grid.angular;
        &self.values[j * n..(j + 1) * n]
    }

    /// `(Σ wᵢ |fᵢ|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖self − reference‖ / ‖reference‖` in the weighted L² norm.
    pub fn relative_l2_error(&self, reference: &SampledField) -> Result<f64> {
        if self.grid != reference.grid {
            return Err(Error::GridMismatch("fields live on different grids".into()));
        }
        let w = self.weights();
        let (mut num, mut den) = (0.0, 0.0);
        for ((a, b), wi) in self.values.iter().zip(&reference.values).zip(&w) {
            num += wi * (a - b).norm_sqr();
            den += wi * b.norm_sqr();
        }
        Ok((num / den).sqrt())
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.values {
            *v *= factor;
        }
    }

    /// Fraction of the L¹ mass carried by the outermost ring.
    pub fn outer_ring_fraction(&self) -> f64 {
        let ring = self.grid.ring_weights();
        let n = self.grid.angular;
        let mut total = 0.0;
        let mut outer = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let m = ring[i / n] * v.norm();
            total += m;
            if i / n == self.grid.radial - 1 {
                outer += m;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outer / total
        }
    }
}

/// Uniform grid on `a* × B`: `λᵢ = λ_min + i·Δλ` and `θ_m = 2πm/M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    lambda_min: f64,
    lambda_step: f64,
    lambda_count: usize,
    directions: usize,
}

impl Default for SpectralGrid {
    fn default() -> Self {
        SpectralGrid::half_line(8.0, 0.05, 256).expect("default spectral grid")
    }
}

impl SpectralGrid {
    pub fn new(lambda_min: f64, lambda_step: f64, lambda_count: usize, directions: usize) -> Result<Self> {
        if !(lambda_step.is_finite() && lambda_step > 0.0) {
            return Err(invalid("lambda_step", "must be positive"));
        }
        if !lambda_min.is_finite() {
            return Err(invalid("lambda_min", "must be finite"));
        }
        if lambda_count < 2 {
            return Err(invalid("lambda_count", "need at least 2 spectral nodes"));
        }
        if directions < 1 {
            return Err(invalid("directions", "need at least one boundary direction"));
        }
        Ok(SpectralGrid {
            lambda_min,
            lambda_step,
            lambda_count,
            directions,
        })
    }

    /// `[0, Λ]`.
    pub fn half_line(lambda_max: f64, step: f64, directions: usize) -> Result<Self> {
        let count = (lambda_max / step).round() as usize + 1;
        Self::new(0.0, step, count, directions)
    }

    /// `[−Λ, Λ]`.
    pub fn symmetric(lambda_max: f64, step: f64, directions: usize) -> Result<Self> {
        let half = (lambda_max / step).round() as usize;
        Self::new(-(half as f64) * step, step, 2 * half + 1, directions)
    }

    pub fn lambda_at(&self, i: usize) -> f64 {
        self.lambda_min + i as f64 * self.lambda_step
    }

    pub fn lambdas(&self) -> Vec<f64> {
        (0..self.lambda_count).map(|i| self.lambda_at(i)).collect()
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_at(self.lambda_count - 1)
    }

    pub fn lambda_step(&self) -> f64 {
        self.lambda_step
    }

    pub fn lambda_count(&self) -> usize {
        self.lambda_count
    }

    pub fn directions(&self) -> usize {
        self.directions
    }

    pub fn direction_at(&self, m: usize) -> BoundaryPoint {
        BoundaryPoint::new(TAU * m as f64 / self.directions as f64)
    }

    pub fn len(&self) -> usize {
        self.lambda_count * self.directions
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lambda_weights(&self) -> Vec<f64> {
        trapezoid_weights(self.lambda_count, self.lambda_step)
    }

    pub(crate) fn starts_at_zero(&self) -> bool {
        self.lambda_min.abs() < 1e-12 * self.lambda_step
    }

    pub(crate) fn is_symmetric(&self) -> bool {
        (self.lambda_min + self.lambda_max()).abs() < 1e-9 * self.lambda_step
    }
}

/// Complex samples on `a* × B`; node `(i, m)` at index `i * directions + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: SpectralGrid,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: SpectralGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a spectral grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(SpectralField { grid, values })
    }

    pub fn zeros(grid: SpectralGrid) -> Self {
        SpectralField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize, m: usize) -> Complex64 {
        self.values[i * self.grid.directions + m]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid.directions;
        &self.values[i * n..(i + 1) * n]
    }

    /// Largest L¹ fraction carried by a row at the truncation edge `|λ| = Λ`.
    pub fn edge_row_fraction(&self) -> f64 {
        let total: f64 = self.values.iter().map(|v| v.norm()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let row_mass = |i: usize| self.row(i).iter().map(|v| v.norm()).sum::<f64>();
        let last = row_mass(self.grid.lambda_count - 1);
        let first = if self.grid.is_symmetric() { row_mass(0) } else { 0.0 };
        last.max(first) / total
    }
}
