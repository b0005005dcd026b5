//! Uniform axes and the 3D field containers used throughout the crate.
//!
//! Fields store samples with the third (radial or vertical) index fastest,
//! then y, then x, so radial scans run over contiguous memory.

use crate::error::{Error, Result};

/// A uniform 1D grid: nodes `start + k*step` for `0 <= k < count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    start: f64,
    step: f64,
    count: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() {
            return Err(Error::domain("axis start and step must be finite"));
        }
        if step <= 0.0 {
            return Err(Error::domain(format!("axis step must be > 0, got {step}")));
        }
        if count < 1 {
            return Err(Error::domain("axis count must be >= 1"));
        }
        Ok(Axis { start, step, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Node value `start + k*step`; errors if `k` is out of range.
    pub fn node(&self, k: usize) -> Result<f64> {
        if k >= self.count {
            return Err(Error::range(format!(
                "axis node {k} out of range (count {})",
                self.count
            )));
        }
        Ok(self.node_unchecked(k))
    }

    #[inline]
    pub(crate) fn node_unchecked(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    /// Last node value.
    pub fn end(&self) -> f64 {
        self.node_unchecked(self.count - 1)
    }

    /// Iterator over all node values.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.node_unchecked(k))
    }

    /// Index of the node closest to `v`, if `v` lies on the grid.
    ///
    /// Matching is up to a small relative slack so that decimal inputs like
    /// `2.0` hit nodes such as `20 * 0.1`.
    pub fn index_of(&self, v: f64) -> Option<usize> {
        let pos = (v - self.start) / self.step;
        if pos < -0.5 {
            return None;
        }
        let k = pos.round() as usize;
        if k >= self.count {
            return None;
        }
        let tol = 1e-6 * self.step;
        if (v - self.node_unchecked(k)).abs() <= tol {
            Some(k)
        } else {
            None
        }
    }

    /// Sub-axis starting `trim` nodes in and dropping `trim` nodes at each end.
    pub(crate) fn trimmed(&self, trim: usize) -> Result<Axis> {
        if self.count < 2 * trim + 1 {
            return Err(Error::dimension(format!(
                "axis with {} nodes cannot be trimmed by {trim} per side",
                self.count
            )));
        }
        Axis::new(self.node_unchecked(trim), self.step, self.count - 2 * trim)
    }
}

/// A point in R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }
}

#[inline]
fn flat_index(ny: usize, nu: usize, k: usize, l: usize, m: usize) -> usize {
    (k * ny + l) * nu + m
}

/// Samples of the spherical mean Mf(x, y, u) on a tensor grid.
///
/// `values[k, l, m]` is the mean over the sphere centered at
/// `(x_k, y_l, 0)` with radius `u_m`. Radii are nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalMeanField {
    x_axis: Axis,
    y_axis: Axis,
    u_axis: Axis,
    values: Vec<f64>,
}

impl SphericalMeanField {
    pub fn zeros(x_axis: Axis, y_axis: Axis, u_axis: Axis) -> Result<Self> {
        if u_axis.start() < 0.0 {
            return Err(Error::domain(format!(
                "radial axis must start at >= 0, got {}",
                u_axis.start()
            )));
        }
        let len = x_axis.count() * y_axis.count() * u_axis.count();
        Ok(SphericalMeanField {
            x_axis,
            y_axis,
            u_axis,
            values: vec![0.0; len],
        })
    }

    pub fn from_values(x_axis: Axis, y_axis: Axis, u_axis: Axis, values: Vec<f64>) -> Result<Self> {
        let expect = x_axis.count() * y_axis.count() * u_axis.count();
        if values.len() != expect {
            return Err(Error::dimension(format!(
                "value buffer has {} entries, grid needs {expect}",
                values.len()
            )));
        }
        let mut field = Self::zeros(x_axis, y_axis, u_axis)?;
        field.values = values;
        Ok(field)
    }

    pub fn x_axis(&self) -> &Axis {
        &self.x_axis
    }

    pub fn y_axis(&self) -> &Axis {
        &self.y_axis
    }

    pub fn u_axis(&self) -> &Axis {
        &self.u_axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    fn check_index(&self, k: usize, l: usize, m: usize) -> Result<usize> {
        if k >= self.x_axis.count() || l >= self.y_axis.count() || m >= self.u_axis.count() {
            return Err(Error::range(format!(
                "field index ({k},{l},{m}) out of range ({},{},{})",
                self.x_axis.count(),
                self.y_axis.count(),
                self.u_axis.count()
            )));
        }
        Ok(flat_index(self.y_axis.count(), self.u_axis.count(), k, l, m))
    }

    /// Stored sample at grid indices; no interpolation.
    pub fn at(&self, k: usize, l: usize, m: usize) -> Result<f64> {
        Ok(self.values[self.check_index(k, l, m)?])
    }

    pub fn set(&mut self, k: usize, l: usize, m: usize, v: f64) -> Result<()> {
        let idx = self.check_index(k, l, m)?;
        self.values[idx] = v;
        Ok(())
    }

    #[inline]
    pub(crate) fn at_unchecked(&self, k: usize, l: usize, m: usize) -> f64 {
        self.values[flat_index(self.y_axis.count(), self.u_axis.count(), k, l, m)]
    }

    /// Contiguous radial profile `Mf(x_k, y_l, .)` over all radii.
    pub fn radial_profile(&self, k: usize, l: usize) -> Result<&[f64]> {
        let base = self.check_index(k, l, 0)?;
        Ok(&self.values[base..base + self.u_axis.count()])
    }
}

/// Reconstruction samples f(x, y, z) on a grid above the detector plane.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeField {
    x_axis: Axis,
    y_axis: Axis,
    z_axis: Axis,
    values: Vec<f64>,
}

impl VolumeField {
    pub fn zeros(x_axis: Axis, y_axis: Axis, z_axis: Axis) -> Result<Self> {
        if z_axis.start() <= 0.0 {
            return Err(Error::domain(format!(
                "vertical axis must start at > 0, got {}",
                z_axis.start()
            )));
        }
        let len = x_axis.count() * y_axis.count() * z_axis.count();
        Ok(VolumeField {
            x_axis,
            y_axis,
            z_axis,
            values: vec![0.0; len],
        })
    }

    pub fn from_values(x_axis: Axis, y_axis: Axis, z_axis: Axis, values: Vec<f64>) -> Result<Self> {
        let expect = x_axis.count() * y_axis.count() * z_axis.count();
        if values.len() != expect {
            return Err(Error::dimension(format!(
                "value buffer has {} entries, grid needs {expect}",
                values.len()
            )));
        }
        let mut vol = Self::zeros(x_axis, y_axis, z_axis)?;
        vol.values = values;
        Ok(vol)
    }

    pub fn x_axis(&self) -> &Axis {
        &self.x_axis
    }

    pub fn y_axis(&self) -> &Axis {
        &self.y_axis
    }

    pub fn z_axis(&self) -> &Axis {
        &self.z_axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    fn check_index(&self, k: usize, l: usize, m: usize) -> Result<usize> {
        if k >= self.x_axis.count() || l >= self.y_axis.count() || m >= self.z_axis.count() {
            return Err(Error::range(format!(
                "volume index ({k},{l},{m}) out of range ({},{},{})",
                self.x_axis.count(),
                self.y_axis.count(),
                self.z_axis.count()
            )));
        }
        Ok(flat_index(self.y_axis.count(), self.z_axis.count(), k, l, m))
    }

    pub fn at(&self, k: usize, l: usize, m: usize) -> Result<f64> {
        Ok(self.values[self.check_index(k, l, m)?])
    }

    pub fn set(&mut self, k: usize, l: usize, m: usize, v: f64) -> Result<()> {
        let idx = self.check_index(k, l, m)?;
        self.values[idx] = v;
        Ok(())
    }

    #[inline]
    pub(crate) fn at_unchecked(&self, k: usize, l: usize, m: usize) -> f64 {
        self.values[flat_index(self.y_axis.count(), self.z_axis.count(), k, l, m)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_nodes() {
        let a = Axis::new(0.0, 0.5, 5).unwrap();
        assert_eq!(a.node(2).unwrap(), 1.0);
        assert_eq!(a.node(0).unwrap(), 0.0);
        let b = Axis::new(1.0, 0.25, 9).unwrap();
        assert_eq!(b.node(8).unwrap(), 3.0);
    }

    #[test]
    fn axis_node_out_of_range() {
        let a = Axis::new(0.0, 0.5, 5).unwrap();
        assert!(matches!(a.node(5), Err(Error::Range(_))));
    }

    #[test]
    fn axis_rejects_bad_parameters() {
        assert!(Axis::new(0.0, 0.0, 3).is_err());
        assert!(Axis::new(0.0, -1.0, 3).is_err());
        assert!(Axis::new(0.0, 1.0, 0).is_err());
        assert!(Axis::new(f64::NAN, 1.0, 3).is_err());
    }

    #[test]
    fn axis_index_of_accepts_decimal_inputs() {
        let a = Axis::new(0.0, 0.1, 25).unwrap();
        assert_eq!(a.index_of(2.0), Some(20));
        assert_eq!(a.index_of(0.0), Some(0));
        assert_eq!(a.index_of(2.43), None);
        assert_eq!(a.index_of(-0.1), None);
        assert_eq!(a.index_of(2.5), None);
    }

    #[test]
    fn field_read_back() {
        let ax = Axis::new(0.0, 1.0, 3).unwrap();
        let au = Axis::new(0.0, 0.5, 4).unwrap();
        let mut f = SphericalMeanField::zeros(ax, ax, au).unwrap();
        assert_eq!(f.at(2, 1, 3).unwrap(), 0.0);
        f.set(1, 2, 3, 7.25).unwrap();
        assert_eq!(f.at(1, 2, 3).unwrap(), 7.25);
    }

    #[test]
    fn field_range_error() {
        let ax = Axis::new(0.0, 1.0, 2).unwrap();
        let au = Axis::new(0.0, 0.5, 1).unwrap();
        let f = SphericalMeanField::zeros(ax, ax, au).unwrap();
        assert!(matches!(f.at(0, 0, 1), Err(Error::Range(_))));
    }

    #[test]
    fn field_rejects_negative_radii() {
        let ax = Axis::new(0.0, 1.0, 2).unwrap();
        let au = Axis::new(-0.5, 0.5, 3).unwrap();
        assert!(SphericalMeanField::zeros(ax, ax, au).is_err());
    }

    #[test]
    fn volume_requires_positive_z() {
        let ax = Axis::new(0.0, 1.0, 2).unwrap();
        let az = Axis::new(0.0, 0.5, 3).unwrap();
        assert!(VolumeField::zeros(ax, ax, az).is_err());
        let az = Axis::new(0.5, 0.5, 3).unwrap();
        assert!(VolumeField::zeros(ax, ax, az).is_ok());
    }

    #[test]
    fn radial_profile_is_contiguous() {
        let ax = Axis::new(0.0, 1.0, 2).unwrap();
        let au = Axis::new(0.0, 1.0, 3).unwrap();
        let mut f = SphericalMeanField::zeros(ax, ax, au).unwrap();
        for m in 0..3 {
            f.set(1, 0, m, m as f64).unwrap();
        }
        assert_eq!(f.radial_profile(1, 0).unwrap(), &[0.0, 1.0, 2.0]);
    }
}
