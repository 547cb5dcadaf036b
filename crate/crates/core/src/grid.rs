//! Samples of 2π-periodic functions on the uniform dyadic grid t_j = 2πj/n.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest grid the crate accepts.
pub const MIN_GRID: usize = 8;

pub fn check_grid_size(n: usize) -> Result<()> {
    if n >= MIN_GRID && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidGridSize(n))
    }
}

/// Grid spacing 2π/n.
#[inline]
pub fn spacing(n: usize) -> f64 {
    TAU / n as f64
}

/// The canonical nodes t_j = 2πj/n, j = 0..n.
pub fn grid_points(n: usize) -> Vec<f64> {
    (0..n).map(|j| node(j, n)).collect()
}

#[inline]
pub fn node(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Real or complex samples g(t_j) on the n-point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    samples: Samples,
}

impl GridFunction {
    pub fn real(values: Vec<f64>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            samples: Samples::Real(values),
        })
    }

    pub fn complex(values: Vec<Complex64>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(index) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            samples: Samples::Complex(values),
        })
    }

    /// Samples `g` at the grid nodes.
    pub fn from_fn(n: usize, g: impl Fn(f64) -> f64) -> Result<Self> {
        check_grid_size(n)?;
        Self::real((0..n).map(|j| g(node(j, n))).collect())
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::real(vec![value; n])
    }

    pub fn n(&self) -> usize {
        match &self.samples {
            Samples::Real(v) => v.len(),
            Samples::Complex(v) => v.len(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self.samples, Samples::Real(_))
    }

    pub fn samples(&self) -> &Samples {
        &self.samples
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match &self.samples {
            Samples::Real(v) => Some(v),
            Samples::Complex(_) => None,
        }
    }

    /// Real samples, or [`Error::ComplexInput`].
    pub fn real_values(&self) -> Result<&[f64]> {
        self.as_real().ok_or(Error::ComplexInput)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match &self.samples {
            Samples::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Samples::Complex(v) => v.clone(),
        }
    }

    pub fn into_real(self) -> Result<Vec<f64>> {
        match self.samples {
            Samples::Real(v) => Ok(v),
            Samples::Complex(_) => Err(Error::ComplexInput),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        grid_points(self.n())
    }

    /// Largest absolute sample.
    pub fn sup_norm(&self) -> f64 {
        match &self.samples {
            Samples::Real(v) => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Samples::Complex(v) => v.iter().fold(0.0, |m, x| m.max(x.norm())),
        }
    }

    /// Sup-norm distance between two real grid functions of equal size.
    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        let a = self.real_values()?;
        let b = other.real_values()?;
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                actual: b.len(),
            });
        }
        Ok(a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs())))
    }

    pub fn mean(&self) -> Complex64 {
        let n = self.n() as f64;
        match &self.samples {
            Samples::Real(v) => Complex64::new(v.iter().sum::<f64>() / n, 0.0),
            Samples::Complex(v) => v.iter().sum::<Complex64>() / n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(
            GridFunction::real(vec![0.0; 4]),
            Err(Error::InvalidGridSize(4))
        ));
        assert!(matches!(
            GridFunction::real(vec![0.0; 12]),
            Err(Error::InvalidGridSize(12))
        ));
        assert!(GridFunction::real(vec![0.0; 8]).is_ok());
    }

    #[test]
    fn rejects_non_finite() {
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        assert!(matches!(
            GridFunction::real(v),
            Err(Error::NonFinite { index: 3 })
        ));
    }

    #[test]
    fn grid_nodes() {
        let t = grid_points(8);
        assert_eq!(t[0], 0.0);
        assert!((t[2] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(t.len(), 8);
    }
}
