use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::complex::C64;
use crate::error::{Error, Result};

/// A point of the affine plane `C^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: C64,
    pub y: C64,
}

impl AffinePoint {
    pub const ORIGIN: AffinePoint = AffinePoint {
        x: C64::new(0.0, 0.0),
        y: C64::new(0.0, 0.0),
    };

    pub fn new(x: C64, y: C64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self::new(C64::new(x, 0.0), C64::new(y, 0.0))
    }

    /// The point `(x, x̄)` of the Euclidean plane inside `C^2`.
    pub fn euclidean(x: C64) -> Self {
        Self::new(x, x.conj())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn sup_norm(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }

    /// Hermitian distance in `C^2`.
    pub fn dist(&self, other: &AffinePoint) -> f64 {
        (self.x - other.x).norm().hypot((self.y - other.y).norm())
    }

    pub fn swap(&self) -> Self {
        Self::new(self.y, self.x)
    }

    pub fn lerp(&self, other: &AffinePoint, s: f64) -> Self {
        *self + (*other - *self) * s
    }

    /// Lifts to homogeneous coordinates `[x : y : 1]`.
    pub fn to_projective(&self) -> ProjectivePoint {
        ProjectivePoint {
            x: self.x,
            y: self.y,
            z: C64::new(1.0, 0.0),
        }
    }
}

impl Add for AffinePoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for AffinePoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for AffinePoint {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

/// Homogeneous coordinates `[x : y : z]` on `CP^2`, equal up to scale.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl ProjectivePoint {
    pub fn new(x: C64, y: C64, z: C64) -> Result<Self> {
        let p = Self { x, y, z };
        if p.max_modulus() == 0.0 {
            return Err(Error::InvalidArgument(
                "homogeneous coordinates cannot all vanish".into(),
            ));
        }
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidArgument(
                "homogeneous coordinates must be finite".into(),
            ));
        }
        Ok(p)
    }

    pub fn real(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(C64::new(x, 0.0), C64::new(y, 0.0), C64::new(z, 0.0))
    }

    pub fn coords(&self) -> [C64; 3] {
        [self.x, self.y, self.z]
    }

    fn max_modulus(&self) -> f64 {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }

    /// Canonical representative: the first coordinate of largest modulus is 1.
    pub fn normalized(&self) -> Self {
        let c = self.coords();
        let mut k = 0;
        for i in 1..3 {
            if c[i].norm() > c[k].norm() {
                k = i;
            }
        }
        let s = c[k];
        Self {
            x: c[0] / s,
            y: c[1] / s,
            z: c[2] / s,
        }
    }

    /// Affine chart `z = 1`; `None` on the line at infinity.
    pub fn to_affine(&self) -> Option<AffinePoint> {
        if self.z.re == 0.0 && self.z.im == 0.0 {
            return None;
        }
        Some(AffinePoint::new(self.x / self.z, self.y / self.z))
    }
}

/// Largest 2x2 minor of the stacked, sup-normalized coordinate vectors.
/// Zero exactly when the points coincide in `CP^2`.
pub fn proj_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let a = p.coords();
    let b = q.coords();
    let sa = p.max_modulus();
    let sb = q.max_modulus();
    let a = a.map(|c| c / sa);
    let b = b.map(|c| c / sb);
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| (a[i] * b[j] - a[j] * b[i]).norm())
        .fold(0.0, f64::max)
}

pub fn proj_equal(p: &ProjectivePoint, q: &ProjectivePoint, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(proj_distance(p, q) <= tol)
}

/// A line `ax + by + cz = 0`, i.e. a point `[a : b : c]` of the dual plane.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DualLineCoords {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl DualLineCoords {
    pub fn new(a: C64, b: C64, c: C64) -> Result<Self> {
        if a.norm() == 0.0 && b.norm() == 0.0 && c.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "line coordinates cannot all vanish".into(),
            ));
        }
        Ok(Self { a, b, c })
    }

    pub fn as_projective(&self) -> ProjectivePoint {
        ProjectivePoint {
            x: self.a,
            y: self.b,
            z: self.c,
        }
    }

    /// `|ax + by + cz|` with both vectors scaled to unit sup-norm.
    pub fn incidence(&self, p: &ProjectivePoint) -> f64 {
        let l = self.as_projective().normalized();
        let q = p.normalized();
        (l.x * q.x + l.y * q.y + l.z * q.z).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_up_to_scale() {
        let p = ProjectivePoint::real(1.0, 2.0, 3.0).unwrap();
        let q = ProjectivePoint::real(2.0, 4.0, 6.0).unwrap();
        assert!(proj_equal(&p, &q, 1e-12).unwrap());

        let e1 = ProjectivePoint::real(1.0, 0.0, 0.0).unwrap();
        let e2 = ProjectivePoint::real(0.0, 1.0, 0.0).unwrap();
        assert!(!proj_equal(&e1, &e2, 1e-12).unwrap());

        let a = ProjectivePoint::real(1.25, 1.0625, 0.25).unwrap();
        let b = ProjectivePoint::real(5.0, 4.25, 1.0).unwrap();
        assert!(proj_equal(&a, &b, 1e-12).unwrap());
    }

    #[test]
    fn complex_scale_is_ignored() {
        let p = ProjectivePoint::real(1.0, -2.0, 0.5).unwrap();
        let s = C64::new(0.3, -7.0);
        let q = ProjectivePoint::new(p.x * s, p.y * s, p.z * s).unwrap();
        assert!(proj_distance(&p, &q) < 1e-15);
    }

    #[test]
    fn bad_tolerance_and_zero_vector() {
        let p = ProjectivePoint::real(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            proj_equal(&p, &p, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(ProjectivePoint::real(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn normalization_scales_largest_coordinate_to_one() {
        let p = ProjectivePoint::real(1.25, 1.0625, 0.25)
            .unwrap()
            .normalized();
        assert_eq!(p.x, C64::new(1.0, 0.0));
        assert!(p.to_affine().unwrap().dist(&AffinePoint::real(5.0, 4.25)) < 1e-14);
    }
}
