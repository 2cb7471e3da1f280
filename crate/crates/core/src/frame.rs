//! Local orthonormal frames and the angle primitives built on them.

use nalgebra::{Matrix3, Vector3};

use crate::geometry::GeometryError;

pub type Vec3 = Vector3<f64>;

/// Relative tolerance for collinearity/degeneracy tests.
pub const COLLINEAR_TOL: f64 = 1e-8;

/// A right-handed orthonormal triad anchored at `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub origin: Vec3,
    pub x: Vec3,
    pub y: Vec3,
    pub z: Vec3,
}

impl Frame {
    pub fn identity() -> Self {
        Frame {
            origin: Vec3::zeros(),
            x: Vec3::x(),
            y: Vec3::y(),
            z: Vec3::z(),
        }
    }

    /// Axes stacked as rows.
    pub fn axes_rows(&self) -> Matrix3<f64> {
        Matrix3::from_rows(&[self.x.transpose(), self.y.transpose(), self.z.transpose()])
    }

    /// Axes stacked as columns; maps local coordinates to world directions.
    pub fn axes_columns(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.x, self.y, self.z])
    }

    pub fn from_columns(origin: Vec3, axes: &Matrix3<f64>) -> Self {
        Frame {
            origin,
            x: axes.column(0).into_owned(),
            y: axes.column(1).into_owned(),
            z: axes.column(2).into_owned(),
        }
    }

    pub fn to_local(&self, p: &Vec3) -> Vec3 {
        let v = p - self.origin;
        Vec3::new(self.x.dot(&v), self.y.dot(&v), self.z.dot(&v))
    }

    pub fn to_world(&self, local: &Vec3) -> Vec3 {
        self.origin + self.x * local.x + self.y * local.y + self.z * local.z
    }

    /// Checks unit norms (1e-12), orthogonality and handedness (1e-9).
    pub fn check_orthonormal(&self) -> Result<(), GeometryError> {
        let unit = |v: &Vec3| (v.norm() - 1.0).abs() <= 1e-12;
        let ok = unit(&self.x)
            && unit(&self.y)
            && unit(&self.z)
            && self.x.dot(&self.y).abs() <= 1e-9
            && self.y.dot(&self.z).abs() <= 1e-9
            && self.z.dot(&self.x).abs() <= 1e-9
            && (self.x.cross(&self.y) - self.z).amax() <= 1e-9
            && self.origin.iter().all(|c| c.is_finite());
        if ok {
            Ok(())
        } else {
            Err(GeometryError::DegenerateFrame)
        }
    }
}

/// `a × b` normalized, or `None` when `|a × b| < tol·|a||b|`.
pub(crate) fn unit_cross(a: &Vec3, b: &Vec3) -> Option<Vec3> {
    let c = a.cross(b);
    let scale = a.norm() * b.norm();
    if !(scale > 0.0) || c.norm() < COLLINEAR_TOL * scale {
        None
    } else {
        Some(c / c.norm())
    }
}

pub(crate) fn unit(v: &Vec3) -> Option<Vec3> {
    let n = v.norm();
    (n > 0.0 && n.is_finite()).then(|| v / n)
}

/// Signed angle from `a` to `b` about `axis` (right-hand rule), in (−π, π].
/// `a` and `b` are assumed perpendicular to `axis`.
pub(crate) fn signed_angle(a: &Vec3, b: &Vec3, axis: &Vec3) -> f64 {
    let axis = axis.normalize();
    wrap_angle(a.cross(b).dot(&axis).atan2(a.dot(b)))
}

/// Unsigned angle between two vectors in [0, π], via atan2 so it stays
/// well-conditioned near 0 and π.
pub(crate) fn unsigned_angle(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Maps any angle into (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::PI;
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// Circle distance between two angles: `min(|Δ|, 2π − |Δ|)`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Signed torsion of `p1–p2–p3–p4` about the axis `p2 → p3`, in (−π, π].
///
/// Rotating `p4` by `+δ` about `p2 → p3` (right-hand rule) raises the value by
/// `δ`, which is the usual IUPAC sign.
pub fn dihedral(p1: &Vec3, p2: &Vec3, p3: &Vec3, p4: &Vec3) -> Result<f64, GeometryError> {
    let b2 = p3 - p2;
    let axis_len = b2.norm();
    let scale = (p2 - p1).norm().max((p4 - p3).norm()).max(axis_len);
    if !(axis_len > COLLINEAR_TOL * scale) {
        return Err(GeometryError::DegenerateAxis);
    }
    let n1 = unit_cross(&(p2 - p1), &b2).ok_or(GeometryError::DegeneratePlane)?;
    let n2 = unit_cross(&b2, &(p4 - p3)).ok_or(GeometryError::DegeneratePlane)?;
    Ok(signed_angle(&n1, &n2, &b2))
}

/// Rodrigues rotation of `p` about the line through `pivot` with direction `axis`.
pub(crate) fn rotate_about(p: &Vec3, pivot: &Vec3, axis: &Vec3, angle: f64) -> Vec3 {
    let k = axis.normalize();
    let v = p - pivot;
    let (s, c) = angle.sin_cos();
    pivot + v * c + k.cross(&v) * s + k * (k.dot(&v) * (1.0 - c))
}
