//! Optimal proper superposition of paired point sets.

use nalgebra::{Matrix3, SVD};

use crate::frame::Vec3;

use super::{CompletenessError, RigidMotion};

/// Root-mean-square deviation of paired points.
pub fn rmsd(a: &[Vec3], b: &[Vec3]) -> f64 {
    assert_eq!(a.len(), b.len(), "rmsd of unequal point sets");
    if a.is_empty() {
        return 0.0;
    }
    let ss: f64 = a.iter().zip(b).map(|(p, q)| (p - q).norm_squared()).sum();
    (ss / a.len() as f64).sqrt()
}

fn centroid(points: &[Vec3]) -> Vec3 {
    points.iter().sum::<Vec3>() / points.len() as f64
}

/// Motion `T` minimizing `rmsd(T(a), b)` over proper rigid motions, and that rmsd.
///
/// The covariance `H = Σ (a − ā)(b − b̄)ᵀ = U Σ Vᵀ` gives `R = V·diag(1, 1, s)·Uᵀ`
/// with `s = sign det(V Uᵀ)`, which excludes reflections.
pub fn kabsch_align(a: &[Vec3], b: &[Vec3]) -> Result<(RigidMotion, f64), CompletenessError> {
    if a.len() != b.len() || a.len() < 3 {
        return Err(CompletenessError::DegeneratePointSet);
    }
    let (ca, cb) = (centroid(a), centroid(b));
    let spread = |pts: &[Vec3], c: &Vec3| pts.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
    if spread(a, &ca) < 1e-12 || spread(b, &cb) < 1e-12 {
        return Err(CompletenessError::DegeneratePointSet);
    }
    let mut h = Matrix3::zeros();
    for (p, q) in a.iter().zip(b) {
        h += (p - ca) * (q - cb).transpose();
    }
    let svd = SVD::new(h, true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let v = v_t.transpose();
    let s = (v * u.transpose()).determinant().signum();
    let rotation = v * Matrix3::from_diagonal(&Vec3::new(1.0, 1.0, s)) * u.transpose();
    let motion = RigidMotion {
        rotation,
        translation: cb - rotation * ca,
    };
    let moved: Vec<Vec3> = a.iter().map(|p| motion.apply(p)).collect();
    Ok((motion, rmsd(&moved, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::sample_se3;

    fn cloud() -> Vec<Vec3> {
        vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.5, 0.2, -0.3),
            Vec3::new(-0.4, 2.1, 0.8),
            Vec3::new(0.9, -1.1, 1.7),
            Vec3::new(2.2, 1.3, 0.4),
        ]
    }

    #[test]
    fn identical_and_rotated() {
        let a = cloud();
        let (_, r) = kabsch_align(&a, &a).unwrap();
        assert!(r < 1e-12);
        let m = sample_se3(17);
        let b: Vec<Vec3> = a.iter().map(|p| m.apply(p)).collect();
        let (found, r) = kabsch_align(&a, &b).unwrap();
        assert!(r < 1e-12, "{r}");
        assert!((found.rotation - m.rotation).amax() < 1e-10);
    }

    #[test]
    fn mirror_image_is_not_superposable() {
        let a = cloud();
        let b: Vec<Vec3> = a.iter().map(|p| Vec3::new(-p.x, p.y, p.z)).collect();
        let (m, r) = kabsch_align(&a, &b).unwrap();
        assert!((m.rotation.determinant() - 1.0).abs() < 1e-12);
        assert!(r > 0.1);
    }

    #[test]
    fn degenerate_inputs() {
        let a = cloud();
        assert_eq!(kabsch_align(&a[..2], &a[..2]), Err(CompletenessError::DegeneratePointSet));
        assert_eq!(kabsch_align(&a, &a[..4]), Err(CompletenessError::DegeneratePointSet));
        let same = vec![Vec3::new(1.0, 1.0, 1.0); 4];
        assert_eq!(kabsch_align(&same, &a[..4]), Err(CompletenessError::DegeneratePointSet));
    }
}
