use rayon::prelude::*;

use crate::algebra::{solve_monic_quartic, AffinePoint, C64};
use crate::dynamics::apply_f;
use crate::error::{Error, Result};

/// Maximum tree depth (`4⁸ = 65536` leaves).
pub const MAX_TREE_DEPTH: usize = 8;

/// Distinct vertices of one level must be at least this far apart.
pub const VERTEX_SEPARATION: f64 = 1e-6;

/// Preimages closer than this are reported as near-critical.
pub const NEAR_CRITICAL_SEPARATION: f64 = 1e-8;

const NEWTON_STEPS: usize = 2;

/// The four solutions of `f(z) = w`, in the order of the quartic roots in `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Preimages {
    pub points: [AffinePoint; 4],
    pub min_separation: f64,
    pub max_residual: f64,
}

impl Preimages {
    /// Two preimages nearly coincide: `w` is close to the critical-value curve.
    pub fn near_critical(&self) -> bool {
        self.min_separation < NEAR_CRITICAL_SEPARATION
    }
}

fn image_residual(z: &AffinePoint, w: &AffinePoint) -> f64 {
    apply_f(z).dist(w)
}

/// Newton's method for `f(z) = w` in `C²`; steps that do not lower the
/// residual are discarded.
fn polish_preimage(mut z: AffinePoint, w: &AffinePoint) -> AffinePoint {
    for _ in 0..NEWTON_STEPS {
        let fz = apply_f(&z);
        let (r1, r2) = (fz.x - w.x, fz.y - w.y);
        // Df = [[-2, 2y], [2x, -2]]
        let det = (C64::new(1.0, 0.0) - z.x * z.y) * 4.0;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (-r1 * 2.0 - z.y * r2 * 2.0) / det;
        let dy = (-z.x * r1 * 2.0 - r2 * 2.0) / det;
        let candidate = AffinePoint::new(z.x - dx, z.y - dy);
        if candidate.is_finite() && image_residual(&candidate, w) < image_residual(&z, w) {
            z = candidate;
        } else {
            break;
        }
    }
    z
}

/// Solves `f(z) = w`. Eliminating `x = (y² − w₁)/2` from `x² − 2y = w₂` gives
/// `y⁴ − 2w₁y² − 8y + w₁² − 4w₂ = 0`.
pub fn preimages(w: &AffinePoint) -> Result<Preimages> {
    if !w.is_finite() {
        return Err(Error::InvalidArgument(
            "preimage target must be finite".into(),
        ));
    }
    let zero = C64::new(0.0, 0.0);
    let quartic = solve_monic_quartic(zero, -w.x * 2.0, C64::new(-8.0, 0.0), w.x * w.x - w.y * 4.0);
    let points = quartic
        .roots
        .map(|y| polish_preimage(AffinePoint::new((y * y - w.x) * 0.5, y), w));
    let mut min_separation = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            min_separation = min_separation.min(points[i].dist(&points[j]));
        }
    }
    let max_residual = points
        .iter()
        .map(|z| image_residual(z, w))
        .fold(0.0, f64::max);
    Ok(Preimages {
        points,
        min_separation,
        max_residual,
    })
}

/// Iterated preimages of the basepoint `(0, 0)`.
///
/// Level `k` holds `4^k` vertices. The children of vertex `i` on level `k`
/// are vertices `4i..4i+4` on level `k + 1`, so an index written in base 4
/// is the address word of the vertex, most significant digit first.
#[derive(Clone, Debug, PartialEq)]
pub struct PreimageTree {
    levels: Vec<Vec<AffinePoint>>,
}

impl PreimageTree {
    pub fn basepoint() -> AffinePoint {
        AffinePoint::ORIGIN
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[AffinePoint] {
        &self.levels[k]
    }

    pub fn leaves(&self) -> &[AffinePoint] {
        self.levels.last().expect("level 0 always exists")
    }

    pub fn vertex(&self, level: usize, index: usize) -> AffinePoint {
        self.levels[level][index]
    }

    /// Children of vertex `index` on `level`.
    pub fn children(&self, level: usize, index: usize) -> &[AffinePoint] {
        &self.levels[level + 1][4 * index..4 * index + 4]
    }

    /// Address word of a vertex, digits in `{0, 1, 2, 3}`.
    pub fn address(level: usize, index: usize) -> Vec<u8> {
        (0..level)
            .rev()
            .map(|k| ((index >> (2 * k)) & 3) as u8)
            .collect()
    }

    /// Largest `‖f(child) − parent‖` over the whole tree.
    pub fn max_parent_residual(&self) -> f64 {
        (1..self.levels.len())
            .flat_map(|k| {
                self.levels[k]
                    .iter()
                    .enumerate()
                    .map(move |(i, v)| image_residual(v, &self.levels[k - 1][i / 4]))
            })
            .fold(0.0, f64::max)
    }

    /// Index of the vertex on `level` nearest to `p`, and its distance.
    pub fn nearest(&self, level: usize, p: &AffinePoint) -> (usize, f64) {
        nearest_in(&self.levels[level], p)
    }
}

pub(crate) fn nearest_in(points: &[AffinePoint], p: &AffinePoint) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.dist(p)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty vertex set")
}

pub fn build_tree(depth: usize) -> Result<PreimageTree> {
    if depth > MAX_TREE_DEPTH {
        return Err(Error::InvalidArgument(format!(
            "tree depth {depth} exceeds {MAX_TREE_DEPTH}"
        )));
    }
    let mut levels = vec![vec![PreimageTree::basepoint()]];
    for level in 1..=depth {
        let parents = levels.last().expect("non-empty");
        let families: Vec<Preimages> = parents.par_iter().map(preimages).collect::<Result<_>>()?;
        if let Some(bad) = families
            .iter()
            .find(|f| !(f.min_separation > VERTEX_SEPARATION))
        {
            return Err(Error::VertexCollision {
                level,
                separation: bad.min_separation,
            });
        }
        levels.push(families.iter().flat_map(|f| f.points).collect());
    }
    Ok(PreimageTree { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::omega;

    fn contains(points: &[AffinePoint], p: &AffinePoint, tol: f64) -> bool {
        points.iter().any(|q| q.dist(p) <= tol)
    }

    #[test]
    fn preimages_of_basepoint() {
        let pre = preimages(&AffinePoint::ORIGIN).unwrap();
        let w = omega();
        let want = [
            AffinePoint::ORIGIN,
            AffinePoint::real(2.0, 2.0),
            AffinePoint::new(w * 2.0, w * w * 2.0),
            AffinePoint::new(w * w * 2.0, w * 2.0),
        ];
        for p in &want {
            assert!(contains(&pre.points, p, 1e-12), "missing {p:?}");
        }
        assert!(pre.max_residual <= 1e-10);
        assert!(!pre.near_critical());
    }

    #[test]
    fn preimages_of_two_two() {
        let pre = preimages(&AffinePoint::real(2.0, 2.0)).unwrap();
        let a = AffinePoint::new(C64::new(-1.0, -1.0), C64::new(-1.0, 1.0));
        assert!(contains(&pre.points, &a, 1e-12));
        assert!(contains(&pre.points, &a.swap(), 1e-12));
        assert!(pre.max_residual <= 1e-10);
    }

    #[test]
    fn cusp_preimages_are_flagged() {
        // (3, 3) is a critical value: (-1, -1) on xy = 1 is a double preimage.
        let pre = preimages(&AffinePoint::real(3.0, 3.0)).unwrap();
        assert!(contains(&pre.points, &AffinePoint::real(3.0, 3.0), 1e-10));
        assert!(pre.near_critical());
        assert!(contains(&pre.points, &AffinePoint::real(-1.0, -1.0), 1e-6));
    }

    #[test]
    fn small_trees() {
        let t0 = build_tree(0).unwrap();
        assert_eq!(t0.leaves(), &[AffinePoint::ORIGIN]);

        let t1 = build_tree(1).unwrap();
        let pre = preimages(&AffinePoint::ORIGIN).unwrap();
        assert_eq!(t1.leaves(), &pre.points);

        let t2 = build_tree(2).unwrap();
        assert_eq!(t2.leaves().len(), 16);
        assert!(t2.max_parent_residual() <= 1e-10);
        assert!(build_tree(9).is_err());
    }

    #[test]
    fn addresses_are_base_four_digits() {
        assert_eq!(PreimageTree::address(3, 0b10_01_11), vec![2, 1, 3]);
        assert!(PreimageTree::address(0, 0).is_empty());
    }
}
