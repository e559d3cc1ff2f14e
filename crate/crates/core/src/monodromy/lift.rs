use rayon::prelude::*;

use super::loops::LoopPath;
use super::perm::Permutation;
use super::tree::{nearest_in, preimages, PreimageTree};
use crate::algebra::AffinePoint;
use crate::dynamics::apply_f;
use crate::error::{Error, Result};

/// A step is accepted when the nearest preimage is at most this fraction of
/// the distance to the second nearest.
pub const AMBIGUITY_RATIO: f64 = 0.25;

/// Maximum number of times a path segment is halved.
pub const MAX_SUBDIVISIONS: u32 = 12;

/// Lifted endpoints must land this close to a tree vertex.
pub const ENDPOINT_TOLERANCE: f64 = 1e-6;

const START_TOLERANCE: f64 = 1e-8;

fn lift_segment(
    a: &AffinePoint,
    b: &AffinePoint,
    depth: u32,
    index: usize,
    out: &mut Vec<AffinePoint>,
) -> Result<()> {
    let prev = *out.last().expect("lift starts with a point");
    let candidates = preimages(b)?;
    let dist = candidates.points.map(|z| z.dist(&prev));
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| dist[i].total_cmp(&dist[j]));
    let (best, second) = (dist[order[0]], dist[order[1]]);
    if best <= AMBIGUITY_RATIO * second {
        out.push(candidates.points[order[0]]);
        return Ok(());
    }
    if depth >= MAX_SUBDIVISIONS {
        return Err(Error::AmbiguousLift { index });
    }
    let mid = a.lerp(b, 0.5);
    lift_segment(a, &mid, depth + 1, index, out)?;
    lift_segment(&mid, b, depth + 1, index, out)
}

/// Lifts the polyline `path` through `f`, starting at `start ∈ f⁻¹(path[0])`.
///
/// Each new sample is matched to the preimage nearest to the previous lifted
/// point; a segment whose match is ambiguous is halved until it is not. The
/// result contains every accepted point, so it may be longer than `path`.
pub fn lift_path(path: &[AffinePoint], start: AffinePoint) -> Result<Vec<AffinePoint>> {
    let Some(first) = path.first() else {
        return Err(Error::InvalidArgument("cannot lift an empty path".into()));
    };
    let gap = apply_f(&start).dist(first);
    if !(gap <= START_TOLERANCE * (1.0 + first.sup_norm())) {
        return Err(Error::NotAPreimage(gap));
    }
    let mut out = Vec::with_capacity(path.len());
    out.push(start);
    for (index, w) in path.windows(2).enumerate() {
        if w[0] == w[1] {
            out.push(*out.last().expect("non-empty"));
            continue;
        }
        lift_segment(&w[0], &w[1], 0, index + 1, &mut out)?;
    }
    Ok(out)
}

/// Lifts of a loop through `f`, `f²`, …, `fⁿ`, one level at a time.
///
/// Level `k` holds one path per level-`k` vertex, starting at that vertex;
/// each is the lift through `f` of its parent's level-`k−1` path. Paths end
/// exactly on a tree vertex.
struct LevelLifts {
    paths: Vec<Vec<AffinePoint>>,
    perm: Permutation,
}

fn next_level(tree: &PreimageTree, level: usize, parent: &LevelLifts) -> Result<LevelLifts> {
    let children = tree.level(level);
    let lifted: Vec<(usize, Vec<AffinePoint>)> = (0..children.len())
        .into_par_iter()
        .map(|c| {
            let i = c / 4;
            let mut path = lift_path(&parent.paths[i], children[c])?;
            let target = parent.perm.apply(i);
            let block = &children[4 * target..4 * target + 4];
            let end = *path.last().expect("non-empty lift");
            let (j, distance) = nearest_in(block, &end);
            if !(distance <= ENDPOINT_TOLERANCE) {
                return Err(Error::EndpointMismatch { distance });
            }
            *path.last_mut().expect("non-empty") = block[j];
            Ok((4 * target + j, path))
        })
        .collect::<Result<_>>()?;
    let (images, paths): (Vec<usize>, Vec<_>) = lifted.into_iter().unzip();
    Ok(LevelLifts {
        paths,
        perm: Permutation::from_images(images)?,
    })
}

/// Monodromy permutations of `path` on levels `1..=tree.depth()`.
///
/// Entry `k − 1` is the permutation of the `4^k` level-`k` vertices.
pub fn monodromy_perms(path: &LoopPath, tree: &PreimageTree) -> Result<Vec<Permutation>> {
    if tree.depth() < 1 {
        return Err(Error::InvalidArgument(
            "tree depth must be at least 1".into(),
        ));
    }
    if path.basepoint() != PreimageTree::basepoint() {
        return Err(Error::InvalidArgument(
            "loop must be based at the tree root".into(),
        ));
    }
    let mut current = LevelLifts {
        paths: vec![path.samples.clone()],
        perm: Permutation::identity(1),
    };
    let mut out = Vec::with_capacity(tree.depth());
    for level in 1..=tree.depth() {
        current = next_level(tree, level, &current)?;
        out.push(current.perm.clone());
    }
    Ok(out)
}

/// Monodromy permutation of `path` on the leaves of `tree`.
pub fn monodromy_perm(path: &LoopPath, tree: &PreimageTree) -> Result<Permutation> {
    Ok(monodromy_perms(path, tree)?
        .pop()
        .expect("at least one level"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::omega;
    use crate::monodromy::loops::{generator_loop, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES};
    use crate::monodromy::tree::build_tree;

    fn eta(k: u8) -> LoopPath {
        generator_loop(k, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES).unwrap()
    }

    #[test]
    fn eta3_swaps_origin_and_two_two() {
        let lift = lift_path(&eta(3).samples, AffinePoint::ORIGIN).unwrap();
        assert!(lift.last().unwrap().dist(&AffinePoint::real(2.0, 2.0)) < 1e-9);

        let w = omega();
        let fixed = AffinePoint::new(w * 2.0, w * w * 2.0);
        let lift = lift_path(&eta(3).samples, fixed).unwrap();
        assert!(lift.last().unwrap().dist(&fixed) < 1e-9);
    }

    #[test]
    fn constant_path_lifts_to_constant() {
        let p = AffinePoint::real(2.0, 2.0);
        let path = LoopPath::constant(AffinePoint::ORIGIN, 10).unwrap();
        let lift = lift_path(&path.samples, p).unwrap();
        assert!(lift.iter().all(|q| *q == p));
    }

    #[test]
    fn start_must_be_a_preimage() {
        assert!(matches!(
            lift_path(&eta(3).samples, AffinePoint::real(1.0, 0.0)),
            Err(Error::NotAPreimage(_))
        ));
    }

    #[test]
    fn depth_one_transposition() {
        let tree = build_tree(1).unwrap();
        let perm = monodromy_perm(&eta(3), &tree).unwrap();
        let (a, _) = tree.nearest(1, &AffinePoint::ORIGIN);
        let (b, _) = tree.nearest(1, &AffinePoint::real(2.0, 2.0));
        let mut want: Vec<usize> = (0..4).collect();
        want.swap(a, b);
        assert_eq!(perm.images(), want.as_slice());
    }
}
