//! One-variable model of the lifting problem.
//!
//! In the chart `σ_t(s) = (t + s/√t, 1/t + s√t)` of a tangent line, `f` acts
//! as a Chebyshev polynomial: `f(σ_t(s)) = σ_{t'}(ε(s² − 2))` with
//! `t' = 1/t²` and `ε = t·√t' ∈ {±1}`, where `√t'` is the root used by the
//! target chart. Lifting a path in `γ̌(t')` through `f` therefore reduces to
//! continuing `s = ±√(2 + εS)` along the path, one source line per sign.
//! This gives an independent prediction of the 2-D monodromy for any loop
//! contained in a tangent line.

use std::f64::consts::TAU;

use super::loops::LoopPath;
use super::perm::Permutation;
use super::tree::PreimageTree;
use crate::algebra::{principal_sqrt, C64};
use crate::curve::{Branch, LineChart};
use crate::error::{Error, Result};

const RATIO: f64 = 0.25;
const MAX_SUBDIVISIONS: u32 = 12;
const SNAP_TOLERANCE: f64 = 1e-6;
const POSTCRITICAL_CLEARANCE: f64 = 1e-9;

/// One lift of a chart path.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartLift {
    pub s_path: Vec<C64>,
    /// The input path was closed and so is this lift.
    pub closed: bool,
}

/// The two lifts of a chart path that lie in one source line.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceLineLifts {
    /// Principal chart of the source line `γ̌(t)`.
    pub chart: LineChart,
    /// `ε` in `S = ε(s² − 2)`.
    pub sign: f64,
    pub lifts: [ChartLift; 2],
}

/// Winding number of a closed chart path around `center`.
pub fn winding_number(path: &[C64], center: C64) -> i64 {
    let turns: f64 = path
        .windows(2)
        .map(|w| ((w[1] - center) / (w[0] - center)).arg())
        .sum();
    (turns / TAU).round() as i64
}

fn continue_root(a: C64, b: C64, sign: f64, depth: u32, out: &mut Vec<C64>) -> Result<()> {
    let prev = *out.last().expect("continuation starts with a point");
    let root = principal_sqrt(b * sign + 2.0);
    let (near, far) = if (root - prev).norm() <= (root + prev).norm() {
        (root, -root)
    } else {
        (-root, root)
    };
    if (near - prev).norm() <= RATIO * (far - prev).norm() {
        out.push(near);
        return Ok(());
    }
    if depth >= MAX_SUBDIVISIONS {
        return Err(Error::AmbiguousLift { index: out.len() });
    }
    let mid = (a + b) * 0.5;
    continue_root(a, mid, sign, depth + 1, out)?;
    continue_root(mid, b, sign, depth + 1, out)
}

fn lift_chart_path(path: &[C64], sign: f64, start: C64) -> Result<ChartLift> {
    let mut out = vec![start];
    for w in path.windows(2) {
        if w[0] == w[1] {
            out.push(*out.last().expect("non-empty"));
            continue;
        }
        continue_root(w[0], w[1], sign, 0, &mut out)?;
    }
    let end = *out.last().expect("non-empty");
    let input_closed = path.first() == path.last();
    Ok(ChartLift {
        closed: input_closed && (end - start).norm() <= (end + start).norm(),
        s_path: out,
    })
}

/// Lifts a path in the chart `target` of `γ̌(t')` through `f`.
///
/// Returns both source lines `γ̌(t)` with `1/t² = t'`, each carrying the two
/// lifts that start at the two square roots over `path[0]`.
pub fn chebyshev_lift_1d(path: &[C64], target: &LineChart) -> Result<[SourceLineLifts; 2]> {
    if path.is_empty() {
        return Err(Error::InvalidArgument("cannot lift an empty path".into()));
    }
    let two = C64::new(2.0, 0.0);
    if let Some(s) = path
        .iter()
        .find(|s| (*s - two).norm().min((*s + two).norm()) < POSTCRITICAL_CLEARANCE)
    {
        return Err(Error::DegenerateParameter(format!(
            "chart path passes through ±2 at s = {s}"
        )));
    }
    let lines = [1.0, -1.0].map(|sign| -> Result<SourceLineLifts> {
        let chart = LineChart::new(target.root.inv() * sign, Branch::Principal)?;
        let r = principal_sqrt(path[0] * sign + 2.0);
        Ok(SourceLineLifts {
            chart,
            sign,
            lifts: [
                lift_chart_path(path, sign, r)?,
                lift_chart_path(path, sign, -r)?,
            ],
        })
    });
    let [a, b] = lines;
    Ok([a?, b?])
}

/// Monodromy of a loop contained in a tangent line, predicted by iterating
/// [`chebyshev_lift_1d`]. Entry `k − 1` acts on level `k` of `tree`; vertices
/// are identified by nearest match only.
pub fn chebyshev_monodromy_perms(path: &LoopPath, tree: &PreimageTree) -> Result<Vec<Permutation>> {
    let t = path.line_param.ok_or_else(|| {
        Error::InvalidArgument("loop does not lie in a single tangent line".into())
    })?;
    let chart = LineChart::new(t, Branch::Principal)?;
    let s_path: Vec<C64> = path.samples.iter().map(|p| chart.coordinate(p)).collect();

    let mut current = vec![(chart, s_path)];
    let mut out = Vec::with_capacity(tree.depth());
    for level in 1..=tree.depth() {
        let n = tree.level(level).len();
        let mut images = vec![usize::MAX; n];
        let mut next = Vec::with_capacity(n);
        for (chart, s_path) in &current {
            for source in chebyshev_lift_1d(s_path, chart)? {
                for lift in source.lifts {
                    let snap = |s: C64| -> Result<usize> {
                        let (i, distance) = tree.nearest(level, &source.chart.point(s));
                        if !(distance <= SNAP_TOLERANCE) {
                            return Err(Error::EndpointMismatch { distance });
                        }
                        Ok(i)
                    };
                    let start = snap(lift.s_path[0])?;
                    let end = snap(*lift.s_path.last().expect("non-empty"))?;
                    if images[start] != usize::MAX {
                        return Err(Error::CheckFailed(format!(
                            "two chart lifts start at vertex {start} of level {level}"
                        )));
                    }
                    images[start] = end;
                    next.push((source.chart, lift.s_path));
                }
            }
        }
        out.push(Permutation::from_images(images)?);
        current = next;
    }
    Ok(out)
}
