use std::f64::consts::TAU;

use crate::algebra::{omega, omega2, AffinePoint, C64};
use crate::curve::{deltoid_residual, Branch, LineChart};
use crate::error::{Error, Result};

/// Loop samples must keep `|deltoid_residual| ≥` this.
pub const DELTOID_CLEARANCE: f64 = 1e-3;

/// Radius of the generator circles in the chart of `γ̌(1)`.
pub const DEFAULT_LOOP_RADIUS: f64 = 0.5;

pub const DEFAULT_LOOP_SAMPLES: usize = 256;

const MIN_LOOP_SAMPLES: usize = 64;

/// A closed, sampled path in `C² \ D`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopPath {
    /// Closed: the last sample equals the first exactly.
    pub samples: Vec<AffinePoint>,
    /// Tangent parameter `t` when the whole loop lies in `γ̌(t)`.
    pub line_param: Option<C64>,
    /// `+1` for counterclockwise in the line's principal chart.
    pub orientation: i8,
}

impl LoopPath {
    pub fn new(
        samples: Vec<AffinePoint>,
        line_param: Option<C64>,
        orientation: i8,
    ) -> Result<Self> {
        let path = Self {
            samples,
            line_param,
            orientation,
        };
        path.validate()?;
        Ok(path)
    }

    fn validate(&self) -> Result<()> {
        let (Some(first), Some(last)) = (self.samples.first(), self.samples.last()) else {
            return Err(Error::InvalidArgument("empty loop".into()));
        };
        if first != last {
            return Err(Error::InvalidArgument("loop is not closed".into()));
        }
        for (index, p) in self.samples.iter().enumerate() {
            let residual = deltoid_residual(p).norm();
            if !(residual >= DELTOID_CLEARANCE) {
                return Err(Error::TooCloseToDeltoid { index, residual });
            }
        }
        Ok(())
    }

    pub fn basepoint(&self) -> AffinePoint {
        self.samples[0]
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> LoopPath {
        let mut samples = self.samples.clone();
        samples.reverse();
        LoopPath {
            samples,
            line_param: self.line_param,
            orientation: -self.orientation,
        }
    }

    /// `self` followed by `other`; both must share the basepoint.
    pub fn concat(&self, other: &LoopPath) -> Result<LoopPath> {
        if self.basepoint() != other.basepoint() {
            return Err(Error::InvalidArgument(
                "loops have different basepoints".into(),
            ));
        }
        let mut samples = self.samples.clone();
        samples.extend_from_slice(&other.samples[1..]);
        let line_param = match (self.line_param, other.line_param) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(LoopPath {
            samples,
            line_param,
            orientation: if line_param.is_some() {
                self.orientation
            } else {
                0
            },
        })
    }

    /// The constant loop at `p`.
    pub fn constant(p: AffinePoint, n: usize) -> Result<LoopPath> {
        LoopPath::new(vec![p; n.max(2)], None, 0)
    }
}

/// `r(x, y) = (ωx, ω²y)`, a symmetry commuting with `f`.
pub fn rotate(p: &AffinePoint) -> AffinePoint {
    AffinePoint::new(omega() * p.x, omega2() * p.y)
}

/// Generator loop `η_k` based at `(0, 0)`.
///
/// `η₃` lives in the line `y = x = γ̌(1)`. In the chart `s ↦ σ₁(s) = (1 + s, 1 + s)`
/// the basepoint is `s = −1` and the line meets `D` at `s = 2` (the cusp) and
/// `s = −2` (the point `γ(−1)`). The loop runs from `s = −1` along the real
/// axis to the circle `|s + 2| = radius`, once around it counterclockwise,
/// and back. `η₁ = r ∘ η₃` and `η₂ = r² ∘ η₃` lie in `γ̌(ω)` and `γ̌(ω²)`.
pub fn generator_loop(k: u8, radius: f64, n_samples: usize) -> Result<LoopPath> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "generator index {k} not in 1..=3"
        )));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "loop radius must lie in (0, 1), got {radius}"
        )));
    }
    if n_samples < MIN_LOOP_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_LOOP_SAMPLES} samples, got {n_samples}"
        )));
    }
    let n_circle = n_samples / 2;
    let n_leg = (n_samples - n_circle) / 2;
    let start = C64::new(-1.0, 0.0);
    let center = C64::new(-2.0, 0.0);
    let entry = center + radius;

    let mut chart_path = Vec::with_capacity(2 * n_leg + n_circle + 1);
    for j in 0..n_leg {
        chart_path.push(start + (entry - start) * (j as f64 / n_leg as f64));
    }
    for j in 0..n_circle {
        chart_path.push(center + C64::from_polar(radius, TAU * j as f64 / n_circle as f64));
    }
    for j in 0..n_leg {
        chart_path.push(entry + (start - entry) * (j as f64 / n_leg as f64));
    }
    chart_path.push(start);

    let chart = LineChart::new(C64::new(1.0, 0.0), Branch::Principal)?;
    let base: Vec<AffinePoint> = chart_path.iter().map(|&s| chart.point(s)).collect();
    let (samples, line) = match k {
        3 => (base, C64::new(1.0, 0.0)),
        1 => (base.iter().map(rotate).collect(), omega()),
        _ => (base.iter().map(|p| rotate(&rotate(p))).collect(), omega2()),
    };
    LoopPath::new(samples, Some(line), 1)
}
