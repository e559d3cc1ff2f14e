//! The deltoid map on `C²`, `CP²` and the line at infinity, together with its
//! Green function, Julia set and Fatou coordinates.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    proj_distance, solve_tangent_cubic, AffinePoint, ExtendedComplex, ProjectivePoint, C64,
};
use crate::curve::gamma_proj;
use crate::error::{Error, Result};

/// Escape radius for [`orbit`].
pub const ORBIT_ESCAPE_RADIUS: f64 = 1e3;

/// Norms beyond this are not iterated further; the remaining doublings of
/// `log ‖fⁿ(p)‖` are exact in log space.
pub const OVERFLOW_GUARD: f64 = 1e100;

/// Default stopping radius for [`green_iterative`].
pub const GREEN_ESCAPE_RADIUS: f64 = OVERFLOW_GUARD;

/// `f(x, y) = (y² − 2x, x² − 2y)`.
pub fn apply_f(p: &AffinePoint) -> AffinePoint {
    AffinePoint::new(p.y * p.y - p.x * 2.0, p.x * p.x - p.y * 2.0)
}

/// `[x : y : z] ↦ [y² − 2xz : x² − 2yz : z²]`.
pub fn apply_f_proj(p: &ProjectivePoint) -> ProjectivePoint {
    let (x, y, z) = (p.x, p.y, p.z);
    ProjectivePoint {
        x: y * y - x * z * 2.0,
        y: x * x - y * z * 2.0,
        z: z * z,
    }
}

/// `ζ ↦ 1/ζ²` on the Riemann sphere.
fn recip_square(z: ExtendedComplex) -> ExtendedComplex {
    match z {
        ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z * z).recip(),
        ExtendedComplex::Infinity => ExtendedComplex::Finite(C64::new(0.0, 0.0)),
    }
}

/// The map on the line at infinity in the coordinate `ζ = y/x`.
pub fn apply_f_infinity(zeta: ExtendedComplex) -> ExtendedComplex {
    recip_square(zeta)
}

/// Action on tangent lines: `γ̌(t) ↦ γ̌(1/t²)`.
pub fn dual_f(t: ExtendedComplex) -> ExtendedComplex {
    recip_square(t)
}

/// Parameter `1/t²` of `f(γ(t))`, after checking `f(γ(t)) = γ(1/t²)` in `CP²`.
pub fn deltoid_self_map(t: C64) -> Result<ExtendedComplex> {
    if t.re == 0.0 && t.im == 0.0 {
        return Err(Error::DegenerateParameter("deltoid self-map: t = 0".into()));
    }
    let image = dual_f(t.into());
    let lhs = apply_f_proj(&gamma_proj(t.into()));
    let rhs = gamma_proj(image);
    let gap = proj_distance(&lhs, &rhs);
    if !(gap <= 1e-8) {
        return Err(Error::CheckFailed(format!(
            "f(γ(t)) differs from γ(1/t²) by {gap:e} at t = {t}"
        )));
    }
    Ok(image)
}

/// `det Df(x, y) = 4(1 − xy)`.
pub fn jacobian_det(p: &AffinePoint) -> C64 {
    (C64::new(1.0, 0.0) - p.x * p.y) * 4.0
}

/// `f(t, 1/t)`: the image of the critical conic, equal to `γ(−t)`.
pub fn critical_image(t: C64) -> Result<AffinePoint> {
    if t.re == 0.0 && t.im == 0.0 {
        return Err(Error::DegenerateParameter("critical image: t = 0".into()));
    }
    Ok(apply_f(&AffinePoint::new(t, t.inv())))
}

/// Closed-form Green function `log max{|tᵢ|, 1/|tᵢ|}` over the tangent-cubic roots.
pub fn green_closed(p: &AffinePoint) -> f64 {
    solve_tangent_cubic(p)
        .roots
        .iter()
        .map(|t| t.norm().ln().abs())
        .fold(0.0, f64::max)
}

/// `2⁻ⁿ log⁺ ‖fⁿ(p)‖∞`. Iteration stops once the sup-norm exceeds
/// `escape_radius` (capped at [`OVERFLOW_GUARD`]); from there on
/// `G(f(q)) = 2G(q)` makes the remaining steps exact in log space.
pub fn green_iterative(p: &AffinePoint, n: u32, escape_radius: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("need at least one iteration".into()));
    }
    if !(escape_radius > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "escape radius must exceed 1, got {escape_radius}"
        )));
    }
    let radius = escape_radius.min(OVERFLOW_GUARD);
    let mut q = *p;
    let mut scale = 1.0;
    for _ in 0..n {
        q = apply_f(&q);
        scale *= 0.5;
        let norm = q.sup_norm();
        if norm > radius {
            return Ok(norm.ln() * scale);
        }
    }
    Ok(q.sup_norm().ln().max(0.0) * scale)
}

/// Distance of a point from the Julia set, measured two ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JuliaVerdict {
    /// `min_i ||t_i| − 1|` over the tangent-cubic roots.
    pub distance_to_circle: f64,
    /// `2 Re (x − ȳ)³ + Re (x − ȳ)²(x̄² − y²)`.
    pub quartic_residual: f64,
    /// Largest coordinate modulus, floored at 1.
    pub scale: f64,
}

impl JuliaVerdict {
    /// Quartic residual divided by `scale⁴`.
    pub fn normalized_quartic_residual(&self) -> f64 {
        self.quartic_residual / self.scale.powi(4)
    }
}

/// Left side of the real quartic equation of `J` in `C²`.
pub fn julia_quartic(p: &AffinePoint) -> f64 {
    let d = p.x - p.y.conj();
    let d2 = d * d;
    2.0 * (d2 * d).re + (d2 * (p.x.conj() * p.x.conj() - p.y * p.y)).re
}

pub fn julia_verdict(p: &AffinePoint) -> JuliaVerdict {
    JuliaVerdict {
        distance_to_circle: solve_tangent_cubic(p).min_circle_deviation(),
        quartic_residual: julia_quartic(p),
        scale: p.sup_norm().max(1.0),
    }
}

/// `Ψx(u, v) = [u²v + uv² + 1 : u + v + u²v² : uv]`.
pub fn psi_x(u: C64, v: C64) -> ProjectivePoint {
    let uv = u * v;
    ProjectivePoint {
        x: uv * (u + v) + 1.0,
        y: u + v + uv * uv,
        z: uv,
    }
}

/// `Ψy(u, v) = [u + v + u²v² : u²v + uv² + 1 : uv]`.
pub fn psi_y(u: C64, v: C64) -> ProjectivePoint {
    let p = psi_x(u, v);
    ProjectivePoint {
        x: p.y,
        y: p.x,
        z: p.z,
    }
}

/// Projective gaps in `f ∘ Ψx = Ψy ∘ sq` and `f ∘ Ψy = Ψx ∘ sq`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatouResiduals {
    pub x_to_y: f64,
    pub y_to_x: f64,
}

impl FatouResiduals {
    pub fn max(&self) -> f64 {
        self.x_to_y.max(self.y_to_x)
    }
}

pub fn fatou_functional_check(u: C64, v: C64) -> FatouResiduals {
    let (u2, v2) = (u * u, v * v);
    FatouResiduals {
        x_to_y: proj_distance(&apply_f_proj(&psi_x(u, v)), &psi_y(u2, v2)),
        y_to_x: proj_distance(&apply_f_proj(&psi_y(u, v)), &psi_x(u2, v2)),
    }
}

/// Projective gap in `Ψx(1/u, 1/v) = Ψy(u, v)`.
pub fn psi_inversion_residual(u: C64, v: C64) -> Result<f64> {
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(proj_distance(&psi_x(u.inv(), v.inv()), &psi_y(u, v)))
}

/// A truncated forward orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub points: Vec<AffinePoint>,
    pub escaped: bool,
    pub escape_index: Option<usize>,
}

/// Iterates `f` up to `n_max` times, stopping at the first point whose
/// sup-norm exceeds `escape_radius`.
pub fn orbit(p: &AffinePoint, n_max: usize, escape_radius: f64) -> OrbitRecord {
    let mut points = Vec::with_capacity(n_max + 1);
    let mut q = *p;
    for k in 0..=n_max {
        points.push(q);
        if q.sup_norm() > escape_radius {
            return OrbitRecord {
                points,
                escaped: true,
                escape_index: Some(k),
            };
        }
        if k < n_max {
            q = apply_f(&q);
        }
    }
    OrbitRecord {
        points,
        escaped: false,
        escape_index: None,
    }
}

/// Machine-readable summary of one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub point: [f64; 4],
    pub green: f64,
    pub julia_distance: f64,
    pub quartic_residual: f64,
}

impl VerdictReport {
    pub fn for_point(p: &AffinePoint) -> Self {
        let verdict = julia_verdict(p);
        Self {
            point: [p.x.re, p.x.im, p.y.re, p.y.im],
            green: green_closed(p),
            julia_distance: verdict.distance_to_circle,
            quartic_residual: verdict.quartic_residual,
        }
    }
}
