//! The deltoid `D`, its tangent lines `γ̌(t)`, the dual curve, and the
//! Euclidean-plane machinery used for pedal curves.
//!
//! `γ(t) = (2t + t⁻², 2t⁻¹ + t²)` parametrizes `D`; the tangent line at `γ(t)`
//! is `t³ − t²x + ty − 1 = 0`, so a generic point lies on three tangent lines
//! whose parameters multiply to 1.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    principal_sqrt, solve_tangent_cubic, AffinePoint, DualLineCoords, ExtendedComplex,
    ProjectivePoint, C64,
};
use crate::error::{Error, Result};

/// Default tolerance for `|y − x̄|` when testing membership of `E²`.
pub const EUCLIDEAN_TOLERANCE: f64 = 1e-9;

const UNIT_CIRCLE_TOLERANCE: f64 = 1e-9;
const PRODUCT_TOLERANCE: f64 = 1e-9;

fn nonzero(t: C64, what: &str) -> Result<C64> {
    if t.re == 0.0 && t.im == 0.0 {
        return Err(Error::DegenerateParameter(format!("{what}: t = 0")));
    }
    if !t.is_finite() {
        return Err(Error::DegenerateParameter(format!(
            "{what}: t is not finite"
        )));
    }
    Ok(t)
}

/// Parameter of a tangent line `γ̌(t)`; `0` and `∞` only make sense projectively.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentParam(pub ExtendedComplex);

impl TangentParam {
    pub fn affine(self) -> Result<C64> {
        match self.0 {
            ExtendedComplex::Finite(t) => nonzero(t, "affine tangent parameter"),
            ExtendedComplex::Infinity => Err(Error::DegenerateParameter(
                "affine tangent parameter: t = ∞".into(),
            )),
        }
    }
}

pub fn gamma_affine(t: C64) -> Result<AffinePoint> {
    let t = nonzero(t, "gamma")?;
    let inv = t.inv();
    Ok(AffinePoint::new(t * 2.0 + inv * inv, inv * 2.0 + t * t))
}

/// `γ(t) = [2t³ + 1 : 2t + t⁴ : t²]`, with `γ(∞) = [0 : 1 : 0]`.
pub fn gamma_proj(t: ExtendedComplex) -> ProjectivePoint {
    match t {
        ExtendedComplex::Infinity => ProjectivePoint {
            x: C64::new(0.0, 0.0),
            y: C64::new(1.0, 0.0),
            z: C64::new(0.0, 0.0),
        },
        ExtendedComplex::Finite(t) => {
            let t2 = t * t;
            ProjectivePoint {
                x: t2 * t * 2.0 + 1.0,
                y: t * 2.0 + t2 * t2,
                z: t2,
            }
        }
    }
}

/// Line coordinates `[−t² : t : t³ − 1]` of the tangent line `γ̌(t)`.
/// Both `t = 0` and `t = ∞` give the line at infinity.
pub fn dual_line_coords(t: ExtendedComplex) -> DualLineCoords {
    let at_infinity = DualLineCoords {
        a: C64::new(0.0, 0.0),
        b: C64::new(0.0, 0.0),
        c: C64::new(1.0, 0.0),
    };
    match t {
        ExtendedComplex::Infinity => at_infinity,
        ExtendedComplex::Finite(t) if t.re == 0.0 && t.im == 0.0 => at_infinity,
        ExtendedComplex::Finite(t) => DualLineCoords {
            a: -t * t,
            b: t,
            c: t * t * t - 1.0,
        },
    }
}

fn tangent_terms(t: C64, p: &AffinePoint) -> [C64; 4] {
    let t2 = t * t;
    [t2 * t, -t2 * p.x, t * p.y, C64::new(-1.0, 0.0)]
}

/// `|t³ − t²x + ty − 1|`.
pub fn tangent_line_residual(t: C64, p: &AffinePoint) -> f64 {
    tangent_terms(t, p).iter().sum::<C64>().norm()
}

/// [`tangent_line_residual`] divided by the sum of the term moduli.
pub fn tangent_line_relative_residual(t: C64, p: &AffinePoint) -> f64 {
    let terms = tangent_terms(t, p);
    let scale: f64 = terms.iter().map(|c| c.norm()).sum();
    terms.iter().sum::<C64>().norm() / scale
}

fn deltoid_terms(p: &AffinePoint) -> [C64; 5] {
    let (x, y) = (p.x, p.y);
    [
        x * x * y * y,
        -x * x * x * 4.0,
        -y * y * y * 4.0,
        x * y * 18.0,
        C64::new(-27.0, 0.0),
    ]
}

/// `x²y² − 4(x³ + y³) + 18xy − 27`, the discriminant of the tangent cubic.
pub fn deltoid_residual(p: &AffinePoint) -> C64 {
    deltoid_terms(p).iter().sum()
}

/// `|deltoid_residual(p)|` relative to the sum of the term moduli.
pub fn deltoid_relative_residual(p: &AffinePoint) -> f64 {
    let terms = deltoid_terms(p);
    let scale: f64 = terms.iter().map(|c| c.norm()).sum();
    terms.iter().sum::<C64>().norm() / scale
}

/// `a³ + b³ − abc`; vanishes on the dual curve.
pub fn dual_curve_residual(line: &DualLineCoords) -> C64 {
    let (a, b, c) = (line.a, line.b, line.c);
    a * a * a + b * b * b - a * b * c
}

/// The point where the three tangent lines `γ̌(t₁), γ̌(t₂), γ̌(t₃)` meet:
/// `(t₁ + t₂ + t₃, 1/t₁ + 1/t₂ + 1/t₃)`. Requires `t₁t₂t₃ = 1`.
pub fn point_from_tangents(t1: C64, t2: C64, t3: C64) -> Result<AffinePoint> {
    let gap = (t1 * t2 * t3 - 1.0).norm();
    if !(gap <= PRODUCT_TOLERANCE) {
        return Err(Error::ProductNotOne(gap));
    }
    Ok(AffinePoint::new(
        t1 + t2 + t3,
        t1.inv() + t2.inv() + t3.inv(),
    ))
}

/// Which square root of `t` a line chart uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Argument in `(−π/2, π/2]`.
    Principal,
    Negated,
}

/// Affine chart `s ↦ σ_t(s) = (t + s/√t, 1/t + s√t)` of the line `γ̌(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineChart {
    pub t: C64,
    pub root: C64,
}

impl LineChart {
    pub fn new(t: C64, branch: Branch) -> Result<Self> {
        let t = nonzero(t, "line chart")?;
        let r = principal_sqrt(t);
        let root = match branch {
            Branch::Principal => r,
            Branch::Negated => -r,
        };
        Ok(Self { t, root })
    }

    /// Chart with an explicitly chosen square root of `t`.
    pub fn with_root(root: C64) -> Result<Self> {
        let root = nonzero(root, "line chart root")?;
        Ok(Self {
            t: root * root,
            root,
        })
    }

    pub fn point(&self, s: C64) -> AffinePoint {
        AffinePoint::new(self.t + s / self.root, self.t.inv() + s * self.root)
    }

    /// Chart coordinate of a point of the line (exact inverse of [`Self::point`]).
    pub fn coordinate(&self, p: &AffinePoint) -> C64 {
        (p.x - self.t) * self.root
    }
}

/// A point `σ_t(s)` together with the chart that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineChartPoint {
    pub chart: LineChart,
    pub s: C64,
}

impl LineChartPoint {
    pub fn point(&self) -> AffinePoint {
        self.chart.point(self.s)
    }
}

pub fn sigma(t: C64, branch: Branch, s: C64) -> Result<AffinePoint> {
    Ok(LineChart::new(t, branch)?.point(s))
}

/// Residual of property (A): the line through `γ(t)` and `γ(−t)` is tangent
/// to `D` at `γ(1/t²)`. Sums the relative tangent residuals of both points on
/// `γ̌(1/t²)` and the scaled collinearity determinant of the three points.
pub fn property_a_residual(t: C64) -> Result<f64> {
    let t = nonzero(t, "property A")?;
    let p = gamma_affine(t)?;
    let q = gamma_affine(-t)?;
    let u = (t * t).inv();
    let r = gamma_affine(u)?;
    let (a, b) = (p - r, q - r);
    let scale = p.sup_norm().max(q.sup_norm()).max(r.sup_norm()).max(1.0);
    let collinear = (a.x * b.y - a.y * b.x).norm() / (scale * scale);
    Ok(collinear + tangent_line_relative_residual(u, &p) + tangent_line_relative_residual(u, &q))
}

/// Midpoint of `γ(t)` and `γ(−t)`, which equals `(t⁻², t²)` and lies on `xy = 1`.
pub fn property_b_midpoint(t: C64) -> Result<AffinePoint> {
    let t = nonzero(t, "property B")?;
    Ok(gamma_affine(t)?.lerp(&gamma_affine(-t)?, 0.5))
}

/// Intersection of `γ̌(t)` and `γ̌(−t)`, which lies on `xy = 1`.
pub fn property_c_intersection(t: C64) -> Result<AffinePoint> {
    let t = nonzero(t, "property C")?;
    let l1 = dual_line_coords(t.into());
    let l2 = dual_line_coords((-t).into());
    let det = l1.a * l2.b - l2.a * l1.b;
    let scale = (l1.a.norm() + l1.b.norm()) * (l2.a.norm() + l2.b.norm());
    if det.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateParameter(format!(
            "property C: tangent lines at ±t are parallel for t = {t}"
        )));
    }
    let x = (l1.b * l2.c - l2.b * l1.c) / det;
    let y = (l2.a * l1.c - l1.a * l2.c) / det;
    Ok(AffinePoint::new(x, y))
}

/// Foot of the perpendicular from `(α, ᾱ)` to the real line `γ̌(t) ∩ E²`,
/// as a Euclidean coordinate: `½(α + t + ᾱ/t − 1/t²)`.
pub fn pedal_point(alpha: C64, t: C64) -> Result<C64> {
    if !((t.norm() - 1.0).abs() <= UNIT_CIRCLE_TOLERANCE) {
        return Err(Error::NotOnUnitCircle(t.to_string()));
    }
    let inv = t.inv();
    Ok((alpha + t + alpha.conj() * inv - inv * inv) * 0.5)
}

/// Hermitian-orthogonal projection of `C²` onto `E² = {y = x̄}`.
pub fn project_e2(p: &AffinePoint) -> AffinePoint {
    AffinePoint::new((p.x + p.y.conj()) * 0.5, (p.y + p.x.conj()) * 0.5)
}

/// `λ_α(x, x̄) = (2x − α, ᾱ)`: inverse of [`project_e2`] restricted to the
/// horizontal line `y = ᾱ`.
pub fn lambda_alpha(alpha: C64, x: C64) -> AffinePoint {
    AffinePoint::new(x * 2.0 - alpha, alpha.conj())
}

/// Membership in the closed region `K` bounded by the real deltoid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionKVerdict {
    pub inside: bool,
    /// `max_i ||t_i| − 1|` over the tangent-cubic roots.
    pub max_circle_deviation: f64,
    /// `|y − x̄|`.
    pub euclidean_deviation: f64,
}

pub fn region_k(p: &AffinePoint, tol: f64) -> Result<RegionKVerdict> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let deviation = solve_tangent_cubic(p).max_circle_deviation();
    let euclidean = (p.y - p.x.conj()).norm();
    Ok(RegionKVerdict {
        inside: deviation <= tol && euclidean <= tol,
        max_circle_deviation: deviation,
        euclidean_deviation: euclidean,
    })
}

/// Samples the real deltoid `x = 2e^{iθ} + e^{−2iθ}` at `n` uniform angles
/// in `[0, 2π)`, as points `(x, x̄)` of `E²`.
pub fn trace_hypocycloid(n_samples: usize) -> Result<Vec<AffinePoint>> {
    if n_samples < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 samples, got {n_samples}"
        )));
    }
    Ok((0..n_samples)
        .map(|k| {
            let theta = TAU * k as f64 / n_samples as f64;
            let x = C64::from_polar(2.0, theta) + C64::from_polar(1.0, -2.0 * theta);
            AffinePoint::euclidean(x)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{omega, omega2, proj_distance};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r(x: f64) -> C64 {
        c(x, 0.0)
    }

    fn close(a: &AffinePoint, b: &AffinePoint, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_affine(r(1.0)).unwrap(), AffinePoint::real(3.0, 3.0));
        assert_eq!(
            gamma_affine(r(-1.0)).unwrap(),
            AffinePoint::real(-1.0, -1.0)
        );
        assert_eq!(gamma_affine(r(2.0)).unwrap(), AffinePoint::real(4.25, 5.0));
        assert!(matches!(
            gamma_affine(r(0.0)),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn gamma_projective_examples() {
        let at = |p: ProjectivePoint, q: [f64; 3]| {
            proj_distance(&p, &ProjectivePoint::real(q[0], q[1], q[2]).unwrap()) < 1e-15
        };
        assert!(at(gamma_proj(r(0.0).into()), [1.0, 0.0, 0.0]));
        assert!(at(gamma_proj(ExtendedComplex::Infinity), [0.0, 1.0, 0.0]));
        assert!(at(gamma_proj(r(1.0).into()), [3.0, 3.0, 1.0]));
    }

    #[test]
    fn dual_line_examples() {
        let l = dual_line_coords(r(1.0).into());
        assert_eq!((l.a, l.b, l.c), (r(-1.0), r(1.0), r(0.0)));
        let l = dual_line_coords(r(0.0).into());
        assert_eq!((l.a, l.b, l.c), (r(0.0), r(0.0), r(1.0)));
        let l = dual_line_coords(ExtendedComplex::Infinity);
        assert_eq!((l.a, l.b, l.c), (r(0.0), r(0.0), r(1.0)));
        let l = dual_line_coords(c(0.0, 1.0).into());
        assert_eq!((l.a, l.b, l.c), (r(1.0), c(0.0, 1.0), c(-1.0, -1.0)));
    }

    #[test]
    fn tangent_residual_examples() {
        assert_eq!(tangent_line_residual(r(1.0), &AffinePoint::ORIGIN), 0.0);
        assert_eq!(
            tangent_line_residual(r(2.0), &AffinePoint::real(4.25, 5.0)),
            0.0
        );
        assert_eq!(
            tangent_line_residual(r(1.0), &AffinePoint::real(1.0, 0.0)),
            1.0
        );
        for w in [omega(), omega2()] {
            assert!(tangent_line_residual(w, &AffinePoint::ORIGIN) < 1e-15);
        }
    }

    #[test]
    fn deltoid_and_dual_residual_examples() {
        assert_eq!(deltoid_residual(&AffinePoint::real(3.0, 3.0)), r(0.0));
        assert_eq!(deltoid_residual(&AffinePoint::ORIGIN), r(-27.0));
        let node = DualLineCoords::new(r(0.0), r(0.0), r(1.0)).unwrap();
        assert_eq!(dual_curve_residual(&node), r(0.0));
        let l = DualLineCoords::new(r(1.0), r(1.0), r(1.0)).unwrap();
        assert_eq!(dual_curve_residual(&l), r(1.0));
    }

    #[test]
    fn point_from_tangent_examples() {
        let p = point_from_tangents(r(1.0), omega(), omega2()).unwrap();
        assert!(close(&p, &AffinePoint::ORIGIN, 1e-15));
        let p = point_from_tangents(r(2.0), r(2.0), r(0.25)).unwrap();
        assert_eq!(p, AffinePoint::real(4.25, 5.0));
        let p = point_from_tangents(r(1.0), r(1.0), r(1.0)).unwrap();
        assert_eq!(p, AffinePoint::real(3.0, 3.0));
        assert!(matches!(
            point_from_tangents(r(1.0), r(1.0), r(2.0)),
            Err(Error::ProductNotOne(_))
        ));
    }

    #[test]
    fn sigma_examples() {
        let one = r(1.0);
        assert_eq!(
            sigma(one, Branch::Principal, r(-1.0)).unwrap(),
            AffinePoint::ORIGIN
        );
        assert_eq!(
            sigma(one, Branch::Principal, r(2.0)).unwrap(),
            AffinePoint::real(3.0, 3.0)
        );
        let p = sigma(one, Branch::Principal, r(0.0)).unwrap();
        assert_eq!(p, AffinePoint::real(1.0, 1.0));
        assert_eq!(p.x * p.y, one);
        assert!(sigma(r(0.0), Branch::Principal, one).is_err());
    }

    #[test]
    fn chart_points_lie_on_their_line_for_both_branches() {
        for t in [c(0.3, 2.0), c(-1.0, 0.0), c(5.0, -0.1)] {
            for branch in [Branch::Principal, Branch::Negated] {
                let chart = LineChart::new(t, branch).unwrap();
                for s in [c(0.0, 0.0), c(1.5, -2.0), c(-7.0, 0.25)] {
                    let p = chart.point(s);
                    assert!(tangent_line_relative_residual(t, &p) < 1e-14);
                    assert!((chart.coordinate(&p) - s).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn principal_branch_has_nonnegative_real_part() {
        let chart = LineChart::new(r(-1.0), Branch::Principal).unwrap();
        assert_eq!(chart.root, c(0.0, 1.0));
        let chart = LineChart::new(r(4.0), Branch::Negated).unwrap();
        assert_eq!(chart.root, r(-2.0));
    }

    #[test]
    fn property_examples() {
        for t in [r(2.0), c(0.0, 1.0), r(1.0)] {
            assert!(property_a_residual(t).unwrap() < 1e-12, "t = {t}");
        }
        assert_eq!(
            property_b_midpoint(r(1.0)).unwrap(),
            AffinePoint::real(1.0, 1.0)
        );
        assert_eq!(
            property_b_midpoint(r(2.0)).unwrap(),
            AffinePoint::real(0.25, 4.0)
        );
        let m = property_b_midpoint(c(0.0, 1.0)).unwrap();
        assert!(close(&m, &AffinePoint::real(-1.0, -1.0), 1e-15));

        for t in [r(2.0), c(1.0, 1.0), c(0.0, 1.0)] {
            let p = property_c_intersection(t).unwrap();
            assert!((p.x * p.y - 1.0).norm() < 1e-12);
            assert!(tangent_line_residual(t, &p) < 1e-12);
            assert!(tangent_line_residual(-t, &p) < 1e-12);
        }
        // γ̌(i) and γ̌(−i) are not parallel: they meet at (1, 1).
        let p = property_c_intersection(c(0.0, 1.0)).unwrap();
        assert!(close(&p, &AffinePoint::real(1.0, 1.0), 1e-15));
        assert!(property_c_intersection(r(0.0)).is_err());
    }

    #[test]
    fn pedal_examples() {
        assert_eq!(pedal_point(r(0.0), r(1.0)).unwrap(), r(0.0));
        assert_eq!(pedal_point(r(0.0), r(-1.0)).unwrap(), r(-1.0));
        assert_eq!(pedal_point(r(3.0), r(1.0)).unwrap(), r(3.0));
        assert!(matches!(
            pedal_point(r(0.0), r(1.1)),
            Err(Error::NotOnUnitCircle(_))
        ));
    }

    #[test]
    fn projection_and_lambda_examples() {
        let x = c(0.7, -1.3);
        assert_eq!(
            project_e2(&AffinePoint::euclidean(x)),
            AffinePoint::euclidean(x)
        );
        let i = c(0.0, 1.0);
        assert_eq!(project_e2(&AffinePoint::new(i, i)), AffinePoint::ORIGIN);
        assert_eq!(lambda_alpha(r(0.0), r(1.0)), AffinePoint::real(2.0, 0.0));
        let alpha = c(1.0, 1.0);
        assert_eq!(lambda_alpha(alpha, alpha), AffinePoint::euclidean(alpha));
        let back = project_e2(&lambda_alpha(alpha, x));
        assert!((back.x - x).norm() < 1e-15);
    }

    #[test]
    fn projection_preserves_real_tangent_lines() {
        let p = sigma(r(1.0), Branch::Principal, c(0.4, 2.5)).unwrap();
        assert!(tangent_line_residual(r(1.0), &project_e2(&p)) < 1e-14);
    }

    #[test]
    fn region_k_examples() {
        let v = region_k(&AffinePoint::ORIGIN, 1e-9).unwrap();
        assert!(v.inside);
        let v = region_k(&AffinePoint::real(3.0, 3.0), 1e-9).unwrap();
        assert!(v.inside);
        assert!(v.max_circle_deviation < 1e-12);
        let v = region_k(&AffinePoint::real(4.25, 5.0), 1e-9).unwrap();
        assert!(!v.inside);
        assert!((v.max_circle_deviation - 1.0).abs() < 1e-7);
        assert!(region_k(&AffinePoint::ORIGIN, -1.0).is_err());
    }

    #[test]
    fn hypocycloid_examples() {
        let pts = trace_hypocycloid(4).unwrap();
        assert_eq!(pts[0], AffinePoint::real(3.0, 3.0));
        assert!(close(&pts[2], &AffinePoint::real(-1.0, -1.0), 1e-15));
        for p in trace_hypocycloid(360).unwrap() {
            assert!(deltoid_relative_residual(&p) < 1e-14);
        }
        assert!(trace_hypocycloid(2).is_err());
    }
}
