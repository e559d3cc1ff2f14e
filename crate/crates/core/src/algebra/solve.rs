use std::cmp::Ordering;

use super::complex::{omega, omega2, C64};
use super::point::AffinePoint;

/// Roots closer than this (in parameter space) are treated as coincident by
/// callers that need a multiplicity decision.
pub const MULTIPLICITY_SEPARATION: f64 = 1e-6;

const POLISH_STEPS: usize = 3;
const ORDERING_GRID: f64 = 1e12;

/// The three roots of a monic cubic with their residuals `|p(t)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicRoots {
    pub roots: [C64; 3],
    pub residuals: [f64; 3],
}

impl CubicRoots {
    pub fn product(&self) -> C64 {
        self.roots.iter().product()
    }

    /// `max_i ||t_i| - 1|`.
    pub fn max_circle_deviation(&self) -> f64 {
        self.roots
            .iter()
            .map(|t| (t.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `min_i ||t_i| - 1|`.
    pub fn min_circle_deviation(&self) -> f64 {
        self.roots
            .iter()
            .map(|t| (t.norm() - 1.0).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_separation(&self) -> f64 {
        min_separation(&self.roots)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// The four roots of a monic quartic with their residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarticRoots {
    pub roots: [C64; 4],
    pub residuals: [f64; 4],
}

impl QuarticRoots {
    pub fn min_separation(&self) -> f64 {
        min_separation(&self.roots)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn min_separation(roots: &[C64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

/// Sort key: lexicographic on `(re, im)` after rounding to a `1e-12` grid.
pub fn ordering_key(a: &C64, b: &C64) -> Ordering {
    let ka = (
        (a.re * ORDERING_GRID).round(),
        (a.im * ORDERING_GRID).round(),
    );
    let kb = (
        (b.re * ORDERING_GRID).round(),
        (b.im * ORDERING_GRID).round(),
    );
    ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
}

/// Horner evaluation of a monic polynomial (coefficients below the leading 1,
/// highest degree first) and its derivative.
fn eval_monic(coeffs: &[C64], t: C64) -> (C64, C64) {
    let mut p = C64::new(1.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * t + p;
        p = p * t + c;
    }
    (p, dp)
}

/// Newton steps on the original polynomial. A step is kept only if it lowers
/// `|p|` and does not jump more than half-way to a neighbouring root, so a
/// cluster of nearby roots is never collapsed onto one of its members.
fn polish(coeffs: &[C64], roots: &mut [C64]) {
    for _ in 0..POLISH_STEPS {
        for i in 0..roots.len() {
            let t = roots[i];
            let (p, dp) = eval_monic(coeffs, t);
            if p.norm() == 0.0 || dp.norm() == 0.0 {
                continue;
            }
            let step = p / dp;
            if !step.is_finite() {
                continue;
            }
            let nearest = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| (r - t).norm())
                .fold(f64::INFINITY, f64::min);
            if step.norm() > 0.5 * nearest {
                continue;
            }
            let candidate = t - step;
            if eval_monic(coeffs, candidate).0.norm() < p.norm() {
                roots[i] = candidate;
            }
        }
    }
}

fn finish<const N: usize>(coeffs: &[C64], mut roots: [C64; N]) -> ([C64; N], [f64; N]) {
    polish(coeffs, &mut roots);
    roots.sort_by(ordering_key);
    let residuals = roots.map(|t| eval_monic(coeffs, t).0.norm());
    (roots, residuals)
}

fn principal_cbrt(w: C64) -> C64 {
    let (r, theta) = w.to_polar();
    C64::from_polar(r.cbrt(), theta / 3.0)
}

/// Cardano seeds for `u^3 + p u + q = 0`.
fn depressed_cubic_seeds(p: C64, q: C64) -> [C64; 3] {
    let half_q = q * 0.5;
    let disc = half_q * half_q + p * p * p / 27.0;
    let sq = disc.sqrt();
    let w = if (-half_q + sq).norm() >= (-half_q - sq).norm() {
        -half_q + sq
    } else {
        -half_q - sq
    };
    let a = principal_cbrt(w);
    if a.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 3];
    }
    let b = -p / (a * 3.0);
    let (w1, w2) = (omega(), omega2());
    [a + b, w1 * a + w2 * b, w2 * a + w1 * b]
}

/// Roots of `t^3 + c2 t^2 + c1 t + c0`: Cardano seeds, Newton-polished,
/// sorted by [`ordering_key`]. Repeated roots are returned as-is.
pub fn solve_monic_cubic(c2: C64, c1: C64, c0: C64) -> CubicRoots {
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = c2 * c2 * c2 * (2.0 / 27.0) - c2 * c1 / 3.0 + c0;
    let seeds = depressed_cubic_seeds(p, q).map(|u| u - shift);
    let (roots, residuals) = finish(&[c2, c1, c0], seeds);
    CubicRoots { roots, residuals }
}

/// Parameters of the three tangent lines of the deltoid through `p`: the
/// roots of `t^3 - x t^2 + y t - 1 = 0`.
pub fn solve_tangent_cubic(p: &AffinePoint) -> CubicRoots {
    solve_monic_cubic(-p.x, p.y, C64::new(-1.0, 0.0))
}

fn quadratic_roots(b: C64, c: C64) -> [C64; 2] {
    let d = (b * b - c * 4.0).sqrt();
    let d = if (b.conj() * d).re >= 0.0 { d } else { -d };
    let q = -(b + d) * 0.5;
    if q.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 2];
    }
    [q, c / q]
}

/// Roots of `t^4 + c3 t^3 + c2 t^2 + c1 t + c0`: Ferrari seeds via the
/// resolvent cubic, Newton-polished, sorted by [`ordering_key`].
pub fn solve_monic_quartic(c3: C64, c2: C64, c1: C64, c0: C64) -> QuarticRoots {
    let shift = c3 / 4.0;
    let c3_2 = c3 * c3;
    let p = c2 - c3_2 * (3.0 / 8.0);
    let q = c1 - c3 * c2 * 0.5 + c3_2 * c3 / 8.0;
    let r = c0 - c3 * c1 / 4.0 + c3_2 * c2 / 16.0 - c3_2 * c3_2 * (3.0 / 256.0);

    let resolvent = solve_monic_cubic(-p * 0.5, -r, p * r * 0.5 - q * q / 8.0);
    let m = resolvent
        .roots
        .iter()
        .copied()
        .max_by(|a, b| (*a * 2.0 - p).norm().total_cmp(&(*b * 2.0 - p).norm()))
        .expect("three resolvent roots");
    let s = (m * 2.0 - p).sqrt();

    let seeds_u = if s.norm() == 0.0 {
        // Biquadratic: u^4 + p u^2 + r = 0.
        let [z1, z2] = quadratic_roots(p, r);
        let (a, b) = (z1.sqrt(), z2.sqrt());
        [a, -a, b, -b]
    } else {
        let k = q / (s * 2.0);
        let [u1, u2] = quadratic_roots(-s, m + k);
        let [u3, u4] = quadratic_roots(s, m - k);
        [u1, u2, u3, u4]
    };
    let seeds = seeds_u.map(|u| u - shift);
    let (roots, residuals) = finish(&[c3, c2, c1, c0], seeds);
    QuarticRoots { roots, residuals }
}
