//! Rasterized slices of `C²` along lines through `[1:0:0]` or `[0:1:0]`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{solve_tangent_cubic, AffinePoint, C64};
use crate::curve::{lambda_alpha, pedal_point};
use crate::dynamics::green_closed;
use crate::error::{Error, Result};

pub const MIN_RESOLUTION: usize = 16;

/// Pixels whose Green value is at most this are counted as lying in `K`.
pub const GREEN_ZERO_TOLERANCE: f64 = 1e-7;

/// Which coordinate varies along the slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Points `(z, ᾱ)`.
    X,
    /// Points `(ᾱ, z)`.
    Y,
}

/// A square window in the slice coordinate `z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub axis: Axis,
    pub alpha: C64,
    pub center: C64,
    pub half_width: f64,
    pub resolution: usize,
}

impl SliceSpec {
    pub fn new(
        axis: Axis,
        alpha: C64,
        center: C64,
        half_width: f64,
        resolution: usize,
    ) -> Result<Self> {
        let spec = Self {
            axis,
            alpha,
            center,
            half_width,
            resolution,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::InvalidArgument(format!(
                "resolution must be at least {MIN_RESOLUTION}, got {}",
                self.resolution
            )));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "half-width must be positive, got {}",
                self.half_width
            )));
        }
        if !(self.alpha.is_finite() && self.center.is_finite()) {
            return Err(Error::InvalidArgument(
                "slice parameters must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Side length of one pixel in slice units.
    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    /// Half the pixel diagonal.
    pub fn default_band(&self) -> f64 {
        self.pixel_size() * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Slice coordinate of the center of pixel (`col`, `row`); row 0 is the top.
    pub fn pixel_center(&self, col: usize, row: usize) -> C64 {
        let h = self.pixel_size();
        C64::new(
            self.center.re - self.half_width + (col as f64 + 0.5) * h,
            self.center.im + self.half_width - (row as f64 + 0.5) * h,
        )
    }

    /// Pixel containing `z`, if inside the window.
    pub fn pixel_of(&self, z: C64) -> Option<(usize, usize)> {
        let h = self.pixel_size();
        let col = ((z.re - self.center.re + self.half_width) / h).floor();
        let row = ((self.center.im + self.half_width - z.im) / h).floor();
        let n = self.resolution as f64;
        (col >= 0.0 && col < n && row >= 0.0 && row < n).then_some((col as usize, row as usize))
    }

    /// The point of `C²` with slice coordinate `z`.
    pub fn point(&self, z: C64) -> AffinePoint {
        match self.axis {
            Axis::X => AffinePoint::new(z, self.alpha.conj()),
            Axis::Y => AffinePoint::new(self.alpha.conj(), z),
        }
    }

    /// Slice coordinate of a point of the slice.
    pub fn coordinate(&self, p: &AffinePoint) -> C64 {
        match self.axis {
            Axis::X => p.x,
            Axis::Y => p.y,
        }
    }
}

/// A square grayscale raster with a boolean mask of marked pixels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the top.
    pub values: Vec<f64>,
    pub marked: Vec<bool>,
    /// Gray level in `[0, 1]` per pixel; marked pixels are drawn black.
    pub shade: Vec<f64>,
}

impl RasterImage {
    pub fn value(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn is_marked(&self, col: usize, row: usize) -> bool {
        self.marked[row * self.width + col]
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// 8-bit gray levels, row-major.
    pub fn gray_bytes(&self) -> Vec<u8> {
        self.shade
            .iter()
            .zip(&self.marked)
            .map(|(&s, &m)| {
                if m {
                    0
                } else {
                    (s.clamp(0.0, 1.0) * 255.0).round() as u8
                }
            })
            .collect()
    }
}

fn evaluate<F>(spec: &SliceSpec, f: F) -> Vec<f64>
where
    F: Fn(&AffinePoint) -> f64 + Sync,
{
    let n = spec.resolution;
    (0..n * n)
        .into_par_iter()
        .map(|k| f(&spec.point(spec.pixel_center(k % n, k / n))))
        .collect()
}

/// `n` pedal points of the real deltoid with respect to `α`, pushed into
/// the slice coordinate by `λ_α`: `z = 2·pedal(α, e^{iθ}) − α`.
pub fn sample_pedal_cloud(alpha: C64, n: usize) -> Result<Vec<C64>> {
    if n < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_RESOLUTION} pedal samples, got {n}"
        )));
    }
    (0..n)
        .map(|k| {
            let t = C64::from_polar(1.0, TAU * k as f64 / n as f64);
            Ok(lambda_alpha(alpha, pedal_point(alpha, t)?).x)
        })
        .collect()
}

/// First-order distance in the slice coordinate from `p` to the Julia set.
///
/// Moving the slice coordinate by `δ` moves a simple root `t` of the tangent
/// cubic `p(t)` by `δ·t²/p'(t)` (x-slices) or `δ·t/p'(t)` (y-slices), so
/// `||t| − 1|` is divided by that rate. Minimized over the roots.
pub fn julia_slice_distance(axis: Axis, p: &AffinePoint) -> f64 {
    solve_tangent_cubic(p)
        .roots
        .iter()
        .map(|&t| {
            let dp = t * t * 3.0 - p.x * t * 2.0 + p.y;
            let rate = match axis {
                Axis::X => (t * t).norm(),
                Axis::Y => t.norm(),
            };
            let deviation = (t.norm() - 1.0).abs();
            if deviation == 0.0 {
                0.0
            } else {
                deviation * dp.norm() / rate
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Marks pixels within `band` (slice units) of `J`.
///
/// Pixel values are [`julia_slice_distance`]; unmarked pixels are shaded by
/// that distance relative to the window's half-width.
pub fn render_julia_slice(spec: &SliceSpec, band: f64) -> Result<RasterImage> {
    spec.validate()?;
    if !(band > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "band must be positive, got {band}"
        )));
    }
    let axis = spec.axis;
    let values = evaluate(spec, |p| julia_slice_distance(axis, p));
    let marked = values.iter().map(|&d| d <= band).collect();
    let shade = values
        .iter()
        .map(|&d| 0.25 + 0.75 * (d / spec.half_width).min(1.0))
        .collect();
    let n = spec.resolution;
    Ok(RasterImage {
        width: n,
        height: n,
        values,
        marked,
        shade,
    })
}

/// Green function over the slice; pixels in `K` are marked.
///
/// Gray level is `G / G_max` with `G_max` the largest value in the window.
pub fn render_green_slice(spec: &SliceSpec) -> Result<RasterImage> {
    spec.validate()?;
    let values = evaluate(spec, green_closed);
    let g_max = values.iter().copied().fold(0.0, f64::max);
    let marked = values.iter().map(|&g| g <= GREEN_ZERO_TOLERANCE).collect();
    let shade = values
        .iter()
        .map(|&g| if g_max > 0.0 { g / g_max } else { 0.0 })
        .collect();
    let n = spec.resolution;
    Ok(RasterImage {
        width: n,
        height: n,
        values,
        marked,
        shade,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{apply_f, green_iterative, GREEN_ESCAPE_RADIUS};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec(alpha: C64, center: C64, half_width: f64, res: usize) -> SliceSpec {
        SliceSpec::new(Axis::X, alpha, center, half_width, res).unwrap()
    }

    #[test]
    fn pedal_cloud_examples() {
        assert!(sample_pedal_cloud(c(0.0, 0.0), 16).unwrap()[0].norm() < 1e-15);
        assert!((sample_pedal_cloud(c(3.0, 0.0), 16).unwrap()[0] - 3.0).norm() < 1e-15);
        assert!(sample_pedal_cloud(c(0.0, 0.0), 15).is_err());
    }

    #[test]
    fn trifolium_has_threefold_symmetry() {
        let cloud = sample_pedal_cloud(c(0.0, 0.0), 360).unwrap();
        let w = crate::algebra::omega();
        // t -> ωt multiplies the pedal point by ω; that is a shift by 120 samples.
        for k in 0..360 {
            assert!((cloud[k] * w - cloud[(k + 120) % 360]).norm() < 1e-9);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(SliceSpec::new(Axis::X, c(0.0, 0.0), c(0.0, 0.0), 1.0, 15).is_err());
        assert!(SliceSpec::new(Axis::X, c(0.0, 0.0), c(0.0, 0.0), 0.0, 16).is_err());
        let s = spec(c(0.0, 0.0), c(0.0, 0.0), 1.0, 16);
        assert!(render_julia_slice(&s, 0.0).is_err());
    }

    #[test]
    fn pixel_geometry_round_trips() {
        let s = spec(c(0.0, 0.0), c(1.0, -2.0), 3.0, 32);
        for (col, row) in [(0, 0), (5, 17), (31, 31)] {
            assert_eq!(s.pixel_of(s.pixel_center(col, row)), Some((col, row)));
        }
        assert_eq!(s.pixel_of(c(100.0, 0.0)), None);
    }

    #[test]
    fn fatou_window_has_no_marked_pixels() {
        let s = spec(c(0.0, 0.0), c(40.0, 40.0), 1.0, 16);
        assert_eq!(
            render_julia_slice(&s, s.default_band())
                .unwrap()
                .marked_count(),
            0
        );
    }

    #[test]
    fn pedal_points_land_in_the_band() {
        let alpha = c(0.0, 0.0);
        let s = spec(alpha, c(0.0, 0.0), 3.5, 128);
        let image = render_julia_slice(&s, s.default_band()).unwrap();
        for z in sample_pedal_cloud(alpha, 720).unwrap() {
            let (col, row) = s.pixel_of(z).unwrap();
            let hit = (col.saturating_sub(1)..=(col + 1).min(127)).any(|i| {
                (row.saturating_sub(1)..=(row + 1).min(127)).any(|j| image.is_marked(i, j))
            });
            assert!(hit, "pedal point {z} not near a marked pixel");
        }
    }

    #[test]
    fn anchor_in_k_is_marked() {
        let alpha = c(0.3, 0.2);
        let s = spec(alpha, alpha, 0.5, 17);
        let image = render_julia_slice(&s, s.default_band()).unwrap();
        assert!(image.is_marked(8, 8));
        let green = render_green_slice(&s).unwrap();
        assert!(green.is_marked(8, 8));
    }

    #[test]
    fn green_slice_far_out_grows_radially() {
        let s = spec(c(0.0, 0.0), c(0.0, 0.0), 1000.0, 16);
        let image = render_green_slice(&s).unwrap();
        assert_eq!(image.marked_count(), 0);
        let corner = image.value(0, 0);
        let inner = image.value(7, 7);
        assert!(corner > inner);
        let p = s.point(s.pixel_center(0, 0));
        let iterative = green_iterative(&p, 25, GREEN_ESCAPE_RADIUS).unwrap();
        assert!((corner - iterative).abs() < 1e-6);
        assert!((corner - p.x.norm().ln()).abs() < 1.0);
    }

    #[test]
    fn green_doubles_under_f() {
        let s = spec(c(1.0, 0.5), c(0.5, 0.0), 2.0, 16);
        for k in 0..100 {
            let p = s.point(s.pixel_center((k * 7) % 16, (k * 3) % 16));
            let g = green_closed(&p);
            assert!((green_closed(&apply_f(&p)) - 2.0 * g).abs() <= 1e-8 * (1.0 + g));
        }
    }

    #[test]
    fn renders_are_deterministic() {
        let s = spec(c(1.0, 1.0), c(0.0, 0.0), 3.0, 64);
        assert_eq!(
            render_julia_slice(&s, 0.05).unwrap(),
            render_julia_slice(&s, 0.05).unwrap()
        );
    }
}
