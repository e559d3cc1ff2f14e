//! File output: binary PPM, SVG, CSV and JSON. All writers are byte-deterministic.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::render::{RasterImage, SliceSpec};
use crate::algebra::{format_real, AffinePoint, C64};
use crate::error::{Error, Result};

/// Header row of point CSV files.
pub const CSV_HEADER: &str = "re_x,im_x,re_y,im_y";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ppm,
    Svg,
    Csv,
    Json,
}

impl Format {
    /// Format named by the file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("ppm") => Ok(Format::Ppm),
            Some("svg") => Ok(Format::Svg),
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!(
                "cannot infer output format from {}",
                path.display()
            ))),
        }
    }
}

/// Something that can be written to disk.
pub enum Artifact<'a> {
    /// A rendered slice, with an optional polyline overlay in slice coordinates.
    Image {
        image: &'a RasterImage,
        spec: &'a SliceSpec,
        overlay: Option<&'a [C64]>,
    },
    /// Points of `C²`.
    Cloud(&'a [AffinePoint]),
    /// A serialized report, already rendered as JSON text.
    Report(String),
}

impl Artifact<'_> {
    pub fn report<T: Serialize>(value: &T) -> Result<Artifact<'static>> {
        Ok(Artifact::Report(json_string(value)?))
    }
}

/// Binary P6 with maxval 255; gray levels replicated over the three channels.
pub fn ppm_bytes(image: &RasterImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    for g in image.gray_bytes() {
        out.extend_from_slice(&[g, g, g]);
    }
    out
}

/// Points as CSV rows with 17 significant digits.
pub fn points_csv(points: &[AffinePoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_real(p.x.re),
            format_real(p.x.im),
            format_real(p.y.re),
            format_real(p.y.im)
        );
    }
    out
}

fn svg_points(points: &[C64]) -> String {
    points
        .iter()
        .map(|z| format!("{},{}", format_real(z.re), format_real(-z.im)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A closed polyline in the plane; the SVG y axis points down, so imaginary
/// parts are negated.
pub fn polyline_svg(points: &[C64], stroke_width: f64) -> String {
    let (mut lo, mut hi) = (C64::new(-1.0, -1.0), C64::new(1.0, 1.0));
    for z in points {
        lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let pad = 0.05 * (hi.re - lo.re).max(hi.im - lo.im);
    let mut out = svg_open(
        lo.re - pad,
        -hi.im - pad,
        hi.re - lo.re + 2.0 * pad,
        hi.im - lo.im + 2.0 * pad,
    );
    if !points.is_empty() {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
            svg_points(points),
            format_real(stroke_width)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn svg_open(x: f64, y: f64, w: f64, h: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"512\" height=\"512\">\n",
        format_real(x),
        format_real(y),
        format_real(w),
        format_real(h)
    )
}

/// A raster as runs of equal-gray rectangles in slice coordinates, with an
/// optional polyline overlay.
pub fn raster_svg(image: &RasterImage, spec: &SliceSpec, overlay: Option<&[C64]>) -> String {
    let h = spec.pixel_size();
    let left = spec.center.re - spec.half_width;
    let top = -(spec.center.im + spec.half_width);
    let side = 2.0 * spec.half_width;
    let mut out = svg_open(left, top, side, side);
    let _ = writeln!(out, "<g shape-rendering=\"crispEdges\">");
    let gray = image.gray_bytes();
    for row in 0..image.height {
        let mut col = 0;
        while col < image.width {
            let g = gray[row * image.width + col];
            let start = col;
            while col < image.width && gray[row * image.width + col] == g {
                col += 1;
            }
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{g:02x}{g:02x}{g:02x}\"/>",
                format_real(left + start as f64 * h),
                format_real(top + row as f64 * h),
                format_real((col - start) as f64 * h),
                format_real(h)
            );
        }
    }
    out.push_str("</g>\n");
    if let Some(points) = overlay.filter(|p| !p.is_empty()) {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"red\" stroke-width=\"{}\"/>",
            svg_points(points),
            format_real(h)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Pretty-printed JSON followed by a newline.
pub fn json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Serializes `artifact` in `format` and writes it to `path`.
pub fn emit(artifact: &Artifact<'_>, path: &Path, format: Format) -> Result<()> {
    let bytes = match (artifact, format) {
        (Artifact::Image { image, .. }, Format::Ppm) => ppm_bytes(image),
        (
            Artifact::Image {
                image,
                spec,
                overlay,
            },
            Format::Svg,
        ) => raster_svg(image, spec, *overlay).into_bytes(),
        (Artifact::Image { image, .. }, Format::Json) => json_string(image)?.into_bytes(),
        (Artifact::Cloud(points), Format::Csv) => points_csv(points).into_bytes(),
        (Artifact::Cloud(points), Format::Svg) => {
            let xs: Vec<C64> = points.iter().map(|p| p.x).collect();
            polyline_svg(&xs, 0.01).into_bytes()
        }
        (Artifact::Cloud(points), Format::Json) => json_string(points)?.into_bytes(),
        (Artifact::Report(text), Format::Json) => text.clone().into_bytes(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{format:?} output is not supported for this artifact"
            )))
        }
    };
    fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
