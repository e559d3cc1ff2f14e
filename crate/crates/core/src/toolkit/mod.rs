//! Rendering, file output and the verification suites behind the CLI.

pub mod emit;
pub mod render;
pub mod verify;

pub use emit::{
    emit, json_string, points_csv, polyline_svg, ppm_bytes, raster_svg, Artifact, Format,
    CSV_HEADER,
};
pub use render::{
    julia_slice_distance, render_green_slice, render_julia_slice, sample_pedal_cloud, Axis,
    RasterImage, SliceSpec, GREEN_ZERO_TOLERANCE, MIN_RESOLUTION,
};
pub use verify::{run_suite, tree_consistency, Check, Suite, SuiteReport};
