//! SVG pictures of axes in the upper half-plane.
//!
//! The geodesic between two real fixed points is the Euclidean half-circle
//! standing on the segment between them; when one fixed point is `∞` it is
//! the vertical ray over the other. Coordinates are written in
//! half-plane units with `y` flipped, and everything is clipped to the
//! viewport rectangle.

use std::fmt::Write;

use lamcf::gl2::BoundaryPoint;
use lamcf::{BigInt, Error, Mat2, Result};
use num_traits::One;

/// Pixel width of the emitted document.
const PIXEL_WIDTH: f64 = 800.0;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub height: f64,
    pub stroke_width: f64,
    pub matrices: Vec<Mat2>,
    /// Also draw the conjugates `Tʲ·m·T⁻ʲ` for `|j| ≤ depth`, with `T = (1 1; 0 1)`.
    pub orbit: Option<u32>,
}

impl RenderSpec {
    pub fn new(x_min: f64, x_max: f64, height: f64) -> Self {
        RenderSpec {
            x_min,
            x_max,
            height,
            stroke_width: 0.02,
            matrices: Vec::new(),
            orbit: None,
        }
    }
}

/// One drawable geodesic.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Geodesic {
    HalfCircle { center: f64, radius: f64 },
    Vertical { x: f64 },
}

/// The geodesic joining the fixed points of `m`. Determinant +1 matrices
/// must be hyperbolic; determinant −1 matrices always have two boundary
/// fixed points (the axis of a glide, or the mirror of a reflection).
pub fn geodesic(m: &Mat2) -> Result<Geodesic> {
    let trace = m.trace();
    if m.det().is_one() && trace.magnitude() <= &2u32.into() {
        return Err(Error::NotHyperbolic(trace.to_string()));
    }
    let points = m.fixed_points()?;
    let finite: Vec<f64> = points
        .iter()
        .filter(|p| **p != BoundaryPoint::Infinity)
        .map(|p| p.to_f64())
        .collect();
    Ok(match finite.as_slice() {
        [x] => Geodesic::Vertical { x: *x },
        [lo, hi] => Geodesic::HalfCircle {
            center: (lo + hi) / 2.0,
            radius: (hi - lo).abs() / 2.0,
        },
        _ => unreachable!("two distinct boundary fixed points"),
    })
}

fn conjugates(m: &Mat2, depth: Option<u32>) -> Vec<Mat2> {
    let Some(depth) = depth else {
        return vec![m.clone()];
    };
    let depth = depth as i64;
    (-depth..=depth)
        .map(|j| {
            let t = Mat2::translation(BigInt::from(j));
            &(&t * m) * &t.inverse()
        })
        .collect()
}

fn num(x: f64) -> String {
    // fixed precision keeps the bytes stable; avoid "-0.000000"
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders the picture as an SVG 1.1 document.
pub fn render_axes(spec: &RenderSpec) -> Result<String> {
    let (x0, x1, h) = (spec.x_min, spec.x_max, spec.height);
    if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
        return Err(Error::Parse(format!(
            "viewport needs x_min < x_max, got [{x0}, {x1}]"
        )));
    }
    if !(h.is_finite() && h > 0.0) || !(spec.stroke_width.is_finite() && spec.stroke_width > 0.0) {
        return Err(Error::Parse(
            "height and stroke width must be positive".into(),
        ));
    }
    let mut shapes = Vec::new();
    for m in &spec.matrices {
        for c in conjugates(m, spec.orbit) {
            shapes.push(geodesic(&c)?);
        }
    }

    let w = x1 - x0;
    let pixel_height = (PIXEL_WIDTH * h / w).round().max(1.0);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        PIXEL_WIDTH,
        pixel_height,
        num(x0),
        num(-h),
        num(w),
        num(h)
    );
    let _ = writeln!(
        out,
        "<defs><clipPath id=\"viewport\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
        num(x0),
        num(-h),
        num(w),
        num(h)
    );
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"0.000000\" x2=\"{}\" y2=\"0.000000\" stroke=\"gray\" stroke-width=\"{}\"/>",
        num(x0),
        num(x1),
        num(spec.stroke_width)
    );
    let _ = writeln!(
        out,
        "<g clip-path=\"url(#viewport)\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\">",
        num(spec.stroke_width)
    );
    for shape in shapes {
        match shape {
            Geodesic::HalfCircle { center, radius } => {
                let _ = writeln!(
                    out,
                    "<path d=\"M {} 0 A {} {} 0 0 1 {} 0\"/>",
                    num(center - radius),
                    num(radius),
                    num(radius),
                    num(center + radius)
                );
            }
            Geodesic::Vertical { x } => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"0.000000\" x2=\"{}\" y2=\"{}\"/>",
                    num(x),
                    num(x),
                    num(-h)
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
