//! Pixel-space geometry: points, boxes, distances.
//!
//! Coordinates are real-valued with the origin at the top-left corner,
//! x growing rightward and y growing downward. Interpolation along flight
//! segments produces fractional positions; rounding happens only when a
//! raster is actually cropped.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// A real-valued pixel location. Always finite.
///
/// Serializes as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct PixelPoint {
    x: f64,
    y: f64,
}

impl PixelPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, CoreError> {
        if !x.is_finite() {
            return Err(CoreError::NonFinite { what: "x", value: x });
        }
        if !y.is_finite() {
            return Err(CoreError::NonFinite { what: "y", value: y });
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn distance_to(&self, other: PixelPoint) -> f64 {
        euclidean_distance(*self, other)
    }

    /// True when the point falls inside a `width` x `height` raster.
    pub fn in_bounds(&self, width: u32, height: u32) -> bool {
        self.x >= 0.0 && self.x < f64::from(width) && self.y >= 0.0 && self.y < f64::from(height)
    }

    /// Clamp into the valid coordinate range of a `width` x `height` raster.
    pub fn clamped(self, width: u32, height: u32) -> Self {
        Self {
            x: self.x.clamp(0.0, f64::from(width.saturating_sub(1))),
            y: self.y.clamp(0.0, f64::from(height.saturating_sub(1))),
        }
    }
}

impl TryFrom<[f64; 2]> for PixelPoint {
    type Error = CoreError;

    fn try_from(v: [f64; 2]) -> Result<Self, CoreError> {
        Self::new(v[0], v[1])
    }
}

impl From<PixelPoint> for [f64; 2] {
    fn from(p: PixelPoint) -> [f64; 2] {
        [p.x, p.y]
    }
}

impl std::fmt::Display for PixelPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:.1},{:.1})", self.x, self.y)
    }
}

/// Straight-line distance between two pixel locations.
pub fn euclidean_distance(a: PixelPoint, b: PixelPoint) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Linear interpolation between two points.
///
/// `t = 0` yields `a` and `t = 1` yields exactly `b` — the endpoint is
/// returned verbatim rather than recomputed, so segment ends stay exact.
pub fn lerp(a: PixelPoint, b: PixelPoint, t: f64) -> PixelPoint {
    if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        // finite inputs and t in (0,1) keep the result finite
        PixelPoint {
            x: a.x + (b.x - a.x) * t,
            y: a.y + (b.y - a.y) * t,
        }
    }
}

/// An axis-aligned box in pixel space, `(x1,y1)` top-left, `(x2,y2)`
/// bottom-right. Serializes as `[x1, y1, x2, y2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct BoundingBox {
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
}

impl BoundingBox {
    pub fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self, CoreError> {
        for (what, v) in [("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2)] {
            if !v.is_finite() {
                return Err(CoreError::NonFinite { what, value: v });
            }
        }
        if x1 > x2 || y1 > y2 {
            return Err(CoreError::InvalidBox { x1, y1, x2, y2 });
        }
        Ok(Self { x1, y1, x2, y2 })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn center(&self) -> PixelPoint {
        PixelPoint {
            x: (self.x1 + self.x2) / 2.0,
            y: (self.y1 + self.y2) / 2.0,
        }
    }

    /// Inclusive containment check.
    pub fn contains(&self, p: PixelPoint) -> bool {
        p.x >= self.x1 && p.x <= self.x2 && p.y >= self.y1 && p.y <= self.y2
    }

    /// Clamp all corners into the valid coordinate range of a raster.
    pub fn clamped(self, width: u32, height: u32) -> Self {
        let mx = f64::from(width.saturating_sub(1));
        let my = f64::from(height.saturating_sub(1));
        Self {
            x1: self.x1.clamp(0.0, mx),
            y1: self.y1.clamp(0.0, my),
            x2: self.x2.clamp(0.0, mx),
            y2: self.y2.clamp(0.0, my),
        }
    }
}

impl TryFrom<[f64; 4]> for BoundingBox {
    type Error = CoreError;

    fn try_from(v: [f64; 4]) -> Result<Self, CoreError> {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<BoundingBox> for [f64; 4] {
    fn from(b: BoundingBox) -> [f64; 4] {
        [b.x1, b.y1, b.x2, b.y2]
    }
}
