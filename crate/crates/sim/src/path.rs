use mission_core::{euclidean_distance, lerp, LabeledKeypoint, PixelPoint};

use crate::config::{Density, SimConfig};
use crate::error::SimError;

/// One interpolated flight position with the label of the waypoint the
/// vehicle is flying toward.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub position: PixelPoint,
    pub label: String,
}

/// Interpolate a waypoint sequence into flight positions.
///
/// The first waypoint is emitted once at the start carrying its own
/// label. For each consecutive pair `(a, b)` the positions
/// `a + (k/n)(b - a)` for `k = 1..=n` follow, labelled with `b`'s label,
/// where `n` comes from the density policy. Shared segment endpoints are
/// emitted once: each segment starts at `k = 1`, never re-emitting `a`.
pub fn interpolate_path(
    waypoints: &[LabeledKeypoint],
    config: &SimConfig,
) -> Result<Vec<PathSample>, SimError> {
    if waypoints.is_empty() {
        return Err(SimError::EmptyPath);
    }
    let mut samples = Vec::with_capacity(waypoints.len());
    samples.push(PathSample {
        position: waypoints[0].point(),
        label: waypoints[0].label().to_string(),
    });
    for pair in waypoints.windows(2) {
        let (a, b) = (pair[0].point(), pair[1].point());
        let n = segment_steps(a, b, config.density);
        for k in 1..=n {
            samples.push(PathSample {
                position: lerp(a, b, k as f64 / n as f64),
                label: pair[1].label().to_string(),
            });
        }
    }
    Ok(samples)
}

/// Closed-form step count for one segment under a density policy.
pub fn segment_steps(a: PixelPoint, b: PixelPoint, density: Density) -> u64 {
    match density {
        Density::StepsPerSegment(s) => u64::from(s.max(1)),
        Density::StepLength(len) => {
            let d = euclidean_distance(a, b);
            ((d / len).ceil() as u64).max(1)
        }
    }
}
