use flight_sim::{interpolate_path, Density, SimConfig};
use mission_core::{euclidean_distance, LabeledKeypoint, PixelPoint};
use proptest::prelude::*;

fn kp(x: f64, y: f64) -> LabeledKeypoint {
    LabeledKeypoint::new("wp", PixelPoint::new(x, y).unwrap(), None, None).unwrap()
}

/// Distance from `p` to the segment `a..b`.
fn dist_to_segment(p: PixelPoint, a: PixelPoint, b: PixelPoint) -> f64 {
    let (ax, ay) = (a.x(), a.y());
    let (bx, by) = (b.x(), b.y());
    let (px, py) = (p.x(), p.y());
    let len2 = (bx - ax).powi(2) + (by - ay).powi(2);
    if len2 == 0.0 {
        return euclidean_distance(p, a);
    }
    let t = (((px - ax) * (bx - ax) + (py - ay) * (by - ay)) / len2).clamp(0.0, 1.0);
    let proj = PixelPoint::new(ax + t * (bx - ax), ay + t * (by - ay)).unwrap();
    euclidean_distance(p, proj)
}

fn dist_to_polyline(p: PixelPoint, pts: &[LabeledKeypoint]) -> f64 {
    if pts.len() == 1 {
        return euclidean_distance(p, pts[0].point());
    }
    pts.windows(2)
        .map(|w| dist_to_segment(p, w[0].point(), w[1].point()))
        .fold(f64::INFINITY, f64::min)
}

fn waypoints() -> impl Strategy<Value = Vec<LabeledKeypoint>> {
    prop::collection::vec((0.0..2048.0f64, 0.0..2048.0f64), 1..10)
        .prop_map(|v| v.into_iter().map(|(x, y)| kp(x, y)).collect())
}

fn density() -> impl Strategy<Value = Density> {
    prop_oneof![
        (1u32..12).prop_map(Density::StepsPerSegment),
        (1.0..200.0f64).prop_map(Density::StepLength),
    ]
}

proptest! {
    #[test]
    fn samples_stay_on_polyline_with_exact_endpoints(
        pts in waypoints(),
        density in density(),
    ) {
        let cfg = SimConfig { density, ..SimConfig::default() };
        let samples = interpolate_path(&pts, &cfg).unwrap();

        prop_assert!(!samples.is_empty());
        prop_assert_eq!(samples[0].position, pts[0].point());
        prop_assert_eq!(
            samples.last().unwrap().position,
            pts.last().unwrap().point()
        );
        for s in &samples {
            prop_assert!(dist_to_polyline(s.position, &pts) <= 0.5);
        }

        // closed-form per-segment count
        let expected: u64 = 1 + pts
            .windows(2)
            .map(|w| flight_sim::path::segment_steps(w[0].point(), w[1].point(), density))
            .sum::<u64>();
        prop_assert_eq!(samples.len() as u64, expected);
    }
}
