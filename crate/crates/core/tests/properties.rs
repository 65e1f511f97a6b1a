use mission_core::{euclidean_distance, BoundingBox, LabeledKeypoint, PixelPoint};
use proptest::prelude::*;

fn finite_coord() -> impl Strategy<Value = f64> {
    -1.0e6..1.0e6
}

fn point() -> impl Strategy<Value = PixelPoint> {
    (finite_coord(), finite_coord()).prop_map(|(x, y)| PixelPoint::new(x, y).unwrap())
}

proptest! {
    #[test]
    fn distance_is_symmetric(a in point(), b in point()) {
        prop_assert_eq!(euclidean_distance(a, b), euclidean_distance(b, a));
    }

    #[test]
    fn distance_is_non_negative(a in point(), b in point()) {
        prop_assert!(euclidean_distance(a, b) >= 0.0);
    }

    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        let lhs = euclidean_distance(a, c);
        let rhs = euclidean_distance(a, b) + euclidean_distance(b, c);
        // small epsilon absorbs floating-point rounding on the sum
        prop_assert!(lhs <= rhs + 1e-6 * (1.0 + rhs.abs()));
    }

    #[test]
    fn keypoint_with_bbox_always_contains_point(
        x1 in -100.0..100.0f64,
        y1 in -100.0..100.0f64,
        w in 0.0..50.0f64,
        h in 0.0..50.0f64,
        px in -200.0..200.0f64,
        py in -200.0..200.0f64,
    ) {
        let bbox = BoundingBox::new(x1, y1, x1 + w, y1 + h).unwrap();
        let point = PixelPoint::new(px, py).unwrap();
        match LabeledKeypoint::new("k", point, Some(bbox), None) {
            Ok(kp) => prop_assert!(kp.bbox().unwrap().contains(kp.point())),
            Err(_) => prop_assert!(!bbox.contains(point)),
        }
    }
}
