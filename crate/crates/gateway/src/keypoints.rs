//! Mapping of grounding-model output onto `LabeledKeypoint`s.
//!
//! Grounding models emit several near-equivalent schemas; the accepted
//! shapes are `{label, point: [x,y]}`, `{label, point_2d: [x,y]}` and
//! `{label, bbox_2d: [x1,y1,x2,y2]}` (point taken as the box center),
//! each optionally carrying `probability` or `fire_probability`.
//! Elements matching no shape are dropped and counted rather than
//! failing the whole batch; coordinates are clamped into image bounds.

use mission_core::{BoundingBox, LabeledKeypoint, PixelPoint, SceneImage};
use serde_json::Value;

use crate::error::GatewayError;

/// Parsed keypoints plus how many elements were dropped as unparseable.
#[derive(Debug, Clone)]
pub struct KeypointParse {
    pub keypoints: Vec<LabeledKeypoint>,
    pub dropped: usize,
}

/// Interpret a structured value as a list of grounded keypoints.
///
/// Returns `EmptyResult` when nothing could be parsed, signalling the
/// agent loop to re-query rather than crash.
pub fn parse_keypoints(value: &Value, image: &SceneImage) -> Result<KeypointParse, GatewayError> {
    let Some(items) = value.as_array() else {
        return Err(GatewayError::EmptyResult);
    };
    let mut keypoints = Vec::new();
    let mut dropped = 0usize;
    for item in items {
        match parse_one(item, image) {
            Some(kp) => keypoints.push(kp),
            None => dropped += 1,
        }
    }
    if keypoints.is_empty() {
        return Err(GatewayError::EmptyResult);
    }
    Ok(KeypointParse { keypoints, dropped })
}

fn parse_one(item: &Value, image: &SceneImage) -> Option<LabeledKeypoint> {
    let obj = item.as_object()?;
    let label = obj.get("label")?.as_str()?;
    if label.is_empty() {
        return None;
    }
    let probability = obj
        .get("probability")
        .or_else(|| obj.get("fire_probability"))
        .and_then(Value::as_f64)
        .map(|p| p.clamp(0.0, 1.0));

    let (w, h) = (image.width(), image.height());
    let explicit_point = pair(obj.get("point")).or_else(|| pair(obj.get("point_2d")));
    let bbox = quad(obj.get("bbox_2d"))
        .and_then(|[x1, y1, x2, y2]| BoundingBox::new(x1, y1, x2, y2).ok())
        .map(|b| b.clamped(w, h));

    match (explicit_point, bbox) {
        (Some((x, y)), bbox) => {
            let point = PixelPoint::new(x, y).ok()?.clamped(w, h);
            // a box that no longer contains the clamped point is dropped,
            // the point itself is the grounding atom
            let bbox = bbox.filter(|b| b.contains(point));
            LabeledKeypoint::new(label, point, bbox, probability).ok()
        }
        (None, Some(bbox)) => {
            let point = bbox.center().clamped(w, h);
            LabeledKeypoint::new(label, point, Some(bbox), probability).ok()
        }
        (None, None) => None,
    }
}

fn pair(v: Option<&Value>) -> Option<(f64, f64)> {
    let arr = v?.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    Some((arr[0].as_f64()?, arr[1].as_f64()?))
}

fn quad(v: Option<&Value>) -> Option<[f64; 4]> {
    let arr = v?.as_array()?;
    if arr.len() != 4 {
        return None;
    }
    Some([
        arr[0].as_f64()?,
        arr[1].as_f64()?,
        arr[2].as_f64()?,
        arr[3].as_f64()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::RgbImage;
    use serde_json::json;

    fn image_100() -> SceneImage {
        SceneImage::new("img", RgbImage::new(100, 100)).unwrap()
    }

    #[test]
    fn direct_point_with_probability() {
        let v = json!([{"label": "fire", "point": [50, 60], "probability": 0.9}]);
        let got = parse_keypoints(&v, &image_100()).unwrap();
        assert_eq!(got.keypoints.len(), 1);
        assert_eq!(got.dropped, 0);
        let kp = &got.keypoints[0];
        assert_eq!(kp.point(), PixelPoint::new(50.0, 60.0).unwrap());
        assert_eq!(kp.fire_probability(), Some(0.9));
    }

    #[test]
    fn bbox_maps_to_center() {
        let v = json!([{"label": "barn", "bbox_2d": [10, 10, 30, 50]}]);
        let got = parse_keypoints(&v, &image_100()).unwrap();
        let kp = &got.keypoints[0];
        assert_eq!(kp.point(), PixelPoint::new(20.0, 30.0).unwrap());
        assert_eq!(
            kp.bbox().unwrap(),
            BoundingBox::new(10.0, 10.0, 30.0, 50.0).unwrap()
        );
    }

    #[test]
    fn out_of_bounds_points_are_clamped() {
        let v = json!([{"label": "x", "point": [150, 20]}]);
        let got = parse_keypoints(&v, &image_100()).unwrap();
        assert_eq!(got.keypoints[0].point(), PixelPoint::new(99.0, 20.0).unwrap());
    }

    #[test]
    fn unknown_shapes_are_dropped_and_counted() {
        let v = json!([
            {"label": "ok", "point_2d": [5, 5]},
            {"label": "no coordinates"},
            {"point": [1, 2]},
            "not an object",
        ]);
        let got = parse_keypoints(&v, &image_100()).unwrap();
        assert_eq!(got.keypoints.len(), 1);
        assert_eq!(got.dropped, 3);
    }

    #[test]
    fn nothing_parseable_is_empty_result() {
        let v = json!([{"label": "?"}]);
        assert!(matches!(
            parse_keypoints(&v, &image_100()),
            Err(GatewayError::EmptyResult)
        ));
        assert!(matches!(
            parse_keypoints(&json!([]), &image_100()),
            Err(GatewayError::EmptyResult)
        ));
        assert!(matches!(
            parse_keypoints(&json!("scalar"), &image_100()),
            Err(GatewayError::EmptyResult)
        ));
    }

    #[test]
    fn output_never_exceeds_input_and_respects_invariants() {
        let v = json!([
            {"label": "a", "point": [500, -3], "probability": 1.7},
            {"label": "b", "bbox_2d": [90, 90, 200, 200]},
        ]);
        let got = parse_keypoints(&v, &image_100()).unwrap();
        assert!(got.keypoints.len() + got.dropped <= 2);
        for kp in &got.keypoints {
            assert!(kp.point().in_bounds(100, 100));
            if let Some(p) = kp.fire_probability() {
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }
}
