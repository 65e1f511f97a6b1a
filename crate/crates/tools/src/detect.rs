//! Per-frame fire detection over simulated flight footage.

use std::collections::BTreeMap;

use flight_sim::{crop_to_scene, crop_window, FrameRecord};
use mission_core::PixelPoint;
use model_gateway::{extract_structured, ModelBackend, ModelMessage, ModelRequest, Role};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::sync::Arc;

use agent_runtime::RunClock;

use crate::context::VisionOpts;
use crate::error::ToolsError;

/// Scene/crop geometry needed to translate in-crop detections back to
/// scene coordinates (the crop window shifts inward near borders).
#[derive(Debug, Clone, Copy)]
pub struct CropGeometry {
    pub crop_size: u32,
    pub output_size: u32,
    pub scene_width: u32,
    pub scene_height: u32,
}

/// Outcome of examining one frame.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectionResult {
    pub frame_id: String,
    pub fire_detected: bool,
    pub confidence: f64,
    /// Scene-space location; present only when fire was detected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<PixelPoint>,
    pub label: String,
    /// Error note when the frame could not be analyzed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Run-clock seconds at which this result was produced.
    pub at_secs: f64,
}

impl DetectionResult {
    fn no_fire(frame: &FrameRecord, note: Option<String>, at_secs: f64) -> Self {
        Self {
            frame_id: frame.frame_id().to_string(),
            fire_detected: false,
            confidence: 0.0,
            location: None,
            label: frame.label().to_string(),
            note,
            at_secs,
        }
    }
}

/// Query the vision model for every frame (in frame-id order) and return
/// one result per frame.
///
/// The prompt asks for `{"fire": bool, "confidence": 0..1, "point": [x,y]}`
/// with the point in crop pixels; reported points are translated to scene
/// coordinates through the frame's crop window. A frame-level failure
/// yields `fire_detected = false` with an error note instead of aborting
/// the sweep.
pub fn detect_and_display(
    frames: &BTreeMap<String, FrameRecord>,
    geometry: &CropGeometry,
    gateway: &dyn ModelBackend,
    opts: &VisionOpts,
    clock: &dyn RunClock,
) -> Result<Vec<DetectionResult>, ToolsError> {
    if frames.is_empty() {
        return Err(ToolsError::EmptyFrames);
    }
    let mut results = Vec::with_capacity(frames.len());
    for frame in frames.values() {
        let outcome = examine_frame(frame, geometry, gateway, opts);
        let at_secs = clock.now_secs();
        results.push(match outcome {
            Ok(mut r) => {
                r.at_secs = at_secs;
                r
            }
            Err(e) => DetectionResult::no_fire(frame, Some(e.to_string()), at_secs),
        });
    }
    Ok(results)
}

fn examine_frame(
    frame: &FrameRecord,
    geometry: &CropGeometry,
    gateway: &dyn ModelBackend,
    opts: &VisionOpts,
) -> Result<DetectionResult, ToolsError> {
    let prompt = format!(
        "UAV footage frame {id} while approaching '{label}'. Does this aerial \
         view contain fire or active smoke? Answer with JSON only: \
         {{\"fire\": true|false, \"confidence\": 0..1, \"point\": [x, y]}} \
         where point is the fire location in this {size}x{size} crop.",
        id = frame.frame_id(),
        label = frame.label(),
        size = geometry.output_size,
    );
    let request = ModelRequest::new(
        vec![ModelMessage::user_with_image(
            prompt,
            Arc::new(frame.crop().clone()),
        )],
        opts.temperature,
        opts.max_tokens,
        opts.model.clone(),
    )?;
    let response = gateway.complete(&request)?;
    let parsed = extract_structured(&response.text)?;
    Ok(interpret_verdict(&parsed.value, frame, geometry))
}

fn interpret_verdict(value: &Value, frame: &FrameRecord, geometry: &CropGeometry) -> DetectionResult {
    let fire = value
        .get("fire")
        .or_else(|| value.get("fire_detected"))
        .and_then(Value::as_bool)
        .unwrap_or(false);
    let confidence = value
        .get("confidence")
        .and_then(Value::as_f64)
        .map(|c| c.clamp(0.0, 1.0))
        .unwrap_or(if fire { 1.0 } else { 0.0 });

    let location = if fire {
        let in_crop = value.get("point").and_then(|p| {
            let arr = p.as_array()?;
            if arr.len() != 2 {
                return None;
            }
            PixelPoint::new(arr[0].as_f64()?, arr[1].as_f64()?).ok()
        });
        Some(match in_crop {
            Some(p) => {
                let window = crop_window(
                    geometry.scene_width,
                    geometry.scene_height,
                    frame.center(),
                    geometry.crop_size,
                );
                crop_to_scene(p, &window, geometry.output_size)
                    .clamped(geometry.scene_width, geometry.scene_height)
            }
            // no point reported: the vehicle is directly over the view center
            None => frame.center(),
        })
    } else {
        None
    };

    DetectionResult {
        frame_id: frame.frame_id().to_string(),
        fire_detected: fire,
        confidence,
        location,
        label: frame.label().to_string(),
        note: None,
        at_secs: 0.0,
    }
}
