//! Airspace-manager tools: scene reading, captioning, pixel-pointing,
//! keypoint visualization, final answer.

use std::sync::Arc;

use agent_runtime::{ArgSpec, RuntimeError, ToolError, ToolRegistry, ToolSpec, FINAL_ANSWER_TOOL};
use mission_core::{LabeledKeypoint, SceneImage};
use model_gateway::{
    extract_structured, parse_keypoints, KeypointParse, ModelBackend, ModelMessage, ModelRequest,
    Role,
};
use serde_json::{json, Value};

use crate::context::{MissionContext, VisionOpts};
use crate::error::ToolsError;
use crate::render::visualize_keypoints;

/// Caption a scene with the vision model. The prompt requests a long-form
/// description so downstream reasoning has enough signal to work with.
pub fn describe_satellite_image(
    image: &Arc<SceneImage>,
    gateway: &dyn ModelBackend,
    opts: &VisionOpts,
) -> Result<String, ToolsError> {
    let prompt = format!(
        "Describe this satellite image (id {id}) in detail: terrain, \
         structures, roads, vegetation, water, vehicles, and any signs of \
         fire, smoke, or damage. Write a thorough multi-sentence caption.",
        id = image.id()
    );
    let request = ModelRequest::new(
        vec![ModelMessage::user_with_image(prompt, Arc::clone(image))],
        opts.temperature,
        opts.max_tokens,
        opts.model.clone(),
    )?;
    let response = gateway.complete(&request)?;
    Ok(response.text)
}

/// Ask the grounding model for pixel coordinates of the named objects and
/// parse the reply into keypoints. Malformed output goes through the
/// repair passes; a reply with nothing usable surfaces `EmptyResult`.
pub fn pixelpoint_objects(
    image: &Arc<SceneImage>,
    objects_query: &str,
    gateway: &dyn ModelBackend,
    opts: &VisionOpts,
) -> Result<KeypointParse, ToolsError> {
    if objects_query.is_empty() {
        return Err(ToolsError::EmptyObjectsQuery);
    }
    let prompt = format!(
        "Locate the following in this satellite image (id {id}): {objects_query}. \
         Reply with a JSON array, one element per object found: \
         [{{\"label\": \"<name>\", \"point\": [x, y], \"probability\": 0..1}}]. \
         Coordinates are image pixels; probability is the chance the object \
         is on fire or fire-related. Use bbox_2d [x1,y1,x2,y2] instead of \
         point when an extent is clearer.",
        id = image.id()
    );
    let request = ModelRequest::new(
        vec![ModelMessage::user_with_image(prompt, Arc::clone(image))],
        opts.temperature,
        opts.max_tokens,
        opts.model.clone(),
    )?;
    let response = gateway.complete(&request)?;
    let extracted = extract_structured(&response.text)?;
    Ok(parse_keypoints(&extracted.value, image)?)
}

/// The terminal tool both agents share: echoes the answer argument.
pub(crate) fn final_answer_spec() -> ToolSpec {
    ToolSpec::new(
        FINAL_ANSWER_TOOL,
        "Deliver the processed result and end the mission",
        vec![ArgSpec {
            name: "answer".into(),
            semantic: "any value".into(),
            required: false,
        }],
        Arc::new(|args: &Value| Ok(args.get("answer").cloned().unwrap_or(Value::Null))),
    )
    .expect("final_answer spec is valid")
}

fn keypoints_to_json(kps: &[LabeledKeypoint]) -> Value {
    serde_json::to_value(kps).expect("keypoints serialize")
}

/// Build the airspace manager's registry: exactly the five planner tools.
pub fn ama_registry(
    ctx: Arc<MissionContext>,
    gateway: Arc<dyn ModelBackend>,
) -> Result<ToolRegistry, RuntimeError> {
    let mut registry = ToolRegistry::new();

    {
        let ctx = Arc::clone(&ctx);
        registry.register(ToolSpec::new(
            "read_image",
            "Load a benchmark image for airspace analysis and make it the current scene",
            vec![ArgSpec {
                name: "i".into(),
                semantic: "integer image index".into(),
                required: true,
            }],
            Arc::new(move |args: &Value| {
                let i = args
                    .get("i")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| ToolError::msg("argument 'i' must be an integer"))?;
                let image = ctx
                    .benchmark_store
                    .get(i)
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                ctx.bind_scene(Arc::clone(&image));
                Ok(json!({
                    "image_id": image.id(),
                    "width": image.width(),
                    "height": image.height(),
                }))
            }),
        )?)?;
    }

    {
        let ctx = Arc::clone(&ctx);
        let gateway = Arc::clone(&gateway);
        registry.register(ToolSpec::new(
            "describe_satellite_image",
            "Analyze an image with the vision model and return a detailed caption",
            vec![ArgSpec {
                name: "image_id".into(),
                semantic: "image id (defaults to current scene)".into(),
                required: false,
            }],
            Arc::new(move |args: &Value| {
                let image = ctx
                    .resolve_image(args.get("image_id").and_then(Value::as_str))
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                let caption = describe_satellite_image(&image, gateway.as_ref(), &ctx.vision)
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                Ok(json!({"description": caption}))
            }),
        )?)?;
    }

    {
        let ctx = Arc::clone(&ctx);
        let gateway = Arc::clone(&gateway);
        registry.register(ToolSpec::new(
            "pixelpoint_objects",
            "Ground named objects to pixel coordinates (tolerant JSON parsing)",
            vec![
                ArgSpec {
                    name: "objects".into(),
                    semantic: "comma-separated object names".into(),
                    required: true,
                },
                ArgSpec {
                    name: "image_id".into(),
                    semantic: "image id (defaults to current scene)".into(),
                    required: false,
                },
            ],
            Arc::new(move |args: &Value| {
                let objects = args
                    .get("objects")
                    .and_then(Value::as_str)
                    .ok_or_else(|| ToolError::msg("argument 'objects' must be a string"))?;
                let image = ctx
                    .resolve_image(args.get("image_id").and_then(Value::as_str))
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                let parse = pixelpoint_objects(&image, objects, gateway.as_ref(), &ctx.vision)
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                ctx.set_keypoints(parse.keypoints.clone());
                Ok(json!({
                    "keypoints": keypoints_to_json(&parse.keypoints),
                    "dropped": parse.dropped,
                }))
            }),
        )?)?;
    }

    {
        let ctx = Arc::clone(&ctx);
        registry.register(ToolSpec::new(
            "visualize_keypoints",
            "Render labeled keypoints (markers, boxes, labels) onto an image copy",
            vec![
                ArgSpec {
                    name: "keypoints".into(),
                    semantic: "keypoint list (defaults to last grounding result)".into(),
                    required: false,
                },
                ArgSpec {
                    name: "image_id".into(),
                    semantic: "image id (defaults to current scene)".into(),
                    required: false,
                },
            ],
            Arc::new(move |args: &Value| {
                let image = ctx
                    .resolve_image(args.get("image_id").and_then(Value::as_str))
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                let keypoints: Vec<LabeledKeypoint> = match args.get("keypoints") {
                    Some(v) => serde_json::from_value(v.clone())
                        .map_err(|e| ToolError::msg(format!("bad keypoints argument: {e}")))?,
                    None => ctx.keypoints(),
                };
                let annotated = visualize_keypoints(&image, &keypoints, &ctx.style);
                let id = annotated.id().to_string();
                ctx.insert_image(Arc::new(annotated));
                ctx.set_annotated(id.clone());
                Ok(json!({"image_id": id, "keypoints_rendered": keypoints.len()}))
            }),
        )?)?;
    }

    registry.register(final_answer_spec())?;
    Ok(registry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::store::ImageStore;
    use agent_runtime::SimClock;
    use flight_sim::SimConfig;
    use image::RgbImage;
    use model_gateway::{Matcher, RecordingBackend, ScenarioEntry, ScriptedBackend, ScriptedScenario};

    fn scripted(entries: Vec<(Matcher, &str)>) -> ScriptedBackend {
        ScriptedBackend::new(
            ScriptedScenario::new(
                entries
                    .into_iter()
                    .map(|(matcher, response)| ScenarioEntry {
                        matcher,
                        response: response.to_string(),
                    })
                    .collect(),
            )
            .unwrap(),
        )
    }

    fn ctx() -> Arc<MissionContext> {
        Arc::new(MissionContext::new(
            Arc::new(ImageStore::empty()),
            Arc::new(ImageStore::empty()),
            Arc::new(SimClock::new()),
            SimConfig::default(),
            VisionOpts::default(),
        ))
    }

    fn scene() -> Arc<SceneImage> {
        Arc::new(SceneImage::new("img-1", RgbImage::new(200, 150)).unwrap())
    }

    #[test]
    fn registry_lists_exactly_the_five_planner_tools() {
        let backend: Arc<dyn ModelBackend> =
            Arc::new(scripted(vec![(Matcher::Ordinal(1), "unused")]));
        let registry = ama_registry(ctx(), backend).unwrap();
        assert_eq!(
            registry.names(),
            vec![
                "describe_satellite_image",
                "final_answer",
                "pixelpoint_objects",
                "read_image",
                "visualize_keypoints",
            ]
        );
    }

    #[test]
    fn describe_returns_scripted_caption_verbatim() {
        let backend = scripted(vec![(
            Matcher::Substring("Describe".into()),
            "industrial area with smoke plume",
        )]);
        let caption =
            describe_satellite_image(&scene(), &backend, &VisionOpts::default()).unwrap();
        assert_eq!(caption, "industrial area with smoke plume");
    }

    #[test]
    fn describe_request_carries_exactly_one_image_part() {
        let backend = RecordingBackend::new(scripted(vec![(
            Matcher::Ordinal(1),
            "some caption",
        )]));
        describe_satellite_image(&scene(), &backend, &VisionOpts::default()).unwrap();
        let snapshots = backend.snapshots();
        assert_eq!(snapshots.len(), 1);
        assert_eq!(snapshots[0].image_ids, vec!["img-1".to_string()]);
    }

    #[test]
    fn pixelpoint_parses_scripted_keypoints() {
        let backend = scripted(vec![(
            Matcher::Substring("Locate".into()),
            r#"[{"label":"warehouse","point":[120,88],"probability":0.7}]"#,
        )]);
        let parse =
            pixelpoint_objects(&scene(), "warehouses", &backend, &VisionOpts::default()).unwrap();
        assert_eq!(parse.keypoints.len(), 1);
        let kp = &parse.keypoints[0];
        assert_eq!(kp.label(), "warehouse");
        assert_eq!(kp.point().x(), 120.0);
        assert_eq!(kp.fire_probability(), Some(0.7));
    }

    #[test]
    fn pixelpoint_repairs_malformed_output() {
        let backend = scripted(vec![(
            Matcher::Ordinal(1),
            "```json\n[{'label': 'warehouse', 'point': [120, 88],}]\n```",
        )]);
        let parse =
            pixelpoint_objects(&scene(), "warehouses", &backend, &VisionOpts::default()).unwrap();
        assert_eq!(parse.keypoints.len(), 1);
    }

    #[test]
    fn pixelpoint_surfaces_empty_result_for_irrelevant_text() {
        let backend = scripted(vec![(Matcher::Ordinal(1), "I see nothing relevant")]);
        let err = pixelpoint_objects(&scene(), "fires", &backend, &VisionOpts::default());
        assert!(err.is_err());
    }

    #[test]
    fn empty_objects_query_is_rejected() {
        let backend = scripted(vec![(Matcher::Ordinal(1), "x")]);
        assert!(matches!(
            pixelpoint_objects(&scene(), "", &backend, &VisionOpts::default()),
            Err(ToolsError::EmptyObjectsQuery)
        ));
    }
}
