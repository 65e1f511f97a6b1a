//! Shared mission state the tools read and write.
//!
//! Tool arguments travel as JSON, so large objects (images, frame sets)
//! live here and are passed between tools by id. Tools default to the
//! mission's current scene when no image id is given, which lets one
//! scripted scenario drive any sample.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use flight_sim::{FrameRecord, SimConfig};
use mission_core::{LabeledKeypoint, SceneImage};
use serde::{Deserialize, Serialize};

use agent_runtime::RunClock;

use crate::detect::DetectionResult;
use crate::error::ToolsError;
use crate::render::MarkerStyle;
use crate::store::ImageStore;

/// Sampling parameters for tool-level vision calls.
#[derive(Debug, Clone)]
pub struct VisionOpts {
    pub model: String,
    pub temperature: f64,
    pub max_tokens: u32,
}

impl Default for VisionOpts {
    fn default() -> Self {
        Self {
            model: "qwen2.5-vl-32b-instruct".to_string(),
            temperature: 0.5,
            max_tokens: 1024,
        }
    }
}

/// The flight order handed from the planner to the flight agent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskAssignment {
    pub image_id: String,
    pub waypoints: Vec<LabeledKeypoint>,
}

/// Frames produced by one simulation run, plus the geometry needed to
/// translate in-crop detections back to scene coordinates.
pub struct FrameSet {
    pub frames: BTreeMap<String, FrameRecord>,
    pub scene_id: String,
    pub scene_width: u32,
    pub scene_height: u32,
    pub config: SimConfig,
}

/// Blackboard shared by every tool of one mission run.
pub struct MissionContext {
    pub benchmark_store: Arc<ImageStore>,
    pub sim_store: Arc<ImageStore>,
    pub clock: Arc<dyn RunClock>,
    pub sim_config: SimConfig,
    pub vision: VisionOpts,
    pub style: MarkerStyle,

    images: Mutex<HashMap<String, Arc<SceneImage>>>,
    current_scene: Mutex<Option<String>>,
    keypoints: Mutex<Vec<LabeledKeypoint>>,
    annotated: Mutex<Option<String>>,
    task: Mutex<Option<TaskAssignment>>,
    frame_sets: Mutex<HashMap<String, Arc<FrameSet>>>,
    animation: Mutex<Option<Vec<u8>>>,
    detections: Mutex<Vec<DetectionResult>>,
}

impl MissionContext {
    pub fn new(
        benchmark_store: Arc<ImageStore>,
        sim_store: Arc<ImageStore>,
        clock: Arc<dyn RunClock>,
        sim_config: SimConfig,
        vision: VisionOpts,
    ) -> Self {
        Self {
            benchmark_store,
            sim_store,
            clock,
            sim_config,
            vision,
            style: MarkerStyle::default(),
            images: Mutex::new(HashMap::new()),
            current_scene: Mutex::new(None),
            keypoints: Mutex::new(Vec::new()),
            annotated: Mutex::new(None),
            task: Mutex::new(None),
            frame_sets: Mutex::new(HashMap::new()),
            animation: Mutex::new(None),
            detections: Mutex::new(Vec::new()),
        }
    }

    /// Register an image and make it the mission's current scene.
    pub fn bind_scene(&self, image: Arc<SceneImage>) {
        let id = image.id().to_string();
        self.images.lock().unwrap().insert(id.clone(), image);
        *self.current_scene.lock().unwrap() = Some(id);
    }

    /// Register an image without touching the current scene.
    pub fn insert_image(&self, image: Arc<SceneImage>) {
        self.images
            .lock()
            .unwrap()
            .insert(image.id().to_string(), image);
    }

    pub fn current_scene_id(&self) -> Option<String> {
        self.current_scene.lock().unwrap().clone()
    }

    /// Resolve an explicit image id, falling back to the current scene.
    pub fn resolve_image(&self, id: Option<&str>) -> Result<Arc<SceneImage>, ToolsError> {
        let id = match id {
            Some(id) => id.to_string(),
            None => self
                .current_scene_id()
                .ok_or(ToolsError::NoCurrentScene)?,
        };
        self.images
            .lock()
            .unwrap()
            .get(&id)
            .cloned()
            .ok_or(ToolsError::UnknownImageId(id))
    }

    pub fn set_keypoints(&self, kps: Vec<LabeledKeypoint>) {
        *self.keypoints.lock().unwrap() = kps;
    }

    pub fn keypoints(&self) -> Vec<LabeledKeypoint> {
        self.keypoints.lock().unwrap().clone()
    }

    pub fn set_annotated(&self, image_id: String) {
        *self.annotated.lock().unwrap() = Some(image_id);
    }

    pub fn annotated_id(&self) -> Option<String> {
        self.annotated.lock().unwrap().clone()
    }

    pub fn set_task(&self, task: TaskAssignment) {
        *self.task.lock().unwrap() = Some(task);
    }

    pub fn task(&self) -> Option<TaskAssignment> {
        self.task.lock().unwrap().clone()
    }

    pub fn insert_frame_set(&self, id: String, set: FrameSet) {
        self.frame_sets.lock().unwrap().insert(id, Arc::new(set));
    }

    pub fn frame_set(&self, id: &str) -> Result<Arc<FrameSet>, ToolsError> {
        self.frame_sets
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ToolsError::UnknownFrameSet(id.to_string()))
    }

    pub fn latest_frame_set(&self) -> Option<(String, Arc<FrameSet>)> {
        let sets = self.frame_sets.lock().unwrap();
        // ids are sim-0, sim-1, ... — lexicographic max is the latest
        sets.iter()
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(k, v)| (k.clone(), Arc::clone(v)))
    }

    pub fn frame_set_count(&self) -> usize {
        self.frame_sets.lock().unwrap().len()
    }

    pub fn set_animation(&self, bytes: Vec<u8>) {
        *self.animation.lock().unwrap() = Some(bytes);
    }

    pub fn animation(&self) -> Option<Vec<u8>> {
        self.animation.lock().unwrap().clone()
    }

    pub fn record_detections(&self, mut results: Vec<DetectionResult>) {
        self.detections.lock().unwrap().append(&mut results);
    }

    pub fn detections(&self) -> Vec<DetectionResult> {
        self.detections.lock().unwrap().clone()
    }
}
