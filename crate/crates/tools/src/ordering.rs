//! Flight-order planning: highest fire probability first, nearest-first
//! within equal-probability groups.

use mission_core::{LabeledKeypoint, MissionPlan, PixelPoint};

/// Order keypoints for the flight.
///
/// Keypoints are sorted by fire probability descending (missing values
/// count as zero and sort last). Ties are broken greedily by distance:
/// within each equal-probability group the next waypoint is the one
/// nearest to the previously visited point, starting from `start` for the
/// first pick. Equal distances fall back to input order. The output is
/// always a permutation of the input.
///
/// This is a greedy heuristic by design — it can be swapped for a tour
/// solver behind the same signature.
pub fn order_waypoints(keypoints: &[LabeledKeypoint], start: PixelPoint) -> MissionPlan {
    let mut by_probability: Vec<usize> = (0..keypoints.len()).collect();
    // stable sort keeps input order inside each probability group
    by_probability.sort_by(|&a, &b| {
        keypoints[b]
            .probability_or_zero()
            .partial_cmp(&keypoints[a].probability_or_zero())
            .expect("probabilities are finite")
    });

    let mut ordered = Vec::with_capacity(keypoints.len());
    let mut previous = start;
    let mut cursor = 0;
    while cursor < by_probability.len() {
        let probability = keypoints[by_probability[cursor]].probability_or_zero();
        let mut group: Vec<usize> = Vec::new();
        while cursor < by_probability.len()
            && keypoints[by_probability[cursor]].probability_or_zero() == probability
        {
            group.push(by_probability[cursor]);
            cursor += 1;
        }
        while !group.is_empty() {
            let nearest = group
                .iter()
                .enumerate()
                .min_by(|(_, &a), (_, &b)| {
                    previous
                        .distance_to(keypoints[a].point())
                        .partial_cmp(&previous.distance_to(keypoints[b].point()))
                        .expect("distances are finite")
                })
                .map(|(pos, _)| pos)
                .expect("group is non-empty");
            let idx = group.remove(nearest);
            previous = keypoints[idx].point();
            ordered.push(keypoints[idx].clone());
        }
    }

    MissionPlan {
        ordered_waypoints: ordered,
        rationale: format!(
            "visit order: fire probability descending, nearest-first within ties, starting from {start}"
        ),
    }
}
