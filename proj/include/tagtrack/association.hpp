#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "tagtrack/geometry.hpp"
#include "tagtrack/hungarian.hpp"

namespace tagtrack {

struct FilterModel;

struct AssociationConfig {
    double delta = 0.5;       // weight of the center-distance term
    int age_threshold = 10;   // T: consecutive failures before re-initialization
    double gate_cost = 1.0;   // reported cost for zero-overlap pairs
    double reinit_fraction = 0.4;  // tag-box size relative to its bounding box
};

enum class TrackStatus { Tracked, Drift, Pending };

struct Track {
    int id = 0;
    TagBox tag_box;
    BoundingBox bounding_box;  // last detection-confirmed box
    std::vector<std::pair<int, BoundingBox>> tracklet;  // (frame, emitted box)
    int age = 0;
    TrackStatus status = TrackStatus::Tracked;
    TagBox tag_at_confirm;  // tag-box pose when bounding_box was confirmed
    std::shared_ptr<FilterModel> model;
};

struct TrackOutput {
    int id = 0;
    BoundingBox box;
    TrackStatus status = TrackStatus::Tracked;
    bool confirmed = false;  // box came from a detection this frame
};

struct FrameResult {
    std::vector<TrackOutput> outputs;              // one per live track
    std::vector<int> unassigned_detections;        // indices into the input list
    std::vector<int> unassigned_tracks;            // track ids left without a detection
    std::vector<std::pair<int, BoundingBox>> reinit_requests;  // (track id, new box)
    std::vector<int> drift_events;                 // track ids whose age left 0 this frame
    std::vector<int> pending_events;               // track ids pended this frame
};

// Eq.-style pair cost: -log(overlap) + delta * normalized center distance;
// `gate_cost` reported when the overlap is zero.
double pair_cost(const BoundingBox& db, const TagBox& tb, double delta, double gate_cost = 1.0);

// |detections| x |tag_boxes| matrix ready for the matcher: zero-overlap pairs
// carry the infeasible sentinel instead of the reported gate value.
Eigen::MatrixXd build_cost_matrix(const std::vector<BoundingBox>& detections,
                                  const std::vector<TagBox>& tag_boxes,
                                  const AssociationConfig& cfg);

// Last confirmed bounding box carried by the tag-box displacement since that
// confirmation.
BoundingBox default_box_for(const Track& track);

// Recenters the tag-box on `box` (reinit_fraction of its size), resets age,
// status Tracked. The filter model must be rebuilt by the caller from the
// current frame.
void reinitialize_tagbox(Track& track, const BoundingBox& box, double reinit_fraction);

// One frame of the hierarchical association: round 1 matches detections to
// tag-boxes; round 2 resolves unassigned tracks against their default boxes;
// round 3 maintains the age counters, re-initialization triggers and the
// pending state. Tracklets and track state are updated in place.
FrameResult associate_frame(std::vector<Track>& tracks, const std::vector<BoundingBox>& detections,
                            const AssociationConfig& cfg, int frame_index);

}  // namespace tagtrack
