#pragma once

#include <string>
#include <vector>

#include "tagtrack/geometry.hpp"
#include "tagtrack/trajectory.hpp"

namespace tagtrack {

struct Detection {
    BoundingBox box;
    double confidence = 1.0;
};

struct DetectionSet {
    int frame_index = 0;
    std::vector<Detection> detections;
};

// Detector noise model for the synthetic oracle.
struct NoiseProfile {
    double center_jitter_sigma = 0.0;  // pixels
    double size_jitter_sigma = 0.0;    // relative
    double fp_rate = 0.0;              // expected spurious boxes per frame
    double fn_rate = 0.0;              // drop probability per target per frame
    double occlusion_fn_boost = 4.0;   // fn multiplier while occluded
    std::uint64_t seed = 0;
};

// CSV `frame,x,y,w,h,confidence`; '#' comments and an optional header are
// skipped. Returns one set per frame index 0..max; indices absent from the
// file yield empty sets.
std::vector<DetectionSet> load_detections(const std::string& path);
void write_detections(const std::vector<DetectionSet>& sets, const std::string& path);

// Noisy detections from ground truth; deterministic for a fixed seed.
std::vector<DetectionSet> synthetic_detections(const GroundTruth& gt, const NoiseProfile& profile,
                                               int frame_w, int frame_h);

// CSV `id,x,y,w,h`: the fixed track population. Duplicate ids and empty
// files are rejected.
std::vector<std::pair<int, BoundingBox>> load_initial_boxes(const std::string& path);
void write_initial_boxes(const std::vector<std::pair<int, BoundingBox>>& boxes,
                         const std::string& path);

}  // namespace tagtrack
