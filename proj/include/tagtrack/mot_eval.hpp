#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tagtrack/trajectory.hpp"

namespace tagtrack {

// Persistent matcher state threaded through the frame sequence.
struct CorrespondenceState {
    std::map<int, int> active;        // gt id -> hyp id, still-valid pairing
    std::map<int, int> last_partner;  // gt id -> most recent matched hyp id
};

struct FrameCorrespondence {
    std::vector<std::pair<int, int>> matches;  // (gt id, hyp id)
    std::vector<int> false_positives;          // hyp ids
    std::vector<int> misses;                   // gt ids
    int id_switches = 0;
};

// CLEAR-style per-frame matching: carries the previous pairing when it still
// meets the IoU threshold, then matches the remainder optimally on 1-IoU.
FrameCorrespondence frame_correspondence(const std::map<int, BoundingBox>& gt,
                                         const std::map<int, BoundingBox>& hyp,
                                         double iou_threshold, CorrespondenceState& state);

struct MetricsReport {
    double recall = 0.0;
    double precision = 0.0;
    double faf = 0.0;
    double mota = 0.0;
    int mt = 0, pt = 0, ml = 0;
    long ids = 0;
    long fra = 0;
    long tp = 0, fp = 0, fn = 0;
    long gt_count = 0;
    int num_frames = 0;
};

// Full evaluation over the common frame range. Throws on empty ground truth.
MetricsReport clear_metrics(const TrajectorySet& gt, const TrajectorySet& hyp,
                            double iou_threshold = 0.5, double mostly = 0.8, double lost = 0.2);

// (MT, PT, ML) alone; boundaries inclusive (coverage >= mostly is MT,
// coverage <= lost is ML).
std::tuple<int, int, int> track_level_metrics(const TrajectorySet& gt, const TrajectorySet& hyp,
                                              double mostly = 0.8, double lost = 0.2,
                                              double iou_threshold = 0.5);

// One table row: Recall% Precision% FAF MT PT ML IDs FRA MOTA%.
std::string format_metrics_header();
std::string format_metrics_row(const std::string& name, const MetricsReport& report);

// Machine-readable key=value dump.
void write_metrics_report(const MetricsReport& report, const std::string& path);

}  // namespace tagtrack
