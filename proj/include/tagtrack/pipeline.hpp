#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tagtrack/association.hpp"
#include "tagtrack/dcf.hpp"
#include "tagtrack/detection_io.hpp"
#include "tagtrack/features.hpp"
#include "tagtrack/frame.hpp"
#include "tagtrack/mot_eval.hpp"
#include "tagtrack/sim.hpp"
#include "tagtrack/trajectory.hpp"

namespace tagtrack {

class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual int count() const = 0;
    virtual Frame frame(int index) const = 0;
    virtual bool color() const = 0;
};

// Numbered frame_%06d.ppm / .pgm files in a directory.
class ImageDirSource final : public FrameSource {
public:
    explicit ImageDirSource(std::string dir);
    int count() const override { return count_; }
    Frame frame(int index) const override;
    bool color() const override { return color_; }

private:
    std::string dir_;
    int count_ = 0;
    bool color_ = true;
};

// Re-renders the deterministic simulation on demand; no frames touch disk.
class SimFrameSource final : public FrameSource {
public:
    SimFrameSource(SceneConfig cfg, std::vector<SceneState> states);
    int count() const override { return static_cast<int>(states_.size()); }
    Frame frame(int index) const override;
    bool color() const override { return cfg_.mode == ImagingMode::Day; }
    const std::vector<SceneState>& states() const { return states_; }

private:
    SceneConfig cfg_;
    std::vector<SceneState> states_;
};

struct PipelineConfig {
    FeatureConfig features;
    TrackerConfig tracker;
    AssociationConfig association;
    int workers = 1;
};

struct RunLog {
    struct FrameStat {
        int frame = 0;
        double localize_ms = 0.0;
        double associate_ms = 0.0;
        double update_ms = 0.0;
        double total_ms = 0.0;
    };
    struct Event {
        int frame = 0;
        std::string type;  // drift | pending | reinit | reinit_failed
        int track_id = 0;
    };
    std::vector<FrameStat> frames;
    std::vector<Event> events;

    bool has_event(const std::string& type) const {
        for (const auto& e : events)
            if (e.type == type) return true;
        return false;
    }
};

struct RunResult {
    TrajectorySet trajectories;      // emitted bounding boxes
    TrajectorySet tag_trajectories;  // tag-boxes (as boxes), for overlays
    RunLog log;
};

// The per-frame loop: localize every track, read the frame's detections,
// associate, then update models on the sparse schedule.
RunResult run_sequence(const FrameSource& frames, const std::vector<DetectionSet>& detections,
                       const std::vector<std::pair<int, BoundingBox>>& initial_boxes,
                       const PipelineConfig& cfg);

// Burn boxes (red), tag-boxes (yellow) and id labels into each frame.
void render_overlays(const FrameSource& frames, const TrajectorySet& boxes,
                     const TrajectorySet& tag_boxes, const std::string& out_dir);

// Per-id colored polyline of box centers.
void plot_trajectories(const TrajectorySet& traj, int width, int height, const std::string& path);

struct ScenarioResult {
    MetricsReport metrics;
    TrajectorySet trajectories;
    GroundTruth ground_truth;
    RunLog log;
};

// simulate -> synthesize detections -> track -> evaluate. When out_dir is
// given, writes gt.csv, detections.csv, initial_boxes.csv, trajectories.csv,
// tags.csv, metrics.txt and metrics.kv there.
ScenarioResult run_scenario(const std::string& scenario, std::uint64_t seed, int n_frames,
                            const PipelineConfig& cfg, const NoiseProfile& noise,
                            const std::optional<std::string>& out_dir = std::nullopt);

}  // namespace tagtrack
