#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "tagtrack/color_names.hpp"
#include "tagtrack/frame.hpp"
#include "tagtrack/geometry.hpp"

namespace tagtrack {

enum class ImagingMode { Day, Night };

struct FeatureConfig {
    int hog_cell = 6;
    int cn_cell = 4;
    ImagingMode mode = ImagingMode::Day;
    double search_area_factor = 4.0;  // search window area relative to the tag-box
};

// Thrown when a track's search window has left the frame entirely.
class InvalidTrackState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One feature family on its own grid. Grids are Eigen arrays with
// rows = y and cols = x.
struct FeatureBlock {
    int grid_w = 0;
    int grid_h = 0;
    double cell_size = 1.0;  // patch pixels per grid cell
    std::vector<Eigen::ArrayXXd> channels;
};

struct FeatureMap {
    std::vector<FeatureBlock> blocks;
    int total_channels() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.channels.size());
        return n;
    }
};

// All channels resampled onto one grid.
struct FeatureStack {
    std::vector<Eigen::ArrayXXd> channels;
    int rows() const { return channels.empty() ? 0 : static_cast<int>(channels.front().rows()); }
    int cols() const { return channels.empty() ? 0 : static_cast<int>(channels.front().cols()); }
    int count() const { return static_cast<int>(channels.size()); }
};

// Sub-image centered on the tag-box covering tb.{w,h} * sqrt(search_area_factor) * scale
// pixels, bilinearly sampled onto an out_w x out_h grid. Out-of-frame samples
// replicate the border. Throws InvalidTrackState when the window misses the
// frame entirely.
Frame extract_patch(const Frame& frame, const TagBox& tb, double scale, const FeatureConfig& cfg,
                    int out_w, int out_h);
// Variant with the output grid matching the covered extent (rounded).
Frame extract_patch(const Frame& frame, const TagBox& tb, double scale, const FeatureConfig& cfg);

// 31-channel Felzenszwalb HOG (18 contrast-sensitive + 9 insensitive + 4
// energy channels) on the grayscale projection of the patch.
FeatureBlock hog_features(const Frame& patch, int cell);

// Per-cell average of 11-dim color-name probabilities. Color patches only.
FeatureBlock color_names_features(const Frame& patch, int cell, const ColorNameTable& table);

// Separable cubic resampling of every block onto the finest block grid.
// Channel order preserved (blocks in insertion order).
FeatureStack to_common_grid(const FeatureMap& map);

// Subtract the mean of each channel (removes DC response bias before filtering).
void center_channels(FeatureStack& stack);

// Patch -> HOG (+ CN in day mode) -> common grid -> mean centering.
FeatureStack extract_features(const Frame& frame, const TagBox& tb, double scale,
                              const FeatureConfig& cfg, const ColorNameTable& table, int patch_w,
                              int patch_h);

// 1D Catmull-Rom resampling with linear border extrapolation; exact on
// constants and linear ramps. Exposed for tests.
Eigen::VectorXd resample_cubic(const Eigen::VectorXd& in, int n_out);

}  // namespace tagtrack
