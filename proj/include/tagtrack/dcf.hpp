#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tagtrack/features.hpp"
#include "tagtrack/frame.hpp"
#include "tagtrack/geometry.hpp"

namespace tagtrack {

struct TrackerConfig {
    int max_components = 30;      // L, GMM sample space size
    double learning_rate = 0.09;  // γ
    int update_interval = 2;      // frames between filter updates
    int first_frame_gn_iters = 10;
    int first_frame_cg_iters = 120;  // total across the first-frame outer steps
    int update_cg_iters = 5;
    int max_basis_filters = 16;  // C = min(D, max_basis_filters)
    std::vector<double> scale_set = {0.98, 1.0, 1.02};
    double label_sigma_factor = 1.0 / 12.0;  // of tag-box size, per axis
    double reg_min = 1e-2;                   // spatial regularizer at the target
    double reg_slope = 1.0;                  // quadratic growth toward the window edge
    double projection_reg = 1e-4;            // ridge on P during joint optimization
    double gmm_drop_threshold = 1e-4;
};

struct GmmComponent {
    FeatureStack mean;
    double weight = 0.0;
};

// Compressed training set: at most L weighted components over feature space.
struct GmmSampleSpace {
    std::vector<GmmComponent> components;
    int max_components = 30;
    double learning_rate = 0.09;
    double drop_threshold = 1e-4;

    double weight_sum() const {
        double s = 0.0;
        for (const auto& c : components) s += c.weight;
        return s;
    }
};

// Inserts a sample as a new component (weight γ, others scaled by 1-γ); when
// the budget L is exceeded, drops a negligible-weight component or merges the
// closest pair (weighted L2, weight-proportional mean combination).
void update_sample_space(GmmSampleSpace& space, const FeatureStack& sample);

// Per-track learned state: C basis filters in the frequency domain, the D x C
// projection matrix, the spatial regularizer, the sample space and the label.
struct FilterModel {
    std::vector<Eigen::ArrayXXcd> basis_filters;  // C spectra, grid_rows x grid_cols
    Eigen::MatrixXd projection;                   // D x C
    Eigen::ArrayXXd reg_weights;                  // w, spatial grid
    GmmSampleSpace sample_space;
    Eigen::ArrayXXcd label_spectrum;  // FFT of the periodic Gaussian y*
    double label_sigma_x = 0.0;       // grid cells
    double label_sigma_y = 0.0;
    int grid_rows = 0;
    int grid_cols = 0;
    int patch_w = 0;  // canonical patch pixels
    int patch_h = 0;
    double ref_tag_w = 0.0;
    double ref_tag_h = 0.0;
    int feature_channels = 0;  // D
    TrackerConfig cfg;

    int basis_count() const { return static_cast<int>(basis_filters.size()); }
};

// First-frame model construction: PCA-initialized projection, single-component
// sample space, joint filter/projection optimization against the Gaussian label.
FilterModel init_track_model(const Frame& frame, const TagBox& tb, const TrackerConfig& cfg,
                             const FeatureConfig& fcfg,
                             const ColorNameTable& table = ColorNameTable::builtin());

// Response surface: inverse FFT of sum_c conj(basis_c) .* projected-channel_c.
Eigen::ArrayXXd compute_response(const FilterModel& model, const FeatureStack& features);

struct LocalizeResult {
    TagBox tag_box;
    double peak_score = 0.0;
    double scale = 1.0;
};

// Multi-scale search around `prior` with sub-pixel (3x3 quadratic) peak
// refinement. Does not mutate the model.
LocalizeResult localize(const FilterModel& model, const Frame& frame, const TagBox& prior,
                        const FeatureConfig& fcfg,
                        const ColorNameTable& table = ColorNameTable::builtin());

// Conjugate-gradient refinement of the basis filters against the current
// sample space (projection fixed). Warm-started; objective never increases.
// cg_iters < 0 uses cfg.update_cg_iters. Pass `trace` to record the objective
// after each iteration.
void train_filter(FilterModel& model, int cg_iters = -1, std::vector<double>* trace = nullptr);

// First-frame joint optimization: alternating filter CG steps and exact
// regularized least-squares projection solves; objective non-increasing
// across outer steps.
void joint_optimize_projection(FilterModel& model);

// Value of the transformed objective (data term over the sample space plus
// the spatial penalty on the basis filters).
double filter_objective(const FilterModel& model);

// Versioned binary checkpoint of P, filters, regularizer, label and GMM.
void save_model(const FilterModel& model, const std::string& path);
FilterModel load_model(const std::string& path);

// Feature stack for this model's grid at the given tag-box pose; shared by
// init, localization and sample-space updates.
FeatureStack model_features(const FilterModel& model, const Frame& frame, const TagBox& tb,
                            double scale, const FeatureConfig& fcfg, const ColorNameTable& table);

}  // namespace tagtrack
