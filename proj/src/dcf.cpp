#include "tagtrack/dcf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <limits>

#include "tagtrack/fft2.hpp"

namespace tagtrack {

namespace {

using Spectra = std::vector<Eigen::ArrayXXcd>;

// Real spatial inner product of two conjugate-symmetric spectra sets.
double dot(const Spectra& a, const Spectra& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] * b[i].conjugate()).real().sum();
    return s / static_cast<double>(a.front().size());
}

double dot(const Eigen::ArrayXXcd& a, const Eigen::ArrayXXcd& b) {
    return (a * b.conjugate()).real().sum() / static_cast<double>(a.size());
}

// Projected component channels, frequency domain: z_c = FFT(sum_d P(d,c) mu_d).
Spectra project_spectra(const FeatureStack& stack, const Eigen::MatrixXd& P) {
    const int C = static_cast<int>(P.cols());
    const int D = static_cast<int>(P.rows());
    Spectra out(C);
    Eigen::ArrayXXd acc(stack.channels.front().rows(), stack.channels.front().cols());
    for (int c = 0; c < C; ++c) {
        acc.setZero();
        for (int d = 0; d < D; ++d) {
            const double p = P(d, c);
            if (p != 0.0) acc += p * stack.channels[d];
        }
        out[c] = fft2(acc);
    }
    return out;
}

// sum_c conj(f_c) .* z_c
Eigen::ArrayXXcd response_spectrum(const Spectra& filters, const Spectra& z) {
    Eigen::ArrayXXcd s = Eigen::ArrayXXcd::Zero(filters.front().rows(), filters.front().cols());
    for (size_t c = 0; c < filters.size(); ++c) s += filters[c].conjugate() * z[c];
    return s;
}

struct TrainContext {
    std::vector<Spectra> comp_spectra;  // per component: projected channels
    std::vector<double> weights;
    Eigen::ArrayXXd reg_sq;  // w^2, spatial
};

TrainContext make_train_context(const FilterModel& model) {
    TrainContext ctx;
    ctx.reg_sq = model.reg_weights.square();
    for (const auto& comp : model.sample_space.components) {
        ctx.comp_spectra.push_back(project_spectra(comp.mean, model.projection));
        ctx.weights.push_back(comp.weight);
    }
    return ctx;
}

// Normal-equation operator: data term per frequency plus the spatial penalty
// applied as a pointwise multiply in the spatial domain.
Spectra normal_op(const TrainContext& ctx, const Spectra& f) {
    const int C = static_cast<int>(f.size());
    Spectra out(C, Eigen::ArrayXXcd::Zero(f.front().rows(), f.front().cols()));
    for (size_t l = 0; l < ctx.comp_spectra.size(); ++l) {
        const Eigen::ArrayXXcd s = response_spectrum(f, ctx.comp_spectra[l]);
        const Eigen::ArrayXXcd sc = ctx.weights[l] * s.conjugate();
        for (int c = 0; c < C; ++c) out[c] += sc * ctx.comp_spectra[l][c];
    }
    for (int c = 0; c < C; ++c) out[c] += fft2((ctx.reg_sq * ifft2_real(f[c])).eval());
    return out;
}

Spectra rhs_vector(const TrainContext& ctx, const Eigen::ArrayXXcd& label, int C) {
    Spectra b(C, Eigen::ArrayXXcd::Zero(label.rows(), label.cols()));
    const Eigen::ArrayXXcd yc = label.conjugate();
    for (size_t l = 0; l < ctx.comp_spectra.size(); ++l)
        for (int c = 0; c < C; ++c) b[c] += ctx.weights[l] * yc * ctx.comp_spectra[l][c];
    return b;
}

double objective_value(const FilterModel& model, const TrainContext& ctx) {
    const double n = static_cast<double>(model.grid_rows) * model.grid_cols;
    double j = 0.0;
    for (size_t l = 0; l < ctx.comp_spectra.size(); ++l) {
        const Eigen::ArrayXXcd s = response_spectrum(model.basis_filters, ctx.comp_spectra[l]);
        j += ctx.weights[l] * (s - model.label_spectrum).abs2().sum() / n;
    }
    for (const auto& f : model.basis_filters)
        j += (model.reg_weights * ifft2_real(f)).square().sum();
    return j;
}

double wrapped_delta(int i, int n) {
    return i <= n / 2 ? i : i - n;
}

}  // namespace

void update_sample_space(GmmSampleSpace& space, const FeatureStack& sample) {
    if (space.components.empty()) {
        space.components.push_back({sample, 1.0});
        return;
    }
    const double gamma = space.learning_rate;
    for (auto& c : space.components) c.weight *= (1.0 - gamma);
    space.components.push_back({sample, gamma});

    if (static_cast<int>(space.components.size()) > space.max_components) {
        // drop a negligible component if one exists, otherwise merge the
        // closest pair under the weighted L2 metric
        int min_idx = 0;
        for (size_t i = 1; i < space.components.size(); ++i)
            if (space.components[i].weight < space.components[min_idx].weight) min_idx = static_cast<int>(i);
        if (space.components[min_idx].weight < space.drop_threshold) {
            space.components.erase(space.components.begin() + min_idx);
        } else {
            auto dist_sq = [](const FeatureStack& a, const FeatureStack& b) {
                double s = 0.0;
                for (size_t ch = 0; ch < a.channels.size(); ++ch)
                    s += (a.channels[ch] - b.channels[ch]).square().sum();
                return s;
            };
            int best_i = 0, best_j = 1;
            double best = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < space.components.size(); ++i)
                for (size_t j = i + 1; j < space.components.size(); ++j) {
                    const double wi = space.components[i].weight;
                    const double wj = space.components[j].weight;
                    const double d = wi * wj / (wi + wj) *
                                     dist_sq(space.components[i].mean, space.components[j].mean);
                    if (d < best) {
                        best = d;
                        best_i = static_cast<int>(i);
                        best_j = static_cast<int>(j);
                    }
                }
            auto& a = space.components[best_i];
            const auto& b = space.components[best_j];
            const double wsum = a.weight + b.weight;
            for (size_t ch = 0; ch < a.mean.channels.size(); ++ch)
                a.mean.channels[ch] =
                    (a.weight * a.mean.channels[ch] + b.weight * b.mean.channels[ch]) / wsum;
            a.weight = wsum;
            space.components.erase(space.components.begin() + best_j);
        }
    }
    const double sum = space.weight_sum();
    if (sum > 0.0)
        for (auto& c : space.components) c.weight /= sum;
}

Eigen::ArrayXXd compute_response(const FilterModel& model, const FeatureStack& features) {
    if (features.count() != model.feature_channels || features.rows() != model.grid_rows ||
        features.cols() != model.grid_cols)
        throw std::invalid_argument("compute_response: feature stack does not match model grid");
    const Spectra z = project_spectra(features, model.projection);
    return ifft2_real(response_spectrum(model.basis_filters, z));
}

void train_filter(FilterModel& model, int cg_iters, std::vector<double>* trace) {
    if (model.sample_space.components.empty())
        throw std::invalid_argument("train_filter: empty sample space");
    if (cg_iters < 0) cg_iters = model.cfg.update_cg_iters;
    const TrainContext ctx = make_train_context(model);
    const int C = model.basis_count();

    Spectra x = model.basis_filters;
    const Spectra b = rhs_vector(ctx, model.label_spectrum, C);
    Spectra nx = normal_op(ctx, x);
    Spectra r(C), p(C);
    for (int c = 0; c < C; ++c) r[c] = b[c] - nx[c];
    p = r;
    double rs = dot(r, r);
    for (int it = 0; it < cg_iters; ++it) {
        if (rs <= 1e-300) break;
        const Spectra np = normal_op(ctx, p);
        const double curvature = dot(p, np);
        if (curvature <= 0.0) break;
        const double alpha = rs / curvature;
        for (int c = 0; c < C; ++c) {
            x[c] += alpha * p[c];
            r[c] -= alpha * np[c];
        }
        const double rs_new = dot(r, r);
        const double beta = rs_new / rs;
        for (int c = 0; c < C; ++c) p[c] = r[c] + beta * p[c];
        rs = rs_new;
        if (trace) {
            model.basis_filters = x;
            trace->push_back(objective_value(model, ctx));
        }
    }
    model.basis_filters = x;
}

double filter_objective(const FilterModel& model) {
    return objective_value(model, make_train_context(model));
}

namespace {

// CG solve for the projection matrix with the filters held fixed; ridge
// projection_reg pins the scale of the bilinear factorization.
void optimize_projection_step(FilterModel& model, const std::vector<Spectra>& mean_spectra,
                              int iters) {
    const int D = model.feature_channels;
    const int C = model.basis_count();
    const double n = static_cast<double>(model.grid_rows) * model.grid_cols;
    const auto& comps = model.sample_space.components;

    // T(P) per component: s_l = sum_c conj(f_c) * (sum_d P(d,c) M_ld)
    auto apply = [&](const Eigen::MatrixXd& P) {
        std::vector<Eigen::ArrayXXcd> s(comps.size());
        for (size_t l = 0; l < comps.size(); ++l) {
            Eigen::ArrayXXcd acc = Eigen::ArrayXXcd::Zero(model.grid_rows, model.grid_cols);
            for (int c = 0; c < C; ++c) {
                Eigen::ArrayXXcd zc = Eigen::ArrayXXcd::Zero(model.grid_rows, model.grid_cols);
                for (int d = 0; d < D; ++d) {
                    const double p = P(d, c);
                    if (p != 0.0) zc += p * mean_spectra[l][d];
                }
                acc += model.basis_filters[c].conjugate() * zc;
            }
            s[l] = acc;
        }
        return s;
    };
    // T^T applied to per-component grids
    auto adjoint = [&](const std::vector<Eigen::ArrayXXcd>& r) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(D, C);
        for (size_t l = 0; l < comps.size(); ++l) {
            const double w = comps[l].weight;
            for (int c = 0; c < C; ++c) {
                const Eigen::ArrayXXcd fc = model.basis_filters[c].conjugate() * r[l].conjugate();
                for (int d = 0; d < D; ++d)
                    g(d, c) += w * (mean_spectra[l][d] * fc).real().sum() / n;
            }
        }
        return g;
    };
    auto normal = [&](const Eigen::MatrixXd& P) {
        return (adjoint(apply(P)) + model.cfg.projection_reg * P).eval();
    };

    std::vector<Eigen::ArrayXXcd> y_per_comp(comps.size());
    for (size_t l = 0; l < comps.size(); ++l) y_per_comp[l] = model.label_spectrum;
    const Eigen::MatrixXd b = adjoint(y_per_comp);

    Eigen::MatrixXd x = model.projection;
    Eigen::MatrixXd r = b - normal(x);
    Eigen::MatrixXd p = r;
    double rs = r.squaredNorm();
    for (int it = 0; it < iters; ++it) {
        if (rs <= 1e-300) break;
        const Eigen::MatrixXd np = normal(p);
        const double curvature = p.cwiseProduct(np).sum();
        if (curvature <= 0.0) break;
        const double alpha = rs / curvature;
        x += alpha * p;
        r -= alpha * np;
        const double rs_new = r.squaredNorm();
        p = r + (rs_new / rs) * p;
        rs = rs_new;
    }
    model.projection = x;
}

}  // namespace

void joint_optimize_projection(FilterModel& model) {
    const int gn = std::max(1, model.cfg.first_frame_gn_iters);
    const int inner = std::max(1, model.cfg.first_frame_cg_iters / gn);
    // Square factorization is exact; nothing to compress, so the projection
    // stays at its initialization and the loop reduces to filter training.
    const bool optimize_p = model.basis_count() < model.feature_channels;

    std::vector<Spectra> mean_spectra;
    if (optimize_p) {
        for (const auto& comp : model.sample_space.components) {
            Spectra s(model.feature_channels);
            for (int d = 0; d < model.feature_channels; ++d) s[d] = fft2(comp.mean.channels[d]);
            mean_spectra.push_back(std::move(s));
        }
    }
    for (int step = 0; step < gn; ++step) {
        train_filter(model, inner);
        if (optimize_p && step + 1 < gn) optimize_projection_step(model, mean_spectra, 30);
    }
}

FilterModel init_track_model(const Frame& frame, const TagBox& tb, const TrackerConfig& cfg,
                             const FeatureConfig& fcfg, const ColorNameTable& table) {
    FilterModel model;
    model.cfg = cfg;
    const double lin = std::sqrt(fcfg.search_area_factor);
    model.patch_w = std::max({static_cast<int>(std::lround(tb.w * lin)), 2 * fcfg.hog_cell, 2 * fcfg.cn_cell});
    model.patch_h = std::max({static_cast<int>(std::lround(tb.h * lin)), 2 * fcfg.hog_cell, 2 * fcfg.cn_cell});
    model.ref_tag_w = tb.w;
    model.ref_tag_h = tb.h;

    FeatureStack stack = extract_features(frame, tb, 1.0, fcfg, table, model.patch_w, model.patch_h);
    model.feature_channels = stack.count();
    model.grid_rows = stack.rows();
    model.grid_cols = stack.cols();

    double variance = 0.0;
    for (const auto& ch : stack.channels) variance += ch.square().sum();
    if (variance < 1e-12)
        throw std::runtime_error("init_track_model: degenerate (zero variance) sample");

    const int D = model.feature_channels;
    const int C = std::min(D, cfg.max_basis_filters);

    // PCA of the channel vectors; eigenvectors give an orthonormal projection.
    Eigen::MatrixXd X(D, model.grid_rows * model.grid_cols);
    for (int d = 0; d < D; ++d)
        X.row(d) = Eigen::Map<const Eigen::VectorXd>(stack.channels[d].data(),
                                                     stack.channels[d].size());
    const Eigen::MatrixXd cov = X * X.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    model.projection.resize(D, C);
    for (int c = 0; c < C; ++c) model.projection.col(c) = eig.eigenvectors().col(D - 1 - c);

    // periodic Gaussian label centered on the grid
    const int H = model.grid_rows, W = model.grid_cols;
    model.label_sigma_x = std::max(0.25, cfg.label_sigma_factor * W / lin);
    model.label_sigma_y = std::max(0.25, cfg.label_sigma_factor * H / lin);
    Eigen::ArrayXXd label(H, W);
    const int cy = H / 2, cx = W / 2;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            const double dr = (r - cy);
            const double dc = (c - cx);
            label(r, c) = std::exp(-0.5 * (dr * dr / (model.label_sigma_y * model.label_sigma_y) +
                                           dc * dc / (model.label_sigma_x * model.label_sigma_x)));
        }
    model.label_spectrum = fft2(label);

    // spatial penalty: quadratic bowl around the target, wrapped like the filter
    model.reg_weights.resize(H, W);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            const double dr = wrapped_delta(r, H) / (0.5 * H);
            const double dc = wrapped_delta(c, W) / (0.5 * W);
            model.reg_weights(r, c) = cfg.reg_min + cfg.reg_slope * (dr * dr + dc * dc);
        }

    model.sample_space.max_components = cfg.max_components;
    model.sample_space.learning_rate = cfg.learning_rate;
    model.sample_space.drop_threshold = cfg.gmm_drop_threshold;
    update_sample_space(model.sample_space, stack);

    model.basis_filters.assign(C, Eigen::ArrayXXcd::Zero(H, W));
    joint_optimize_projection(model);
    return model;
}

FeatureStack model_features(const FilterModel& model, const Frame& frame, const TagBox& tb,
                            double scale, const FeatureConfig& fcfg, const ColorNameTable& table) {
    return extract_features(frame, tb, scale, fcfg, table, model.patch_w, model.patch_h);
}

namespace {

// Least-squares quadratic over the 3x3 neighborhood; returns the vertex offset
// (dx, dy) clamped to one cell.
std::pair<double, double> subpixel_offset(const Eigen::ArrayXXd& resp, int py, int px) {
    const int H = static_cast<int>(resp.rows());
    const int W = static_cast<int>(resp.cols());
    Eigen::Matrix<double, 9, 6> A;
    Eigen::Matrix<double, 9, 1> v;
    int row = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            const double x = dx, y = dy;
            A.row(row) << x * x, y * y, x * y, x, y, 1.0;
            v(row) = resp(((py + dy) % H + H) % H, ((px + dx) % W + W) % W);
            ++row;
        }
    const Eigen::Matrix<double, 6, 1> q = (A.transpose() * A).ldlt().solve(A.transpose() * v);
    const double a = q(0), b = q(1), c = q(2), d = q(3), e = q(4);
    const double det = 4.0 * a * b - c * c;
    if (!(det > 1e-12) || a >= 0.0 || b >= 0.0) return {0.0, 0.0};
    double dx = (-2.0 * b * d + c * e) / det;
    double dy = (-2.0 * a * e + c * d) / det;
    dx = std::clamp(dx, -1.0, 1.0);
    dy = std::clamp(dy, -1.0, 1.0);
    return {dx, dy};
}

}  // namespace

LocalizeResult localize(const FilterModel& model, const Frame& frame, const TagBox& prior,
                        const FeatureConfig& fcfg, const ColorNameTable& table) {
    const double lin = std::sqrt(fcfg.search_area_factor);
    LocalizeResult best;
    best.peak_score = -std::numeric_limits<double>::infinity();
    for (const double scale : model.cfg.scale_set) {
        const FeatureStack stack = model_features(model, frame, prior, scale, fcfg, table);
        const Eigen::ArrayXXd resp = compute_response(model, stack);
        int py = 0, px = 0;
        const double peak = resp.maxCoeff(&py, &px);
        if (peak <= best.peak_score) continue;

        const auto [sub_dx, sub_dy] = subpixel_offset(resp, py, px);
        const int H = model.grid_rows, W = model.grid_cols;
        // peak index relative to the label center; indices already span the
        // principal displacement range
        const double dy = (py - H / 2) + sub_dy;
        const double dx = (px - W / 2) + sub_dx;

        const double px_per_cell_x = prior.w * lin * scale / W;
        const double px_per_cell_y = prior.h * lin * scale / H;
        best.tag_box = TagBox(prior.cx + dx * px_per_cell_x, prior.cy + dy * px_per_cell_y,
                              prior.w * scale, prior.h * scale);
        best.peak_score = peak;
        best.scale = scale;
    }
    return best;
}

namespace {

constexpr char kModelMagic[8] = {'T', 'T', 'K', 'F', 'M', '0', '0', '1'};

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
void put_grid(std::ostream& out, const Eigen::ArrayXXd& g) {
    put<std::int32_t>(out, static_cast<std::int32_t>(g.rows()));
    put<std::int32_t>(out, static_cast<std::int32_t>(g.cols()));
    out.write(reinterpret_cast<const char*>(g.data()), static_cast<std::streamsize>(sizeof(double) * g.size()));
}
Eigen::ArrayXXd get_grid(std::istream& in) {
    const int rows = get<std::int32_t>(in);
    const int cols = get<std::int32_t>(in);
    Eigen::ArrayXXd g(rows, cols);
    in.read(reinterpret_cast<char*>(g.data()), static_cast<std::streamsize>(sizeof(double) * g.size()));
    return g;
}
void put_cgrid(std::ostream& out, const Eigen::ArrayXXcd& g) {
    put<std::int32_t>(out, static_cast<std::int32_t>(g.rows()));
    put<std::int32_t>(out, static_cast<std::int32_t>(g.cols()));
    out.write(reinterpret_cast<const char*>(g.data()),
              static_cast<std::streamsize>(sizeof(std::complex<double>) * g.size()));
}
Eigen::ArrayXXcd get_cgrid(std::istream& in) {
    const int rows = get<std::int32_t>(in);
    const int cols = get<std::int32_t>(in);
    Eigen::ArrayXXcd g(rows, cols);
    in.read(reinterpret_cast<char*>(g.data()),
            static_cast<std::streamsize>(sizeof(std::complex<double>) * g.size()));
    return g;
}

}  // namespace

void save_model(const FilterModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    out.write(kModelMagic, sizeof(kModelMagic));
    put<std::int32_t>(out, model.feature_channels);
    put<std::int32_t>(out, model.basis_count());
    put<std::int32_t>(out, model.grid_rows);
    put<std::int32_t>(out, model.grid_cols);
    put<std::int32_t>(out, model.patch_w);
    put<std::int32_t>(out, model.patch_h);
    put(out, model.ref_tag_w);
    put(out, model.ref_tag_h);
    put(out, model.label_sigma_x);
    put(out, model.label_sigma_y);

    const auto& c = model.cfg;
    put<std::int32_t>(out, c.max_components);
    put(out, c.learning_rate);
    put<std::int32_t>(out, c.update_interval);
    put<std::int32_t>(out, c.first_frame_gn_iters);
    put<std::int32_t>(out, c.first_frame_cg_iters);
    put<std::int32_t>(out, c.update_cg_iters);
    put<std::int32_t>(out, c.max_basis_filters);
    put<std::int32_t>(out, static_cast<std::int32_t>(c.scale_set.size()));
    for (double s : c.scale_set) put(out, s);
    put(out, c.label_sigma_factor);
    put(out, c.reg_min);
    put(out, c.reg_slope);
    put(out, c.projection_reg);
    put(out, c.gmm_drop_threshold);

    Eigen::MatrixXd P = model.projection;
    put<std::int32_t>(out, static_cast<std::int32_t>(P.rows()));
    put<std::int32_t>(out, static_cast<std::int32_t>(P.cols()));
    out.write(reinterpret_cast<const char*>(P.data()), static_cast<std::streamsize>(sizeof(double) * P.size()));

    put_grid(out, model.reg_weights);
    put_cgrid(out, model.label_spectrum);
    for (const auto& f : model.basis_filters) put_cgrid(out, f);

    put<std::int32_t>(out, static_cast<std::int32_t>(model.sample_space.components.size()));
    for (const auto& comp : model.sample_space.components) {
        put(out, comp.weight);
        put<std::int32_t>(out, static_cast<std::int32_t>(comp.mean.channels.size()));
        for (const auto& ch : comp.mean.channels) put_grid(out, ch);
    }
    if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

FilterModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw std::runtime_error("load_model: " + path + ": bad magic/version");
    FilterModel model;
    model.feature_channels = get<std::int32_t>(in);
    const int C = get<std::int32_t>(in);
    model.grid_rows = get<std::int32_t>(in);
    model.grid_cols = get<std::int32_t>(in);
    model.patch_w = get<std::int32_t>(in);
    model.patch_h = get<std::int32_t>(in);
    model.ref_tag_w = get<double>(in);
    model.ref_tag_h = get<double>(in);
    model.label_sigma_x = get<double>(in);
    model.label_sigma_y = get<double>(in);

    auto& c = model.cfg;
    c.max_components = get<std::int32_t>(in);
    c.learning_rate = get<double>(in);
    c.update_interval = get<std::int32_t>(in);
    c.first_frame_gn_iters = get<std::int32_t>(in);
    c.first_frame_cg_iters = get<std::int32_t>(in);
    c.update_cg_iters = get<std::int32_t>(in);
    c.max_basis_filters = get<std::int32_t>(in);
    const int n_scales = get<std::int32_t>(in);
    c.scale_set.resize(n_scales);
    for (int i = 0; i < n_scales; ++i) c.scale_set[i] = get<double>(in);
    c.label_sigma_factor = get<double>(in);
    c.reg_min = get<double>(in);
    c.reg_slope = get<double>(in);
    c.projection_reg = get<double>(in);
    c.gmm_drop_threshold = get<double>(in);

    const int pr = get<std::int32_t>(in);
    const int pc = get<std::int32_t>(in);
    model.projection.resize(pr, pc);
    in.read(reinterpret_cast<char*>(model.projection.data()),
            static_cast<std::streamsize>(sizeof(double) * model.projection.size()));

    model.reg_weights = get_grid(in);
    model.label_spectrum = get_cgrid(in);
    model.basis_filters.resize(C);
    for (int i = 0; i < C; ++i) model.basis_filters[i] = get_cgrid(in);

    model.sample_space.max_components = c.max_components;
    model.sample_space.learning_rate = c.learning_rate;
    model.sample_space.drop_threshold = c.gmm_drop_threshold;
    const int n_comp = get<std::int32_t>(in);
    for (int i = 0; i < n_comp; ++i) {
        GmmComponent comp;
        comp.weight = get<double>(in);
        const int n_ch = get<std::int32_t>(in);
        comp.mean.channels.resize(n_ch);
        for (int ch = 0; ch < n_ch; ++ch) comp.mean.channels[ch] = get_grid(in);
        model.sample_space.components.push_back(std::move(comp));
    }
    if (!in) throw std::runtime_error("load_model: " + path + ": truncated");
    return model;
}

}  // namespace tagtrack
