#include "tagtrack/features.hpp"

#include <algorithm>
#include <cmath>

namespace tagtrack {

Frame extract_patch(const Frame& frame, const TagBox& tb, double scale, const FeatureConfig& cfg,
                    int out_w, int out_h) {
    if (!(scale > 0.0)) throw std::invalid_argument("extract_patch: scale must be positive");
    if (out_w < 1 || out_h < 1) throw std::invalid_argument("extract_patch: bad output size");
    const double lin = std::sqrt(cfg.search_area_factor) * scale;
    const double cover_w = tb.w * lin;
    const double cover_h = tb.h * lin;
    if (tb.cx + 0.5 * cover_w < 0.0 || tb.cx - 0.5 * cover_w > frame.width - 1.0 ||
        tb.cy + 0.5 * cover_h < 0.0 || tb.cy - 0.5 * cover_h > frame.height - 1.0)
        throw InvalidTrackState("extract_patch: search window entirely outside frame");

    Frame patch(out_w, out_h, frame.channels);
    const double step_x = cover_w / out_w;
    const double step_y = cover_h / out_h;
    for (int y = 0; y < out_h; ++y) {
        const double sy = tb.cy + (y - (out_h - 1) * 0.5) * step_y;
        for (int x = 0; x < out_w; ++x) {
            const double sx = tb.cx + (x - (out_w - 1) * 0.5) * step_x;
            for (int c = 0; c < frame.channels; ++c) patch.at(x, y, c) = frame.sample(sx, sy, c);
        }
    }
    return patch;
}

Frame extract_patch(const Frame& frame, const TagBox& tb, double scale, const FeatureConfig& cfg) {
    const double lin = std::sqrt(cfg.search_area_factor) * scale;
    const int out_w = std::max(1, static_cast<int>(std::lround(tb.w * lin)));
    const int out_h = std::max(1, static_cast<int>(std::lround(tb.h * lin)));
    return extract_patch(frame, tb, scale, cfg, out_w, out_h);
}

namespace {

constexpr int kOrientations = 9;
constexpr double kHogClip = 0.2;
constexpr double kHogEps = 1e-10;

}  // namespace

FeatureBlock hog_features(const Frame& patch, int cell) {
    if (cell < 1) throw std::invalid_argument("hog_features: cell must be >= 1");
    if (patch.width < 2 * cell || patch.height < 2 * cell)
        throw std::invalid_argument("hog_features: patch side must be at least 2 cells");

    const Frame gray = patch.to_grayscale();
    const int w = gray.width, h = gray.height;
    const int cw = w / cell, ch = h / cell;

    // snap directions for 18 contrast-sensitive bins
    double ucos[kOrientations], usin[kOrientations];
    for (int o = 0; o < kOrientations; ++o) {
        const double a = M_PI * o / kOrientations;
        ucos[o] = std::cos(a);
        usin[o] = std::sin(a);
    }

    std::vector<Eigen::ArrayXXd> hist(2 * kOrientations, Eigen::ArrayXXd::Zero(ch, cw));
    auto px = [&](int x, int y) {
        return static_cast<double>(gray.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1), 0));
    };

    for (int y = 0; y < ch * cell; ++y) {
        for (int x = 0; x < cw * cell; ++x) {
            const double gx = px(x + 1, y) - px(x - 1, y);
            const double gy = px(x, y + 1) - px(x, y - 1);
            const double mag = std::sqrt(gx * gx + gy * gy);
            if (mag <= 0.0) continue;
            int best = 0;
            double best_dot = 0.0;
            for (int o = 0; o < kOrientations; ++o) {
                const double dot = gx * ucos[o] + gy * usin[o];
                if (std::abs(dot) > std::abs(best_dot)) {
                    best_dot = dot;
                    best = o;
                }
            }
            const int bin = best_dot >= 0.0 ? best : best + kOrientations;

            // bilinear spatial interpolation into the four nearest cells
            const double xp = (x + 0.5) / cell - 0.5;
            const double yp = (y + 0.5) / cell - 0.5;
            const int ix = static_cast<int>(std::floor(xp));
            const int iy = static_cast<int>(std::floor(yp));
            const double vx = xp - ix;
            const double vy = yp - iy;
            for (int dy = 0; dy <= 1; ++dy)
                for (int dx = 0; dx <= 1; ++dx) {
                    const int cxi = ix + dx, cyi = iy + dy;
                    if (cxi < 0 || cxi >= cw || cyi < 0 || cyi >= ch) continue;
                    const double wgt = (dx ? vx : 1.0 - vx) * (dy ? vy : 1.0 - vy);
                    hist[bin](cyi, cxi) += mag * wgt;
                }
        }
    }

    Eigen::ArrayXXd energy = Eigen::ArrayXXd::Zero(ch, cw);
    for (int o = 0; o < kOrientations; ++o)
        energy += (hist[o] + hist[o + kOrientations]).square();

    FeatureBlock block;
    block.grid_w = cw;
    block.grid_h = ch;
    block.cell_size = cell;
    block.channels.assign(31, Eigen::ArrayXXd::Zero(ch, cw));

    auto cell_energy = [&](int cxi, int cyi) {
        return energy(std::clamp(cyi, 0, ch - 1), std::clamp(cxi, 0, cw - 1));
    };
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            // four 2x2 neighbourhood normalizers (clamped at borders)
            double norms[4];
            int k = 0;
            for (int sy = -1; sy <= 1; sy += 2)
                for (int sx = -1; sx <= 1; sx += 2) {
                    const double n = cell_energy(cx, cy) + cell_energy(cx + sx, cy) +
                                     cell_energy(cx, cy + sy) + cell_energy(cx + sx, cy + sy);
                    norms[k++] = 1.0 / std::sqrt(n + kHogEps);
                }
            double texture[4] = {0, 0, 0, 0};
            for (int o = 0; o < 2 * kOrientations; ++o) {
                const double v = hist[o](cy, cx);
                double sum = 0.0;
                for (int j = 0; j < 4; ++j) {
                    const double vn = std::min(v * norms[j], kHogClip);
                    sum += vn;
                    texture[j] += vn;
                }
                block.channels[o](cy, cx) = 0.5 * sum;
            }
            for (int o = 0; o < kOrientations; ++o) {
                const double v = hist[o](cy, cx) + hist[o + kOrientations](cy, cx);
                double sum = 0.0;
                for (int j = 0; j < 4; ++j) sum += std::min(v * norms[j], kHogClip);
                block.channels[2 * kOrientations + o](cy, cx) = 0.5 * sum;
            }
            for (int j = 0; j < 4; ++j)
                block.channels[27 + j](cy, cx) = 0.2357 * texture[j];
        }
    }
    return block;
}

FeatureBlock color_names_features(const Frame& patch, int cell, const ColorNameTable& table) {
    if (cell < 1) throw std::invalid_argument("color_names_features: cell must be >= 1");
    if (!patch.color())
        throw std::invalid_argument("color_names_features: color patch required (disabled at night)");
    const int cw = patch.width / cell, ch = patch.height / cell;
    if (cw < 1 || ch < 1) throw std::invalid_argument("color_names_features: patch smaller than one cell");

    FeatureBlock block;
    block.grid_w = cw;
    block.grid_h = ch;
    block.cell_size = cell;
    block.channels.assign(ColorNameTable::kNames, Eigen::ArrayXXd::Zero(ch, cw));
    const double inv_count = 1.0 / (cell * cell);
    for (int cy = 0; cy < ch; ++cy)
        for (int cx = 0; cx < cw; ++cx) {
            double acc[ColorNameTable::kNames] = {};
            for (int y = cy * cell; y < (cy + 1) * cell; ++y)
                for (int x = cx * cell; x < (cx + 1) * cell; ++x) {
                    const double* p = table.lookup(patch.at(x, y, 0), patch.at(x, y, 1), patch.at(x, y, 2));
                    for (int n = 0; n < ColorNameTable::kNames; ++n) acc[n] += p[n];
                }
            for (int n = 0; n < ColorNameTable::kNames; ++n)
                block.channels[n](cy, cx) = acc[n] * inv_count;
        }
    return block;
}

Eigen::VectorXd resample_cubic(const Eigen::VectorXd& in, int n_out) {
    const int n_in = static_cast<int>(in.size());
    Eigen::VectorXd out(n_out);
    if (n_in == 1) {
        out.setConstant(in(0));
        return out;
    }
    // linear extrapolation keeps ramps exact at the borders
    auto tap = [&](int i) -> double {
        if (i < 0) return in(0) + i * (in(1) - in(0));
        if (i >= n_in) return in(n_in - 1) + (i - (n_in - 1)) * (in(n_in - 1) - in(n_in - 2));
        return in(i);
    };
    const double ratio = static_cast<double>(n_in) / n_out;
    for (int j = 0; j < n_out; ++j) {
        const double p = (j + 0.5) * ratio - 0.5;
        const int i = static_cast<int>(std::floor(p));
        const double t = p - i;
        const double t2 = t * t, t3 = t2 * t;
        const double w0 = -0.5 * t3 + t2 - 0.5 * t;
        const double w1 = 1.5 * t3 - 2.5 * t2 + 1.0;
        const double w2 = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
        const double w3 = 0.5 * t3 - 0.5 * t2;
        out(j) = w0 * tap(i - 1) + w1 * tap(i) + w2 * tap(i + 1) + w3 * tap(i + 2);
    }
    return out;
}

namespace {

Eigen::ArrayXXd resample_grid(const Eigen::ArrayXXd& in, int rows, int cols) {
    if (in.rows() == rows && in.cols() == cols) return in;
    Eigen::ArrayXXd tmp(in.rows(), cols);
    for (Eigen::Index r = 0; r < in.rows(); ++r)
        tmp.row(r) = resample_cubic(in.row(r).matrix().transpose(), cols).transpose().array();
    Eigen::ArrayXXd out(rows, cols);
    for (int c = 0; c < cols; ++c)
        out.col(c) = resample_cubic(tmp.col(c).matrix(), rows).array();
    return out;
}

}  // namespace

FeatureStack to_common_grid(const FeatureMap& map) {
    if (map.blocks.empty()) throw std::invalid_argument("to_common_grid: at least one block required");
    int rows = 0, cols = 0;
    for (const auto& b : map.blocks) {
        if (b.grid_w * b.grid_h > rows * cols) {
            rows = b.grid_h;
            cols = b.grid_w;
        }
    }
    FeatureStack stack;
    stack.channels.reserve(static_cast<size_t>(map.total_channels()));
    for (const auto& b : map.blocks)
        for (const auto& ch : b.channels) stack.channels.push_back(resample_grid(ch, rows, cols));
    return stack;
}

void center_channels(FeatureStack& stack) {
    for (auto& ch : stack.channels) ch -= ch.mean();
}

FeatureStack extract_features(const Frame& frame, const TagBox& tb, double scale,
                              const FeatureConfig& cfg, const ColorNameTable& table, int patch_w,
                              int patch_h) {
    const Frame patch = extract_patch(frame, tb, scale, cfg, patch_w, patch_h);
    FeatureMap map;
    map.blocks.push_back(hog_features(patch, cfg.hog_cell));
    if (cfg.mode == ImagingMode::Day) {
        if (!patch.color())
            throw std::invalid_argument("extract_features: day mode requires color frames");
        map.blocks.push_back(color_names_features(patch, cfg.cn_cell, table));
    }
    FeatureStack stack = to_common_grid(map);
    center_channels(stack);
    return stack;
}

}  // namespace tagtrack
