#include "tagtrack/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tagtrack {

namespace {

double lerp(double a, double b, double t) { return a + (b - a) * t; }

std::uint32_t hash_u32(std::uint32_t x) {
    x ^= x >> 16;
    x *= 0x7feb352dU;
    x ^= x >> 15;
    x *= 0x846ca68bU;
    x ^= x >> 16;
    return x;
}

double hash01(int x, int y, std::uint32_t seed) {
    std::uint32_t h = hash_u32(static_cast<std::uint32_t>(x) * 0x9e3779b9U ^
                               static_cast<std::uint32_t>(y) * 0x85ebca6bU ^ seed);
    return h * (1.0 / 4294967296.0);
}

// smooth value noise, bilinear between lattice hashes
double value_noise(double x, double y, double cell, std::uint32_t seed) {
    const double gx = x / cell, gy = y / cell;
    const int x0 = static_cast<int>(std::floor(gx));
    const int y0 = static_cast<int>(std::floor(gy));
    const double tx = gx - x0, ty = gy - y0;
    const double v00 = hash01(x0, y0, seed);
    const double v10 = hash01(x0 + 1, y0, seed);
    const double v01 = hash01(x0, y0 + 1, seed);
    const double v11 = hash01(x0 + 1, y0 + 1, seed);
    const double sx = tx * tx * (3.0 - 2.0 * tx);
    const double sy = ty * ty * (3.0 - 2.0 * ty);
    return lerp(lerp(v00, v10, sx), lerp(v01, v11, sx), sy);
}

double current_gain(const SceneConfig& cfg, int frame) {
    double g = 1.0;
    for (const auto& step : cfg.illumination)
        if (step.frame <= frame) g = step.gain;
    return g;
}

void update_occluder(SceneState& state, const SceneConfig& cfg) {
    const auto& o = cfg.occluder;
    state.occluder_active = false;
    if (!o.enabled || state.frame_index < o.entry_frame) return;
    if (o.exit_frame >= 0 && state.frame_index > o.exit_frame) return;
    state.occluder_active = true;
    if (o.exit_frame < 0) {  // parked
        state.occluder_x = o.x0;
        state.occluder_y = o.y0;
        return;
    }
    const double span = std::max(1, o.exit_frame - o.entry_frame);
    const double t = (state.frame_index - o.entry_frame) / span;
    state.occluder_x = lerp(o.x0, o.x1, t);
    state.occluder_y = lerp(o.y0, o.y1, t);
}

// fraction of agent i covered by the occluder disk or agents drawn above it
double coverage_fraction(const SceneState& state, const SceneConfig& cfg, size_t i) {
    const AgentState& a = state.agents[i];
    const double ch = std::cos(a.heading), sh = std::sin(a.heading);
    constexpr int kGrid = 12;
    int inside = 0, covered = 0;
    for (int gy = 0; gy < kGrid; ++gy)
        for (int gx = 0; gx < kGrid; ++gx) {
            // sample the unit disk of the ellipse parametrically
            const double u = (2.0 * (gx + 0.5) / kGrid - 1.0);
            const double v = (2.0 * (gy + 0.5) / kGrid - 1.0);
            if (u * u + v * v > 1.0) continue;
            ++inside;
            const double px = a.cx + ch * u * a.axis_a - sh * v * a.axis_b;
            const double py = a.cy + sh * u * a.axis_a + ch * v * a.axis_b;
            bool cov = false;
            if (state.occluder_active) {
                const double dx = px - state.occluder_x, dy = py - state.occluder_y;
                if (dx * dx + dy * dy <= cfg.occluder.radius * cfg.occluder.radius) cov = true;
            }
            for (size_t j = i + 1; j < state.agents.size() && !cov; ++j) {
                const AgentState& b = state.agents[j];
                const double bx = px - b.cx, by = py - b.cy;
                const double cb = std::cos(b.heading), sb = std::sin(b.heading);
                const double lu = (cb * bx + sb * by) / b.axis_a;
                const double lv = (-sb * bx + cb * by) / b.axis_b;
                if (lu * lu + lv * lv <= 1.0) cov = true;
            }
            if (cov) ++covered;
        }
    return inside > 0 ? static_cast<double>(covered) / inside : 0.0;
}

}  // namespace

double AgentState::extent_x() const {
    const double c = std::cos(heading), s = std::sin(heading);
    return std::sqrt(axis_a * axis_a * c * c + axis_b * axis_b * s * s);
}

double AgentState::extent_y() const {
    const double c = std::cos(heading), s = std::sin(heading);
    return std::sqrt(axis_a * axis_a * s * s + axis_b * axis_b * c * c);
}

BoundingBox AgentState::box() const {
    const double ex = extent_x(), ey = extent_y();
    return BoundingBox(cx - ex, cy - ey, 2.0 * ex, 2.0 * ey);
}

SceneState init_scene(const SceneConfig& cfg) {
    if (cfg.agent_count < 1) throw std::invalid_argument("init_scene: agent_count must be >= 1");
    SceneState state;
    state.rng = Rng(cfg.seed);
    state.frame_index = 0;
    state.gain = current_gain(cfg, 0);

    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.agent_count))));
    const int rows = (cfg.agent_count + cols - 1) / cols;
    const double usable_w = cfg.frame_w - 2.0 * (cfg.margin + cfg.agent_major);
    const double usable_h = cfg.frame_h - 2.0 * (cfg.margin + cfg.agent_major);
    if (usable_w <= 0 || usable_h <= 0)
        throw std::invalid_argument("init_scene: agents do not fit in the frame");

    for (int i = 0; i < cfg.agent_count; ++i) {
        AgentState a;
        const int r = i / cols, c = i % cols;
        a.cx = cfg.margin + cfg.agent_major + usable_w * (c + 0.5) / cols +
               state.rng.uniform(-6.0, 6.0);
        a.cy = cfg.margin + cfg.agent_major + usable_h * (r + 0.5) / rows +
               state.rng.uniform(-6.0, 6.0);
        a.heading = state.rng.uniform(0.0, 2.0 * M_PI);
        a.speed = cfg.max_speed * state.rng.uniform(0.3, 0.7);
        a.base_a = cfg.agent_major * (1.0 + state.rng.uniform(-0.08, 0.08));
        a.base_b = cfg.agent_minor * (1.0 + state.rng.uniform(-0.08, 0.08));
        a.axis_a = a.base_a;
        a.axis_b = a.base_b;
        a.phase = state.rng.uniform(0.0, 2.0 * M_PI);
        a.texture_seed = static_cast<std::uint32_t>(state.rng.raw() & 0xffffffffu);
        a.tint_r = 0.72 + state.rng.uniform(-0.05, 0.05);
        a.tint_g = 0.55 + state.rng.uniform(-0.05, 0.05);
        a.tint_b = 0.45 + state.rng.uniform(-0.05, 0.05);
        state.agents.push_back(a);
    }
    update_occluder(state, cfg);
    for (size_t i = 0; i < state.agents.size(); ++i)
        state.agents[i].occluded = coverage_fraction(state, cfg, i) > 0.5;
    return state;
}

void step_scene(SceneState& state, const SceneConfig& cfg) {
    ++state.frame_index;
    state.gain = current_gain(cfg, state.frame_index);

    const HuddleEpisode* huddle = nullptr;
    for (const auto& h : cfg.huddles)
        if (state.frame_index >= h.start && state.frame_index <= h.end) huddle = &h;

    auto in_huddle = [&](int idx) {
        if (!huddle) return false;
        if (huddle->members.empty()) return true;
        return std::find(huddle->members.begin(), huddle->members.end(), idx) !=
               huddle->members.end();
    };

    for (size_t i = 0; i < state.agents.size(); ++i) {
        AgentState& a = state.agents[i];
        a.heading += (1.0 - cfg.heading_persistence) * M_PI * state.rng.gaussian();
        a.speed = std::clamp(a.speed + 0.15 * cfg.step_sigma * state.rng.gaussian(), 0.1,
                             cfg.max_speed);
        if (cfg.deform_amplitude > 0.0) {
            a.phase += 2.0 * M_PI / cfg.deform_period;
            const double s = cfg.deform_amplitude * std::sin(a.phase);
            a.axis_a = a.base_a * (1.0 + s);
            a.axis_b = a.base_b * (1.0 - s);
        }
        double vx = a.speed * std::cos(a.heading);
        double vy = a.speed * std::sin(a.heading);

        if (in_huddle(static_cast<int>(i))) {
            const double dx = huddle->x - a.cx, dy = huddle->y - a.cy;
            const double d = std::hypot(dx, dy);
            if (d > 4.0) {
                vx += huddle->strength * dx / d;
                vy += huddle->strength * dy / d;
            }
        }

        // soft pairwise repulsion; weakened for gathering agents
        for (size_t j = 0; j < state.agents.size(); ++j) {
            if (j == i) continue;
            const AgentState& b = state.agents[j];
            const double dx = a.cx - b.cx, dy = a.cy - b.cy;
            const double d = std::hypot(dx, dy);
            const double d_min = 0.9 * (a.axis_a + b.axis_a);
            if (d > 1e-6 && d < d_min) {
                const double gathering = in_huddle(static_cast<int>(i)) && in_huddle(static_cast<int>(j));
                const double push = (gathering ? 0.12 : 0.8) * (d_min - d) / d_min;
                vx += push * dx / d;
                vy += push * dy / d;
            }
        }

        a.cx += vx;
        a.cy += vy;

        // pen walls: reflect and clamp so the tight box stays inside
        const double ex = a.extent_x(), ey = a.extent_y();
        const double lo_x = cfg.margin + ex, hi_x = cfg.frame_w - cfg.margin - ex;
        const double lo_y = cfg.margin + ey, hi_y = cfg.frame_h - cfg.margin - ey;
        if (a.cx < lo_x || a.cx > hi_x) a.heading = M_PI - a.heading;
        if (a.cy < lo_y || a.cy > hi_y) a.heading = -a.heading;
        a.cx = std::clamp(a.cx, lo_x, hi_x);
        a.cy = std::clamp(a.cy, lo_y, hi_y);
    }

    update_occluder(state, cfg);
    for (size_t i = 0; i < state.agents.size(); ++i)
        state.agents[i].occluded = coverage_fraction(state, cfg, i) > 0.5;
}

Frame render_frame(const SceneState& state, const SceneConfig& cfg) {
    const bool color = cfg.mode == ImagingMode::Day;
    Frame frame(cfg.frame_w, cfg.frame_h, color ? 3 : 1);
    const std::uint32_t floor_seed = static_cast<std::uint32_t>(cfg.seed * 2654435761u + 7u);

    for (int y = 0; y < cfg.frame_h; ++y) {
        for (int x = 0; x < cfg.frame_w; ++x) {
            const double n = value_noise(x, y, 16.0, floor_seed);
            const double base = 0.32 + 0.10 * n;
            double r, g, b;
            if (color) {
                r = base * 1.05;
                g = base * 0.98;
                b = base * 0.90;
            } else {
                // additive IR shadow gradient
                r = g = b = base + 0.06 * (static_cast<double>(x) / cfg.frame_w) +
                            0.04 * (static_cast<double>(y) / cfg.frame_h);
            }
            if (color) {
                frame.at(x, y, 0) = static_cast<float>(r);
                frame.at(x, y, 1) = static_cast<float>(g);
                frame.at(x, y, 2) = static_cast<float>(b);
            } else {
                frame.at(x, y, 0) = static_cast<float>(r);
            }
        }
    }

    for (const AgentState& a : state.agents) {
        const double ex = a.extent_x(), ey = a.extent_y();
        const int x0 = std::max(0, static_cast<int>(std::floor(a.cx - ex)));
        const int x1 = std::min(cfg.frame_w - 1, static_cast<int>(std::ceil(a.cx + ex)));
        const int y0 = std::max(0, static_cast<int>(std::floor(a.cy - ey)));
        const int y1 = std::min(cfg.frame_h - 1, static_cast<int>(std::ceil(a.cy + ey)));
        const double ch = std::cos(a.heading), sh = std::sin(a.heading);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - a.cx, dy = y - a.cy;
                const double u = (ch * dx + sh * dy) / a.axis_a;
                const double v = (-sh * dx + ch * dy) / a.axis_b;
                const double rr = u * u + v * v;
                if (rr > 1.0) continue;
                // body texture lives in agent-local coordinates
                const double tex =
                    value_noise(u * a.axis_a + 512.0, v * a.axis_b + 512.0, 5.0, a.texture_seed);
                const double shade = 1.0 - 0.30 * rr;
                const double body = (0.55 + 0.30 * tex) * shade;
                if (color) {
                    frame.at(x, y, 0) = static_cast<float>(std::min(0.98, body * a.tint_r * 1.25));
                    frame.at(x, y, 1) = static_cast<float>(std::min(0.98, body * a.tint_g * 1.25));
                    frame.at(x, y, 2) = static_cast<float>(std::min(0.98, body * a.tint_b * 1.25));
                } else {
                    frame.at(x, y, 0) = static_cast<float>(std::min(0.98, body));
                }
            }
    }

    if (state.occluder_active) {
        const double r = cfg.occluder.radius;
        const int x0 = std::max(0, static_cast<int>(std::floor(state.occluder_x - r)));
        const int x1 = std::min(cfg.frame_w - 1, static_cast<int>(std::ceil(state.occluder_x + r)));
        const int y0 = std::max(0, static_cast<int>(std::floor(state.occluder_y - r)));
        const int y1 = std::min(cfg.frame_h - 1, static_cast<int>(std::ceil(state.occluder_y + r)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - state.occluder_x, dy = y - state.occluder_y;
                const double rr = (dx * dx + dy * dy) / (r * r);
                if (rr > 1.0) continue;
                const double edge = std::min(1.0, 4.0 * (1.0 - rr));
                const double alpha = cfg.occluder.opacity * edge;
                const double tex = value_noise(dx + 64.0, dy + 64.0, 7.0,
                                               static_cast<std::uint32_t>(cfg.seed + 99));
                const double dark = 0.04 + 0.08 * tex;
                for (int c = 0; c < frame.channels; ++c)
                    frame.at(x, y, c) =
                        static_cast<float>((1.0 - alpha) * frame.at(x, y, c) + alpha * dark);
            }
    }

    if (state.gain != 1.0)
        for (float& v : frame.data)
            v = static_cast<float>(std::clamp(v * state.gain, 0.0, 1.0));
    return frame;
}

std::vector<SceneState> simulate(const SceneConfig& cfg, int n_frames) {
    std::vector<SceneState> states;
    if (n_frames <= 0) return states;
    states.reserve(static_cast<size_t>(n_frames));
    states.push_back(init_scene(cfg));
    for (int f = 1; f < n_frames; ++f) {
        SceneState next = states.back();
        step_scene(next, cfg);
        states.push_back(std::move(next));
    }
    return states;
}

GroundTruth emit_ground_truth(const std::vector<SceneState>& states) {
    GroundTruth gt;
    gt.num_frames = static_cast<int>(states.size());
    for (const SceneState& state : states) {
        for (size_t i = 0; i < state.agents.size(); ++i) {
            const int id = static_cast<int>(i) + 1;
            gt.trajectories[id].emplace_back(state.frame_index, state.agents[i].box());
            if (state.agents[i].occluded) gt.occluded.insert({state.frame_index, id});
        }
    }
    return gt;
}

namespace {

std::string normalize_scenario(std::string name) {
    while (!name.empty() && (name.back() == '\'' || name.back() == 'p')) name.pop_back();
    for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

}  // namespace

bool is_known_scenario(const std::string& name) {
    const std::string n = normalize_scenario(name);
    return n == "CLEAN" || n == "S1" || n == "S2" || n == "S3" || n == "S4" || n == "S5";
}

SceneConfig scenario_preset(const std::string& name) {
    SceneConfig cfg;
    const std::string n = normalize_scenario(name);
    const double cx = cfg.frame_w / 2.0, cy_mid = cfg.frame_h / 2.0;

    if (n == "CLEAN") {
        cfg.deform_amplitude = 0.03;
        return cfg;
    }
    if (n == "S1") {
        // deformation + light fluctuation + long-stay occluder
        cfg.deform_amplitude = 0.08;
        cfg.illumination = {{0, 1.0}, {150, 0.75}, {300, 1.0}, {450, 0.85}};
        cfg.occluder = {true, 100, -1, cx - 120.0, cy_mid - 40.0, 0.0, 0.0, 58.0, 0.82};
        return cfg;
    }
    if (n == "S2") {
        // severe inter-agent occlusion; targets become temporarily invisible
        cfg.deform_amplitude = 0.06;
        cfg.huddles = {{120, 220, cx - 180.0, cy_mid, 0.7, {0, 1, 2}},
                       {350, 450, cx + 160.0, cy_mid - 40.0, 0.7, {4, 5, 6}}};
        return cfg;
    }
    if (n == "S3") {
        // light fluctuation + transient insect + mild crowding
        cfg.deform_amplitude = 0.05;
        cfg.illumination = {{0, 1.0}, {180, 0.7}, {340, 1.0}};
        cfg.occluder = {true, 200, 320, 60.0, 80.0, cfg.frame_w - 80.0, cfg.frame_h - 100.0, 55.0, 0.85};
        cfg.huddles = {{400, 470, cx, cy_mid + 60.0, 0.6, {2, 3}}};
        return cfg;
    }
    if (n == "S4") {
        cfg.mode = ImagingMode::Night;
        cfg.deform_amplitude = 0.05;
        cfg.occluder = {true, 150, 290, cfg.frame_w - 70.0, 70.0, 80.0, cfg.frame_h - 80.0, 55.0, 0.85};
        cfg.huddles = {{330, 420, cx - 100.0, cy_mid, 0.6, {1, 2}}};
        return cfg;
    }
    if (n == "S5") {
        cfg.mode = ImagingMode::Night;
        cfg.deform_amplitude = 0.07;
        cfg.huddles = {{140, 240, cx + 120.0, cy_mid - 30.0, 0.65, {3, 4}},
                       {380, 470, cx - 150.0, cy_mid + 40.0, 0.65, {6, 7}}};
        return cfg;
    }
    throw std::invalid_argument("unknown scenario '" + name + "' (expected clean, S1'..S5')");
}

}  // namespace tagtrack
