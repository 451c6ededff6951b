#include "tagtrack/detection_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tagtrack/rng.hpp"

namespace tagtrack {

bool parse_numeric_row(const std::string& line, std::vector<double>& out);  // trajectory.cpp

namespace {
bool has_alpha(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c); });
}
}  // namespace

std::vector<DetectionSet> load_detections(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_detections: cannot open " + path);
    std::vector<DetectionSet> sets;
    std::string line;
    std::vector<double> row;
    int line_no = 0;
    bool seen_data = false;
    int max_frame = -1;
    std::vector<std::pair<int, Detection>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!parse_numeric_row(line, row)) {
            if (!seen_data && has_alpha(line)) continue;
            throw std::runtime_error("load_detections: " + path + ": line " +
                                     std::to_string(line_no) + ": malformed row");
        }
        if (row.size() != 6)
            throw std::runtime_error("load_detections: " + path + ": line " +
                                     std::to_string(line_no) +
                                     ": expected frame,x,y,w,h,confidence");
        seen_data = true;
        const int frame = static_cast<int>(row[0]);
        if (frame < 0)
            throw std::runtime_error("load_detections: " + path + ": line " +
                                     std::to_string(line_no) + ": negative frame index");
        if (row[5] < 0.0 || row[5] > 1.0)
            throw std::runtime_error("load_detections: " + path + ": line " +
                                     std::to_string(line_no) + ": confidence outside [0,1]");
        Detection det;
        try {
            det.box = BoundingBox(row[1], row[2], row[3], row[4]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("load_detections: " + path + ": line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
        det.confidence = row[5];
        rows.emplace_back(frame, det);
        max_frame = std::max(max_frame, frame);
    }
    sets.resize(static_cast<size_t>(max_frame + 1));
    for (int f = 0; f <= max_frame; ++f) sets[f].frame_index = f;
    for (auto& [frame, det] : rows) sets[frame].detections.push_back(det);
    return sets;
}

void write_detections(const std::vector<DetectionSet>& sets, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_detections: cannot open " + path);
    out << "# frame,x,y,w,h,confidence\n";
    for (const auto& set : sets) {
        for (const auto& det : set.detections) {
            char buf[176];
            std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", set.frame_index,
                          det.box.x, det.box.y, det.box.w, det.box.h, det.confidence);
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("write_detections: write failed for " + path);
}

std::vector<DetectionSet> synthetic_detections(const GroundTruth& gt, const NoiseProfile& profile,
                                               int frame_w, int frame_h) {
    const auto [first, last] = frame_range(gt.trajectories);
    const int n_frames = std::max(gt.num_frames, last + 1);
    Rng rng(profile.seed);
    std::vector<DetectionSet> sets(static_cast<size_t>(std::max(0, n_frames)));

    // nominal spurious-box size from the ground truth population
    double nominal_w = 40.0, nominal_h = 30.0;
    {
        double sw = 0.0, sh = 0.0;
        long n = 0;
        for (const auto& [id, t] : gt.trajectories)
            for (const auto& [f, b] : t) {
                sw += b.w;
                sh += b.h;
                ++n;
            }
        if (n > 0) {
            nominal_w = sw / n;
            nominal_h = sh / n;
        }
    }

    for (int f = 0; f < n_frames; ++f) {
        sets[f].frame_index = f;
        const auto boxes = boxes_at_frame(gt.trajectories, f);
        for (const auto& [id, box] : boxes) {
            const bool occluded = gt.occluded.count({f, id}) > 0;
            const double fn =
                std::min(1.0, profile.fn_rate * (occluded ? profile.occlusion_fn_boost : 1.0));
            if (rng.uniform() < fn) continue;
            const double cx = box.cx() + profile.center_jitter_sigma * rng.gaussian();
            const double cy = box.cy() + profile.center_jitter_sigma * rng.gaussian();
            const double w = std::max(1.0, box.w * (1.0 + profile.size_jitter_sigma * rng.gaussian()));
            const double h = std::max(1.0, box.h * (1.0 + profile.size_jitter_sigma * rng.gaussian()));
            Detection det;
            det.box = BoundingBox::from_center(cx, cy, w, h);
            det.confidence = 0.7 + 0.3 * rng.uniform();
            sets[f].detections.push_back(det);
        }
        const int spurious = rng.poisson(profile.fp_rate);
        for (int s = 0; s < spurious; ++s) {
            const double w = std::max(2.0, nominal_w * (0.5 + rng.uniform()));
            const double h = std::max(2.0, nominal_h * (0.5 + rng.uniform()));
            const double cx = rng.uniform(0.5 * w, std::max(0.5 * w + 1.0, frame_w - 0.5 * w));
            const double cy = rng.uniform(0.5 * h, std::max(0.5 * h + 1.0, frame_h - 0.5 * h));
            Detection det;
            det.box = BoundingBox::from_center(cx, cy, w, h);
            det.confidence = 0.1 + 0.4 * rng.uniform();
            sets[f].detections.push_back(det);
        }
    }
    return sets;
}

std::vector<std::pair<int, BoundingBox>> load_initial_boxes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_initial_boxes: cannot open " + path);
    std::vector<std::pair<int, BoundingBox>> boxes;
    std::string line;
    std::vector<double> row;
    int line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!parse_numeric_row(line, row)) {
            if (!seen_data && has_alpha(line)) continue;
            throw std::runtime_error("load_initial_boxes: " + path + ": line " +
                                     std::to_string(line_no) + ": malformed row");
        }
        if (row.size() != 5)
            throw std::runtime_error("load_initial_boxes: " + path + ": line " +
                                     std::to_string(line_no) + ": expected id,x,y,w,h");
        seen_data = true;
        const int id = static_cast<int>(row[0]);
        for (const auto& [other, b] : boxes)
            if (other == id)
                throw std::runtime_error("load_initial_boxes: " + path + ": line " +
                                         std::to_string(line_no) + ": duplicate id " +
                                         std::to_string(id));
        boxes.emplace_back(id, BoundingBox(row[1], row[2], row[3], row[4]));
    }
    if (boxes.empty())
        throw std::runtime_error("load_initial_boxes: " + path + ": population must be >= 1");
    return boxes;
}

void write_initial_boxes(const std::vector<std::pair<int, BoundingBox>>& boxes,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_initial_boxes: cannot open " + path);
    out << "# id,x,y,w,h\n";
    for (const auto& [id, box] : boxes) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n", id, box.x, box.y, box.w, box.h);
        out << buf;
    }
    if (!out) throw std::runtime_error("write_initial_boxes: write failed for " + path);
}

}  // namespace tagtrack
