#include "tagtrack/trajectory.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tagtrack {

namespace {

bool has_alpha(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c); });
}

}  // namespace

// Splits a CSV-ish line into doubles; commas and whitespace both separate.
// Returns false for blank/comment lines. Used by the other loaders too.
bool parse_numeric_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::string s = line;
    for (char& c : s)
        if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream in(s);
    double v;
    while (in >> v) out.push_back(v);
    return !out.empty();
}

void write_trajectories(const TrajectorySet& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectories: cannot open " + path);
    out << "frame,id,x,y,w,h\n";
    const auto [first, last] = frame_range(traj);
    for (int f = first; f <= last; ++f) {
        for (const auto& [id, tracklet] : traj) {
            for (const auto& [frame, box] : tracklet) {
                if (frame != f) continue;
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f,%.6f\n", f, id, box.x, box.y,
                              box.w, box.h);
                out << buf;
            }
        }
    }
    if (!out) throw std::runtime_error("write_trajectories: write failed for " + path);
}

TrajectorySet load_trajectories(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_trajectories: cannot open " + path);
    TrajectorySet traj;
    std::string line;
    int line_no = 0;
    bool seen_data = false;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!parse_numeric_row(line, row)) {
            if (!seen_data && has_alpha(line)) continue;  // header
            throw std::runtime_error("load_trajectories: " + path + ": line " +
                                     std::to_string(line_no) + ": malformed row");
        }
        if (row.size() < 6)
            throw std::runtime_error("load_trajectories: " + path + ": line " +
                                     std::to_string(line_no) + ": expected frame,id,x,y,w,h");
        seen_data = true;
        const int frame = static_cast<int>(row[0]);
        const int id = static_cast<int>(row[1]);
        traj[id].emplace_back(frame, BoundingBox(row[2], row[3], row[4], row[5]));
    }
    for (auto& [id, tracklet] : traj) {
        std::stable_sort(tracklet.begin(), tracklet.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 1; i < tracklet.size(); ++i)
            if (tracklet[i].first == tracklet[i - 1].first)
                throw std::runtime_error("load_trajectories: " + path + ": duplicate frame " +
                                         std::to_string(tracklet[i].first) + " for id " +
                                         std::to_string(id));
    }
    return traj;
}

void write_ground_truth(const GroundTruth& gt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ground_truth: cannot open " + path);
    out << "frame,id,x,y,w,h,occluded\n";
    const auto [first, last] = frame_range(gt.trajectories);
    for (int f = first; f <= last; ++f) {
        for (const auto& [id, tracklet] : gt.trajectories) {
            for (const auto& [frame, box] : tracklet) {
                if (frame != f) continue;
                char buf[176];
                std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f,%.6f,%d\n", f, id, box.x,
                              box.y, box.w, box.h, gt.occluded.count({f, id}) ? 1 : 0);
                out << buf;
            }
        }
    }
    if (!out) throw std::runtime_error("write_ground_truth: write failed for " + path);
}

std::map<int, BoundingBox> boxes_at_frame(const TrajectorySet& traj, int frame) {
    std::map<int, BoundingBox> boxes;
    for (const auto& [id, tracklet] : traj)
        for (const auto& [f, box] : tracklet)
            if (f == frame) boxes.emplace(id, box);
    return boxes;
}

std::pair<int, int> frame_range(const TrajectorySet& traj) {
    int first = 0, last = -1;
    bool any = false;
    for (const auto& [id, tracklet] : traj) {
        if (tracklet.empty()) continue;
        if (!any) {
            first = tracklet.front().first;
            last = tracklet.back().first;
            any = true;
        } else {
            first = std::min(first, tracklet.front().first);
            last = std::max(last, tracklet.back().first);
        }
    }
    return {first, last};
}

}  // namespace tagtrack
