#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagtrack/geometry.hpp"

namespace tagtrack {

// Time-ordered (frame, box) list under one id; frames strictly increasing.
using Tracklet = std::vector<std::pair<int, BoundingBox>>;
using TrajectorySet = std::map<int, Tracklet>;

struct GroundTruth {
    TrajectorySet trajectories;
    std::set<std::pair<int, int>> occluded;  // (frame, id)
    int num_frames = 0;
};

// CSV: `frame,id,x,y,w,h` (whitespace tolerant, '#' comments, optional
// header). Extra trailing columns are ignored on load.
void write_trajectories(const TrajectorySet& traj, const std::string& path);
TrajectorySet load_trajectories(const std::string& path);

// GT export carries one extra column: `frame,id,x,y,w,h,occluded`.
void write_ground_truth(const GroundTruth& gt, const std::string& path);

std::map<int, BoundingBox> boxes_at_frame(const TrajectorySet& traj, int frame);
// [first, last] over every tracklet; (0, -1) when empty.
std::pair<int, int> frame_range(const TrajectorySet& traj);

}  // namespace tagtrack
