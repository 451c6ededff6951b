#include "tagtrack/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tagtrack {

double pair_cost(const BoundingBox& db, const TagBox& tb, double delta, double gate_cost) {
    const double overlap = overlap_fraction(db, tb);
    if (overlap <= 0.0) return gate_cost;
    return -std::log(overlap) + delta * normalized_center_distance(db, tb);
}

Eigen::MatrixXd build_cost_matrix(const std::vector<BoundingBox>& detections,
                                  const std::vector<TagBox>& tag_boxes,
                                  const AssociationConfig& cfg) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(detections.size()),
                      static_cast<Eigen::Index>(tag_boxes.size()));
    for (size_t j = 0; j < detections.size(); ++j)
        for (size_t i = 0; i < tag_boxes.size(); ++i) {
            const double overlap = overlap_fraction(detections[j], tag_boxes[i]);
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                overlap <= 0.0
                    ? kInfeasibleCost
                    : -std::log(overlap) + cfg.delta * normalized_center_distance(detections[j], tag_boxes[i]);
        }
    return m;
}

BoundingBox default_box_for(const Track& track) {
    if (track.tracklet.empty()) return track.bounding_box;
    const double dx = track.tag_box.cx - track.tag_at_confirm.cx;
    const double dy = track.tag_box.cy - track.tag_at_confirm.cy;
    return track.bounding_box.translated(dx, dy);
}

void reinitialize_tagbox(Track& track, const BoundingBox& box, double reinit_fraction) {
    track.tag_box = TagBox::centered_in(box, reinit_fraction);
    track.bounding_box = box;
    track.tag_at_confirm = track.tag_box;
    track.age = 0;
    track.status = TrackStatus::Tracked;
}

namespace {

// Best feasible detection for a stand-in box among the not-yet-used ones;
// ties resolved toward the smaller detection index.
int best_match_for(const BoundingBox& candidate, const std::vector<BoundingBox>& detections,
                   const std::vector<char>& used, const AssociationConfig& cfg) {
    const TagBox as_tag = TagBox::from_bounding_box(candidate);
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < detections.size(); ++j) {
        if (used[j]) continue;
        if (overlap_fraction(detections[j], as_tag) <= 0.0) continue;
        const double cost = pair_cost(detections[j], as_tag, cfg.delta, cfg.gate_cost);
        if (cost < best_cost) {
            best_cost = cost;
            best = static_cast<int>(j);
        }
    }
    return best;
}

}  // namespace

FrameResult associate_frame(std::vector<Track>& tracks, const std::vector<BoundingBox>& detections,
                            const AssociationConfig& cfg, int frame_index) {
    FrameResult result;
    const int n_tracks = static_cast<int>(tracks.size());

    std::vector<BoundingBox> resolved(n_tracks);
    std::vector<char> confirmed(n_tracks, 0);
    std::vector<char> resolved_set(n_tracks, 0);
    std::vector<char> det_used(detections.size(), 0);
    std::vector<int> owner_of_detection(detections.size(), -1);
    std::vector<char> reinited(n_tracks, 0);

    // Round 1: detections vs. the non-pending tag-boxes.
    std::vector<int> round1_index;  // track index per matrix column
    std::vector<TagBox> round1_tags;
    for (int i = 0; i < n_tracks; ++i) {
        if (tracks[i].status == TrackStatus::Pending) continue;
        round1_index.push_back(i);
        round1_tags.push_back(tracks[i].tag_box);
    }
    const Eigen::MatrixXd cost = build_cost_matrix(detections, round1_tags, cfg);
    const Assignment match = hungarian_assign(cost);
    for (const auto& [det_j, col_i] : match.pairs) {
        const int ti = round1_index[col_i];
        resolved[ti] = detections[det_j];
        confirmed[ti] = 1;
        resolved_set[ti] = 1;
        det_used[det_j] = 1;
        owner_of_detection[det_j] = ti;
    }

    // Rounds 2 and 3 for every track without a round-1 detection.
    for (int i = 0; i < n_tracks; ++i) {
        if (resolved_set[i]) continue;
        Track& track = tracks[i];
        const BoundingBox default_box = default_box_for(track);
        const int best = best_match_for(default_box, detections, det_used, cfg);

        if (track.status == TrackStatus::Pending) {
            if (best >= 0) {
                // the default box regained a one-to-one detection: recover here
                det_used[best] = 1;
                reinitialize_tagbox(track, detections[best], cfg.reinit_fraction);
                resolved[i] = detections[best];
                confirmed[i] = 1;
                resolved_set[i] = 1;
                reinited[i] = 1;
                result.reinit_requests.emplace_back(track.id, detections[best]);
                continue;
            }
            resolved[i] = default_box;
            resolved_set[i] = 1;
        } else if (best >= 0) {
            det_used[best] = 1;
            owner_of_detection[best] = i;
            resolved[i] = detections[best];
            confirmed[i] = 1;
            resolved_set[i] = 1;
        } else {
            resolved[i] = default_box;
            resolved_set[i] = 1;
        }

        // Round 3: drift probe. A confirmation this frame updates the
        // reference before the overlap test.
        if (confirmed[i]) {
            track.bounding_box = resolved[i];
            track.tag_at_confirm = track.tag_box;
        }
        const bool success = overlap_fraction(track.bounding_box, track.tag_box) > 0.0;
        if (success) {
            track.age = std::max(0, track.age - 1);
        } else {
            if (track.age == 0) result.drift_events.push_back(track.id);
            ++track.age;
        }
        if (track.status != TrackStatus::Pending)
            track.status = track.age > 0 ? TrackStatus::Drift : TrackStatus::Tracked;

        if (track.age > cfg.age_threshold) {
            reinitialize_tagbox(track, track.bounding_box, cfg.reinit_fraction);
            resolved[i] = track.bounding_box;
            reinited[i] = 1;
            result.reinit_requests.emplace_back(track.id, track.bounding_box);
        }
    }

    // State 4: an unconfirmed tag-box overlapping someone else's detection
    // marks the lower-confidence contestant Pending (effective next frame).
    for (int i = 0; i < n_tracks; ++i) {
        Track& track = tracks[i];
        if (confirmed[i] || reinited[i] || track.status == TrackStatus::Pending) continue;
        int contested = -1;
        double contested_cost = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < detections.size(); ++j) {
            const int owner = owner_of_detection[j];
            if (owner < 0 || owner == i) continue;
            if (overlap_fraction(detections[j], track.tag_box) <= 0.0) continue;
            const double c = pair_cost(detections[j], track.tag_box, cfg.delta, cfg.gate_cost);
            if (c < contested_cost) {
                contested_cost = c;
                contested = static_cast<int>(j);
            }
        }
        if (contested < 0) continue;
        const int owner = owner_of_detection[contested];
        const double owner_cost =
            pair_cost(detections[contested], tracks[owner].tag_box, cfg.delta, cfg.gate_cost);
        int loser;
        if (contested_cost > owner_cost) {
            loser = i;
        } else if (contested_cost < owner_cost) {
            loser = owner;
        } else {
            // tie: the younger tracklet is pended
            loser = tracks[i].tracklet.size() <= tracks[owner].tracklet.size() ? i : owner;
        }
        if (tracks[loser].status != TrackStatus::Pending) {
            tracks[loser].status = TrackStatus::Pending;
            result.pending_events.push_back(tracks[loser].id);
        }
    }

    // Emit one box per live track; tracklets never gap.
    for (int i = 0; i < n_tracks; ++i) {
        Track& track = tracks[i];
        track.tracklet.emplace_back(frame_index, resolved[i]);
        result.outputs.push_back({track.id, resolved[i], track.status, confirmed[i] != 0});
        if (!confirmed[i]) result.unassigned_tracks.push_back(track.id);
    }
    for (size_t j = 0; j < detections.size(); ++j)
        if (!det_used[j]) result.unassigned_detections.push_back(static_cast<int>(j));
    return result;
}

}  // namespace tagtrack
