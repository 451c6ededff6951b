#include "tagtrack/mot_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tagtrack/hungarian.hpp"

namespace tagtrack {

FrameCorrespondence frame_correspondence(const std::map<int, BoundingBox>& gt,
                                         const std::map<int, BoundingBox>& hyp,
                                         double iou_threshold, CorrespondenceState& state) {
    if (!(iou_threshold > 0.0 && iou_threshold < 1.0))
        throw std::invalid_argument("frame_correspondence: threshold must be in (0,1)");
    FrameCorrespondence out;
    std::map<int, int> new_active;
    std::vector<char> hyp_taken;
    std::vector<int> hyp_ids;
    for (const auto& [hid, box] : hyp) hyp_ids.push_back(hid);
    hyp_taken.assign(hyp_ids.size(), 0);

    // keep still-valid pairings from the previous frames
    std::vector<int> free_gt;
    for (const auto& [gid, gbox] : gt) {
        const auto it = state.active.find(gid);
        bool carried = false;
        if (it != state.active.end()) {
            const auto hit = hyp.find(it->second);
            if (hit != hyp.end() && iou(gbox, hit->second) >= iou_threshold) {
                const auto pos = std::find(hyp_ids.begin(), hyp_ids.end(), it->second);
                if (pos != hyp_ids.end() && !hyp_taken[pos - hyp_ids.begin()]) {
                    hyp_taken[pos - hyp_ids.begin()] = 1;
                    new_active[gid] = it->second;
                    out.matches.emplace_back(gid, it->second);
                    carried = true;
                }
            }
        }
        if (!carried) free_gt.push_back(gid);
    }

    // optimal matching of the remainder on 1 - IoU
    std::vector<int> free_hyp;
    for (size_t i = 0; i < hyp_ids.size(); ++i)
        if (!hyp_taken[i]) free_hyp.push_back(hyp_ids[i]);
    if (!free_gt.empty() && !free_hyp.empty()) {
        Eigen::MatrixXd cost(free_gt.size(), free_hyp.size());
        for (size_t r = 0; r < free_gt.size(); ++r)
            for (size_t c = 0; c < free_hyp.size(); ++c) {
                const double v = iou(gt.at(free_gt[r]), hyp.at(free_hyp[c]));
                cost(r, c) = v >= iou_threshold ? 1.0 - v : kInfeasibleCost;
            }
        const Assignment match = hungarian_assign(cost);
        for (const auto& [r, c] : match.pairs) {
            new_active[free_gt[r]] = free_hyp[c];
            out.matches.emplace_back(free_gt[r], free_hyp[c]);
        }
    }

    std::sort(out.matches.begin(), out.matches.end());
    for (const auto& [gid, hid] : out.matches) {
        const auto last = state.last_partner.find(gid);
        if (last != state.last_partner.end() && last->second != hid) ++out.id_switches;
        state.last_partner[gid] = hid;
    }

    for (const auto& [gid, gbox] : gt)
        if (!new_active.count(gid)) out.misses.push_back(gid);
    for (const auto& [hid, hbox] : hyp) {
        bool matched = false;
        for (const auto& [g, h] : out.matches)
            if (h == hid) matched = true;
        if (!matched) out.false_positives.push_back(hid);
    }
    state.active = std::move(new_active);
    return out;
}

namespace {

struct Accumulated {
    MetricsReport report;
    std::map<int, long> gt_present, gt_matched;
    std::map<int, char> gt_last_matched;
};

Accumulated accumulate(const TrajectorySet& gt, const TrajectorySet& hyp, double iou_threshold) {
    if (gt.empty()) throw std::invalid_argument("clear_metrics: empty ground truth");
    long total_gt = 0;
    for (const auto& [id, t] : gt) total_gt += static_cast<long>(t.size());
    if (total_gt == 0) throw std::invalid_argument("clear_metrics: empty ground truth");

    const auto [g0, g1] = frame_range(gt);
    const auto [h0, h1] = frame_range(hyp);
    int first = g0, last = g1;
    if (h1 >= h0) {  // hypothesis non-empty
        first = std::min(first, h0);
        last = std::max(last, h1);
    }

    Accumulated acc;
    CorrespondenceState state;
    for (int f = first; f <= last; ++f) {
        const auto gt_boxes = boxes_at_frame(gt, f);
        const auto hyp_boxes = boxes_at_frame(hyp, f);
        const FrameCorrespondence fc = frame_correspondence(gt_boxes, hyp_boxes, iou_threshold, state);
        acc.report.tp += static_cast<long>(fc.matches.size());
        acc.report.fp += static_cast<long>(fc.false_positives.size());
        acc.report.fn += static_cast<long>(fc.misses.size());
        acc.report.ids += fc.id_switches;
        for (const auto& [gid, gbox] : gt_boxes) {
            ++acc.gt_present[gid];
            bool matched = false;
            for (const auto& [g, h] : fc.matches)
                if (g == gid) matched = true;
            if (matched) ++acc.gt_matched[gid];
            auto it = acc.gt_last_matched.find(gid);
            if (it != acc.gt_last_matched.end() && it->second && !matched) ++acc.report.fra;
            acc.gt_last_matched[gid] = matched ? 1 : 0;
        }
    }
    acc.report.num_frames = last - first + 1;
    acc.report.gt_count = total_gt;
    return acc;
}

}  // namespace

MetricsReport clear_metrics(const TrajectorySet& gt, const TrajectorySet& hyp,
                            double iou_threshold, double mostly, double lost) {
    Accumulated acc = accumulate(gt, hyp, iou_threshold);
    MetricsReport& r = acc.report;
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.gt_count);
    r.precision = (r.tp + r.fp) > 0 ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp) : 0.0;
    r.faf = r.num_frames > 0 ? static_cast<double>(r.fp) / r.num_frames : 0.0;
    r.mota = 1.0 - static_cast<double>(r.fn + r.fp + r.ids) / static_cast<double>(r.gt_count);
    for (const auto& [gid, present] : acc.gt_present) {
        const double coverage =
            present > 0 ? static_cast<double>(acc.gt_matched[gid]) / present : 0.0;
        if (coverage >= mostly)
            ++r.mt;
        else if (coverage <= lost)
            ++r.ml;
        else
            ++r.pt;
    }
    return r;
}

std::tuple<int, int, int> track_level_metrics(const TrajectorySet& gt, const TrajectorySet& hyp,
                                              double mostly, double lost, double iou_threshold) {
    if (!(lost > 0.0 && lost < mostly && mostly < 1.0))
        throw std::invalid_argument("track_level_metrics: need 0 < lost < mostly < 1");
    const MetricsReport r = clear_metrics(gt, hyp, iou_threshold, mostly, lost);
    return {r.mt, r.pt, r.ml};
}

std::string format_metrics_header() {
    return "Recall(%)  Precision(%)  FAF    MT  PT  ML  IDs  FRA   MOTA(%)";
}

std::string format_metrics_row(const std::string& name, const MetricsReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-8s %7.2f %12.2f %6.2f %4d %3d %3d %4ld %4ld %9.2f",
                  name.c_str(), 100.0 * r.recall, 100.0 * r.precision, r.faf, r.mt, r.pt, r.ml,
                  r.ids, r.fra, 100.0 * r.mota);
    return buf;
}

void write_metrics_report(const MetricsReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_metrics_report: cannot open " + path);
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "recall=%.6f\nprecision=%.6f\nfaf=%.6f\nmt=%d\npt=%d\nml=%d\nids=%ld\nfra=%ld\n"
                  "mota=%.6f\ntp=%ld\nfp=%ld\nfn=%ld\ngt_count=%ld\nnum_frames=%d\n",
                  r.recall, r.precision, r.faf, r.mt, r.pt, r.ml, r.ids, r.fra, r.mota, r.tp, r.fp,
                  r.fn, r.gt_count, r.num_frames);
    out << buf;
    if (!out) throw std::runtime_error("write_metrics_report: write failed for " + path);
}

}  // namespace tagtrack
