#include "tagtrack/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace tagtrack {

namespace {
void check_box(double w, double h, double a, double b, const char* what) {
    if (!(w > 0.0) || !(h > 0.0) || !std::isfinite(w) || !std::isfinite(h) ||
        !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument(std::string(what) + ": degenerate box (w, h must be positive and finite)");
    }
}
}  // namespace

BoundingBox::BoundingBox(double x_, double y_, double w_, double h_) : x(x_), y(y_), w(w_), h(h_) {
    check_box(w, h, x, y, "BoundingBox");
}

double BoundingBox::diagonal() const { return std::hypot(w, h); }

BoundingBox BoundingBox::from_center(double cx, double cy, double w, double h) {
    return BoundingBox(cx - 0.5 * w, cy - 0.5 * h, w, h);
}

TagBox::TagBox(double cx_, double cy_, double w_, double h_) : cx(cx_), cy(cy_), w(w_), h(h_) {
    check_box(w, h, cx, cy, "TagBox");
}

TagBox TagBox::centered_in(const BoundingBox& box, double fraction) {
    if (!(fraction > 0.0)) throw std::invalid_argument("TagBox::centered_in: fraction must be positive");
    return TagBox(box.cx(), box.cy(), box.w * fraction, box.h * fraction);
}

TagBox TagBox::from_bounding_box(const BoundingBox& box) {
    return TagBox(box.cx(), box.cy(), box.w, box.h);
}

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
    const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    return iw * ih;
}

double overlap_fraction(const BoundingBox& db, const TagBox& tb) {
    const BoundingBox tbb = tb.to_bounding_box();
    return intersection_area(db, tbb) / tbb.area();
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double inter = intersection_area(a, b);
    if (inter <= 0.0) return 0.0;
    return inter / (a.area() + b.area() - inter);
}

double normalized_center_distance(const BoundingBox& db, const TagBox& tb) {
    return std::hypot(db.cx() - tb.cx, db.cy() - tb.cy) / db.diagonal();
}

}  // namespace tagtrack
