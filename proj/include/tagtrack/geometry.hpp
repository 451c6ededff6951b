#pragma once

#include <stdexcept>

namespace tagtrack {

// Axis-aligned rectangle stored as (left, top, width, height) in frame pixels.
// Real-valued; rasterization only happens at feature extraction / rendering.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 1.0;
    double h = 1.0;

    BoundingBox() = default;
    BoundingBox(double x_, double y_, double w_, double h_);

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
    double area() const { return w * h; }
    double diagonal() const;

    BoundingBox translated(double dx, double dy) const { return {x + dx, y + dy, w, h}; }

    static BoundingBox from_center(double cx, double cy, double w, double h);
};

// The tracked target: a sub-region of a bounding box with sub-pixel center.
// Stored center-based since every tag-box operation is center-based.
struct TagBox {
    double cx = 0.0;
    double cy = 0.0;
    double w = 1.0;
    double h = 1.0;

    TagBox() = default;
    TagBox(double cx_, double cy_, double w_, double h_);

    BoundingBox to_bounding_box() const { return BoundingBox(cx - 0.5 * w, cy - 0.5 * h, w, h); }

    // Tag-box centered in `box`, sized `fraction` of it per axis.
    static TagBox centered_in(const BoundingBox& box, double fraction);
    static TagBox from_bounding_box(const BoundingBox& box);
};

double intersection_area(const BoundingBox& a, const BoundingBox& b);

// area(db ∩ tb) / area(tb): 1 when the tag-box lies fully inside the detection,
// 0 when disjoint.
double overlap_fraction(const BoundingBox& db, const TagBox& tb);

double iou(const BoundingBox& a, const BoundingBox& b);

// Euclidean distance between centers divided by the diagonal of `db`.
double normalized_center_distance(const BoundingBox& db, const TagBox& tb);

}  // namespace tagtrack
