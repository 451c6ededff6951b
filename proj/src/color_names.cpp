#include "tagtrack/color_names.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tagtrack {

namespace {

struct NameAnchor {
    double r, g, b;
};

// Canonical colors for the 11 English color names, table channel order.
constexpr std::array<NameAnchor, ColorNameTable::kNames> kAnchors = {{
    {0.00, 0.00, 0.00},  // black
    {0.10, 0.25, 0.90},  // blue
    {0.45, 0.28, 0.12},  // brown
    {0.50, 0.50, 0.50},  // grey
    {0.10, 0.65, 0.15},  // green
    {0.95, 0.55, 0.05},  // orange
    {0.95, 0.65, 0.75},  // pink
    {0.55, 0.20, 0.70},  // purple
    {0.90, 0.10, 0.10},  // red
    {1.00, 1.00, 1.00},  // white
    {0.95, 0.90, 0.10},  // yellow
}};

int bin_of(double v) {
    const int b = static_cast<int>(v * ColorNameTable::kBins);
    return std::clamp(b, 0, ColorNameTable::kBins - 1);
}

}  // namespace

const ColorNameTable& ColorNameTable::builtin() {
    static const ColorNameTable table = [] {
        ColorNameTable t;
        t.table_.resize(static_cast<size_t>(kRows) * kNames);
        const double inv_two_sigma_sq = 1.0 / (2.0 * 0.22 * 0.22);
        size_t idx = 0;
        for (int rb = 0; rb < kBins; ++rb)
            for (int gb = 0; gb < kBins; ++gb)
                for (int bb = 0; bb < kBins; ++bb) {
                    const double r = (rb + 0.5) / kBins;
                    const double g = (gb + 0.5) / kBins;
                    const double b = (bb + 0.5) / kBins;
                    double sum = 0.0;
                    double probs[kNames];
                    for (int n = 0; n < kNames; ++n) {
                        const double dr = r - kAnchors[n].r;
                        const double dg = g - kAnchors[n].g;
                        const double db = b - kAnchors[n].b;
                        probs[n] = std::exp(-(dr * dr + dg * dg + db * db) * inv_two_sigma_sq);
                        sum += probs[n];
                    }
                    for (int n = 0; n < kNames; ++n) t.table_[idx++] = probs[n] / sum;
                }
        return t;
    }();
    return table;
}

ColorNameTable ColorNameTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ColorNameTable::load: cannot open " + path);
    ColorNameTable t;
    t.table_.reserve(static_cast<size_t>(kRows) * kNames);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        double v;
        int count = 0;
        while (row >> v) {
            t.table_.push_back(v);
            ++count;
        }
        if (count != kNames)
            throw std::runtime_error("ColorNameTable::load: " + path + ": line " +
                                     std::to_string(line_no) + ": expected 11 values, got " +
                                     std::to_string(count));
    }
    if (t.table_.size() != static_cast<size_t>(kRows) * kNames)
        throw std::runtime_error("ColorNameTable::load: " + path + ": expected " +
                                 std::to_string(kRows) + " rows");
    return t;
}

void ColorNameTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("ColorNameTable::save: cannot open " + path);
    out << "# 32x32x32 RGB -> 11 color-name probabilities\n";
    out << "# row = (r_bin*32 + g_bin)*32 + b_bin; columns: black blue brown grey green orange pink purple red white yellow\n";
    for (int row = 0; row < kRows; ++row) {
        const double* p = &table_[static_cast<size_t>(row) * kNames];
        for (int n = 0; n < kNames; ++n) out << p[n] << (n + 1 < kNames ? ' ' : '\n');
    }
}

const double* ColorNameTable::lookup(double r, double g, double b) const {
    const int index = (bin_of(r) * kBins + bin_of(g)) * kBins + bin_of(b);
    return row(index);
}

}  // namespace tagtrack
