#pragma once

#include <array>
#include <string>
#include <vector>

namespace tagtrack {

// 32x32x32 RGB -> 11 color-name probability lookup.
//
// File format (text): optional '#' comment lines, then 32768 rows of 11
// probabilities separated by whitespace. Row index = (r_bin*32 + g_bin)*32 +
// b_bin where v_bin = floor(v * 32) clamped to 31 for v in [0,1] (equivalently
// byte >> 3 for 8-bit data). Channel order: black, blue, brown, grey, green,
// orange, pink, purple, red, white, yellow. Each row sums to 1.
class ColorNameTable {
public:
    static constexpr int kBins = 32;
    static constexpr int kNames = 11;
    static constexpr int kRows = kBins * kBins * kBins;

    static const ColorNameTable& builtin();
    static ColorNameTable load(const std::string& path);
    void save(const std::string& path) const;

    // rgb in [0,1]
    const double* lookup(double r, double g, double b) const;
    const double* row(int index) const { return &table_[static_cast<size_t>(index) * kNames]; }

private:
    ColorNameTable() = default;
    std::vector<double> table_;  // kRows * kNames
};

}  // namespace tagtrack
