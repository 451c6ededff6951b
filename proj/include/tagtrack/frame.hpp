#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tagtrack {

// An image with interleaved float pixels in [0,1].
// 3 channels = color ("day"), 1 channel = grayscale ("night" / IR-like).
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;  // size = width*height*channels, row-major interleaved

    Frame() = default;
    Frame(int w, int h, int c, float fill = 0.0f);

    bool color() const { return channels == 3; }

    float& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    float at(int x, int y, int c) const { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }

    // Bilinear sample with border replication; sub-pixel coordinates.
    float sample(double x, double y, int c) const;

    Frame to_grayscale() const;
    double mean_intensity() const;
};

// Lossless 8-bit image files: binary PPM (P6) for 3 channels, PGM (P5) for 1.
void write_image(const Frame& frame, const std::string& path);
Frame read_image(const std::string& path);

// Numbered frame file name, e.g. frame_000042.ppm
std::string frame_file_name(int index, bool color);

}  // namespace tagtrack
