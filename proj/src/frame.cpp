#include "tagtrack/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tagtrack {

Frame::Frame(int w, int h, int c, float fill)
    : width(w), height(h), channels(c), data(static_cast<size_t>(w) * h * c, fill) {
    if (w <= 0 || h <= 0 || (c != 1 && c != 3))
        throw std::invalid_argument("Frame: dimensions must be positive and channels 1 or 3");
}

float Frame::sample(double x, double y, int c) const {
    // border replication
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double v00 = at(x0, y0, c);
    const double v10 = at(x1, y0, c);
    const double v01 = at(x0, y1, c);
    const double v11 = at(x1, y1, c);
    return static_cast<float>((1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11));
}

Frame Frame::to_grayscale() const {
    if (channels == 1) return *this;
    Frame g(width, height, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            g.at(x, y, 0) = 0.299f * at(x, y, 0) + 0.587f * at(x, y, 1) + 0.114f * at(x, y, 2);
    return g;
}

double Frame::mean_intensity() const {
    double sum = 0.0;
    for (float v : data) sum += v;
    return data.empty() ? 0.0 : sum / static_cast<double>(data.size());
}

void write_image(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_image: cannot open " + path);
    out << (frame.channels == 3 ? "P6" : "P5") << "\n"
        << frame.width << " " << frame.height << "\n255\n";
    std::vector<unsigned char> bytes(frame.data.size());
    for (size_t i = 0; i < frame.data.size(); ++i) {
        const float v = std::clamp(frame.data[i], 0.0f, 1.0f);
        bytes[i] = static_cast<unsigned char>(std::lround(v * 255.0f));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write_image: write failed for " + path);
}

namespace {
int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    in >> value;
    return value;
}
}  // namespace

Frame read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_image: cannot open " + path);
    std::string magic;
    in >> magic;
    int channels = 0;
    if (magic == "P6")
        channels = 3;
    else if (magic == "P5")
        channels = 1;
    else
        throw std::runtime_error("read_image: " + path + ": unsupported format '" + magic + "'");
    const int w = read_pnm_token(in);
    const int h = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (w <= 0 || h <= 0 || maxval != 255)
        throw std::runtime_error("read_image: " + path + ": bad header");
    in.get();  // single whitespace after maxval
    Frame frame(w, h, channels);
    std::vector<unsigned char> bytes(frame.data.size());
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        throw std::runtime_error("read_image: " + path + ": truncated pixel data");
    for (size_t i = 0; i < bytes.size(); ++i) frame.data[i] = bytes[i] / 255.0f;
    return frame;
}

std::string frame_file_name(int index, bool color) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06d.%s", index, color ? "ppm" : "pgm");
    return buf;
}

}  // namespace tagtrack
