#include "tagtrack/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tagtrack {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Config::load: cannot open " + path);
    Config cfg;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("Config::load: " + path + ": line " +
                                         std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("Config::load: " + path + ": line " +
                                     std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("Config::load: " + path + ": line " +
                                     std::to_string(line_no) + ": empty key");
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--set expects section.key=value, got '" + assignment + "'");
    values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': not a number: '" + it->second + "'");
    }
}

int Config::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    return static_cast<int>(v);
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string s = it->second;
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty())
        throw std::runtime_error("config key '" + key + "': expected a list of numbers");
    return out;
}

FeatureConfig feature_config_from(const Config& c) {
    FeatureConfig f;
    f.hog_cell = c.get_int("features.hog_cell", f.hog_cell);
    f.cn_cell = c.get_int("features.cn_cell", f.cn_cell);
    f.search_area_factor = c.get_double("features.search_area_factor", f.search_area_factor);
    const std::string mode = c.get_str("features.mode", "day");
    f.mode = (mode == "night" || mode == "Night") ? ImagingMode::Night : ImagingMode::Day;
    return f;
}

TrackerConfig tracker_config_from(const Config& c) {
    TrackerConfig t;
    t.max_components = c.get_int("tracker.components", t.max_components);
    t.learning_rate = c.get_double("tracker.learning_rate", t.learning_rate);
    t.update_interval = c.get_int("tracker.update_interval", t.update_interval);
    t.first_frame_gn_iters = c.get_int("tracker.first_frame_gn_iters", t.first_frame_gn_iters);
    t.first_frame_cg_iters = c.get_int("tracker.first_frame_cg_iters", t.first_frame_cg_iters);
    t.update_cg_iters = c.get_int("tracker.update_cg_iters", t.update_cg_iters);
    t.max_basis_filters = c.get_int("tracker.basis_filters", t.max_basis_filters);
    t.scale_set = c.get_list("tracker.scales", t.scale_set);
    t.label_sigma_factor = c.get_double("tracker.label_sigma_factor", t.label_sigma_factor);
    t.reg_min = c.get_double("tracker.reg_min", t.reg_min);
    t.reg_slope = c.get_double("tracker.reg_slope", t.reg_slope);
    t.projection_reg = c.get_double("tracker.projection_reg", t.projection_reg);
    t.gmm_drop_threshold = c.get_double("tracker.gmm_drop_threshold", t.gmm_drop_threshold);
    return t;
}

AssociationConfig association_config_from(const Config& c) {
    AssociationConfig a;
    a.delta = c.get_double("association.delta", a.delta);
    a.age_threshold = c.get_int("association.age_threshold", a.age_threshold);
    a.gate_cost = c.get_double("association.gate_cost", a.gate_cost);
    a.reinit_fraction = c.get_double("association.reinit_fraction", a.reinit_fraction);
    return a;
}

NoiseProfile noise_profile_from(const Config& c) {
    NoiseProfile n;
    n.center_jitter_sigma = c.get_double("detections.center_jitter_sigma", n.center_jitter_sigma);
    n.size_jitter_sigma = c.get_double("detections.size_jitter_sigma", n.size_jitter_sigma);
    n.fp_rate = c.get_double("detections.fp_rate", n.fp_rate);
    n.fn_rate = c.get_double("detections.fn_rate", n.fn_rate);
    n.occlusion_fn_boost = c.get_double("detections.occlusion_fn_boost", n.occlusion_fn_boost);
    n.seed = static_cast<std::uint64_t>(c.get_double("detections.seed", 0));
    return n;
}

}  // namespace tagtrack
