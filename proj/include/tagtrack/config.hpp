#pragma once

#include <map>
#include <string>
#include <vector>

#include "tagtrack/association.hpp"
#include "tagtrack/dcf.hpp"
#include "tagtrack/detection_io.hpp"
#include "tagtrack/features.hpp"

namespace tagtrack {

// Flat key-value configuration with INI-style sections: `[tracker]` +
// `learning_rate = 0.09` stores "tracker.learning_rate". '#' and ';' start
// comments. Every key has a built-in default.
class Config {
public:
    Config() = default;
    static Config load(const std::string& path);

    // "section.key=value" (the --set flag)
    void apply_override(const std::string& assignment);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

private:
    std::map<std::string, std::string> values_;
};

FeatureConfig feature_config_from(const Config& c);
TrackerConfig tracker_config_from(const Config& c);
AssociationConfig association_config_from(const Config& c);
NoiseProfile noise_profile_from(const Config& c);

}  // namespace tagtrack
