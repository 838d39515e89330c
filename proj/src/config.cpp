#include "mosaicforge/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace mosaicforge {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& context) {
    T value{};
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(context + ": cannot parse '" + text + "'");
    }
    return value;
}

[[noreturn]] void reject(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field " + field + ": " + why);
}

}  // namespace

DensityMetric parse_density_metric(const std::string& name) {
    if (name == "count") {
        return DensityMetric::Count;
    }
    if (name == "count_per_area") {
        return DensityMetric::CountPerArea;
    }
    throw std::invalid_argument(
        "density_metric must be 'count' or 'count_per_area', got '" + name +
        "'");
}

std::string density_metric_name(DensityMetric metric) {
    return metric == DensityMetric::Count ? "count" : "count_per_area";
}

void validate(const PipelineConfig& config) {
    if (config.output_size < 1) {
        reject("output_size", "must be at least 1 pixel");
    }
    if (!(config.select_prob >= 0.0 && config.select_prob <= 1.0)) {
        reject("select_prob", "must be in [0,1]");
    }
    if (!(config.border_fraction >= 0.0 && config.border_fraction < 0.5)) {
        reject("border_fraction", "must be in [0,0.5)");
    }
    if (!(config.scale_jitter_lo > 0.0 &&
          config.scale_jitter_lo <= config.scale_jitter_hi)) {
        reject("scale_jitter", "requires 0 < lo <= hi");
    }
    if (!(config.min_visibility >= 0.0 && config.min_visibility <= 1.0)) {
        reject("min_visibility", "must be in [0,1]");
    }
    if (config.min_side < 0) {
        reject("min_side", "must be non-negative");
    }
    if (config.count < 0) {
        reject("count", "must be non-negative");
    }
    if (config.workers < 1) {
        reject("workers", "must be at least 1");
    }
}

void apply_scale_jitter_spec(PipelineConfig& config, const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument(
            "scale_jitter expects 'lo,hi', got '" + spec + "'");
    }
    config.scale_jitter_lo =
        parse_number<double>(trim(spec.substr(0, comma)), "scale_jitter lo");
    config.scale_jitter_hi =
        parse_number<double>(trim(spec.substr(comma + 1)), "scale_jitter hi");
}

void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" +
                                     std::to_string(line_number) +
                                     ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string context = path.string() + ":" +
                                    std::to_string(line_number) + ": " + key;
        if (key == "output_size") {
            config.output_size = parse_number<int>(value, context);
        } else if (key == "select_prob") {
            config.select_prob = parse_number<double>(value, context);
        } else if (key == "border_fraction") {
            config.border_fraction = parse_number<double>(value, context);
        } else if (key == "scale_jitter") {
            apply_scale_jitter_spec(config, value);
        } else if (key == "min_visibility") {
            config.min_visibility = parse_number<double>(value, context);
        } else if (key == "min_side") {
            config.min_side = parse_number<int>(value, context);
        } else if (key == "density_metric") {
            config.density_metric = parse_density_metric(value);
        } else if (key == "seed") {
            config.seed = parse_number<std::uint64_t>(value, context);
        } else if (key == "count") {
            config.count = parse_number<int>(value, context);
        } else if (key == "workers") {
            config.workers = parse_number<int>(value, context);
        } else {
            throw std::runtime_error(context + ": unknown config key");
        }
    }
}

}  // namespace mosaicforge
