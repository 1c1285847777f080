#include "cli/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace flatin::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_plain(std::string_view token) {
    double value = 0.0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double number(std::size_t line, std::string_view key, std::string_view token) {
    if (auto v = parse_number(token)) return *v;
    throw ConfigError(line, "invalid number '" + std::string(token) + "' for key '" + std::string(key) + "'");
}

std::vector<double> number_list(std::size_t line, std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (auto token : split(value, ',')) out.push_back(number(line, key, token));
    return out;
}

control::Segment parse_segment(std::size_t line, std::string_view value) {
    const auto w = words(value);
    if (w.empty()) throw ConfigError(line, "empty segment");
    if (w[0] == "hold") {
        if (w.size() != 4) throw ConfigError(line, "hold segment needs: hold <t_start> <t_end> <value>");
        return {number(line, "segment", w[1]), number(line, "segment", w[2]),
                control::Hold{number(line, "segment", w[3])}};
    }
    if (w[0] == "poly7") {
        if (w.size() != 5) throw ConfigError(line, "poly7 segment needs: poly7 <t_start> <t_end> <from> <to>");
        return {number(line, "segment", w[1]), number(line, "segment", w[2]),
                control::Poly7{number(line, "segment", w[3]), number(line, "segment", w[4])}};
    }
    throw ConfigError(line, "unknown segment kind '" + std::string(w[0]) + "'");
}

}  // namespace

std::optional<double> parse_number(std::string_view token) {
    token = trim(token);
    if (auto v = parse_plain(token)) return v;

    double sign = 1.0;
    if (!token.empty() && token.front() == '-') {
        sign = -1.0;
        token.remove_prefix(1);
    }
    constexpr double pi = std::numbers::pi;
    if (token == "pi") return sign * pi;
    if (token.starts_with("pi/")) {
        if (auto d = parse_plain(token.substr(3)); d && *d != 0.0) return sign * pi / *d;
        return std::nullopt;
    }
    if (token.ends_with("*pi")) {
        if (auto m = parse_plain(token.substr(0, token.size() - 3))) return sign * *m * pi;
    }
    return std::nullopt;
}

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    std::size_t line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;

        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
        const std::string key(trim(text.substr(0, eq)));
        const std::string_view value = trim(text.substr(eq + 1));
        if (value.empty()) throw ConfigError(line, "missing value for key '" + key + "'");

        if (key != "segment" && !seen.insert(key).second) {
            throw ConfigError(line, "duplicate key '" + key + "'");
        }

        if (key == "name") {
            sc.name = std::string(value);
        } else if (key == "mode") {
            if (value == "feedback") {
                sc.mode = sim::Mode::kFeedback;
            } else if (value == "feedforward") {
                sc.mode = sim::Mode::kFeedforward;
            } else {
                throw ConfigError(line, "mode must be 'feedback' or 'feedforward'");
            }
        } else if (key == "sim_dt") {
            sc.sim_dt = number(line, key, value);
        } else if (key == "ctrl_dt") {
            sc.ctrl_dt = number(line, key, value);
        } else if (key == "duration") {
            sc.duration = number(line, key, value);
        } else if (key == "gains") {
            sc.gains = number_list(line, key, value);
            if (sc.gains.size() != 3) throw ConfigError(line, "gains needs exactly three values");
        } else if (key == "x0") {
            const auto v = number_list(line, key, value);
            if (v.size() != 3) throw ConfigError(line, "x0 needs exactly three values");
            sc.x0 = {v[0], v[1], v[2]};
        } else if (key == "segment") {
            sc.segments.push_back(parse_segment(line, value));
        } else if (key == "output") {
            sc.output = std::string(value);
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open scenario file " + path.string());
    return parse_scenario(in);
}

sim::SimConfig Scenario::to_sim_config() const {
    try {
        sim::SimConfig cfg{
            .sim_dt = sim_dt,
            .ctrl_dt = ctrl_dt,
            .duration = duration,
            .x0 = x0,
            .gains = control::ControllerGains(gains),
            .mode = mode,
            .trajectory = segments.empty() ? control::ReferenceTrajectory::constant(x0.x1, 0.0, duration)
                                           : control::ReferenceTrajectory(segments),
        };
        sim::validate(cfg);
        return cfg;
    } catch (const InvalidGainsError& e) {
        throw ConfigError(0, e.what());
    } catch (const InvalidConfigError& e) {
        throw ConfigError(0, e.what());
    }
}

}  // namespace flatin::cli
