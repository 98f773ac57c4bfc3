#include "semolab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace semolab {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
    if (key.empty())
        return false;
    for (char c : key)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_'))
            return false;
    return true;
}

template <typename T>
T parse_integral(std::string_view text) {
    text = trim(text);
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("'" + std::string(text) + "' is not a valid integer");
    return value;
}

}  // namespace

std::vector<ConfigEntry> parse_key_value(std::istream& in, const std::string& source) {
    std::vector<ConfigEntry> entries;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#')
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source, line, "expected 'key = value'");
        const std::string key(trim(text.substr(0, eq)));
        const std::string value(trim(text.substr(eq + 1)));
        if (!valid_key(key))
            throw ConfigError(source, line, "invalid key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError(source, line, "duplicate key '" + key + "'");
        entries.push_back({key, value, line});
    }
    return entries;
}

std::vector<ConfigEntry> load_key_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    return parse_key_value(in, path.string());
}

double parse_double(std::string_view text) {
    text = trim(text);
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
        !std::isfinite(value))
        throw std::invalid_argument("'" + std::string(text) + "' is not a valid number");
    return value;
}

std::uint64_t parse_uint(std::string_view text) { return parse_integral<std::uint64_t>(text); }
std::int64_t parse_int(std::string_view text) { return parse_integral<std::int64_t>(text); }

bool parse_switch(std::string_view text) {
    text = trim(text);
    if (text == "on" || text == "true" || text == "1")
        return true;
    if (text == "off" || text == "false" || text == "0")
        return false;
    throw std::invalid_argument("'" + std::string(text) + "' is not on/off");
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const std::string_view item = trim(text.substr(start, comma - start));
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

bool apply_calibration_key(Calibration& cal, std::string_view key, std::string_view value) {
    struct Field {
        std::string_view key;
        double Calibration::*member;
    };
    static constexpr Field kFields[] = {
        {"pass-threshold", &Calibration::pass_threshold},
        {"spread-constant", &Calibration::spread_constant},
        {"border-constant", &Calibration::border_constant},
        {"epsilon-poly-log", &Calibration::epsilon_poly_log},
        {"epsilon-ojzj", &Calibration::epsilon_ojzj},
        {"ratio-low", &Calibration::ratio_low},
        {"ratio-high", &Calibration::ratio_high},
        {"ojzj-ratio-low", &Calibration::ojzj_ratio_low},
        {"ojzj-ratio-high", &Calibration::ojzj_ratio_high},
        {"exponent-low-poly-log", &Calibration::exponent_low_poly_log},
        {"exponent-high-poly-log", &Calibration::exponent_high_poly_log},
        {"exponent-low-offset-ojzj", &Calibration::exponent_low_offset_ojzj},
        {"exponent-high-offset-ojzj", &Calibration::exponent_high_offset_ojzj},
        {"equivalence-alpha", &Calibration::equivalence_alpha},
    };
    for (const Field& f : kFields) {
        if (f.key == key) {
            cal.*(f.member) = parse_double(value);
            return true;
        }
    }
    if (key == "bootstrap-resamples") {
        const auto resamples = parse_uint(value);
        if (resamples < 200)
            throw std::invalid_argument("bootstrap-resamples must be at least 200");
        cal.bootstrap_resamples = static_cast<std::size_t>(resamples);
        return true;
    }
    return false;
}

std::string calibration_to_text(const Calibration& cal) {
    std::ostringstream out;
    out.precision(17);
    out << "pass-threshold=" << cal.pass_threshold << '\n'
        << "spread-constant=" << cal.spread_constant << '\n'
        << "border-constant=" << cal.border_constant << '\n'
        << "epsilon-poly-log=" << cal.epsilon_poly_log << '\n'
        << "epsilon-ojzj=" << cal.epsilon_ojzj << '\n'
        << "ratio-low=" << cal.ratio_low << '\n'
        << "ratio-high=" << cal.ratio_high << '\n'
        << "ojzj-ratio-low=" << cal.ojzj_ratio_low << '\n'
        << "ojzj-ratio-high=" << cal.ojzj_ratio_high << '\n'
        << "exponent-low-poly-log=" << cal.exponent_low_poly_log << '\n'
        << "exponent-high-poly-log=" << cal.exponent_high_poly_log << '\n'
        << "exponent-low-offset-ojzj=" << cal.exponent_low_offset_ojzj << '\n'
        << "exponent-high-offset-ojzj=" << cal.exponent_high_offset_ojzj << '\n'
        << "equivalence-alpha=" << cal.equivalence_alpha << '\n'
        << "bootstrap-resamples=" << cal.bootstrap_resamples << '\n';
    return out.str();
}

}  // namespace semolab
