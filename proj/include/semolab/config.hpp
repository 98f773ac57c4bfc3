#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semolab/experiments.hpp"

namespace semolab {

struct ConfigEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

/// Problem in a key=value file; what() reads "source:line: message".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Flat "key = value" text. Blank lines and lines starting with '#' are
/// skipped; a key may appear only once.
std::vector<ConfigEntry> parse_key_value(std::istream& in, const std::string& source);
std::vector<ConfigEntry> load_key_value_file(const std::filesystem::path& path);

/// Sets one calibration constant by its file key (e.g. "spread-constant").
/// Returns false for keys that are not calibration keys; throws
/// std::invalid_argument for an unparsable value.
bool apply_calibration_key(Calibration& cal, std::string_view key, std::string_view value);

/// Serializes every calibration constant as key=value lines.
std::string calibration_to_text(const Calibration& cal);

/// Helpers shared by the CLI and config loaders; throw std::invalid_argument.
double parse_double(std::string_view text);
std::uint64_t parse_uint(std::string_view text);
std::int64_t parse_int(std::string_view text);
bool parse_switch(std::string_view text);  ///< on/off, true/false, 1/0
std::vector<std::string> split_list(std::string_view text);

}  // namespace semolab
