#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/exact.hpp"
#include "gbpwalk/levy.hpp"

namespace gbp::harness {

// Malformed or incomplete configuration; the CLI maps it to exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Sections of key = value pairs. Keys are unique within a section.
class ExperimentConfig {
public:
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text);

    // "section.key=value"
    void apply_override(const std::string& assignment);
    void set(const std::string& section, const std::string& key, const std::string& value);
    void touch(const std::string& section);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::optional<double> get_optional_double(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    // Comma separated numbers, or linspace(a, b, n), or geomspace(a, b, n).
    std::vector<double> get_list(const std::string& section, const std::string& key) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& section, const std::string& key) const;

    // Rejects keys outside `allowed` in a section that is present.
    void require_keys_within(const std::string& section, std::initializer_list<const char*> allowed) const;

    // Sorted sections and keys, one "key = value" per line.
    std::string canonical() const;
    // SHA-1 of canonical(), lower-case hex.
    std::string content_hash() const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const { return data_; }

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

double parse_number(const std::string& text, const std::string& where);
std::vector<double> parse_list(const std::string& text, const std::string& where);

KernelSpec parse_kernel(const ExperimentConfig& cfg, const std::string& section = "kernel");
// [kernel] plus [window] n, T, b.
WindowSpec parse_window(const ExperimentConfig& cfg);
EmlParams parse_eml(const ExperimentConfig& cfg, const std::string& section = "eml");
LevySpec parse_levy(const ExperimentConfig& cfg, const std::string& section = "levy");

std::string sha1_hex(const std::string& data);

}  // namespace gbp::harness
