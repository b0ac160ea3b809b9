#include "harness/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gbpwalk/kernel.hpp"

namespace gbp::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

ExperimentConfig from_ptree(const boost::property_tree::ptree& tree) {
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError("config: key '" + section + "' outside any section");
        cfg.touch(section);
        for (const auto& [key, value] : body) {
            if (!value.empty()) throw ConfigError("config: nested key in [" + section + "]");
            cfg.set(section, key, trim(value.data()));
        }
    }
    return cfg;
}

// linspace(a, b, n) or geomspace(a, b, n)
std::optional<std::vector<double>> parse_spaced(const std::string& text, const std::string& at) {
    for (const std::string fn : {"linspace", "geomspace"}) {
        if (text.rfind(fn + "(", 0) != 0) continue;
        if (text.back() != ')') throw ConfigError(at + ": unterminated " + fn);
        const auto args = parse_list(text.substr(fn.size() + 1, text.size() - fn.size() - 2), at);
        if (args.size() != 3 || args[2] < 2 || args[2] != std::floor(args[2]))
            throw ConfigError(at + ": " + fn + " needs (start, stop, count >= 2)");
        const auto n = static_cast<std::size_t>(args[2]);
        if (fn == "geomspace" && !(args[0] > 0.0 && args[1] > 0.0))
            throw ConfigError(at + ": geomspace needs positive end points");
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(n - 1);
            v[i] = fn == "linspace" ? args[0] + (args[1] - args[0]) * u
                                    : std::exp(std::log(args[0]) + (std::log(args[1]) - std::log(args[0])) * u);
        }
        v.back() = args[1];
        return v;
    }
    return std::nullopt;
}

}  // namespace

double parse_number(const std::string& text, const std::string& at) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(at + ": expected a number, got '" + t + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& at) {
    const std::string t = trim(text);
    if (auto spaced = parse_spaced(t, at)) return *spaced;
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, at));
    if (out.empty()) throw ConfigError(at + ": empty list");
    return out;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config: line " + std::to_string(e.line()) + ": " + e.message());
    }
    return from_ptree(tree);
}

void ExperimentConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError("override '" + assignment + "': expected section.key=value");
    const std::string section = trim(assignment.substr(0, dot));
    const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
    if (section.empty() || key.empty()) throw ConfigError("override '" + assignment + "': empty section or key");
    set(section, key, trim(assignment.substr(eq + 1)));
}

void ExperimentConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    data_[section][key] = value;
}

void ExperimentConfig::touch(const std::string& section) { data_[section]; }

bool ExperimentConfig::has_section(const std::string& section) const { return data_.count(section) > 0; }

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
    const auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

std::string ExperimentConfig::get_string(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError("config: missing " + where(section, key));
    return data_.at(section).at(key);
}

std::string ExperimentConfig::get_string(const std::string& section, const std::string& key,
                                         const std::string& fallback) const {
    return has(section, key) ? data_.at(section).at(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& section, const std::string& key) const {
    return parse_number(get_string(section, key), where(section, key));
}

double ExperimentConfig::get_double(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

std::optional<double> ExperimentConfig::get_optional_double(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return get_double(section, key);
}

std::int64_t ExperimentConfig::get_int(const std::string& section, const std::string& key) const {
    const std::string t = get_string(section, key);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(where(section, key) + ": expected an integer, got '" + t + "'");
    return v;
}

std::int64_t ExperimentConfig::get_int(const std::string& section, const std::string& key,
                                       std::int64_t fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t ExperimentConfig::get_u64(const std::string& section, const std::string& key) const {
    const std::string t = get_string(section, key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(where(section, key) + ": expected an unsigned integer, got '" + t + "'");
    return v;
}

bool ExperimentConfig::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string t = get_string(section, key);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(where(section, key) + ": expected true or false, got '" + t + "'");
}

std::vector<double> ExperimentConfig::get_list(const std::string& section, const std::string& key) const {
    return parse_list(get_string(section, key), where(section, key));
}

std::vector<double> ExperimentConfig::get_list(const std::string& section, const std::string& key,
                                               const std::vector<double>& fallback) const {
    return has(section, key) ? get_list(section, key) : fallback;
}

std::vector<std::int64_t> ExperimentConfig::get_int_list(const std::string& section, const std::string& key) const {
    std::vector<std::int64_t> out;
    for (double v : get_list(section, key)) {
        if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(where(section, key) + ": expected integers");
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

void ExperimentConfig::require_keys_within(const std::string& section,
                                           std::initializer_list<const char*> allowed) const {
    const auto it = data_.find(section);
    if (it == data_.end()) return;
    for (const auto& [key, value] : it->second) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!ok) throw ConfigError("config: unknown key " + where(section, key));
    }
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    for (const auto& [section, body] : data_) {
        os << '[' << section << "]\n";
        for (const auto& [key, value] : body) os << key << " = " << value << '\n';
    }
    return os.str();
}

std::string ExperimentConfig::content_hash() const { return sha1_hex(canonical()); }

std::string sha1_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw Error("sha1: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

KernelSpec parse_kernel(const ExperimentConfig& cfg, const std::string& s) {
    cfg.require_keys_within(s, {"variant", "c", "alpha", "lambda", "p"});
    const std::string v = cfg.get_string(s, "variant");
    KernelSpec k;
    if (v == "tempered_power")
        k = TemperedPower{cfg.get_double(s, "c"), cfg.get_double(s, "alpha"), cfg.get_double(s, "lambda")};
    else if (v == "exponential")
        k = Exponential{cfg.get_double(s, "c"), cfg.get_double(s, "lambda")};
    else if (v == "pure_power")
        k = PurePower{cfg.get_double(s, "c"), cfg.get_double(s, "alpha")};
    else if (v == "shifted_exponential")
        k = ShiftedExponential{cfg.get_double(s, "p"), cfg.get_double(s, "c")};
    else if (v == "shifted_power")
        k = ShiftedPower{cfg.get_double(s, "p"), cfg.get_double(s, "c"), cfg.get_double(s, "alpha")};
    else
        throw ConfigError("[" + s + "] variant: unknown kernel '" + v + "'");
    if (auto err = kernel_domain_error(k)) throw ConfigError("[" + s + "] " + *err);
    return k;
}

WindowSpec parse_window(const ExperimentConfig& cfg) {
    cfg.require_keys_within("window", {"n", "T", "b"});
    WindowSpec w;
    w.kernel = parse_kernel(cfg);
    w.n = cfg.get_int("window", "n");
    w.T = cfg.get_double("window", "T", 1.0);
    w.b = cfg.get_double("window", "b", 0.5);
    return w;
}

EmlParams parse_eml(const ExperimentConfig& cfg, const std::string& s) {
    cfg.require_keys_within(s, {"alpha", "lambda", "b", "T", "c"});
    EmlParams p;
    p.alpha = cfg.get_double(s, "alpha");
    p.lambda = cfg.get_double(s, "lambda", 0.0);
    p.b = cfg.get_double(s, "b", 1.0);
    p.T = cfg.get_double(s, "T", 1.0);
    p.c = cfg.get_optional_double(s, "c");
    try {
        validate_eml(p);
    } catch (const Error& e) {
        throw ConfigError("[" + s + "] " + e.what());
    }
    return p;
}

LevySpec parse_levy(const ExperimentConfig& cfg, const std::string& s) {
    cfg.require_keys_within(s, {"variant", "drift", "sigma", "beta", "C", "p", "q", "mu"});
    const std::string v = cfg.get_string(s, "variant");
    LevySpec spec;
    if (v == "brownian") {
        spec = BrownianLevy{cfg.get_double(s, "drift", 0.0), cfg.get_double(s, "sigma", 1.0)};
    } else if (v == "stable") {
        const double p = cfg.get_double(s, "p", 0.5);
        spec = StableLevy{cfg.get_double(s, "beta"), cfg.get_double(s, "C"), p, cfg.get_double(s, "q", 1.0 - p),
                          cfg.get_double(s, "drift", 0.0)};
    } else if (v == "tempered_stable") {
        spec = TemperedStableLevy{cfg.get_double(s, "beta"), cfg.get_double(s, "mu"), cfg.get_double(s, "C")};
    } else {
        throw ConfigError("[" + s + "] variant: unknown Levy law '" + v + "'");
    }
    try {
        validate_levy(spec);
    } catch (const Error& e) {
        throw ConfigError("[" + s + "] " + e.what());
    }
    return spec;
}

}  // namespace gbp::harness
