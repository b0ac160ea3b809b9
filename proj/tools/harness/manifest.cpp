#include "harness/manifest.hpp"

#include <cmath>
#include <sstream>

#include "gbpwalk/csv.hpp"
#include "harness/config.hpp"

namespace gbp::harness {

const char* relation_symbol(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::lt: return "<";
        case Relation::ge: return ">=";
        case Relation::gt: return ">";
        case Relation::eq: return "==";
    }
    return "?";
}

namespace {

Relation relation_from(const std::string& s) {
    for (Relation r : {Relation::le, Relation::lt, Relation::ge, Relation::gt, Relation::eq})
        if (s == relation_symbol(r)) return r;
    throw ConfigError("manifest: unknown relation '" + s + "'");
}

double read_value(const std::string& s) {
    if (s == "nan" || s == "-nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    return parse_number(s, "manifest check");
}

}  // namespace

CheckRecord make_check(std::string name, double measured, Relation rel, double threshold) {
    CheckRecord c{std::move(name), measured, rel, threshold, false};
    if (!std::isnan(measured)) {
        switch (rel) {
            case Relation::le: c.pass = measured <= threshold; break;
            case Relation::lt: c.pass = measured < threshold; break;
            case Relation::ge: c.pass = measured >= threshold; break;
            case Relation::gt: c.pass = measured > threshold; break;
            case Relation::eq: c.pass = measured == threshold; break;
        }
    }
    return c;
}

CheckRecord make_flag(std::string name, bool ok) {
    return make_check(std::move(name), ok ? 1.0 : 0.0, Relation::eq, 1.0);
}

bool RunManifest::all_pass() const {
    if (!error.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void RunManifest::write(std::ostream& os) const {
    os << "tool = " << tool << '\n';
    os << "version = " << version << '\n';
    os << "verb = " << verb << '\n';
    os << "content_hash = " << content_hash << '\n';
    os << "seed = " << (seed ? std::to_string(*seed) : std::string("none")) << '\n';
    os << "threads = " << threads << '\n';
    os << "wall_seconds = " << fmt17(wall_seconds) << '\n';
    os << "status = " << (all_pass() ? "pass" : "fail") << '\n';
    if (!error.empty()) os << "error = " << error << '\n';
    os << "\n[config]\n" << config_echo;
    os << "\n[artifacts]\n";
    for (const auto& a : artifacts) os << a << '\n';
    os << "\n[checks]\n";
    for (const auto& c : checks)
        os << c.name << '\t' << fmt17(c.measured) << '\t' << relation_symbol(c.relation) << '\t' << fmt17(c.threshold)
           << '\t' << (c.pass ? "pass" : "fail") << '\n';
}

RunManifest RunManifest::read(std::istream& is) {
    RunManifest m;
    std::string line, block;
    std::ostringstream echo;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line == "[config]" || line == "[artifacts]" || line == "[checks]") {
            block = line;
            continue;
        }
        if (block == "[config]") {
            echo << line << '\n';
        } else if (block == "[artifacts]") {
            m.artifacts.push_back(line);
        } else if (block == "[checks]") {
            std::istringstream ls(line);
            std::string name, measured, rel, threshold, status;
            if (!std::getline(ls, name, '\t') || !std::getline(ls, measured, '\t') || !std::getline(ls, rel, '\t') ||
                !std::getline(ls, threshold, '\t') || !std::getline(ls, status))
                throw ConfigError("manifest: malformed check line '" + line + "'");
            CheckRecord c;
            c.name = name;
            c.measured = read_value(measured);
            c.relation = relation_from(rel);
            c.threshold = read_value(threshold);
            c.pass = status == "pass";
            m.checks.push_back(c);
        } else {
            const auto eq = line.find(" = ");
            if (eq == std::string::npos) throw ConfigError("manifest: malformed header line '" + line + "'");
            const std::string key = line.substr(0, eq), value = line.substr(eq + 3);
            if (key == "tool") m.tool = value;
            else if (key == "version") m.version = value;
            else if (key == "verb") m.verb = value;
            else if (key == "content_hash") m.content_hash = value;
            else if (key == "seed" && value != "none") m.seed = std::stoull(value);
            else if (key == "threads") m.threads = static_cast<unsigned>(std::stoul(value));
            else if (key == "wall_seconds") m.wall_seconds = parse_number(value, "manifest wall_seconds");
            else if (key == "error") m.error = value;
        }
    }
    m.config_echo = echo.str();
    return m;
}

}  // namespace gbp::harness
