#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gbp::harness {

enum class Relation { le, lt, ge, gt, eq };

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    Relation relation = Relation::le;
    double threshold = 0.0;
    bool pass = false;
};

// Builds a record and evaluates it; NaN measurements fail.
CheckRecord make_check(std::string name, double measured, Relation rel, double threshold);
// Boolean outcome recorded as measured 1/0 against threshold 1.
CheckRecord make_flag(std::string name, bool ok);

const char* relation_symbol(Relation r);

struct RunManifest {
    std::string tool = "gbpwalk";
    std::string version;
    std::string verb;
    std::string content_hash;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    double wall_seconds = 0.0;
    std::string config_echo;
    std::vector<std::string> artifacts;
    std::vector<CheckRecord> checks;
    std::string error;  // set when the run stopped early

    void add(CheckRecord c) { checks.push_back(std::move(c)); }
    bool all_pass() const;
    void write(std::ostream& os) const;
    static RunManifest read(std::istream& is);
};

}  // namespace gbp::harness
