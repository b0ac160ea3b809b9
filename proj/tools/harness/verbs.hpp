#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/manifest.hpp"

namespace gbp::harness {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides [run] seed
    unsigned threads = 1;
    bool svg = false;
};

const std::vector<std::string>& verb_names();
bool is_stochastic(const std::string& verb, const ExperimentConfig& cfg);

// Runs the verb, writes its artifacts and manifest.txt under opt.out_dir, and returns the
// manifest. ConfigError escapes for unusable configurations; other library errors are
// recorded in the manifest.
RunManifest run_verb(const std::string& verb, ExperimentConfig cfg, const RunOptions& opt);

// 0 when every check passed, 1 otherwise.
int exit_status(const RunManifest& m);

std::string tool_version();

}  // namespace gbp::harness
