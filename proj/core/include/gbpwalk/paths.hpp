#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gbpwalk/exact.hpp"
#include "gbpwalk/renewal.hpp"

namespace gbp {

// Sequence started after a one, simulated on [1, floor(n * horizon)].
struct StarSource {
    KernelSpec kernel;
    std::int64_t n = 100;
    double horizon = 1.0;
};

using WalkSource = std::variant<Window, StarSource>;

struct PathEnsemble {
    std::vector<double> grid;
    std::int64_t count = 0;
    std::vector<double> values;  // row-major, count x grid.size()
    std::uint64_t seed = 0;
    std::string variant;  // "window" or "star"
    std::string source;   // kernel/window echo
    std::int64_t n = 0;
    double alpha = 1.0;

    double at(std::int64_t path, std::size_t g) const {
        return values[static_cast<std::size_t>(path) * grid.size() + g];
    }
    double& at(std::int64_t path, std::size_t g) {
        return values[static_cast<std::size_t>(path) * grid.size() + g];
    }
};

inline constexpr double kMaxEnsembleValues = 5e7;
inline constexpr double kMaxEnsembleWork = 2e11;

PathEnsemble scaled_walk_paths(const WalkSource& source, const std::vector<double>& grid,
                               std::int64_t count, std::uint64_t seed, unsigned threads = 1);

// Product of powers of increments X(t_end) - X(t_start). t_start = 0 refers to
// the origin; all other times must be on the ensemble grid.
struct IncrementPower {
    double t_start;
    double t_end;
    int k;
};

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
};

Estimate empirical_statistics(const PathEnsemble& e, const std::vector<IncrementPower>& query);

// Index of t on the grid; throws QueryError when absent.
std::size_t grid_index(const std::vector<double>& grid, double t);

void write_ensemble_csv(std::ostream& os, const PathEnsemble& e);
void write_ensemble_metadata(std::ostream& os, const PathEnsemble& e, const std::string& config_echo,
                             const std::string& content_hash);

}  // namespace gbp
