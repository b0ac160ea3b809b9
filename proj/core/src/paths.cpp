#include "gbpwalk/paths.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/parallel.hpp"

namespace gbp {

PathEnsemble scaled_walk_paths(const WalkSource& source, const std::vector<double>& grid,
                               std::int64_t count, std::uint64_t seed, unsigned threads) {
    if (count < 1) throw DomainError("scaled_walk_paths: count must be >= 1");
    if (grid.empty()) throw DomainError("scaled_walk_paths: empty grid");
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (!(grid[g] > 0.0)) throw DomainError("scaled_walk_paths: grid times must be > 0");
        if (g > 0 && !(grid[g] > grid[g - 1])) throw DomainError("scaled_walk_paths: grid must increase");
    }

    PathEnsemble e;
    e.grid = grid;
    e.count = count;
    e.seed = seed;
    RenewalTables tables;
    double horizon = 0.0;
    if (const auto* w = std::get_if<Window>(&source)) {
        horizon = w->spec().T;
        if (grid.back() > horizon * (1.0 + 1e-12)) throw DomainError("scaled_walk_paths: grid exceeds T");
        tables = build_renewal_tables(*w);
        e.variant = "window";
        e.source = describe_kernel(w->kernel()) + " n=" + std::to_string(w->n()) + " T=" + fmt17(w->spec().T) +
                   " b=" + fmt17(w->b());
        e.n = w->n();
        e.alpha = w->alpha();
    } else {
        const auto& s = std::get<StarSource>(source);
        horizon = s.horizon;
        if (grid.back() > horizon * (1.0 + 1e-12)) throw DomainError("scaled_walk_paths: grid exceeds horizon");
        const std::int64_t L = window_length(s.n, s.horizon);
        if (static_cast<double>(count) * static_cast<double>(L) > kMaxEnsembleWork)
            throw Refusal("scaled_walk_paths: count * length exceeds the work guard");
        tables = build_star_tables(s.kernel, s.n, L);
        e.variant = "star";
        e.source = describe_kernel(s.kernel) + " n=" + std::to_string(s.n) + " horizon=" + fmt17(s.horizon);
        e.n = s.n;
        e.alpha = kernel_alpha(s.kernel);
    }
    if (static_cast<double>(count) * static_cast<double>(grid.size()) > kMaxEnsembleValues)
        throw Refusal("scaled_walk_paths: count * grid size exceeds the memory guard");
    if (static_cast<double>(count) * static_cast<double>(tables.length) > kMaxEnsembleWork)
        throw Refusal("scaled_walk_paths: count * N exceeds the work guard");

    std::vector<std::int64_t> cut(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g)
        cut[g] = std::min(window_length(e.n, grid[g]), tables.length);
    const double scale = std::pow(static_cast<double>(e.n), -e.alpha);

    e.values.assign(static_cast<std::size_t>(count) * grid.size(), 0.0);
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t p) {
        CounterRng rng = substream(seed, p, StreamDomain::gbp_path);
        const IndexSet ones = sample_ones(tables, rng);
        std::size_t idx = 0;
        double* row = e.values.data() + p * grid.size();
        for (std::size_t g = 0; g < grid.size(); ++g) {
            while (idx < ones.size() && ones[idx] <= cut[g]) ++idx;
            row[g] = static_cast<double>(idx) * scale;
        }
    });
    return e;
}

std::size_t grid_index(const std::vector<double>& grid, double t) {
    for (std::size_t g = 0; g < grid.size(); ++g)
        if (std::abs(grid[g] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return g;
    throw QueryError("time " + fmt17(t) + " is not on the ensemble grid");
}

Estimate empirical_statistics(const PathEnsemble& e, const std::vector<IncrementPower>& query) {
    struct Term {
        std::ptrdiff_t lo;  // -1 for the origin
        std::size_t hi;
        int k;
    };
    std::vector<Term> terms;
    for (const auto& q : query) {
        if (q.k < 0) throw QueryError("negative exponent");
        if (q.k == 0) continue;
        if (!(q.t_end > q.t_start)) throw QueryError("increment end must follow its start");
        const std::ptrdiff_t lo = q.t_start == 0.0 ? -1 : static_cast<std::ptrdiff_t>(grid_index(e.grid, q.t_start));
        terms.push_back({lo, grid_index(e.grid, q.t_end), q.k});
    }
    Estimate est;
    est.samples = e.count;
    if (terms.empty()) {
        est.mean = 1.0;
        return est;
    }
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t p = 0; p < e.count; ++p) {
        double prod = 1.0;
        for (const auto& t : terms) {
            const double a = t.lo < 0 ? 0.0 : e.at(p, static_cast<std::size_t>(t.lo));
            prod *= std::pow(e.at(p, t.hi) - a, t.k);
        }
        const double delta = prod - mean;
        mean += delta / static_cast<double>(p + 1);
        m2 += delta * (prod - mean);
    }
    const double n = static_cast<double>(e.count);
    est.mean = mean;
    const double var = n > 1 ? m2 / (n - 1.0) : 0.0;
    est.stderr_ = std::sqrt(var / n);
    return est;
}

void write_ensemble_csv(std::ostream& os, const PathEnsemble& e) {
    os << "path_id,t,value\n";
    for (std::int64_t p = 0; p < e.count; ++p)
        for (std::size_t g = 0; g < e.grid.size(); ++g)
            os << p << ',' << fmt17(e.grid[g]) << ',' << fmt17(e.at(p, g)) << '\n';
}

void write_ensemble_metadata(std::ostream& os, const PathEnsemble& e, const std::string& config_echo,
                             const std::string& content_hash) {
    os << "seed = " << e.seed << '\n'
       << "variant = " << e.variant << '\n'
       << "source = " << e.source << '\n'
       << "paths = " << e.count << '\n'
       << "grid_points = " << e.grid.size() << '\n'
       << "config_hash = " << content_hash << '\n'
       << "[config]\n"
       << config_echo;
    if (!config_echo.empty() && config_echo.back() != '\n') os << '\n';
}

}  // namespace gbp
