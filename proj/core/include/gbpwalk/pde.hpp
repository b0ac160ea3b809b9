#pragma once

#include <ostream>
#include <vector>

#include "gbpwalk/eml.hpp"

namespace gbp {

enum class PdeCase { star, X, ml_star, exp_star };

struct PdeCheckSpec {
    PdeCase which = PdeCase::star;
    std::vector<double> x_grid;  // interior points, all > 0
    double t_min = 0.5;
    double t_max = 2.0;
    double step = 0.02;  // coarsest time step; each further level halves it
    int levels = 4;
    double dx = 1e-4;  // centered x-differences
};

struct PdeLevel {
    double step = 0.0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

struct PdeReport {
    std::vector<PdeLevel> levels;
    std::vector<double> observed_order;  // log2 of successive max-residual ratios
    // Residual on the finest level.
    std::vector<double> field_x, field_t, field_value;
    // exp_star only: residual from exact derivatives of the closed form.
    double analytic_max_abs = 0.0;

    bool decreasing() const;
    void write_csv(std::ostream& os) const;
};

PdeReport pde_residual(const EmlParams& p, const PdeCheckSpec& spec);

}  // namespace gbp
