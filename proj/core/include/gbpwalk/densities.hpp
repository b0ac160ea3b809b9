#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "gbpwalk/eml.hpp"

namespace gbp {

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

// Law with point masses kept apart from the gridded density.
struct MixtureDensity {
    std::vector<Atom> atoms;
    std::vector<double> grid;
    std::vector<double> values;

    double atom_mass() const;
    double continuous_mass() const;  // trapezoid
    double total_mass() const { return atom_mass() + continuous_mass(); }
    // E X^k over atoms plus trapezoid.
    double moment(int k) const;
    void write_csv(std::ostream& os) const;
    void write_atoms_csv(std::ostream& os) const;
};

// Continuous density of X*_t at x (alpha < 1, or alpha = 1 for the part on (0, t]).
double pdf_star(const EmlParams& p, double x, double t);
// Law of X*_t on a grid; alpha = 1 adds the atom at nu t.
MixtureDensity pdf_star_mixture(const EmlParams& p, const std::vector<double>& grid, double t);

// Law of X_t on a uniform grid starting at 0.
MixtureDensity pdf_X(const EmlParams& p, const std::vector<double>& grid, double t);

// int_0^t p*(x, y) dy at unit c, the potential whose x-derivative gives the law of X_t.
double star_potential(const EmlParams& p, double x, double t);

struct ExpClosedForms {
    double star_density = 0.0;  // on (0, t]
    double star_atom_t = 0.0;
    double X_density = 0.0;     // on (0, t]
    double X_atom_0 = 0.0;
    double X_atom_t = 0.0;
};

ExpClosedForms exp_closed_forms(const EmlParams& p, double x, double t);

struct TruncationAudit {
    double x_max = 0.0;
    double lost_mass = 0.0;
};

// Smallest doubling point beyond the mode where p* < 1e-12, with the mass lost beyond it.
TruncationAudit truncate_star_support(const EmlParams& p, double t);

}  // namespace gbp
