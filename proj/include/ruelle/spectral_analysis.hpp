#ifndef RUELLE_SPECTRAL_ANALYSIS_HPP
#define RUELLE_SPECTRAL_ANALYSIS_HPP

#include "ruelle/resonances.hpp"

namespace ruelle {

struct ExponentEstimate {
    bool estimable = false;
    double value = 0.0;
    double ci_halfwidth = 0.0;  // 95% interval half width of the slope
};

struct CountingCurve {
    std::vector<double> moduli;  // |lambda| with multiplicity expansion, decreasing
    std::vector<double> r_grid;
    std::vector<int> values;     // N(r) on the grid
    ExponentEstimate exponent_estimate;
    double fitted_c = 0.0;       // Weyl constant anchored at the 0.5 end (alpha_inv = 2)
};

// N(r) = #{ |lambda| >= r } with multiplicity. r_grid must be strictly
// increasing with every point >= resonances.r_min (GridBelowValidityFloor).
CountingCurve counting_function(const ResonanceSet& resonances,
                                const std::vector<double>& r_grid);

// Least-squares slope of log N(r) against log|log r| over grid points with
// N >= 2; not estimable with fewer than 4 such points.
ExponentEstimate exponent_estimate(const CountingCurve& curve);

struct WeylCheck {
    bool passed = true;
    double fitted_c = 0.0;
    double anchor_r = 0.0;
};

// Counting bound N(r) <= C |log r|^alpha_inv, with C fitted at the largest
// grid point <= 0.5 and checked on every grid point <= 0.5 (the bound's
// domain). Vacuous pass for an empty curve or an empty admissible grid.
WeylCheck weyl_bound_check(const CountingCurve& curve, double alpha_inv);

}  // namespace ruelle

#endif
