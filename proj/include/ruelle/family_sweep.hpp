#ifndef RUELLE_FAMILY_SWEEP_HPP
#define RUELLE_FAMILY_SWEEP_HPP

#include <optional>
#include <string>

#include "ruelle/galerkin.hpp"
#include "ruelle/spectral_analysis.hpp"

namespace ruelle {

struct PipelineParams {
    int trace_order = 10;   // N
    int cutoff = 8;         // K
    double gamma = 0.5;
    double sigma = 1.0;
    double r_min = 0.05;
    std::vector<double> r_grid;  // defaults to 10 geometric points [r_min, 0.5]
    double newton_tol = 1e-11;
};

// One-parameter family F_t = A + (v + t * direction), g_t = g + t * g_direction.
struct SweepPlan {
    IntMatrix2 linear{2, 1, 1, 1};
    TrigPolynomial base_v1, base_v2;
    TrigPolynomial direction_v1, direction_v2;
    TrigPolynomial g_base = TrigPolynomial::constant(1.0);
    TrigPolynomial g_direction;
    std::vector<double> t_values;
    PipelineParams pipeline;
};

struct SweepReport {
    double t = 0.0;
    bool skipped = false;        // cone certificate failed in pre-flight
    std::string error;           // non-empty if the pipeline failed at this t
    TraceSequence traces;
    DeterminantSeries series;
    ResonanceSet resonances;             // determinant route
    std::vector<Complex> galerkin_leading;  // leading eigenvalues (up to 8)
    double cross_residual = 0.0;         // Hausdorff distance between routes
    ExponentEstimate exponent;
    WeylCheck weyl;
};

struct SweepResult {
    std::vector<SweepReport> reports;    // one per t, in input order
    std::vector<std::size_t> by_exponent;  // report indices, estimable first by value
};

// Per-t runs are independent; failures are captured per report, never
// aborting the others.
SweepResult run_sweep(const SweepPlan& plan);

}  // namespace ruelle

#endif
