#include "ruelle/family_sweep.hpp"

#include <algorithm>
#include <cmath>

namespace ruelle {

namespace {

std::vector<double> default_r_grid(double r_min) {
    std::vector<double> grid;
    const int points = 10;
    const double hi = 0.5;
    if (r_min >= hi) return {r_min};
    for (int i = 0; i < points; ++i) {
        grid.push_back(r_min * std::pow(hi / r_min, static_cast<double>(i) / (points - 1)));
    }
    return grid;
}

SweepReport run_single(const SweepPlan& plan, double t) {
    SweepReport rep;
    rep.t = t;
    TrigPolynomial v1 = plan.base_v1 + plan.direction_v1 * t;
    TrigPolynomial v2 = plan.base_v2 + plan.direction_v2 * t;
    TrigPolynomial g = plan.g_base + plan.g_direction * t;

    TorusMap map(plan.linear, v1, v2);
    if (!map.cone_certificate().passed) {
        rep.skipped = true;
        rep.error = "cone certificate failed";
        return rep;
    }
    const PipelineParams& pp = plan.pipeline;
    rep.traces = compute_traces(map, g, pp.trace_order, pp.newton_tol);
    rep.series = determinant_coefficients(rep.traces);
    rep.resonances = resonances_from_determinant(rep.series, pp.r_min);

    EscapeWeight weight(pp.gamma, pp.sigma, map.linear_splitting());
    GalerkinOperator op = assemble(map, g, pp.cutoff, weight);
    const auto& eigs = op.eigenvalues();
    rep.galerkin_leading.assign(eigs.begin(),
                                eigs.begin() + std::min<std::size_t>(eigs.size(), 8));
    ResonanceSet galerkin_set = resonances_from_eigenvalues(eigs, pp.r_min);
    rep.cross_residual = hausdorff_distance(rep.resonances, galerkin_set);

    std::vector<double> grid = pp.r_grid.empty() ? default_r_grid(pp.r_min) : pp.r_grid;
    CountingCurve curve = counting_function(rep.resonances, grid);
    rep.exponent = curve.exponent_estimate;
    rep.weyl = weyl_bound_check(curve, 2.0 * pp.sigma);
    return rep;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
    SweepResult result;
    result.reports.reserve(plan.t_values.size());
    for (double t : plan.t_values) {
        try {
            result.reports.push_back(run_single(plan, t));
        } catch (const std::exception& e) {
            SweepReport rep;
            rep.t = t;
            rep.error = e.what();
            result.reports.push_back(rep);
        }
    }
    result.by_exponent.resize(result.reports.size());
    for (std::size_t i = 0; i < result.by_exponent.size(); ++i) result.by_exponent[i] = i;
    std::stable_sort(result.by_exponent.begin(), result.by_exponent.end(),
                     [&](std::size_t a, std::size_t b) {
                         const auto& ea = result.reports[a].exponent;
                         const auto& eb = result.reports[b].exponent;
                         if (ea.estimable != eb.estimable) return ea.estimable;
                         if (ea.estimable && ea.value != eb.value) return ea.value > eb.value;
                         return result.reports[a].t < result.reports[b].t;
                     });
    return result;
}

}  // namespace ruelle
