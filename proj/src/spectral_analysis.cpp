#include "ruelle/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>

namespace ruelle {

namespace {

struct LineFit {
    bool ok = false;
    double slope = 0.0;
    double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit f;
    const std::size_t n = xs.size();
    if (n < 2) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = my + f.slope * (xs[i] - mx);
        ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    f.slope_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    f.ok = true;
    return f;
}

}  // namespace

CountingCurve counting_function(const ResonanceSet& resonances,
                                const std::vector<double>& r_grid) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (i > 0 && r_grid[i] <= r_grid[i - 1]) {
            throw Error("spectral_analysis: rGrid must be strictly increasing");
        }
        if (r_grid[i] < resonances.r_min) {
            throw GridBelowValidityFloor("spectral_analysis: grid point " +
                                         std::to_string(r_grid[i]) + " below rMin " +
                                         std::to_string(resonances.r_min));
        }
    }
    CountingCurve curve;
    for (const auto& e : resonances.entries) {
        for (int j = 0; j < e.multiplicity; ++j) curve.moduli.push_back(std::abs(e.lambda));
    }
    std::sort(curve.moduli.rbegin(), curve.moduli.rend());
    curve.r_grid = r_grid;
    curve.values.reserve(r_grid.size());
    for (double r : r_grid) {
        int count = 0;
        for (double m : curve.moduli) {
            if (m >= r) ++count;
        }
        curve.values.push_back(count);
    }
    curve.exponent_estimate = exponent_estimate(curve);
    curve.fitted_c = weyl_bound_check(curve, 2.0).fitted_c;
    return curve;
}

ExponentEstimate exponent_estimate(const CountingCurve& curve) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.r_grid.size(); ++i) {
        const double r = curve.r_grid[i];
        if (curve.values[i] >= 2 && r > 0.0 && r != 1.0) {
            xs.push_back(std::log(std::abs(std::log(r))));
            ys.push_back(std::log(static_cast<double>(curve.values[i])));
        }
    }
    ExponentEstimate est;
    if (xs.size() < 4) return est;  // NotEstimable
    LineFit f = fit_line(xs, ys);
    if (!f.ok) return est;
    est.estimable = true;
    est.value = f.slope;
    est.ci_halfwidth = 1.96 * f.slope_stderr;
    return est;
}

WeylCheck weyl_bound_check(const CountingCurve& curve, double alpha_inv) {
    WeylCheck check;
    // the bound's domain is r in (0, 1/2]; C anchored at the 0.5 end
    std::size_t anchor = curve.r_grid.size();
    for (std::size_t i = 0; i < curve.r_grid.size(); ++i) {
        if (curve.r_grid[i] <= 0.5 + 1e-12) anchor = i;
    }
    if (anchor == curve.r_grid.size() || curve.moduli.empty()) {
        return check;  // vacuous pass
    }
    const double r0 = curve.r_grid[anchor];
    check.anchor_r = r0;
    check.fitted_c = curve.values[anchor] / std::pow(std::abs(std::log(r0)), alpha_inv);
    for (std::size_t i = 0; i <= anchor; ++i) {
        const double r = curve.r_grid[i];
        const double bound = check.fitted_c * std::pow(std::abs(std::log(r)), alpha_inv);
        if (curve.values[i] > bound * (1.0 + 1e-12)) {
            check.passed = false;
        }
    }
    return check;
}

}  // namespace ruelle
