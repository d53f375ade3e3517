#include "ruelle/determinant.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ruelle {

namespace {

constexpr double kTailFactor = 1e-8;   // tail-dominance threshold for the radius
constexpr double kStripFactor = 1e-13;  // trailing-coefficient strip level

double radius_from_tail_rule(const std::vector<Complex>& c, int order) {
    // largest R on a geometric grid with
    //   max_{m > M/2} |c_m| R^m <= 1e-8 max_{m <= M/2} |c_m| R^m
    const int half = order / 2;
    double best = 0.0;
    for (double r = 1e-2; r <= 1e3; r *= 1.06) {
        double head = 0.0, tail = 0.0;
        double rm = 1.0;
        for (int m = 0; m <= order; ++m) {
            double v = std::abs(c[m]) * rm;
            if (m <= half) {
                head = std::max(head, v);
            } else {
                tail = std::max(tail, v);
            }
            rm *= r;
        }
        if (tail <= kTailFactor * head) best = r;
    }
    return best;
}

}  // namespace

DeterminantSeries determinant_coefficients(const TraceSequence& traces) {
    if (traces.order < 1 || traces.values.size() != static_cast<std::size_t>(traces.order)) {
        throw Error("determinant: trace sequence must carry order >= 1 values");
    }
    const int M = traces.order;
    DeterminantSeries s;
    s.order = M;
    s.coefficients.assign(M + 1, Complex(0.0, 0.0));
    s.coefficients[0] = 1.0;
    for (int m = 1; m <= M; ++m) {
        Complex acc{0.0, 0.0};
        for (int j = 1; j <= m; ++j) {
            acc += traces.values[j - 1] * s.coefficients[m - j];
        }
        s.coefficients[m] = -acc / static_cast<double>(m);
    }
    s.reliability_radius = radius_from_tail_rule(s.coefficients, M);
    return s;
}

Complex evaluate_determinant(const DeterminantSeries& series, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = series.coefficients.rbegin(); it != series.coefficients.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<Complex> determinant_zeros(const DeterminantSeries& series) {
    if (series.order < 1) throw Error("determinant: series order must be >= 1");
    double cmax = 0.0;
    for (const auto& c : series.coefficients) cmax = std::max(cmax, std::abs(c));
    int deg = series.order;
    while (deg > 0 && std::abs(series.coefficients[deg]) < kStripFactor * cmax) --deg;
    if (deg == 0) {
        throw DegenerateSeries("determinant: all coefficients beyond c_0 are below threshold");
    }

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) {
        comp(i, deg - 1) = -series.coefficients[i] / series.coefficients[deg];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("determinant: companion eigensolver failed");
    }

    std::vector<Complex> zeros;
    for (int i = 0; i < deg; ++i) {
        Complex z = es.eigenvalues()[i];
        if (std::abs(z) <= series.reliability_radius * (1.0 + 1e-12)) zeros.push_back(z);
    }
    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    return zeros;
}

GrowthProfile growth_profile(const DeterminantSeries& series, const std::vector<double>& radii) {
    GrowthProfile out;
    out.radii = radii;
    out.max_log_abs.reserve(radii.size());
    constexpr int kAngles = 256;
    for (double r : radii) {
        if (r > series.reliability_radius * (1.0 + 1e-12)) {
            throw Error("determinant: growth profile radius " + std::to_string(r) +
                        " beyond the reliability radius");
        }
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < kAngles; ++a) {
            double th = kTwoPi * a / kAngles;
            Complex z = std::polar(r, th);
            best = std::max(best, std::log(std::abs(evaluate_determinant(series, z))));
        }
        out.max_log_abs.push_back(best);
    }

    // slope of log(max log|d|) against log log(1+r), positive values only
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (out.max_log_abs[i] > 0.0) {
            xs.push_back(std::log(std::log1p(radii[i])));
            ys.push_back(std::log(out.max_log_abs[i]));
        }
    }
    if (xs.size() < 2) {
        out.order_slope = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.order_slope = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace ruelle
