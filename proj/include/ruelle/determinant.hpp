#ifndef RUELLE_DETERMINANT_HPP
#define RUELLE_DETERMINANT_HPP

#include <vector>

#include "ruelle/periodic_orbits.hpp"

namespace ruelle {

// Taylor series of the dynamical determinant around z = 0, with the disk
// where the truncation is trusted.
struct DeterminantSeries {
    std::vector<Complex> coefficients;  // c_0 .. c_M, c_0 = 1
    int order = 0;                      // M
    double reliability_radius = 0.0;
};

// c_0 = 1, m c_m = -sum_{j=1..m} t_j c_{m-j}. The reliability radius is the
// largest R on a geometric grid where the tail coefficients m > M/2
// contribute at most 1e-8 of the head at |z| = R.
DeterminantSeries determinant_coefficients(const TraceSequence& traces);

// Horner evaluation of the truncated series (soft validity: callers should
// stay within reliability_radius, values beyond are extrapolation).
Complex evaluate_determinant(const DeterminantSeries& series, Complex z);

// All roots of the stripped polynomial with |z| <= reliability_radius,
// computed as companion-matrix eigenvalues, sorted by modulus then argument.
// Trailing coefficients below 1e-13 * max|c| are stripped first; throws
// DegenerateSeries when nothing of degree >= 1 remains.
std::vector<Complex> determinant_zeros(const DeterminantSeries& series);

struct GrowthProfile {
    std::vector<double> radii;
    std::vector<double> max_log_abs;  // max over 256 angles of log|d(r e^{i t})|
    double order_slope;               // slope of log(max log|d|) vs log log(1+r),
                                      // over radii with positive max log|d|; NaN if < 2 such
};

// Radii must all be <= reliability_radius.
GrowthProfile growth_profile(const DeterminantSeries& series, const std::vector<double>& radii);

}  // namespace ruelle

#endif
