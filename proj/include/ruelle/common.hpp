#ifndef RUELLE_COMMON_HPP
#define RUELLE_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ruelle {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotHyperbolic : Error {
    using Error::Error;
};
struct NewtonDivergence : Error {
    using Error::Error;
};
struct LefschetzMismatch : Error {
    using Error::Error;
};
struct LocalDiffeoViolation : Error {
    using Error::Error;
};
struct QuadratureOverflow : Error {
    using Error::Error;
};
struct ConeCertificateMissing : Error {
    using Error::Error;
};
struct EigenSolverFailure : Error {
    using Error::Error;
};
struct DegenerateSeries : Error {
    using Error::Error;
};
struct GridBelowValidityFloor : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// Worker count for parallel loops: RUELLE_THREADS caps hardware_concurrency.
unsigned worker_count();

}  // namespace ruelle

#endif
