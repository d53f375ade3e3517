#ifndef RUELLE_TORUS_MAP_HPP
#define RUELLE_TORUS_MAP_HPP

#include <array>
#include <cstdint>

#include "ruelle/common.hpp"
#include "ruelle/trig_polynomial.hpp"

namespace ruelle {

// 2x2 integer matrix [[a,b],[c,d]] with |det| = 1.
struct IntMatrix2 {
    std::int64_t a, b, c, d;

    IntMatrix2(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_);

    std::int64_t det() const { return a * d - b * c; }
    std::int64_t trace() const { return a + d; }
    bool hyperbolic() const { return trace() > 2 || trace() < -2; }

    IntMatrix2 transpose() const { return IntMatrix2(a, c, b, d); }
    // Integer matrix power; throws BudgetExceeded on int64 overflow risk.
    IntMatrix2 power(int n) const;

    Mat2 as_mat2() const;
    Vec2 apply(const Vec2& x) const;
    std::array<std::int64_t, 2> apply_int(const std::array<std::int64_t, 2>& k) const;

    bool operator==(const IntMatrix2& o) const = default;
};

// Eigen-structure of A^T: expanding/contracting directions in the cotangent
// picture. lambda_expanding is the modulus of the large eigenvalue; the signed
// eigenvalues are kept for maps with negative trace.
struct HyperbolicSplitting {
    double lambda_expanding;  // > 1
    double mu_expand;         // signed eigenvalue with |mu_expand| = lambda_expanding
    double mu_contract;       // signed eigenvalue with |mu_contract| = 1/lambda or det/lambda
    Vec2 u_expand;            // unit eigenvector of A^T for mu_expand
    Vec2 u_contract;          // unit eigenvector of A^T for mu_contract
};

// Throws NotHyperbolic when |trace| <= 2.
HyperbolicSplitting splitting(const IntMatrix2& A);

struct ConeCertificate {
    bool passed = false;
    double worst_expansion = 0.0;
    int grid_size = 0;
    double cone_angle = 0.0;
};

// Analytic Anosov map of T^2: x -> A x + v(x) with v a Z^2-periodic
// trigonometric-polynomial displacement (components real valued).
class TorusMap {
  public:
    TorusMap(IntMatrix2 linear, TrigPolynomial v1, TrigPolynomial v2);

    const IntMatrix2& linear_part() const { return linear_; }
    const TrigPolynomial& displacement(int axis) const { return axis == 0 ? v1_ : v2_; }
    bool zero_displacement() const { return v1_.is_zero() && v2_.is_zero(); }
    const HyperbolicSplitting& linear_splitting() const { return splitting_; }
    const ConeCertificate& cone_certificate() const { return cone_; }
    double displacement_bound() const { return displacement_bound_; }

    // Lift evaluation F~(x) = A x + v(x) on R^2.
    Vec2 evaluate(const Vec2& x) const;
    // D_x F = A + Dv(x).
    Mat2 jacobian(const Vec2& x) const;

  private:
    IntMatrix2 linear_;
    TrigPolynomial v1_, v2_;
    TrigPolynomial dv_[2][2];  // dv_[i][j] = d v_i / d x_j
    HyperbolicSplitting splitting_;
    ConeCertificate cone_;
    double displacement_bound_;
};

// Samples the Jacobian on a grid_size x grid_size grid and checks that the
// cone of half-angle cone_angle around the expanding direction of the linear
// part (in its tangent eigenbasis) is strictly invariant and uniformly
// expanding. Failure is a value, not an error.
ConeCertificate verify_cone_condition(const TorusMap& map, int grid_size, double cone_angle);

}  // namespace ruelle

#endif
