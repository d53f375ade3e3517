#ifndef RUELLE_GALERKIN_HPP
#define RUELLE_GALERKIN_HPP

#include <memory>
#include <vector>

#include "ruelle/torus_map.hpp"

namespace ruelle {

// Escape-function weight on frequency space: w(k) = exp(-gamma G(k)) with
// G(k) = |k_s|^(1/sigma) - |k_u|^(1/sigma) in the A^T eigenbasis coordinates.
// sigma = 1 is the analytic case; sigma > 1 the Gevrey variant.
class EscapeWeight {
  public:
    EscapeWeight(double gamma, double sigma, HyperbolicSplitting splitting);

    double gamma() const { return gamma_; }
    double sigma() const { return sigma_; }
    const HyperbolicSplitting& splitting() const { return splitting_; }

    // Coordinates (k_u, k_s) of k in the (u_expand, u_contract) basis.
    Vec2 mode_coordinates(const std::array<std::int64_t, 2>& k) const;
    double escape_value(const std::array<std::int64_t, 2>& k) const;  // G(k)
    double log_weight(const std::array<std::int64_t, 2>& k) const;    // -gamma G(k)

    // Direct check of G(A^T k) <= G(k) - (1 - lambda^{-1/sigma}) max(|k_u|,|k_s|)^{1/sigma}
    // on the box |k|_inf <= box; returns the worst slack (>= -tol means pass).
    double decay_margin(const IntMatrix2& A, int box) const;

  private:
    double gamma_, sigma_;
    HyperbolicSplitting splitting_;
    Mat2 to_eigen_coords_;
};

class GalerkinOperator {
  public:
    int cutoff() const { return cutoff_; }
    int dimension() const { return dim_; }
    int quadrature_grid() const { return quadrature_grid_; }
    bool certificate_passed() const { return certificate_passed_; }
    int underflow_count() const { return underflow_count_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const EscapeWeight& weight() const { return *weight_; }
    const IntMatrix2& linear_part() const { return linear_; }

    int index_of(int k1, int k2) const { return (k1 + cutoff_) * (2 * cutoff_ + 1) + (k2 + cutoff_); }

    // Cached spectral data (computed on first use, thread safe).
    const std::vector<Complex>& eigenvalues() const;      // sorted by decreasing modulus
    const std::vector<double>& singular_values() const;   // decreasing

  private:
    friend GalerkinOperator assemble(const TorusMap&, const TrigPolynomial&, int,
                                     const EscapeWeight&);
    int cutoff_ = 0;
    int dim_ = 0;
    int quadrature_grid_ = 0;
    bool certificate_passed_ = false;
    int underflow_count_ = 0;
    IntMatrix2 linear_{1, 0, 0, 1};
    Eigen::MatrixXcd matrix_;
    std::shared_ptr<const EscapeWeight> weight_;
    struct SpectralCache;
    std::shared_ptr<SpectralCache> cache_;
};

// Matrix elements M[m,k] = Fourier coefficient at m - A^T k of
// g(x) exp(2 pi i k.v(x)), weighted to w(m) M[m,k] / w(k). The quadrature
// grid N doubles from 4K until the column-concentration certificate passes
// (raw column mass at circular frequency distance > N/4 from A^T k below
// 1e-8 of the column total); throws QuadratureOverflow beyond 2^14 and
// ConeCertificateMissing if the map's certificate failed.
GalerkinOperator assemble(const TorusMap& map, const TrigPolynomial& g, int cutoff,
                          const EscapeWeight& weight);

struct SingularValueFit {
    double C = 0.0;        // smallest C with a_n <= C exp(-sqrt(n)/C) for all n
    int violations = 0;    // 0 by construction
    double exponent_p = 0.0;  // regression exponent in a_n ~ exp(-c n^p)
};

SingularValueFit fit_singular_decay(const std::vector<double>& singular_values);

// tr(M^n), computed by repeated multiplication and cross-checked against the
// eigenvalue power sum (must agree to 1e-8 relative).
Complex operator_trace_power(const GalerkinOperator& op, int n);

}  // namespace ruelle

#endif
