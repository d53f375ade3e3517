#ifndef RUELLE_PERIODIC_ORBITS_HPP
#define RUELLE_PERIODIC_ORBITS_HPP

#include <vector>

#include "ruelle/torus_map.hpp"

namespace ruelle {

// One solution of F^n(x) = x on T^2.
struct FixedPointRecord {
    Vec2 point;            // in [0,1)^2
    Mat2 jacobian_power;   // D_x F^n
    double det_factor;     // |det(I - D_x F^n)|
    int sign;              // sign of det(I - D_x F^n)
    Complex weight_product;  // prod_{k<n} g(F^k x)
    double residual;       // max per-step closure residual of the orbit solve
};

struct TraceSequence {
    std::vector<Complex> values;  // t_1 .. t_N
    int order = 0;
};

// Orbit-count budget: requires n * log(lambda) <= 25.
void check_orbit_budget(const TorusMap& map, int n);

// Enumerates all fixed points of F^n. Seeds run over the integer points of
// the lattice parallelogram (A^n - I)[0,1]^2 inflated by ceil(n*max|v|) in
// sup norm; each seed is refined by a multiple-shooting Newton solve of the
// orbit system; duplicates within 1e-9 (mod Z^2) are merged and records are
// sorted by point coordinates. The weight products are evaluated with g.
// Throws ConeCertificateMissing, BudgetExceeded, NewtonDivergence.
std::vector<FixedPointRecord> enumerate_fixed_points(const TorusMap& map, int n,
                                                     double newton_tol = 1e-11,
                                                     const TrigPolynomial& g = TrigPolynomial::constant(1.0));

struct LefschetzResult {
    bool passed;
    std::int64_t signed_sum;     // sum of record signs
    std::int64_t lefschetz_number;  // det(I - A^n)
};

LefschetzResult lefschetz_check(const std::vector<FixedPointRecord>& records,
                                const IntMatrix2& A, int n);

// t_n = sum over records of weight_product / det_factor; enumeration must
// pass the Lefschetz completeness check (LefschetzMismatch otherwise).
Complex trace_sum(const TorusMap& map, const TrigPolynomial& g, int n,
                  double newton_tol = 1e-11);

// t_1..t_N in one sweep.
TraceSequence compute_traces(const TorusMap& map, const TrigPolynomial& g, int order,
                             double newton_tol = 1e-11);

// Partial sum  sum_{|m|_inf <= mode_cutoff} <L^n e_m, e_m>_{L^2}, each term the
// grid mean of (prod_{k<n} g(F^k x)) exp(2 pi i m.(F~^n(x) - x)). grid_size
// must be a power of two >= max(4*mode_cutoff, 4); throws LocalDiffeoViolation
// when det(DF^n - I) vanishes on the grid.
Complex fourier_trace(const TorusMap& map, const TrigPolynomial& g, int n,
                      int mode_cutoff, int grid_size);

// Partial sums for all cutoffs 0..mode_cutoff in one pass (same cost), used
// to study convergence toward t_n.
std::vector<Complex> fourier_trace_partial_sums(const TorusMap& map, const TrigPolynomial& g,
                                                int n, int mode_cutoff, int grid_size);

}  // namespace ruelle

#endif
