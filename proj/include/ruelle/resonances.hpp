#ifndef RUELLE_RESONANCES_HPP
#define RUELLE_RESONANCES_HPP

#include <string>
#include <vector>

#include "ruelle/determinant.hpp"

namespace ruelle {

enum class ResonanceSource { determinant, galerkin, both };

struct Resonance {
    Complex lambda;
    int multiplicity = 1;
    ResonanceSource source = ResonanceSource::determinant;
    double residual = 0.0;  // cluster radius (0 for a simple, isolated value)
};

struct ResonanceSet {
    std::vector<Resonance> entries;  // sorted by decreasing |lambda|
    double r_min = 0.0;              // requested validity floor
    double certified_floor = 0.0;    // max(r_min, 1/reliability_radius) for the
                                     // determinant route; r_min otherwise
    int total_multiplicity() const;
};

// Single-linkage clustering of near-coincident values within tol; total
// multiplicity is conserved.
struct Cluster {
    Complex center;
    int multiplicity;
    double radius;
};
std::vector<Cluster> cluster_points(const std::vector<Complex>& points, double tol);

// lambda = 1/z over the returned determinant zeros, clustered at 1e-6.
// r_min below 1/reliability_radius is allowed but recorded via
// certified_floor (the spec-level precondition is advisory there).
ResonanceSet resonances_from_determinant(const DeterminantSeries& series, double r_min);

// Galerkin (or any eigenvalue list) route: keep |lambda| >= r_min, cluster.
ResonanceSet resonances_from_eigenvalues(const std::vector<Complex>& eigenvalues,
                                         double r_min,
                                         ResonanceSource source = ResonanceSource::galerkin);

// Hausdorff distance between the supports of two sets (inf for one empty,
// 0 for both empty).
double hausdorff_distance(const ResonanceSet& a, const ResonanceSet& b);

std::string to_string(ResonanceSource s);

}  // namespace ruelle

#endif
