#include "ruelle/resonances.hpp"

#include <algorithm>
#include <cmath>

namespace ruelle {

namespace {

constexpr double kClusterTol = 1e-6;

void sort_entries(std::vector<Resonance>& entries) {
    std::sort(entries.begin(), entries.end(), [](const Resonance& a, const Resonance& b) {
        double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
        if (ma != mb) return ma > mb;
        return std::arg(a.lambda) < std::arg(b.lambda);
    });
}

}  // namespace

int ResonanceSet::total_multiplicity() const {
    int t = 0;
    for (const auto& e : entries) t += e.multiplicity;
    return t;
}

std::vector<Cluster> cluster_points(const std::vector<Complex>& points, double tol) {
    // single linkage: points within tol of any cluster member join it
    std::vector<std::vector<Complex>> groups;
    for (const auto& p : points) {
        std::vector<std::size_t> touching;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            for (const auto& q : groups[gi]) {
                if (std::abs(p - q) <= tol) {
                    touching.push_back(gi);
                    break;
                }
            }
        }
        if (touching.empty()) {
            groups.push_back({p});
        } else {
            groups[touching[0]].push_back(p);
            for (std::size_t i = touching.size(); i-- > 1;) {
                auto& src = groups[touching[i]];
                groups[touching[0]].insert(groups[touching[0]].end(), src.begin(), src.end());
                groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(touching[i]));
            }
        }
    }
    std::vector<Cluster> out;
    for (const auto& g : groups) {
        Complex c{0.0, 0.0};
        for (const auto& p : g) c += p;
        c /= static_cast<double>(g.size());
        double rad = 0.0;
        for (const auto& p : g) rad = std::max(rad, std::abs(p - c));
        out.push_back({c, static_cast<int>(g.size()), rad});
    }
    return out;
}

ResonanceSet resonances_from_determinant(const DeterminantSeries& series, double r_min) {
    if (!(r_min > 0.0)) throw Error("determinant: rMin must be positive");
    ResonanceSet set;
    set.r_min = r_min;
    set.certified_floor = series.reliability_radius > 0.0
                              ? std::max(r_min, 1.0 / series.reliability_radius)
                              : std::numeric_limits<double>::infinity();
    std::vector<Complex> zeros;
    try {
        zeros = determinant_zeros(series);
    } catch (const DegenerateSeries&) {
        throw;
    }
    std::vector<Complex> lambdas;
    for (const auto& z : zeros) {
        Complex lambda = 1.0 / z;
        if (std::abs(lambda) >= r_min) lambdas.push_back(lambda);
    }
    for (const auto& cl : cluster_points(lambdas, kClusterTol)) {
        set.entries.push_back({cl.center, cl.multiplicity, ResonanceSource::determinant, cl.radius});
    }
    sort_entries(set.entries);
    return set;
}

ResonanceSet resonances_from_eigenvalues(const std::vector<Complex>& eigenvalues,
                                         double r_min, ResonanceSource source) {
    if (!(r_min > 0.0)) throw Error("resonances: rMin must be positive");
    ResonanceSet set;
    set.r_min = r_min;
    set.certified_floor = r_min;
    std::vector<Complex> kept;
    for (const auto& ev : eigenvalues) {
        if (std::abs(ev) >= r_min) kept.push_back(ev);
    }
    for (const auto& cl : cluster_points(kept, kClusterTol)) {
        set.entries.push_back({cl.center, cl.multiplicity, source, cl.radius});
    }
    sort_entries(set.entries);
    return set;
}

double hausdorff_distance(const ResonanceSet& a, const ResonanceSet& b) {
    if (a.entries.empty() && b.entries.empty()) return 0.0;
    if (a.entries.empty() || b.entries.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    auto directed = [](const ResonanceSet& from, const ResonanceSet& to) {
        double worst = 0.0;
        for (const auto& p : from.entries) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to.entries) best = std::min(best, std::abs(p.lambda - q.lambda));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::string to_string(ResonanceSource s) {
    switch (s) {
        case ResonanceSource::determinant: return "determinant";
        case ResonanceSource::galerkin: return "galerkin";
        case ResonanceSource::both: return "both";
    }
    return "?";
}

}  // namespace ruelle
