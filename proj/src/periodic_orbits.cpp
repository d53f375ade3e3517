#include "ruelle/periodic_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace ruelle {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr int kMaxNewtonIters = 60;

double frac(double x) { return x - std::floor(x); }

Vec2 frac(const Vec2& x) { return {frac(x[0]), frac(x[1])}; }

// Torus distance in the sup norm.
double torus_dist(const Vec2& x, const Vec2& y) {
    double d = 0.0;
    for (int i = 0; i < 2; ++i) {
        double t = std::abs(x[i] - y[i]);
        d = std::max(d, std::min(t, 1.0 - t));
    }
    return d;
}

// Integer points m with B^{-1} m in [-eta_1, 1+eta_1] x [-eta_2, 1+eta_2],
// a superset of the hull of B [0,1]^2 inflated by delta in sup norm.
// Scanline over m1 keeps the count proportional to |det B|.
std::vector<std::array<std::int64_t, 2>> seed_lattice(const IntMatrix2& B, int delta) {
    const Mat2 Bd = B.as_mat2();
    const Mat2 Binv = Bd.inverse();
    double eta[2];
    for (int i = 0; i < 2; ++i) {
        eta[i] = delta * (std::abs(Binv(i, 0)) + std::abs(Binv(i, 1)));
    }
    double m1_lo = 0.0, m1_hi = 0.0;
    for (int cx = 0; cx <= 1; ++cx) {
        for (int cy = 0; cy <= 1; ++cy) {
            double v = Bd(0, 0) * cx + Bd(0, 1) * cy;
            m1_lo = std::min(m1_lo, v);
            m1_hi = std::max(m1_hi, v);
        }
    }
    std::vector<std::array<std::int64_t, 2>> out;
    const auto lo1 = static_cast<std::int64_t>(std::floor(m1_lo)) - delta;
    const auto hi1 = static_cast<std::int64_t>(std::ceil(m1_hi)) + delta;
    for (std::int64_t m1 = lo1; m1 <= hi1; ++m1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        bool feasible = true;
        for (int i = 0; i < 2 && feasible; ++i) {
            const double p = Binv(i, 0), q = Binv(i, 1);
            const double a = -eta[i] - p * m1;
            const double b = 1.0 + eta[i] - p * m1;
            if (q == 0.0) {
                feasible = a <= 0.0 && 0.0 <= b;
            } else if (q > 0.0) {
                lo = std::max(lo, a / q);
                hi = std::min(hi, b / q);
            } else {
                lo = std::max(lo, b / q);
                hi = std::min(hi, a / q);
            }
        }
        if (!feasible || lo > hi) continue;
        const auto lo2 = static_cast<std::int64_t>(std::ceil(lo - 1e-12));
        const auto hi2 = static_cast<std::int64_t>(std::floor(hi + 1e-12));
        for (std::int64_t m2 = lo2; m2 <= hi2; ++m2) out.push_back({m1, m2});
    }
    return out;
}

struct OrbitSolve {
    bool converged = false;
    std::vector<Vec2> points;  // x_0..x_{n-1}, near [0,1)^2 reps
    double residual = 0.0;
};

// Multiple-shooting Newton for the orbit system
//   F~(x_j) - x_{j+1} - m_j = 0   (j mod n),
// seeded with the reduced linear-model orbit of x_0 = B^{-1} m and per-step
// integer offsets m_j frozen from the seed.
OrbitSolve solve_orbit(const TorusMap& map, int n, const std::array<std::int64_t, 2>& m,
                       const Mat2& Binv, double tol) {
    const IntMatrix2& A = map.linear_part();
    std::vector<Vec2> X(n);
    X[0] = Binv * Vec2(static_cast<double>(m[0]), static_cast<double>(m[1]));
    for (int j = 1; j < n; ++j) X[j] = frac(A.apply(X[j - 1]));

    std::vector<Vec2> mj(n);
    for (int j = 0; j < n; ++j) {
        Vec2 gap = map.evaluate(X[j]) - X[(j + 1) % n];
        mj[j] = {std::round(gap[0]), std::round(gap[1])};
    }

    Eigen::MatrixXd M(2 * n, 2 * n);
    Eigen::VectorXd G(2 * n), delta(2 * n);

    auto residual_of = [&](const std::vector<Vec2>& pts) {
        double r = 0.0;
        for (int j = 0; j < n; ++j) {
            Vec2 g = map.evaluate(pts[j]) - pts[(j + 1) % n] - mj[j];
            r = std::max({r, std::abs(g[0]), std::abs(g[1])});
        }
        return r;
    };

    OrbitSolve out;
    double res = residual_of(X);
    for (int it = 0; it < kMaxNewtonIters; ++it) {
        if (res < tol) {
            out.converged = true;
            break;
        }
        M.setZero();
        for (int j = 0; j < n; ++j) {
            Vec2 g = map.evaluate(X[j]) - X[(j + 1) % n] - mj[j];
            G[2 * j] = g[0];
            G[2 * j + 1] = g[1];
            M.block<2, 2>(2 * j, 2 * j) = map.jacobian(X[j]);
            const int jp = (j + 1) % n;
            M(2 * j, 2 * jp) -= 1.0;
            M(2 * j + 1, 2 * jp + 1) -= 1.0;
        }
        delta = M.partialPivLu().solve(G);
        // halve the step while the residual fails to decrease
        double scale = 1.0;
        std::vector<Vec2> Xn(n);
        for (int attempt = 0; attempt < 8; ++attempt) {
            for (int j = 0; j < n; ++j) {
                Xn[j] = X[j] - scale * Vec2(delta[2 * j], delta[2 * j + 1]);
            }
            double rn = residual_of(Xn);
            if (rn < res || rn < tol) break;
            scale *= 0.5;
        }
        for (int j = 0; j < n; ++j) X[j] -= scale * Vec2(delta[2 * j], delta[2 * j + 1]);
        res = residual_of(X);
    }
    out.converged = out.converged || res < tol;
    out.residual = res;
    out.points = std::move(X);
    return out;
}

FixedPointRecord make_record(const TorusMap& map, const TrigPolynomial& g,
                             const OrbitSolve& sol) {
    const int n = static_cast<int>(sol.points.size());
    FixedPointRecord rec;
    Vec2 x0 = frac(sol.points[0]);
    for (int i = 0; i < 2; ++i) {
        if (x0[i] > 1.0 - kDedupTol) x0[i] = 0.0;  // snap wrap-around reps
    }
    rec.point = x0;
    Mat2 J = Mat2::Identity();
    Complex w{1.0, 0.0};
    double det_j = 1.0;  // det(D F^n) via per-step determinants, cancellation free
    for (int j = 0; j < n; ++j) {
        Vec2 xj = frac(sol.points[j]);
        Mat2 D = map.jacobian(xj);
        J = D * J;
        det_j *= D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
        w *= g.evaluate(xj);
    }
    rec.jacobian_power = J;
    double det = 1.0 - (J(0, 0) + J(1, 1)) + det_j;  // det(I - J)
    rec.det_factor = std::abs(det);
    rec.sign = det >= 0.0 ? 1 : -1;
    rec.weight_product = w;
    rec.residual = sol.residual;
    return rec;
}

}  // namespace

void check_orbit_budget(const TorusMap& map, int n) {
    if (n < 1) throw Error("periodic_orbits: n must be positive");
    double lambda = map.linear_splitting().lambda_expanding;
    if (n * std::log(lambda) > 25.0) {
        throw BudgetExceeded("periodic_orbits: n*log(lambda) = " +
                             std::to_string(n * std::log(lambda)) + " exceeds the budget 25");
    }
}

std::vector<FixedPointRecord> enumerate_fixed_points(const TorusMap& map, int n,
                                                     double newton_tol,
                                                     const TrigPolynomial& g) {
    if (!map.cone_certificate().passed) {
        throw ConeCertificateMissing("periodic_orbits: cone certificate failed for this map");
    }
    check_orbit_budget(map, n);

    const IntMatrix2 An = map.linear_part().power(n);
    IntMatrix2 B = An;
    B.a -= 1;
    B.d -= 1;
    if (B.a * B.d - B.b * B.c == 0) {
        throw Error("periodic_orbits: A^n - I is singular");
    }
    const int delta = static_cast<int>(std::ceil(n * map.displacement_bound()));
    const auto seeds = seed_lattice(B, delta);
    const Mat2 Binv = B.as_mat2().inverse();

    const unsigned workers = std::min<unsigned>(worker_count(),
                                                std::max<std::size_t>(seeds.size() / 64, 1));
    std::vector<std::future<std::vector<FixedPointRecord>>> futures;
    std::vector<std::string> divergences(workers);
    const std::size_t chunk = (seeds.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(seeds.size(), lo + chunk);
        futures.push_back(std::async(std::launch::async, [&, lo, hi, w] {
            std::vector<FixedPointRecord> local;
            for (std::size_t i = lo; i < hi; ++i) {
                OrbitSolve sol = solve_orbit(map, n, seeds[i], Binv, newton_tol);
                if (!sol.converged) {
                    divergences[w] = "periodic_orbits: Newton failed to converge for m = (" +
                                     std::to_string(seeds[i][0]) + "," +
                                     std::to_string(seeds[i][1]) + ") at n = " + std::to_string(n);
                    continue;
                }
                local.push_back(make_record(map, g, sol));
            }
            return local;
        }));
    }
    std::vector<FixedPointRecord> records;
    for (auto& f : futures) {
        auto part = f.get();
        records.insert(records.end(), part.begin(), part.end());
    }
    for (const auto& msg : divergences) {
        if (!msg.empty()) throw NewtonDivergence(msg);
    }

    std::sort(records.begin(), records.end(), [](const FixedPointRecord& a, const FixedPointRecord& b) {
        if (a.point[0] != b.point[0]) return a.point[0] < b.point[0];
        return a.point[1] < b.point[1];
    });
    std::vector<FixedPointRecord> unique;
    for (const auto& r : records) {
        bool dup = false;
        for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
            if (r.point[0] - it->point[0] > 2 * kDedupTol &&
                r.point[0] - it->point[0] < 1.0 - 2 * kDedupTol) {
                break;  // outside the sweep window (sorted on x1, wrap handled by snap)
            }
            if (torus_dist(r.point, it->point) <= kDedupTol) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(r);
    }
    return unique;
}

LefschetzResult lefschetz_check(const std::vector<FixedPointRecord>& records,
                                const IntMatrix2& A, int n) {
    const IntMatrix2 An = A.power(n);
    const std::int64_t lef = (1 - An.a) * (1 - An.d) - An.b * An.c;
    std::int64_t s = 0;
    for (const auto& r : records) s += r.sign;
    return {s == lef, s, lef};
}

Complex trace_sum(const TorusMap& map, const TrigPolynomial& g, int n, double newton_tol) {
    auto records = enumerate_fixed_points(map, n, newton_tol, g);
    auto lef = lefschetz_check(records, map.linear_part(), n);
    if (!lef.passed) {
        throw LefschetzMismatch("periodic_orbits: signed sum " + std::to_string(lef.signed_sum) +
                                " != det(I - A^" + std::to_string(n) + ") = " +
                                std::to_string(lef.lefschetz_number));
    }
    Complex t{0.0, 0.0};
    for (const auto& r : records) t += r.weight_product / r.det_factor;
    return t;
}

TraceSequence compute_traces(const TorusMap& map, const TrigPolynomial& g, int order,
                             double newton_tol) {
    TraceSequence seq;
    seq.order = order;
    seq.values.reserve(order);
    for (int n = 1; n <= order; ++n) {
        seq.values.push_back(trace_sum(map, g, n, newton_tol));
    }
    return seq;
}

std::vector<Complex> fourier_trace_partial_sums(const TorusMap& map, const TrigPolynomial& g,
                                                int n, int mode_cutoff, int grid_size) {
    if (mode_cutoff < 0) throw Error("periodic_orbits: mode cutoff must be >= 0");
    const int min_grid = std::max(4 * mode_cutoff, 4);
    if (grid_size < min_grid || (grid_size & (grid_size - 1)) != 0) {
        throw Error("periodic_orbits: grid size must be a power of two >= " +
                    std::to_string(min_grid));
    }
    check_orbit_budget(map, n);

    const int N = grid_size;
    const std::size_t total = static_cast<std::size_t>(N) * N;
    std::vector<Complex> wprod(total, Complex(1.0, 0.0));
    std::vector<double> phi1(total), phi2(total);
    const double lambda_n = std::pow(map.linear_splitting().lambda_expanding, n);
    double min_det = std::numeric_limits<double>::infinity();

    for (int p = 0; p < N; ++p) {
        for (int q = 0; q < N; ++q) {
            const std::size_t idx = static_cast<std::size_t>(p) * N + q;
            Vec2 x{static_cast<double>(p) / N, static_cast<double>(q) / N};
            Vec2 y = x;
            Mat2 J = Mat2::Identity();
            Complex w{1.0, 0.0};
            for (int k = 0; k < n; ++k) {
                w *= g.evaluate(frac(y));
                J = map.jacobian(frac(y)) * J;
                // lift evaluated through reduced points: A acts Z^2-equivariantly
                Vec2 yr = frac(y);
                Vec2 shift{std::round(y[0] - yr[0]), std::round(y[1] - yr[1])};
                y = map.evaluate(yr) + map.linear_part().apply(shift);
            }
            wprod[idx] = w;
            phi1[idx] = y[0] - x[0];
            phi2[idx] = y[1] - x[1];
            double det = (J(0, 0) - 1.0) * (J(1, 1) - 1.0) - J(0, 1) * J(1, 0);
            min_det = std::min(min_det, std::abs(det));
        }
    }
    if (min_det < 1e-9 * (1.0 + lambda_n)) {
        throw LocalDiffeoViolation("periodic_orbits: det(DF^n - I) vanishes on the grid (min " +
                                   std::to_string(min_det) + ")");
    }

    std::vector<Complex> e1(total), e2(total);
    for (std::size_t i = 0; i < total; ++i) {
        e1[i] = std::polar(1.0, kTwoPi * phi1[i]);
        e2[i] = std::polar(1.0, kTwoPi * phi2[i]);
    }

    // shell[s] collects the diagonal entries with |m|_inf == s
    std::vector<Complex> shell(mode_cutoff + 1, Complex(0.0, 0.0));
    std::vector<Complex> pow1(total);
    for (std::size_t i = 0; i < total; ++i) pow1[i] = std::pow(e1[i], -mode_cutoff);
    std::vector<Complex> cur(total);
    for (int m1 = -mode_cutoff; m1 <= mode_cutoff; ++m1) {
        for (std::size_t i = 0; i < total; ++i) cur[i] = std::pow(e2[i], -mode_cutoff) * pow1[i];
        for (int m2 = -mode_cutoff; m2 <= mode_cutoff; ++m2) {
            Complex s{0.0, 0.0};
            for (std::size_t i = 0; i < total; ++i) s += wprod[i] * cur[i];
            const int ring = std::max(std::abs(m1), std::abs(m2));
            shell[ring] += s / static_cast<double>(total);
            if (m2 < mode_cutoff) {
                for (std::size_t i = 0; i < total; ++i) cur[i] *= e2[i];
            }
        }
        if (m1 < mode_cutoff) {
            for (std::size_t i = 0; i < total; ++i) pow1[i] *= e1[i];
        }
    }
    std::vector<Complex> partial(mode_cutoff + 1);
    Complex acc{0.0, 0.0};
    for (int s = 0; s <= mode_cutoff; ++s) {
        acc += shell[s];
        partial[s] = acc;
    }
    return partial;
}

Complex fourier_trace(const TorusMap& map, const TrigPolynomial& g, int n,
                      int mode_cutoff, int grid_size) {
    return fourier_trace_partial_sums(map, g, n, mode_cutoff, grid_size).back();
}

}  // namespace ruelle
