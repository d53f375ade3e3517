#include "ruelle/galerkin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <mutex>

#include <cblas.h>
#include <fftw3.h>
#include <lapacke.h>

namespace ruelle {

namespace {

constexpr double kCertTail = 1e-8;
constexpr int kMaxGrid = 1 << 14;
constexpr double kUnderflowLog = -690.0;  // log(1e-300)
constexpr int kDimensionBudget = 20000;

struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n) {
        data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!data) throw Error("galerkin: fftw allocation failed");
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct FftwPlan {
    fftw_plan plan = nullptr;
    FftwPlan(int n, fftw_complex* io) {
        plan = fftw_plan_dft_2d(n, n, io, io, FFTW_FORWARD, FFTW_ESTIMATE);
        if (!plan) throw Error("galerkin: fftw plan creation failed");
    }
    ~FftwPlan() { fftw_destroy_plan(plan); }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;
};

int circular_distance(std::int64_t a, int n) {
    std::int64_t r = ((a % n) + n) % n;
    return static_cast<int>(std::min(r, n - r));
}

}  // namespace

struct GalerkinOperator::SpectralCache {
    std::mutex mutex;
    bool have_eigs = false, have_svs = false;
    std::vector<Complex> eigs;
    std::vector<double> svs;
};

EscapeWeight::EscapeWeight(double gamma, double sigma, HyperbolicSplitting s)
    : gamma_(gamma), sigma_(sigma), splitting_(s) {
    if (!(gamma > 0.0)) throw Error("galerkin: gamma must be positive");
    if (!(sigma >= 1.0)) throw Error("galerkin: sigma must be >= 1");
    Mat2 basis;
    basis << s.u_expand[0], s.u_contract[0], s.u_expand[1], s.u_contract[1];
    to_eigen_coords_ = basis.inverse();
}

Vec2 EscapeWeight::mode_coordinates(const std::array<std::int64_t, 2>& k) const {
    return to_eigen_coords_ * Vec2(static_cast<double>(k[0]), static_cast<double>(k[1]));
}

double EscapeWeight::escape_value(const std::array<std::int64_t, 2>& k) const {
    Vec2 c = mode_coordinates(k);
    return std::pow(std::abs(c[1]), 1.0 / sigma_) - std::pow(std::abs(c[0]), 1.0 / sigma_);
}

double EscapeWeight::log_weight(const std::array<std::int64_t, 2>& k) const {
    return -gamma_ * escape_value(k);
}

double EscapeWeight::decay_margin(const IntMatrix2& A, int box) const {
    const IntMatrix2 At = A.transpose();
    const double contraction = 1.0 - std::pow(splitting_.lambda_expanding, -1.0 / sigma_);
    double worst = std::numeric_limits<double>::infinity();
    for (std::int64_t k1 = -box; k1 <= box; ++k1) {
        for (std::int64_t k2 = -box; k2 <= box; ++k2) {
            const std::array<std::int64_t, 2> k{k1, k2};
            Vec2 c = mode_coordinates(k);
            double need = contraction * std::pow(std::max(std::abs(c[0]), std::abs(c[1])), 1.0 / sigma_);
            double margin = escape_value(k) - need - escape_value(At.apply_int(k));
            worst = std::min(worst, margin);
        }
    }
    return worst;
}

GalerkinOperator assemble(const TorusMap& map, const TrigPolynomial& g, int cutoff,
                          const EscapeWeight& weight) {
    if (!map.cone_certificate().passed) {
        throw ConeCertificateMissing("galerkin: cone certificate failed for this map");
    }
    if (cutoff < 0) throw Error("galerkin: cutoff must be >= 0");
    const int K = cutoff;
    const int side = 2 * K + 1;
    const int dim = side * side;
    if (dim > kDimensionBudget) {
        throw BudgetExceeded("galerkin: dimension " + std::to_string(dim) + " over budget");
    }

    GalerkinOperator op;
    op.cutoff_ = K;
    op.dim_ = dim;
    op.linear_ = map.linear_part();
    op.weight_ = std::make_shared<EscapeWeight>(weight);
    op.cache_ = std::make_shared<GalerkinOperator::SpectralCache>();
    op.matrix_ = Eigen::MatrixXcd::Zero(dim, dim);

    const IntMatrix2 At = map.linear_part().transpose();

    std::vector<double> lw(dim);
    for (int k1 = -K; k1 <= K; ++k1) {
        for (int k2 = -K; k2 <= K; ++k2) {
            lw[op.index_of(k1, k2)] = weight.log_weight({k1, k2});
        }
    }
    int underflows = 0;
    auto weight_entry = [&](int row, int col, Complex raw) {
        const double delta = lw[row] - lw[col];
        if (delta < kUnderflowLog) {
            ++underflows;
            return Complex(0.0, 0.0);
        }
        if (delta > 700.0) {
            throw Error("galerkin: weight ratio overflow, gamma too large for this cutoff");
        }
        return raw * std::exp(delta);
    };

    if (map.zero_displacement()) {
        // exp(2 pi i k.v) = 1: columns are exact coefficient lookups in g
        for (int k1 = -K; k1 <= K; ++k1) {
            for (int k2 = -K; k2 <= K; ++k2) {
                const int col = op.index_of(k1, k2);
                const auto ak = At.apply_int({k1, k2});
                for (const auto& term : g.terms()) {
                    const std::int64_t m1 = ak[0] + term.k[0];
                    const std::int64_t m2 = ak[1] + term.k[1];
                    if (std::abs(m1) <= K && std::abs(m2) <= K) {
                        const int row = op.index_of(static_cast<int>(m1), static_cast<int>(m2));
                        op.matrix_(row, col) = weight_entry(row, col, term.c);
                    }
                }
            }
        }
        op.quadrature_grid_ = 4 * std::max(K, 1);
        op.certificate_passed_ = true;
        op.underflow_count_ = underflows;
        return op;
    }

    for (int N = 4 * std::max(K, 1);; N *= 2) {
        if (N > kMaxGrid) {
            throw QuadratureOverflow("galerkin: quadrature grid would exceed 2^14");
        }
        const std::size_t total = static_cast<std::size_t>(N) * N;
        std::vector<double> v1(total), v2(total);
        std::vector<Complex> gv(total);
        for (int p = 0; p < N; ++p) {
            for (int q = 0; q < N; ++q) {
                Vec2 x{static_cast<double>(p) / N, static_cast<double>(q) / N};
                const std::size_t i = static_cast<std::size_t>(p) * N + q;
                v1[i] = map.displacement(0).is_zero() ? 0.0 : map.displacement(0).evaluate(x).real();
                v2[i] = map.displacement(1).is_zero() ? 0.0 : map.displacement(1).evaluate(x).real();
                gv[i] = g.evaluate(x);
            }
        }

        FftwBuffer master(total);
        FftwPlan plan(N, master.data);

        op.matrix_.setZero();
        underflows = 0;
        bool cert_ok = true;
        std::mutex accum_mutex;

        const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(side));
        std::vector<std::future<void>> futures;
        std::atomic<int> next_k1{-K};
        for (unsigned w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&] {
                FftwBuffer buf(total);
                std::vector<Complex> column(total);
                while (true) {
                    const int k1 = next_k1.fetch_add(1);
                    if (k1 > K) break;
                    for (int k2 = -K; k2 <= K; ++k2) {
                        for (std::size_t i = 0; i < total; ++i) {
                            const double phase = kTwoPi * (k1 * v1[i] + k2 * v2[i]);
                            const Complex h = gv[i] * Complex(std::cos(phase), std::sin(phase));
                            buf.data[i][0] = h.real();
                            buf.data[i][1] = h.imag();
                        }
                        fftw_execute_dft(plan.plan, buf.data, buf.data);
                        for (std::size_t i = 0; i < total; ++i) {
                            column[i] = Complex(buf.data[i][0], buf.data[i][1]) /
                                        static_cast<double>(total);
                        }
                        const auto ak = At.apply_int({k1, k2});
                        double mass = 0.0, tail = 0.0;
                        for (int a = 0; a < N; ++a) {
                            const int da = circular_distance(a - ak[0], N);
                            for (int b = 0; b < N; ++b) {
                                const double v = std::abs(column[static_cast<std::size_t>(a) * N + b]);
                                mass += v;
                                const int db = circular_distance(b - ak[1], N);
                                if (std::max(da, db) > N / 4) tail += v;
                            }
                        }
                        std::scoped_lock lock(accum_mutex);
                        if (tail > kCertTail * mass) cert_ok = false;
                        const int col = op.index_of(k1, k2);
                        for (int m1 = -K; m1 <= K; ++m1) {
                            const std::size_t a =
                                static_cast<std::size_t>(((m1 - ak[0]) % N + N) % N);
                            for (int m2 = -K; m2 <= K; ++m2) {
                                const std::size_t b =
                                    static_cast<std::size_t>(((m2 - ak[1]) % N + N) % N);
                                const int row = op.index_of(m1, m2);
                                op.matrix_(row, col) = weight_entry(row, col, column[a * N + b]);
                            }
                        }
                    }
                }
            }));
        }
        for (auto& f : futures) f.get();

        if (cert_ok) {
            op.quadrature_grid_ = N;
            op.certificate_passed_ = true;
            op.underflow_count_ = underflows;
            return op;
        }
    }
}

const std::vector<Complex>& GalerkinOperator::eigenvalues() const {
    std::scoped_lock lock(cache_->mutex);
    if (!cache_->have_eigs) {
        const int n = dim_;
        Eigen::MatrixXcd work = matrix_;
        std::vector<Complex> evs(n);
        const int info = LAPACKE_zgeev(
            LAPACK_COL_MAJOR, 'N', 'N', n,
            reinterpret_cast<lapack_complex_double*>(work.data()), n,
            reinterpret_cast<lapack_complex_double*>(evs.data()), nullptr, 1, nullptr, 1);
        if (info != 0) {
            throw EigenSolverFailure("galerkin: zgeev failed with info " + std::to_string(info));
        }
        std::sort(evs.begin(), evs.end(), [](Complex a, Complex b) {
            double ma = std::abs(a), mb = std::abs(b);
            if (ma != mb) return ma > mb;
            return std::arg(a) < std::arg(b);
        });
        cache_->eigs = std::move(evs);
        cache_->have_eigs = true;
    }
    return cache_->eigs;
}

const std::vector<double>& GalerkinOperator::singular_values() const {
    std::scoped_lock lock(cache_->mutex);
    if (!cache_->have_svs) {
        const int n = dim_;
        Eigen::MatrixXcd work = matrix_;
        std::vector<double> svs(n);
        const int info = LAPACKE_zgesdd(
            LAPACK_COL_MAJOR, 'N', n, n,
            reinterpret_cast<lapack_complex_double*>(work.data()), n, svs.data(),
            nullptr, 1, nullptr, 1);
        if (info != 0) {
            throw EigenSolverFailure("galerkin: zgesdd failed with info " + std::to_string(info));
        }
        cache_->svs = std::move(svs);  // LAPACK returns them decreasing
        cache_->have_svs = true;
    }
    return cache_->svs;
}

SingularValueFit fit_singular_decay(const std::vector<double>& sv) {
    SingularValueFit fit;
    if (sv.empty()) return fit;
    auto satisfies = [&](double C) {
        for (std::size_t n = 0; n < sv.size(); ++n) {
            if (sv[n] > C * std::exp(-std::sqrt(static_cast<double>(n)) / C)) return false;
        }
        return true;
    };
    double hi = std::max(sv[0], 1e-8);
    while (!satisfies(hi)) {
        hi *= 2.0;
        if (hi > 1e80) break;
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = lo > 0.0 ? 0.5 * (lo + hi) : hi / 2.0;
        if (satisfies(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (lo > 0.0 && (hi - lo) < 1e-12 * hi) break;
    }
    fit.C = hi;
    fit.violations = 0;
    for (std::size_t n = 0; n < sv.size(); ++n) {
        if (sv[n] > fit.C * std::exp(-std::sqrt(static_cast<double>(n)) / fit.C)) ++fit.violations;
    }

    // regression of log log(a_0/a_n) on log n over the resolved decay range
    const double a0 = sv[0];
    std::vector<double> xs, ys;
    for (std::size_t n = 1; n < sv.size(); ++n) {
        if (sv[n] < a0 * std::exp(-1.0) && sv[n] > a0 * 1e-13) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(std::log(a0 / sv[n])));
        }
    }
    if (xs.size() < 4) {
        fit.exponent_p = std::numeric_limits<double>::quiet_NaN();
        return fit;
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
    fit.exponent_p = sxy / sxx;
    return fit;
}

Complex operator_trace_power(const GalerkinOperator& op, int n) {
    if (n < 1) throw Error("galerkin: trace power requires n >= 1");
    const int dim = op.dimension();
    const Complex one{1.0, 0.0}, zero{0.0, 0.0};

    Complex trace_mul{0.0, 0.0};
    if (n == 1) {
        trace_mul = op.matrix().trace();
    } else {
        Eigen::MatrixXcd power = op.matrix();
        Eigen::MatrixXcd next(dim, dim);
        for (int j = 2; j <= n; ++j) {
            cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, dim, dim, dim, &one,
                        op.matrix().data(), dim, power.data(), dim, &zero, next.data(), dim);
            power.swap(next);
        }
        trace_mul = power.trace();
    }

    Complex trace_eig{0.0, 0.0};
    for (const auto& ev : op.eigenvalues()) {
        trace_eig += std::pow(ev, n);
    }
    if (std::abs(trace_mul - trace_eig) > 1e-8 * std::max(1.0, std::abs(trace_mul))) {
        throw EigenSolverFailure("galerkin: trace power routes disagree: " +
                                 std::to_string(std::abs(trace_mul - trace_eig)));
    }
    return trace_mul;
}

}  // namespace ruelle
