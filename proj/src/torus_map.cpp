#include "ruelle/torus_map.hpp"

#include <cmath>
#include <limits>

namespace ruelle {

IntMatrix2::IntMatrix2(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
    : a(a_), b(b_), c(c_), d(d_) {
    std::int64_t dt = det();
    if (dt != 1 && dt != -1) {
        throw Error("torus_maps: matrix determinant must be +-1, got " + std::to_string(dt));
    }
}

IntMatrix2 IntMatrix2::power(int n) const {
    if (n < 0) throw Error("torus_maps: negative matrix power");
    // entries stay below lambda^n; the orbit budget keeps that under ~7e10
    const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 8;
    std::int64_t ra = 1, rb = 0, rc = 0, rd = 1;
    for (int i = 0; i < n; ++i) {
        std::int64_t na = a * ra + b * rc;
        std::int64_t nb = a * rb + b * rd;
        std::int64_t nc = c * ra + d * rc;
        std::int64_t nd = c * rb + d * rd;
        ra = na; rb = nb; rc = nc; rd = nd;
        if (std::max({std::abs(ra), std::abs(rb), std::abs(rc), std::abs(rd)}) > limit) {
            throw BudgetExceeded("torus_maps: integer overflow in matrix power " + std::to_string(n));
        }
    }
    IntMatrix2 r(1, 0, 0, 1);
    r.a = ra; r.b = rb; r.c = rc; r.d = rd;
    return r;
}

Mat2 IntMatrix2::as_mat2() const {
    Mat2 m;
    m << static_cast<double>(a), static_cast<double>(b),
         static_cast<double>(c), static_cast<double>(d);
    return m;
}

Vec2 IntMatrix2::apply(const Vec2& x) const {
    return {a * x[0] + b * x[1], c * x[0] + d * x[1]};
}

std::array<std::int64_t, 2> IntMatrix2::apply_int(const std::array<std::int64_t, 2>& k) const {
    return {a * k[0] + b * k[1], c * k[0] + d * k[1]};
}

HyperbolicSplitting splitting(const IntMatrix2& A) {
    if (!A.hyperbolic()) {
        throw NotHyperbolic("torus_maps: |trace| = " + std::to_string(std::abs(A.trace())) +
                            " <= 2, matrix is not hyperbolic");
    }
    const double tr = static_cast<double>(A.trace());
    const double dt = static_cast<double>(A.det());
    const double disc = std::sqrt(tr * tr - 4.0 * dt);
    // signed eigenvalues of A (and A^T), |mu_plus| >= |mu_minus|
    double mu_plus, mu_minus;
    if (tr >= 0) {
        mu_plus = (tr + disc) / 2.0;
    } else {
        mu_plus = (tr - disc) / 2.0;
    }
    mu_minus = dt / mu_plus;

    // eigenvectors of A^T = [[a,c],[b,d]]: (c, mu - a) or (mu - d, b)
    auto eigvec = [&](double mu) {
        Vec2 v1{static_cast<double>(A.c), mu - static_cast<double>(A.a)};
        Vec2 v2{mu - static_cast<double>(A.d), static_cast<double>(A.b)};
        Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
        return Vec2(v / v.norm());
    };

    HyperbolicSplitting s;
    s.mu_expand = mu_plus;
    s.mu_contract = mu_minus;
    s.lambda_expanding = std::abs(mu_plus);
    s.u_expand = eigvec(mu_plus);
    s.u_contract = eigvec(mu_minus);
    return s;
}

TorusMap::TorusMap(IntMatrix2 linear, TrigPolynomial v1, TrigPolynomial v2)
    : linear_(linear), v1_(std::move(v1)), v2_(std::move(v2)), splitting_(splitting(linear)) {
    if (!v1_.real_valued() || !v2_.real_valued()) {
        throw Error("torus_maps: displacement components must be real valued");
    }
    for (int i = 0; i < 2; ++i) {
        const TrigPolynomial& vi = i == 0 ? v1_ : v2_;
        for (int j = 0; j < 2; ++j) dv_[i][j] = vi.derivative(j);
    }
    displacement_bound_ = std::max(v1_.sup_bound(), v2_.sup_bound());
    cone_ = verify_cone_condition(*this, 32, 0.3);
}

Vec2 TorusMap::evaluate(const Vec2& x) const {
    Vec2 y = linear_.apply(x);
    if (!v1_.is_zero()) y[0] += v1_.evaluate(x).real();
    if (!v2_.is_zero()) y[1] += v2_.evaluate(x).real();
    return y;
}

Mat2 TorusMap::jacobian(const Vec2& x) const {
    Mat2 J = linear_.as_mat2();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (!dv_[i][j].is_zero()) J(i, j) += dv_[i][j].evaluate(x).real();
        }
    }
    return J;
}

ConeCertificate verify_cone_condition(const TorusMap& map, int grid_size, double cone_angle) {
    if (grid_size < 16) throw Error("torus_maps: cone grid size must be >= 16");
    if (!(cone_angle > 0.0 && cone_angle < 1.5)) {
        throw Error("torus_maps: cone angle out of range");
    }

    // Tangent-space eigenbasis of A (not A^T): the cone lives where DF acts.
    IntMatrix2 At = map.linear_part().transpose();
    HyperbolicSplitting tangent = splitting(At);  // eigenvectors of (A^T)^T = A
    const Vec2 u = tangent.u_expand;
    const Vec2 s = tangent.u_contract;
    Mat2 basis;
    basis << u[0], s[0], u[1], s[1];
    Mat2 to_coords = basis.inverse();

    const double tan_cone = std::tan(cone_angle);
    const double margin = 0.01;  // required uniform expansion 1 + margin
    ConeCertificate cert;
    cert.grid_size = grid_size;
    cert.cone_angle = cone_angle;
    cert.passed = true;
    cert.worst_expansion = std::numeric_limits<double>::infinity();

    const int n_dirs = 9;
    for (int p = 0; p < grid_size; ++p) {
        for (int q = 0; q < grid_size; ++q) {
            Vec2 x{static_cast<double>(p) / grid_size, static_cast<double>(q) / grid_size};
            Mat2 Jc = to_coords * map.jacobian(x) * basis;  // J in cone coordinates
            for (int di = 0; di < n_dirs; ++di) {
                double slope = tan_cone * (2.0 * di / (n_dirs - 1) - 1.0);
                Vec2 w{1.0, slope};
                Vec2 Jw = Jc * w;
                double expansion = std::abs(Jw[0]);  // growth of the unstable coordinate
                cert.worst_expansion = std::min(cert.worst_expansion, expansion);
                if (expansion < 1.0 + margin) cert.passed = false;
                if (std::abs(Jw[1]) >= tan_cone * std::abs(Jw[0])) cert.passed = false;
            }
        }
    }
    if (!std::isfinite(cert.worst_expansion)) cert.worst_expansion = 0.0;
    return cert;
}

}  // namespace ruelle
