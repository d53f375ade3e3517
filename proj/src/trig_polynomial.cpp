#include "ruelle/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ruelle {

unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("RUELLE_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

namespace {

bool term_less(const TrigPolynomial::Term& x, const TrigPolynomial::Term& y) {
    return x.k < y.k;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_less);
    for (const auto& t : terms) {
        if (!terms_.empty() && terms_.back().k == t.k) {
            terms_.back().c += t.c;
        } else {
            terms_.push_back(t);
        }
    }
    std::erase_if(terms_, [](const Term& t) { return t.c == Complex(0.0, 0.0); });

    // realValued iff c_{-k} == conj(c_k) across the support (within roundoff).
    double scale = 0.0;
    for (const auto& t : terms_) scale = std::max(scale, std::abs(t.c));
    real_valued_ = true;
    for (const auto& t : terms_) {
        Complex mirror = coefficient({-t.k[0], -t.k[1]});
        if (std::abs(mirror - std::conj(t.c)) > 1e-14 * scale) {
            real_valued_ = false;
            break;
        }
    }
}

TrigPolynomial TrigPolynomial::constant(Complex c) {
    if (c == Complex(0.0, 0.0)) return TrigPolynomial();
    return TrigPolynomial({Term{{0, 0}, c}});
}

TrigPolynomial TrigPolynomial::cosine(std::array<int, 2> k, double amp) {
    return TrigPolynomial({Term{k, {0.5 * amp, 0.0}}, Term{{-k[0], -k[1]}, {0.5 * amp, 0.0}}});
}

TrigPolynomial TrigPolynomial::sine(std::array<int, 2> k, double amp) {
    return TrigPolynomial({Term{k, {0.0, -0.5 * amp}}, Term{{-k[0], -k[1]}, {0.0, 0.5 * amp}}});
}

Complex TrigPolynomial::coefficient(std::array<int, 2> k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, {}}, term_less);
    if (it != terms_.end() && it->k == k) return it->c;
    return {0.0, 0.0};
}

Complex TrigPolynomial::evaluate(const Vec2& x) const {
    Complex s{0.0, 0.0};
    for (const auto& t : terms_) {
        double phase = kTwoPi * (t.k[0] * x[0] + t.k[1] * x[1]);
        s += t.c * Complex(std::cos(phase), std::sin(phase));
    }
    return s;
}

double TrigPolynomial::evaluate_real(const Vec2& x) const {
    if (!real_valued_) throw Error("trig_polynomial: evaluate_real on a non-real polynomial");
    return evaluate(x).real();
}

TrigPolynomial TrigPolynomial::derivative(int axis) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        out.push_back({t.k, t.c * Complex(0.0, kTwoPi * t.k[axis])});
    }
    return TrigPolynomial(std::move(out));
}

double TrigPolynomial::sup_bound() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.c);
    return s;
}

int TrigPolynomial::max_frequency() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max({m, std::abs(t.k[0]), std::abs(t.k[1])});
    return m;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return TrigPolynomial(std::move(all));
}

TrigPolynomial TrigPolynomial::operator*(double s) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.c *= s;
    return TrigPolynomial(std::move(out));
}

bool TrigPolynomial::operator==(const TrigPolynomial& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].k != other.terms_[i].k || terms_[i].c != other.terms_[i].c) return false;
    }
    return true;
}

}  // namespace ruelle
