#ifndef RUELLE_TRIG_POLYNOMIAL_HPP
#define RUELLE_TRIG_POLYNOMIAL_HPP

#include <array>
#include <vector>

#include "ruelle/common.hpp"

namespace ruelle {

// Finite trigonometric polynomial on T^2:
//   p(x) = sum_k c_k exp(2 pi i k.x),  k in Z^2, finitely many c_k != 0.
// Terms are kept sorted by frequency and merged, so two polynomials with the
// same coefficients compare bit-identically.
class TrigPolynomial {
  public:
    struct Term {
        std::array<int, 2> k;
        Complex c;
    };

    TrigPolynomial() = default;  // the zero polynomial
    explicit TrigPolynomial(std::vector<Term> terms);

    static TrigPolynomial constant(Complex c);
    // amp * cos(2 pi k.x) and amp * sin(2 pi k.x), both real valued.
    static TrigPolynomial cosine(std::array<int, 2> k, double amp);
    static TrigPolynomial sine(std::array<int, 2> k, double amp);

    const std::vector<Term>& terms() const { return terms_; }
    bool real_valued() const { return real_valued_; }
    bool is_zero() const { return terms_.empty(); }

    Complex coefficient(std::array<int, 2> k) const;
    Complex evaluate(const Vec2& x) const;
    // Evaluation dropping the imaginary part; requires real_valued().
    double evaluate_real(const Vec2& x) const;

    // Term-wise partial derivative in x_axis (axis 0 or 1).
    TrigPolynomial derivative(int axis) const;

    // sum_k |c_k|, a sup-norm bound.
    double sup_bound() const;
    int max_frequency() const;  // max |k|_inf over the support

    TrigPolynomial operator+(const TrigPolynomial& other) const;
    TrigPolynomial operator*(double s) const;

    bool operator==(const TrigPolynomial& other) const;

  private:
    std::vector<Term> terms_;
    bool real_valued_ = true;  // vacuously true for the zero polynomial
};

}  // namespace ruelle

#endif
