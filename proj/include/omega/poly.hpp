#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "omega/errors.hpp"

namespace omega {

/// Dense real polynomial, coefficients in ascending degree. The zero
/// polynomial is the empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
template <class Scalar>
class BasicPolynomial {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  // Trailing coefficients at or below this fraction of the largest one are
  // trimmed on construction.
  static constexpr Scalar kTrimTolerance = Scalar(1e-15);

  BasicPolynomial() = default;

  explicit BasicPolynomial(Coefficients coefficients) : c_(std::move(coefficients)) { normalize(); }

  BasicPolynomial(std::initializer_list<Scalar> coefficients)
      : c_(Eigen::Map<const Coefficients>(coefficients.begin(),
                                          static_cast<Eigen::Index>(coefficients.size()))) {
    normalize();
  }

  static BasicPolynomial constant(Scalar value) { return BasicPolynomial{value}; }

  /// scale * prod (x - root_i)
  static BasicPolynomial from_roots(std::span<const Scalar> roots, Scalar scale = Scalar(1)) {
    BasicPolynomial p{scale};
    for (const Scalar r : roots) p = p * BasicPolynomial{-r, Scalar(1)};
    return p;
  }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.size() == 0; }
  [[nodiscard]] const Coefficients& coefficients() const { return c_; }
  [[nodiscard]] Scalar coefficient(int i) const {
    return i >= 0 && i < c_.size() ? c_(i) : Scalar(0);
  }
  [[nodiscard]] Scalar leading() const { return is_zero() ? Scalar(0) : c_(c_.size() - 1); }

  /// Horner evaluation; T may be real or complex.
  template <class T>
  [[nodiscard]] T operator()(const T& x) const {
    T acc = T(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * x + T(c_(i));
    return acc;
  }

  [[nodiscard]] BasicPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    Coefficients d(c_.size() - 1);
    for (Eigen::Index i = 1; i < c_.size(); ++i) d(i - 1) = Scalar(i) * c_(i);
    return BasicPolynomial(std::move(d));
  }

  /// Real zeros, ascending. Quadratics use the cancellation-free formula;
  /// higher degrees take companion-matrix eigenvalues and polish each real
  /// one with Newton steps.
  [[nodiscard]] std::vector<Scalar> real_roots() const;

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
    Coefficients s = Coefficients::Zero(n);
    s.head(a.c_.size()) += a.c_;
    s.head(b.c_.size()) += b.c_;
    return BasicPolynomial(std::move(s));
  }

  friend BasicPolynomial operator-(const BasicPolynomial& a) { return BasicPolynomial(Coefficients(-a.c_)); }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + (-b); }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Coefficients p = Coefficients::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i) p.segment(i, b.c_.size()) += a.c_(i) * b.c_;
    return BasicPolynomial(std::move(p));
  }

  friend BasicPolynomial operator*(Scalar s, const BasicPolynomial& a) { return BasicPolynomial(Coefficients(s * a.c_)); }

  /// Exact division by (x - root); the remainder is dropped.
  [[nodiscard]] BasicPolynomial deflate(Scalar root) const {
    if (c_.size() <= 1) return {};
    Coefficients q(c_.size() - 1);
    Scalar carry = c_(c_.size() - 1);
    q(q.size() - 1) = carry;
    for (Eigen::Index i = c_.size() - 2; i >= 1; --i) {
      carry = c_(i) + carry * root;
      q(i - 1) = carry;
    }
    return BasicPolynomial(std::move(q));
  }

 private:
  void normalize() {
    if (c_.size() == 0) return;
    const Scalar largest = c_.cwiseAbs().maxCoeff();
    Eigen::Index n = c_.size();
    while (n > 0 && std::abs(c_(n - 1)) <= kTrimTolerance * largest) --n;
    c_.conservativeResize(n);
  }

  Coefficients c_;
};

using Polynomial = BasicPolynomial<double>;

template <class Scalar, class T>
T eval(const BasicPolynomial<Scalar>& p, const T& x) {
  return p(x);
}

template <class Scalar>
std::vector<Scalar> BasicPolynomial<Scalar>::real_roots() const {
  std::vector<Scalar> roots;
  const int n = degree();
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-c_(0) / c_(1));
    return roots;
  }
  if (n == 2) {
    const Scalar a = c_(2), b = c_(1), c = c_(0);
    const Scalar disc = b * b - 4 * a * c;
    // A discriminant at rounding level is a double root.
    if (disc < -Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (b * b + std::abs(4 * a * c))) {
      return roots;
    }
    const Scalar s = std::sqrt(std::max(disc, Scalar(0)));
    const Scalar t = -(b + std::copysign(s, b)) / 2;
    if (t == 0) {
      roots = {Scalar(0), Scalar(0)};
    } else {
      roots = {t / a, c / t};
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix companion = Matrix::Zero(n, n);
  companion.template block(1, 0, n - 1, n - 1).setIdentity();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_(i) / c_(n);
  Eigen::EigenSolver<Matrix> solver(companion, false);
  const auto eigenvalues = solver.eigenvalues();
  const BasicPolynomial dp = derivative();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const std::complex<Scalar> lambda = eigenvalues(i);
    if (std::abs(lambda.imag()) > Scalar(1e-7) * std::max(Scalar(1), std::abs(lambda))) continue;
    Scalar x = lambda.real();
    for (int it = 0; it < 8; ++it) {
      const Scalar d = dp(x);
      if (d == 0) break;
      const Scalar step = (*this)(x) / d;
      if (!std::isfinite(step) || std::abs(step) > Scalar(1e-3) * std::max(Scalar(1), std::abs(x))) break;
      x -= step;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// a_o * b_o * (x - r1)(x - r2)
struct FactoredQuadratic {
  double a_o = 1;
  double b_o = 1;
  double r1 = 0;
  double r2 = 0;

  [[nodiscard]] Polynomial expand() const {
    const double s = a_o * b_o;
    return Polynomial{s * r1 * r2, -s * (r1 + r2), s};
  }
};

/// Canonical quadratic of the double-delta well: e^{-2dR} = (d - q)(d - lambda q)/(lambda q^2).
/// Roots are {q, lambda q}; the scales are {1/q, 1/(lambda q)}.
FactoredQuadratic from_quantum(double lambda, double q);

/// Numerator/denominator pair. Never reduced: the raw denominator carries
/// the pole information the solver needs.
struct RationalFunction {
  Polynomial numerator;
  Polynomial denominator = Polynomial{1.0};

  template <class T>
  T operator()(const T& x) const {
    return numerator(x) / denominator(x);
  }
};

/// Parses "c0,c1,c2" (ascending coefficients), e.g. "1,-3,1" = 1 - 3x + x^2.
Polynomial parse_polynomial(std::string_view text);

std::string to_string(const Polynomial& p);

}  // namespace omega
