#pragma once

// Lambert W on every branch. Real branches 0 and -1 have a dedicated real
// evaluator; every other (z, k) pair goes through complex Halley iteration.
//
// Branch cuts follow the usual convention: (-inf, -1/e] for k = 0, and
// (-inf, 0) for k != 0. A real argument lying on a cut is evaluated as the
// limit from above (Im z -> 0+).

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "omega/errors.hpp"

namespace omega {

/// Integer label of a W branch: 0 principal, -1 lower real branch, any other
/// integer a complex branch.
struct BranchIndex {
  int value = 0;

  constexpr BranchIndex() = default;
  constexpr explicit BranchIndex(int k) : value(k) {}

  /// True for the two branches that are real-valued somewhere on the real line.
  [[nodiscard]] constexpr bool is_real() const { return value == 0 || value == -1; }

  friend constexpr auto operator<=>(BranchIndex, BranchIndex) = default;
};

inline constexpr BranchIndex kPrincipalBranch{0};
inline constexpr BranchIndex kLowerBranch{-1};

/// A complex argument tagged with the branch W should be taken on.
struct BranchedPoint {
  std::complex<double> z;
  BranchIndex branch{};
};

namespace detail {

inline constexpr int kLambertMaxIterations = 50;

template <std::floating_point Real>
struct InverseE {
  static constexpr Real hi = static_cast<Real>(0.367879441171442321595523770161460867L);
  static constexpr Real lo =
      std::same_as<Real, double>
          ? static_cast<Real>(-1.2428753672788363e-17)
          : static_cast<Real>(0.367879441171442321595523770161460867L -
                              static_cast<long double>(hi));
};

// z + 1/e with the constant carried in two pieces, so that arguments a few
// ulps from the branch point keep their distance to it.
template <class T>
auto branch_point_offset(const T& z) {
  using Real = decltype(std::real(z));
  return (z + InverseE<Real>::hi) + InverseE<Real>::lo;
}

// Series of W around -1/e in p = +-sqrt(2(e z + 1)). The sign of p selects
// the branch meeting at the branch point.
template <class T>
T branch_point_series(const T& p) {
  using Real = decltype(std::real(p));
  constexpr Real c[] = {
      Real(-1),
      Real(1),
      Real(-1) / 3,
      Real(11) / 72,
      Real(-43) / 540,
      Real(769) / 17280,
      Real(-221) / 8505,
      Real(680863) / 43545600,
      Real(-1963) / 204120,
      Real(226287557) / 37623398400,
  };
  T acc = T(c[9]);
  for (int i = 8; i >= 0; --i) acc = acc * p + c[i];
  return acc;
}

template <std::floating_point Real>
bool in_real_domain(Real x, BranchIndex branch) {
  constexpr Real tol = 4 * std::numeric_limits<Real>::epsilon() * InverseE<Real>::hi;
  if (!branch.is_real() || !(branch_point_offset(x) >= -tol)) return false;
  return branch.value == 0 || x < 0;
}

template <std::floating_point Real>
Real real_initial_guess(Real x, BranchIndex branch) {
  if (x < Real(-0.25)) {
    const Real p = std::sqrt(2 * std::numbers::e_v<Real> * branch_point_offset(x));
    return branch_point_series(branch.value == 0 ? p : -p);
  }
  if (branch.value == 0) {
    // Winitzki's uniform approximation for W0.
    const Real l = std::log1p(x);
    return l * (1 - std::log1p(l) / (2 + l));
  }
  const Real l1 = std::log(-x);
  const Real l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

template <std::floating_point Real>
Real halley_real(Real x, Real w) {
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  Real best = w;
  Real best_residual = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < kLambertMaxIterations; ++i) {
    Real step;
    Real relative_residual;
    if (w > 0) {
      // e^{-w}(w e^w - x): avoids overflow of e^w for large x.
      const Real f = w - x * std::exp(-w);
      relative_residual = std::abs(f) / w;
      step = f / (w + 1 - (w + 2) * f / (2 * w + 2));
    } else {
      const Real ew = std::exp(w);
      const Real f = w * ew - x;
      const Real wp1 = w + 1;
      relative_residual = x == 0 ? std::abs(f) : std::abs(f / x);
      if (wp1 == 0) return w;
      step = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
    }
    if (relative_residual < best_residual) {
      best_residual = relative_residual;
      best = w;
    }
    if (relative_residual <= 2 * eps) return w;
    const Real next = w - step;
    if (!std::isfinite(next)) break;
    if (std::abs(next - w) <= 4 * eps * std::abs(next)) return next;
    w = next;
  }
  // Near the branch point the step is dominated by rounding noise while the
  // residual is already at roundoff level.
  if (best_residual <= 16 * eps) return best;
  throw ConvergenceError("lambert_w: real Halley iteration did not converge");
}

template <std::floating_point Real>
std::complex<Real> complex_initial_guess(std::complex<Real> z, int k) {
  using C = std::complex<Real>;
  const C offset = branch_point_offset(z);
  const bool near_branch_point = std::abs(offset) < Real(0.3);
  const C p = std::sqrt(2 * std::numbers::e_v<Real> * offset);
  if (k == 0) {
    if (near_branch_point) return branch_point_series(p);
    if (std::abs(z) <= Real(2) && std::abs(Real(1) + z) > Real(0.25)) {
      const C l = std::log(Real(1) + z);
      return l * (Real(1) - std::log(Real(1) + l) / (Real(2) + l));
    }
  } else if (near_branch_point && ((k == -1 && z.imag() >= 0) || (k == 1 && z.imag() < 0))) {
    return branch_point_series(C(-p));
  }
  const C l1 = std::log(z) + C(0, 2 * std::numbers::pi_v<Real> * k);
  const C l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

template <std::floating_point Real>
std::complex<Real> halley_complex(std::complex<Real> z, std::complex<Real> w) {
  using C = std::complex<Real>;
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  const Real z_abs = std::abs(z);
  C best = w;
  Real best_residual = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < kLambertMaxIterations; ++i) {
    C step;
    Real relative_residual;
    if (w.real() >= 0) {
      const C f = w - z * std::exp(-w);
      relative_residual = std::abs(f) / std::max(std::abs(w), std::numeric_limits<Real>::min());
      step = f / (w + Real(1) - (w + Real(2)) * f / (Real(2) * w + Real(2)));
    } else {
      const C ew = std::exp(w);
      const C f = w * ew - z;
      const C wp1 = w + Real(1);
      relative_residual = std::abs(f) / z_abs;
      if (wp1 == C(0)) return w;
      step = f / (ew * wp1 - (w + Real(2)) * f / (Real(2) * wp1));
    }
    if (relative_residual < best_residual) {
      best_residual = relative_residual;
      best = w;
    }
    if (relative_residual <= 2 * eps) return w;
    const C next = w - step;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(next - w) <= 4 * eps * std::abs(next)) return next;
    w = next;
  }
  if (best_residual <= 16 * eps) return best;
  throw ConvergenceError("lambert_w: complex Halley iteration did not converge");
}

}  // namespace detail

/// w e^w; the residual helper used by every certificate in the library.
template <class T>
T w_times_exp_w(const T& w) {
  using std::exp;
  return w * exp(w);
}

/// Real W on branch 0 (x >= -1/e) or branch -1 (-1/e <= x < 0).
template <std::floating_point Real>
Real lambert_w(Real x, BranchIndex branch = kPrincipalBranch) {
  if (std::isnan(x)) throw DomainError("lambert_w: argument is NaN");
  if (!branch.is_real()) {
    throw DomainError("lambert_w: a real result requires branch 0 or -1, got " +
                      std::to_string(branch.value));
  }
  if (!detail::in_real_domain(x, branch)) {
    throw DomainError(branch.value == 0
                          ? "lambert_w: branch 0 requires x >= -1/e"
                          : "lambert_w: branch -1 requires -1/e <= x < 0");
  }
  if (detail::branch_point_offset(x) <= 0) return Real(-1);
  if (branch.value == 0) {
    if (x == 0) return Real(0);
    if (std::isinf(x)) return x;
    // W(x) = x - x^2 + O(x^3): exact in floating point at this size.
    if (std::abs(x) < std::numeric_limits<Real>::min() * Real(1e8)) return x * (1 - x);
  }
  return detail::halley_real(x, detail::real_initial_guess(x, branch));
}

/// W_k(z) for any integer branch k and complex z.
template <std::floating_point Real>
std::complex<Real> lambert_w(std::complex<Real> z, BranchIndex branch = kPrincipalBranch) {
  using C = std::complex<Real>;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("lambert_w: argument is not finite");
  }
  if (z.imag() == 0 && detail::in_real_domain(z.real(), branch)) {
    return C(lambert_w(z.real(), branch), 0);
  }
  if (z == C(0)) {
    if (branch.value == 0) return C(0);
    throw DomainError("lambert_w: W_k(0) is singular for k != 0");
  }
  return detail::halley_complex(z, detail::complex_initial_guess(z, branch.value));
}

inline std::complex<double> lambert_w(const BranchedPoint& point) {
  return lambert_w(point.z, point.branch);
}

}  // namespace omega
