#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/errors.hpp"
#include "omega/poly.hpp"

namespace omega {

/// e^{sign k x} = P(x) / Q(x), handled through the pole-cleared residual
/// F(x) = e^{sign k x} Q(x) - P(x).
struct TranscendentalEquation {
  int sign = -1;
  double k = 1;
  Polynomial P;
  Polynomial Q = Polynomial{1.0};

  void validate() const;

  /// F, F', F'' at x and the certificate scale max(1, |e^{skx} Q|, |P|).
  struct Sample {
    double value;
    double slope;
    double curvature;
    double scale;
    double slope_scale;
  };
  [[nodiscard]] Sample sample(double x) const;
};

struct Interval {
  double lo;
  double hi;
};

struct RootCertificate {
  double x = 0;
  double residual = 0;
  double scale = 1;
  int multiplicity_hint = 1;
  Interval bracket{0, 0};
  std::string path;                 // how the root was obtained
  std::vector<std::string> flags;   // e.g. "at_continuum", "trivial"

  [[nodiscard]] bool has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
  }
};

struct SolverConfig {
  SolverConfig() = default;  // non-aggregate: {lo, hi} binds to Interval

  double certify_tol = 1e-10;
  double double_root_tol = 1e-7;
  double pole_tol = 1e-9;
  double points_per_unit = 64;   // scaled by max(1, k)
  int min_cells = 1024;
  int max_iterations = 100;
};

/// |e^{skx} Q(x) - P(x)|
double residual(const TranscendentalEquation& eq, double x);

/// [min real root of P, Q - 5/k, max + 5/k]; [-5/k, 5/k] when neither has one.
Interval default_interval(const TranscendentalEquation& eq);

/// All real roots of eq on the interval, ascending.
std::vector<RootCertificate> solve_all(const TranscendentalEquation& eq, Interval interval,
                                       const SolverConfig& config = {});
std::vector<RootCertificate> solve_all(const TranscendentalEquation& eq, const SolverConfig& config = {});

namespace detail {

// Safeguarded Newton on a bracket with f(a) f(b) < 0. g returns (f, f').
template <class G>
double polish_bracket(G&& g, double a, double b, double fa, int max_iterations) {
  if (fa > 0) std::swap(a, b);  // now f(a) < 0 < f(b)
  double x = 0.5 * (a + b);
  double dx_old = std::abs(b - a);
  double dx = dx_old;
  for (int i = 0; i < max_iterations; ++i) {
    const auto [f, df] = g(x);
    if (f == 0) return x;
    if (f < 0) a = x; else b = x;
    const bool newton_ok = df != 0 && std::abs(2 * f) < std::abs(dx_old * df) &&
                           ((x - f / df) - a) * ((x - f / df) - b) < 0;
    dx_old = dx;
    if (newton_ok) {
      dx = f / df;
    } else {
      dx = x - 0.5 * (a + b);
    }
    const double next = x - dx;
    if (std::abs(dx) <= 2 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
        std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  throw NoConvergenceError("root polish hit the iteration cap on [" + std::to_string(std::min(a, b)) + ", " +
                           std::to_string(std::max(a, b)) + "]");
}

}  // namespace detail

/// Residual-certified root scan of a smooth real function.
///
/// `sample(x)` returns an object with fields value, slope, curvature, scale
/// and slope_scale. Sign changes of f are polished directly; sign changes
/// of f' whose extremum touches zero within tolerance are reported as
/// double roots. `breakpoints` are forced onto the grid (pole locations).
template <class Sampler>
std::vector<RootCertificate> scan_roots(Sampler&& sample, Interval interval, const SolverConfig& config,
                                        int cells, const std::vector<double>& breakpoints = {}) {
  if (!(std::isfinite(interval.lo) && std::isfinite(interval.hi) && interval.lo < interval.hi)) {
    throw DomainError("solver: interval must be finite with lo < hi");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(cells) + breakpoints.size() + 1);
  for (int i = 0; i <= cells; ++i) {
    grid.push_back(interval.lo + (interval.hi - interval.lo) * static_cast<double>(i) / cells);
  }
  for (const double b : breakpoints) {
    if (b > interval.lo && b < interval.hi) grid.push_back(b);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  using SampleT = decltype(sample(0.0));
  std::vector<SampleT> s;
  s.reserve(grid.size());
  for (const double x : grid) s.push_back(sample(x));

  std::vector<RootCertificate> roots;
  auto certify = [&](double x, Interval bracket, std::string path) -> std::optional<RootCertificate> {
    const SampleT at = sample(x);
    RootCertificate c;
    c.x = x;
    c.residual = std::abs(at.value);
    c.scale = at.scale;
    c.bracket = bracket;
    c.path = std::move(path);
    if (c.residual > config.certify_tol * at.scale) return std::nullopt;
    c.multiplicity_hint = std::abs(at.slope) < config.double_root_tol * at.slope_scale ? 2 : 1;
    return c;
  };
  auto value_slope = [&](double x) {
    const SampleT at = sample(x);
    return std::pair{at.value, at.slope};
  };
  auto slope_curvature = [&](double x) {
    const SampleT at = sample(x);
    return std::pair{at.slope, at.curvature};
  };
  auto polish_sign_change = [&](double a, double b, double fa, const char* path) {
    const double x = detail::polish_bracket(value_slope, a, b, fa, config.max_iterations);
    auto c = certify(x, {a, b}, path);
    if (!c) {
      throw NoConvergenceError("solver: bracket [" + std::to_string(a) + ", " + std::to_string(b) +
                               "] polished to an uncertified point");
    }
    roots.push_back(*c);
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (s[i].value == 0) {
      if (auto c = certify(grid[i], {grid[i], grid[i]}, "grid-node")) roots.push_back(*c);
    }
    if (i + 1 == grid.size()) break;
    const double a = grid[i], b = grid[i + 1];
    const double fa = s[i].value, fb = s[i + 1].value;
    if (fa != 0 && fb != 0 && (fa < 0) != (fb < 0)) {
      polish_sign_change(a, b, fa, "bracket");
      continue;
    }
    if (fa == 0 || fb == 0) continue;
    // No sign change: look for an interior extremum of f that reaches zero.
    const double da = s[i].slope, db = s[i + 1].slope;
    if (da == 0 || db == 0 || (da < 0) == (db < 0)) continue;
    double xc;
    try {
      xc = detail::polish_bracket(slope_curvature, a, b, da, config.max_iterations);
    } catch (const NoConvergenceError&) {
      continue;
    }
    const SampleT at = sample(xc);
    if (at.value != 0 && (at.value < 0) != (fa < 0)) {
      // Two simple roots inside one cell.
      polish_sign_change(a, xc, fa, "bracket");
      polish_sign_change(xc, b, at.value, "bracket");
    } else if (auto c = certify(xc, {a, b}, "tangent")) {
      c->multiplicity_hint = 2;
      roots.push_back(*c);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  std::vector<RootCertificate> merged;
  for (auto& r : roots) {
    if (merged.empty()) {
      merged.push_back(std::move(r));
      continue;
    }
    auto& keep = merged.back();
    const double gap = std::abs(r.x - keep.x);
    const bool coincident = gap <= 1e-9 * std::max(1.0, std::abs(r.x));
    // Rounding noise splits a double root into two nearby crossings; the
    // residual stays certified across the whole gap.
    bool split_double = false;
    if (!coincident && gap <= 1e-6 * std::max(1.0, std::abs(r.x))) {
      const SampleT mid = sample(0.5 * (r.x + keep.x));
      split_double = std::abs(mid.value) <= config.certify_tol * mid.scale;
    }
    if (coincident || split_double) {
      keep.multiplicity_hint = std::max({keep.multiplicity_hint, r.multiplicity_hint, split_double ? 2 : 1});
      if (r.residual < keep.residual) {
        keep.x = r.x;
        keep.residual = r.residual;
      }
      continue;
    }
    merged.push_back(std::move(r));
  }
  return merged;
}

}  // namespace omega
