#include "omega/solver.hpp"

#include <cmath>
#include <limits>

namespace omega {

void TranscendentalEquation::validate() const {
  if (sign != 1 && sign != -1) throw DomainError("equation: sign must be +1 or -1");
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("equation: k must be positive and finite");
  if (Q.is_zero()) throw DomainError("equation: Q must not be the zero polynomial");
}

TranscendentalEquation::Sample TranscendentalEquation::sample(double x) const {
  const double a = sign * k;
  const double e = std::exp(a * x);
  const Polynomial dQ = Q.derivative(), d2Q = dQ.derivative();
  const Polynomial dP = P.derivative(), d2P = dP.derivative();
  const double q = Q(x), q1 = dQ(x), q2 = d2Q(x);
  const double p = P(x), p1 = dP(x), p2 = d2P(x);
  Sample s;
  s.value = e * q - p;
  s.slope = e * (a * q + q1) - p1;
  s.curvature = e * (a * a * q + 2 * a * q1 + q2) - p2;
  s.scale = std::max({1.0, std::abs(e * q), std::abs(p)});
  s.slope_scale = std::max({1.0, std::abs(e * (a * q + q1)), std::abs(p1)});
  return s;
}

double residual(const TranscendentalEquation& eq, double x) {
  return std::abs(std::exp(eq.sign * eq.k * x) * eq.Q(x) - eq.P(x));
}

Interval default_interval(const TranscendentalEquation& eq) {
  eq.validate();
  std::vector<double> roots = eq.P.real_roots();
  const std::vector<double> q_roots = eq.Q.real_roots();
  roots.insert(roots.end(), q_roots.begin(), q_roots.end());
  const double margin = 5.0 / eq.k;
  if (roots.empty()) return {-margin, margin};
  const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
  return {*lo - margin, *hi + margin};
}

std::vector<RootCertificate> solve_all(const TranscendentalEquation& eq, Interval interval,
                                       const SolverConfig& config) {
  eq.validate();
  const double width = interval.hi - interval.lo;
  if (!(width > 0) || !std::isfinite(width)) throw DomainError("solve_all: interval must be finite with lo < hi");
  const double cells = std::ceil(width * config.points_per_unit * std::max(1.0, eq.k));
  const int n = static_cast<int>(std::clamp(cells, static_cast<double>(config.min_cells), 2e6));

  const std::vector<double> poles = eq.Q.real_roots();
  auto roots = scan_roots([&eq](double x) { return eq.sample(x); }, interval, config, n, poles);
  for (const auto& r : roots) {
    for (const double pole : poles) {
      if (std::abs(r.x - pole) <= config.pole_tol * std::max(1.0, std::abs(pole))) {
        throw PoleCollisionError("solve_all: root x = " + std::to_string(r.x) +
                                 " coincides with a zero of Q");
      }
    }
  }
  return roots;
}

std::vector<RootCertificate> solve_all(const TranscendentalEquation& eq, const SolverConfig& config) {
  return solve_all(eq, default_interval(eq), config);
}

}  // namespace omega
