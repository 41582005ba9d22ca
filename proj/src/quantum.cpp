#include "omega/quantum.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "omega/poly.hpp"

namespace omega {

void WellSpec::validate() const {
  if (!(q > 0) || !std::isfinite(q)) throw DomainError("well: q must be positive");
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("well: R must be positive");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("well: lambda must be positive");
}

double d_equal_charge(double q, double R, int parity, BranchIndex branch) {
  if (!(q > 0) || !(R > 0)) throw DomainError("d_equal_charge: q and R must be positive");
  if (parity != 1 && parity != -1) throw DomainError("d_equal_charge: parity must be +1 or -1");
  return q + lambert_w(parity * q * R * std::exp(-q * R), branch) / R;
}

double equal_charge_residual(double q, double R, int parity, double d) {
  return std::abs(d - q * (1 + parity * std::exp(-d * R)));
}

double secular_determinant(const WellSpec& spec, double d) {
  const double off = std::exp(-d * spec.R);
  Eigen::Matrix2d m;
  m << spec.q - d, spec.q * off, spec.q * spec.lambda * off, spec.q * spec.lambda - d;
  return m.determinant();
}

double pseudo_quadratic_residual(const WellSpec& spec, double d) {
  const double q = spec.q, l = spec.lambda;
  const double disc = q * q * (1 + l) * (1 + l) - 4 * l * q * q * (1 - std::exp(-2 * d * spec.R));
  const double root = std::sqrt(std::max(disc, 0.0));
  const double mid = 0.5 * q * (1 + l);
  return std::min(std::abs(d - (mid + 0.5 * root)), std::abs(d - (mid - 0.5 * root)));
}

TranscendentalEquation canonical_equation(const WellSpec& spec) {
  spec.validate();
  TranscendentalEquation eq;
  eq.sign = -1;
  eq.k = 2 * spec.R;
  eq.P = from_quantum(spec.lambda, spec.q).expand();
  eq.Q = Polynomial{1.0};
  return eq;
}

std::vector<BoundState> d_general(const WellSpec& spec, const SolverConfig& config) {
  spec.validate();
  // Solve in u = d/q, where the equation is the q = 1 canonical form with R' = qR.
  const WellSpec unit{1.0, spec.lambda, spec.q * spec.R};
  const double upper = (1 + spec.lambda) + 1 / spec.q;
  const auto roots = solve_all(canonical_equation(unit), Interval{-0.05, upper}, config);
  std::vector<BoundState> states;
  for (const auto& r : roots) {
    const bool at_zero = std::abs(r.x) <= 1e-9;
    if (r.x < 0 && !at_zero) continue;
    BoundState s;
    s.d = at_zero ? 0.0 : r.x * spec.q;
    s.certificate = r;
    s.certificate.x = s.d;
    s.certificate.residual = residual(canonical_equation(spec), s.d);
    s.energy = energy(s.d);
    s.determinant_residual = secular_determinant(spec, s.d);
    s.pseudo_quadratic_residual = pseudo_quadratic_residual(spec, s.d);
    s.at_continuum = at_zero;
    if (at_zero) s.certificate.flags.push_back("at_continuum");
    states.push_back(s);
  }
  return states;
}

}  // namespace omega
