#include "omega/gravity.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "omega/poly.hpp"

namespace omega {

namespace {

double scaled(double value, std::initializer_list<double> terms) {
  double s = 1;
  for (const double t : terms) s = std::max(s, std::abs(t));
  return std::abs(value) / s;
}

// P(V) e^{rate V}
struct ExpTerm {
  Polynomial P;
  double rate;
};

struct ExpPolySum {
  Polynomial cubic;            // the part without an exponential
  std::vector<ExpTerm> terms;  // subtracted

  TranscendentalEquation::Sample sample(double V) const {
    TranscendentalEquation::Sample s{};
    const Polynomial d1 = cubic.derivative(), d2 = d1.derivative();
    s.value = cubic(V);
    s.slope = d1(V);
    s.curvature = d2(V);
    s.scale = std::max(1.0, std::abs(s.value));
    s.slope_scale = std::max(1.0, std::abs(s.slope));
    for (const auto& t : terms) {
      const Polynomial p1 = t.P.derivative(), p2 = p1.derivative();
      const double e = std::exp(t.rate * V);
      const double p = t.P(V), dp = p1(V), ddp = p2(V);
      const double v = p * e;
      const double dv = (dp + t.rate * p) * e;
      s.value -= v;
      s.slope -= dv;
      s.curvature -= (ddp + 2 * t.rate * dp + t.rate * t.rate * p) * e;
      s.scale = std::max(s.scale, std::abs(v));
      s.slope_scale = std::max(s.slope_scale, std::abs(dv));
    }
    return s;
  }
};

constexpr double kThird = std::numbers::pi / 3;

double snapped_abs_sin(double theta) {
  const double s = std::abs(std::sin(theta));
  return s < 1e-14 ? 0.0 : s;
}

ExpPolySum three_body_form(const ThreeBodySpec& spec) {
  const auto [s1, s2, sq] = three_body_signs(spec.q);
  const double sigma = spec.convention == ExponentConvention::Decaying ? -1.0 : 1.0;
  const double kr = sigma * spec.K * spec.R;
  const double m1 = spec.m1, m2 = spec.m2, m3 = spec.m3;
  ExpPolySum f;
  f.cubic = Polynomial{-m1, 1.0} * Polynomial{-m2, 1.0} * Polynomial{-m3, 1.0};
  f.terms.push_back({m1 * m2 * Polynomial{-s1 * s2 * m3, 1.0}, kr * snapped_abs_sin(spec.q)});
  f.terms.push_back({m1 * m3 * Polynomial{sq * s2 * m2, 1.0}, kr * snapped_abs_sin(spec.q + kThird)});
  f.terms.push_back({m2 * m3 * Polynomial{-sq * s1 * m1, 1.0}, kr * snapped_abs_sin(spec.q - kThird)});
  return f;
}

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

// ---- two bodies ----

TwoBodyMap two_body_roundtrip(double x, double a) {
  const double s = x + a;
  if (s == 0) throw DomainError("two-body map: x + a must be nonzero");
  return TwoBodyMap{x, a, 2 * x / s - 1, -s};
}

double two_body_residual(double x, double a, double y) {
  const double t = (x * x - a * a) * std::exp(2 * x - 2 * y);
  return scaled(y * y - a * a - t, {y * y, a * a, t});
}

double canonical_residual(double lambda, double R, double d) {
  const double lhs = std::exp(-2 * d * R);
  const double rhs = (1 - d) * (lambda - d) / lambda;
  return scaled(lhs - rhs, {lhs, rhs});
}

std::vector<TwoBodySolution> two_body_solve(double x, double a, const SolverConfig& config) {
  const TwoBodyMap map = two_body_roundtrip(x, a);
  if (!map.physical()) throw DomainError("two-body map: requires x + a < 0 so that R > 0");
  if (map.lambda == 0) throw DomainError("two-body map: lambda vanishes (x = a)");
  TranscendentalEquation eq;
  eq.sign = -1;
  eq.k = 2 * map.R;
  eq.P = (1 / map.lambda) * (Polynomial{-1.0, 1.0} * Polynomial{-map.lambda, 1.0});
  std::vector<TwoBodySolution> out;
  for (const auto& r : solve_all(eq, config)) {
    const double y = map.y_of_d(r.x);
    out.push_back({y, r.x, two_body_residual(x, a, y), canonical_residual(map.lambda, map.R, r.x)});
  }
  return out;
}

// ---- three bodies ----

void ThreeBodySpec::validate() const {
  require_positive(m1, "m1");
  require_positive(m2, "m2");
  require_positive(m3, "m3");
  require_positive(K, "K");
  require_positive(R, "R");
  if (!std::isfinite(q)) throw DomainError("q must be finite");
}

int regime_sign(double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-14) return std::cos(theta) > 0 ? 1 : -1;
  return s > 0 ? 1 : -1;
}

ThreeBodySigns three_body_signs(double q) {
  return {regime_sign(q + kThird), -regime_sign(q - kThird), regime_sign(q)};
}

double three_body_residual(const ThreeBodySpec& spec, double V) {
  spec.validate();
  return three_body_form(spec).sample(V).value;
}

Interval three_body_interval(const ThreeBodySpec& spec) {
  const double half = spec.total_mass() * (1 + 4 / (spec.K * spec.R));
  return {-half, half};
}

std::vector<RootCertificate> three_body_solve(const ThreeBodySpec& spec, const SolverConfig& config) {
  spec.validate();
  return three_body_solve(spec, three_body_interval(spec), config);
}

std::vector<RootCertificate> three_body_solve(const ThreeBodySpec& spec, Interval interval,
                                              const SolverConfig& config) {
  spec.validate();
  const ExpPolySum form = three_body_form(spec);
  const double width = interval.hi - interval.lo;
  const double cells = std::ceil(width * config.points_per_unit * std::max(1.0, spec.K * spec.R));
  const int n = static_cast<int>(std::clamp(cells, static_cast<double>(config.min_cells), 2e6));
  auto roots = scan_roots([&form](double V) { return form.sample(V); }, interval, config, n);
  const auto at_zero = form.sample(0);
  const bool zero_is_root = std::abs(at_zero.value) <= config.certify_tol * at_zero.scale;
  for (auto& r : roots) {
    if (zero_is_root && std::abs(r.x) <= 1e-6) {
      r.x = 0;
      r.residual = std::abs(at_zero.value);
      r.flags.push_back("trivial");
    }
  }
  return roots;
}

TranscendentalEquation three_body_special_q0(double m1, double m2, double m3, double R_t) {
  return special_angle_equation(SpecialAngle::Zero, m1, m2, m3, R_t);
}

double angle_value(SpecialAngle angle) {
  switch (angle) {
    case SpecialAngle::Zero: return 0;
    case SpecialAngle::PlusPiThird: return kThird;
    case SpecialAngle::MinusPiThird: return -kThird;
    case SpecialAngle::TwoPiThirds: return 2 * kThird;
  }
  return 0;
}

int isolated_mass(SpecialAngle angle) {
  switch (angle) {
    case SpecialAngle::Zero: return 3;
    case SpecialAngle::PlusPiThird: return 1;
    case SpecialAngle::MinusPiThird:
    case SpecialAngle::TwoPiThirds: return 2;
  }
  return 3;
}

TranscendentalEquation special_angle_equation(SpecialAngle angle, double m1, double m2, double m3, double R_t) {
  require_positive(m1, "m1");
  require_positive(m2, "m2");
  require_positive(m3, "m3");
  require_positive(R_t, "R_t");
  const std::array<double, 3> m{m1, m2, m3};
  const int i = isolated_mass(angle) - 1;
  const double mi = m[static_cast<std::size_t>(i)];
  const double Mi = m1 + m2 + m3 - mi;
  TranscendentalEquation eq;
  eq.sign = -1;
  eq.k = 2 * R_t;
  eq.P = (1 / (mi * Mi)) * (Polynomial{-mi, 1.0} * Polynomial{-Mi, 1.0});
  return eq;
}

std::vector<ClosedFormRoot> double_root_closed_forms(double m, double R_t) {
  require_positive(m, "m");
  require_positive(R_t, "R_t");
  const double t = R_t * m * std::exp(-R_t * m);
  std::vector<ClosedFormRoot> out;
  out.push_back({+1, kPrincipalBranch, m + lambert_w(t, kPrincipalBranch) / R_t, true});
  for (const BranchIndex k : {kPrincipalBranch, kLowerBranch}) {
    out.push_back({-1, k, m + lambert_w(-t, k) / R_t, true});
  }
  return out;
}

std::vector<ClosedFormRoot> double_root_printed_forms(double m, double R_t) {
  require_positive(m, "m");
  require_positive(R_t, "R_t");
  const double t = R_t * m * std::exp(R_t * m);
  std::vector<ClosedFormRoot> out;
  for (const int sign : {+1, -1}) {
    for (const BranchIndex k : {kPrincipalBranch, kLowerBranch}) {
      const std::complex<double> w = lambert_w(std::complex<double>(sign * t, 0), k);
      const std::complex<double> V = m - w / R_t;
      out.push_back({sign, k, V, V.imag() == 0});
    }
  }
  return out;
}

PiSixthFactors pi_sixth_factors(double m, double c, ExponentConvention convention) {
  require_positive(m, "m");
  require_positive(c, "c");
  const int sign = convention == ExponentConvention::Decaying ? -1 : 1;
  PiSixthFactors f;
  f.first.sign = f.second.sign = sign;
  f.first.k = f.second.k = c;
  f.first.P = Polynomial{1.0, -1 / m};
  f.second.P = Polynomial{-m, 1.0} * Polynomial{-m, 1.0};
  f.second.Q = Polynomial{m * m, m};
  return f;
}

std::vector<ClosedFormRoot> pi_sixth_closed_forms(double m, double c) {
  require_positive(m, "m");
  require_positive(c, "c");
  const double t = -m * c * std::exp(-m * c);
  std::vector<ClosedFormRoot> out;
  for (const BranchIndex k : {kPrincipalBranch, kLowerBranch}) {
    out.push_back({-1, k, m + lambert_w(t, k) / c, true});
  }
  return out;
}

double pi_sixth_printed_form(double m, double c) {
  require_positive(m, "m");
  require_positive(c, "c");
  const double mc = m * c;
  return m * (1 - lambert_w(mc * std::exp(mc), kPrincipalBranch) / mc);
}

namespace {

Polynomial taylor_exp(double rate, int order) {
  Polynomial::Coefficients c(order + 1);
  double term = 1;
  for (int j = 0; j <= order; ++j) {
    c(j) = term;
    term *= rate / (j + 1);
  }
  return Polynomial(std::move(c));
}

}  // namespace

TranscendentalEquation three_body_rational_q(const ThreeBodySpec& spec, TruncationOrder order) {
  spec.validate();
  if (spec.convention != ExponentConvention::Decaying) {
    throw DomainError("rational approximation: defined for the decaying exponent convention");
  }
  if (!(spec.q > 0 && spec.q < kThird)) throw DomainError("rational approximation: requires 0 < q < pi/3");
  if (order.numerator < 1 || order.denominator < 1) {
    throw DomainError("rational approximation: truncation orders must be at least 1");
  }
  const double c = spec.K * spec.R / 2;
  const double m1 = spec.m1, m2 = spec.m2, m3 = spec.m3;
  const Polynomial fn = taylor_exp(c * std::sin(spec.q), order.numerator);
  const Polynomial fd = taylor_exp(c * std::sin(spec.q), order.denominator);
  const Polynomial N = Polynomial{-m3, 1.0} * (fn * fn * Polynomial{-m1, 1.0} * Polynomial{-m2, 1.0} -
                                               Polynomial{m1 * m2});
  const Polynomial D = m3 * (fd * (m1 * Polynomial{m2, 1.0} + m2 * (Polynomial{-m1, 1.0} * fd * fd)));
  TranscendentalEquation eq;
  eq.sign = -1;
  eq.k = c * std::sqrt(3.0) * std::cos(spec.q);
  // N(0) = D(0) = 0 because f(0) = 1.
  eq.P = N.deflate(0.0);
  eq.Q = D.deflate(0.0);
  return eq;
}

RationalApproximation three_body_rational_q_compare(const ThreeBodySpec& spec, TruncationOrder order,
                                                    const SolverConfig& config) {
  RationalApproximation out;
  out.equation = three_body_rational_q(spec, order);
  const Interval interval = three_body_interval(spec);
  out.exact_roots = three_body_solve(spec, interval, config);
  out.roots = solve_all(out.equation, interval, config);
  out.max_disagreement = 0;
  bool unmatched = false;
  for (const auto& exact : out.exact_roots) {
    if (exact.has_flag("trivial")) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : out.roots) best = std::min(best, std::abs(r.x - exact.x));
    if (!std::isfinite(best)) unmatched = true;
    else out.max_disagreement = std::max(out.max_disagreement, best);
  }
  out.truncation_warning = unmatched || out.max_disagreement > 1e-4;
  return out;
}

}  // namespace omega
