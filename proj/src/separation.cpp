#include "omega/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "omega/identities.hpp"
#include "omega/tolerances.hpp"

namespace omega {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double scaled_difference(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

void check_epsilon(double epsilon, EpsilonDomain domain, double margin) {
  if (!std::isfinite(epsilon)) throw DomainError("separation: epsilon must be finite");
  if (domain == EpsilonDomain::Open && !(epsilon > -1 && epsilon < 1)) {
    throw DomainError("separation: epsilon must lie in the open interval (-1, 1)");
  }
  if (domain == EpsilonDomain::Extended && !(std::abs(epsilon) <= 1 + margin)) {
    throw DomainError("separation: epsilon outside the extended range");
  }
}

// r + c e^{-W(y R c)}, the stable form of r + W(z)/(yR) with z = yRc.
// At y = 0 on branch 0 the quotient W(z)/z tends to 1.
double factor_root(double r, double c, double y, double R, BranchIndex branch, EpsilonDomain domain,
                   const char* which) {
  if (!std::isfinite(c)) throw DomainError(std::string(which) + ": exponential factor overflows");
  if (y == 0) {
    if (domain == EpsilonDomain::Open) throw DegenerateError(std::string(which) + ": 1 +- epsilon vanishes");
    if (branch.value != 0) throw DomainError(std::string(which) + ": branch -1 is singular at 1 +- epsilon = 0");
    return r + c;
  }
  const double z = y * R * c;
  const double w = lambert_w(z, branch);
  return r + c * std::exp(-w);
}

double first_factor_scale(const SeparationProblem& p, double y) { return std::exp(-p.r1 * y * p.R) / p.a_o; }

double second_factor_scale(const SeparationProblem& p, double y2, SeparationKind kind) {
  return kind == SeparationKind::Quadratic ? std::exp(-p.r2 * y2 * p.R) / p.b_o : std::exp(p.r2 * y2 * p.R) / p.b_o;
}

double safe_residual(const SeparationProblem& p, double epsilon, const SeparationOptions& o) {
  try {
    const double r = separation_residual(p, epsilon, o);
    return std::isfinite(r) ? r : std::numeric_limits<double>::quiet_NaN();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double bisect_residual(const SeparationProblem& p, const SeparationOptions& o, double a, double b, double fa) {
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b || std::abs(b - a) <= 2 * kEps * std::max(1.0, std::abs(m))) return m;
    const double fm = safe_residual(p, m, o);
    if (fm == 0) return m;
    if (std::isnan(fm)) break;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::optional<SeparationSolution> build_solution(const SeparationProblem& p, const SeparationOptions& o,
                                                 double epsilon) {
  SeparationSolution s;
  s.epsilon = epsilon;
  s.branch1 = o.branches.first;
  s.branch2 = o.branches.second;
  const double y1 = 1 + epsilon, y2 = 1 - epsilon;
  try {
    s.x1 = x1_of_epsilon(p, epsilon, o.branches.first, o.domain);
    s.x2 = x2_of_epsilon(p, epsilon, o.branches.second, o.kind, o.domain);
  } catch (const Error&) {
    return std::nullopt;
  }
  s.z1 = z1_of_epsilon(p, epsilon);
  s.z2 = z2_of_epsilon(p, epsilon, o.kind);
  const double w1 = y1 == 0 ? 0.0 : lambert_w(s.z1.real(), o.branches.first);
  const double w2 = y2 == 0 ? 0.0 : lambert_w(s.z2.real(), o.branches.second);
  // -ln of the product (quadratic) or ratio (rational) of the two factor
  // equations' right-hand sides, divided by 2R.
  if (o.kind == SeparationKind::Quadratic) {
    s.x = (p.r1 * y1 + p.r2 * y2) / 2 + (w1 + w2) / (2 * p.R);
  } else {
    s.x = (p.r1 * y1 + p.r2 * y2) / 2 + (w1 - w2) / (2 * p.R);
  }
  s.equation_residual = equation_residual(p, s.x, o.kind);
  s.split_residual_1 = scaled_difference(std::exp(-p.R * s.x * y1), p.a_o * (s.x - p.r1));
  s.split_residual_2 = o.kind == SeparationKind::Quadratic
                           ? scaled_difference(std::exp(-p.R * s.x * y2), p.b_o * (s.x - p.r2))
                           : scaled_difference(std::exp(p.R * s.x * y2), p.b_o * (s.x - p.r2));
  s.epsilon_x_residual = std::numeric_limits<double>::quiet_NaN();
  if (o.kind == SeparationKind::Quadratic) {
    // f2 sits on the real branch that contains W(z1) + W(z2).
    const BranchIndex fold = w1 + w2 >= -1 ? kPrincipalBranch : kLowerBranch;
    try {
      s.epsilon_x_residual = epsilon_x_relation(p.r1, p.r2, p.R, epsilon, s.x, {s.z1, o.branches.first},
                                                {s.z2, o.branches.second}, fold);
    } catch (const Error&) {
    }
  }
  if (!(s.equation_residual <= kTolerances.certify)) return std::nullopt;
  if (std::isfinite(s.epsilon_x_residual) && !(std::abs(s.epsilon_x_residual) <= kTolerances.epsilon_x)) {
    return std::nullopt;
  }
  return s;
}

}  // namespace

void SeparationProblem::validate() const {
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("separation: R must be positive");
  if (a_o == 0 || b_o == 0) throw DomainError("separation: a_o and b_o must be nonzero");
  if (!std::isfinite(a_o) || !std::isfinite(b_o) || !std::isfinite(r1) || !std::isfinite(r2)) {
    throw DomainError("separation: parameters must be finite");
  }
}

double z1_of_epsilon(const SeparationProblem& p, double epsilon) {
  const double y = 1 + epsilon;
  return y * p.R * first_factor_scale(p, y);
}

double z2_of_epsilon(const SeparationProblem& p, double epsilon, SeparationKind kind) {
  const double y2 = 1 - epsilon;
  const double z = y2 * p.R * second_factor_scale(p, y2, kind);
  return kind == SeparationKind::Quadratic ? z : -z;
}

double x1_of_epsilon(const SeparationProblem& p, double epsilon, BranchIndex branch, EpsilonDomain domain) {
  p.validate();
  if (!std::isfinite(epsilon)) throw DomainError("x1: epsilon must be finite");
  const double y = 1 + epsilon;
  return factor_root(p.r1, first_factor_scale(p, y), y, p.R, branch, domain, "x1");
}

double x2_of_epsilon(const SeparationProblem& p, double epsilon, BranchIndex branch, SeparationKind kind,
                     EpsilonDomain domain) {
  p.validate();
  if (!std::isfinite(epsilon)) throw DomainError("x2: epsilon must be finite");
  const double y2 = 1 - epsilon;
  const double c = second_factor_scale(p, y2, kind);
  if (kind == SeparationKind::Quadratic) return factor_root(p.r2, c, y2, p.R, branch, domain, "x2");
  // r2 - W(-y2 R c)/(y2 R) = r2 + c e^{-W}.
  if (!std::isfinite(c)) throw DomainError("x2: exponential factor overflows");
  if (y2 == 0) {
    if (domain == EpsilonDomain::Open) throw DegenerateError("x2: 1 - epsilon vanishes");
    if (branch.value != 0) throw DomainError("x2: branch -1 is singular at 1 - epsilon = 0");
    return p.r2 + c;
  }
  return p.r2 + c * std::exp(-lambert_w(-y2 * p.R * c, branch));
}

double separation_residual(const SeparationProblem& p, double epsilon, const SeparationOptions& options) {
  check_epsilon(epsilon, options.domain, options.extended_margin);
  return x1_of_epsilon(p, epsilon, options.branches.first, options.domain) -
         x2_of_epsilon(p, epsilon, options.branches.second, options.kind, options.domain);
}

double equation_residual(const SeparationProblem& p, double x, SeparationKind kind) {
  if (kind == SeparationKind::Quadratic) {
    return scaled_difference(std::exp(-2 * x * p.R), p.a_o * p.b_o * (x - p.r1) * (x - p.r2));
  }
  return scaled_difference(std::exp(-2 * x * p.R) * p.b_o * (x - p.r2), p.a_o * (x - p.r1));
}

TranscendentalEquation as_equation(const SeparationProblem& p, SeparationKind kind) {
  p.validate();
  TranscendentalEquation eq;
  eq.sign = -1;
  eq.k = 2 * p.R;
  if (kind == SeparationKind::Quadratic) {
    eq.P = FactoredQuadratic{p.a_o, p.b_o, p.r1, p.r2}.expand();
    eq.Q = Polynomial{1.0};
  } else {
    eq.P = Polynomial{-p.a_o * p.r1, p.a_o};
    eq.Q = Polynomial{-p.b_o * p.r2, p.b_o};
  }
  return eq;
}

std::vector<SeparationSolution> solve_separation(const SeparationProblem& p, const SeparationOptions& options) {
  p.validate();
  if (options.scan_points < 2) throw DomainError("solve_separation: need at least two scan points");
  double lo, hi;
  if (options.domain == EpsilonDomain::Open) {
    lo = -1 + options.endpoint_gap;
    hi = 1 - options.endpoint_gap;
  } else {
    lo = -1 - options.extended_margin;
    hi = 1 + options.extended_margin;
  }
  std::vector<double> grid;
  for (int i = 0; i < options.scan_points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (options.scan_points - 1));
  }
  if (options.domain == EpsilonDomain::Extended) {
    grid.push_back(-1.0);
    grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  std::vector<SeparationSolution> found;
  for (const int sign : {1, -1}) {
    if (sign == -1 && !options.both_signs) break;
    const SeparationProblem ps{sign * p.a_o, sign * p.b_o, p.r1, p.r2, p.R};
    std::vector<double> values;
    values.reserve(grid.size());
    for (const double e : grid) values.push_back(safe_residual(ps, e, options));

    std::vector<double> candidates;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (values[i] == 0) candidates.push_back(grid[i]);
      if (i + 1 == grid.size()) break;
      const double fa = values[i], fb = values[i + 1];
      if (std::isnan(fa) || std::isnan(fb) || fa == 0 || fb == 0) continue;
      if ((fa < 0) != (fb < 0)) candidates.push_back(bisect_residual(ps, options, grid[i], grid[i + 1], fa));
    }
    for (const double e : candidates) {
      if (auto s = build_solution(ps, options, e)) {
        s->scale_sign = sign;
        found.push_back(*s);
      }
    }
  }
  if (found.empty()) {
    throw NoSolutionError("solve_separation: no separation parameter exists for branches (" +
                          std::to_string(options.branches.first.value) + ", " +
                          std::to_string(options.branches.second.value) + ")");
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<SeparationSolution> clustered;
  std::size_t i = 0;
  while (i < found.size()) {
    std::size_t j = i + 1;
    while (j < found.size() && std::abs(found[j].x - found[i].x) <= 1e-9 * std::max(1.0, std::abs(found[i].x))) ++j;
    auto best = std::min_element(found.begin() + static_cast<std::ptrdiff_t>(i),
                                 found.begin() + static_cast<std::ptrdiff_t>(j),
                                 [](const auto& a, const auto& b) { return a.equation_residual < b.equation_residual; });
    SeparationSolution s = *best;
    const auto [emin, emax] = std::minmax_element(
        found.begin() + static_cast<std::ptrdiff_t>(i), found.begin() + static_cast<std::ptrdiff_t>(j),
        [](const auto& a, const auto& b) { return a.epsilon < b.epsilon; });
    s.epsilon_degenerate = emax->epsilon - emin->epsilon > 1e-6;
    clustered.push_back(s);
    i = j;
  }
  return clustered;
}

SeparationOutcome separate(const SeparationProblem& p, const SeparationOptions& options, const SolverConfig& config) {
  SeparationOutcome out;
  try {
    out.solutions = solve_separation(p, options);
    out.decomposed = true;
  } catch (const NoSolutionError&) {
    out.decomposed = false;
  }
  out.numeric = solve_all(as_equation(p, options.kind), config);
  return out;
}

std::complex<double> omega_1_minus_1(const SeparationProblem& p, double epsilon, BranchPair branches) {
  p.validate();
  check_epsilon(epsilon, EpsilonDomain::Open, 0);
  const std::complex<double> z1 = z1_of_epsilon(p, epsilon);
  const std::complex<double> z2 = z2_of_epsilon(p, epsilon, SeparationKind::Rational);
  return lambert_w(z1, branches.first) * lambert_w(z2, branches.second);
}

DemkovSolution demkov_lambda(double R) {
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("demkov: R must be positive");
  const double w = lambert_w(2 * R * std::exp(-2 * R), kPrincipalBranch);
  DemkovSolution s;
  s.lambda = 0.5 + w / (4 * R);
  // -ln(w/(2R))/(2R) = 1 + w/(2R) by w e^w = 2R e^{-2R}.
  s.x = 1 + w / (2 * R);
  s.residual = scaled_difference(std::exp(-2 * s.x * R), (1 - s.x) * (s.lambda - s.x) / s.lambda);
  return s;
}

SpecialSolution special_solution_1(double r2, double b_o, double R) {
  if (b_o == 0) throw DomainError("special solution 1: b_o must be nonzero");
  if (r2 == 0) throw DomainError("special solution 1: r2 must be nonzero");
  if (!(R > 0)) throw DomainError("special solution 1: R must be positive");
  SpecialSolution s{};
  s.b_o = b_o;
  s.r2 = r2;
  s.R = R;
  s.r1 = 1 / b_o;
  s.x = (1 + b_o * r2) / b_o;
  s.a_o = std::exp(-2 * R * s.x) / r2;
  s.residual = equation_residual({s.a_o, s.b_o, s.r1, s.r2, R}, s.x);
  return s;
}

SpecialSolution special_solution_2(double r1, double b_o, double R) {
  if (!(r1 * b_o > 0)) throw DomainError("special solution 2: requires r1 b_o > 0");
  if (!(R > 0)) throw DomainError("special solution 2: R must be positive");
  const double l = std::log(r1 * b_o);
  const double denominator = 2 * r1 * R + l;
  if (denominator == 0) throw DomainError("special solution 2: 2 r1 R + ln(r1 b_o) vanishes");
  SpecialSolution s{};
  s.b_o = b_o;
  s.r1 = r1;
  s.R = R;
  s.a_o = -2 * R / denominator;
  s.r2 = 1 / s.a_o;
  s.x = -l / (2 * R);
  s.residual = equation_residual({s.a_o, s.b_o, s.r1, s.r2, R}, s.x);
  return s;
}

namespace {

struct ParametricMaps {
  double epsilon, a_o, b_o, R;
  ParametricForm form;

  double r1_map(double r1) const {
    const double y = 1 + epsilon, y2 = 1 - epsilon;
    if (form == ParametricForm::SplitConsistent) {
      const double w1 = lambert_w(y * R * std::exp(-r1 * y * R) / a_o, kPrincipalBranch);
      return lambert_w(y2 * R * std::exp(-y2 * w1 / y) / b_o, kPrincipalBranch) / (y2 * R);
    }
    const double w1 = lambert_w(y * std::exp(-r1 * R * y) / a_o, kPrincipalBranch);
    return lambert_w(R * y2 * std::exp((epsilon - 1) * w1 / y) / b_o, kPrincipalBranch) / (R * y2);
  }

  double r2_map(double r2) const {
    const double y = 1 + epsilon, y2 = 1 - epsilon;
    if (form == ParametricForm::SplitConsistent) {
      const double w2 = lambert_w(y2 * R * std::exp(-r2 * y2 * R) / b_o, kPrincipalBranch);
      return lambert_w(y * R * std::exp(-y * w2 / y2) / a_o, kPrincipalBranch) / (y * R);
    }
    const double w2 = lambert_w(y2 * std::exp(-r2 * R * y2) / b_o, kPrincipalBranch);
    return lambert_w(R * y * std::exp(y2 * w2 / y2) / a_o, kPrincipalBranch) / (R * y);
  }
};

template <class Map>
double solve_fixed_point(Map&& map, double seed, const char* which) {
  auto h = [&](double r) { return r - map(r); };
  double r = seed;
  double hr = h(r);
  for (int i = 0; i < 100; ++i) {
    if (std::abs(hr) <= 4 * kEps * std::max(1.0, std::abs(r))) return r;
    const double step_h = 1e-7 * std::max(1.0, std::abs(r));
    const double slope = (h(r + step_h) - h(r - step_h)) / (2 * step_h);
    if (!std::isfinite(slope) || slope == 0) break;
    double step = hr / slope;
    bool moved = false;
    for (int k = 0; k < 40; ++k) {
      const double next = r - step;
      double hn;
      try {
        hn = h(next);
      } catch (const Error&) {
        step /= 2;
        continue;
      }
      if (std::isfinite(hn) && std::abs(hn) < std::abs(hr)) {
        r = next;
        hr = hn;
        moved = true;
        break;
      }
      step /= 2;
    }
    if (!moved) break;
  }
  if (std::abs(hr) <= 1e-12 * std::max(1.0, std::abs(r))) return r;
  throw NoConvergenceError(std::string("parametric family: ") + which + " iteration did not converge");
}

}  // namespace

ParametricSolution parametric_family(double epsilon, double a_o, double b_o, double R, std::pair<double, double> seeds,
                                     ParametricForm form) {
  check_epsilon(epsilon, EpsilonDomain::Open, 0);
  if (a_o == 0 || b_o == 0) throw DomainError("parametric family: a_o and b_o must be nonzero");
  if (!(R > 0)) throw DomainError("parametric family: R must be positive");
  const ParametricMaps maps{epsilon, a_o, b_o, R, form};
  ParametricSolution s{};
  s.form = form;
  try {
    s.r1 = solve_fixed_point([&](double r) { return maps.r1_map(r); }, seeds.first, "r1");
    s.r2 = solve_fixed_point([&](double r) { return maps.r2_map(r); }, seeds.second, "r2");
  } catch (const NoConvergenceError&) {
    throw;
  } catch (const Error& e) {
    throw NoConvergenceError(std::string("parametric family: ") + e.what());
  }
  s.residual_1 = s.r1 - maps.r1_map(s.r1);
  s.residual_2 = s.r2 - maps.r2_map(s.r2);
  const double y = 1 + epsilon, y2 = 1 - epsilon;
  s.split_residual_1 = s.r1 - lambert_w(y2 * R * std::exp(-s.r2 * y2 * R) / b_o, kPrincipalBranch) / (y2 * R);
  s.split_residual_2 = s.r2 - lambert_w(y * R * std::exp(-s.r1 * y * R) / a_o, kPrincipalBranch) / (y * R);
  s.consistent_with_split = std::abs(s.split_residual_1) <= kTolerances.certify * std::max(1.0, std::abs(s.r1)) &&
                            std::abs(s.split_residual_2) <= kTolerances.certify * std::max(1.0, std::abs(s.r2));
  return s;
}

}  // namespace omega
