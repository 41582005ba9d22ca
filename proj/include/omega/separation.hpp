#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "omega/lambertw.hpp"
#include "omega/solver.hpp"

namespace omega {

/// e^{-2xR} = a_o b_o (x - r1)(x - r2)          (Quadratic)
/// e^{-2xR} = a_o (x - r1) / (b_o (x - r2))     (Rational)
struct SeparationProblem {
  double a_o = 1;
  double b_o = 1;
  double r1 = 0;
  double r2 = 0;
  double R = 1;

  void validate() const;
};

enum class SeparationKind { Quadratic, Rational };

/// Open: eps restricted to (-1, 1), endpoints are errors.
/// Extended: eps in (-1 - margin, 1 + margin), endpoints taken as limits.
enum class EpsilonDomain { Open, Extended };

struct BranchPair {
  BranchIndex first{0};
  BranchIndex second{0};
};

struct SeparationOptions {
  BranchPair branches{};
  SeparationKind kind = SeparationKind::Quadratic;
  EpsilonDomain domain = EpsilonDomain::Open;
  double extended_margin = 0.5;
  double endpoint_gap = 1e-6;
  int scan_points = 512;
  // The equation is unchanged under (a_o, b_o) -> (-a_o, -b_o) but the
  // factor equations are not; search both representations.
  bool both_signs = true;
};

struct SeparationSolution {
  double epsilon = 0;
  double x = 0;
  std::complex<double> z1;
  std::complex<double> z2;
  BranchIndex branch1{0};
  BranchIndex branch2{0};
  double x1 = 0;
  double x2 = 0;
  double equation_residual = 0;     // full quadratic or rational equation at x
  double split_residual_1 = 0;      // e^{-Rx(1+eps)} vs a_o (x - r1)
  double split_residual_2 = 0;      // second factor equation
  double epsilon_x_residual = 0;    // NaN when the relation does not apply
  bool epsilon_degenerate = false;  // a whole range of eps yields the same x
  int scale_sign = 1;               // factors use (scale_sign a_o, scale_sign b_o)
};

/// First factor argument (1+eps) R e^{-r1 (1+eps) R} / a_o.
double z1_of_epsilon(const SeparationProblem& p, double epsilon);
/// Second factor argument: (1-eps) R e^{-r2 (1-eps) R} / b_o, or
/// -(1-eps) R e^{+r2 (1-eps) R} / b_o for the rational kind.
double z2_of_epsilon(const SeparationProblem& p, double epsilon, SeparationKind kind = SeparationKind::Quadratic);

double x1_of_epsilon(const SeparationProblem& p, double epsilon, BranchIndex branch = kPrincipalBranch,
                     EpsilonDomain domain = EpsilonDomain::Open);
double x2_of_epsilon(const SeparationProblem& p, double epsilon, BranchIndex branch = kPrincipalBranch,
                     SeparationKind kind = SeparationKind::Quadratic, EpsilonDomain domain = EpsilonDomain::Open);

/// (r1 - r2) - [W(z2)/((1-eps)R) - W(z1)/((1+eps)R)], i.e. x1(eps) - x2(eps).
double separation_residual(const SeparationProblem& p, double epsilon, const SeparationOptions& options = {});

/// Residual of the undecomposed equation, scaled by max(1, |lhs|, |rhs|).
double equation_residual(const SeparationProblem& p, double x, SeparationKind kind = SeparationKind::Quadratic);

/// The equation as a solver object.
TranscendentalEquation as_equation(const SeparationProblem& p, SeparationKind kind = SeparationKind::Quadratic);

/// Every certified eps root for the chosen branches, ascending in x.
/// Throws NoSolutionError when none exists.
std::vector<SeparationSolution> solve_separation(const SeparationProblem& p, const SeparationOptions& options = {});

/// solve_separation with a numeric fallback when no eps exists.
struct SeparationOutcome {
  bool decomposed = false;
  std::vector<SeparationSolution> solutions;
  std::vector<RootCertificate> numeric;  // solve_all on the undecomposed equation
};
SeparationOutcome separate(const SeparationProblem& p, const SeparationOptions& options = {},
                           const SolverConfig& config = {});

/// W(z1) W(z2) for the rational kind at eps.
std::complex<double> omega_1_minus_1(const SeparationProblem& p, double epsilon, BranchPair branches = {});

// ---- closed forms ----

struct DemkovSolution {
  double lambda;
  double x;
  double residual;
};
/// lambda = 1/2 + W(2R e^{-2R})/(4R), x = -ln(W(2R e^{-2R})/(2R))/(2R).
DemkovSolution demkov_lambda(double R);

struct SpecialSolution {
  double a_o;
  double b_o;
  double r1;
  double r2;
  double R;
  double x;
  double residual;
};
/// r1 = 1/b_o, a_o = e^{-2R(1 + b_o r2)/b_o}/r2, x = (1 + b_o r2)/b_o.
SpecialSolution special_solution_1(double r2, double b_o, double R);
/// a_o = -2R/(2 r1 R + ln(r1 b_o)), r2 = 1/a_o, x = -ln(r1 b_o)/(2R).
SpecialSolution special_solution_2(double r1, double b_o, double R);

/// AsPrinted omits the factor R from the inner W arguments;
/// SplitConsistent is the pair obtained from r1 = f(r2), r2 = g(r1).
enum class ParametricForm { AsPrinted, SplitConsistent };

struct ParametricSolution {
  double r1;
  double r2;
  double residual_1;        // of the solved form
  double residual_2;
  double split_residual_1;  // r1 - W(z2)/((1-eps)R)
  double split_residual_2;  // r2 - W(z1)/((1+eps)R)
  bool consistent_with_split;
  ParametricForm form;
};
ParametricSolution parametric_family(double epsilon, double a_o, double b_o, double R, std::pair<double, double> seeds,
                                     ParametricForm form = ParametricForm::AsPrinted);

}  // namespace omega
