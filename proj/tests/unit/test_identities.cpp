#include <doctest.h>

#include <cmath>
#include <complex>

#include "omega/identities.hpp"
#include "omega/separation.hpp"

using namespace omega;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("tetration") {
  CHECK(std::abs(tetration(std::sqrt(2.0)) - 2.0) < 1e-14);
  CHECK(std::abs(tetration(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(tetration(0.5) - 0.64118574450498598449) < 1e-14);
  CHECK(std::abs(tetration(1.2) - 1.2577345413765263451) < 1e-14);
  // fixed point h = alpha^h
  for (const double a : {0.1, 0.7, 1.3, std::exp(1 / std::exp(1.0)) - 1e-3}) {
    const Complex h = tetration(a);
    CHECK(rel(std::pow(Complex(a), h), h) < 1e-13);
  }
  CHECK_THROWS_AS(tetration(0.0), DomainError);
  CHECK(std::abs(tetration_from_log(std::exp(-1.0)) - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(tetration_from_log(std::log(std::sqrt(2.0))) - 2.0) < 1e-14);
}

TEST_CASE("addition law") {
  const Complex a = std::exp(1.0);
  const Complex b = std::exp(1.0) * std::exp(Complex(0, 0.1));
  const Complex oracle(1.9993749674798091033, 0.050005210449395207317);
  CHECK(rel(lambert_w(a) + lambert_w(b), oracle) < 1e-14);
  CHECK(rel(addition_law_rhs(a, b), oracle) < 1e-13);
  for (const double x : {0.1, 1.0, 7.0, 100.0}) {
    for (const double y : {0.3, 2.0, 50.0}) {
      CHECK(rel(addition_law_rhs(x, y), lambert_w(Complex(x)) + lambert_w(Complex(y))) < 1e-12);
    }
  }
  // One argument with Re > 0 suffices.
  CHECK(rel(addition_law_rhs(Complex(-0.2, 0.1), 3.0), lambert_w(Complex(-0.2, 0.1)) + lambert_w(Complex(3.0))) < 1e-12);
  CHECK_THROWS_AS(addition_law_rhs(Complex(-1, 0), Complex(-2, 1)), DomainError);
  CHECK_THROWS_AS(addition_law_rhs(0.0, 1.0), DomainError);
}

TEST_CASE("product identity, principal branch") {
  const ProductArguments two{{2.0, kPrincipalBranch}, {2.0, kPrincipalBranch}};
  CHECK(rel(direct_product(two), 0.85260550201372549134 * 0.85260550201372549134) < 1e-14);
  CHECK(rel(omega_n_product(two), direct_product(two)) < 1e-12);
  const ProductArguments five{{0.5, kPrincipalBranch}, {1.0, kPrincipalBranch}, {Complex(2, 1), kPrincipalBranch},
                              {3.0, kPrincipalBranch}, {Complex(0.3, -0.4), kPrincipalBranch}};
  CHECK(rel(omega_n_product(five), direct_product(five)) < 1e-12);
  const ProductArguments one{{2.0, kPrincipalBranch}};
  CHECK(rel(omega_n_product(one), 2 * 0.42630275100686274567) < 1e-14);
}

TEST_CASE("product identity, mixed branches") {
  const ProductArguments mixed{{-0.2, kPrincipalBranch}, {-0.2, kLowerBranch}};
  bool some_fold_matches = false;
  for (const int k : {-1, 0, 1}) {
    if (rel(omega_n_product(mixed, BranchIndex{k}), direct_product(mixed)) < 1e-12) some_fold_matches = true;
  }
  CHECK(some_fold_matches);
}

TEST_CASE("degenerate arguments") {
  const ProductArguments zero{{0.0, kPrincipalBranch}, {1.0, kPrincipalBranch}};
  CHECK_THROWS_AS(f_n(zero), DegenerateError);
  CHECK_THROWS_AS(f_n({{1.0, kPrincipalBranch}}), DomainError);
  CHECK_THROWS_AS(omega_n_product({}), DomainError);
}

TEST_CASE("epsilon-x relation on a separated solution") {
  const SeparationProblem problem{1, 0.5, 1, 2, 1};
  const auto sols = solve_separation(problem);
  REQUIRE(!sols.empty());
  for (const auto& s : sols) {
    if (std::isnan(s.epsilon_x_residual)) continue;
    CHECK(std::abs(s.epsilon_x_residual) < 1e-8);
    const SeparationProblem p{s.scale_sign * problem.a_o, s.scale_sign * problem.b_o, problem.r1, problem.r2, problem.R};
    const double wsum = lambert_w(s.z1).real() + lambert_w(s.z2).real();
    const BranchIndex fold = wsum >= -1 ? kPrincipalBranch : kLowerBranch;
    const double r = epsilon_x_relation(p.r1, p.r2, p.R, s.epsilon, s.x, {s.z1, s.branch1}, {s.z2, s.branch2}, fold);
    CHECK(std::abs(r) < 1e-8);
    CHECK(std::abs(epsilon_x_relation(p.r1, p.r2, p.R, s.epsilon, s.x + 0.1, {s.z1, s.branch1}, {s.z2, s.branch2}, fold)) > 0.1);
  }
  CHECK_THROWS_AS(epsilon_x_relation(1, 3, 0, 0, 0, {1.0, kPrincipalBranch}, {1.0, kPrincipalBranch}), DomainError);
}
