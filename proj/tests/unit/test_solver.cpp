#include <doctest.h>

#include <cmath>

#include "omega/lambertw.hpp"
#include "omega/solver.hpp"

using namespace omega;

namespace {

TranscendentalEquation squared_shift() {
  // e^{-2x} = (x - 1)^2
  return {-1, 2, parse_polynomial("1,-2,1"), Polynomial{1.0}};
}

void check_certificates(const std::vector<RootCertificate>& roots, double tol = 1e-10) {
  for (const auto& r : roots) CHECK(r.residual <= tol * r.scale);
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].x < roots[i].x);
}

}  // namespace

TEST_CASE("tangent root and simple root") {
  const auto roots = solve_all(squared_shift(), {-1, 3});
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0].x) < 1e-9);
  CHECK(roots[0].multiplicity_hint == 2);
  CHECK(roots[1].x == doctest::Approx(1 + lambert_w(std::exp(-1.0))).epsilon(1e-12));
  CHECK(roots[1].multiplicity_hint == 1);
  check_certificates(roots);
}

TEST_CASE("tangent root found between grid nodes") {
  // Same equation shifted by an irrational amount so that no node hits it.
  const double s = std::sqrt(2.0) / 100;
  TranscendentalEquation eq = squared_shift();
  eq.P = Polynomial{std::exp(2 * s), 0.0} * Polynomial{0.0};  // placeholder, replaced below
  // e^{-2(x - s)} = (x - s - 1)^2  <=>  e^{-2x} = e^{-2s} (x - s - 1)^2
  eq.P = std::exp(-2 * s) * (Polynomial{-s - 1, 1.0} * Polynomial{-s - 1, 1.0});
  const auto roots = solve_all(eq, {-1, 3});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].x == doctest::Approx(s).epsilon(1e-7));
  CHECK(roots[0].multiplicity_hint == 2);
  CHECK(roots[0].path == "tangent");
}

TEST_CASE("equal-root canonical form at R = 1") {
  // e^{-2x} = (1 - x)(1 - x): x = 0 is the ungerade root at R = 1
  TranscendentalEquation eq{-1, 2, Polynomial{1.0, -1.0} * Polynomial{1.0, -1.0}, Polynomial{1.0}};
  const auto roots = solve_all(eq, {-1, 3});
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0].x) < 1e-9);
}

TEST_CASE("double-root oracle via factoring") {
  // e^{-2xR} = (x - r)^2 splits into e^{-xR} = +-(x - r):
  // x = r + W(+-R e^{-rR})/R on the real branches.
  for (const double R : {0.5, 1.5, 3.0}) {
    for (const double r : {0.5, 1.0, 2.0}) {
      TranscendentalEquation eq{-1, 2 * R, Polynomial{-r, 1.0} * Polynomial{-r, 1.0}, Polynomial{1.0}};
      std::vector<double> expected{r + lambert_w(R * std::exp(-r * R)) / R};
      const double t = -R * std::exp(-r * R);
      if (t >= -0.36787944117144233) {
        expected.push_back(r + lambert_w(t) / R);
        expected.push_back(r + lambert_w(t, kLowerBranch) / R);
      }
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                     expected.end());
      const auto roots = solve_all(eq, {-10, 10});
      CAPTURE(R);
      CAPTURE(r);
      REQUIRE(roots.size() == expected.size());
      for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(roots[i].x - expected[i]) <= 1e-10);
      check_certificates(roots);
    }
  }
}

TEST_CASE("pole handling") {
  // e^{-2x} = (x-1)/(x-3) has no real root on [0, 2.9].
  TranscendentalEquation none{-1, 2, Polynomial{-1.0, 1.0}, Polynomial{-3.0, 1.0}};
  CHECK(solve_all(none, {0, 2.9}).empty());
  // e^{2x} = (x-1)/(x-3): one root just past the pole; brackets never straddle it.
  TranscendentalEquation past{1, 2, Polynomial{-1.0, 1.0}, Polynomial{-3.0, 1.0}};
  const auto roots = solve_all(past, {2.5, 4});
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].x == doctest::Approx(3.0049210301672808845).epsilon(1e-12));
  CHECK(roots[0].bracket.lo >= 3.0);
  // A root of F on a zero of Q: e^{x} (x - 1) = (x - 1) at x = 1.
  TranscendentalEquation collide{1, 1, Polynomial{-1.0, 1.0}, Polynomial{-1.0, 1.0}};
  CHECK_THROWS_AS(solve_all(collide, {0.5, 2}), PoleCollisionError);
}

TEST_CASE("residual") {
  const auto eq = squared_shift();
  CHECK(residual(eq, 0.0) == 0.0);
  CHECK(residual(eq, 0.7) > 0);
  // e^{-2x} = (1-x)(lambda-x)/lambda with the closed-form lambda, x at R = 1
  const double w = lambert_w(2 * std::exp(-2.0));
  const double lambda = 0.5 + w / 4, x = 1 + w / 2;
  TranscendentalEquation demkov{-1, 2, (1 / lambda) * (Polynomial{1.0, -1.0} * Polynomial{lambda, -1.0}), Polynomial{1.0}};
  CHECK(residual(demkov, x) < 1e-12);
}

TEST_CASE("validation and default interval") {
  CHECK_THROWS_AS(solve_all({0, 1, Polynomial{1.0}, Polynomial{1.0}}, {0, 1}), DomainError);
  CHECK_THROWS_AS(solve_all({-1, 0, Polynomial{1.0}, Polynomial{1.0}}, {0, 1}), DomainError);
  CHECK_THROWS_AS(solve_all({-1, 1, Polynomial{1.0}, Polynomial{}}, {0, 1}), DomainError);
  CHECK_THROWS_AS(solve_all(squared_shift(), {1, 0}), DomainError);
  const Interval iv = default_interval(squared_shift());
  CHECK(iv.lo == doctest::Approx(1 - 2.5));
  CHECK(iv.hi == doctest::Approx(1 + 2.5));
  CHECK(solve_all(squared_shift()).size() == 2);
}

TEST_CASE("completeness: every sign change yields a root") {
  // e^{-x} = sin-like polynomial with several crossings
  TranscendentalEquation eq{-1, 0.5, Polynomial::from_roots(std::vector<double>{-2, -0.5, 1, 2.5, 4}, 0.05), Polynomial{1.0}};
  const Interval iv{-3, 5};
  const auto roots = solve_all(eq, iv);
  int sign_changes = 0;
  double prev = eq.sample(iv.lo).value;
  for (int i = 1; i <= 100000; ++i) {
    const double v = eq.sample(iv.lo + (iv.hi - iv.lo) * i / 100000).value;
    if ((v < 0) != (prev < 0)) ++sign_changes;
    prev = v;
  }
  CHECK(static_cast<int>(roots.size()) == sign_changes);
  check_certificates(roots);
}
