#include <doctest.h>

#include <cmath>
#include <numbers>

#include "omega/gravity.hpp"

using namespace omega;

namespace {

constexpr double kVPlus = 0.73883503113160778239;
constexpr double kVMinus = -1.256431208626169677;

ThreeBodySpec equal_split(double q) {
  // m3 = m1 + m2 = 0.5 with R_t = K R sqrt(3)/4 = 1
  ThreeBodySpec s;
  s.m1 = 0.25;
  s.m2 = 0.25;
  s.m3 = 0.5;
  s.q = q;
  s.K = 4 / std::sqrt(3.0);
  s.R = 1;
  return s;
}

}  // namespace

TEST_CASE("two-body map round trip") {
  for (const double x : {-3.0, -1.5, 2.0}) {
    for (const double a : {-0.5, 0.0, 0.7}) {
      if (x + a == 0) continue;
      const auto m = two_body_roundtrip(x, a);
      CHECK(m.lambda == doctest::Approx(2 * x / (x + a) - 1));
      CHECK(m.R == doctest::Approx(-(x + a)));
      for (const double y : {-1.0, 0.3, 2.5}) CHECK(m.y_of_d(m.d_of_y(y)) == doctest::Approx(y).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(two_body_roundtrip(1, -1), DomainError);
}

TEST_CASE("two-body solutions satisfy both forms") {
  const auto sols = two_body_solve(-2, 0);
  REQUIRE(sols.size() == 3);
  CHECK(sols[0].d == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::abs(sols[0].d) < 1e-9);
  CHECK(sols[1].d == doctest::Approx(0.79681213002002004616).epsilon(1e-12));
  CHECK(sols[2].d == doctest::Approx(1.1088575528785450554).epsilon(1e-12));
  for (const auto& s : sols) {
    CHECK(s.two_body_residual < 1e-10);
    CHECK(s.canonical_residual < 1e-10);
  }
  CHECK_THROWS_AS(two_body_solve(2, 0), DomainError);
}

TEST_CASE("regime signs") {
  CHECK(regime_sign(0.3) == 1);
  CHECK(regime_sign(-0.3) == -1);
  CHECK(regime_sign(0.0) == 1);
  CHECK(regime_sign(std::numbers::pi) == -1);
  const auto s = three_body_signs(0.0);
  CHECK(s.s1 == 1);
  CHECK(s.s2 == 1);
  CHECK(s.sq == 1);
}

TEST_CASE("q = 0 reduction") {
  const auto roots = three_body_solve(equal_split(0));
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].x == doctest::Approx(kVMinus).epsilon(1e-11));
  CHECK(roots[1].x == 0.0);
  CHECK(roots[1].has_flag("trivial"));
  CHECK(roots[2].x == doctest::Approx(kVPlus).epsilon(1e-11));
  const auto reduced = solve_all(three_body_special_q0(0.25, 0.25, 0.5, 1), {-3, 3});
  REQUIRE(reduced.size() == 3);
  CHECK(reduced[0].x == doctest::Approx(kVMinus).epsilon(1e-12));
  CHECK(std::abs(reduced[1].x) < 1e-12);
  CHECK(reduced[2].x == doctest::Approx(kVPlus).epsilon(1e-12));
}

TEST_CASE("double-root closed forms") {
  const auto forms = double_root_closed_forms(0.5, 1);
  REQUIRE(forms.size() == 3);
  CHECK(forms[0].V.real() == doctest::Approx(kVPlus).epsilon(1e-14));
  CHECK(std::abs(forms[1].V.real() - 0.5 + 0.5) < 1e-14);  // W0(-t) = -R_t m gives V = 0
  CHECK(forms[2].V.real() == doctest::Approx(kVMinus).epsilon(1e-14));
  const auto eq = three_body_special_q0(0.25, 0.25, 0.5, 1);
  for (const auto& f : forms) CHECK(residual(eq, f.V.real()) < 1e-13);
  // The alternative form does not reproduce the nonzero roots.
  for (const auto& f : double_root_printed_forms(0.5, 1)) {
    if (f.real) {
      const bool nontrivial = std::abs(f.V.real() - kVPlus) < 1e-6 || std::abs(f.V.real() - kVMinus) < 1e-6;
      CHECK_FALSE(nontrivial);
    }
  }
}

TEST_CASE("special angles") {
  CHECK(isolated_mass(SpecialAngle::Zero) == 3);
  CHECK(isolated_mass(SpecialAngle::PlusPiThird) == 1);
  CHECK(isolated_mass(SpecialAngle::MinusPiThird) == 2);
  CHECK(angle_value(SpecialAngle::TwoPiThirds) == doctest::Approx(2 * std::numbers::pi / 3));
  for (const auto angle : {SpecialAngle::Zero, SpecialAngle::PlusPiThird, SpecialAngle::MinusPiThird}) {
    ThreeBodySpec spec{0.3, 0.5, 0.9, angle_value(angle), 4 / std::sqrt(3.0), 1.0};
    const auto full = three_body_solve(spec);
    const auto reduced = solve_all(special_angle_equation(angle, spec.m1, spec.m2, spec.m3, 1), three_body_interval(spec));
    std::size_t nontrivial = 0;
    for (const auto& r : full) {
      if (r.has_flag("trivial")) continue;
      ++nontrivial;
      bool match = false;
      for (const auto& s : reduced) match = match || std::abs(s.x - r.x) < 1e-9;
      CHECK(match);
    }
    // V = 0 solves the reduced form too and is the trivial root of the full one.
    std::size_t reduced_nonzero = 0;
    for (const auto& s : reduced) reduced_nonzero += std::abs(s.x) > 1e-9 ? 1 : 0;
    CHECK(nontrivial == reduced_nonzero);
  }
}

TEST_CASE("pi/6 factors") {
  const auto f = pi_sixth_factors(1, 2);
  const auto first = solve_all(f.first, {-5, 5});
  bool found = false;
  for (const auto& r : first) found = found || std::abs(r.x - 0.79681213002002004616) < 1e-12;
  CHECK(found);
  const auto g = pi_sixth_factors(0.5, 1);
  const auto forms = pi_sixth_closed_forms(0.5, 1);
  REQUIRE(forms.size() == 2);
  CHECK(forms[1].V.real() == doctest::Approx(kVMinus).epsilon(1e-14));
  for (const auto& r : forms) CHECK(residual(g.first, r.V.real()) < 1e-13);
  const auto second = solve_all(pi_sixth_factors(1, 1).second, {-0.9, 5});
  REQUIRE(second.size() == 2);
  CHECK(std::abs(second[0].x) < 1e-9);
  CHECK(second[1].x == doctest::Approx(1.7018953725630774591).epsilon(1e-12));
  // Every factor root is a root of the full residual.
  ThreeBodySpec spec{1, 1, 1, std::numbers::pi / 6, 2, 1};
  for (const auto& r : second) CHECK(std::abs(three_body_residual(spec, r.x)) < 1e-10);
  CHECK(std::abs(pi_sixth_printed_form(1, 1)) < 1e-14);
}

TEST_CASE("small-q rational approximation") {
  ThreeBodySpec spec{0.5, 0.5, 0.5, 0.05, 2, 1};
  double previous = std::numeric_limits<double>::infinity();
  for (const int n : {2, 3, 4}) {
    const auto cmp = three_body_rational_q_compare(spec, {n, n});
    CHECK(cmp.max_disagreement <= previous);
    previous = cmp.max_disagreement;
  }
  CHECK(previous < 1e-4);
  CHECK_THROWS_AS(three_body_rational_q(spec, {0, 2}), DomainError);
  spec.q = 1.2;
  CHECK_THROWS_AS(three_body_rational_q(spec, {2, 2}), DomainError);
  spec.q = 0.05;
  spec.convention = ExponentConvention::AsPrinted;
  CHECK_THROWS_AS(three_body_rational_q(spec, {2, 2}), DomainError);
}

TEST_CASE("validation") {
  ThreeBodySpec spec;
  spec.m1 = 0;
  CHECK_THROWS_AS(three_body_solve(spec), DomainError);
  CHECK_THROWS_AS(double_root_closed_forms(-1, 1), DomainError);
}
