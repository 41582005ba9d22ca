#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "omega/lambertw.hpp"

using namespace omega;
using C = std::complex<double>;

namespace {

constexpr double kInvE = 0.36787944117144233;

double round_trip(double x, BranchIndex k) {
  const double w = lambert_w(x, k);
  return std::abs(w_times_exp_w(w) - x) / std::max(1.0, std::abs(x));
}

}  // namespace

TEST_CASE("special values") {
  CHECK(lambert_w(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w(-kInvE) == -1.0);
  CHECK(lambert_w(-kInvE, kLowerBranch) == -1.0);
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(1.0) == doctest::Approx(0.567143290409783873).epsilon(1e-15));
  CHECK(lambert_w(-0.1, kLowerBranch) == doctest::Approx(-3.5771520639572971414).epsilon(1e-15));
  CHECK(lambert_w(1e-310) == 1e-310);
  CHECK(lambert_w(std::numeric_limits<double>::max()) == doctest::Approx(703.2270331047702).epsilon(1e-14));
}

TEST_CASE("w e^w helper") {
  CHECK(w_times_exp_w(1.0) == doctest::Approx(std::numbers::e));
  CHECK(w_times_exp_w(-1.0) == doctest::Approx(-kInvE));
  CHECK(std::abs(w_times_exp_w(0.5671432904097838) - 1.0) < 1e-14);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(lambert_w(-0.5), DomainError);
  CHECK_THROWS_AS(lambert_w(0.0, kLowerBranch), DomainError);
  CHECK_THROWS_AS(lambert_w(0.5, kLowerBranch), DomainError);
  CHECK_THROWS_AS(lambert_w(1.0, BranchIndex(1)), DomainError);
  CHECK_THROWS_AS(lambert_w(std::nan("")), DomainError);
  CHECK_THROWS_AS(lambert_w(C(0, 0), BranchIndex(2)), DomainError);
}

TEST_CASE("real round trip and branch ordering") {
  for (int i = 0; i <= 2000; ++i) {
    const double t = static_cast<double>(i) / 2000;
    const double x0 = -kInvE + 1e-12 + t * t * (1000 + kInvE);
    CHECK(round_trip(x0, kPrincipalBranch) <= 1e-14);
  }
  double previous = -2;
  for (int i = 1; i < 1000; ++i) {
    const double x = -kInvE + (kInvE - 1e-12) * i / 1000.0;
    CHECK(round_trip(x, kLowerBranch) <= 1e-14);
    const double w0 = lambert_w(x), wm = lambert_w(x, kLowerBranch);
    CHECK(wm < -1);
    CHECK(-1 < w0);
    CHECK(w0 < 0);
    CHECK(w0 > previous);
    previous = w0;
  }
}

TEST_CASE("complex branches against reference values") {
  struct Row {
    int k;
    C z;
    C w;
  };
  const Row rows[] = {
      {-2, {1, 2}, {-1.4827073415153519833, -9.7373156854137899035}},
      {-1, {1, 2}, {-0.44963653647171967093, -3.4766227907402575567}},
      {0, {1, 2}, {0.82377121670923049896, 0.53292898679544160509}},
      {1, {1, 2}, {-0.94141438286555815648, 5.6545633028326099374}},
      {2, {1, 2}, {-1.6869138779375396557, 11.962631435322813262}},
      {-1, {-0.5, 0}, {-0.79402363234468936796, -0.77011175051037910968}},
      {0, {-0.5, 0}, {-0.79402363234468936796, 0.77011175051037910968}},
      {1, {-0.5, 0}, {-2.7720690151530819682, 7.499943028341875789}},
      {-1, {-2, 0.3}, {0.1212162902045344405, -1.7873997073596128864}},
      {0, {-2, 0.3}, {0.23972631129593416645, 1.5731309746156876746}},
      {0, {0, 10}, {1.643649599167290869, 1.0167969610306681028}},
      {2, {0, 10}, {-0.22716151345618761614, 12.548269576451846663}},
      {0, {-1e-3, 1e-3}, {-0.0009999969893125002084, 0.0010020029999790801008}},
      {-1, {-1e-3, 1e-3}, {-8.7334706626316221552, -0.88656509627661072098}},
      {-1, {100, 0}, {2.8257460539655977861, -5.2094031306977326104}},
      {0, {100, 0}, {3.3856301402900501849, 0.0}},
      {0, {-0.3, -1e-8}, {-0.48940222718021342358, -3.1949625401972860648e-8}},
      {1, {-0.3, -1e-8}, {-1.7813370234216285045, 7.5995247890204126136e-8}},
      {-1, {-0.3, -1e-8}, {-3.3002378323472997193, -7.4362943770339379248}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.k);
    CAPTURE(r.z);
    const C w = lambert_w(r.z, BranchIndex(r.k));
    CHECK(std::abs(w - r.w) <= 1e-13 * std::max(1.0, std::abs(r.w)));
  }
}

TEST_CASE("cut side: real arguments on a cut are limits from above") {
  const C w0 = lambert_w(C(-1, 0), kPrincipalBranch);
  CHECK(w0.imag() > 0);
  const C above = lambert_w(C(-1, 1e-300), kPrincipalBranch);
  CHECK(std::abs(w0 - above) < 1e-14);
  const C wm = lambert_w(C(-1, 0), kLowerBranch);
  CHECK(wm.imag() < 0);
  CHECK(std::abs(std::conj(wm) - w0) < 1e-14);
}

TEST_CASE("conjugate symmetry on branch 0") {
  for (double re = -3; re <= 3; re += 0.5) {
    for (double im = 0.25; im <= 3; im += 0.5) {
      const C z(re, im);
      CHECK(std::abs(lambert_w(std::conj(z)) - std::conj(lambert_w(z))) <= 1e-14 * std::max(1.0, std::abs(lambert_w(z))));
    }
  }
}

TEST_CASE("near the branch point the residual stays at roundoff") {
  // W is ill-conditioned here, so the value is only as good as sqrt(|z + 1/e|)
  // allows; the residual is the meaningful check.
  for (const int k : {-1, 0, 1}) {
    for (const double d : {1e-10, 1e-6, 1e-3}) {
      for (const double s : {-1.0, 1.0}) {
        const C z(-kInvE, s * d);
        const C w = lambert_w(z, BranchIndex(k));
        CHECK(std::abs(w_times_exp_w(w) - z) <= 4e-16);
      }
    }
  }
}

TEST_CASE("float instantiation") {
  CHECK(lambert_w(1.0f) == doctest::Approx(0.5671433f));
  CHECK(lambert_w(-0.1f, kLowerBranch) == doctest::Approx(-3.5771521f));
}
