#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "omega/lambertw.hpp"
#include "omega/solver.hpp"

namespace omega {

// ---- two bodies ----

/// y^2 = a^2 + (x^2 - a^2) e^{2x} e^{-2y}  <->  e^{-2dR} = (1-d)(lambda-d)/lambda
/// with lambda = 2x/(x+a) - 1, R = -(x+a), d = (x-y)/(x+a).
struct TwoBodyMap {
  double x;
  double a;
  double lambda;
  double R;

  [[nodiscard]] double d_of_y(double y) const { return (x - y) / (x + a); }
  [[nodiscard]] double y_of_d(double d) const { return x - d * (x + a); }
  [[nodiscard]] bool physical() const { return R > 0; }
};

TwoBodyMap two_body_roundtrip(double x, double a);

/// y^2 - a^2 - (x^2 - a^2) e^{2x - 2y}, scaled by the largest term.
double two_body_residual(double x, double a, double y);

/// e^{-2dR} - (1-d)(lambda-d)/lambda, scaled by the largest term.
double canonical_residual(double lambda, double R, double d);

struct TwoBodySolution {
  double y;
  double d;
  double two_body_residual;
  double canonical_residual;
};

/// Roots y via the canonical equation; requires a physical map (R > 0).
std::vector<TwoBodySolution> two_body_solve(double x, double a, const SolverConfig& config = {});

// ---- three bodies ----

/// Decaying uses exp(-K V R |sin|); AsPrinted uses exp(+K V R |sin|).
/// Only Decaying reproduces the q = 0 reduction.
enum class ExponentConvention { Decaying, AsPrinted };

struct ThreeBodySpec {
  double m1 = 1;
  double m2 = 1;
  double m3 = 1;
  double q = 0;
  double K = 1;
  double R = 1;
  ExponentConvention convention = ExponentConvention::Decaying;

  void validate() const;
  [[nodiscard]] double total_mass() const { return m1 + m2 + m3; }
};

/// K R sqrt(3) / 4
inline double reduced_scale(double K, double R) { return K * R * std::sqrt(3.0) / 4; }

/// Sign of sin(theta); at a zero, the sign just past it (sign of cos theta).
int regime_sign(double theta);

struct ThreeBodySigns {
  int s1;
  int s2;
  int sq;
};
ThreeBodySigns three_body_signs(double q);

/// (V-m1)(V-m2)(V-m3) - [m1 m2 (V - s1 s2 m3) E(q) + m1 m3 (V + sq s2 m2) E(q+pi/3)
///                       + m2 m3 (V - sq s1 m1) E(q-pi/3)],  E(t) = exp(+-K V R |sin t|).
double three_body_residual(const ThreeBodySpec& spec, double V);

/// Default scan: +-(m1+m2+m3)(1 + 4/(K R)).
Interval three_body_interval(const ThreeBodySpec& spec);

/// Certified real roots; V = 0 carries the "trivial" flag.
std::vector<RootCertificate> three_body_solve(const ThreeBodySpec& spec, const SolverConfig& config = {});
std::vector<RootCertificate> three_body_solve(const ThreeBodySpec& spec, Interval interval,
                                              const SolverConfig& config = {});

/// e^{-2 R_t V} = (V - m3)(V - (m1+m2)) / (m3 (m1+m2)).
TranscendentalEquation three_body_special_q0(double m1, double m2, double m3, double R_t);

/// Special angles where one exponential drops out.
enum class SpecialAngle { Zero, PlusPiThird, MinusPiThird, TwoPiThirds };
double angle_value(SpecialAngle angle);
/// Index (1-based) of the mass isolated at this angle: 3, 1, 2, 2.
int isolated_mass(SpecialAngle angle);

/// e^{-2 R_t V} = (V - m_i)(V - M_i)/(m_i M_i), M_i the sum of the other two masses.
TranscendentalEquation special_angle_equation(SpecialAngle angle, double m1, double m2, double m3, double R_t);

/// Double-root case m_i = M_i = m: V = m + W_k(+-R_t m e^{-R_t m}) / R_t.
struct ClosedFormRoot {
  int sign;          // +-
  BranchIndex branch;
  std::complex<double> V;
  bool real;
};
std::vector<ClosedFormRoot> double_root_closed_forms(double m, double R_t);

/// The alternative form V = m - W_k(+-R_t m e^{R_t m}) / R_t; may be complex.
std::vector<ClosedFormRoot> double_root_printed_forms(double m, double R_t);

/// q = pi/6, equal masses, c = K R / 2. The full residual factors into
///   e^{-cV} = -(V - m)/m                 (first)
///   e^{-cV} = (V - m)^2 / (m (V + m))    (second)
/// with e^{+cV} on the left under AsPrinted.
struct PiSixthFactors {
  TranscendentalEquation first;
  TranscendentalEquation second;
};
PiSixthFactors pi_sixth_factors(double m, double c, ExponentConvention convention = ExponentConvention::Decaying);

/// Roots of the first factor: V = m + W_k(-mc e^{-mc})/c (Decaying).
std::vector<ClosedFormRoot> pi_sixth_closed_forms(double m, double c);

/// The alternative closed form V = m (1 - W(mc e^{mc})/(mc)); evaluates to the trivial root.
double pi_sixth_printed_form(double m, double c);

/// Small-q rational approximation on 0 < q < pi/3:
///   e^{-c sqrt(3) cos(q) V} = N(V) / D(V),
/// with f = e^{c sin(q) V} replaced by its Taylor polynomial of the given
/// orders in N and D, and the common factor V removed.
struct TruncationOrder {
  int numerator;
  int denominator;
};

struct RationalApproximation {
  TranscendentalEquation equation;
  std::vector<RootCertificate> roots;
  std::vector<RootCertificate> exact_roots;
  double max_disagreement;   // worst |V_approx - V_exact| over matched roots
  bool truncation_warning;   // max_disagreement > 1e-4 or a root unmatched
};

TranscendentalEquation three_body_rational_q(const ThreeBodySpec& spec, TruncationOrder order);
RationalApproximation three_body_rational_q_compare(const ThreeBodySpec& spec, TruncationOrder order,
                                                    const SolverConfig& config = {});

}  // namespace omega
