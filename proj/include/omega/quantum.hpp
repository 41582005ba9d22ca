#pragma once

#include <vector>

#include "omega/lambertw.hpp"
#include "omega/solver.hpp"

namespace omega {

/// Two attractive delta wells of strengths q and lambda q, a distance R apart.
struct WellSpec {
  double q = 1;
  double lambda = 1;
  double R = 1;

  void validate() const;
};

/// d = q + W_k(parity q R e^{-qR}) / R for equal charges.
double d_equal_charge(double q, double R, int parity, BranchIndex branch = kPrincipalBranch);

/// |d - q (1 + parity e^{-dR})|
double equal_charge_residual(double q, double R, int parity, double d);

struct BoundState {
  double d = 0;
  double energy = 0;
  RootCertificate certificate;       // of the canonical equation in d
  double determinant_residual = 0;   // (q - d)(q lambda - d) - q^2 lambda e^{-2dR}
  double pseudo_quadratic_residual = 0;
  bool at_continuum = false;         // d = 0: the state touches E = 0
};

/// Secular determinant of the 2x2 matching matrix.
double secular_determinant(const WellSpec& spec, double d);

/// |d - [q(1+lambda)/2 +- sqrt(q^2(1+lambda)^2 - 4 lambda q^2 (1 - e^{-2dR}))/2]|, best sign.
double pseudo_quadratic_residual(const WellSpec& spec, double d);

/// e^{-2dR} = (d - q)(d - lambda q)/(lambda q^2) as a solver object in d.
TranscendentalEquation canonical_equation(const WellSpec& spec);

/// All real d >= 0 up to q(1 + lambda) + 1, ascending.
std::vector<BoundState> d_general(const WellSpec& spec, const SolverConfig& config = {});

inline double energy(double d) { return -d * d / 2; }

}  // namespace omega
