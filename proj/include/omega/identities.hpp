#pragma once

#include <complex>
#include <vector>

#include "omega/lambertw.hpp"

namespace omega {

using Complex = std::complex<double>;

/// z_1 ... z_n, each with the W branch it is taken on.
using ProductArguments = std::vector<BranchedPoint>;

/// Infinite power tower alpha^alpha^...: e^{-W0(-ln alpha)}. Outside
/// [e^{-e}, e^{1/e}] this is the analytic continuation, not a tower limit.
Complex tetration(Complex alpha);

/// The same tower parameterized by ln alpha. At the convergence boundary
/// ln alpha = 1/e the alpha form loses half its digits to rounding of alpha.
Complex tetration_from_log(Complex log_alpha);

/// W0(a b (1/W0(a) + 1/W0(b))); equals W0(a) + W0(b) when Re a > 0 or Re b > 0.
Complex addition_law_rhs(Complex a, Complex b);

/// Left fold f_2 = z1 z2 (1/W(z1) + 1/W(z2)), f_j = f_{j-1} z_j (1/W(f_{j-1}) + 1/W(z_j)).
/// Intermediate W(f_j) are taken on `fold_branch`.
Complex f_n(const ProductArguments& points, BranchIndex fold_branch = kPrincipalBranch);

/// (z1 ... zn) e^{-W(f_n)}, equal to W(z1) ... W(zn).
Complex omega_n_product(const ProductArguments& points, BranchIndex fold_branch = kPrincipalBranch);

/// Direct product of W(z_i) on their own branches.
Complex direct_product(const ProductArguments& points);

/// (r2 - r1) eps - [W(f2)/R + r1 + r2 - 2x] with f2 built from z1, z2.
double epsilon_x_relation(double r1, double r2, double R, double epsilon, double x, const BranchedPoint& z1,
                          const BranchedPoint& z2, BranchIndex fold_branch = kPrincipalBranch);

}  // namespace omega
