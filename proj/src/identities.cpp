#include "omega/identities.hpp"

#include <cmath>
#include <string>

namespace omega {

namespace {

Complex nonzero_w(Complex z, BranchIndex branch, const char* what) {
  const Complex w = lambert_w(z, branch);
  if (w == Complex(0)) throw DegenerateError(std::string(what) + ": W vanishes, 1/W is undefined");
  return w;
}

}  // namespace

Complex tetration(Complex alpha) {
  if (alpha == Complex(0)) throw DomainError("tetration: alpha must be nonzero");
  return tetration_from_log(std::log(alpha));
}

Complex tetration_from_log(Complex log_alpha) {
  if (!std::isfinite(log_alpha.real()) || !std::isfinite(log_alpha.imag())) {
    throw DomainError("tetration: ln alpha must be finite");
  }
  return std::exp(-lambert_w(-log_alpha, kPrincipalBranch));
}

Complex addition_law_rhs(Complex a, Complex b) {
  if (a == Complex(0) || b == Complex(0)) throw DomainError("addition law: arguments must be nonzero");
  if (!(a.real() > 0 || b.real() > 0)) throw DomainError("addition law: requires Re(a) > 0 or Re(b) > 0");
  const Complex wa = nonzero_w(a, kPrincipalBranch, "addition law");
  const Complex wb = nonzero_w(b, kPrincipalBranch, "addition law");
  return lambert_w(a * b * (1.0 / wa + 1.0 / wb), kPrincipalBranch);
}

Complex f_n(const ProductArguments& points, BranchIndex fold_branch) {
  if (points.size() < 2) throw DomainError("f_n: needs at least two arguments");
  Complex f = points[0].z * points[1].z *
              (1.0 / nonzero_w(points[0].z, points[0].branch, "f_n") +
               1.0 / nonzero_w(points[1].z, points[1].branch, "f_n"));
  for (std::size_t i = 2; i < points.size(); ++i) {
    f = f * points[i].z *
        (1.0 / nonzero_w(f, fold_branch, "f_n") + 1.0 / nonzero_w(points[i].z, points[i].branch, "f_n"));
  }
  return f;
}

Complex omega_n_product(const ProductArguments& points, BranchIndex fold_branch) {
  if (points.empty()) throw DomainError("omega_n: needs at least one argument");
  if (points.size() == 1) return lambert_w(points[0]);
  Complex product = 1;
  for (const auto& p : points) product *= p.z;
  return product * std::exp(-lambert_w(f_n(points, fold_branch), fold_branch));
}

Complex direct_product(const ProductArguments& points) {
  Complex product = 1;
  for (const auto& p : points) product *= lambert_w(p);
  return product;
}

double epsilon_x_relation(double r1, double r2, double R, double epsilon, double x, const BranchedPoint& z1,
                          const BranchedPoint& z2, BranchIndex fold_branch) {
  if (!(R > 0)) throw DomainError("epsilon-x relation: R must be positive");
  const Complex w = lambert_w(f_n({z1, z2}, fold_branch), fold_branch);
  const Complex r = (r2 - r1) * epsilon - (w / R + r1 + r2 - 2 * x);
  // A consistent pair gives a real residual; an imaginary part counts against it.
  return std::copysign(std::abs(r), r.real());
}

}  // namespace omega
