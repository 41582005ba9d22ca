#include "omega/poly.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace omega {

FactoredQuadratic from_quantum(double lambda, double q) {
  if (lambda == 0) throw DomainError("from_quantum: lambda must be nonzero");
  if (!(q > 0)) throw DomainError("from_quantum: q must be positive");
  return FactoredQuadratic{1.0 / q, 1.0 / (lambda * q), q, lambda * q};
}

Polynomial parse_polynomial(std::string_view text) {
  std::vector<double> coefficients;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string token(text.substr(start, comma - start));
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw DomainError("polynomial: empty coefficient in \"" + std::string(text) + "\"");
    token = token.substr(first, last - first + 1);
    double value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw DomainError("polynomial: bad coefficient \"" + token + "\"");
    }
    coefficients.push_back(value);
    start = comma + 1;
  }
  Polynomial::Coefficients c(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) c(static_cast<Eigen::Index>(i)) = coefficients[i];
  return Polynomial(std::move(c));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) out << ',';
    out << p.coefficient(i);
  }
  return out.str();
}

}  // namespace omega
