#include "obsent/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "obsent/errors.hpp"

namespace obsent {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_domain(int order, double x) {
  if (std::abs(order) > kMaxBesselOrder) {
    throw ConfigError("Bessel order " + std::to_string(order) + " exceeds the supported limit " +
                      std::to_string(kMaxBesselOrder));
  }
  if (!(x >= 0.0) || x > kMaxBesselArgument) {
    throw ConfigError("Bessel argument " + std::to_string(x) + " outside [0, " +
                      std::to_string(kMaxBesselArgument) + "]");
  }
}

}  // namespace

std::vector<double> bessel_j_orders(int max_order, double x) {
  if (max_order < 0) throw ConfigError("negative maximum Bessel order");
  check_domain(max_order, x);

  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  // Start well above both the highest requested order and the turning point
  // n ~ x, where J_n(x) has become negligible. The start order is even so the
  // sum rule picks up every even term.
  const double reach = std::max(static_cast<double>(max_order), x);
  int start = static_cast<int>(reach + 40.0 + 2.0 * std::sqrt(40.0 * reach));
  start += start % 2;

  std::vector<double> work(static_cast<std::size_t>(start) + 2, 0.0);
  double next = 0.0;  // J_{k+1}
  double curr = 1e-30;  // J_k, arbitrary seed
  work[static_cast<std::size_t>(start)] = curr;
  const double two_over_x = 2.0 / x;
  for (int k = start; k > 0; --k) {
    const double prev = static_cast<double>(k) * two_over_x * curr - next;
    next = curr;
    curr = prev;
    work[static_cast<std::size_t>(k - 1)] = curr;
    if (std::abs(curr) > kRescaleAbove) {
      for (int i = k - 1; i <= start; ++i) work[static_cast<std::size_t>(i)] *= kRescaleBy;
      curr *= kRescaleBy;
      next *= kRescaleBy;
    }
  }

  double sum = work[0];
  for (int k = 2; k <= start; k += 2) sum += 2.0 * work[static_cast<std::size_t>(k)];
  for (int n = 0; n <= max_order; ++n) {
    out[static_cast<std::size_t>(n)] = work[static_cast<std::size_t>(n)] / sum;
  }
  return out;
}

double bessel_j(int n, double x) {
  check_domain(n, x);
  const int order = std::abs(n);
  const double value = bessel_j_orders(order, x)[static_cast<std::size_t>(order)];
  return (n < 0 && (order % 2) == 1) ? -value : value;
}

double bessel_reference_entropy(double t, int span) {
  if (span < 2) throw ConfigError("Bessel reference span must be at least 2");
  if (!(t >= 0.0)) throw ConfigError("time must be non-negative");
  const int half = span / 2;
  // Orders run from 1 - span/2 to span - span/2; |order| <= span/2.
  const int lowest = 1 - half;
  const int highest = span - half;
  const std::vector<double> J = bessel_j_orders(std::max(std::abs(lowest), highest), 2.0 * t);

  double captured = 0.0;
  double entropy = 0.0;
  for (int order = lowest; order <= highest; ++order) {
    const double v = J[static_cast<std::size_t>(std::abs(order))];
    const double p = v * v;
    captured += p;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  if (captured < 1.0 - kBesselNormCapture) {
    throw NumericalError("Bessel span " + std::to_string(span) + " captures only " +
                         std::to_string(captured) + " of the norm at t = " + std::to_string(t));
  }
  return entropy;
}

}  // namespace obsent
