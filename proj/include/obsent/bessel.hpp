#pragma once

#include <vector>

namespace obsent {

// Supported domain for the integer-order Bessel routines. Within
// |n| <= 300, 0 <= x <= 100 the absolute error is below 1e-12.
inline constexpr int kMaxBesselOrder = 4096;
inline constexpr double kMaxBesselArgument = 1000.0;

// J_0(x) .. J_{max_order}(x) by Miller's downward recurrence, normalized with
// the sum rule J_0 + 2 sum_{k>=1} J_{2k} = 1. Throws ConfigError outside the
// supported domain.
std::vector<double> bessel_j_orders(int max_order, double x);

// J_n(x) for integer n, using J_{-n} = (-1)^n J_n.
double bessel_j(int n, double x);

// -sum_j p_j ln p_j with p_j = J_{j - span/2}(2t)^2, j = 1..span. This is the
// finest-grained entropy of a particle released from one site of an infinite
// clean chain. Throws NumericalError when the span captures less than
// 1 - 1e-12 of the probability.
double bessel_reference_entropy(double t, int span);

inline constexpr double kBesselNormCapture = 1e-12;

}  // namespace obsent
