#pragma once

#include <vector>

namespace brex {

/// Distinct real roots of a3 z^3 + a2 z^2 + a1 z + a0 (a3 != 0), ascending.
/// Cardano on the depressed cubic with the trigonometric form when the
/// discriminant is negative, followed by a Newton polish on the original
/// polynomial. A double root is reported once.
std::vector<double> cubic_real_roots(double a3, double a2, double a1, double a0);

}  // namespace brex
