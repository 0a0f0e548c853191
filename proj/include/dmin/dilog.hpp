#pragma once

namespace dmin {

/// F(x) = integral of arctan(e^u) over (-inf, x] = Im Li2(i e^x).
double dilog_F(double x);

/// Gudermannian function, 2 arctan(e^x) - pi/2.
double gudermannian(double x);

}  // namespace dmin
