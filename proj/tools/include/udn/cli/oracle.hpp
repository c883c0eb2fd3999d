#pragma once

// Reference values computed with GSL's QAGIU, a code path independent of the
// library's own quadrature and special-function implementations.

#include <functional>

namespace udn::oracle {

/// Integral of f over [a, inf); NumericFailure if GSL reports an error.
double integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol = 1e-12);

/// 2 * integral_1^inf z v / (v^alpha + z) dv
double psi(double z, double alpha);
/// integral_1^inf e^{-z t} t^{-nu} dt
double exp_integral(double nu, double z);
/// 1/Gamma(a) integral_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt
double tricomi_u(double a, double b, double z);

}  // namespace udn::oracle
