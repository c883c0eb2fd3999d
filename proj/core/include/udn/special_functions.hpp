#pragma once

namespace udn::special {

/// Gauss hypergeometric 2F1(1, 1 - 2/alpha; 2 - 2/alpha; x) for x <= 0, the
/// only parameter family the coverage formulas need.
/// Throws DomainError for x > 0 or alpha <= 2.
double hyp2f1_family(double x, double alpha);

/// psi(z) = 2z/(alpha-2) * 2F1(1, 1-2/alpha; 2-2/alpha; -z)
///        = 2 * integral_1^inf z v / (v^alpha + z) dv.
/// Non-negative, zero at z = 0, strictly increasing; grows like z^(2/alpha).
double psi(double z, double alpha);

/// Generalized exponential integral E_nu(z) = integral_1^inf e^{-zt} t^{-nu} dt
/// for real order nu and z > 0.
double exp_integral(double nu, double z);

/// e^z * E_nu(z); finite where E_nu(z) itself underflows.
double exp_integral_scaled(double nu, double z);

/// Tricomi's confluent hypergeometric function
/// U(a, b, z) = 1/Gamma(a) * integral_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
/// a > 0, z > 0.
double tricomi_u(double a, double b, double z);

/// log U(a, b, z); usable where U itself over- or underflows.
double log_tricomi_u(double a, double b, double z);

}  // namespace udn::special
