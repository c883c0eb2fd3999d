#include "udn/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "udn/errors.hpp"
#include "udn/quadrature.hpp"

namespace udn::special {
namespace {

constexpr double kSeriesEps = 1e-16;
constexpr int kMaxSeriesTerms = 20000;

void check_alpha(double alpha) {
    if (!(alpha > 2.0) || !std::isfinite(alpha))
        throw DomainError("pathloss exponent must be finite and > 2, got " + std::to_string(alpha));
}

// sum_n (b)_n / (c)_n x^n, i.e. 2F1(1, b; c; x); converges for |x| < 1.
double series_one_b_c(double b, double c, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        term *= (b + n) / (c + n) * x;
        sum += term;
        if (std::abs(term) < kSeriesEps * std::abs(sum)) return sum;
    }
    throw NumericFailure("2F1 series did not converge at x = " + std::to_string(x));
}

// -log(sin x / x), accurate for small x.
double neg_log_sinc(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return x2 * (1.0 / 6.0 + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 / 37800.0)));
    }
    return -std::log(std::sin(x) / x);
}

// E_nu(z) for 0 < z < 1 from the power series
//   E_nu(z) = Gamma(1-nu) z^{nu-1} - sum_k (-z)^k / (k! (1-nu+k)).
// Near a positive integer order m the Gamma term and the k = m-1 term are
// both O(1/(nu-m)); they are combined analytically.
double exp_integral_series(double nu, double z) {
    const long m = std::lround(nu);
    const double eps = nu - static_cast<double>(m);
    double sum = 0.0;
    double power = 1.0;  // (-z)^k / k!
    for (long k = 0; k < kMaxSeriesTerms; ++k) {
        if (k > 0) power *= -z / static_cast<double>(k);
        if (m >= 1 && k == m - 1) continue;
        const double term = -power / (1.0 - nu + static_cast<double>(k));
        sum += term;
        if (k > m && std::abs(term) < kSeriesEps * std::abs(sum)) break;
    }
    if (m <= 0) return sum + std::tgamma(1.0 - nu) * std::pow(z, nu - 1.0);

    // (-1)^m z^{m-1} / (m-1)! * B,  B = (g(eps) - 1) / eps with
    // g = (pi eps / sin(pi eps)) z^eps Gamma(m) / Gamma(m + eps).
    double log_factorial = 0.0;
    double harmonic = 0.0;
    for (long j = 1; j < m; ++j) {
        log_factorial += std::log(static_cast<double>(j));
        harmonic += 1.0 / static_cast<double>(j);
    }
    const double log_z = std::log(z);
    double bracket = 0.0;
    if (eps == 0.0) {
        const double digamma_m = -std::numbers::egamma + harmonic;
        bracket = log_z - digamma_m;
    } else {
        double log_gamma_ratio = std::lgamma(1.0 + eps);
        for (long j = 1; j < m; ++j) log_gamma_ratio += std::log1p(eps / static_cast<double>(j));
        const double log_g = neg_log_sinc(std::numbers::pi * eps) + eps * log_z - log_gamma_ratio;
        bracket = std::expm1(log_g) / eps;
    }
    const double magnitude = std::exp(static_cast<double>(m - 1) * log_z - log_factorial);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sum + sign * magnitude * bracket;
}

// e^z E_nu(z) for z >= 1 by the continued fraction (modified Lentz).
double exp_integral_cf_scaled(double nu, double z) {
    constexpr double tiny = 1e-300;
    double b = z + nu;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        const double an = -static_cast<double>(i) * (nu - 1.0 + static_cast<double>(i));
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kSeriesEps) return h;
    }
    throw NumericFailure("E_nu continued fraction did not converge");
}

void check_exp_integral_args(double nu, double z) {
    if (!(z > 0.0)) throw DomainError("exp_integral requires z > 0");
    if (!std::isfinite(nu)) throw DomainError("exp_integral requires a finite order");
}

double softplus(double y) { return y > 30.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }
double logistic(double y) { return y >= 0.0 ? 1.0 / (1.0 + std::exp(-y)) : std::exp(y) / (1.0 + std::exp(y)); }

}  // namespace

double hyp2f1_family(double x, double alpha) {
    check_alpha(alpha);
    if (x > 0.0 || std::isnan(x)) throw DomainError("hyp2f1_family is only defined here for arguments <= 0");
    const double delta = 2.0 / alpha;
    const double b = 1.0 - delta;
    const double c = 2.0 - delta;
    if (x >= -0.5) return series_one_b_c(b, c, x);
    if (x >= -2.0) {
        // Pfaff: 2F1(1,b;c;x) = (1-x)^{-1} 2F1(1, c-b; c; x/(x-1)), c - b = 1.
        const double w = x / (x - 1.0);
        return series_one_b_c(1.0, c, w) / (1.0 - x);
    }
    // Connection to 1/x. With a = 1 the second solution has a terminating
    // series, leaving
    //   2F1 = (1-delta) [ pi/sin(pi delta) z^{delta-1} - F(-1/z) / (delta z) ],
    //   F(y) = 2F1(1, delta; 1+delta; y) = sum_n delta/(delta+n) y^n,  z = -x.
    const double z = -x;
    if (std::isinf(z)) return 0.0;
    const double y = -1.0 / z;
    double power = 1.0;
    double f = 1.0;
    for (int n = 1; n < kMaxSeriesTerms; ++n) {
        power *= y;
        const double term = delta / (delta + n) * power;
        f += term;
        if (std::abs(term) < kSeriesEps * std::abs(f)) break;
    }
    const double reflection = std::numbers::pi / std::sin(std::numbers::pi * delta);
    return (1.0 - delta) * (reflection * std::pow(z, delta - 1.0) - f / (delta * z));
}

double psi(double z, double alpha) {
    check_alpha(alpha);
    if (!(z >= 0.0)) throw DomainError("psi requires z >= 0");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return z;
    return 2.0 * z / (alpha - 2.0) * hyp2f1_family(-z, alpha);
}

double exp_integral(double nu, double z) {
    check_exp_integral_args(nu, z);
    if (z < 1.0) return exp_integral_series(nu, z);
    return std::exp(-z) * exp_integral_cf_scaled(nu, z);
}

double exp_integral_scaled(double nu, double z) {
    check_exp_integral_args(nu, z);
    if (z < 1.0) return std::exp(z) * exp_integral_series(nu, z);
    return exp_integral_cf_scaled(nu, z);
}

double log_tricomi_u(double a, double b, double z) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("tricomi_u requires a > 0");
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("tricomi_u requires z > 0");
    if (!std::isfinite(b)) throw DomainError("tricomi_u requires a finite b");

    // With t = e^y the integrand becomes exp(F(y)),
    //   F(y) = a y - z e^y + (b-a-1) log(1+e^y),
    // smooth, decaying like e^{a y} on the left and double-exponentially on
    // the right.
    const double k = b - a - 1.0;
    auto F = [=](double y) { return a * y - z * std::exp(y) + k * softplus(y); };
    auto dF = [=](double y) { return a - z * std::exp(y) + k * logistic(y); };

    double lo = -1.0;
    double hi = 1.0;
    while (dF(lo) <= 0.0) lo = 2.0 * lo - 1.0;
    while (dF(hi) >= 0.0) hi = 2.0 * hi + 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (dF(mid) > 0.0 ? lo : hi) = mid;
    }
    const double mode = 0.5 * (lo + hi);
    const double peak = F(mode);

    constexpr double kCut = 70.0;  // e^-70 relative to the peak is negligible
    double left = 1.0;
    while (F(mode - left) > peak - kCut) left *= 2.0;
    double right = 1.0;
    while (F(mode + right) > peak - kCut) right *= 2.0;

    auto integrand = [=](double y) { return std::exp(F(y) - peak); };
    const std::array<double, 3> pts{mode - left, mode, mode + right};
    const auto res = quad::integrate(integrand, std::span<const double>(pts), {.abs = 0.0, .rel = 1e-13});
    if (!res.converged && res.error > 1e-10 * std::abs(res.value))
        throw NumericFailure("tricomi_u quadrature did not converge");
    return peak + std::log(res.value) - std::lgamma(a);
}

double tricomi_u(double a, double b, double z) { return std::exp(log_tricomi_u(a, b, z)); }

}  // namespace udn::special
