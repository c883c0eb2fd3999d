#include "udn/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "udn/errors.hpp"
#include "udn/quadrature.hpp"
#include "udn/special_functions.hpp"

namespace udn {

using std::numbers::pi;

double AssociationPolicy::phi(double r, double lambda) const {
    const double base = 2.0 * pi * lambda * r;
    return is_closest() ? base * std::exp(-pi * lambda * r * r) : base;
}

AssociationPolicy AssociationPolicy::parse(std::string_view name) {
    if (name == "closest") return closest();
    if (name == "strongest") return strongest();
    throw UsageError("unknown association policy '" + std::string(name) + "' (closest|strongest)");
}

void NetworkConfig::validate() const {
    if (!(bs_density > 0.0) || !std::isfinite(bs_density)) throw DomainError("BS density must be > 0");
    if (!(sir_threshold > 0.0) || !std::isfinite(sir_threshold)) throw DomainError("SIR threshold must be > 0");
    pathloss.validate();
    los_model.validate();
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::GeneralQuadrature: return "general_quadrature";
        case Method::ClosedForm: return "closed_form";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

CoveragePoint CoveragePoint::make(double lambda, double theta, double pcov, Method method,
                                  std::optional<double> ci_halfwidth) {
    return {lambda, pcov, analytic::ase(theta, lambda, pcov), method, ci_halfwidth};
}

namespace analytic {
namespace {

constexpr double kInnerRel = 1e-8;
constexpr double kOuterRel = 1e-6;
constexpr double kTruncationRel = 1e-6;

void require_strongest_threshold(double theta) {
    if (theta < 1.0) {
        throw ValidityError("strongest-association formulas count at most one BS above threshold and need theta >= 1, got " +
                            std::to_string(theta));
    }
}

// Tolerance on an exponent integral X so that exp(-2 pi lambda X) is accurate
// to about kInnerRel.
quad::Tolerance exponent_tolerance(double lambda) {
    return {.abs = kInnerRel / (2.0 * pi * lambda), .rel = kInnerRel, .max_intervals = 4000};
}

// Horizontal distance beyond which s * l(t, h) < 1.
double knee_distance(double s, double h, double alpha) {
    const double d2 = std::pow(s, 2.0 / alpha) - h * h;
    return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

double positive_scale(std::initializer_list<double> candidates) {
    double s = 0.0;
    for (double c : candidates) s = std::max(s, c);
    return s > 0.0 ? s : 1.0;
}

// int_{lower}^inf (1 - 1/(1 + s l(t,h))) t dt with l = (t^2+h^2)^(-alpha/2).
double interference_exponent(double s, double lambda, double h, double alpha, double lower) {
    const double half_alpha = 0.5 * alpha;
    auto integrand = [=](double t) {
        const double q = std::pow(t * t + h * h, half_alpha) / s;
        return t / (1.0 + q);
    };
    const double scale = positive_scale({lower, h, knee_distance(s, h, alpha)});
    const auto res = quad::integrate_to_infinity(integrand, lower, scale, exponent_tolerance(lambda));
    return quad::require(res, "interference Laplace exponent");
}

// int_{lower}^inf p_LOS(t) (1/(1+s l_N) - 1/(1+s l_L)) t dt.
double los_correction_exponent(double s, const NetworkConfig& cfg, double lower) {
    const auto& pl = cfg.pathloss;
    const double h = pl.height;
    const double half_los = 0.5 * pl.alpha_los;
    const double half_nlos = 0.5 * pl.alpha_nlos;
    auto integrand = [&, h, s, half_los, half_nlos](double t) {
        const double p = cfg.los_model.p_los(t, h);
        if (p == 0.0) return 0.0;
        const double d2 = t * t + h * h;
        const double q_nlos = std::pow(d2, half_nlos) / s;
        const double q_los = std::pow(d2, half_los) / s;
        return p * t * (q_nlos - q_los) / ((1.0 + q_nlos) * (1.0 + q_los));
    };
    const auto tol = exponent_tolerance(cfg.bs_density);
    if (const auto* step = std::get_if<StepLos>(&cfg.los_model.variant())) {
        if (step->critical_distance <= lower) return 0.0;
        return quad::require(quad::integrate(integrand, lower, step->critical_distance, tol), "LOS correction");
    }
    const double scale = positive_scale({lower, h, knee_distance(s, h, pl.alpha_los)});
    return quad::require(quad::integrate_to_infinity(integrand, lower, scale, tol), "LOS correction");
}

double laplace_single_unchecked(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r,
                                Regime regime) {
    if (s == 0.0) return 1.0;
    const double x = interference_exponent(s, cfg.bs_density, cfg.pathloss.height, cfg.pathloss.alpha(regime),
                                           policy.nu(r));
    return std::exp(-2.0 * pi * cfg.bs_density * x);
}

double laplace_mixed_unchecked(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r) {
    const double nlos = laplace_single_unchecked(s, cfg, policy, r, Regime::Nlos);
    if (s == 0.0 || cfg.los_model.always_nlos(cfg.pathloss.height)) return nlos;
    const double j = los_correction_exponent(s, cfg, policy.nu(r));
    return nlos * std::exp(-2.0 * pi * cfg.bs_density * j);
}

void check_laplace_args(double s, double r) {
    if (!(s >= 0.0) || std::isinf(s)) throw DomainError("Laplace argument s must be finite and >= 0");
    if (!(r >= 0.0) || std::isinf(r)) throw DomainError("serving distance must be finite and >= 0");
}

void check_single_slope(double theta, double lambda, double h, double alpha) {
    if (!(theta > 0.0)) throw DomainError("SIR threshold must be > 0");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("BS density must be > 0");
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("BS height must be >= 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
}

}  // namespace

double laplace_single_regime(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r,
                             Regime regime) {
    cfg.validate();
    check_laplace_args(s, r);
    return laplace_single_unchecked(s, cfg, policy, r, regime);
}

double laplace_mixed(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r) {
    cfg.validate();
    check_laplace_args(s, r);
    return laplace_mixed_unchecked(s, cfg, policy, r);
}

double coverage_general(const NetworkConfig& cfg, AssociationPolicy policy) {
    cfg.validate();
    const double theta = cfg.sir_threshold;
    if (!policy.is_closest()) require_strongest_threshold(theta);
    const double lambda = cfg.bs_density;
    const auto& pl = cfg.pathloss;
    const double h = pl.height;
    const double half_los = 0.5 * pl.alpha_los;
    const double half_nlos = 0.5 * pl.alpha_nlos;

    auto integrand = [&](double r) {
        const double p = cfg.los_model.p_los(r, h);
        const double d2 = r * r + h * h;
        double value = 0.0;
        if (p > 0.0) value += p * laplace_mixed_unchecked(theta * std::pow(d2, half_los), cfg, policy, r);
        if (p < 1.0) value += (1.0 - p) * laplace_mixed_unchecked(theta * std::pow(d2, half_nlos), cfg, policy, r);
        return value * policy.phi(r, lambda);
    };

    std::vector<double> breaks;
    if (const auto* step = std::get_if<StepLos>(&cfg.los_model.variant())) breaks.push_back(step->critical_distance);
    const quad::Tolerance tol{.abs = 1e-14, .rel = kOuterRel, .max_intervals = 2000};
    const double scale = 1.0 / std::sqrt(pi * lambda);

    const double first =
        quad::require(quad::integrate_to_infinity(integrand, 0.0, scale, tol, breaks), "coverage outer integral");
    const double second = quad::require(quad::integrate_to_infinity(integrand, 0.0, 2.0 * scale, tol, breaks),
                                        "coverage outer integral (doubled radius)");
    if (std::abs(first - second) > kTruncationRel * std::abs(second) + 1e-12) {
        throw NumericFailure("coverage outer integral is not stable under doubling the mapping radius (" +
                             std::to_string(first) + " vs " + std::to_string(second) + ")");
    }
    return second;
}

double coverage_closest_h0(double theta, double alpha) {
    if (!(theta > 0.0)) throw DomainError("SIR threshold must be > 0");
    return 1.0 / (1.0 + special::psi(theta, alpha));
}

double coverage_strongest_h0(double theta, double alpha) {
    if (!(theta > 0.0)) throw DomainError("SIR threshold must be > 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    require_strongest_threshold(theta);
    return alpha * std::sin(2.0 * pi / alpha) / (2.0 * pi * std::pow(theta, 2.0 / alpha));
}

double coverage_closest_height(double theta, double lambda, double h, double alpha) {
    check_single_slope(theta, lambda, h, alpha);
    const double psi_theta = special::psi(theta, alpha);
    return std::exp(-pi * lambda * h * h * psi_theta) / (1.0 + psi_theta);
}

double coverage_strongest_height(double theta, double lambda, double h, double alpha) {
    check_single_slope(theta, lambda, h, alpha);
    require_strongest_threshold(theta);
    if (h == 0.0) return coverage_strongest_h0(theta, alpha);
    const double x = pi * lambda * h * h;
    auto integrand = [=](double r) {
        return std::exp(-x * special::psi(theta * std::pow(r / h, alpha), alpha)) * r;
    };
    const double scale = 1.0 / std::sqrt(pi * lambda);
    const auto res = quad::integrate_to_infinity(integrand, h, scale, {.abs = 0.0, .rel = 1e-10});
    return 2.0 * pi * lambda * quad::require(res, "strongest-association coverage");
}

double ase(double theta, double lambda, double pcov) { return lambda * pcov * std::log2(1.0 + theta); }

double lambda_opt_closest(double theta, double h, double alpha) {
    if (!(theta > 0.0)) throw DomainError("SIR threshold must be > 0");
    if (!(h > 0.0)) throw DomainError("with h = 0 coverage does not depend on density: ASE has no finite optimum");
    const double psi_theta = special::psi(theta, alpha);
    const double result = 1.0 / (pi * h * h * psi_theta);
    if (!(psi_theta > std::numeric_limits<double>::min()) || !std::isfinite(result))
        throw DomainError("psi(theta) underflows: optimal density diverges as theta -> 0");
    return result;
}

double laplace_height_split(double s, double lambda, double h, double alpha, AssociationPolicy policy, double r) {
    check_laplace_args(s, r);
    if (!(lambda > 0.0)) throw DomainError("BS density must be > 0");
    if (!(h >= 0.0) || std::isinf(h)) throw DomainError("BS height must be >= 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    if (s == 0.0) return 1.0;
    const double lower = policy.nu(r);
    const double base = interference_exponent(s, lambda, 0.0, alpha, lower);
    double gain = 0.0;
    if (h > 0.0) {
        auto integrand = [=](double t) { return t / (1.0 + std::pow(t, alpha) / s); };
        const double upper = std::sqrt(lower * lower + h * h);
        gain = quad::require(quad::integrate(integrand, lower, upper, exponent_tolerance(lambda)),
                             "height correction");
    }
    return std::exp(-2.0 * pi * lambda * base) * std::exp(2.0 * pi * lambda * gain);
}

double expected_interference_nearest(double lambda, double h, double alpha) {
    if (!(lambda > 0.0)) throw DomainError("BS density must be > 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    if (!(h > 0.0)) throw DomainError("expected interference diverges at h = 0");
    const double x = pi * lambda * h * h;
    return pi * lambda * std::pow(h, 2.0 - alpha) * special::exp_integral_scaled(0.5 * alpha, x);
}

namespace {

void check_series_args(double lambda, double h, double alpha) {
    if (!(lambda > 0.0)) throw DomainError("BS density must be > 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    if (!(h > 0.0)) throw DomainError("expected interference diverges at h = 0");
}

// Kummer's transformation U(a, b, x) = x^{1-b} U(a-b+1, 2-b, x) turns term i
// into (pi lambda)^{alpha/2} U(alpha/2, 1 + alpha/2 - i, x): fixed first
// parameter, second one stepping down by 1.
double series_term_unchecked(std::size_t i, double lambda, double h, double alpha) {
    const double a = 0.5 * alpha;
    const double x = pi * lambda * h * h;
    return std::exp(a * std::log(pi * lambda) + special::log_tricomi_u(a, 1.0 + a - static_cast<double>(i), x));
}

}  // namespace

double interference_series_term(std::size_t i, double lambda, double h, double alpha) {
    if (i == 0) throw DomainError("series index starts at 1");
    check_series_args(lambda, h, alpha);
    return series_term_unchecked(i, lambda, h, alpha);
}

InterferenceBound expected_interference_bound(double lambda, double h, double alpha, double tol) {
    check_series_args(lambda, h, alpha);
    if (!(tol > 0.0)) throw DomainError("series tolerance must be > 0");
    constexpr std::size_t kMaxTerms = 20'000'000;
    constexpr std::size_t kCheckEvery = 64;
    const double a = 0.5 * alpha;
    const double x = pi * lambda * h * h;
    // Past i ~ 2x the contiguous relation
    //   (i-1) t_i = x t_{i-2} + (i-1-a-x) t_{i-1}
    // is stable; before that it amplifies rounding, so terms are computed
    // directly. Every kCheckEvery terms a direct value replaces the recurrence.
    std::size_t direct_until = static_cast<std::size_t>(2.0 * x) + 16;
    InterferenceBound out;
    double t2 = 0.0, t1 = 0.0;  // t_{i-2}, t_{i-1}
    for (std::size_t i = 1; i <= kMaxTerms; ++i) {
        double term;
        if (i <= direct_until) {
            term = series_term_unchecked(i, lambda, h, alpha);
        } else {
            const double k = static_cast<double>(i - 1);
            term = (x * t2 + (k - a - x) * t1) / k;
            if (i % kCheckEvery == 0) {
                const double exact = series_term_unchecked(i, lambda, h, alpha);
                if (std::abs(term - exact) > 1e-10 * exact) direct_until = 2 * i;
                term = exact;
            }
        }
        if (i > 1 && !(term < t1))
            throw NumericFailure("interference series terms stopped decreasing at i = " + std::to_string(i));
        out.value += term;
        out.terms = i;
        if (term < tol * out.value) return out;
        t2 = t1;
        t1 = term;
    }
    throw NumericFailure("interference series did not reach tolerance within " + std::to_string(kMaxTerms) +
                         " terms");
}

LimitsReport coverage_limits_check(AssociationPolicy policy, double theta, double h, double alpha) {
    if (!(h > 0.0)) throw DomainError("limits are stated for h > 0");
    constexpr double kLow = 1e-12;
    constexpr double kHigh = 1e-1;
    LimitsReport rep;
    if (policy.is_closest()) {
        rep.baseline = coverage_closest_h0(theta, alpha);
        rep.low_density_value = coverage_closest_height(theta, kLow, h, alpha);
        rep.high_density_value = coverage_closest_height(theta, kHigh, h, alpha);
    } else {
        rep.baseline = coverage_strongest_h0(theta, alpha);
        rep.low_density_value = coverage_strongest_height(theta, kLow, h, alpha);
        rep.high_density_value = coverage_strongest_height(theta, kHigh, h, alpha);
    }
    rep.low_density_matches = std::abs(rep.low_density_value - rep.baseline) < 1e-3;
    rep.high_density_decayed = rep.high_density_value < 1e-2;
    return rep;
}

Method method_for(const NetworkConfig& cfg) {
    const double h = cfg.pathloss.height;
    return cfg.los_model.always_nlos(h) || cfg.los_model.always_los(h) ? Method::ClosedForm
                                                                       : Method::GeneralQuadrature;
}

CoveragePoint evaluate(const NetworkConfig& cfg, AssociationPolicy policy) {
    cfg.validate();
    const double h = cfg.pathloss.height;
    const double theta = cfg.sir_threshold;
    const double lambda = cfg.bs_density;
    if (method_for(cfg) == Method::GeneralQuadrature)
        return CoveragePoint::make(lambda, theta, coverage_general(cfg, policy), Method::GeneralQuadrature);
    const double alpha = cfg.los_model.always_los(h) ? cfg.pathloss.alpha_los : cfg.pathloss.alpha_nlos;
    const double pcov = policy.is_closest() ? coverage_closest_height(theta, lambda, h, alpha)
                                            : coverage_strongest_height(theta, lambda, h, alpha);
    return CoveragePoint::make(lambda, theta, pcov, Method::ClosedForm);
}

}  // namespace analytic
}  // namespace udn
