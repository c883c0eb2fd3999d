#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "udn/propagation.hpp"

namespace udn {

enum class Association { Closest, Strongest };

/// Serving-BS selection rule together with its two kernels:
/// phi(r) (distance pdf for closest; intensity 2*pi*lambda*r for strongest)
/// and nu(r) (lower limit of the interference integral).
class AssociationPolicy {
public:
    constexpr AssociationPolicy(Association kind = Association::Closest) : kind_(kind) {}

    static constexpr AssociationPolicy closest() { return AssociationPolicy(Association::Closest); }
    static constexpr AssociationPolicy strongest() { return AssociationPolicy(Association::Strongest); }

    constexpr Association kind() const { return kind_; }
    constexpr bool is_closest() const { return kind_ == Association::Closest; }

    double phi(double r, double lambda) const;
    double nu(double r) const { return is_closest() ? r : 0.0; }

    std::string_view name() const { return is_closest() ? "closest" : "strongest"; }
    static AssociationPolicy parse(std::string_view name);

    friend constexpr bool operator==(AssociationPolicy, AssociationPolicy) = default;

private:
    Association kind_;
};

struct NetworkConfig {
    double bs_density = 1e-3;  // BS per m^2
    PathlossParams pathloss;
    LosModel los_model;
    double sir_threshold = 1.0;

    void validate() const;
};

enum class Method { GeneralQuadrature, ClosedForm, MonteCarlo };

std::string_view to_string(Method m);

/// One evaluated (lambda, coverage, ASE) triple.
struct CoveragePoint {
    double lambda = 0.0;
    double pcov = 0.0;
    double ase = 0.0;  // bps/Hz/m^2
    Method method = Method::ClosedForm;
    std::optional<double> ci_halfwidth;

    /// Fills `ase` as lambda * pcov * log2(1 + theta).
    static CoveragePoint make(double lambda, double theta, double pcov, Method method,
                              std::optional<double> ci_halfwidth = std::nullopt);
};

namespace analytic {

/// exp(-2 pi lambda int_{nu(r)}^inf (1 - 1/(1 + s l_Q(t,h))) t dt): Laplace
/// transform of the interference when every interferer is in regime Q.
double laplace_single_regime(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r,
                             Regime regime);

/// Laplace transform of the interference with distance-dependent LOS
/// probability: the all-NLOS transform times a LOS correction factor <= 1.
double laplace_mixed(double s, const NetworkConfig& cfg, AssociationPolicy policy, double r);

/// Coverage probability for any LOS model by nested quadrature.
/// Strongest association requires theta >= 1 (ValidityError otherwise).
double coverage_general(const NetworkConfig& cfg, AssociationPolicy policy);

/// h = 0 baselines; both independent of the BS density.
double coverage_closest_h0(double theta, double alpha);
double coverage_strongest_h0(double theta, double alpha);

/// Single-slope coverage with elevated BSs.
double coverage_closest_height(double theta, double lambda, double h, double alpha);
double coverage_strongest_height(double theta, double lambda, double h, double alpha);

double ase(double theta, double lambda, double pcov);

/// Density maximising lambda * coverage_closest_height, 1/(pi h^2 psi(theta)).
/// Throws DomainError for h = 0 (no finite optimum) or underflowing psi(theta).
double lambda_opt_closest(double theta, double h, double alpha);

/// Single-slope Laplace transform written as the h = 0 transform times
/// exp(2 pi lambda int_{nu}^{sqrt(nu^2+h^2)} ...), a factor >= 1.
double laplace_height_split(double s, double lambda, double h, double alpha, AssociationPolicy policy,
                            double r);

/// Mean received power from the BS nearest to the typical UE,
/// pi lambda h^{2-alpha} e^{pi lambda h^2} E_{alpha/2}(pi lambda h^2).
double expected_interference_nearest(double lambda, double h, double alpha);

/// i-th term (i >= 1) of the expected-interference series,
/// (pi lambda)^i h^{2i-alpha} U(i, i+1-alpha/2, pi lambda h^2).
double interference_series_term(std::size_t i, double lambda, double h, double alpha);

struct InterferenceBound {
    double value = 0.0;
    std::size_t terms = 0;
};

/// Partial sum of the series, stopped once a term drops below tol * sum.
/// Strict upper bound on the mean interference under strongest association.
InterferenceBound expected_interference_bound(double lambda, double h, double alpha, double tol = 1e-8);

struct LimitsReport {
    double baseline = 0.0;            // h = 0 coverage
    double low_density_value = 0.0;   // coverage at lambda = 1e-12
    double high_density_value = 0.0;  // coverage at lambda = 1e-1
    bool low_density_matches = false; // within 1e-3 of the baseline
    bool high_density_decayed = false;// below 1e-2
};

LimitsReport coverage_limits_check(AssociationPolicy policy, double theta, double h, double alpha);

/// Method `evaluate` uses for this configuration.
Method method_for(const NetworkConfig& cfg);

/// Picks the closed form when every link shares one regime (Constant(0) or
/// Constant(1), or buildings that never block), the nested quadrature otherwise.
CoveragePoint evaluate(const NetworkConfig& cfg, AssociationPolicy policy);

}  // namespace analytic
}  // namespace udn
