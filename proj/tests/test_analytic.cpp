#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "udn/analytic.hpp"
#include "udn/errors.hpp"
#include "udn/quadrature.hpp"
#include "udn/special_functions.hpp"

using namespace udn;
using namespace udn::analytic;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

NetworkConfig nlos(double lambda, double h, double alpha = 4.0, double theta = 1.0) {
    NetworkConfig c;
    c.bs_density = lambda;
    c.pathloss = PathlossParams{std::min(3.0, alpha - 0.5), alpha, h};
    c.los_model = LosModel::all_nlos();
    c.sir_threshold = theta;
    return c;
}

const auto kClosest = AssociationPolicy::closest();
const auto kStrongest = AssociationPolicy::strongest();

}  // namespace

// mpmath references.
constexpr double kClosestH0Alpha3 = 0.37434989042936;
constexpr double kStrongestH20 = 0.26277909071988765;
constexpr double kClosestH20 = 0.20875334504893;
constexpr double kNearestH20 = 2.8291420908385e-6;

TEST(Association, Kernels) {
    const double lambda = 3e-4;
    const auto r = quad::integrate_to_infinity([&](double x) { return kClosest.phi(x, lambda); }, 0.0,
                                               1.0 / std::sqrt(pi * lambda));
    EXPECT_NEAR(r.value, 1.0, 1e-10);
    EXPECT_EQ(kClosest.nu(12.0), 12.0);
    EXPECT_EQ(kStrongest.nu(12.0), 0.0);
    EXPECT_DOUBLE_EQ(kStrongest.phi(10.0, lambda), 2 * pi * lambda * 10.0);
    EXPECT_EQ(AssociationPolicy::parse("strongest"), kStrongest);
    EXPECT_THROW(AssociationPolicy::parse("nearest"), UsageError);
}

TEST(Laplace, Examples) {
    const auto cfg = nlos(1e-4, 0.0);
    EXPECT_EQ(laplace_single_regime(0.0, cfg, kClosest, 100.0, Regime::Nlos), 1.0);
    const double s = 1.0 / pathloss(100.0, 0.0, 4.0);
    EXPECT_LT(rel(laplace_single_regime(s, cfg, kClosest, 100.0, Regime::Nlos), std::exp(-pi * pi / 4.0)), 1e-8);
    EXPECT_NEAR(laplace_single_regime(s, nlos(1e-14, 0.0), kClosest, 100.0, Regime::Nlos), 1.0, 1e-9);
}

TEST(Laplace, MixedReducesToSingleRegime) {
    NetworkConfig c = nlos(1e-3, 20.0);
    const double s = 3e5;
    const double nl = laplace_single_regime(s, c, kStrongest, 40.0, Regime::Nlos);
    EXPECT_LT(rel(laplace_mixed(s, c, kStrongest, 40.0), nl), 1e-12);
    c.los_model = LosModel::all_los();
    EXPECT_LT(rel(laplace_mixed(s, c, kStrongest, 40.0), laplace_single_regime(s, c, kStrongest, 40.0, Regime::Los)),
              1e-8);
}

TEST(Laplace, BuildingsBelowNlos) {
    NetworkConfig c = nlos(1e-3, 20.0);
    c.pathloss.alpha_los = 3.0;
    c.los_model = BuildingsBlockage{0.1, 10.0};
    const double mixed = laplace_mixed(1.0, c, kClosest, 50.0);
    const double only = laplace_single_regime(1.0, c, kClosest, 50.0, Regime::Nlos);
    EXPECT_LT(mixed, only);
    EXPECT_GT(mixed, 0.0);
}

TEST(Laplace, HeightSplitMatchesDirectForm) {
    for (auto policy : {kClosest, kStrongest}) {
        const double r = 50.0, s = 1e6;
        const double split = laplace_height_split(s, 1e-3, 20.0, 4.0, policy, r);
        const double direct = laplace_single_regime(s, nlos(1e-3, 20.0), policy, r, Regime::Nlos);
        EXPECT_LT(rel(split, direct), 1e-8) << policy.name();
        EXPECT_GE(split, laplace_height_split(s, 1e-3, 0.0, 4.0, policy, r));
        EXPECT_EQ(laplace_height_split(s, 1e-3, 0.0, 4.0, policy, r),
                  laplace_single_regime(s, nlos(1e-3, 0.0), policy, r, Regime::Nlos));
    }
}

TEST(Coverage, BaselineClosedForms) {
    EXPECT_LT(rel(coverage_closest_h0(1.0, 4.0), 1.0 / (1.0 + pi / 4.0)), 1e-14);
    EXPECT_LT(rel(coverage_closest_h0(1.0, 3.0), kClosestH0Alpha3), 1e-12);
    EXPECT_NEAR(coverage_closest_h0(1e-12, 4.0), 1.0, 1e-5);
    EXPECT_LT(rel(coverage_strongest_h0(1.0, 4.0), 2.0 / pi), 1e-14);
    EXPECT_LT(rel(coverage_strongest_h0(1.0, 3.0), 3.0 * std::sqrt(3.0) / (4.0 * pi)), 1e-14);
    EXPECT_LT(rel(coverage_strongest_h0(16.0, 4.0), 1.0 / (2.0 * pi)), 1e-14);
    EXPECT_THROW(coverage_strongest_h0(0.5, 4.0), ValidityError);
}

TEST(Coverage, GeneralReducesToBaselines) {
    for (double theta : {1.0, 2.0, 10.0})
        for (double alpha : {3.0, 4.0}) {
            const auto c = nlos(1e-4, 0.0, alpha, theta);
            EXPECT_LT(rel(coverage_general(c, kClosest), coverage_closest_h0(theta, alpha)), 1e-4);
            EXPECT_LT(rel(coverage_general(c, kStrongest), coverage_strongest_h0(theta, alpha)), 1e-4);
        }
}

TEST(Coverage, BaselinesIndependentOfDensity) {
    const double ref = coverage_general(nlos(1e-4, 0.0), kClosest);
    for (double lambda : {1e-6, 1e-2}) EXPECT_LT(rel(coverage_general(nlos(lambda, 0.0), kClosest), ref), 1e-4);
    const double ref_s = coverage_general(nlos(1e-4, 0.0), kStrongest);
    for (double lambda : {1e-6, 1e-2}) EXPECT_LT(rel(coverage_general(nlos(lambda, 0.0), kStrongest), ref_s), 1e-4);
}

TEST(Coverage, GeneralReducesToHeightForms) {
    for (double lambda : {1e-5, 1e-4, 1e-3})
        for (double h : {10.0, 25.0}) {
            const auto c = nlos(lambda, h);
            EXPECT_LT(rel(coverage_general(c, kClosest), coverage_closest_height(1.0, lambda, h, 4.0)), 1e-4);
            EXPECT_LT(rel(coverage_general(c, kStrongest), coverage_strongest_height(1.0, lambda, h, 4.0)), 1e-4);
        }
}

TEST(Coverage, HeightExamples) {
    EXPECT_EQ(coverage_closest_height(1.0, 1e-3, 0.0, 4.0), coverage_closest_h0(1.0, 4.0));
    const double lopt = 4.0 / (400.0 * pi * pi);
    EXPECT_LT(rel(coverage_closest_height(1.0, lopt, 20.0, 4.0), std::exp(-1.0) / (1.0 + pi / 4.0)), 1e-12);
    EXPECT_LT(coverage_closest_height(1.0, 1.0, 20.0, 4.0), 1e-100);
    EXPECT_LT(rel(coverage_closest_height(1.0, 1e-3, 20.0, 4.0), kClosestH20), 1e-12);
    EXPECT_LT(rel(coverage_strongest_height(1.0, 1e-3, 20.0, 4.0), kStrongestH20), 1e-8);
    EXPECT_NEAR(coverage_strongest_height(1.0, 1e-12, 20.0, 4.0), 2.0 / pi, 1e-3);
    EXPECT_LT(coverage_strongest_height(1.0, 0.1, 20.0, 4.0), 0.01);
    EXPECT_THROW(coverage_strongest_height(0.9, 1e-3, 20.0, 4.0), ValidityError);
}

TEST(Coverage, StrongestDominatesClosest) {
    for (double lambda : {1e-5, 1e-4, 1e-3, 3e-3})
        EXPECT_GT(coverage_strongest_height(1.0, lambda, 20.0, 4.0), coverage_closest_height(1.0, lambda, 20.0, 4.0));
}

TEST(Coverage, ClosestDecreasingInDensityAndHeight) {
    double prev = 1.0;
    for (int i = 0; i <= 60; ++i) {
        const double v = coverage_closest_height(1.0, std::pow(10.0, -6.0 + 4.0 * i / 60.0), 20.0, 4.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
    prev = 1.0;
    for (double h = 1.0; h <= 60.0; h += 1.0) {
        const double v = coverage_closest_height(1.0, 1e-4, h, 3.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Coverage, BuildingsPeakNearOneInAThousand) {
    NetworkConfig c = nlos(1e-3, 20.0);
    c.pathloss.alpha_los = 3.0;
    c.los_model = BuildingsBlockage{0.1, 10.0};
    const double mid = coverage_general(c, kStrongest);
    c.bs_density = 1e-4;
    const double below = coverage_general(c, kStrongest);
    c.bs_density = 1e-2;
    const double above = coverage_general(c, kStrongest);
    EXPECT_GT(mid, below);
    EXPECT_GT(mid, above);
}

TEST(Coverage, StepModelBetweenRegimes) {
    NetworkConfig c = nlos(1e-4, 0.0);
    c.pathloss.alpha_los = 3.0;
    c.los_model = StepLos{100.0};
    const double v = coverage_general(c, kClosest);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
}

TEST(Ase, Identity) {
    EXPECT_DOUBLE_EQ(ase(1.0, 1e-3, 0.5), 5e-4);
    EXPECT_DOUBLE_EQ(ase(3.0, 2e-4, 0.25), 1e-4);
    EXPECT_EQ(ase(2.0, 1e-3, 0.0), 0.0);
    const auto p = evaluate(nlos(2e-3, 15.0, 4.0, 2.0), kClosest);
    EXPECT_EQ(p.ase, p.lambda * p.pcov * std::log2(3.0));
}

TEST(LambdaOpt, Examples) {
    const double base = 4.0 / (400.0 * pi * pi);
    EXPECT_LT(rel(lambda_opt_closest(1.0, 20.0, 4.0), base), 1e-14);
    EXPECT_LT(rel(lambda_opt_closest(1.0, 10.0, 4.0), 4.0 * base), 1e-14);
    EXPECT_THROW(lambda_opt_closest(1.0, 0.0, 4.0), DomainError);
    EXPECT_THROW(lambda_opt_closest(1e-320, 20.0, 4.0), DomainError);
}

TEST(LambdaOpt, GridArgmax) {
    for (double h : {10.0, 20.0}) {
        const double lo = 1e-6, hi = 1e-1;
        const double step = std::log(hi / lo) / 199.0;
        double best = 0.0, arg = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double l = lo * std::exp(step * i);
            const double v = ase(1.0, l, coverage_closest_height(1.0, l, h, 4.0));
            if (v > best) best = v, arg = l;
        }
        EXPECT_LE(std::abs(std::log(arg / lambda_opt_closest(1.0, h, 4.0))), step);
    }
}

TEST(Interference, NearestExamples) {
    EXPECT_LT(rel(expected_interference_nearest(1.0 / pi, 1.0, 4.0), std::exp(1.0) * (std::exp(-1.0) - 0.21938393439552027)),
              1e-13);
    EXPECT_LT(rel(expected_interference_nearest(1e-3, 20.0, 4.0), kNearestH20), 1e-11);
    EXPECT_LT(expected_interference_nearest(1e-12, 20.0, 4.0), 1e-14);
    EXPECT_THROW(expected_interference_nearest(1e-3, 0.0, 4.0), DomainError);
}

TEST(Interference, SeriesBound) {
    for (double h : {1.0, 20.0}) {
        const double lambda = h == 1.0 ? 1.0 / pi : 1e-3;
        EXPECT_LT(rel(interference_series_term(1, lambda, h, 4.0), expected_interference_nearest(lambda, h, 4.0)), 1e-6);
        double prev = HUGE_VAL;
        for (std::size_t i = 1; i <= 60; ++i) {
            const double t = interference_series_term(i, lambda, h, 4.0);
            EXPECT_LT(t, prev) << i;
            prev = t;
        }
    }
    // Partial sums approach the mean total received power from below.
    const auto b = expected_interference_bound(1e-3, 20.0, 4.0);
    const double campbell = pi * 1e-3 / 400.0;
    EXPECT_LT(b.value, campbell);
    EXPECT_GT(b.value, 0.999 * campbell);
    EXPECT_GT(b.terms, 100u);
}

TEST(Limits, Report) {
    const auto c = coverage_limits_check(kClosest, 1.0, 20.0, 4.0);
    EXPECT_NEAR(c.baseline, 0.5601, 1e-4);
    EXPECT_TRUE(c.low_density_matches);
    EXPECT_TRUE(c.high_density_decayed);
    const auto s = coverage_limits_check(kStrongest, 1.0, 20.0, 4.0);
    EXPECT_NEAR(s.low_density_value, 2.0 / pi, 1e-3);
    EXPECT_LT(s.high_density_value, 0.01);
    const auto a3 = coverage_limits_check(kClosest, 1.0, 20.0, 3.0);
    EXPECT_LT(rel(a3.baseline, 1.0 / (1.0 + special::psi(1.0, 3.0))), 1e-14);
}

TEST(Evaluate, Dispatch) {
    EXPECT_EQ(evaluate(nlos(1e-3, 20.0), kClosest).method, Method::ClosedForm);
    NetworkConfig c = nlos(1e-3, 20.0);
    c.pathloss.alpha_los = 3.0;
    c.los_model = BuildingsBlockage{0.1, 10.0};
    EXPECT_EQ(evaluate(c, kClosest).method, Method::GeneralQuadrature);
    c.los_model = BuildingsBlockage{0.0, 10.0};
    const auto p = evaluate(c, kClosest);
    EXPECT_EQ(p.method, Method::ClosedForm);
    EXPECT_EQ(p.pcov, coverage_closest_height(1.0, 1e-3, 20.0, 3.0));
    EXPECT_EQ(to_string(Method::GeneralQuadrature), "general_quadrature");
}

TEST(Config, Validation) {
    NetworkConfig c;
    c.bs_density = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = NetworkConfig{};
    c.sir_threshold = -1.0;
    EXPECT_THROW(c.validate(), DomainError);
}
