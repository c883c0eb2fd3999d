#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "udn/analytic.hpp"
#include "udn/propagation.hpp"

namespace udn::mc {

/// Independent random stream addressed by (seed, stream, substream); the same
/// address always yields the same sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

    double uniform();  // [0, 1)
    double exponential();  // unit mean
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

struct BaseStation {
    double r = 0.0;      // horizontal distance to the typical UE, m
    double angle = 0.0;  // rad
    bool los = false;
    double gain = 1.0;   // Rayleigh power gain, exp(1)
};

/// One realization of the marked PPP inside a disk of radius r_max.
struct PppSample {
    double r_max = 0.0;
    std::vector<BaseStation> stations;
};

struct SimSettings {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::optional<double> sim_radius;  // nullopt: choose automatically
    double ci_level = 0.95;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
};

/// Poisson(lambda pi r_max^2) points uniform on the disk. Marks are left at
/// their defaults (NLOS, unit gain) until assign_marks.
PppSample sample_ppp(double lambda, double r_max, RngStream& rng);

/// Independent LOS flags with probability p_LOS(r, h) and exp(1) gains.
PppSample assign_marks(PppSample sample, const LosModel& los_model, double h, RngStream& rng);

struct CoverageEstimate {
    CoveragePoint point;
    std::size_t covered = 0;
    std::size_t trials = 0;
    double sim_radius = 0.0;
    /// |estimate(r_max) - estimate(r_max / 2)| on common random numbers;
    /// absent when the radius was fixed by the caller.
    std::optional<double> truncation_change;
};

/// Fraction of trials with SIR > theta at the serving BS (nearest BS for
/// closest association, the BS with the largest received power for strongest).
/// Empty realizations count as outage. Deterministic in settings.seed.
CoverageEstimate simulate_coverage_estimate(const NetworkConfig& cfg, AssociationPolicy policy,
                                            const SimSettings& settings);

CoveragePoint simulate_coverage(const NetworkConfig& cfg, AssociationPolicy policy, const SimSettings& settings);

struct MeanEstimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0;
    double stddev = 0.0;
};

struct InterferenceEstimate {
    MeanEstimate nearest;    // g * l(r_1, h) of the BS nearest to the UE
    MeanEstimate aggregate;  // total received power minus the strongest BS
    std::size_t trials = 0;
    double sim_radius = 0.0;
};

/// Single-slope interference moments with elevated BSs (h > 0).
InterferenceEstimate simulate_interference(double lambda, double h, double alpha, const SimSettings& settings);

/// Half-length of the Wilson score interval for `successes` out of `trials`.
double wilson_halfwidth(std::size_t successes, std::size_t trials, double ci_level);

/// Two-sided standard normal quantile for a confidence level.
double normal_quantile(double ci_level);

}  // namespace udn::mc
