#include "udn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "udn/errors.hpp"
#include "udn/parallel.hpp"

namespace udn::mc {
namespace {

using std::numbers::pi;

constexpr std::size_t kBlockTrials = 2048;
constexpr int kMaxDoublings = 8;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Sufficient statistics of the BSs in one annulus of one trial.
struct RingStats {
    std::size_t count = 0;
    double nearest_r = std::numeric_limits<double>::infinity();
    double nearest_power = 0.0;
    double max_power = 0.0;
    double total_power = 0.0;

    void add(double r, double power) {
        ++count;
        if (r < nearest_r) {
            nearest_r = r;
            nearest_power = power;
        }
        max_power = std::max(max_power, power);
        total_power += power;
    }

    void merge(const RingStats& o) {
        count += o.count;
        if (o.nearest_r < nearest_r) {
            nearest_r = o.nearest_r;
            nearest_power = o.nearest_power;
        }
        max_power = std::max(max_power, o.max_power);
        total_power += o.total_power;
    }
};

// Geometry of the nested disks R_0 < 2 R_0 < 4 R_0 < ...; annulus k is drawn
// from stream (seed, trial, k), so enlarging the disk keeps the inner points.
struct RingLayout {
    double base_radius;
    double radius(int k) const { return base_radius * std::ldexp(1.0, k); }
};

struct LinkModel {
    double lambda;
    double h;
    double alpha_los;
    double alpha_nlos;
    const LosModel* los_model;  // nullptr: single slope, every link uses alpha_nlos
};

// d2^{-alpha/2}; the exponents used in practice avoid std::pow.
double inverse_power(double d2, double alpha) {
    if (alpha == 4.0) return 1.0 / (d2 * d2);
    if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
    if (alpha == 2.5) return 1.0 / (d2 * std::sqrt(std::sqrt(d2)));
    if (alpha == 2.0) return 1.0 / d2;
    return std::pow(d2, -0.5 * alpha);
}

RingStats draw_ring(const LinkModel& m, const RingLayout& layout, int k, std::uint64_t seed, std::uint64_t trial) {
    RngStream rng(seed, trial, static_cast<std::uint64_t>(k));
    const double inner = k == 0 ? 0.0 : layout.radius(k - 1);
    const double outer = layout.radius(k);
    const double inner2 = inner * inner;
    const double span2 = outer * outer - inner2;
    const std::uint64_t n = rng.poisson(m.lambda * pi * span2);
    RingStats stats;
    const double h2 = m.h * m.h;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double r = std::sqrt(inner2 + rng.uniform() * span2);
        const double los_draw = rng.uniform();
        const double gain = rng.exponential();
        bool los = false;
        if (m.los_model != nullptr) los = los_draw < m.los_model->p_los(r, m.h);
        const double alpha = los ? m.alpha_los : m.alpha_nlos;
        stats.add(r, gain * inverse_power(r * r + h2, alpha));
    }
    return stats;
}

bool is_covered(const RingStats& s, AssociationPolicy policy, double theta) {
    if (s.count == 0) return false;
    const double signal = policy.is_closest() ? s.nearest_power : s.max_power;
    const double interference = std::max(s.total_power - signal, 0.0);
    return signal > theta * interference;
}

struct CoverageBlock {
    std::size_t covered = 0;
    std::size_t covered_inner = 0;
};

struct MomentBlock {
    double nearest_sum = 0.0;
    double nearest_sq = 0.0;
    double aggregate_sum = 0.0;
    double aggregate_sq = 0.0;
    double aggregate_inner_sum = 0.0;
};

std::size_t block_count(std::size_t trials) { return (trials + kBlockTrials - 1) / kBlockTrials; }

// Per-block partial results come back in block order, so reductions over
// them are independent of the thread count.
template <class Block, class TrialFn>
std::vector<Block> run_blocks(std::size_t trials, unsigned threads, TrialFn trial_fn) {
    return parallel_map<Block>(block_count(trials), threads, [&](std::size_t b) {
        Block acc{};
        const std::size_t end = std::min(trials, (b + 1) * kBlockTrials);
        for (std::size_t t = b * kBlockTrials; t < end; ++t) trial_fn(t, acc);
        return acc;
    });
}

double auto_base_radius(double lambda, double h) { return std::max(10.0 / std::sqrt(pi * lambda), 10.0 * h); }

MeanEstimate mean_estimate(double sum, double sq, std::size_t n, double z) {
    MeanEstimate e;
    const double nd = static_cast<double>(n);
    e.mean = sum / nd;
    const double var = n > 1 ? std::max(sq - nd * e.mean * e.mean, 0.0) / (nd - 1.0) : 0.0;
    e.stddev = std::sqrt(var);
    e.ci_halfwidth = z * e.stddev / std::sqrt(nd);
    return e;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream)
    : engine_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ substream)) {}

double RngStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double RngStream::exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

std::uint64_t RngStream::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

void SimSettings::validate() const {
    if (trials < 1) throw DomainError("at least one trial is required");
    if (sim_radius && !(*sim_radius > 0.0)) throw DomainError("simulation radius must be > 0");
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
}

double normal_quantile(double ci_level) {
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * ci_level);
}

double wilson_halfwidth(std::size_t successes, std::size_t trials, double ci_level) {
    if (trials == 0) throw DomainError("Wilson interval needs at least one trial");
    const double z = normal_quantile(ci_level);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

PppSample sample_ppp(double lambda, double r_max, RngStream& rng) {
    if (!(lambda > 0.0)) throw DomainError("BS density must be > 0");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("simulation radius must be > 0");
    PppSample sample;
    sample.r_max = r_max;
    const std::uint64_t n = rng.poisson(lambda * pi * r_max * r_max);
    sample.stations.resize(n);
    for (auto& bs : sample.stations) {
        bs.r = r_max * std::sqrt(rng.uniform());
        bs.angle = 2.0 * pi * rng.uniform();
    }
    return sample;
}

PppSample assign_marks(PppSample sample, const LosModel& los_model, double h, RngStream& rng) {
    for (auto& bs : sample.stations) {
        bs.los = rng.uniform() < los_model.p_los(bs.r, h);
        bs.gain = rng.exponential();
    }
    return sample;
}

CoverageEstimate simulate_coverage_estimate(const NetworkConfig& cfg, AssociationPolicy policy,
                                            const SimSettings& settings) {
    cfg.validate();
    settings.validate();
    const double h = cfg.pathloss.height;
    // A model that never changes regime needs no per-link LOS lookup.
    const bool single = cfg.los_model.always_nlos(h) || cfg.los_model.always_los(h);
    const double alpha_single = cfg.los_model.always_los(h) ? cfg.pathloss.alpha_los : cfg.pathloss.alpha_nlos;
    const LinkModel model{cfg.bs_density, h, single ? alpha_single : cfg.pathloss.alpha_los,
                          single ? alpha_single : cfg.pathloss.alpha_nlos, single ? nullptr : &cfg.los_model};
    const double theta = cfg.sir_threshold;
    const std::size_t n = settings.trials;

    auto run = [&](const RingLayout& layout, int outer_ring) {
        return run_blocks<CoverageBlock>(n, settings.threads, [&](std::size_t t, CoverageBlock& acc) {
            RingStats prefix;
            for (int k = 0; k <= outer_ring; ++k) {
                prefix.merge(draw_ring(model, layout, k, settings.seed, t));
                if (k == outer_ring - 1 && is_covered(prefix, policy, theta)) ++acc.covered_inner;
            }
            if (is_covered(prefix, policy, theta)) ++acc.covered;
        });
    };
    auto reduce = [](const std::vector<CoverageBlock>& blocks) {
        CoverageBlock total;
        for (const auto& b : blocks) {
            total.covered += b.covered;
            total.covered_inner += b.covered_inner;
        }
        return total;
    };

    CoverageEstimate est;
    est.trials = n;
    if (settings.sim_radius) {
        const RingLayout layout{*settings.sim_radius};
        est.covered = reduce(run(layout, 0)).covered;
        est.sim_radius = *settings.sim_radius;
    } else {
        const RingLayout layout{auto_base_radius(cfg.bs_density, cfg.pathloss.height)};
        bool settled = false;
        for (int k = 1; k <= kMaxDoublings && !settled; ++k) {
            const auto total = reduce(run(layout, k));
            const double change =
                std::abs(static_cast<double>(total.covered) - static_cast<double>(total.covered_inner)) /
                static_cast<double>(n);
            est.covered = total.covered;
            est.sim_radius = layout.radius(k);
            est.truncation_change = change;
            settled = change < wilson_halfwidth(total.covered, n, settings.ci_level);
        }
        if (!settled)
            throw NumericFailure("simulation radius auto-selection did not settle after " +
                                 std::to_string(kMaxDoublings) + " doublings");
    }
    const double pcov = static_cast<double>(est.covered) / static_cast<double>(n);
    est.point = CoveragePoint::make(cfg.bs_density, theta, pcov, Method::MonteCarlo,
                                    wilson_halfwidth(est.covered, n, settings.ci_level));
    return est;
}

CoveragePoint simulate_coverage(const NetworkConfig& cfg, AssociationPolicy policy, const SimSettings& settings) {
    return simulate_coverage_estimate(cfg, policy, settings).point;
}

InterferenceEstimate simulate_interference(double lambda, double h, double alpha, const SimSettings& settings) {
    if (!(lambda > 0.0)) throw DomainError("BS density must be > 0");
    if (!(h > 0.0)) throw DomainError("interference moments are finite only for h > 0");
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    settings.validate();
    const LinkModel model{lambda, h, alpha, alpha, nullptr};
    const std::size_t n = settings.trials;
    const double z = normal_quantile(settings.ci_level);

    auto run = [&](const RingLayout& layout, int outer_ring) {
        auto blocks = run_blocks<MomentBlock>(n, settings.threads, [&](std::size_t t, MomentBlock& acc) {
            RingStats prefix;
            for (int k = 0; k <= outer_ring; ++k) {
                prefix.merge(draw_ring(model, layout, k, settings.seed, t));
                if (k == outer_ring - 1) acc.aggregate_inner_sum += prefix.total_power - prefix.max_power;
            }
            const double aggregate = prefix.total_power - prefix.max_power;
            acc.nearest_sum += prefix.nearest_power;
            acc.nearest_sq += prefix.nearest_power * prefix.nearest_power;
            acc.aggregate_sum += aggregate;
            acc.aggregate_sq += aggregate * aggregate;
        });
        MomentBlock total;
        for (const auto& b : blocks) {
            total.nearest_sum += b.nearest_sum;
            total.nearest_sq += b.nearest_sq;
            total.aggregate_sum += b.aggregate_sum;
            total.aggregate_sq += b.aggregate_sq;
            total.aggregate_inner_sum += b.aggregate_inner_sum;
        }
        return total;
    };

    InterferenceEstimate est;
    est.trials = n;
    MomentBlock total;
    if (settings.sim_radius) {
        total = run(RingLayout{*settings.sim_radius}, 0);
        est.sim_radius = *settings.sim_radius;
    } else {
        const RingLayout layout{auto_base_radius(lambda, h)};
        bool settled = false;
        for (int k = 1; k <= kMaxDoublings && !settled; ++k) {
            total = run(layout, k);
            est.sim_radius = layout.radius(k);
            const auto agg = mean_estimate(total.aggregate_sum, total.aggregate_sq, n, z);
            const double change = (total.aggregate_sum - total.aggregate_inner_sum) / static_cast<double>(n);
            settled = std::abs(change) < agg.ci_halfwidth;
        }
        if (!settled)
            throw NumericFailure("simulation radius auto-selection did not settle after " +
                                 std::to_string(kMaxDoublings) + " doublings");
    }
    est.nearest = mean_estimate(total.nearest_sum, total.nearest_sq, n, z);
    est.aggregate = mean_estimate(total.aggregate_sum, total.aggregate_sq, n, z);
    return est;
}

}  // namespace udn::mc
