#pragma once

// Adaptive Gauss-Kronrod (G10/K21) integration with a global error queue,
// plus the u/(1-u) compactification used for every integral to infinity.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

namespace udn::quad {

struct Tolerance {
    double abs = 0.0;
    double rel = 1e-10;
    std::size_t max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Throws NumericFailure naming `what` when `r` did not meet its tolerance.
double require(const Result& r, std::string_view what);

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980029534, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Weights of the embedded 10-point Gauss rule (nodes kKronrodNodes[1,3,..,9]).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_21(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j)
        asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double result = kronrod * half;
    const double res_abs = abs_sum * std::abs(half);
    const double res_asc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
    return {a, b, result, err};
}

}  // namespace detail

/// Integrates f over the union of [points[i], points[i+1]]. Breakpoints should
/// sit on kinks or discontinuities of f.
template <class F>
Result integrate(F&& f, std::span<const double> points, const Tolerance& tol = {}) {
    Result out;
    if (points.size() < 2) return out;
    std::priority_queue<detail::Segment> queue;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i] == points[i + 1]) continue;
        auto seg = detail::gauss_kronrod_21(f, points[i], points[i + 1]);
        out.evaluations += 21;
        total += seg.value;
        total_err += seg.error;
        queue.push(seg);
    }
    std::size_t intervals = queue.size();
    while (!queue.empty()) {
        if (total_err <= std::max(tol.abs, tol.rel * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (intervals >= tol.max_intervals) break;
        const auto worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // Interval too narrow to split in floating point.
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
        queue.pop();
        auto left = detail::gauss_kronrod_21(f, worst.a, mid);
        auto right = detail::gauss_kronrod_21(f, mid, worst.b);
        out.evaluations += 42;
        ++intervals;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    if (queue.empty()) out.converged = true;
    // Re-sum to shed the drift of the incremental updates.
    total = 0.0;
    total_err = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        total_err += queue.top().error;
        queue.pop();
    }
    out.value = total;
    out.error = total_err;
    if (!out.converged) out.converged = total_err <= std::max(tol.abs, tol.rel * std::abs(total));
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
    const std::array<double, 2> pts{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), tol);
}

/// Integral of f over [a, inf) through t = a + scale * u / (1 - u).
/// `scale` should be the length over which f carries most of its mass;
/// `breaks` (all > a) become breakpoints of the mapped integral.
template <class F>
Result integrate_to_infinity(F&& f, double a, double scale, const Tolerance& tol = {},
                             std::span<const double> breaks = {}) {
    auto mapped = [&f, a, scale](double u) {
        const double one_minus = 1.0 - u;
        if (one_minus <= 0.0) return 0.0;
        const double t = a + scale * u / one_minus;
        const double v = f(t);
        return v == 0.0 ? 0.0 : v * scale / (one_minus * one_minus);
    };
    std::vector<double> pts{0.0};
    for (double t : breaks) {
        if (t > a && std::isfinite(t)) pts.push_back((t - a) / (t - a + scale));
    }
    std::sort(pts.begin(), pts.end());
    pts.push_back(1.0);
    return integrate(mapped, std::span<const double>(pts), tol);
}

}  // namespace udn::quad
