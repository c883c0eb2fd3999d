#include "udn/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "udn/errors.hpp"

namespace udn {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void PathlossParams::validate() const {
    if (!(alpha_los > 2.0) || !std::isfinite(alpha_los))
        throw DomainError("alpha_los must be > 2, got " + std::to_string(alpha_los));
    if (!(alpha_nlos > alpha_los) || !std::isfinite(alpha_nlos))
        throw DomainError("alpha_nlos must exceed alpha_los, got " + std::to_string(alpha_nlos));
    if (!(height >= 0.0) || !std::isfinite(height))
        throw DomainError("BS height must be >= 0, got " + std::to_string(height));
}

double BuildingsBlockage::tau(double bs_height) const {
    if (building_height == 0.0) return 0.0;
    if (bs_height == 0.0) return 1.0;
    return std::min(building_height / bs_height, 1.0);
}

double LosModel::p_los(double r, double bs_height) const {
    return std::visit(Overloaded{
                          [&](const BuildingsBlockage& b) {
                              const double rate = b.building_density * b.tau(bs_height);
                              return rate == 0.0 ? 1.0 : std::exp(-rate * r);
                          },
                          [&](const StepLos& s) { return r <= s.critical_distance ? 1.0 : 0.0; },
                          [](const ConstantLos& c) { return c.probability; },
                      },
                      model_);
}

bool LosModel::always_nlos([[maybe_unused]] double bs_height) const {
    if (const auto* c = std::get_if<ConstantLos>(&model_)) return c->probability == 0.0;
    return false;
}

bool LosModel::always_los(double bs_height) const {
    if (const auto* c = std::get_if<ConstantLos>(&model_)) return c->probability == 1.0;
    if (const auto* b = std::get_if<BuildingsBlockage>(&model_))
        return b->building_density * b->tau(bs_height) == 0.0;
    return false;
}

void LosModel::validate() const {
    std::visit(Overloaded{
                   [](const BuildingsBlockage& b) {
                       if (!(b.building_density >= 0.0) || !std::isfinite(b.building_density))
                           throw DomainError("building density must be >= 0");
                       if (!(b.building_height >= 0.0) || !std::isfinite(b.building_height))
                           throw DomainError("building height must be >= 0");
                   },
                   [](const StepLos& s) {
                       if (!(s.critical_distance >= 0.0)) throw DomainError("critical distance must be >= 0");
                   },
                   [](const ConstantLos& c) {
                       if (!(c.probability >= 0.0 && c.probability <= 1.0))
                           throw DomainError("constant LOS probability must lie in [0, 1]");
                   },
               },
               model_);
}

double pathloss(double r, double h, double alpha) {
    if (!(alpha > 2.0)) throw DomainError("pathloss exponent must be > 2");
    if (!(r >= 0.0) || !(h >= 0.0)) throw DomainError("distances must be >= 0");
    const double d2 = r * r + h * h;
    if (d2 == 0.0) throw DomainError("pathloss is singular at r = h = 0");
    return std::pow(d2, -0.5 * alpha);
}

double los_probability(const LosModel& model, double r, double h) {
    if (!(r >= 0.0)) throw DomainError("los_probability requires r >= 0");
    return model.p_los(r, h);
}

}  // namespace udn
