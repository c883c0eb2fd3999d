#pragma once

#include <variant>

namespace udn {

enum class Regime { Los, Nlos };

/// Power-law pathloss exponents and the common BS height (m).
struct PathlossParams {
    double alpha_los = 3.0;
    double alpha_nlos = 4.0;
    double height = 0.0;

    double alpha(Regime q) const { return q == Regime::Los ? alpha_los : alpha_nlos; }
    /// Requires alpha_nlos > alpha_los > 2 and height >= 0.
    void validate() const;
};

/// Buildings of fixed height placed on the UE-BS segment as a 1-D PPP.
struct BuildingsBlockage {
    double building_density = 0.0;  // buildings per m
    double building_height = 0.0;   // m

    /// Fraction of the segment on which a building can cut the sightline,
    /// min(h_building / h, 1); 1 at h = 0 and 0 when buildings are flat.
    double tau(double bs_height) const;
};

/// LOS up to a critical distance, NLOS beyond (dual-slope model).
struct StepLos {
    double critical_distance = 0.0;  // m
};

struct ConstantLos {
    double probability = 0.0;
};

/// Distance-dependent LOS probability.
class LosModel {
public:
    using Variant = std::variant<BuildingsBlockage, StepLos, ConstantLos>;

    LosModel() : model_(ConstantLos{0.0}) {}
    LosModel(BuildingsBlockage b) : model_(b) {}
    LosModel(StepLos s) : model_(s) {}
    LosModel(ConstantLos c) : model_(c) {}

    static LosModel all_nlos() { return ConstantLos{0.0}; }
    static LosModel all_los() { return ConstantLos{1.0}; }

    double p_los(double r, double bs_height) const;

    /// True when p_los is identically 0 (or 1) for this BS height.
    bool always_nlos(double bs_height) const;
    bool always_los(double bs_height) const;

    const Variant& variant() const { return model_; }
    void validate() const;

private:
    Variant model_;
};

/// (r^2 + h^2)^(-alpha/2). Throws DomainError at r = h = 0 or alpha <= 2.
double pathloss(double r, double h, double alpha);

double los_probability(const LosModel& model, double r, double h);

}  // namespace udn
