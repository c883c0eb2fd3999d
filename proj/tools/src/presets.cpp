#include "udn/cli/presets.hpp"

#include <string>

#include "udn/errors.hpp"

namespace udn::cli {
namespace {

SweepSpec density_sweep() {
    SweepSpec spec;
    spec.axis = Axis::BsDensity;
    spec.grid = Grid{1e-6, 1e-1, 50, true};
    spec.engines = {Engine::Analytic};
    spec.mc.trials = kPresetTrials;
    return spec;
}

NetworkConfig base_config(double h, LosModel los) {
    NetworkConfig cfg;
    cfg.pathloss = PathlossParams{3.0, 4.0, h};
    cfg.los_model = los;
    cfg.sir_threshold = 1.0;
    return cfg;
}

void add_both_policies(SweepSpec& spec, const std::string& stem, const NetworkConfig& cfg) {
    for (auto policy : {AssociationPolicy::closest(), AssociationPolicy::strongest()})
        spec.scenarios.push_back({stem + "_" + std::string(policy.name()), cfg, policy});
}

}  // namespace

SweepSpec fig2_preset() {
    SweepSpec spec = density_sweep();
    for (auto [tag, density] : {std::pair{"bld1e-4", 1e-4}, std::pair{"bld1e-1", 1e-1}})
        add_both_policies(spec, tag, base_config(20.0, BuildingsBlockage{density, 10.0}));
    return spec;
}

SweepSpec fig3_preset() {
    SweepSpec spec = density_sweep();
    for (double h : {0.0, 20.0}) {
        const std::string suffix = "_h" + std::to_string(static_cast<int>(h));
        add_both_policies(spec, "los_a3" + suffix, base_config(h, LosModel::all_los()));
        add_both_policies(spec, "nlos_a4" + suffix, base_config(h, LosModel::all_nlos()));
    }
    return spec;
}

SweepSpec fig4_preset() {
    SweepSpec spec = density_sweep();
    for (double h : {10.0, 15.0, 20.0})
        add_both_policies(spec, "nlos_h" + std::to_string(static_cast<int>(h)), base_config(h, LosModel::all_nlos()));
    return spec;
}

std::vector<std::string_view> preset_names() { return {"fig2", "fig3", "fig4"}; }

SweepSpec preset(std::string_view name) {
    if (name == "fig2") return fig2_preset();
    if (name == "fig3") return fig3_preset();
    if (name == "fig4") return fig4_preset();
    throw UsageError("unknown preset '" + std::string(name) + "'");
}

}  // namespace udn::cli
