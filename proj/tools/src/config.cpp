#include "udn/cli/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "udn/errors.hpp"

namespace udn::cli {
namespace {

using boost::property_tree::ptree;

constexpr std::string_view kScenarioPrefix = "scenario:";

template <class T>
T get(const ptree& section, const std::string& key, T fallback) {
    const auto v = section.get_optional<std::string>(key);
    if (!v) return fallback;
    try {
        return section.get<T>(key);
    } catch (const boost::property_tree::ptree_bad_data&) {
        throw UsageError("config key '" + key + "' has an invalid value '" + *v + "'");
    }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

Scenario read_scenario(const std::string& id, const ptree& sec) {
    Scenario s;
    s.id = id;
    NetworkConfig& c = s.config;
    s.policy = AssociationPolicy::parse(get<std::string>(sec, "policy", "closest"));
    c.bs_density = get(sec, "bs_density", c.bs_density);
    c.pathloss.height = get(sec, "height", c.pathloss.height);
    c.pathloss.alpha_los = get(sec, "alpha_los", c.pathloss.alpha_los);
    c.pathloss.alpha_nlos = get(sec, "alpha_nlos", c.pathloss.alpha_nlos);
    c.sir_threshold = get(sec, "threshold", c.sir_threshold);
    const auto model = get<std::string>(sec, "los_model", "constant");
    if (model == "constant") {
        c.los_model = ConstantLos{get(sec, "los_probability", 0.0)};
    } else if (model == "buildings") {
        c.los_model = BuildingsBlockage{get(sec, "building_density", 0.0), get(sec, "building_height", 0.0)};
    } else if (model == "step") {
        c.los_model = StepLos{get(sec, "critical_distance", 0.0)};
    } else {
        throw UsageError("scenario '" + id + "': unknown los_model '" + model +
                         "' (expected constant, buildings or step)");
    }
    return s;
}

ptree write_scenario(const Scenario& s) {
    ptree sec;
    const NetworkConfig& c = s.config;
    sec.put("policy", std::string(s.policy.name()));
    sec.put("bs_density", num(c.bs_density));
    sec.put("height", num(c.pathloss.height));
    sec.put("alpha_los", num(c.pathloss.alpha_los));
    sec.put("alpha_nlos", num(c.pathloss.alpha_nlos));
    sec.put("threshold", num(c.sir_threshold));
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantLos>) {
                sec.put("los_model", "constant");
                sec.put("los_probability", num(m.probability));
            } else if constexpr (std::is_same_v<M, BuildingsBlockage>) {
                sec.put("los_model", "buildings");
                sec.put("building_density", num(m.building_density));
                sec.put("building_height", num(m.building_height));
            } else {
                sec.put("los_model", "step");
                sec.put("critical_distance", num(m.critical_distance));
            }
        },
        c.los_model.variant());
    return sec;
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
    ptree root;
    std::istringstream in(text);
    try {
        boost::property_tree::read_ini(in, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    SweepSpec spec;
    spec.scenarios.clear();
    for (const auto& [name, sec] : root) {
        if (name == "sweep") {
            spec.axis = parse_axis(get<std::string>(sec, "axis", std::string(to_string(spec.axis))));
            spec.grid.min = get(sec, "min", spec.grid.min);
            spec.grid.max = get(sec, "max", spec.grid.max);
            spec.grid.points = get(sec, "points", spec.grid.points);
            const auto scale = get<std::string>(sec, "scale", spec.grid.log ? "log" : "linear");
            if (scale != "log" && scale != "linear") throw UsageError("grid scale must be log or linear");
            spec.grid.log = scale == "log";
            if (auto e = sec.get_optional<std::string>("engines")) spec.engines = parse_engines(*e);
            spec.mc.trials = get(sec, "trials", spec.mc.trials);
            spec.mc.seed = get(sec, "seed", spec.mc.seed);
            spec.threads = get(sec, "threads", spec.threads);
        } else if (name.rfind(kScenarioPrefix, 0) == 0) {
            spec.scenarios.push_back(read_scenario(name.substr(kScenarioPrefix.size()), sec));
        } else {
            throw UsageError("config: unknown section [" + name + "]");
        }
    }
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SweepSpec& spec) {
    ptree root;
    ptree sweep;
    sweep.put("axis", std::string(to_string(spec.axis)));
    sweep.put("min", num(spec.grid.min));
    sweep.put("max", num(spec.grid.max));
    sweep.put("points", spec.grid.points);
    sweep.put("scale", spec.grid.log ? "log" : "linear");
    std::string engines;
    for (Engine e : spec.engines) engines += (engines.empty() ? "" : ",") + std::string(to_string(e));
    sweep.put("engines", engines);
    sweep.put("trials", spec.mc.trials);
    sweep.put("seed", spec.mc.seed);
    sweep.put("threads", spec.threads);
    root.push_back({"sweep", sweep});
    for (const auto& s : spec.scenarios) root.push_back({std::string(kScenarioPrefix) + s.id, write_scenario(s)});
    std::ostringstream out;
    boost::property_tree::write_ini(out, root);
    return out.str();
}

void apply_overrides(SweepSpec& spec, const Overrides& o) {
    if (o.engines) spec.engines = parse_engines(*o.engines);
    if (o.trials) spec.mc.trials = *o.trials;
    if (o.seed) spec.mc.seed = *o.seed;
    if (o.threads) spec.threads = *o.threads;
    if (o.policy) {
        const auto policy = AssociationPolicy::parse(*o.policy);
        std::erase_if(spec.scenarios, [&](const Scenario& s) { return s.policy != policy; });
        if (spec.scenarios.empty()) throw UsageError("no scenario uses policy '" + *o.policy + "'");
    }
    for (auto& s : spec.scenarios) {
        NetworkConfig& c = s.config;
        if (o.bs_density) c.bs_density = *o.bs_density;
        if (o.height) c.pathloss.height = *o.height;
        if (o.alpha_los) c.pathloss.alpha_los = *o.alpha_los;
        if (o.alpha_nlos) c.pathloss.alpha_nlos = *o.alpha_nlos;
        if (o.threshold) c.sir_threshold = *o.threshold;
        if (o.building_density || o.building_height) {
            // Either building key switches the scenario to the buildings model.
            BuildingsBlockage b;
            if (const auto* cur = std::get_if<BuildingsBlockage>(&c.los_model.variant())) b = *cur;
            if (o.building_density) b.building_density = *o.building_density;
            if (o.building_height) b.building_height = *o.building_height;
            c.los_model = b;
        }
    }
}

}  // namespace udn::cli
