// udncov: coverage / ASE sweeps, figure presets, acceptance checks.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "udn/cli/acceptance.hpp"
#include "udn/cli/config.hpp"
#include "udn/cli/output.hpp"
#include "udn/cli/presets.hpp"
#include "udn/errors.hpp"

namespace {

using namespace udn;
using namespace udn::cli;

enum Exit { kOk = 0, kRowsFailed = 1, kUsage = 2, kIo = 3, kNumeric = 4 };

struct Common {
    std::optional<std::string> config;
    std::string out = "out";
    std::string format = "csv";
    bool timing = false;
    Overrides ov;
};

void add_network_flags(CLI::App* app, Overrides& ov) {
    app->add_option("--bs-density", ov.bs_density, "BS density (BS/m^2)");
    app->add_option("--height", ov.height, "BS height (m)");
    app->add_option("--alpha-los", ov.alpha_los, "LOS pathloss exponent");
    app->add_option("--alpha-nlos", ov.alpha_nlos, "NLOS pathloss exponent");
    app->add_option("--threshold", ov.threshold, "SIR threshold (linear)");
    app->add_option("--building-density", ov.building_density, "buildings per m (switches to the buildings model)");
    app->add_option("--building-height", ov.building_height, "building height (m)");
}

void add_run_flags(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--format", c.format, "csv, svg or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
    app->add_option("--engines", c.ov.engines, "comma list of analytic, mc");
    app->add_option("--trials", c.ov.trials, "Monte Carlo trials per point");
    app->add_option("--seed", c.ov.seed, "Monte Carlo seed");
    app->add_option("--policy", c.ov.policy, "keep only closest or strongest scenarios")
        ->check(CLI::IsMember({"closest", "strongest"}));
    app->add_option("--threads", c.ov.threads, "sweep worker threads (0: all cores)");
    app->add_flag("--timing", c.timing, "fill the wall_time_ms column (output no longer reproducible)");
    add_network_flags(app, c.ov);
}

int report(const Table& table, const std::string& name, const Common& c, PlotStyle::Quantity quantity) {
    const std::filesystem::path dir(c.out);
    if (c.format == "csv" || c.format == "both") {
        emit_csv(table, dir / (name + ".csv"), CsvOptions{c.timing});
        std::cout << "wrote " << (dir / (name + ".csv")).string() << '\n';
    }
    if (c.format == "svg" || c.format == "both") {
        PlotStyle style;
        style.quantity = quantity;
        style.title = name;
        emit_plot(table, dir / (name + ".svg"), style);
        std::cout << "wrote " << (dir / (name + ".svg")).string() << '\n';
    }
    for (const auto& r : table.rows)
        if (!r.ok()) std::cerr << r.scenario_id << " @ " << r.axis_value << ": " << r.status << '\n';
    std::cout << table.rows.size() << " rows, " << table.failures() << " failed\n";
    return table.all_ok() ? kOk : kRowsFailed;
}

SweepSpec spec_from_config(const Common& c) {
    SweepSpec spec = c.config ? load_config(*c.config) : SweepSpec{};
    if (spec.scenarios.empty()) {
        Scenario s;
        s.policy = AssociationPolicy::parse(c.ov.policy.value_or("closest"));
        s.id = "default_" + std::string(s.policy.name());
        spec.scenarios.push_back(s);
    }
    apply_overrides(spec, c.ov);
    return spec;
}

nlohmann::json point_json(const NetworkConfig& cfg, AssociationPolicy policy, const CoveragePoint& p) {
    nlohmann::json j;
    j["policy"] = std::string(policy.name());
    j["bs_density"] = cfg.bs_density;
    j["height"] = cfg.pathloss.height;
    j["alpha_los"] = cfg.pathloss.alpha_los;
    j["alpha_nlos"] = cfg.pathloss.alpha_nlos;
    j["threshold"] = cfg.sir_threshold;
    j["pcov"] = p.pcov;
    j["ase"] = p.ase;
    j["method"] = std::string(to_string(p.method));
    j["ci_halfwidth"] = p.ci_halfwidth ? nlohmann::json(*p.ci_halfwidth) : nlohmann::json(nullptr);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage and area spectral efficiency of networks with elevated base stations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "udncov 0.1.0");

    Common sweep_c;
    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a config file");
    sweep->add_option("--config", sweep_c.config, "INI sweep description")->check(CLI::ExistingFile);
    std::string sweep_name = "sweep";
    sweep->add_option("--name", sweep_name, "output file stem")->capture_default_str();
    std::string sweep_quantity = "coverage";
    sweep->add_option("--quantity", sweep_quantity, "plotted quantity")->check(CLI::IsMember({"coverage", "ase"}));
    add_run_flags(sweep, sweep_c);

    Common fig_c[3];
    CLI::App* figs[3];
    for (int i = 0; i < 3; ++i) {
        const std::string name = "fig" + std::to_string(i + 2);
        figs[i] = app.add_subcommand(name, "figure preset " + name + " (analytic engine unless --engines)");
        add_run_flags(figs[i], fig_c[i]);
    }

    acceptance::Options check_opts;
    auto* check = app.add_subcommand("check", "run the acceptance suite");
    check->add_option("--seed", check_opts.seed, "Monte Carlo seed")->capture_default_str();
    check->add_option("--threads", check_opts.threads, "Monte Carlo threads (0: all cores)");
    check->add_option("--only", check_opts.only, "criterion numbers to run")->check(CLI::Range(1, acceptance::kCriteria));

    Overrides point_ov;
    std::string point_engine = "analytic";
    std::optional<std::string> point_config;
    std::size_t point_trials = 100000;
    std::uint64_t point_seed = 1;
    std::string point_policy = "closest";
    std::string point_los = "constant";
    double point_p_los = 0.0, point_rc = 0.0;
    auto* point = app.add_subcommand("point", "evaluate one configuration, print a JSON record");
    point->add_option("--config", point_config, "INI file; its first scenario is the base")->check(CLI::ExistingFile);
    point->add_option("--engine", point_engine, "analytic or mc")->check(CLI::IsMember({"analytic", "mc"}));
    point->add_option("--policy", point_policy, "closest or strongest")->check(CLI::IsMember({"closest", "strongest"}));
    point->add_option("--trials", point_trials, "Monte Carlo trials")->capture_default_str();
    point->add_option("--seed", point_seed, "Monte Carlo seed")->capture_default_str();
    point->add_option("--los-model", point_los, "constant, buildings or step")
        ->check(CLI::IsMember({"constant", "buildings", "step"}));
    point->add_option("--los-probability", point_p_los, "constant LOS probability");
    point->add_option("--critical-distance", point_rc, "LOS critical distance for the step model (m)");
    add_network_flags(point, point_ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sweep) {
            const SweepSpec spec = spec_from_config(sweep_c);
            return report(run_sweep(spec), sweep_name, sweep_c,
                          sweep_quantity == "ase" ? PlotStyle::Quantity::Ase : PlotStyle::Quantity::Coverage);
        }
        for (int i = 0; i < 3; ++i) {
            if (!*figs[i]) continue;
            SweepSpec spec = preset(figs[i]->get_name());
            apply_overrides(spec, fig_c[i].ov);
            return report(run_sweep(spec), figs[i]->get_name(), fig_c[i],
                          i == 2 ? PlotStyle::Quantity::Ase : PlotStyle::Quantity::Coverage);
        }
        if (*check) {
            check_opts.on_result = [](const acceptance::CriterionResult& r) {
                std::cout << acceptance::format(r) << std::endl;
            };
            const auto results = acceptance::run_all(check_opts);
            std::size_t passed = 0;
            for (const auto& r : results) passed += r.passed ? 1 : 0;
            std::cout << passed << "/" << results.size() << " criteria passed\n";
            return passed == results.size() ? kOk : kRowsFailed;
        }
        if (*point) {
            Scenario base;
            if (point_config) {
                const auto spec = load_config(*point_config);
                if (!spec.scenarios.empty()) base = spec.scenarios.front();
            }
            NetworkConfig cfg = base.config;
            if (point->count("--policy") > 0 || !point_config) base.policy = AssociationPolicy::parse(point_policy);
            if (point->count("--los-model") > 0) {
                if (point_los == "constant") cfg.los_model = ConstantLos{point_p_los};
                else if (point_los == "step") cfg.los_model = StepLos{point_rc};
                else cfg.los_model = BuildingsBlockage{};
            }
            SweepSpec one;
            one.scenarios.push_back({"point", cfg, base.policy});
            apply_overrides(one, point_ov);
            cfg = one.scenarios.front().config;
            CoveragePoint p;
            if (point_engine == "analytic") {
                p = analytic::evaluate(cfg, base.policy);
            } else {
                mc::SimSettings s;
                s.trials = point_trials;
                s.seed = point_seed;
                p = mc::simulate_coverage(cfg, base.policy, s);
            }
            std::cout << point_json(cfg, base.policy, p).dump(2) << '\n';
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidityError& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}
