#include "udn/cli/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <tuple>

#include "udn/errors.hpp"
#include "udn/parallel.hpp"

namespace udn::cli {

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::BsDensity: return "bs_density";
        case Axis::Height: return "height";
        case Axis::BuildingDensity: return "building_density";
        case Axis::Threshold: return "threshold";
    }
    return "?";
}

Axis parse_axis(std::string_view name) {
    for (Axis a : {Axis::BsDensity, Axis::Height, Axis::BuildingDensity, Axis::Threshold})
        if (to_string(a) == name) return a;
    throw UsageError("unknown sweep axis '" + std::string(name) +
                     "' (expected bs_density, height, building_density or threshold)");
}

void Grid::validate() const {
    if (!(min < max)) throw UsageError("grid needs min < max");
    if (points < 2) throw UsageError("grid needs at least 2 points");
    if (log && !(min > 0.0)) throw UsageError("log grid needs min > 0");
}

std::vector<double> Grid::values() const {
    validate();
    std::vector<double> v(points);
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / last;
        v[i] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
    }
    v.front() = min;
    v.back() = max;
    return v;
}

std::string_view to_string(Engine engine) { return engine == Engine::Analytic ? "analytic" : "mc"; }

Engine parse_engine(std::string_view name) {
    if (name == "analytic") return Engine::Analytic;
    if (name == "mc" || name == "montecarlo" || name == "monte_carlo") return Engine::MonteCarlo;
    throw UsageError("unknown engine '" + std::string(name) + "' (expected analytic or mc)");
}

std::vector<Engine> parse_engines(std::string_view list) {
    std::vector<Engine> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        std::string_view item = list.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            const Engine e = parse_engine(item);
            if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw UsageError("no engine selected");
    return out;
}

void SweepSpec::validate() const {
    grid.validate();
    if (scenarios.empty()) throw UsageError("sweep has no scenarios");
    if (engines.empty()) throw UsageError("sweep has no engines");
    std::set<std::string> ids;
    for (const auto& s : scenarios) {
        if (s.id.empty()) throw UsageError("scenario id must not be empty");
        if (!ids.insert(s.id).second) throw UsageError("duplicate scenario id '" + s.id + "'");
    }
    mc.validate();
}

NetworkConfig apply_axis(NetworkConfig cfg, Axis axis, double value) {
    switch (axis) {
        case Axis::BsDensity: cfg.bs_density = value; break;
        case Axis::Height: cfg.pathloss.height = value; break;
        case Axis::Threshold: cfg.sir_threshold = value; break;
        case Axis::BuildingDensity: {
            BuildingsBlockage b;
            if (const auto* cur = std::get_if<BuildingsBlockage>(&cfg.los_model.variant())) b = *cur;
            b.building_density = value;
            cfg.los_model = b;
            break;
        }
    }
    return cfg;
}

bool Table::all_ok() const { return failures() == 0; }

std::size_t Table::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.ok(); }));
}

void sort_rows(Table& table) {
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.scenario_id, a.axis_value, a.engine) < std::tie(b.scenario_id, b.axis_value, b.engine);
    });
}

namespace {

struct Task {
    const Scenario* scenario;
    double value;
    Engine engine;
};

Row evaluate_task(const SweepSpec& spec, const Task& task, unsigned mc_threads) {
    Row row;
    row.scenario_id = task.scenario->id;
    row.axis = spec.axis;
    row.axis_value = task.value;
    row.engine = task.engine;
    const auto start = std::chrono::steady_clock::now();
    try {
        const NetworkConfig cfg = apply_axis(task.scenario->config, spec.axis, task.value);
        if (task.engine == Engine::Analytic) {
            row.method = analytic::method_for(cfg);
            row.point = analytic::evaluate(cfg, task.scenario->policy);
        } else {
            row.method = Method::MonteCarlo;
            mc::SimSettings settings = spec.mc;
            settings.threads = mc_threads;
            row.point = mc::simulate_coverage(cfg, task.scenario->policy, settings);
        }
    } catch (const std::exception& e) {
        row.point.reset();
        row.status = std::string("error: ") + e.what();
    }
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto values = spec.grid.values();
    std::vector<Task> tasks;
    tasks.reserve(spec.scenarios.size() * values.size() * spec.engines.size());
    for (const auto& s : spec.scenarios)
        for (double v : values)
            for (Engine e : spec.engines) tasks.push_back({&s, v, e});

    // With several sweep workers each MC point runs on one thread; results
    // do not depend on either choice.
    const unsigned pool = resolve_threads(spec.threads);
    const unsigned mc_threads = pool > 1 ? 1 : spec.mc.threads;
    Table table;
    table.rows = parallel_map<Row>(tasks.size(), pool,
                                   [&](std::size_t i) { return evaluate_task(spec, tasks[i], mc_threads); });
    sort_rows(table);
    return table;
}

}  // namespace udn::cli
