#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udn/analytic.hpp"
#include "udn/montecarlo.hpp"

namespace udn::cli {

enum class Axis { BsDensity, Height, BuildingDensity, Threshold };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);  // UsageError on unknown names

struct Grid {
    double min = 1e-6;
    double max = 1e-1;
    std::size_t points = 50;
    bool log = true;

    void validate() const;
    std::vector<double> values() const;  // ascending, endpoints exact
};

enum class Engine { Analytic, MonteCarlo };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view name);
/// "analytic,mc" -> {Analytic, MonteCarlo}; duplicates dropped, order kept.
std::vector<Engine> parse_engines(std::string_view list);

struct Scenario {
    std::string id;
    NetworkConfig config;
    AssociationPolicy policy;
};

struct SweepSpec {
    Axis axis = Axis::BsDensity;
    Grid grid;
    std::vector<Scenario> scenarios;
    std::vector<Engine> engines{Engine::Analytic};
    mc::SimSettings mc;
    unsigned threads = 0;  // sweep worker pool; 0: hardware concurrency

    void validate() const;
};

/// `cfg` with the swept parameter set to `value`.
NetworkConfig apply_axis(NetworkConfig cfg, Axis axis, double value);

struct Row {
    std::string scenario_id;
    Axis axis = Axis::BsDensity;
    double axis_value = 0.0;
    Engine engine = Engine::Analytic;
    Method method = Method::ClosedForm;
    std::optional<CoveragePoint> point;  // empty when the evaluation failed
    std::string status = "ok";
    double wall_time_ms = 0.0;

    bool ok() const { return point.has_value(); }
};

struct Table {
    std::vector<Row> rows;

    bool all_ok() const;
    std::size_t failures() const;
};

/// One row per (scenario, grid point, engine). Per-point failures are
/// recorded in the row's status and never abort the sweep. Rows come back
/// sorted (scenario id, axis value, engine) whatever the pool size.
Table run_sweep(const SweepSpec& spec);

void sort_rows(Table& table);

}  // namespace udn::cli
