#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <regex>
#include <set>

#include <gtest/gtest.h>

#include "udn/analytic.hpp"
#include "udn/cli/config.hpp"
#include "udn/cli/output.hpp"
#include "udn/cli/presets.hpp"
#include "udn/errors.hpp"

using namespace udn;
using namespace udn::cli;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

Row ok_row(std::string id, double x, double pcov) {
    Row r;
    r.scenario_id = std::move(id);
    r.axis_value = x;
    r.point = CoveragePoint::make(x, 1.0, pcov, Method::ClosedForm);
    return r;
}

}  // namespace

TEST(Grid, LogAndLinear) {
    const auto v = Grid{1e-6, 1e-1, 50, true}.values();
    ASSERT_EQ(v.size(), 50u);
    EXPECT_EQ(v.front(), 1e-6);
    EXPECT_EQ(v.back(), 1e-1);
    EXPECT_NEAR(v[1] / v[0], std::pow(1e5, 1.0 / 49.0), 1e-12);
    const auto l = Grid{0.0, 1.0, 5, false}.values();
    EXPECT_DOUBLE_EQ(l[2], 0.5);
    EXPECT_THROW((Grid{1.0, 1.0, 5, true}.validate()), UsageError);
    EXPECT_THROW((Grid{1.0, 2.0, 1, true}.validate()), UsageError);
    EXPECT_THROW((Grid{0.0, 2.0, 3, true}.validate()), UsageError);
}

TEST(Names, AxesAndEngines) {
    EXPECT_EQ(parse_axis("building_density"), Axis::BuildingDensity);
    EXPECT_THROW(parse_axis("lambda"), UsageError);
    EXPECT_EQ(parse_engines("analytic, mc,analytic"), (std::vector<Engine>{Engine::Analytic, Engine::MonteCarlo}));
    EXPECT_THROW(parse_engines(""), UsageError);
    EXPECT_THROW(parse_engines("analytic,quantum"), UsageError);
}

TEST(Presets, Cardinality) {
    EXPECT_EQ(fig2_preset().scenarios.size(), 4u);
    EXPECT_EQ(fig3_preset().scenarios.size(), 8u);
    EXPECT_EQ(fig4_preset().scenarios.size(), 6u);
    EXPECT_THROW(preset("fig9"), UsageError);
    const auto t = run_sweep(fig2_preset());
    EXPECT_EQ(t.rows.size(), 200u);
    EXPECT_TRUE(t.all_ok());
}

TEST(Sweep, RowOrderIndependentOfPool) {
    auto spec = fig3_preset();
    spec.grid.points = 7;
    spec.threads = 1;
    const auto a = format_csv(run_sweep(spec));
    spec.threads = 4;
    EXPECT_EQ(a, format_csv(run_sweep(spec)));
}

TEST(Sweep, FailuresRecordedPerRow) {
    SweepSpec spec;
    spec.axis = Axis::Threshold;
    spec.grid = Grid{0.25, 4.0, 5, true};
    spec.scenarios.push_back({"s", NetworkConfig{}, AssociationPolicy::strongest()});
    const auto t = run_sweep(spec);
    ASSERT_EQ(t.rows.size(), 5u);
    EXPECT_EQ(t.failures(), 2u);  // theta = 0.25, 0.5
    EXPECT_FALSE(t.rows[0].ok());
    EXPECT_NE(t.rows[0].status.find("error"), std::string::npos);
    EXPECT_TRUE(t.rows[4].ok());
    const auto csv = format_csv(t);
    EXPECT_EQ(count(csv, "\n"), 6u);
}

TEST(Sweep, AxisAppliesToBuildings) {
    const auto c = apply_axis(NetworkConfig{}, Axis::BuildingDensity, 0.2);
    const auto* b = std::get_if<BuildingsBlockage>(&c.los_model.variant());
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->building_density, 0.2);
}

TEST(Csv, Format) {
    Table t;
    t.rows.push_back(ok_row("b", 2e-3, 0.123456789012));
    t.rows.push_back(ok_row("a", 1e-3, 0.5));
    const auto csv = format_csv(t);
    EXPECT_EQ(count(csv, "\n"), 3u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "scenario_id,axis_value,pcov,ase,method,ci_halfwidth,status,wall_time_ms");
    EXPECT_NE(csv.find("\na,0.001,0.5,0.0005,closed_form,,ok,\n"), std::string::npos);
    EXPECT_NE(csv.find("0.123456789,"), std::string::npos);
    EXPECT_LT(csv.find("\na,"), csv.find("\nb,"));
    EXPECT_THROW(format_csv(Table{}), UsageError);
}

TEST(Csv, QuotesAndTiming) {
    Table t;
    Row r;
    r.scenario_id = "x";
    r.axis_value = 1.0;
    r.status = "error: bad \"thing\", really";
    r.wall_time_ms = 12.5;
    t.rows.push_back(r);
    const auto csv = format_csv(t, CsvOptions{true});
    EXPECT_NE(csv.find(",\"error: bad \"\"thing\"\", really\",12.500\n"), std::string::npos);
}

TEST(Csv, UnwritablePath) {
    Table t;
    t.rows.push_back(ok_row("a", 1.0, 0.5));
    const auto blocker = std::filesystem::temp_directory_path() / "udn_blocker_file";
    write_file(blocker, "x");
    EXPECT_THROW(emit_csv(t, blocker / "sub" / "out.csv"), IoError);
    std::filesystem::remove(blocker);
}

TEST(Csv, Fig4PeakMatchesOptimalDensity) {
    const auto spec = fig4_preset();
    const auto t = run_sweep(spec);
    const double step = std::log(spec.grid.max / spec.grid.min) / static_cast<double>(spec.grid.points - 1);
    for (double h : {10.0, 15.0, 20.0}) {
        const std::string id = "nlos_h" + std::to_string(static_cast<int>(h)) + "_closest";
        const Row* best = nullptr;
        for (const auto& r : t.rows)
            if (r.scenario_id == id && (!best || r.point->ase > best->point->ase)) best = &r;
        ASSERT_NE(best, nullptr) << id;
        const double opt = analytic::lambda_opt_closest(1.0, h, 4.0);
        EXPECT_LE(std::abs(std::log(best->axis_value / opt)), step) << id;
    }
}

TEST(Svg, Fig3Polylines) {
    const auto t = run_sweep(fig3_preset());
    const auto svg = format_svg(t);
    EXPECT_EQ(count(svg, "<polyline"), 8u);
    EXPECT_EQ(count(svg, "class=\"whisker\""), 0u);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    // h = 0 curves are flat.
    for (const auto& r : t.rows) {
        if (r.scenario_id.find("_h0_") == std::string::npos) continue;
        const auto& first = *std::find_if(t.rows.begin(), t.rows.end(),
                                          [&](const Row& o) { return o.scenario_id == r.scenario_id; });
        EXPECT_EQ(r.point->pcov, first.point->pcov) << r.scenario_id;
    }
}

TEST(Svg, WhiskersForMonteCarlo) {
    auto spec = fig3_preset();
    spec.scenarios.resize(1);
    spec.grid = Grid{1e-4, 1e-3, 3, true};
    spec.engines = {Engine::Analytic, Engine::MonteCarlo};
    spec.mc.trials = 500;
    const auto svg = format_svg(run_sweep(spec));
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_EQ(count(svg, "class=\"whisker\""), 3u);
}

TEST(Svg, Guards) {
    EXPECT_THROW(format_svg(Table{}), UsageError);
    Table mixed;
    mixed.rows.push_back(ok_row("a", 1.0, 0.5));
    mixed.rows.push_back(ok_row("a", 2.0, 0.5));
    mixed.rows.back().axis = Axis::Height;
    EXPECT_THROW(format_svg(mixed), UsageError);
    Table failed;
    failed.rows.push_back(Row{});
    failed.rows.back().axis_value = 1.0;
    EXPECT_THROW(format_svg(failed), UsageError);
}

TEST(Config, ParseAndRoundTrip) {
    const std::string text = R"(
[sweep]
axis = height
min = 1
max = 100
points = 12
engines = analytic,mc
trials = 500
seed = 9

[scenario:dense]
policy = strongest
bs_density = 2e-3
los_model = buildings
building_density = 0.1
building_height = 10

[scenario:step]
los_model = step
critical_distance = 150
)";
    const auto spec = parse_config(text);
    EXPECT_EQ(spec.axis, Axis::Height);
    EXPECT_EQ(spec.grid.points, 12u);
    EXPECT_EQ(spec.mc.trials, 500u);
    EXPECT_EQ(spec.mc.seed, 9u);
    ASSERT_EQ(spec.scenarios.size(), 2u);
    EXPECT_EQ(spec.scenarios[0].id, "dense");
    EXPECT_EQ(spec.scenarios[0].policy, AssociationPolicy::strongest());
    EXPECT_EQ(spec.scenarios[0].config.bs_density, 2e-3);
    EXPECT_EQ(spec.scenarios[1].policy, AssociationPolicy::closest());
    EXPECT_EQ(spec.scenarios[1].config.pathloss.alpha_nlos, 4.0);  // default
    const auto once = serialize_config(spec);
    EXPECT_EQ(serialize_config(parse_config(once)), once);
    // Every preset survives the trip unchanged.
    for (auto name : preset_names()) {
        const auto s = serialize_config(preset(name));
        EXPECT_EQ(serialize_config(parse_config(s)), s) << name;
    }
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("[nonsense]\nx = 1\n"), UsageError);
    EXPECT_THROW(parse_config("[sweep]\npoints = many\n"), UsageError);
    EXPECT_THROW(parse_config("[scenario:a]\nlos_model = fog\n"), UsageError);
    EXPECT_THROW(parse_config("[sweep\n"), UsageError);
    EXPECT_THROW(load_config("/nonexistent/udn.ini"), IoError);
}

TEST(Config, PrecedenceCliOverFileOverDefaults) {
    auto spec = parse_config("[sweep]\ntrials = 500\n[scenario:a]\nheight = 15\n[scenario:b]\npolicy = strongest\n");
    EXPECT_EQ(spec.mc.seed, mc::SimSettings{}.seed);  // default
    EXPECT_EQ(spec.mc.trials, 500u);                   // file
    Overrides o;
    o.trials = 42;
    o.height = 30.0;
    o.policy = "strongest";
    apply_overrides(spec, o);
    EXPECT_EQ(spec.mc.trials, 42u);  // command line
    ASSERT_EQ(spec.scenarios.size(), 1u);
    EXPECT_EQ(spec.scenarios[0].id, "b");
    EXPECT_EQ(spec.scenarios[0].config.pathloss.height, 30.0);
    Overrides none_left;
    none_left.policy = "closest";
    EXPECT_THROW(apply_overrides(spec, none_left), UsageError);
}

TEST(Config, BuildingOverrideSwitchesModel) {
    SweepSpec spec;
    spec.scenarios.push_back({"a", NetworkConfig{}, AssociationPolicy::closest()});
    Overrides o;
    o.building_density = 0.01;
    apply_overrides(spec, o);
    const auto* b = std::get_if<BuildingsBlockage>(&spec.scenarios[0].config.los_model.variant());
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->building_density, 0.01);
}
