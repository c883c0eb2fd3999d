#include "udn/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "udn/errors.hpp"

namespace udn::cli {
namespace {

std::string num(double v) { return fmt::format("{:.9g}", v); }

// RFC 4180: quote fields holding separators, quotes or line breaks.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string method_name(const Row& r) {
    return std::string(to_string(r.method));
}

}  // namespace

std::string format_csv(const Table& table, const CsvOptions& options) {
    if (table.rows.empty()) throw UsageError("cannot write an empty table");
    Table sorted = table;
    sort_rows(sorted);
    std::string out = "scenario_id,axis_value,pcov,ase,method,ci_halfwidth,status,wall_time_ms\n";
    for (const auto& r : sorted.rows) {
        out += csv_field(r.scenario_id);
        out += ',' + num(r.axis_value) + ',';
        if (r.point) out += num(r.point->pcov) + ',' + num(r.point->ase);
        else out += ',';
        out += ',' + method_name(r) + ',';
        if (r.point && r.point->ci_halfwidth) out += num(*r.point->ci_halfwidth);
        out += ',' + csv_field(r.status) + ',';
        if (options.timing) out += fmt::format("{:.3f}", r.wall_time_ms);
        out += '\n';
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
}

void emit_csv(const Table& table, const std::filesystem::path& path, const CsvOptions& options) {
    write_file(path, format_csv(table, options));
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
    std::string label;
    Engine engine;
    std::vector<const Row*> rows;
};

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string format_svg(const Table& table, const PlotStyle& style) {
    if (table.rows.empty()) throw UsageError("cannot plot an empty table");
    const Axis axis = table.rows.front().axis;
    for (const auto& r : table.rows)
        if (r.axis != axis) throw UsageError("cannot plot rows swept over different axes");

    Table sorted = table;
    sort_rows(sorted);
    std::vector<Series> series;
    std::map<std::pair<std::string, Engine>, std::size_t> index;
    for (const auto& r : sorted.rows) {
        const auto key = std::pair{r.scenario_id, r.engine};
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back({r.scenario_id + " (" + std::string(to_string(r.engine)) + ")", r.engine, {}});
        }
        series[it->second].rows.push_back(&r);
    }

    const bool ase = style.quantity == PlotStyle::Quantity::Ase;
    auto y_of = [ase](const Row& r) { return ase ? r.point->ase : r.point->pcov; };
    double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymax = 0.0;
    std::size_t ok_rows = 0;
    for (const auto& r : sorted.rows) {
        if (!(r.axis_value > 0.0)) throw UsageError("log-x plot needs positive axis values");
        xmin = std::min(xmin, r.axis_value);
        xmax = std::max(xmax, r.axis_value);
        if (!r.ok()) continue;
        ++ok_rows;
        ymax = std::max(ymax, y_of(r));
    }
    if (ok_rows == 0) throw UsageError("no successful rows to plot");
    if (!ase) ymax = 1.0;
    if (!(ymax > 0.0)) ymax = 1.0;
    double lx0 = std::floor(std::log10(xmin)), lx1 = std::ceil(std::log10(xmax));
    if (lx1 <= lx0) lx1 = lx0 + 1.0;

    const double left = 80, right = 260, top = 40, bottom = 60;
    const double pw = style.width - left - right, ph = style.height - top - bottom;
    auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return top + ph - std::clamp(y / ymax, 0.0, 1.05) * ph; };

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        style.width, style.height, style.width, style.height);
    s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", style.width, style.height);
    if (!style.title.empty())
        s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                         left + pw / 2, escape_xml(style.title));
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
                     top, pw, ph);
    for (double d = lx0; d <= lx1 + 0.5; d += 1.0) {
        const double x = left + (d - lx0) / (lx1 - lx0) * pw;
        s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n", x, top,
                         top + ph);
        s += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">1e{}</text>\n", x, top + ph + 18,
                         static_cast<int>(d));
    }
    for (int i = 0; i <= 5; ++i) {
        const double v = ymax * i / 5.0;
        const double y = py(v);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n", left, y,
                         left + pw);
        s += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6, y + 4, v);
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                     style.height - 15, to_string(axis));
    s += fmt::format(
        "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
        top + ph / 2, ase ? "ASE (bps/Hz/m^2)" : "coverage probability");

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& ser = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        const char* dash = ser.engine == Engine::MonteCarlo ? " stroke-dasharray=\"5,3\"" : "";
        std::string pts;
        for (const Row* r : ser.rows) {
            if (!r->ok()) continue;
            pts += fmt::format("{:.2f},{:.2f} ", px(r->axis_value), py(y_of(*r)));
        }
        s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n", color,
                         dash, pts);
        for (const Row* r : ser.rows) {
            if (!r->ok() || !r->point->ci_halfwidth) continue;
            double hw = *r->point->ci_halfwidth;
            if (ase) {
                if (!(r->point->pcov > 0.0)) continue;
                hw *= r->point->ase / r->point->pcov;
            }
            const double x = px(r->axis_value), y = y_of(*r);
            s += fmt::format(
                "<line class=\"whisker\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"{3}\"/>\n",
                x, py(y - hw), py(y + hw), color);
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1:.1f}\" x2=\"{2}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"{4}/>\n",
                         left + pw + 12, ly, left + pw + 36, color, dash);
        s += fmt::format("<text x=\"{}\" y=\"{:.1f}\">{}</text>\n", left + pw + 42, ly + 4, escape_xml(ser.label));
    }
    s += "</svg>\n";
    return s;
}

void emit_plot(const Table& table, const std::filesystem::path& path, const PlotStyle& style) {
    write_file(path, format_svg(table, style));
}

}  // namespace udn::cli
