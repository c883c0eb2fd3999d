#pragma once

#include <filesystem>
#include <string>

#include "udn/cli/sweep.hpp"

namespace udn::cli {

struct CsvOptions {
    // Wall time varies run to run; off by default so identical sweeps give
    // byte-identical files.
    bool timing = false;
};

/// Header plus one line per row in sorted order, LF endings, 9 significant
/// digits. UsageError on an empty table.
std::string format_csv(const Table& table, const CsvOptions& options = {});
void emit_csv(const Table& table, const std::filesystem::path& path, const CsvOptions& options = {});

struct PlotStyle {
    enum class Quantity { Coverage, Ase };
    Quantity quantity = Quantity::Coverage;
    std::string title;
    int width = 900;
    int height = 560;
};

/// Self-contained SVG: log-x axis, one polyline per (scenario, engine),
/// CI whiskers on Monte Carlo points. UsageError for an empty table, a
/// table without successful rows, or rows on different axes.
std::string format_svg(const Table& table, const PlotStyle& style = {});
void emit_plot(const Table& table, const std::filesystem::path& path, const PlotStyle& style = {});

/// Writes `text` to `path`, creating parent directories; IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace udn::cli
