#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbitforge/scenario.hpp"

namespace orbitforge {

/// Write one or more time series sharing a time base as a single CSV file:
/// header `t_s,<columns...>`, times in seconds, values with 17 significant
/// digits, `\n` line endings. Rejects empty series ("no samples") and
/// mismatched time bases.
void export_csv(std::span<const TimeSeries* const> series, const std::string& path);
void export_csv(const TimeSeries& series, const std::string& path);

/// The standard state CSV for a run: r, v, sigma, omega columns in fixed
/// order (plus nothing else), one row per recorder sample.
void export_state_csv(const OutputBundle& outputs, const std::string& path);

/// One JSON object per recorder sample:
///   {"t_s": ..., "sc": {"r": [...], "v": [...], "sigma": [...],
///    "omega": [...]}, "bodies": [{"name": ..., "r": [...]}, ...],
///    "mode": "<mode>" | null}
/// Key order is stable; body states come from the analytic ephemeris at the
/// sample times.
void export_telemetry_jsonl(const ScenarioInstance& instance, const std::string& path);

struct PlotSpec {
    std::string title;
    std::string x_label = "t [s]";
    std::string y_label;
    int width = 800;
    int height = 480;
};

/// Self-contained deterministic SVG line chart of every column in the
/// series. Needs at least two samples; all columns must match the time
/// column's length.
void emit_svg_plot(const TimeSeries& series, const std::string& path, const PlotSpec& spec);

}  // namespace orbitforge
