#include "orbitforge/exporters.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "orbitforge/ephemeris.hpp"
#include "orbitforge/errors.hpp"

namespace orbitforge {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // fixed \n endings everywhere
    if (!out) {
        throw SimError("cannot open output file '" + path + "' for writing");
    }
    return out;
}

}  // namespace

void export_csv(std::span<const TimeSeries* const> series, const std::string& path) {
    if (series.empty()) {
        throw ConfigError("export_csv: no series given");
    }
    const std::size_t rows = series.front()->row_count();
    if (rows == 0) {
        throw ConfigError("export_csv: no samples");
    }
    for (const TimeSeries* s : series) {
        if (s->row_count() != rows || s->t_s != series.front()->t_s) {
            throw ConfigError("export_csv: series do not share a common time base");
        }
        for (const auto& col : s->values) {
            if (col.size() != rows) {
                throw ConfigError("export_csv: column length does not match sample count");
            }
        }
    }

    std::ofstream out = open_output(path);
    out << "t_s";
    for (const TimeSeries* s : series) {
        for (const std::string& name : s->columns) {
            out << ',' << name;
        }
    }
    out << '\n';
    for (std::size_t row = 0; row < rows; ++row) {
        out << fmt17(series.front()->t_s[row]);
        for (const TimeSeries* s : series) {
            for (const auto& col : s->values) {
                out << ',' << fmt17(col[row]);
            }
        }
        out << '\n';
    }
    if (!out) {
        throw SimError("write failure on '" + path + "'");
    }
}

void export_csv(const TimeSeries& series, const std::string& path) {
    const TimeSeries* ptr = &series;
    export_csv(std::span<const TimeSeries* const>(&ptr, 1), path);
}

void export_state_csv(const OutputBundle& outputs, const std::string& path) {
    std::vector<const TimeSeries*> series;
    for (const char* key : {"r_BN_N", "v_BN_N", "sigma_BN", "omega_BN_B"}) {
        const auto it = outputs.find(key);
        if (it == outputs.end()) {
            throw ConfigError(std::string("export_state_csv: missing series '") + key + "'");
        }
        series.push_back(&it->second);
    }
    export_csv(series, path);
}

void export_telemetry_jsonl(const ScenarioInstance& instance, const std::string& path) {
    if (!instance.executed()) {
        throw SimError("export_telemetry_jsonl: scenario has not been executed");
    }
    const auto& recorder = instance.state_recorder();
    const auto& times = recorder.times();
    const auto& states = recorder.records();

    std::ofstream out = open_output(path);
    for (std::size_t k = 0; k < times.size(); ++k) {
        nlohmann::ordered_json line;
        line["t_s"] = nanos_to_sec(times[k]);
        nlohmann::ordered_json sc;
        sc["r"] = {states[k].r_BN_N.x(), states[k].r_BN_N.y(), states[k].r_BN_N.z()};
        sc["v"] = {states[k].v_BN_N.x(), states[k].v_BN_N.y(), states[k].v_BN_N.z()};
        sc["sigma"] = {states[k].sigma_BN.x(), states[k].sigma_BN.y(),
                       states[k].sigma_BN.z()};
        sc["omega"] = {states[k].omega_BN_B.x(), states[k].omega_BN_B.y(),
                       states[k].omega_BN_B.z()};
        line["sc"] = std::move(sc);

        nlohmann::ordered_json bodies = nlohmann::ordered_json::array();
        if (!instance.celestial_bodies().empty()) {
            std::vector<EphemerisRecord> records;
            records.reserve(instance.celestial_bodies().size());
            for (const GravityBody& body : instance.celestial_bodies()) {
                records.push_back(ephemeris_state(body, instance.epoch(), times[k]));
            }
            if (!instance.zero_base().empty()) {
                records = zero_base_recenter(std::move(records), instance.zero_base());
            }
            for (const EphemerisRecord& rec : records) {
                nlohmann::ordered_json body;
                body["name"] = rec.body;
                body["r"] = {rec.r_N.x(), rec.r_N.y(), rec.r_N.z()};
                bodies.push_back(std::move(body));
            }
        }
        line["bodies"] = std::move(bodies);
        if (instance.has_fsw()) {
            line["mode"] = fsw_mode_name(instance.fsw()->mode());
        } else {
            line["mode"] = nullptr;
        }
        out << line.dump() << '\n';
    }
    if (!out) {
        throw SimError("write failure on '" + path + "'");
    }
}

void emit_svg_plot(const TimeSeries& series, const std::string& path, const PlotSpec& spec) {
    const std::size_t rows = series.row_count();
    if (rows < 2) {
        throw ConfigError("emit_svg_plot: need at least 2 samples");
    }
    for (const auto& col : series.values) {
        if (col.size() != rows) {
            throw ConfigError("emit_svg_plot: column length does not match sample count");
        }
    }

    double t_min = series.t_s.front(), t_max = series.t_s.back();
    if (t_max <= t_min) {
        t_max = t_min + 1.0;
    }
    double y_min = series.values.empty() ? 0.0 : series.values[0][0];
    double y_max = y_min;
    for (const auto& col : series.values) {
        for (double v : col) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (y_max <= y_min) {  // flat series: pad so the line sits on the axis midline
        y_min -= 1.0;
        y_max += 1.0;
    }

    const double ml = 64.0, mr = 16.0, mt = 32.0, mb = 44.0;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;
    const auto x_of = [&](double t) { return ml + (t - t_min) / (t_max - t_min) * pw; };
    const auto y_of = [&](double v) {
        return mt + ph - (v - y_min) / (y_max - y_min) * ph;
    };

    static constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                            "#9467bd", "#ff7f0e", "#17becf"};

    std::ofstream out = open_output(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
        << spec.height << "\">\n";
    out << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << spec.title << "</text>\n";
    // axes
    out << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(mt + ph) << "\" x2=\""
        << fmt6(ml + pw) << "\" y2=\"" << fmt6(mt + ph) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(mt) << "\" x2=\"" << fmt6(ml)
        << "\" y2=\"" << fmt6(mt + ph) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << spec.x_label << "</text>\n";
    out << "<text x=\"14\" y=\"" << fmt6(mt + ph / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << fmt6(mt + ph / 2.0) << ")\">" << spec.y_label
        << "</text>\n";
    // range annotations
    out << "<text x=\"" << fmt6(ml - 4) << "\" y=\"" << fmt6(mt + ph)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt6(y_min) << "</text>\n";
    out << "<text x=\"" << fmt6(ml - 4) << "\" y=\"" << fmt6(mt + 10)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt6(y_max) << "</text>\n";
    out << "<text x=\"" << fmt6(ml) << "\" y=\"" << fmt6(mt + ph + 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt6(t_min) << "</text>\n";
    out << "<text x=\"" << fmt6(ml + pw) << "\" y=\"" << fmt6(mt + ph + 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt6(t_max) << "</text>\n";

    for (std::size_t c = 0; c < series.values.size(); ++c) {
        const char* color = kPalette[c % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < rows; ++k) {
            if (k > 0) {
                out << ' ';
            }
            out << fmt6(x_of(series.t_s[k])) << ',' << fmt6(y_of(series.values[c][k]));
        }
        out << "\"/>\n";
        if (c < series.columns.size()) {
            out << "<text x=\"" << fmt6(ml + pw - 4) << "\" y=\"" << fmt6(mt + 14.0 * (c + 1))
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
                << color << "\">" << series.columns[c] << "</text>\n";
        }
    }
    out << "</svg>\n";
    if (!out) {
        throw SimError("write failure on '" + path + "'");
    }
}

}  // namespace orbitforge
