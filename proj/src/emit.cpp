#include "sqzsim/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sqz {

EmitFormat parse_format(const std::string& name) {
    if (name == "csv") return EmitFormat::kCsv;
    if (name == "json") return EmitFormat::kJson;
    if (name == "svg") return EmitFormat::kSvg;
    throw ValidationError("unknown output format: " + name);
}

std::string to_csv(const TraceSet& traces) {
    std::ostringstream os;
    os.precision(9); // 6 significant digits survive a round trip with margin
    if (traces.has_budget) {
        os << "item,value_" << traces.budget_unit << "\n";
        for (const auto& [label, v] : traces.budget_items) {
            std::string quoted = label;
            std::replace(quoted.begin(), quoted.end(), ',', ';');
            os << quoted << "," << v << "\n";
        }
        return os.str();
    }
    os << traces.x_label;
    for (const auto& c : traces.columns) os << "," << c.label << "_" << c.unit;
    os << "\n";
    for (std::size_t i = 0; i < traces.x.size(); ++i) {
        os << traces.x[i];
        for (const auto& c : traces.columns) os << "," << c.values[i];
        os << "\n";
    }
    return os.str();
}

nlohmann::json to_json(const TraceSet& traces) {
    nlohmann::json j;
    j["preset"] = traces.preset;
    j["config"] = traces.resolved_config;
    j["config_hash"] = std::hash<std::string>{}(traces.resolved_config.dump());
    if (traces.has_budget) {
        j["budget"] = nlohmann::json::array();
        for (const auto& [label, v] : traces.budget_items) {
            j["budget"].push_back({{"item", label}, {"value", v}});
        }
        j["budget_unit"] = traces.budget_unit;
        return j;
    }
    j[traces.x_label] = traces.x;
    for (const auto& c : traces.columns) {
        j["traces"][c.label] = {{"unit", c.unit}, {"values", c.values}};
    }
    return j;
}

namespace {

struct SvgLayout {
    double width = 860, height = 540;
    double left = 70, right = 210, top = 30, bottom = 50;
    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

} // namespace

std::string to_svg(const TraceSet& traces) {
    if (traces.has_budget || traces.x.empty()) {
        throw ValidationError("to_svg: preset has no curve traces to plot");
    }
    const SvgLayout L;
    const double x_lo = std::log10(traces.x.front());
    const double x_hi = std::log10(traces.x.back());
    double y_lo = 1e300, y_hi = -1e300;
    for (const auto& c : traces.columns) {
        for (double v : c.values) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    const double pad = 0.05 * std::max(1.0, y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) {
        return L.left + (std::log10(x) - x_lo) / (x_hi - x_lo) * L.plot_w();
    };
    auto py = [&](double y) { return L.top + (y_hi - y) / (y_hi - y_lo) * L.plot_h(); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << L.width << "\" height=\""
       << L.height << "\" viewBox=\"0 0 " << L.width << " " << L.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << L.left << "\" y=\"" << L.top << "\" width=\"" << L.plot_w()
       << "\" height=\"" << L.plot_h() << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Decade gridlines and x tick labels.
    for (int d = static_cast<int>(std::ceil(x_lo)); d <= static_cast<int>(std::floor(x_hi)); ++d) {
        const double xq = px(std::pow(10.0, d));
        os << "<line x1=\"" << xq << "\" y1=\"" << L.top << "\" x2=\"" << xq << "\" y2=\""
           << L.top + L.plot_h() << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << xq << "\" y=\"" << L.top + L.plot_h() + 18
           << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
    // A handful of y ticks.
    for (int i = 0; i <= 5; ++i) {
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        const double yq = py(yv);
        os << "<line x1=\"" << L.left - 4 << "\" y1=\"" << yq << "\" x2=\"" << L.left << "\" y2=\""
           << yq << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << L.left - 8 << "\" y=\"" << yq + 4
           << "\" font-size=\"12\" text-anchor=\"end\">" << std::round(yv * 10.0) / 10.0
           << "</text>\n";
    }
    os << "<text x=\"" << L.left + L.plot_w() / 2 << "\" y=\"" << L.height - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">" << traces.x_label << "</text>\n";

    int ci = 0;
    for (const auto& c : traces.columns) {
        const char* color = kPalette[ci % 10];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < traces.x.size(); ++i) {
            os << px(traces.x[i]) << "," << py(c.values[i]) << " ";
        }
        os << "\"/>\n";
        const double ly = L.top + 16 + 18 * ci;
        os << "<line x1=\"" << L.width - L.right + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
           << L.width - L.right + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << L.width - L.right + 40 << "\" y=\"" << ly
           << "\" font-size=\"12\">" << c.label << " [" << c.unit << "]</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    return os.str();
}

std::filesystem::path emit(const TraceSet& traces, EmitFormat format,
                           const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string stem = traces.preset.empty() ? "scenario" : traces.preset;
    std::filesystem::path path = out_dir / stem;
    std::string body;
    switch (format) {
        case EmitFormat::kCsv:
            path += ".csv";
            body = to_csv(traces);
            break;
        case EmitFormat::kJson:
            path += ".json";
            body = to_json(traces).dump(2) + "\n";
            break;
        case EmitFormat::kSvg:
            path += ".svg";
            body = to_svg(traces);
            break;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << body;
    if (!out.good()) throw IoError("write failed: " + path.string());
    return path;
}

std::vector<std::vector<double>> parse_csv_columns(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    std::vector<std::vector<double>> cols;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (cols.size() <= c) cols.emplace_back();
            cols[c].push_back(std::stod(cell));
            ++c;
        }
    }
    return cols;
}

} // namespace sqz
