#include "qarctic/shell.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace qarctic {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(field);
        if (!line.empty() && line.back() == ',') row.emplace_back();
        out.push_back(std::move(row));
    }
    return out;
}

std::string render_svg(const std::vector<SvgLayer>& layers, double xmax, double ymax) {
    const double W = 800, H = 800 * ymax / xmax, pad = 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W + 2 * pad << ' ' << H + 2 * pad
       << "\" width=\"" << W + 2 * pad << "\" height=\"" << H + 2 * pad << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto inside = [&](const Pt& p) {
        return p.x >= -0.05 * xmax && p.x <= 1.05 * xmax && p.y >= -0.05 * ymax && p.y <= 1.05 * ymax;
    };
    auto emit = [&](const SvgLayer& layer, const Polyline& pl) {
        if (pl.size() < 2) return;
        os << "<polyline fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\"" << layer.width << "\" points=\"";
        for (size_t i = 0; i < pl.size(); ++i) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", pad + pl[i].x / xmax * W,
                          pad + H - pl[i].y / ymax * H);
            os << buf;
        }
        os << "\"/>\n";
    };
    for (const auto& layer : layers)
        for (const auto& pl : layer.lines) {
            // points outside the view split the polyline
            Polyline run;
            for (const auto& p : pl) {
                if (inside(p)) {
                    run.push_back(p);
                    continue;
                }
                emit(layer, run);
                run.clear();
            }
            emit(layer, run);
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qarctic
