/*
 * Copyright 2026 the qcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qcr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcr::report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 540;
constexpr int kMarginL = 80, kMarginR = 180, kMarginT = 50, kMarginB = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            double d = 0.05 * (hi - lo);
            lo -= d;
            hi += d;
        }
    }
};

std::vector<double> ticks(const Range& r, int count) {
    std::vector<double> out;
    double span = r.hi - r.lo;
    double raw = span / count;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + 1e-12 * span; t += step) {
        out.push_back(t == 0.0 ? 0.0 : t);
    }
    return out;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg_lineplot(const std::string& title, const std::string& xlabel,
                                const std::string& ylabel,
                                const std::vector<Series>& series) {
    Range xr, yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.grow(v);
        for (double v : s.y) yr.grow(v);
    }
    if (!std::isfinite(xr.lo) || !std::isfinite(yr.lo)) {
        xr = {0.0, 1.0};
        yr = {0.0, 1.0};
    }
    xr.pad();
    yr.pad();

    auto px = [&](double x) {
        return kMarginL + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - kMarginL - kMarginR);
    };
    auto py = [&](double y) {
        return kHeight - kMarginB -
               (y - yr.lo) / (yr.hi - yr.lo) * (kHeight - kMarginT - kMarginB);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kHeight - kMarginB << "\" x2=\""
        << kWidth - kMarginR << "\" y2=\"" << kHeight - kMarginB
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\"/>\n";

    for (double t : ticks(xr, 6)) {
        double x = px(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << kHeight - kMarginB << "\" x2=\"" << x
            << "\" y2=\"" << kHeight - kMarginB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << kHeight - kMarginB + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << tick_label(t)
            << "</text>\n";
    }
    for (double t : ticks(yr, 6)) {
        double y = py(t);
        svg << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << y << "\" x2=\"" << kMarginL
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginL - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }

    svg << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"" << kHeight - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">" << escape_xml(xlabel)
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << (kMarginT + kHeight - kMarginB) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << (kMarginT + kHeight - kMarginB) / 2 << ")\">" << escape_xml(ylabel)
        << "</text>\n";
    svg << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"25\" "
        << "font-size=\"16\" text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 8];
        std::ostringstream pts;
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        double ly = kMarginT + 18.0 * ci;
        svg << "<line x1=\"" << kWidth - kMarginR + 10 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kMarginR + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kWidth - kMarginR + 40 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace qcr::report
