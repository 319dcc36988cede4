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

#ifndef QCR_REPORT_HPP
#define QCR_REPORT_HPP

#include <string>
#include <vector>

namespace qcr::report {

/// Fixed 15-significant-digit formatting with '.' decimal separator;
/// byte-deterministic across runs and locales.
std::string format_double(double v);

/// One polyline of an SVG line plot.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal SVG 1.1 line plot: axes, ticks, labels, legend.
std::string render_svg_lineplot(const std::string& title, const std::string& xlabel,
                                const std::string& ylabel,
                                const std::vector<Series>& series);

void write_file(const std::string& path, const std::string& content);

} // namespace qcr::report

#endif // QCR_REPORT_HPP
