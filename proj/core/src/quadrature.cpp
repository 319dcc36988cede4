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

#include "qcr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace qcr::quadrature {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    double center = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double fc = f(center);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double abscissa = half * kXgk[j];
        double f1 = f(center - abscissa);
        double f2 = f(center + abscissa);
        double fsum = f1 + f2;
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * fsum;
        }
    }
    result_kronrod *= half;
    result_gauss *= half;
    // Plain |K - G| as the panel error; conservative but honest.
    double err = std::abs(result_kronrod - result_gauss);
    return {a, b, result_kronrod, err};
}

struct PanelOrder {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a; // deterministic tie-break
    }
};

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt, const std::vector<double>& breakpoints) {
    Result res;
    if (a == b) return res;

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    double total = 0.0, total_err = 0.0;
    long long evals = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = gk15(f, cuts[i], cuts[i + 1]);
        evals += 15;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    int panels = static_cast<int>(heap.size());
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
           panels < opt.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval exhausted in double
            heap.push({worst.a, worst.b, worst.value, 0.0});
            continue;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    res.value = total;
    res.abs_error = total_err;
    res.evaluations = evals;
    res.converged =
        total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) * 1.0000001;
    return res;
}

const std::pair<std::vector<double>, std::vector<double>>& legendre_rule(int order) {
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    std::vector<double> x(order), w(order);
    int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-angle initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[order - 1 - i] = w[i];
    }
    auto [ins, ok] = cache.emplace(order, std::make_pair(std::move(x), std::move(w)));
    (void)ok;
    return ins->second;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int order) {
    const auto& [x, w] = legendre_rule(order);
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        sum += w[i] * f(mid + half * x[i]);
    }
    return sum * half;
}

Result gauss_legendre_doubling(const std::function<double(double)>& f, double a,
                               double b, int start_order, double rel_tol,
                               int max_order) {
    Result res;
    double prev = gauss_legendre(f, a, b, start_order);
    res.evaluations = start_order;
    for (int order = start_order * 2; order <= max_order; order *= 2) {
        double cur = gauss_legendre(f, a, b, order);
        res.evaluations += order;
        double err = std::abs(cur - prev);
        if (err <= rel_tol * std::max(std::abs(cur), 1e-300)) {
            res.value = cur;
            res.abs_error = err;
            res.converged = true;
            return res;
        }
        prev = cur;
        res.abs_error = err;
    }
    res.value = prev;
    res.converged = false;
    return res;
}

} // namespace qcr::quadrature
